//! Parameter scans for 4-class skew-symmetric schemes and classification of
//! concrete schemes.
//!
//! Every candidate accepted by a scan is evaluated twice: once through the
//! closed-form intersection matrices and once through the character table.
//! A disagreement is a [`ConsistencyError`], never a silently dropped row.

use std::fmt;
use std::io::{self, Write};

use num_bigint::BigInt;
use num_integer::Roots;
use num_rational::Ratio;
use serde::{Deserialize, Serialize};
use serde_json::Value;
use thiserror::Error;

use crate::constructions::{cyc4_closed_form, johnson2_params, prime_power, two_squares};
use crate::exactnum::{int, ComplexSurd};
use crate::exec::Strategy;
use crate::scheme::{intersection_tensor, is_skew_symmetric, verify_axioms, AssociationScheme, IntersectionTensor};
use crate::spectra::{
    character_table, closed_form, compare_with_table, conference_p_tensor, conference_table, corollary_filters_int,
    intersection_matrices_closed_form, p_from_table, q_from_table, srg_derive, CharacterTable, FissionCandidate,
    IntSrg, SpectraError, TableType,
};

/// Largest `n` accepted by [`srg_candidates`].
pub const SRG_SCAN_LIMIT: i64 = 5000;

/// Default range of the conference scan.
pub const DEFAULT_CONFERENCE_MAX: i64 = 325;

/// Default range of the SRG fission scan.
pub const DEFAULT_SRG_MAX: i64 = 1300;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Family {
    Conference,
    Srg,
    Imprimitive,
    Johnson,
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Family::Conference => "conference",
            Family::Srg => "srg",
            Family::Imprimitive => "imprimitive",
            Family::Johnson => "johnson",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Status {
    Feasible,
    KreinExcluded,
    IntegralityExcluded,
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Status::Feasible => "feasible",
            Status::KreinExcluded => "krein_excluded",
            Status::IntegralityExcluded => "integrality_excluded",
        })
    }
}

/// A negative Krein parameter `q^l_{ij}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct KreinWitness {
    pub i: usize,
    pub j: usize,
    pub l: usize,
    pub value: String,
}

impl fmt::Display for KreinWitness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "q^{}_{}{} = {}", self.l, self.i, self.j, self.value)
    }
}

/// One row of a scan.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ScanRecord {
    pub n: i64,
    pub family: Family,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub v: Option<i64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub k: Option<i64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub lambda: Option<i64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub mu: Option<i64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub eigenvalues: Option<Eigen>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub g: Option<i64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub h: Option<i64>,
    /// Block size and block count `(f, g)` of an imprimitive scheme.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub blocks: Option<(i64, i64)>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub table_type: Option<TableType>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub z: Option<i64>,
    pub status: Status,
    pub existence: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub citation: Option<String>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub krein_negatives: Vec<KreinWitness>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub notes: Vec<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub table: Option<CharacterTable<ComplexSurd>>,
}

/// `r^{m1}` and `s^{m2}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Eigen {
    pub r: i64,
    pub m1: i64,
    pub s: i64,
    pub m2: i64,
}

impl ScanRecord {
    fn new(n: i64, family: Family, status: Status) -> Self {
        ScanRecord {
            n,
            family,
            v: None,
            k: None,
            lambda: None,
            mu: None,
            eigenvalues: None,
            g: None,
            h: None,
            blocks: None,
            table_type: None,
            z: None,
            status,
            existence: "?".into(),
            citation: None,
            krein_negatives: Vec::new(),
            notes: Vec::new(),
            table: None,
        }
    }

    fn with_srg(mut self, p: &IntSrg) -> Self {
        self.k = Some(p.k);
        self.lambda = Some(p.lambda);
        self.mu = Some(p.mu);
        self.eigenvalues = Some(Eigen { r: p.r, m1: p.m1, s: p.s, m2: p.m2 });
        self
    }

    /// Compact parameter column used by the text formats.
    pub fn parameters(&self) -> String {
        match self.family {
            Family::Conference => format!("g={} h={}", self.g.unwrap_or(0), self.h.unwrap_or(0)),
            Family::Imprimitive => {
                let (f, g) = self.blocks.unwrap_or((0, 0));
                format!("f={f} g={g}")
            }
            Family::Srg | Family::Johnson => {
                let mut s = String::new();
                if let Some(v) = self.v {
                    s.push_str(&format!("v={v} "));
                }
                s.push_str(&format!(
                    "k={} lambda={} mu={}",
                    self.k.unwrap_or(0),
                    self.lambda.unwrap_or(0),
                    self.mu.unwrap_or(0)
                ));
                if let Some(e) = self.eigenvalues {
                    s.push_str(&format!(" r={}^{} s={}^{}", e.r, e.m1, e.s, e.m2));
                }
                s
            }
        }
    }

    fn sort_key(&self) -> impl Ord {
        (
            self.n,
            self.family,
            std::cmp::Reverse(self.g),
            self.blocks,
            self.v,
            self.k,
            self.lambda,
            self.mu,
            self.table_type,
            self.z,
        )
    }
}

/// Sorts by `n`, then family, then `g` descending or `(k, λ, μ, type, z)` ascending.
pub fn sort_records(records: &mut [ScanRecord]) {
    records.sort_by_cached_key(|r| r.sort_key());
}

/// Two derivations of the same intersection numbers disagreed.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("inconsistent derivations for ({n}, {k}, {lambda}, {mu}) {candidate}: {message}")]
pub struct ConsistencyError {
    pub n: i64,
    pub k: i64,
    pub lambda: i64,
    pub mu: i64,
    pub candidate: String,
    pub message: String,
}

fn candidate_label(t: TableType, z: Option<i64>) -> String {
    match z {
        Some(z) => format!("type {t} z={z}"),
        None => format!("type {t}"),
    }
}

/// Pseudocyclic conference fissions: one record per representation `q = g² + 4h²` for each `q ≡ 5 (mod 8)`.
pub fn conference_scan(n_max: i64) -> Vec<ScanRecord> {
    conference_scan_with(n_max, Strategy::default())
}

pub fn conference_scan_with(n_max: i64, strategy: Strategy) -> Vec<ScanRecord> {
    let qs: Vec<i64> = (5..=n_max).filter(|q| q % 8 == 5).collect();
    let mut out: Vec<ScanRecord> = strategy.map(qs, conference_records).into_iter().flatten().collect();
    sort_records(&mut out);
    out
}

fn conference_records(q: i64) -> Vec<ScanRecord> {
    let pp = prime_power(q as u64);
    two_squares(q as u64)
        .into_iter()
        .map(|ts| {
            let mut rec = ScanRecord::new(q, Family::Conference, Status::Feasible);
            rec.g = Some(ts.g);
            rec.h = Some(ts.h);
            if let Err(e) = cyc4_closed_form(q as u64, ts.g, ts.h) {
                rec.status = Status::IntegralityExcluded;
                rec.notes.push(e.to_string());
                return rec;
            }
            let realized = pp.is_some_and(|(p, _)| ts.g.rem_euclid(p as i64) != 0);
            rec.existence = if realized { "+" } else { "?" }.into();
            if realized {
                rec.citation = Some(format!("Cyc({q},4)"));
            }
            let numeric = conference_table(q, ts.g).and_then(|t| conference_p_tensor(&t));
            let matches = numeric.as_ref().is_ok_and(|t| {
                [ts.h, -ts.h].iter().any(|&h| cyc4_closed_form(q as u64, ts.g, h).is_ok_and(|c| c.tensor() == *t))
            });
            if !matches {
                rec.notes.push("floating point table check disagrees with the closed form".into());
            }
            rec
        })
        .collect()
}

/// Nonconference primitive SRG parameters with integral spectrum, `k ≤ (n−1)/2`,
/// integral multiplicities and both Krein conditions, sorted by `(n, k, λ, μ)`.
pub fn srg_candidates(n_max: i64) -> Vec<IntSrg> {
    let n_max = n_max.min(SRG_SCAN_LIMIT);
    let mut out = Vec::new();
    for k in 2..=(n_max - 1) / 2 {
        for r in 1..k {
            // μ = k + rs ≥ 1 bounds s from below
            let mut s = -2;
            while k + r * s >= 1 {
                if let Some(p) = srg_from_spectrum(k, r, s, n_max) {
                    out.push(p);
                }
                s -= 1;
            }
        }
    }
    out.sort_by_key(|p| p.tuple());
    out
}

fn srg_from_spectrum(k: i64, r: i64, s: i64, n_max: i64) -> Option<IntSrg> {
    let mu = k + r * s;
    let lambda = mu + r + s;
    if lambda < 0 {
        return None;
    }
    // k(k − λ − 1) = −k(r + 1)(s + 1)
    let num = -k * (r + 1) * (s + 1);
    if num % mu != 0 {
        return None;
    }
    let n = 1 + k + num / mu;
    if n > n_max || 2 * k > n - 1 {
        return None;
    }
    let (a, b) = (-k - (n - 1) * s, k + (n - 1) * r);
    if a % (r - s) != 0 || b % (r - s) != 0 {
        return None;
    }
    let (m1, m2) = (a / (r - s), b / (r - s));
    if m1 <= 0 || m2 <= 0 || m1 == m2 {
        return None;
    }
    let krein1 = (r + 1) * (k + r + 2 * r * s) <= (k + r) * (s + 1) * (s + 1);
    let krein2 = (s + 1) * (k + s + 2 * r * s) <= (k + s) * (r + 1) * (r + 1);
    (krein1 && krein2).then_some(IntSrg { n, k, lambda, mu, r, s, m1, m2 })
}

fn is_square_u128(x: u128) -> bool {
    let r = x.sqrt();
    r * r == x
}

/// Integers `z` in `(0, nk₂/m₁)` whose type III closed form is entirely nonnegative integral.
///
/// Rational `z` need not be tried: `τ = (t + √−z)/2` is an algebraic integer, so its norm
/// `(t² + z)/4` is a rational algebraic integer and `z = 4ττ̄ − t²` is an integer.
pub fn type3_integral_z(p: &IntSrg, strategy: Strategy) -> Vec<i64> {
    let (n, k, k2, m1) = (p.n, p.k, p.k2(), p.m1);
    let z_max = (n * k2 - 1) / m1;
    let d = (k2 * m1) as u128;
    let mut zs = strategy.fold_range(
        z_max.max(0) as usize,
        Vec::new,
        |mut acc, i| {
            let z = i as i64 + 1;
            let rest = n * k2 - m1 * z;
            // √(yz) is rational iff k·rest·z·k₂·m₁ is a square
            if is_square_u128((k * rest) as u128 * z as u128 * d) {
                let zr = Ratio::from_integer(z as i128);
                if closed_form::<i128>(p, TableType::III, Some(&zr)).is_ok_and(|cf| cf.is_integral()) {
                    acc.push(z);
                }
            }
            acc
        },
        |mut a, b| {
            a.extend(b);
            a
        },
    );
    zs.sort_unstable();
    zs
}

/// Result of evaluating one candidate through both derivations.
pub struct Evaluation {
    pub status: Status,
    pub table: CharacterTable<ComplexSurd>,
    pub tensor: Option<IntersectionTensor>,
    pub krein_negatives: Vec<KreinWitness>,
}

/// Evaluates one candidate exactly: closed form, character table, agreement of the table-derived intersection numbers with the closed form, and Krein signs.
///
/// `Ok(None)` means the candidate has no table at all (auxiliary values out of range
/// or irrational `Φ`).
pub fn evaluate_candidate(
    p: &IntSrg,
    table_type: TableType,
    z: Option<i64>,
) -> Result<Option<Evaluation>, ConsistencyError> {
    let fail = |message: String| ConsistencyError {
        n: p.n,
        k: p.k,
        lambda: p.lambda,
        mu: p.mu,
        candidate: candidate_label(table_type, z),
        message,
    };
    let params = srg_derive(p.n, p.k, p.lambda, p.mu).map_err(|e| fail(e.to_string()))?;
    let cand = FissionCandidate { table_type, z: z.map(int) };
    let table = match character_table(&params, &cand) {
        Ok(t) => t,
        Err(SpectraError::ZRange { .. }) => return Ok(None),
        Err(e) => return Err(fail(e.to_string())),
    };
    let krein_negatives = krein_witnesses(&table);
    let cf = match intersection_matrices_closed_form(&params, &cand) {
        Ok(cf) => cf,
        Err(SpectraError::IrrationalPhi) => return Ok(None),
        Err(e) => return Err(fail(e.to_string())),
    };
    compare_with_table(&cf, &table).map_err(fail)?;
    if !cf.is_integral() {
        return Ok(Some(Evaluation { status: Status::IntegralityExcluded, table, tensor: None, krein_negatives }));
    }
    let tensor = p_from_table(&table).map_err(|e| fail(e.to_string()))?;
    if tensor != cf.to_tensor().map_err(|e| fail(e.to_string()))? {
        return Err(fail("tensor from table differs from the closed form".into()));
    }
    tensor.check_identities().map_err(fail)?;
    let status = if krein_negatives.is_empty() { Status::Feasible } else { Status::KreinExcluded };
    Ok(Some(Evaluation { status, table, tensor: Some(tensor), krein_negatives }))
}

fn krein_witnesses(table: &CharacterTable<ComplexSurd>) -> Vec<KreinWitness> {
    let q = q_from_table(table);
    q.negatives().into_iter().map(|(i, j, l)| KreinWitness { i, j, l, value: q.get(i, j, l).to_string() }).collect()
}

/// All 4-class skew-symmetric fissions of the SRG that survive integrality:
/// feasible and Krein-excluded records for types I, II and integral `z` of type III.
pub fn fission_scan(p: &IntSrg) -> Result<Vec<ScanRecord>, ConsistencyError> {
    fission_scan_with(p, Strategy::default())
}

pub fn fission_scan_with(p: &IntSrg, strategy: Strategy) -> Result<Vec<ScanRecord>, ConsistencyError> {
    if p.m1 == p.m2 || [p.m1, p.m2, p.k, p.k2()].iter().any(|v| v % 2 != 0) {
        return Ok(Vec::new());
    }
    let mut cands: Vec<(TableType, Option<i64>)> = Vec::new();
    for t in [TableType::I, TableType::II] {
        if corollary_filters_int(p, t).is_ok() && closed_form::<i128>(p, t, None).is_ok_and(|cf| cf.is_integral()) {
            cands.push((t, None));
        }
    }
    cands.extend(type3_integral_z(p, strategy).into_iter().map(|z| (TableType::III, Some(z))));
    let mut out = Vec::new();
    for (t, z) in cands {
        let Some(ev) = evaluate_candidate(p, t, z)? else { continue };
        if ev.status == Status::IntegralityExcluded {
            return Err(ConsistencyError {
                n: p.n,
                k: p.k,
                lambda: p.lambda,
                mu: p.mu,
                candidate: candidate_label(t, z),
                message: "exact closed form is not integral although the fast evaluation was".into(),
            });
        }
        out.push(srg_record(p, Family::Srg, t, z, ev));
    }
    Ok(out)
}

fn srg_record(p: &IntSrg, family: Family, t: TableType, z: Option<i64>, ev: Evaluation) -> ScanRecord {
    let mut rec = ScanRecord::new(p.n, family, ev.status).with_srg(p);
    rec.table_type = Some(t);
    rec.z = z;
    if ev.status == Status::KreinExcluded {
        rec.existence = "0".into();
        rec.citation = Some("Krein".into());
    }
    rec.krein_negatives = ev.krein_negatives;
    rec.table = Some(ev.table);
    rec
}

/// [`fission_scan`] over every [`srg_candidates`] entry.
pub fn srg_scan(n_max: i64, strategy: Strategy) -> Result<Vec<ScanRecord>, ConsistencyError> {
    let cands: Vec<IntSrg> =
        srg_candidates(n_max).into_iter().filter(|p| [p.m1, p.m2, p.k, p.k2()].iter().all(|v| v % 2 == 0)).collect();
    let results = strategy.map(cands, |p| fission_scan_with(&p, Strategy::Sequential));
    let mut out = Vec::new();
    for r in results {
        out.extend(r?);
    }
    sort_records(&mut out);
    Ok(out)
}

/// SRG parameters of `g` disjoint copies of `K_f`.
pub fn imprimitive_srg(f: i64, g: i64) -> IntSrg {
    IntSrg { n: f * g, k: f - 1, lambda: f - 2, mu: 0, r: f - 1, s: -1, m1: g - 1, m2: g * (f - 1) }
}

/// Runs the type I pipeline on `g·K_f`; `None` when it has no skew-symmetric fission.
pub fn imprimitive_candidate(f: i64, g: i64) -> Result<Option<ScanRecord>, ConsistencyError> {
    let p = imprimitive_srg(f, g);
    if [p.m1, p.m2, p.k, p.k2()].iter().any(|v| v % 2 != 0) {
        return Ok(None);
    }
    if corollary_filters_int(&p, TableType::I).is_err() {
        return Ok(None);
    }
    let Some(ev) = evaluate_candidate(&p, TableType::I, None)? else { return Ok(None) };
    if ev.status == Status::IntegralityExcluded {
        return Ok(None);
    }
    let mut rec = srg_record(&p, Family::Imprimitive, TableType::I, None, ev);
    rec.blocks = Some((f, g));
    if rec.status == Status::Feasible {
        let wreath = prime_power(f as u64).is_some() && prime_power(g as u64).is_some();
        rec.existence = if wreath { "+" } else { "?" }.into();
        if wreath {
            rec.citation = Some(format!("Cyc({f},2) wr Cyc({g},2)"));
        }
    }
    Ok(Some(rec))
}

/// All `(f, g)` with `f, g ≥ 2` and `fg ≤ n_max` whose `g·K_f` admits a feasible fission.
pub fn imprimitive_scan(n_max: i64, strategy: Strategy) -> Result<Vec<ScanRecord>, ConsistencyError> {
    let pairs: Vec<(i64, i64)> = (2..=n_max / 2).flat_map(|f| (2..=n_max / f).map(move |g| (f, g))).collect();
    let results = strategy.map(pairs, |(f, g)| imprimitive_candidate(f, g));
    let mut out = Vec::new();
    for r in results {
        if let Some(rec) = r? {
            out.push(rec);
        }
    }
    sort_records(&mut out);
    Ok(out)
}

/// J(v, 2) for `5 ≤ v ≤ v_max`. Values of `v` with an odd multiplicity or valency are
/// recorded as excluded; for the rest the full fission scan runs and the structural
/// candidates `z = v(v−3)²/4` and `z = v(v−3)²/2` are always reported.
pub fn johnson_scan(v_max: i64, strategy: Strategy) -> Result<Vec<ScanRecord>, ConsistencyError> {
    let vs: Vec<i64> = (5..=v_max).collect();
    let results = strategy.map(vs, |v| johnson_records(v, Strategy::Sequential));
    let mut out = Vec::new();
    for r in results {
        out.extend(r?);
    }
    sort_records(&mut out);
    Ok(out)
}

fn johnson_srg(v: i64) -> IntSrg {
    let (n, k, lambda, mu) = johnson2_params(v).expect("v >= 5");
    IntSrg { n, k, lambda, mu, r: v - 4, s: -2, m1: v - 1, m2: v * (v - 3) / 2 }
}

fn johnson_records(v: i64, strategy: Strategy) -> Result<Vec<ScanRecord>, ConsistencyError> {
    let p = johnson_srg(v);
    let base = |status| {
        let mut r = ScanRecord::new(p.n, Family::Johnson, status).with_srg(&p);
        r.v = Some(v);
        r.existence = "0".into();
        r
    };
    let odd: Vec<&str> = [("m1", p.m1), ("m2", p.m2), ("k", p.k), ("k2", p.k2())]
        .iter()
        .filter(|(_, x)| x % 2 != 0)
        .map(|(name, _)| *name)
        .collect();
    if !odd.is_empty() {
        let mut rec = base(Status::IntegralityExcluded);
        rec.notes.push(format!("odd {}", odd.join(", ")));
        return Ok(vec![rec]);
    }
    let mut out: Vec<ScanRecord> = fission_scan_with(&p, strategy)?
        .into_iter()
        .map(|mut r| {
            r.family = Family::Johnson;
            r.v = Some(v);
            r
        })
        .collect();
    let z1 = v * (v - 3) * (v - 3) / 4;
    if !out.iter().any(|r| r.z == Some(z1)) {
        if let Some(ev) = evaluate_candidate(&p, TableType::III, Some(z1))? {
            let mut rec = base(ev.status);
            rec.table_type = Some(TableType::III);
            rec.z = Some(z1);
            rec.krein_negatives = ev.krein_negatives;
            out.push(rec);
        }
    }
    for r in out.iter_mut().filter(|r| r.z == Some(z1)) {
        r.notes.push("structural z = v(v-3)^2/4".into());
    }
    let z2 = v * (v - 3) * (v - 3) / 2;
    let mut rec = base(Status::IntegralityExcluded);
    rec.table_type = Some(TableType::III);
    rec.z = Some(z2);
    match evaluate_candidate(&p, TableType::III, Some(z2))? {
        None => rec.notes.push("structural z = v(v-3)^2/2: c <= 0".into()),
        Some(_) => rec.notes.push("structural z = v(v-3)^2/2 unexpectedly admits a table".into()),
    }
    out.push(rec);
    Ok(out)
}

/// Existence annotations keyed by partial record contents.
///
/// The file is a JSON array of `{"match": {...}, "existence": "...", "citation": "..."}`;
/// an entry applies to every record whose JSON form has all the `match` fields equal.
#[derive(Debug, Clone, Default, Serialize, Deserialize)]
pub struct Annotations(pub Vec<Annotation>);

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct Annotation {
    #[serde(rename = "match")]
    pub matcher: serde_json::Map<String, Value>,
    pub existence: String,
    #[serde(default)]
    pub citation: Option<String>,
}

impl Annotations {
    pub fn from_json(text: &str) -> Result<Self, serde_json::Error> {
        serde_json::from_str(text)
    }

    pub fn apply(&self, records: &mut [ScanRecord]) {
        for rec in records.iter_mut() {
            let Ok(Value::Object(fields)) = serde_json::to_value(&*rec) else { continue };
            for a in &self.0 {
                if a.matcher.iter().all(|(k, v)| fields.get(k) == Some(v)) {
                    rec.existence = a.existence.clone();
                    rec.citation = a.citation.clone();
                }
            }
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Tsv,
    Json,
    Markdown,
}

const COLUMNS: [&str; 10] =
    ["n", "family", "parameters", "type", "z", "status", "existence", "citation", "krein_witness", "notes"];

fn text_row(r: &ScanRecord) -> [String; 10] {
    let opt = |o: Option<String>| o.unwrap_or_default();
    [
        r.n.to_string(),
        r.family.to_string(),
        r.parameters(),
        opt(r.table_type.map(|t| t.to_string())),
        opt(r.z.map(|z| z.to_string())),
        r.status.to_string(),
        r.existence.clone(),
        opt(r.citation.clone()),
        r.krein_negatives.first().map(|w| w.to_string()).unwrap_or_default(),
        r.notes.join("; "),
    ]
}

/// Writes records; JSON omits character tables unless `with_tables`.
pub fn write_records(out: &mut dyn Write, records: &[ScanRecord], format: Format, with_tables: bool) -> io::Result<()> {
    match format {
        Format::Tsv => {
            writeln!(out, "{}", COLUMNS.join("\t"))?;
            for r in records {
                writeln!(out, "{}", text_row(r).join("\t"))?;
            }
        }
        Format::Markdown => {
            writeln!(out, "| {} |", COLUMNS.join(" | "))?;
            writeln!(out, "|{}", "---|".repeat(COLUMNS.len()))?;
            for r in records {
                writeln!(out, "| {} |", text_row(r).join(" | "))?;
            }
        }
        Format::Json => {
            let stripped: Vec<ScanRecord>;
            let view = if with_tables {
                records
            } else {
                stripped = records
                    .iter()
                    .cloned()
                    .map(|mut r| {
                        r.table = None;
                        r
                    })
                    .collect();
                &stripped
            };
            serde_json::to_writer_pretty(&mut *out, view).map_err(io::Error::other)?;
            writeln!(out)?;
        }
    }
    Ok(())
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ClassifyError {
    #[error("not an association scheme: {0}")]
    NotAScheme(String),
    #[error("expected a 4-class skew-symmetric scheme, got {0}")]
    NotSkew4(String),
    #[error("no parameter set of the known families matches this scheme")]
    NoMatch,
    #[error("several inequivalent classifications match: {0}")]
    Ambiguous(String),
}

/// Where a 4-class skew-symmetric scheme sits among the known families.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Classification {
    pub family: Family,
    pub n: i64,
    pub k: i64,
    pub lambda: i64,
    pub mu: i64,
    pub table_type: Option<TableType>,
    pub z: Option<i64>,
    pub g: Option<i64>,
    /// Sign of `h` realized by the scheme under the relabeling found.
    pub h: Option<i64>,
    pub blocks: Option<(i64, i64)>,
    /// `relabeling[i]` is the canonical index of relation `i`.
    pub relabeling: Vec<u8>,
}

type ClassKey = (Family, i64, i64, i64, i64, Option<TableType>, Option<i64>, Option<i64>);

impl Classification {
    fn key(&self) -> ClassKey {
        (self.family, self.n, self.k, self.lambda, self.mu, self.table_type, self.z, self.g)
    }
}

impl fmt::Display for Classification {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.family {
            Family::Conference => {
                write!(f, "conference q={} g={} h={}", self.n, self.g.unwrap_or(0), self.h.unwrap_or(0))
            }
            _ => {
                write!(f, "{} ({}, {}, {}, {})", self.family, self.n, self.k, self.lambda, self.mu)?;
                if let Some((bf, bg)) = self.blocks {
                    write!(f, " f={bf} g={bg}")?;
                }
                if let Some(t) = self.table_type {
                    write!(f, " type {t}")?;
                }
                if let Some(z) = self.z {
                    write!(f, " z={z}")?;
                }
                Ok(())
            }
        }
    }
}

/// The eight relabelings putting a 4-class skew-symmetric scheme into `(R0, R1, R2, R2ᵀ, R1ᵀ)` form,
/// starting with the one that keeps relation 1 as `R1`.
pub fn skew4_relabelings(transpose: &[usize]) -> Vec<Vec<u8>> {
    let a = 1;
    let b = (2..5).find(|&i| i != transpose[a]).unwrap_or(2);
    let mut out = Vec::new();
    for (p1, p2) in [(a, b), (b, a)] {
        for x in [p1, transpose[p1]] {
            for y in [p2, transpose[p2]] {
                let mut idx = vec![0u8; 5];
                idx[x] = 1;
                idx[transpose[x]] = 4;
                idx[y] = 2;
                idx[transpose[y]] = 3;
                out.push(idx);
            }
        }
    }
    out
}

/// SRG parameters of `R1 ∪ R1ᵀ` in a canonical tensor.
pub fn srg_of_tensor(t: &IntersectionTensor) -> (i64, i64, i64, i64) {
    let pair = [1, 4];
    let k = (t.valencies()[1] + t.valencies()[4]) as i64;
    let sum = |l: usize| {
        pair.iter().flat_map(|&i| pair.iter().map(move |&j| (i, j))).map(|(i, j)| t.get(i, j, l) as i64).sum::<i64>()
    };
    (t.n() as i64, k, sum(1), sum(2))
}

fn matches_for(t: &IntersectionTensor, relabeling: &[u8]) -> Vec<Classification> {
    let (n, k, lambda, mu) = srg_of_tensor(t);
    let base = |family| Classification {
        family,
        n,
        k,
        lambda,
        mu,
        table_type: None,
        z: None,
        g: None,
        h: None,
        blocks: None,
        relabeling: relabeling.to_vec(),
    };
    let Ok(params) = srg_derive(n, k, lambda, mu) else { return Vec::new() };
    let mut out = Vec::new();
    if params.is_conference() {
        if n % 8 != 5 {
            return out;
        }
        for ts in two_squares(n as u64) {
            for h in [ts.h, -ts.h] {
                if cyc4_closed_form(n as u64, ts.g, h).is_ok_and(|c| c.tensor() == *t) {
                    let mut c = base(Family::Conference);
                    c.g = Some(ts.g);
                    c.h = Some(h);
                    out.push(c);
                }
            }
        }
        return out;
    }
    let Some(ip) = params.integral() else { return out };
    let family = if mu == 0 { Family::Imprimitive } else { Family::Srg };
    let blocks = (mu == 0).then(|| (k + 1, n / (k + 1)));
    let hit = |cf: Result<crate::spectra::ClosedForm<i128>, SpectraError>| {
        cf.ok().and_then(|c| c.to_tensor().ok()).is_some_and(|x| x == *t)
    };
    for tt in [TableType::I, TableType::II] {
        if hit(closed_form::<i128>(&ip, tt, None)) {
            let mut c = base(family);
            c.table_type = Some(tt);
            c.blocks = blocks;
            out.push(c);
        }
    }
    if ip.m1 % 2 == 0 && ip.m2 % 2 == 0 {
        for z in type3_integral_z(&ip, Strategy::Sequential) {
            if hit(closed_form::<i128>(&ip, TableType::III, Some(&Ratio::from_integer(z as i128)))) {
                let mut c = base(family);
                c.table_type = Some(TableType::III);
                c.z = Some(z);
                c.blocks = blocks;
                out.push(c);
            }
        }
    }
    out
}

/// Identifies a 4-class skew-symmetric scheme: conference fission with `(q, g)`, an
/// imprimitive `g·K_f` fission, or a fission of a primitive SRG with its table type and `z`.
///
/// The graph is taken to be the relation pair giving `μ = 0` when there is one, and otherwise
/// the pair of smaller valency, then smaller `λ`.
pub fn classify_scheme(s: &AssociationScheme) -> Result<Classification, ClassifyError> {
    let report = verify_axioms(s);
    if !report.passed() {
        return Err(ClassifyError::NotAScheme(report.first_failure().unwrap_or_default()));
    }
    if s.d() != 4 || !is_skew_symmetric(s) {
        return Err(ClassifyError::NotSkew4(format!("{} classes, skew-symmetric: {}", s.d(), is_skew_symmetric(s))));
    }
    let t = intersection_tensor(s).map_err(|e| ClassifyError::NotAScheme(e.to_string()))?;
    classify_tensor(&t)
}

pub fn classify_tensor(t: &IntersectionTensor) -> Result<Classification, ClassifyError> {
    let transpose = t.transpose_map();
    let mut all = Vec::new();
    for idx in skew4_relabelings(&transpose) {
        let nidx: Vec<usize> = idx.iter().map(|&v| v as usize).collect();
        all.extend(matches_for(&t.relabel(&nidx), &idx));
    }
    if all.iter().any(|c| c.mu == 0) {
        all.retain(|c| c.mu == 0);
    } else if let Some(kmin) = all.iter().map(|c| c.k).min() {
        all.retain(|c| c.k == kmin);
        // both pairs have valency (n-1)/2
        if let Some(lmin) = all.iter().map(|c| c.lambda).min() {
            all.retain(|c| c.lambda == lmin);
        }
    }
    let mut keys: Vec<_> = all.iter().map(|c| c.key()).collect();
    keys.sort();
    keys.dedup();
    match keys.len() {
        0 => Err(ClassifyError::NoMatch),
        1 => Ok(all.swap_remove(0)),
        _ => Err(ClassifyError::Ambiguous(all.iter().map(|c| c.to_string()).collect::<Vec<_>>().join("; "))),
    }
}

/// Exact closed-form tensor of a type I/II/III candidate, when integral.
pub fn candidate_tensor(p: &IntSrg, table_type: TableType, z: Option<i64>) -> Option<IntersectionTensor> {
    let zr = z.map(|z| Ratio::from_integer(BigInt::from(z)));
    closed_form::<BigInt>(p, table_type, zr.as_ref()).ok()?.to_tensor().ok()
}
