//! Character tables of 4-class skew-symmetric fissions of strongly regular
//! graphs, their intersection matrices in closed form, and the exact
//! evaluation of intersection numbers and Krein parameters from a table.
//!
//! Relations are always ordered `(R0, R1, R2, R2ᵀ, R1ᵀ)` where `R1 ∪ R1ᵀ` is
//! the graph and `R2 ∪ R2ᵀ` its complement. Table rows are ordered so that
//! rows 1 and 4, and rows 2 and 3, are complex conjugates.

use std::fmt;

use num_bigint::BigInt;
use num_integer::{Integer, Roots};
use num_rational::Ratio;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::ser::{SerializeSeq, Serializer};
use serde::{Deserialize, Serialize};
use thiserror::Error;
use twofloat::TwoFloat;

use crate::exactnum::{as_integer, int, rat, surd_sign, surd_sqrt, ComplexSurd, Rational, SurdError, SurdSum};
use crate::scheme::{skew4_tensor, IntersectionTensor};

/// Tolerance of the floating point cross-check for conference tables.
pub const CONFERENCE_TOLERANCE: f64 = 1e-9;

/// `j ↦ j'` on `(R0, R1, R2, R2ᵀ, R1ᵀ)`.
pub const TRANSPOSE: [usize; 5] = [0, 4, 3, 2, 1];

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SpectraError {
    #[error("invalid parameters: {0}")]
    Parameters(String),
    #[error("k(k - lambda - 1) != (n - k - 1)mu for ({0}, {1}, {2}, {3})")]
    Identity(i64, i64, i64, i64),
    #[error("multiplicities are not positive integers: {0}")]
    Multiplicities(String),
    #[error("conference parameters have no table of types I-III; use the conference table")]
    Conference,
    #[error("table type III requires z")]
    MissingZ,
    #[error("z = {z} is out of range: {reason}")]
    ZRange { z: String, reason: String },
    #[error("sqrt(yz) and sqrt(bc) are irrational, so the candidate is structurally infeasible")]
    IrrationalPhi,
    #[error("p^{l}_{i}{j} = {value} is not a nonnegative integer")]
    Entry { i: usize, j: usize, l: usize, value: String },
    #[error("{0}")]
    Congruence(String),
    #[error(transparent)]
    Surd(#[from] SurdError),
}

fn ser_rat<S: Serializer>(r: &Rational, s: S) -> Result<S::Ok, S::Error> {
    s.collect_str(r)
}

fn ser_rats<S: Serializer>(v: &[Rational; 5], s: S) -> Result<S::Ok, S::Error> {
    let mut seq = s.serialize_seq(Some(5))?;
    for r in v {
        seq.serialize_element(&r.to_string())?;
    }
    seq.end()
}

/// Parameters of a strongly regular graph with its spectrum.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SrgParams {
    pub n: i64,
    pub k: i64,
    pub lambda: i64,
    pub mu: i64,
    /// Valency of the complement, `n − k − 1`.
    pub k2: i64,
    pub r: SurdSum,
    pub s: SurdSum,
    /// Complement eigenvalues `−1 − r` and `−1 − s`.
    pub t: SurdSum,
    pub u: SurdSum,
    pub m1: i64,
    pub m2: i64,
}

/// Integer-eigenvalue view of [`SrgParams`], cheap to copy into hot loops.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct IntSrg {
    pub n: i64,
    pub k: i64,
    pub lambda: i64,
    pub mu: i64,
    pub r: i64,
    pub s: i64,
    pub m1: i64,
    pub m2: i64,
}

impl IntSrg {
    pub fn k2(&self) -> i64 {
        self.n - self.k - 1
    }

    pub fn t(&self) -> i64 {
        -1 - self.r
    }

    pub fn u(&self) -> i64 {
        -1 - self.s
    }

    pub fn tuple(&self) -> (i64, i64, i64, i64) {
        (self.n, self.k, self.lambda, self.mu)
    }
}

impl SrgParams {
    pub fn is_conference(&self) -> bool {
        self.m1 == self.m2
    }

    pub fn tuple(&self) -> (i64, i64, i64, i64) {
        (self.n, self.k, self.lambda, self.mu)
    }

    /// `Some` when both eigenvalues are integers.
    pub fn integral(&self) -> Option<IntSrg> {
        Some(IntSrg {
            n: self.n,
            k: self.k,
            lambda: self.lambda,
            mu: self.mu,
            r: as_integer(&self.r)?,
            s: as_integer(&self.s)?,
            m1: self.m1,
            m2: self.m2,
        })
    }
}

/// Derives eigenvalues and multiplicities of an SRG(n, k, λ, μ).
pub fn srg_derive(n: i64, k: i64, lambda: i64, mu: i64) -> Result<SrgParams, SpectraError> {
    if !(0 < k && k < n - 1) || !(0 <= lambda && lambda < k) || !(0 <= mu && mu <= k) {
        return Err(SpectraError::Parameters(format!(
            "need 0 < k < n - 1, 0 <= lambda < k, 0 <= mu <= k; got ({n}, {k}, {lambda}, {mu})"
        )));
    }
    let k2 = n - k - 1;
    if k.checked_mul(k - lambda - 1) != k2.checked_mul(mu) {
        return Err(SpectraError::Identity(n, k, lambda, mu));
    }
    let disc = (lambda - mu) * (lambda - mu) + 4 * (k - mu);
    let root = surd_sqrt(&int(disc))?;
    let half = rat(1, 2);
    let base = SurdSum::from_int(lambda - mu);
    let r = (&base + &root).scale(&half);
    let s = (&base - &root).scale(&half);
    let (m1, m2) = match root.to_rational() {
        Some(d) => {
            // m1 = (−k − (n−1)s)/(r − s)
            let sr = s.rational_part();
            let m1 = (int(-k) - int(n - 1) * sr) / d;
            if !m1.is_integer() {
                return Err(SpectraError::Multiplicities(format!("m1 = {m1}")));
            }
            let m1 = m1.to_integer().to_i64().unwrap_or(0);
            (m1, n - 1 - m1)
        }
        None => {
            if 2 * k + (n - 1) * (lambda - mu) != 0 || (n - 1) % 2 != 0 {
                return Err(SpectraError::Multiplicities(format!(
                    "irrational eigenvalues with 2k + (n - 1)(lambda - mu) = {}",
                    2 * k + (n - 1) * (lambda - mu)
                )));
            }
            ((n - 1) / 2, (n - 1) / 2)
        }
    };
    if m1 <= 0 || m2 <= 0 {
        return Err(SpectraError::Multiplicities(format!("m1 = {m1}, m2 = {m2}")));
    }
    let minus_one = SurdSum::from_int(-1);
    Ok(SrgParams { n, k, lambda, mu, k2, t: &minus_one - &r, u: &minus_one - &s, r, s, m1, m2 })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum TableType {
    I,
    II,
    III,
}

impl fmt::Display for TableType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            TableType::I => "I",
            TableType::II => "II",
            TableType::III => "III",
        })
    }
}

/// A table type together with the free parameter `z` of type III.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FissionCandidate {
    pub table_type: TableType,
    pub z: Option<Rational>,
}

impl FissionCandidate {
    pub fn type_i() -> Self {
        FissionCandidate { table_type: TableType::I, z: None }
    }

    pub fn type_ii() -> Self {
        FissionCandidate { table_type: TableType::II, z: None }
    }

    pub fn type_iii(z: Rational) -> Self {
        FissionCandidate { table_type: TableType::III, z: Some(z) }
    }
}

/// The auxiliary values `(y, b, c)` of a type III table.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Type3Aux<T: Clone + Integer> {
    pub y: Ratio<T>,
    pub b: Ratio<T>,
    pub c: Ratio<T>,
}

/// Integer types the closed forms can be evaluated over.
pub trait ExactInt: Integer + Signed + Clone + Roots + From<i64> + ToPrimitive + fmt::Display + Send + Sync {}

impl<T> ExactInt for T where T: Integer + Signed + Clone + Roots + From<i64> + ToPrimitive + fmt::Display + Send + Sync {}

fn ri<T: ExactInt>(v: i64) -> Ratio<T> {
    Ratio::from_integer(T::from(v))
}

/// Exact square root of a nonnegative ratio, when rational.
pub fn ratio_sqrt<T: ExactInt>(x: &Ratio<T>) -> Option<Ratio<T>> {
    if x.is_negative() {
        return None;
    }
    let n = x.numer().sqrt();
    let d = x.denom().sqrt();
    (n.clone() * n.clone() == *x.numer() && d.clone() * d.clone() == *x.denom()).then(|| Ratio::new(n, d))
}

/// `b = m1·z·k/(k2·m2)`, `y = k(nk2 − m1·z)/(k2·m1)`, `c = (nk2 − m1·z)/m2`.
pub fn type3_aux<T: ExactInt>(p: &IntSrg, z: &Ratio<T>) -> Result<Type3Aux<T>, SpectraError> {
    type3_aux_raw(p.n, p.k, p.m1, p.m2, z)
}

fn type3_aux_raw<T: ExactInt>(n: i64, k: i64, m1: i64, m2: i64, z: &Ratio<T>) -> Result<Type3Aux<T>, SpectraError> {
    let k2 = n - k - 1;
    let out_of_range = |reason: &str| SpectraError::ZRange { z: z.to_string(), reason: reason.into() };
    if !z.is_positive() {
        return Err(out_of_range("z <= 0"));
    }
    let rest = ri::<T>(n * k2) - ri::<T>(m1) * z.clone();
    let b = ri::<T>(m1 * k) * z.clone() / ri::<T>(k2 * m2);
    let y = ri::<T>(k) * rest.clone() / ri::<T>(k2 * m1);
    let c = rest / ri::<T>(m2);
    if !c.is_positive() {
        return Err(out_of_range("c <= 0"));
    }
    if !y.is_positive() || !b.is_positive() {
        return Err(out_of_range("y or b <= 0"));
    }
    Ok(Type3Aux { y, b, c })
}

/// [`type3_aux`] over exact rationals, additionally checking `m1·y + m2·b = nk`,
/// `m1·z + m2·c = nk2` and `m1√(yz) = m2√(bc)`.
pub fn type3_auxiliary(p: &SrgParams, z: &Rational) -> Result<Type3Aux<BigInt>, SpectraError> {
    let aux = type3_aux_raw::<BigInt>(p.n, p.k, p.m1, p.m2, z)?;
    let (m1, m2) = (int(p.m1), int(p.m2));
    assert_eq!(&m1 * &aux.y + &m2 * &aux.b, int(p.n * p.k));
    assert_eq!(&m1 * z + &m2 * &aux.c, int(p.n * p.k2));
    assert_eq!(&m1 * &m1 * &aux.y * z, &m2 * &m2 * &aux.b * &aux.c);
    Ok(aux)
}

/// A 5×5 character table with row multiplicities and column valencies.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CharacterTable<E> {
    pub n: i64,
    pub entries: [[E; 5]; 5],
    #[serde(serialize_with = "ser_rats")]
    pub multiplicities: [Rational; 5],
    #[serde(serialize_with = "ser_rats")]
    pub valencies: [Rational; 5],
}

#[allow(clippy::too_many_arguments)]
fn arrange<E: Clone>(
    first: E,
    v1: E,
    v2: E,
    rho: E,
    tau: E,
    sigma: E,
    omega: E,
    conj: impl Fn(&E) -> E,
) -> [[E; 5]; 5] {
    [
        [first.clone(), v1.clone(), v2.clone(), v2, v1],
        [first.clone(), rho.clone(), tau.clone(), conj(&tau), conj(&rho)],
        [first.clone(), sigma.clone(), omega.clone(), conj(&omega), conj(&sigma)],
        [first.clone(), conj(&sigma), conj(&omega), omega, sigma],
        [first, conj(&rho), conj(&tau), tau, rho],
    ]
}

/// The exact table of type I, II or III for a non-conference SRG.
pub fn character_table(p: &SrgParams, f: &FissionCandidate) -> Result<CharacterTable<ComplexSurd>, SpectraError> {
    if p.is_conference() {
        return Err(SpectraError::Conference);
    }
    let ip = p.integral().ok_or(SpectraError::Conference)?;
    let half = rat(1, 2);
    let real = |v: i64| ComplexSurd::from_rational(rat(v, 2));
    let imag = |a: i64, x: &Rational| ComplexSurd::with_sqrt_neg(SurdSum::from_int(a), x, &half);
    let (n, k, k2) = (p.n, p.k, p.k2);
    let (rho, sigma, tau, omega) = match f.table_type {
        TableType::I => {
            let b = rat(n * k, p.m2);
            let z = rat(n * k2, p.m1);
            (real(ip.r), imag(ip.s, &b)?, imag(ip.t(), &z)?, real(ip.u()))
        }
        TableType::II => {
            let y = rat(n * k, p.m1);
            let c = rat(n * k2, p.m2);
            (imag(ip.r, &y)?, real(ip.s), real(ip.t()), imag(ip.u(), &c)?)
        }
        TableType::III => {
            let z = f.z.as_ref().ok_or(SpectraError::MissingZ)?;
            let aux = type3_auxiliary(p, z)?;
            (imag(ip.r, &aux.y)?, imag(ip.s, &aux.b)?, imag(ip.t(), z)?, imag(ip.u(), &aux.c)?.conj())
        }
    };
    let entries = arrange(ComplexSurd::from_int(1), real(k), real(k2), rho, tau, sigma, omega, ComplexSurd::conj);
    Ok(CharacterTable {
        n,
        entries,
        multiplicities: [int(1), rat(p.m1, 2), rat(p.m2, 2), rat(p.m2, 2), rat(p.m1, 2)],
        valencies: [int(1), rat(k, 2), rat(k2, 2), rat(k2, 2), rat(k, 2)],
    })
}

impl CharacterTable<ComplexSurd> {
    /// Row and column orthogonality:
    /// `Σ_h m_h p_{hi} p̄_{hj} = n·k_i·[i = j]` and `Σ_i p_{hi} p̄_{li} / k_i = (n / m_h)·[h = l]`.
    pub fn check_orthogonality(&self) -> Result<(), String> {
        let e = &self.entries;
        for i in 0..5 {
            for j in 0..5 {
                let mut sum = ComplexSurd::from_int(0);
                for h in 0..5 {
                    sum += &(&e[h][i] * &e[h][j].conj()).scale(&self.multiplicities[h]);
                }
                let want = if i == j { int(self.n) * &self.valencies[i] } else { int(0) };
                if sum != ComplexSurd::from_rational(want) {
                    return Err(format!("columns {i}, {j}: {sum}"));
                }
                let mut sum = ComplexSurd::from_int(0);
                for c in 0..5 {
                    sum += &(&e[i][c] * &e[j][c].conj()).scale(&self.valencies[c].recip());
                }
                let want = if i == j { int(self.n) / &self.multiplicities[i] } else { int(0) };
                if sum != ComplexSurd::from_rational(want) {
                    return Err(format!("rows {i}, {j}: {sum}"));
                }
            }
        }
        Ok(())
    }
}

/// Value `(a + b√q) + σ·i·√(c + e√q)` with `σ = ±1`, used for tables of
/// pseudocyclic fissions of conference graphs.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ConferenceEntry {
    #[serde(serialize_with = "ser_rat")]
    pub a: Rational,
    #[serde(serialize_with = "ser_rat")]
    pub b: Rational,
    #[serde(serialize_with = "ser_rat")]
    pub c: Rational,
    #[serde(serialize_with = "ser_rat")]
    pub e: Rational,
    pub q: i64,
    /// Sign of the imaginary part; `conj` flips it.
    pub im_sign: i8,
}

impl ConferenceEntry {
    pub fn rational(v: Rational, q: i64) -> Self {
        ConferenceEntry { a: v, b: int(0), c: int(0), e: int(0), q, im_sign: 1 }
    }

    pub fn new(a: Rational, b: Rational, c: Rational, e: Rational, q: i64) -> Result<Self, SpectraError> {
        let arg = &SurdSum::from_rational(c.clone()) + &SurdSum::sqrt_int(q as u64).scale(&e);
        if surd_sign(&arg) < 0 {
            return Err(SpectraError::Parameters(format!("negative radical argument {arg}")));
        }
        Ok(ConferenceEntry { a, b, c, e, q, im_sign: 1 })
    }

    pub fn conj(&self) -> Self {
        ConferenceEntry { im_sign: -self.im_sign, ..self.clone() }
    }

    /// `a + b√q`.
    pub fn real_part(&self) -> SurdSum {
        &SurdSum::from_rational(self.a.clone()) + &SurdSum::sqrt_int(self.q as u64).scale(&self.b)
    }

    pub fn to_complex(&self) -> Complex2 {
        let sq = TwoFloat::from(self.q as f64).sqrt();
        let re = tf(&self.a) + tf(&self.b) * sq;
        let arg = tf(&self.c) + tf(&self.e) * sq;
        let im = if arg <= TwoFloat::from(0.0) { TwoFloat::from(0.0) } else { arg.sqrt() };
        Complex2 { re, im: if self.im_sign < 0 { -im } else { im } }
    }
}

impl fmt::Display for ConferenceEntry {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.real_part())?;
        if !self.c.is_zero() || !self.e.is_zero() {
            let sign = if self.im_sign < 0 { '-' } else { '+' };
            let arg = &SurdSum::from_rational(self.c.clone()) + &SurdSum::sqrt_int(self.q as u64).scale(&self.e);
            write!(f, " {sign} i*sqrt({arg})")?;
        }
        Ok(())
    }
}

/// Double-double complex number for floating point diagnostics.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Complex2 {
    pub re: TwoFloat,
    pub im: TwoFloat,
}

impl Complex2 {
    fn zero() -> Self {
        Complex2 { re: TwoFloat::from(0.0), im: TwoFloat::from(0.0) }
    }

    fn mul(self, o: Self) -> Self {
        Complex2 { re: self.re * o.re - self.im * o.im, im: self.re * o.im + self.im * o.re }
    }

    fn conj(self) -> Self {
        Complex2 { re: self.re, im: -self.im }
    }
}

fn tf(r: &Rational) -> TwoFloat {
    let part = |b: &BigInt| {
        let hi = b.to_f64().unwrap_or(f64::NAN);
        let lo = (b - BigInt::from(hi as i128)).to_f64().unwrap_or(0.0);
        TwoFloat::from(hi) + TwoFloat::from(lo)
    };
    part(r.numer()) / part(r.denom())
}

/// Rational value as a double-double.
pub fn rational_to_twofloat(r: &Rational) -> TwoFloat {
    tf(r)
}

/// Surd sum as a double-double, for diagnostics only.
pub fn surd_to_twofloat(s: &SurdSum) -> TwoFloat {
    s.terms().fold(TwoFloat::from(0.0), |acc, (rad, c)| acc + tf(c) * TwoFloat::from(rad as f64).sqrt())
}

/// `(g, h)` with `q = g² + 4h²`, `g ≡ 1 (mod 4)`, `h > 0`, when `g` admits it.
fn conference_h(q: i64, g: i64) -> Result<i64, SpectraError> {
    if q % 8 != 5 {
        return Err(SpectraError::Congruence(format!("q = {q} is not 5 mod 8")));
    }
    if g.rem_euclid(4) != 1 {
        return Err(SpectraError::Congruence(format!("g = {g} is not 1 mod 4")));
    }
    let rest = q - g * g;
    if rest <= 0 || rest % 4 != 0 {
        return Err(SpectraError::Congruence(format!("{q} - {g}^2 is not 4h^2 with h > 0")));
    }
    let h = (rest / 4).sqrt();
    if h * h != rest / 4 {
        return Err(SpectraError::Congruence(format!("({q} - {g}^2)/4 is not a square")));
    }
    Ok(h)
}

/// Table of a pseudocyclic 4-class fission of the conference graph on `q` points:
/// `ρ = (−1 + √q + i√(2q + 2g√q))/4`, `τ = (−1 − √q + i√(2q − 2g√q))/4`,
/// rows `[1, ρ, τ, τ̄, ρ̄]`, `[1, τ, ρ̄, ρ, τ̄]` and their conjugates.
pub fn conference_table(q: i64, g: i64) -> Result<CharacterTable<ConferenceEntry>, SpectraError> {
    conference_h(q, g)?;
    let f = (q - 1) / 4;
    let rho = ConferenceEntry::new(rat(-1, 4), rat(1, 4), rat(q, 8), rat(g, 8), q)?;
    let tau = ConferenceEntry::new(rat(-1, 4), rat(-1, 4), rat(q, 8), rat(-g, 8), q)?;
    let one = ConferenceEntry::rational(int(1), q);
    let fe = ConferenceEntry::rational(int(f), q);
    let entries = [
        [one.clone(), fe.clone(), fe.clone(), fe.clone(), fe],
        [one.clone(), rho.clone(), tau.clone(), tau.conj(), rho.conj()],
        [one.clone(), tau.clone(), rho.conj(), rho.clone(), tau.conj()],
        [one.clone(), tau.conj(), rho.clone(), rho.conj(), tau.clone()],
        [one, rho.conj(), tau.conj(), tau, rho],
    ];
    let fr = int(f);
    Ok(CharacterTable {
        n: q,
        entries,
        multiplicities: [int(1), fr.clone(), fr.clone(), fr.clone(), fr.clone()],
        valencies: [int(1), fr.clone(), fr.clone(), fr.clone(), fr],
    })
}

/// Intersection numbers of a conference table, evaluated in double-double precision
/// and rounded; every entry must lie within [`CONFERENCE_TOLERANCE`] of a nonnegative integer.
pub fn conference_p_tensor(t: &CharacterTable<ConferenceEntry>) -> Result<IntersectionTensor, SpectraError> {
    let p: Vec<Complex2> = (0..125)
        .map(|idx| {
            let (i, j, l) = (idx / 25, idx / 5 % 5, idx % 5);
            let mut acc = Complex2::zero();
            for h in 0..5 {
                let term = t.entries[h][i]
                    .to_complex()
                    .mul(t.entries[h][j].to_complex())
                    .mul(t.entries[h][l].to_complex().conj());
                let m = tf(&t.multiplicities[h]);
                acc.re += term.re * m;
                acc.im += term.im * m;
            }
            let scale = TwoFloat::from(t.n as f64) * tf(&t.valencies[l]);
            Complex2 { re: acc.re / scale, im: acc.im / scale }
        })
        .collect();
    let mut out = vec![0u64; 125];
    for (idx, v) in p.iter().enumerate() {
        let rounded = v.re.hi().round();
        let off = (v.re - TwoFloat::from(rounded)).abs();
        if rounded < 0.0 || off.hi() > CONFERENCE_TOLERANCE || v.im.abs().hi() > CONFERENCE_TOLERANCE {
            return Err(SpectraError::Entry {
                i: idx / 25,
                j: idx / 5 % 5,
                l: idx % 5,
                value: format!("{:.12} + {:.3e}i", v.re.hi(), v.im.hi()),
            });
        }
        out[idx] = rounded as u64;
    }
    Ok(IntersectionTensor::from_fn(4, |i, j, k| out[i * 25 + j * 5 + k]))
}

/// Krein parameters of a conference table in double-double precision, indexed `i·25 + j·5 + l`.
pub fn conference_q_numeric(t: &CharacterTable<ConferenceEntry>) -> Vec<Complex2> {
    let e: Vec<Vec<Complex2>> =
        t.entries.iter().map(|row| row.iter().map(ConferenceEntry::to_complex).collect()).collect();
    (0..125)
        .map(|idx| {
            let (i, j, l) = (idx / 25, idx / 5 % 5, idx % 5);
            let mut acc = Complex2::zero();
            for h in 0..5 {
                let term = e[i][h].mul(e[j][h]).mul(e[l][h].conj());
                let k = tf(&t.valencies[h]);
                acc.re += term.re / (k * k);
                acc.im += term.im / (k * k);
            }
            let scale = tf(&t.multiplicities[i]) * tf(&t.multiplicities[j]) / TwoFloat::from(t.n as f64);
            Complex2 { re: acc.re * scale, im: acc.im * scale }
        })
        .collect()
}

/// Raw values of `p^l_{ij} =(1/(n·k_l)) Σ_h m_h p_{hi} p_{hj} p̄_{hl}`, indexed `i·25 + j·5 + l`.
pub fn p_values(t: &CharacterTable<ComplexSurd>) -> Vec<ComplexSurd> {
    let e = &t.entries;
    let mut out = Vec::with_capacity(125);
    for i in 0..5 {
        for j in 0..5 {
            for l in 0..5 {
                let mut acc = ComplexSurd::from_int(0);
                for h in 0..5 {
                    let term = &(&e[h][i] * &e[h][j]) * &e[h][l].conj();
                    acc += &term.scale(&t.multiplicities[h]);
                }
                out.push(acc.scale(&(int(t.n) * &t.valencies[l]).recip()));
            }
        }
    }
    out
}

/// Intersection numbers from a character table; fails at the first entry that
/// is not a nonnegative integer.
pub fn p_from_table(t: &CharacterTable<ComplexSurd>) -> Result<IntersectionTensor, SpectraError> {
    let vals = p_values(t);
    let mut out = vec![0u64; 125];
    for (idx, v) in vals.iter().enumerate() {
        let ok = v.im.is_zero().then(|| as_integer(&v.re)).flatten().filter(|&x| x >= 0);
        match ok {
            Some(x) => out[idx] = x as u64,
            None => return Err(SpectraError::Entry { i: idx / 25, j: idx / 5 % 5, l: idx % 5, value: v.to_string() }),
        }
    }
    Ok(IntersectionTensor::from_fn(4, |i, j, k| out[i * 25 + j * 5 + k]))
}

/// Krein parameters `q^l_{ij}`, exact.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct KreinTensor {
    values: Vec<SurdSum>,
}

impl KreinTensor {
    pub fn get(&self, i: usize, j: usize, l: usize) -> &SurdSum {
        &self.values[i * 25 + j * 5 + l]
    }

    /// `(i, j, l)` with `q^l_{ij} < 0`, in index order.
    pub fn negatives(&self) -> Vec<(usize, usize, usize)> {
        (0..125).filter(|&idx| surd_sign(&self.values[idx]) < 0).map(|idx| (idx / 25, idx / 5 % 5, idx % 5)).collect()
    }

    pub fn is_nonnegative(&self) -> bool {
        self.values.iter().all(|v| surd_sign(v) >= 0)
    }
}

/// `q^l_{ij} = (m_i m_j / n) Σ_h p_{ih} p_{jh} p̄_{lh} / k_h²`.
pub fn q_from_table(t: &CharacterTable<ComplexSurd>) -> KreinTensor {
    let e = &t.entries;
    let mut values = Vec::with_capacity(125);
    for i in 0..5 {
        for j in 0..5 {
            for l in 0..5 {
                let mut acc = ComplexSurd::from_int(0);
                for h in 0..5 {
                    let term = &(&e[i][h] * &e[j][h]) * &e[l][h].conj();
                    acc += &term.scale(&(&t.valencies[h] * &t.valencies[h]).recip());
                }
                let v = acc.scale(&(&t.multiplicities[i] * &t.multiplicities[j] / int(t.n)));
                debug_assert!(v.im.is_zero(), "Krein parameter with imaginary part: {v}");
                values.push(v.re);
            }
        }
    }
    KreinTensor { values }
}

/// Principal 4×4 parts of `B1` and `B2` (rows `j`, columns `k`, both over `R1..R4`).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClosedForm<T: Clone + Integer> {
    pub table_type: TableType,
    pub k: i64,
    pub k2: i64,
    pub b1: [[Ratio<T>; 4]; 4],
    pub b2: [[Ratio<T>; 4]; 4],
    /// `(Γ, Φ, Π)` for type III.
    pub gamma_phi_pi: Option<[Ratio<T>; 3]>,
}

/// A closed-form entry that is not a nonnegative integer: matrix `i`, row `j`, column `k`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BadEntry {
    pub i: usize,
    pub j: usize,
    pub k: usize,
    pub value: String,
}

impl<T: ExactInt> ClosedForm<T> {
    /// Full 5×5 `B_i` for `i ∈ {1, 2}`, borders included.
    pub fn full(&self, i: usize) -> [[Ratio<T>; 5]; 5] {
        let (principal, border_row, valency) = match i {
            1 => (&self.b1, 4, self.k),
            2 => (&self.b2, 3, self.k2),
            _ => panic!("only B1 and B2 are stored"),
        };
        let mut m: [[Ratio<T>; 5]; 5] = std::array::from_fn(|_| std::array::from_fn(|_| Ratio::zero()));
        m[0][i] = Ratio::one();
        m[border_row][0] = Ratio::new(T::from(valency), T::from(2));
        for j in 0..4 {
            for k in 0..4 {
                m[j + 1][k + 1] = principal[j][k].clone();
            }
        }
        m
    }

    /// All 125 `p^k_{ij}`, with `B3`, `B4` completed from `B2`, `B1`.
    pub fn rational_tensor(&self) -> Vec<Ratio<T>> {
        let b1 = self.full(1);
        let b2 = self.full(2);
        let mut out = Vec::with_capacity(125);
        for i in 0..5 {
            for j in 0..5 {
                for k in 0..5 {
                    out.push(match i {
                        0 => {
                            if j == k {
                                Ratio::one()
                            } else {
                                Ratio::zero()
                            }
                        }
                        1 => b1[j][k].clone(),
                        2 => b2[j][k].clone(),
                        3 => b2[TRANSPOSE[j]][TRANSPOSE[k]].clone(),
                        _ => b1[TRANSPOSE[j]][TRANSPOSE[k]].clone(),
                    });
                }
            }
        }
        out
    }

    /// First entry of `B1`, `B2` (borders included) that is not a nonnegative integer.
    pub fn first_bad_entry(&self) -> Option<BadEntry> {
        for i in 1..=2 {
            let m = self.full(i);
            for (j, row) in m.iter().enumerate() {
                for (k, v) in row.iter().enumerate() {
                    if !v.is_integer() || v.is_negative() {
                        return Some(BadEntry { i, j, k, value: v.to_string() });
                    }
                }
            }
        }
        None
    }

    pub fn is_integral(&self) -> bool {
        self.first_bad_entry().is_none()
    }

    pub fn to_tensor(&self) -> Result<IntersectionTensor, SpectraError> {
        if let Some(b) = self.first_bad_entry() {
            return Err(SpectraError::Entry { i: b.i, j: b.j, l: b.k, value: b.value });
        }
        let conv = |m: [[Ratio<T>; 5]; 5]| m.map(|row| row.map(|v| v.to_integer().to_u64().unwrap_or(u64::MAX)));
        Ok(skew4_tensor(&conv(self.full(1)), &conv(self.full(2))))
    }
}

/// Intersection matrices in closed form, evaluated over `T`.
pub fn closed_form<T: ExactInt>(
    p: &IntSrg,
    table_type: TableType,
    z: Option<&Ratio<T>>,
) -> Result<ClosedForm<T>, SpectraError> {
    let (b1, b2, gfp) = match table_type {
        TableType::I => {
            let (b1, b2) = closed_form_i(p, p.r, p.s, p.t(), p.u());
            (b1, b2, None)
        }
        TableType::II => {
            let (b1, b2) = closed_form_i(p, p.s, p.r, p.u(), p.t());
            (b1, b2, None)
        }
        TableType::III => {
            let z = z.ok_or(SpectraError::MissingZ)?;
            let (b1, b2, gfp) = closed_form_iii(p, z)?;
            (b1, b2, Some(gfp))
        }
    };
    Ok(ClosedForm { table_type, k: p.k, k2: p.k2(), b1, b2, gamma_phi_pi: gfp })
}

type Principal<T> = [[Ratio<T>; 4]; 4];

fn closed_form_i<T: ExactInt>(p: &IntSrg, r: i64, s: i64, t: i64, u: i64) -> (Principal<T>, Principal<T>) {
    let (n, k, l, mu, k2) = (p.n, p.k, p.lambda, p.mu, p.k2());
    let q4 = |num: i64| Ratio::new(T::from(num), T::from(4));
    let qk = |num: i64, den: i64| Ratio::new(T::from(num), T::from(4 * den));
    let a = k - l - 1;
    let b1 = [
        [q4(l + s), qk(k * (a - u), k2), qk(k * (a - u), k2), q4(l - 3 * s)],
        [q4(a + u), q4(k - mu + r), q4(k - mu - r), q4(a - u)],
        [q4(a + u), q4(k - mu - r), q4(k - mu + r), q4(a - u)],
        [q4(l + s), qk(k * (a + u), k2), qk(k * (a + u), k2), q4(l + s)],
    ];
    let m = n - 2 * k + mu - 2;
    let b2 = [
        [q4(a + u), q4(k - mu + r), q4(k - mu - r), q4(a - u)],
        [qk(k2 * (k - mu - r), k), q4(m + t), q4(m - 3 * t), qk(k2 * (k - mu - r), k)],
        [qk(k2 * (k - mu + r), k), q4(m + t), q4(m + t), qk(k2 * (k - mu + r), k)],
        [q4(a - u), q4(k - mu + r), q4(k - mu - r), q4(a + u)],
    ];
    (b1, b2)
}

type WithGammaPhiPi<T> = (Principal<T>, Principal<T>, [Ratio<T>; 3]);

fn closed_form_iii<T: ExactInt>(p: &IntSrg, z: &Ratio<T>) -> Result<WithGammaPhiPi<T>, SpectraError> {
    let Type3Aux { y, b, c } = type3_aux(p, z)?;
    let sqrt_yz = ratio_sqrt(&(y.clone() * z.clone())).ok_or(SpectraError::IrrationalPhi)?;
    let sqrt_bc = ratio_sqrt(&(b.clone() * c.clone())).ok_or(SpectraError::IrrationalPhi)?;
    let v = |x: i64| ri::<T>(x);
    let (n, k, k2, l, mu) = (p.n, p.k, p.k2(), p.lambda, p.mu);
    let (m1r, m2s) = (v(p.m1 * p.r), v(p.m2 * p.s));
    let gamma = m1r.clone() * z.clone() + m2s.clone() * c;
    let phi = m1r.clone() * sqrt_yz - m2s.clone() * sqrt_bc;
    let pi = m1r * y + m2s * b;
    let nn = v(n * k);
    let n2 = v(n * k2);
    let a = v(n * k * (n - 2 * k + l));
    let bq = v(n * k2 * (n - 2 * k + mu));
    let (g, f2, pi1) = (gamma.clone(), phi.clone() * v(2), pi.clone());
    let over_n = |x: Ratio<T>| x / (nn.clone() * v(4));
    let over_n2 = |x: Ratio<T>| x / (n2.clone() * v(4));
    let nl = nn.clone() * v(l);
    let n2mu = n2.clone() * v(mu);
    // (N2μ − N − Π), (N + N2μ ∓ 2Φ + Π), (A ± Γ …) recur in both matrices
    let e_low = n2mu.clone() - nn.clone() - pi1.clone();
    let e_up_minus = nn.clone() + n2mu.clone() - f2.clone() + pi1.clone();
    let e_up_plus = nn.clone() + n2mu.clone() + f2.clone() + pi1.clone();
    let a_plus = a.clone() + g.clone();
    let a_minus_up = a.clone() - g.clone() + f2.clone();
    let a_minus_down = a.clone() - g.clone() - f2.clone();
    let b_low = bq.clone() - g.clone() - v(3) * n2.clone();
    let b1 = [
        [
            over_n(nl.clone() + pi1.clone()),
            over_n2(n2mu.clone() + nn.clone() + f2.clone() + pi1.clone()),
            over_n2(n2mu.clone() + nn.clone() - f2.clone() + pi1.clone()),
            over_n(nl.clone() - v(3) * pi1.clone()),
        ],
        [over_n(e_low.clone()), over_n2(a_plus.clone()), over_n2(a_minus_up.clone()), over_n(e_up_minus.clone())],
        [over_n(e_low.clone()), over_n2(a_minus_down.clone()), over_n2(a_plus.clone()), over_n(e_up_plus.clone())],
        [over_n(nl.clone() + pi1.clone()), over_n2(e_low.clone()), over_n2(e_low.clone()), over_n(nl + pi1)],
    ];
    let b2 = [
        [over_n(e_low.clone()), over_n2(a_plus.clone()), over_n2(a_minus_up.clone()), over_n(e_up_minus)],
        [over_n(a_minus_down.clone()), over_n2(b_low.clone()), over_n2(bq + n2.clone() + v(3) * g), over_n(a_minus_up)],
        [over_n(a_plus.clone()), over_n2(b_low.clone()), over_n2(b_low), over_n(a_plus.clone())],
        [over_n(e_up_plus), over_n2(a_plus), over_n2(a_minus_down), over_n(e_low)],
    ];
    Ok((b1, b2, [gamma, phi, pi]))
}

/// Closed-form intersection matrices over exact big rationals.
pub fn intersection_matrices_closed_form(
    p: &SrgParams,
    f: &FissionCandidate,
) -> Result<ClosedForm<BigInt>, SpectraError> {
    if p.is_conference() {
        return Err(SpectraError::Conference);
    }
    let ip = p.integral().ok_or(SpectraError::Conference)?;
    closed_form(&ip, f.table_type, f.z.as_ref())
}

/// Compares every closed-form `p^k_{ij}` with the value from the table; reports the first mismatch.
pub fn compare_with_table(cf: &ClosedForm<BigInt>, t: &CharacterTable<ComplexSurd>) -> Result<(), String> {
    let from_table = p_values(t);
    for (idx, (a, b)) in cf.rational_tensor().iter().zip(&from_table).enumerate() {
        if *b != ComplexSurd::from_rational(a.clone()) {
            return Err(format!("p^{}_{}{}: closed form {a}, table {b}", idx % 5, idx / 25, idx / 5 % 5));
        }
    }
    Ok(())
}

/// Why a corollary filter rejected a parameter set.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FilterFailure {
    /// Condition number 1–4.
    pub condition: u8,
    pub reason: String,
}

/// Necessary integrality conditions for a table of type I or II:
/// (1) `r, s` integers; (2) `λ + s ≡ 0 (mod 4)`; (3) `k(k − λ − 1 + u) ≡ 0 (mod 4k₂)`;
/// (4) `k₂(k − μ − r) ≡ 0 (mod 4k)`. Type II swaps `r ↔ s` and `t ↔ u`.
/// Type III has no such conditions and always passes.
pub fn corollary_filters(p: &SrgParams, table_type: TableType) -> Result<(), FilterFailure> {
    match p.integral() {
        Some(ip) => corollary_filters_int(&ip, table_type),
        None if table_type == TableType::III => Ok(()),
        None => {
            Err(FilterFailure { condition: 1, reason: format!("eigenvalues {} and {} are not integers", p.r, p.s) })
        }
    }
}

pub fn corollary_filters_int(p: &IntSrg, table_type: TableType) -> Result<(), FilterFailure> {
    let (r, s, u) = match table_type {
        TableType::I => (p.r, p.s, p.u()),
        TableType::II => (p.s, p.r, p.t()),
        TableType::III => return Ok(()),
    };
    let (k, l, mu, k2) = (p.k, p.lambda, p.mu, p.k2());
    let fail = |condition: u8, reason: String| Err(FilterFailure { condition, reason });
    if (l + s).rem_euclid(4) != 0 {
        return fail(
            2,
            format!("lambda + {} = {} is not 0 mod 4", if table_type == TableType::I { "s" } else { "r" }, l + s),
        );
    }
    let c3 = k * (k - l - 1 + u);
    if c3.rem_euclid(4 * k2) != 0 {
        return fail(3, format!("{c3} is not 0 mod 4k2 = {}", 4 * k2));
    }
    let c4 = k2 * (k - mu - r);
    if c4.rem_euclid(4 * k) != 0 {
        return fail(4, format!("{c4} is not 0 mod 4k = {}", 4 * k));
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn srg(n: i64, k: i64, l: i64, m: i64) -> SrgParams {
        srg_derive(n, k, l, m).unwrap()
    }

    fn cs(a: i64, x: i64) -> ComplexSurd {
        ComplexSurd::with_sqrt_neg(SurdSum::from_int(a), &int(x), &rat(1, 2)).unwrap()
    }

    fn principal_ints(m: &Principal<BigInt>) -> Vec<Vec<i64>> {
        m.iter().map(|r| r.iter().map(|v| v.to_integer().to_i64().unwrap()).collect()).collect()
    }

    #[test]
    fn derive_examples() {
        let p = srg(57, 14, 1, 4);
        assert_eq!((as_integer(&p.r), p.m1, as_integer(&p.s), p.m2), (Some(2), 38, Some(-5), 18));
        let p = srg(105, 26, 13, 4);
        assert_eq!((as_integer(&p.r), p.m1, as_integer(&p.s), p.m2), (Some(11), 14, Some(-2), 90));
        let p = srg(13, 6, 2, 3);
        assert!(p.is_conference());
        assert_eq!((p.m1, p.m2), (6, 6));
        assert_eq!(p.r.to_string(), "-1/2 + 1/2*sqrt(13)");
        assert_eq!(p.s.to_string(), "-1/2 - 1/2*sqrt(13)");
        assert!(matches!(srg_derive(10, 3, 1, 1), Err(SpectraError::Identity(..))));
        assert!(matches!(srg_derive(5, 4, 3, 4), Err(SpectraError::Parameters(_))));
        // satisfies the identity but has non-integral multiplicities
        assert!(matches!(srg_derive(7, 4, 1, 4), Err(SpectraError::Multiplicities(_))));
    }

    #[test]
    fn aux_examples() {
        let p = srg(57, 14, 1, 4);
        let a = type3_auxiliary(&p, &int(27)).unwrap();
        assert_eq!((a.y, a.b, a.c), (int(12), int(19), int(76)));
        assert!(matches!(type3_auxiliary(&p, &int(63)), Err(SpectraError::ZRange { .. })));
        assert!(type3_auxiliary(&p, &int(0)).is_err());
        let p = srg(441, 110, 19, 30);
        let a = type3_auxiliary(&p, &int(252)).unwrap();
        assert!(crate::exactnum::rational_sqrt(&(&a.y * int(252))).is_some());
        assert!(crate::exactnum::rational_sqrt(&(&a.b * &a.c)).is_some());
    }

    #[test]
    fn table_examples() {
        let t = character_table(&srg(729, 182, 55, 42), &FissionCandidate::type_i()).unwrap();
        assert_eq!(t.entries[1][1], ComplexSurd::from_int(10));
        assert_eq!(t.entries[2][1], cs(-7, 243));
        assert_eq!(t.entries[2][1].to_string(), "-7/2 + i*(9/2*sqrt(3))");
        assert_eq!(t.entries[1][2], cs(-21, 2187));
        assert_eq!(t.entries[2][2], ComplexSurd::from_int(3));
        t.check_orthogonality().unwrap();

        let t = character_table(&srg(21, 2, 1, 0), &FissionCandidate::type_i()).unwrap();
        assert_eq!(t.entries[2][1], cs(-1, 3));
        assert_eq!(t.entries[1][2], cs(-3, 63));
        t.check_orthogonality().unwrap();

        let t = character_table(&srg(57, 14, 1, 4), &FissionCandidate::type_iii(int(27))).unwrap();
        assert_eq!(t.entries[1][1], cs(2, 12));
        assert_eq!(t.entries[1][2], cs(-3, 27));
        assert_eq!(t.entries[2][1], cs(-5, 19));
        assert_eq!(t.entries[2][2], cs(4, 76).conj());
        t.check_orthogonality().unwrap();

        assert_eq!(character_table(&srg(13, 6, 2, 3), &FissionCandidate::type_i()), Err(SpectraError::Conference));
        let t3 = FissionCandidate { table_type: TableType::III, z: None };
        assert_eq!(character_table(&srg(57, 14, 1, 4), &t3), Err(SpectraError::MissingZ));
    }

    #[test]
    fn closed_form_57() {
        let p = srg(57, 14, 1, 4);
        let f = FissionCandidate::type_iii(int(27));
        let cf = intersection_matrices_closed_form(&p, &f).unwrap();
        assert_eq!(
            principal_ints(&cf.b1),
            vec![vec![0, 2, 0, 1], vec![3, 2, 4, 0], vec![3, 2, 2, 6], vec![0, 1, 1, 0]]
        );
        assert_eq!(
            principal_ints(&cf.b2),
            vec![vec![3, 2, 4, 0], vec![6, 8, 7, 12], vec![6, 8, 8, 6], vec![6, 2, 2, 3]]
        );
        let [g, phi, pi] = cf.gamma_phi_pi.clone().unwrap();
        assert_eq!((g, phi, pi), (int(-4788), int(4788), int(-798)));
        let t = character_table(&p, &f).unwrap();
        compare_with_table(&cf, &t).unwrap();
        assert_eq!(p_from_table(&t).unwrap(), cf.to_tensor().unwrap());
        assert!(q_from_table(&t).is_nonnegative());
    }

    #[test]
    fn closed_form_type_i() {
        let p = srg(729, 182, 55, 42);
        let cf = intersection_matrices_closed_form(&p, &FissionCandidate::type_i()).unwrap();
        assert_eq!(
            principal_ints(&cf.b1),
            vec![vec![12, 10, 10, 19], vec![33, 40, 30, 30], vec![33, 30, 40, 30], vec![12, 11, 11, 12]]
        );
        let t = character_table(&p, &FissionCandidate::type_i()).unwrap();
        compare_with_table(&cf, &t).unwrap();
        cf.to_tensor().unwrap().check_identities().unwrap();

        let cf = intersection_matrices_closed_form(&srg(21, 2, 1, 0), &FissionCandidate::type_i()).unwrap();
        assert_eq!(
            principal_ints(&cf.b1),
            vec![vec![0, 0, 0, 1], vec![0, 1, 0, 0], vec![0, 0, 1, 0], vec![0, 0, 0, 0]]
        );
    }

    #[test]
    fn closed_form_i128_agrees() {
        let p = srg(441, 110, 19, 30).integral().unwrap();
        let big = closed_form::<BigInt>(&p, TableType::III, Some(&Ratio::from_integer(BigInt::from(252)))).unwrap();
        let small = closed_form::<i128>(&p, TableType::III, Some(&Ratio::from_integer(252))).unwrap();
        let as_str = |v: Vec<String>| v;
        assert_eq!(
            as_str(big.rational_tensor().iter().map(|x| x.to_string()).collect()),
            as_str(small.rational_tensor().iter().map(|x| x.to_string()).collect())
        );
        assert!(small.is_integral());
    }

    #[test]
    fn krein_105() {
        let p = srg(105, 26, 13, 4);
        let f = FissionCandidate::type_iii(int(540));
        let cf = intersection_matrices_closed_form(&p, &f).unwrap();
        assert!(cf.is_integral());
        let t = character_table(&p, &f).unwrap();
        compare_with_table(&cf, &t).unwrap();
        let q = q_from_table(&t);
        assert!(q.negatives().contains(&(1, 1, 3)));
        assert_eq!(q.get(1, 1, 3).to_string(), "49/169 - 7/169*sqrt(105)");
    }

    #[test]
    fn johnson7() {
        let p = srg(21, 10, 5, 4);
        let err = p_from_table(&character_table(&p, &FissionCandidate::type_ii()).unwrap());
        assert!(matches!(err, Err(SpectraError::Entry { .. })));
        let t = character_table(&p, &FissionCandidate::type_iii(int(28))).unwrap();
        let q = q_from_table(&t);
        assert_eq!(q.get(1, 1, 3).to_string(), "9/25 - 3/25*sqrt(21)");
        assert!(surd_sign(q.get(1, 1, 3)) < 0);
    }

    #[test]
    fn filters() {
        assert_eq!(corollary_filters(&srg(729, 182, 55, 42), TableType::I), Ok(()));
        assert_eq!(corollary_filters(&srg(13, 6, 2, 3), TableType::I).unwrap_err().condition, 1);
        for v in [7, 11, 15, 19] {
            let p = srg(v * (v - 1) / 2, 2 * (v - 2), v - 2, 4);
            assert_eq!(corollary_filters(&p, TableType::I).unwrap_err().condition, 2);
        }
    }

    #[test]
    fn conference_tables() {
        let t = conference_table(5, 1).unwrap();
        let rho = &t.entries[1][1];
        let sum = (&rho.real_part() + &rho.conj().real_part()).to_string();
        assert_eq!(sum, "-1/2 + 1/2*sqrt(5)");
        let t = conference_table(13, -3).unwrap();
        assert_eq!(t.valencies[1], int(3));
        let tau = &t.entries[1][2];
        assert_eq!((&tau.real_part() + &tau.conj().real_part()).to_string(), "-1/2 - 1/2*sqrt(13)");
        assert!(matches!(conference_table(9, 1), Err(SpectraError::Congruence(_))));
        assert!(matches!(conference_table(13, 1), Err(SpectraError::Congruence(_))));
    }

    #[test]
    fn conference_numeric_matches_cyclotomic() {
        use crate::constructions::{cyc4_closed_form, cyclotomic_scheme, two_squares};
        use crate::scheme::intersection_tensor;
        let z5 = intersection_tensor(&cyclotomic_scheme(5, 4).unwrap()).unwrap();
        assert_eq!(conference_p_tensor(&conference_table(5, 1).unwrap()).unwrap(), z5);
        for q in [13u64, 29, 37, 53, 61, 101, 125] {
            let min = conference_q_numeric(&conference_table(q as i64, two_squares(q)[0].g).unwrap())
                .iter()
                .map(|c| c.re.hi())
                .fold(f64::INFINITY, f64::min);
            assert!(min > -CONFERENCE_TOLERANCE, "q = {q}: {min}");
            for ts in two_squares(q) {
                let num = conference_p_tensor(&conference_table(q as i64, ts.g).unwrap()).unwrap();
                assert_eq!(num, cyc4_closed_form(q, ts.g, ts.h).unwrap().tensor(), "q = {q}, g = {}", ts.g);
            }
        }
    }
}
