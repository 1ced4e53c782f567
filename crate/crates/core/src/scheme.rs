//! Concrete association schemes stored as relation-index matrices.
//!
//! Verification is by counting: for every ordered pair `(x, y)` the number
//! of `z` with `(x, z) ∈ R_i` and `(z, y) ∈ R_j` is tallied and compared
//! across all pairs of the same class. This costs `O(n³)` time and
//! `O(n·(d+1)²)` memory per worker, parallelized over `x`.

use std::collections::BTreeSet;
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::exec::Strategy;

/// Largest point count representable in the `.ascm` format.
pub const MAX_POINTS: usize = 65535;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SchemeError {
    #[error("relation matrix has {got} entries, expected {n}x{n}")]
    Dimension { n: usize, got: usize },
    #[error("relation index {value} at ({x}, {y}) exceeds class count {d}")]
    IndexOutOfRange { x: usize, y: usize, value: u8, d: usize },
    #[error("too many points: {0} (limit {MAX_POINTS})")]
    TooLarge(usize),
    #[error("not an association scheme: {0}")]
    NotAScheme(String),
    #[error("partition is invalid: {0}")]
    BadPartition(String),
    #[error("partition is not admissible: {0}")]
    Inadmissible(String),
    #[error("fusion is not an association scheme: {0}")]
    FusionNotScheme(String),
}

/// An `n × n` matrix of relation indices in `0..=d`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct AssociationScheme {
    n: usize,
    d: usize,
    rel: Vec<u8>,
}

impl AssociationScheme {
    /// Checks dimensions and index range; the axioms are checked by [`verify_axioms`].
    pub fn new(n: usize, d: usize, rel: Vec<u8>) -> Result<Self, SchemeError> {
        if n > MAX_POINTS {
            return Err(SchemeError::TooLarge(n));
        }
        if rel.len() != n * n {
            return Err(SchemeError::Dimension { n, got: rel.len() });
        }
        if let Some(pos) = rel.iter().position(|&v| v as usize > d) {
            return Err(SchemeError::IndexOutOfRange { x: pos / n, y: pos % n, value: rel[pos], d });
        }
        Ok(AssociationScheme { n, d, rel })
    }

    pub fn from_fn(n: usize, d: usize, f: impl Fn(usize, usize) -> u8) -> Result<Self, SchemeError> {
        let rel = (0..n * n).map(|idx| f(idx / n, idx % n)).collect();
        Self::new(n, d, rel)
    }

    pub fn from_rows(rows: &[Vec<u8>]) -> Result<Self, SchemeError> {
        let n = rows.len();
        let d = rows.iter().flatten().copied().max().unwrap_or(0) as usize;
        let rel: Vec<u8> = rows.iter().flatten().copied().collect();
        Self::new(n, d, rel)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn d(&self) -> usize {
        self.d
    }

    #[inline]
    pub fn rel(&self, x: usize, y: usize) -> u8 {
        self.rel[x * self.n + y]
    }

    pub fn row(&self, x: usize) -> &[u8] {
        &self.rel[x * self.n..(x + 1) * self.n]
    }

    pub fn set(&mut self, x: usize, y: usize, value: u8) {
        assert!((value as usize) <= self.d);
        self.rel[x * self.n + y] = value;
    }

    pub fn as_slice(&self) -> &[u8] {
        &self.rel
    }

    /// Renames relation `i` to `new_index[i]`; `new_index` must be a permutation of `0..=d` fixing 0.
    pub fn relabel(&self, new_index: &[u8]) -> Result<Self, SchemeError> {
        let mut seen = vec![false; self.d + 1];
        if new_index.len() != self.d + 1 || new_index[0] != 0 {
            return Err(SchemeError::BadPartition(format!("{new_index:?} is not a relabeling")));
        }
        for &v in new_index {
            if v as usize > self.d || std::mem::replace(&mut seen[v as usize], true) {
                return Err(SchemeError::BadPartition(format!("{new_index:?} is not a permutation")));
            }
        }
        Ok(AssociationScheme { n: self.n, d: self.d, rel: self.rel.iter().map(|&v| new_index[v as usize]).collect() })
    }

    /// The map `i ↦ i'` with `R_i^T = R_{i'}`, when axiom (iii) holds.
    pub fn transpose_map(&self) -> Result<Vec<u8>, SchemeError> {
        let mut map: Vec<Option<u8>> = vec![None; self.d + 1];
        for x in 0..self.n {
            for y in 0..self.n {
                let i = self.rel(x, y) as usize;
                let t = self.rel(y, x);
                match map[i] {
                    None => map[i] = Some(t),
                    Some(prev) if prev != t => {
                        return Err(SchemeError::NotAScheme(format!(
                            "transpose of R{i} meets both R{prev} and R{t} (pair ({y}, {x}))"
                        )))
                    }
                    _ => {}
                }
            }
        }
        map.into_iter()
            .enumerate()
            .map(|(i, t)| t.ok_or_else(|| SchemeError::NotAScheme(format!("R{i} is empty"))))
            .collect()
    }

    /// Number of pairs in each relation.
    pub fn relation_sizes(&self) -> Vec<usize> {
        let mut sizes = vec![0; self.d + 1];
        for &v in &self.rel {
            sizes[v as usize] += 1;
        }
        sizes
    }
}

impl fmt::Debug for AssociationScheme {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "AssociationScheme(n={}, d={})", self.n, self.d)
    }
}

/// Intersection numbers `p^k_{ij}` and valencies of a scheme.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct IntersectionTensor {
    d: usize,
    p: Vec<u64>,
    valencies: Vec<u64>,
}

impl IntersectionTensor {
    /// Builds a tensor from `f(i, j, k) = p^k_{ij}`; valencies are read off as `p^0_{ii'}`.
    pub fn from_fn(d: usize, f: impl Fn(usize, usize, usize) -> u64) -> Self {
        let m = d + 1;
        let mut p = vec![0; m * m * m];
        for i in 0..m {
            for j in 0..m {
                for k in 0..m {
                    p[(i * m + j) * m + k] = f(i, j, k);
                }
            }
        }
        let valencies = (0..m).map(|i| (0..m).map(|j| p[(i * m + j) * m]).sum()).collect();
        IntersectionTensor { d, p, valencies }
    }

    pub fn d(&self) -> usize {
        self.d
    }

    /// `p^k_{ij}`.
    #[inline]
    pub fn get(&self, i: usize, j: usize, k: usize) -> u64 {
        let m = self.d + 1;
        self.p[(i * m + j) * m + k]
    }

    pub fn valencies(&self) -> &[u64] {
        &self.valencies
    }

    pub fn n(&self) -> u64 {
        self.valencies.iter().sum()
    }

    /// Intersection matrix `B_i` with `(j, k)` entry `p^k_{ij}`.
    pub fn matrix(&self, i: usize) -> Vec<Vec<u64>> {
        let m = self.d + 1;
        (0..m).map(|j| (0..m).map(|k| self.get(i, j, k)).collect()).collect()
    }

    /// Lower-right `d × d` block of `B_i`.
    pub fn principal(&self, i: usize) -> Vec<Vec<u64>> {
        let m = self.d + 1;
        (1..m).map(|j| (1..m).map(|k| self.get(i, j, k)).collect()).collect()
    }

    /// `i ↦ i'`, read from `p^0_{ij} > 0`.
    pub fn transpose_map(&self) -> Vec<usize> {
        let m = self.d + 1;
        (0..m).map(|i| (0..m).find(|&j| self.get(i, j, 0) > 0).unwrap_or(i)).collect()
    }

    /// Tensor of the scheme with relation `i` renamed to `new_index[i]`.
    pub fn relabel(&self, new_index: &[usize]) -> Self {
        let m = self.d + 1;
        let mut old = vec![0; m];
        for (o, &nw) in new_index.iter().enumerate() {
            old[nw] = o;
        }
        Self::from_fn(self.d, |i, j, k| self.get(old[i], old[j], old[k]))
    }

    /// Checks the structural identities every scheme tensor satisfies; returns the first violation.
    pub fn check_identities(&self) -> Result<(), String> {
        let m = self.d + 1;
        let t = self.transpose_map();
        for i in 0..m {
            for j in 0..m {
                let expect = if j == t[i] { self.valencies[i] } else { 0 };
                if self.get(i, j, 0) != expect {
                    return Err(format!("p^0_{{{i}{j}}} = {} != {expect}", self.get(i, j, 0)));
                }
            }
        }
        for i in 0..m {
            for k in 0..m {
                let sum: u64 = (0..m).map(|j| self.get(i, j, k)).sum();
                if sum != self.valencies[i] {
                    return Err(format!("column {k} of B{i} sums to {sum}, not k{i} = {}", self.valencies[i]));
                }
            }
        }
        for i in 0..m {
            for j in 0..m {
                for k in 0..m {
                    if self.get(i, j, k) != self.get(t[j], t[i], t[k]) {
                        return Err(format!("p^{k}_{{{i}{j}}} != p^{}_{{{}{}}}", t[k], t[j], t[i]));
                    }
                }
            }
        }
        Ok(())
    }

    pub fn is_commutative(&self) -> bool {
        let m = self.d + 1;
        (0..m).all(|i| (0..m).all(|j| (0..m).all(|k| self.get(i, j, k) == self.get(j, i, k))))
    }
}

/// Completes a 4-class skew-symmetric tensor in `(R0, R1, R2, R2ᵀ, R1ᵀ)` order from `B1` and `B2`,
/// using `p^k_{ij} = p^{k'}_{j'i'}` and commutativity.
pub fn skew4_tensor(b1: &[[u64; 5]; 5], b2: &[[u64; 5]; 5]) -> IntersectionTensor {
    const T: [usize; 5] = [0, 4, 3, 2, 1];
    IntersectionTensor::from_fn(4, |i, j, k| match i {
        0 => u64::from(j == k),
        1 => b1[j][k],
        2 => b2[j][k],
        3 => b2[T[j]][T[k]],
        _ => b1[T[j]][T[k]],
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Axiom {
    /// (i) `R_0` is the diagonal.
    Diagonal,
    /// (ii) the relations partition `X × X` into nonempty parts.
    Partition,
    /// (iii) every transpose is a relation.
    Transpose,
    /// (iv) intersection numbers are constant.
    Intersection,
}

impl fmt::Display for Axiom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Axiom::Diagonal => "(i) diagonal",
            Axiom::Partition => "(ii) partition",
            Axiom::Transpose => "(iii) transpose",
            Axiom::Intersection => "(iv) intersection numbers",
        };
        f.write_str(s)
    }
}

/// Outcome of [`verify_axioms`]: one line per axiom, plus the tensor on success.
#[derive(Debug, Clone)]
pub struct AxiomReport {
    pub n: usize,
    pub d: usize,
    pub results: Vec<(Axiom, Result<(), String>)>,
    pub tensor: Option<IntersectionTensor>,
}

impl AxiomReport {
    pub fn passed(&self) -> bool {
        self.results.iter().all(|(_, r)| r.is_ok())
    }

    pub fn failed(&self) -> Vec<Axiom> {
        self.results.iter().filter(|(_, r)| r.is_err()).map(|(a, _)| *a).collect()
    }

    pub fn first_failure(&self) -> Option<String> {
        self.results.iter().find_map(|(a, r)| r.as_ref().err().map(|e| format!("axiom {a}: {e}")))
    }
}

impl fmt::Display for AxiomReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "n = {}, d = {}", self.n, self.d)?;
        for (axiom, r) in &self.results {
            match r {
                Ok(()) => writeln!(f, "axiom {axiom}: pass")?,
                Err(e) => writeln!(f, "axiom {axiom}: FAIL ({e})")?,
            }
        }
        Ok(())
    }
}

/// Per-worker state of the counting verifier.
struct Tally {
    /// `refs[k]`: counts `(i, j) ↦ p^k_{ij}` from the first pair seen in `R_k`.
    refs: Vec<Option<Vec<u32>>>,
    witness: Option<String>,
}

impl Tally {
    fn new(d: usize) -> Self {
        Tally { refs: vec![None; d + 1], witness: None }
    }

    fn merge(mut self, other: Tally) -> Tally {
        if self.witness.is_some() {
            return self;
        }
        if other.witness.is_some() {
            return other;
        }
        for (k, theirs) in other.refs.into_iter().enumerate() {
            match (&self.refs[k], theirs) {
                (None, t) => self.refs[k] = t,
                (Some(mine), Some(t)) if *mine != t => {
                    self.witness = Some(format!("two pairs of R{k} give different counts"));
                    return self;
                }
                _ => {}
            }
        }
        self
    }
}

fn count_row(s: &AssociationScheme, x: usize, mut tally: Tally) -> Tally {
    if tally.witness.is_some() {
        return tally;
    }
    let n = s.n;
    let m = s.d + 1;
    let block = m * m;
    let mut counts = vec![0u32; n * block];
    let row_x = s.row(x);
    for z in 0..n {
        let base = row_x[z] as usize * m;
        for (y, &j) in s.row(z).iter().enumerate() {
            counts[y * block + base + j as usize] += 1;
        }
    }
    for y in 0..n {
        let k = row_x[y] as usize;
        let got = &counts[y * block..(y + 1) * block];
        match &tally.refs[k] {
            None => tally.refs[k] = Some(got.to_vec()),
            Some(r) if r.as_slice() != got => {
                tally.witness =
                    Some(format!("pair ({x}, {y}) in R{k} has counts differing from an earlier pair of R{k}"));
                return tally;
            }
            _ => {}
        }
    }
    tally
}

/// Checks axioms (i)–(iv) by counting over all pairs, with the default strategy.
pub fn verify_axioms(s: &AssociationScheme) -> AxiomReport {
    verify_axioms_with(s, Strategy::default())
}

pub fn verify_axioms_with(s: &AssociationScheme, strategy: Strategy) -> AxiomReport {
    let n = s.n;
    let d = s.d;
    let mut results = Vec::with_capacity(4);

    let diag = (0..n)
        .find_map(|x| {
            (0..n).find_map(|y| {
                let v = s.rel(x, y);
                match (x == y, v == 0) {
                    (true, false) => Some(format!("rel[{x}][{x}] = {v}, expected 0")),
                    (false, true) => Some(format!("rel[{x}][{y}] = 0 off the diagonal")),
                    _ => None,
                }
            })
        })
        .map_or(Ok(()), Err);
    results.push((Axiom::Diagonal, diag));

    let sizes = s.relation_sizes();
    let part = match sizes.iter().position(|&c| c == 0) {
        Some(i) => Err(format!("R{i} is empty")),
        None => Ok(()),
    };
    results.push((Axiom::Partition, part));

    let transpose = s.transpose_map().map(|_| ()).map_err(|e| e.to_string());
    results.push((Axiom::Transpose, transpose));

    let tally = strategy.fold_range(n, || Tally::new(d), |t, x| count_row(s, x, t), Tally::merge);
    let (inter, tensor) = match tally.witness {
        Some(w) => (Err(w), None),
        None if tally.refs.iter().any(Option::is_none) => (Err("some relation is empty".to_string()), None),
        None => {
            let m = d + 1;
            let refs: Vec<Vec<u32>> = tally.refs.into_iter().map(Option::unwrap).collect();
            let tensor = IntersectionTensor::from_fn(d, |i, j, k| refs[k][i * m + j] as u64);
            (Ok(()), Some(tensor))
        }
    };
    results.push((Axiom::Intersection, inter));

    let tensor = if results.iter().all(|(_, r)| r.is_ok()) { tensor } else { None };
    AxiomReport { n, d, results, tensor }
}

/// Intersection tensor by counting; fails when any axiom fails.
pub fn intersection_tensor(s: &AssociationScheme) -> Result<IntersectionTensor, SchemeError> {
    let report = verify_axioms(s);
    match report.tensor {
        Some(t) => Ok(t),
        None => Err(SchemeError::NotAScheme(report.first_failure().unwrap_or_default())),
    }
}

/// Blocks of relation indices; block 0 is `{0}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Partition {
    blocks: Vec<Vec<u8>>,
}

impl Partition {
    /// Validates that `blocks` covers `0..=d` disjointly with `{0}` first.
    pub fn new(d: usize, blocks: Vec<Vec<u8>>) -> Result<Self, SchemeError> {
        if blocks.first().map(Vec::as_slice) != Some(&[0][..]) {
            return Err(SchemeError::BadPartition("first block must be {0}".into()));
        }
        let mut seen = vec![false; d + 1];
        for b in &blocks {
            if b.is_empty() {
                return Err(SchemeError::BadPartition("empty block".into()));
            }
            for &i in b {
                if i as usize > d {
                    return Err(SchemeError::BadPartition(format!("index {i} exceeds {d}")));
                }
                if std::mem::replace(&mut seen[i as usize], true) {
                    return Err(SchemeError::BadPartition(format!("index {i} repeated")));
                }
            }
        }
        if let Some(i) = seen.iter().position(|&s| !s) {
            return Err(SchemeError::BadPartition(format!("index {i} not covered")));
        }
        Ok(Partition { blocks })
    }

    pub fn identity(d: usize) -> Self {
        Partition { blocks: (0..=d as u8).map(|i| vec![i]).collect() }
    }

    /// Orbits of `i ↦ i'`, ordered by their smallest element.
    pub fn transpose_orbits(transpose: &[u8]) -> Self {
        let mut blocks: Vec<Vec<u8>> = Vec::new();
        for i in 0..transpose.len() as u8 {
            let t = transpose[i as usize];
            if t < i {
                continue;
            }
            blocks.push(if t == i { vec![i] } else { vec![i, t] });
        }
        Partition { blocks }
    }

    pub fn blocks(&self) -> &[Vec<u8>] {
        &self.blocks
    }

    /// Admissible: the image of every block under `'` is again a block.
    pub fn check_admissible(&self, transpose: &[u8]) -> Result<(), SchemeError> {
        let as_sets: Vec<BTreeSet<u8>> = self.blocks.iter().map(|b| b.iter().copied().collect()).collect();
        for b in &as_sets {
            let image: BTreeSet<u8> = b.iter().map(|&i| transpose[i as usize]).collect();
            if !as_sets.contains(&image) {
                return Err(SchemeError::Inadmissible(format!("{b:?}' = {image:?} is not a block")));
            }
        }
        Ok(())
    }
}

/// Merges relations along an admissible partition and verifies the result.
pub fn fuse(s: &AssociationScheme, part: &Partition) -> Result<AssociationScheme, SchemeError> {
    let transpose = s.transpose_map()?;
    if part.blocks.iter().flatten().count() != s.d + 1 {
        return Err(SchemeError::BadPartition(format!("partition does not cover 0..={}", s.d)));
    }
    part.check_admissible(&transpose)?;
    let mut target = vec![0u8; s.d + 1];
    for (b, block) in part.blocks.iter().enumerate() {
        for &i in block {
            target[i as usize] = b as u8;
        }
    }
    let fused = AssociationScheme {
        n: s.n,
        d: part.blocks.len() - 1,
        rel: s.rel.iter().map(|&v| target[v as usize]).collect(),
    };
    let report = verify_axioms(&fused);
    if !report.passed() {
        return Err(SchemeError::FusionNotScheme(report.first_failure().unwrap_or_default()));
    }
    Ok(fused)
}

/// Merges every relation with its transpose.
pub fn symmetrize(s: &AssociationScheme) -> Result<AssociationScheme, SchemeError> {
    let transpose = s.transpose_map()?;
    fuse(s, &Partition::transpose_orbits(&transpose))
}

/// True iff `i' ≠ i` for every `i ≥ 1`.
pub fn is_skew_symmetric(s: &AssociationScheme) -> bool {
    match s.transpose_map() {
        Ok(t) => t.iter().enumerate().skip(1).all(|(i, &ti)| ti as usize != i),
        Err(_) => false,
    }
}

/// Index sets `S ∋ 0`, closed under `'`, whose union is a nontrivial equivalence relation.
///
/// Empty exactly when the scheme is primitive.
pub fn imprimitive_blocks(s: &AssociationScheme) -> Result<Vec<Vec<u8>>, SchemeError> {
    let t = intersection_tensor(s)?;
    Ok(imprimitive_blocks_of(&t))
}

/// Same as [`imprimitive_blocks`], read off an intersection tensor.
pub fn imprimitive_blocks_of(t: &IntersectionTensor) -> Vec<Vec<u8>> {
    let d = t.d();
    assert!(d < 20, "subset enumeration over {d} classes");
    let tr = t.transpose_map();
    let mut out = Vec::new();
    for mask in 1u32..(1 << d) - 1 {
        let set: Vec<usize> = std::iter::once(0).chain((1..=d).filter(|i| mask & (1 << (i - 1)) != 0)).collect();
        let member = |k: usize| k == 0 || mask & (1 << (k - 1)) != 0;
        if !set.iter().all(|&i| member(tr[i])) {
            continue;
        }
        let closed = set.iter().all(|&i| set.iter().all(|&j| (0..=d).all(|k| t.get(i, j, k) == 0 || member(k))));
        if closed {
            out.push(set.into_iter().map(|i| i as u8).collect());
        }
    }
    out
}

/// Relabels a 4-class skew-symmetric scheme into the order `(R0, R1, R2, R2ᵀ, R1ᵀ)`,
/// keeping the current relation 1 as `R1`.
pub fn canonicalize_skew4(s: &AssociationScheme) -> Result<AssociationScheme, SchemeError> {
    let t = s.transpose_map()?;
    if s.d != 4 || !is_skew_symmetric(s) {
        return Err(SchemeError::NotAScheme("not a 4-class skew-symmetric scheme".into()));
    }
    let a = 1u8;
    let a_t = t[1];
    let b = (2..=4u8).find(|&i| i != a_t).unwrap();
    let b_t = t[b as usize];
    let mut new_index = vec![0u8; 5];
    new_index[a as usize] = 1;
    new_index[b as usize] = 2;
    new_index[b_t as usize] = 3;
    new_index[a_t as usize] = 4;
    s.relabel(&new_index)
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("line {line}, column {column}: {message}")]
pub struct ParseError {
    pub line: usize,
    pub column: usize,
    pub message: String,
}

/// Parses the `.ascm` text format: a header line `n d`, then `n` rows of `n` relation indices.
pub fn parse_ascm(text: &str) -> Result<AssociationScheme, ParseError> {
    let err = |line: usize, column: usize, message: String| ParseError { line, column, message };
    let mut lines = text.lines().enumerate().map(|(i, l)| (i + 1, l));
    let (_, header) = lines.next().ok_or_else(|| err(1, 1, "empty input".into()))?;
    let fields = tokens(header);
    if fields.len() != 2 {
        return Err(err(1, 1, format!("header must be \"n d\", found {} fields", fields.len())));
    }
    let parse_num = |(col, tok): (usize, &str), line: usize| -> Result<usize, ParseError> {
        tok.parse::<usize>().map_err(|_| err(line, col, format!("expected a nonnegative integer, found {tok:?}")))
    };
    let n = parse_num(fields[0], 1)?;
    let d = parse_num(fields[1], 1)?;
    if n == 0 || n > MAX_POINTS {
        return Err(err(1, fields[0].0, format!("n = {n} outside 1..={MAX_POINTS}")));
    }
    if d > u8::MAX as usize {
        return Err(err(1, fields[1].0, format!("d = {d} exceeds {}", u8::MAX)));
    }
    let mut rel = Vec::with_capacity(n * n);
    for x in 0..n {
        let (line_no, line) = lines.next().ok_or_else(|| err(x + 2, 1, format!("expected {n} rows, found {x}")))?;
        let toks = tokens(line);
        if toks.len() != n {
            return Err(err(line_no, 1, format!("expected {n} entries, found {}", toks.len())));
        }
        for (y, tok) in toks.into_iter().enumerate() {
            let v = parse_num(tok, line_no)?;
            if v > d {
                return Err(err(line_no, tok.0, format!("relation index {v} exceeds d = {d}")));
            }
            if (x == y) != (v == 0) {
                return Err(err(
                    line_no,
                    tok.0,
                    if x == y {
                        format!("diagonal entry must be 0, found {v}")
                    } else {
                        "relation 0 is reserved for the diagonal".to_string()
                    },
                ));
            }
            rel.push(v as u8);
        }
    }
    if let Some((line_no, line)) = lines.find(|(_, l)| !l.trim().is_empty()) {
        let _ = line;
        return Err(err(line_no, 1, "trailing content after the last row".into()));
    }
    AssociationScheme::new(n, d, rel).map_err(|e| err(1, 1, e.to_string()))
}

/// 1-based column and text of each whitespace-separated token.
fn tokens(line: &str) -> Vec<(usize, &str)> {
    let mut out = Vec::new();
    let mut start = None;
    for (i, ch) in line.char_indices() {
        match (ch.is_whitespace(), start) {
            (false, None) => start = Some(i),
            (true, Some(s)) => {
                out.push((s + 1, &line[s..i]));
                start = None;
            }
            _ => {}
        }
    }
    if let Some(s) = start {
        out.push((s + 1, &line[s..]));
    }
    out
}

/// Serializes to `.ascm`.
pub fn write_ascm(s: &AssociationScheme) -> String {
    let mut out = String::with_capacity(s.n * s.n * 2 + 16);
    out.push_str(&format!("{} {}\n", s.n, s.d));
    for x in 0..s.n {
        let row: Vec<String> = s.row(x).iter().map(|v| v.to_string()).collect();
        out.push_str(&row.join(" "));
        out.push('\n');
    }
    out
}
