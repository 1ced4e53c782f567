//! Concrete scheme builders: finite fields, cyclotomic schemes, wreath
//! products, and the parameter families (conference, Johnson) the scans run on.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::scheme::{
    canonicalize_skew4, is_skew_symmetric, skew4_tensor, verify_axioms, AssociationScheme, IntersectionTensor,
    SchemeError,
};

/// Largest field order [`field_build`] accepts.
pub const MAX_FIELD_ORDER: u64 = 1_000_000;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ConstructionError {
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("{0} is not a prime power")]
    NotPrimePower(u64),
    #[error("field order {0} exceeds {MAX_FIELD_ORDER}")]
    FieldTooLarge(u64),
    #[error("{d} does not divide q - 1 = {}", q - 1)]
    BadClassCount { q: u64, d: u64 },
    #[error("{0}")]
    Congruence(String),
    #[error("closed form entry {name} = ({numer})/16 is not a nonnegative integer")]
    ClosedForm { name: char, numer: i64 },
    #[error("parameter out of range: {0}")]
    Range(String),
    #[error(transparent)]
    Scheme(#[from] SchemeError),
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// `Some((p, b))` with `q = p^b`.
pub fn prime_power(q: u64) -> Option<(u64, u32)> {
    if q < 2 {
        return None;
    }
    let p = (2..=q).find(|d| q.is_multiple_of(*d))?;
    let mut m = q;
    let mut b = 0;
    while m.is_multiple_of(p) {
        m /= p;
        b += 1;
    }
    (m == 1).then_some((p, b))
}

/// Remainder of `a` modulo the monic `m` over GF(p); coefficients low to high.
fn poly_rem(a: &[u64], m: &[u64], p: u64) -> Vec<u64> {
    let mut r = a.to_vec();
    let dm = m.len() - 1;
    while r.len() > dm {
        let lead = *r.last().unwrap();
        let shift = r.len() - 1 - dm;
        if lead != 0 {
            for (i, &c) in m.iter().enumerate() {
                r[shift + i] = (r[shift + i] + p - lead * c % p) % p;
            }
        }
        r.pop();
    }
    r
}

fn digits(mut v: u64, p: u64, len: usize) -> Vec<u64> {
    (0..len)
        .map(|_| {
            let c = v % p;
            v /= p;
            c
        })
        .collect()
}

fn is_irreducible(f: &[u64], p: u64) -> bool {
    let deg = f.len() - 1;
    for dg in 1..=deg / 2 {
        for low in 0..p.pow(dg as u32) {
            let mut g = digits(low, p, dg);
            g.push(1);
            if poly_rem(f, &g, p).iter().all(|&c| c == 0) {
                return false;
            }
        }
    }
    true
}

/// GF(p^b) with elements encoded as integers `Σ cᵢ pⁱ` (polynomial coefficients in base p)
/// and full exponent/logarithm tables for a primitive element.
#[derive(Clone, Serialize)]
pub struct FiniteField {
    p: u64,
    b: u32,
    q: u64,
    /// Monic modulus, coefficients from constant to leading.
    modulus: Vec<u64>,
    primitive: u64,
    #[serde(skip)]
    exp: Vec<u32>,
    #[serde(skip)]
    log: Vec<u32>,
}

impl std::fmt::Debug for FiniteField {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "GF({}^{}) modulus={:?} primitive={}", self.p, self.b, self.modulus, self.primitive)
    }
}

/// Builds GF(p^b).
///
/// The modulus is the smallest monic irreducible of degree `b` when the
/// lower coefficients are read as the base-`p` integer `Σ cᵢ pⁱ`; the
/// primitive element is the smallest encoded element of order `p^b − 1`.
pub fn field_build(p: u64, b: u32) -> Result<FiniteField, ConstructionError> {
    if !is_prime(p) {
        return Err(ConstructionError::NotPrime(p));
    }
    if b == 0 {
        return Err(ConstructionError::Range("extension degree must be at least 1".into()));
    }
    let q = p
        .checked_pow(b)
        .filter(|&q| q <= MAX_FIELD_ORDER)
        .ok_or(ConstructionError::FieldTooLarge(p.saturating_pow(b)))?;
    let deg = b as usize;
    let modulus = (0..p.pow(b))
        .map(|low| {
            let mut f = digits(low, p, deg);
            f.push(1);
            f
        })
        .find(|f| is_irreducible(f, p))
        .expect("irreducible polynomials exist in every degree");

    let mul = |x: u64, y: u64| -> u64 {
        let a = digits(x, p, deg);
        let c = digits(y, p, deg);
        let mut prod = vec![0u64; 2 * deg - 1];
        for (i, &ai) in a.iter().enumerate() {
            if ai == 0 {
                continue;
            }
            for (j, &cj) in c.iter().enumerate() {
                prod[i + j] = (prod[i + j] + ai * cj) % p;
            }
        }
        let r = poly_rem(&prod, &modulus, p);
        r.iter().rev().fold(0, |acc, &c| acc * p + c)
    };

    let order = (q - 1) as usize;
    let mut exp = Vec::with_capacity(order);
    let mut primitive = 0;
    for g in 2..q.max(3) {
        exp.clear();
        let mut x = 1u64;
        loop {
            exp.push(x as u32);
            x = mul(x, g);
            if x == 1 || exp.len() > order {
                break;
            }
        }
        if exp.len() == order {
            primitive = g;
            break;
        }
    }
    if q == 2 {
        primitive = 1;
        exp = vec![1];
    }
    assert!(primitive != 0, "no primitive element found in GF({q})");
    let mut log = vec![u32::MAX; q as usize];
    for (i, &e) in exp.iter().enumerate() {
        log[e as usize] = i as u32;
    }
    Ok(FiniteField { p, b, q, modulus, primitive, exp, log })
}

impl FiniteField {
    pub fn order(&self) -> u64 {
        self.q
    }

    pub fn characteristic(&self) -> u64 {
        self.p
    }

    pub fn degree(&self) -> u32 {
        self.b
    }

    pub fn modulus(&self) -> &[u64] {
        &self.modulus
    }

    pub fn primitive(&self) -> u64 {
        self.primitive
    }

    pub fn add(&self, x: u64, y: u64) -> u64 {
        self.combine(x, y, |a, b| (a + b) % self.p)
    }

    pub fn sub(&self, x: u64, y: u64) -> u64 {
        self.combine(x, y, |a, b| (a + self.p - b) % self.p)
    }

    fn combine(&self, mut x: u64, mut y: u64, op: impl Fn(u64, u64) -> u64) -> u64 {
        let mut out = 0;
        let mut place = 1;
        for _ in 0..self.b {
            out += op(x % self.p, y % self.p) * place;
            x /= self.p;
            y /= self.p;
            place *= self.p;
        }
        out
    }

    pub fn mul(&self, x: u64, y: u64) -> u64 {
        if x == 0 || y == 0 {
            return 0;
        }
        let e = (self.log[x as usize] as u64 + self.log[y as usize] as u64) % (self.q - 1);
        self.exp[e as usize] as u64
    }

    /// Discrete logarithm to the primitive base; `None` for zero.
    pub fn log(&self, x: u64) -> Option<u64> {
        (x != 0).then(|| self.log[x as usize] as u64)
    }

    pub fn exp(&self, e: u64) -> u64 {
        self.exp[(e % (self.q - 1)) as usize] as u64
    }
}

/// True iff Cyc(p^b, 4) is skew-symmetric: `p^b ≡ 5 (mod 8)` with `b` odd.
pub fn cyc_skew_predicate(p: u64, b: u32) -> bool {
    b % 2 == 1 && p.checked_pow(b).is_some_and(|q| q % 8 == 5)
}

fn field_for(q: u64, d: u64) -> Result<FiniteField, ConstructionError> {
    let (p, b) = prime_power(q).ok_or(ConstructionError::NotPrimePower(q))?;
    if d == 0 || !(q - 1).is_multiple_of(d) || d > u8::MAX as u64 {
        return Err(ConstructionError::BadClassCount { q, d });
    }
    field_build(p, b)
}

/// Canonical index of each natural cyclotomic class of Cyc(q, d).
///
/// Class `i ∈ 1..=d` is `αⁱ⟨α^d⟩`. When Cyc(q, 4) is skew-symmetric the classes are
/// reordered to `(α¹, α², α⁴, α³)`, i.e. `(R1, R2, R2ᵀ, R1ᵀ)`; otherwise the natural order stays.
pub fn cyclotomic_labels(q: u64, d: u64) -> Vec<u8> {
    let skew = d == 4 && prime_power(q).is_some_and(|(p, b)| cyc_skew_predicate(p, b));
    if skew {
        vec![0, 1, 2, 4, 3]
    } else {
        (0..=d as u8).collect()
    }
}

/// Cyc(q, d): `(x, y) ∈ R_i` iff `x − y ∈ αⁱ⟨α^d⟩`.
pub fn cyclotomic_scheme(q: u64, d: u64) -> Result<AssociationScheme, ConstructionError> {
    let field = field_for(q, d)?;
    cyclotomic_scheme_over(&field, d)
}

pub fn cyclotomic_scheme_over(field: &FiniteField, d: u64) -> Result<AssociationScheme, ConstructionError> {
    let q = field.order();
    if d == 0 || !(q - 1).is_multiple_of(d) {
        return Err(ConstructionError::BadClassCount { q, d });
    }
    let n = usize::try_from(q).map_err(|_| ConstructionError::Range(format!("q = {q}")))?;
    let labels = cyclotomic_labels(q, d);
    let class = |e: u64| -> u8 {
        let r = e % d;
        labels[if r == 0 { d as usize } else { r as usize }]
    };
    let s = AssociationScheme::from_fn(n, d as usize, |x, y| match field.log(field.sub(x as u64, y as u64)) {
        None => 0,
        Some(e) => class(e),
    })?;
    Ok(s)
}

/// All cyclotomic numbers `(i, j)` of order `d`, `0 ≤ i, j < d`, counted over the field:
/// the number of `s ∈ αⁱ⟨α^d⟩` with `1 + s ∈ αʲ⟨α^d⟩`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CyclotomicNumbers {
    q: u64,
    d: u64,
    counts: Vec<u64>,
}

impl CyclotomicNumbers {
    pub fn new(q: u64, d: u64) -> Result<Self, ConstructionError> {
        let field = field_for(q, d)?;
        Ok(Self::over(&field, d))
    }

    pub fn over(field: &FiniteField, d: u64) -> Self {
        let q = field.order();
        let mut counts = vec![0u64; (d * d) as usize];
        for s in 1..q {
            let Some(t) = field.log(field.add(s, 1)) else { continue };
            let i = field.log(s).unwrap() % d;
            counts[(i * d + t % d) as usize] += 1;
        }
        CyclotomicNumbers { q, d, counts }
    }

    /// `(i, j)` with indices taken modulo `d`.
    pub fn get(&self, i: i64, j: i64) -> u64 {
        let d = self.d as i64;
        self.counts[(i.rem_euclid(d) * d + j.rem_euclid(d)) as usize]
    }

    /// Intersection tensor of Cyc(q, d) in natural class order via `p^k_{ij} = (j − i, k − i)`.
    pub fn tensor_natural(&self) -> IntersectionTensor {
        let d = self.d as usize;
        let f = (self.q - 1) / self.d;
        // −1 = α^{(q−1)/2}
        let half = ((self.q - 1) / 2) % self.d;
        let transpose = |i: usize| -> usize {
            let t = (i as u64 + half) % self.d;
            if t == 0 {
                d
            } else {
                t as usize
            }
        };
        let q_is_even = self.q.is_multiple_of(2);
        IntersectionTensor::from_fn(d, |i, j, k| match (i, j, k) {
            (0, _, _) => u64::from(j == k),
            (_, 0, _) => u64::from(i == k),
            (_, _, 0) => {
                let tj = if q_is_even { i } else { transpose(i) };
                if j == tj {
                    f
                } else {
                    0
                }
            }
            _ => self.get(j as i64 - i as i64, k as i64 - i as i64),
        })
    }

    /// Tensor in the same relation order [`cyclotomic_scheme`] emits.
    pub fn tensor(&self) -> IntersectionTensor {
        let labels: Vec<usize> = cyclotomic_labels(self.q, self.d).into_iter().map(usize::from).collect();
        self.tensor_natural().relabel(&labels)
    }
}

/// A single cyclotomic number `(i, j)` of order `d` over GF(q).
pub fn cyclotomic_number(q: u64, d: u64, i: i64, j: i64) -> Result<u64, ConstructionError> {
    Ok(CyclotomicNumbers::new(q, d)?.get(i, j))
}

/// A representation `m = g² + 4h²` with `g ≡ 1 (mod 4)` and `h > 0`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct TwoSquares {
    pub g: i64,
    pub h: i64,
    #[serde(skip)]
    pub m: u64,
}

/// Every `(g, h)` with `m = g² + 4h²`, `h > 0`, `g ≡ 1 (mod 4)`, sorted by `g` descending.
pub fn two_squares(m: u64) -> Vec<TwoSquares> {
    let mut out = Vec::new();
    let bound = (m as f64).sqrt() as i64 + 1;
    for g in (-bound..=bound).rev() {
        if g.rem_euclid(4) != 1 {
            continue;
        }
        let g2 = (g * g) as u64;
        if g2 >= m || !(m - g2).is_multiple_of(4) {
            continue;
        }
        let hh = (m - g2) / 4;
        let h = (hh as f64).sqrt().round() as u64;
        if let Some(h) = [h.saturating_sub(1), h, h + 1].into_iter().find(|&c| c * c == hh && c > 0) {
            out.push(TwoSquares { g, h: h as i64, m });
        }
    }
    out
}

/// Intersection numbers of Cyc(q, 4) for `q ≡ 5 (mod 8)` in closed form.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Cyc4ClosedForm {
    pub q: u64,
    pub g: i64,
    pub h: i64,
    pub f: u64,
    pub a: u64,
    pub b: u64,
    pub c: u64,
    pub d: u64,
    pub e: u64,
}

/// `16A = q−7+2g`, `16B = q+1+2g+8h`, `16C = q+1−6g`, `16D = q+1+2g−8h`, `16E = q−3−2g`.
///
/// `h` may carry either sign; negating it swaps `B` and `D`.
pub fn cyc4_closed_form(q: u64, g: i64, h: i64) -> Result<Cyc4ClosedForm, ConstructionError> {
    if q % 8 != 5 {
        return Err(ConstructionError::Congruence(format!("q = {q} is not 5 mod 8")));
    }
    if g.rem_euclid(4) != 1 {
        return Err(ConstructionError::Congruence(format!("g = {g} is not 1 mod 4")));
    }
    if (g * g + 4 * h * h) as u64 != q {
        return Err(ConstructionError::Congruence(format!("{q} != {g}^2 + 4*{h}^2")));
    }
    let qi = q as i64;
    let entry = |name: char, numer: i64| -> Result<u64, ConstructionError> {
        if numer < 0 || numer % 16 != 0 {
            Err(ConstructionError::ClosedForm { name, numer })
        } else {
            Ok((numer / 16) as u64)
        }
    };
    Ok(Cyc4ClosedForm {
        q,
        g,
        h,
        f: (q - 1) / 4,
        a: entry('A', qi - 7 + 2 * g)?,
        b: entry('B', qi + 1 + 2 * g + 8 * h)?,
        c: entry('C', qi + 1 - 6 * g)?,
        d: entry('D', qi + 1 + 2 * g - 8 * h)?,
        e: entry('E', qi - 3 - 2 * g)?,
    })
}

impl Cyc4ClosedForm {
    /// Full `B1`, rows `j`, columns `k`.
    pub fn b1(&self) -> [[u64; 5]; 5] {
        let Cyc4ClosedForm { f, a, b, c, d, e, .. } = *self;
        [[0, 1, 0, 0, 0], [0, a, b, d, c], [0, e, e, b, d], [0, e, d, e, b], [f, a, e, e, a]]
    }

    pub fn b2(&self) -> [[u64; 5]; 5] {
        let Cyc4ClosedForm { f, a, b, c, d, e, .. } = *self;
        [[0, 0, 1, 0, 0], [0, e, e, b, d], [0, d, a, c, b], [f, e, a, a, e], [0, b, e, d, e]]
    }

    pub fn tensor(&self) -> IntersectionTensor {
        skew4_tensor(&self.b1(), &self.b2())
    }
}

/// Wreath product: `inner` placed on each point of `outer`.
///
/// Point `(a, b)` has index `b·|inner| + a`. Inner relations keep their indices;
/// outer relation `j ≥ 1` becomes `d_inner + j`. A 4-class skew-symmetric result
/// is relabeled to `(R0, R1, R2, R2ᵀ, R1ᵀ)` with the inner relation as `R1`.
pub fn wreath(inner: &AssociationScheme, outer: &AssociationScheme) -> Result<AssociationScheme, ConstructionError> {
    let ni = inner.n();
    let no = outer.n();
    let di = inner.d();
    let d = di + outer.d();
    if d > u8::MAX as usize {
        return Err(ConstructionError::Range(format!("{d} classes")));
    }
    let s = AssociationScheme::from_fn(ni * no, d, |x, y| {
        let (a, b) = (x % ni, x / ni);
        let (a2, b2) = (y % ni, y / ni);
        if b == b2 {
            inner.rel(a, a2)
        } else {
            di as u8 + outer.rel(b, b2)
        }
    })?;
    let report = verify_axioms(&s);
    if !report.passed() {
        return Err(SchemeError::NotAScheme(report.first_failure().unwrap_or_default()).into());
    }
    if d == 4 && is_skew_symmetric(&s) {
        return Ok(canonicalize_skew4(&s)?);
    }
    Ok(s)
}

/// The thin scheme of the cyclic group Z_n: `(x, y) ∈ R_i` iff `y − x ≡ i (mod n)`.
pub fn thin_cyclic_scheme(n: usize) -> Result<AssociationScheme, ConstructionError> {
    if n == 0 || n > 256 {
        return Err(ConstructionError::Range(format!("Z_{n}")));
    }
    Ok(AssociationScheme::from_fn(n, n - 1, |x, y| ((y + n - x) % n) as u8)?)
}

/// Strongly regular graph parameters `(n, k, λ, μ)`.
pub type SrgTuple = (i64, i64, i64, i64);

/// Parameters of a conference graph C(q): `(q, (q−1)/2, (q−5)/4, (q−1)/4)`.
pub fn conference_params(q: i64) -> Result<SrgTuple, ConstructionError> {
    if q < 5 || q % 4 != 1 {
        return Err(ConstructionError::Congruence(format!("conference graphs need q = 1 mod 4, q >= 5; got {q}")));
    }
    Ok((q, (q - 1) / 2, (q - 5) / 4, (q - 1) / 4))
}

/// Parameters of the triangular graph of J(v, 2).
pub fn johnson2_params(v: i64) -> Result<SrgTuple, ConstructionError> {
    if v < 5 {
        return Err(ConstructionError::Range(format!("J(v, 2) needs v >= 5; got {v}")));
    }
    Ok((v * (v - 1) / 2, 2 * (v - 2), v - 2, 4))
}

/// J(v, 2) on 2-subsets; relation `i` means the subsets share `2 − i` points.
pub fn johnson2_scheme(v: usize) -> Result<AssociationScheme, ConstructionError> {
    if v < 4 {
        return Err(ConstructionError::Range(format!("J({v}, 2)")));
    }
    let pts: Vec<(usize, usize)> = (0..v).flat_map(|a| (a + 1..v).map(move |b| (a, b))).collect();
    Ok(AssociationScheme::from_fn(pts.len(), 2, |x, y| {
        let (a, b) = pts[x];
        let (c, e) = pts[y];
        let common = usize::from(a == c || a == e) + usize::from(b == c || b == e);
        (2 - common) as u8
    })?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scheme::{intersection_tensor, symmetrize};

    #[test]
    fn fields() {
        let f13 = field_build(13, 1).unwrap();
        assert_eq!(f13.primitive(), 2);
        assert_eq!(f13.modulus(), &[0, 1]);
        let f125 = field_build(5, 3).unwrap();
        assert_eq!(f125.order(), 125);
        assert_eq!(f125.modulus().len(), 4);
        assert!(is_irreducible(f125.modulus(), 5));
        // x^3 + x + 1 is the first irreducible cubic over GF(5) in this order
        assert_eq!(f125.modulus(), &[1, 1, 0, 1]);
        assert!(matches!(field_build(4, 1), Err(ConstructionError::NotPrime(4))));
        let f9 = field_build(3, 2).unwrap();
        for x in 1..9 {
            for y in 1..9 {
                let p = f9.mul(x, y);
                assert_eq!(f9.log(p), Some((f9.log(x).unwrap() + f9.log(y).unwrap()) % 8));
            }
            assert_eq!(f9.sub(f9.add(x, 5), 5), x);
        }
    }

    #[test]
    fn field_distributes() {
        let f = field_build(2, 5).unwrap();
        for x in 0..32 {
            for y in 0..32 {
                for z in [1, 7, 19] {
                    assert_eq!(f.mul(z, f.add(x, y)), f.add(f.mul(z, x), f.mul(z, y)));
                }
            }
        }
    }

    #[test]
    fn skew_predicate() {
        assert!(cyc_skew_predicate(13, 1));
        assert!(!cyc_skew_predicate(5, 2));
        assert!(cyc_skew_predicate(5, 3));
        assert!(!cyc_skew_predicate(17, 1));
    }

    #[test]
    fn small_cyclotomic_numbers() {
        assert_eq!(cyclotomic_number(5, 2, 0, 0).unwrap(), 0);
        let c = CyclotomicNumbers::new(13, 4).unwrap();
        let mut total = 0;
        for i in 0..4 {
            let row: u64 = (0..4).map(|j| c.get(i, j)).sum();
            assert!(row == 3 || row == 2, "row {i} sums to {row}");
            total += row;
        }
        assert_eq!(total, 11);
    }

    #[test]
    fn two_squares_examples() {
        let pairs = |m| two_squares(m).into_iter().map(|t| (t.g, t.h)).collect::<Vec<_>>();
        assert_eq!(pairs(85), vec![(9, 1), (-7, 3)]);
        assert_eq!(pairs(13), vec![(-3, 1)]);
        assert_eq!(pairs(21), vec![]);
        assert_eq!(pairs(5), vec![(1, 1)]);
        assert_eq!(pairs(325), vec![(17, 3), (1, 9), (-15, 5)]);
    }

    #[test]
    fn closed_form_examples() {
        let c = cyc4_closed_form(13, -3, 1).unwrap();
        assert_eq!((c.a, c.b, c.c, c.d, c.e), (0, 1, 2, 0, 1));
        let c = cyc4_closed_form(5, 1, 1).unwrap();
        assert_eq!((c.a, c.b, c.c, c.d, c.e), (0, 1, 0, 0, 0));
        let b1 = c.b1();
        for j in 0..5 {
            assert_eq!(b1[j].iter().sum::<u64>(), 1);
            assert_eq!((0..5).map(|k| b1[k][j]).sum::<u64>(), 1);
        }
        let c = cyc4_closed_form(29, 5, 1).unwrap();
        assert_eq!((c.a, c.b, c.c, c.d, c.e), (2, 3, 0, 2, 1));
        for k in 0..5 {
            assert_eq!((0..5).map(|j| c.b1()[j][k]).sum::<u64>(), 7);
        }
        c.tensor().check_identities().unwrap();
        assert!(cyc4_closed_form(9, 1, 1).is_err());
        assert!(cyc4_closed_form(13, 3, 1).is_err());
    }

    #[test]
    fn cyc13_matches_closed_form_and_counts() {
        let s = cyclotomic_scheme(13, 4).unwrap();
        let t = intersection_tensor(&s).unwrap();
        assert!(is_skew_symmetric(&s));
        let counted = CyclotomicNumbers::new(13, 4).unwrap().tensor();
        assert_eq!(t, counted);
        let plus = cyc4_closed_form(13, -3, 1).unwrap().tensor();
        let minus = cyc4_closed_form(13, -3, -1).unwrap().tensor();
        assert!(t == plus || t == minus);
    }

    #[test]
    fn cyc_symmetrization() {
        for q in [5, 13, 29, 37] {
            let s4 = cyclotomic_scheme(q, 4).unwrap();
            let s2 = cyclotomic_scheme(q, 2).unwrap();
            assert_eq!(symmetrize(&s4).unwrap(), s2);
        }
        assert!(!is_skew_symmetric(&cyclotomic_scheme(13, 2).unwrap()));
        assert!(is_skew_symmetric(&cyclotomic_scheme(7, 2).unwrap()));
        assert!(matches!(cyclotomic_scheme(13, 5), Err(ConstructionError::BadClassCount { .. })));
        assert!(matches!(cyclotomic_scheme(12, 2), Err(ConstructionError::NotPrimePower(12))));
    }

    #[test]
    fn wreath_identity_and_size() {
        let one = AssociationScheme::new(1, 0, vec![0]).unwrap();
        let c13 = cyclotomic_scheme(13, 4).unwrap();
        assert_eq!(wreath(&one, &c13).unwrap(), c13);
        let w = wreath(&cyclotomic_scheme(3, 2).unwrap(), &cyclotomic_scheme(7, 2).unwrap()).unwrap();
        assert_eq!((w.n(), w.d()), (21, 4));
        assert!(is_skew_symmetric(&w));
    }

    #[test]
    fn parameter_families() {
        assert_eq!(conference_params(13).unwrap(), (13, 6, 2, 3));
        assert_eq!(conference_params(5).unwrap(), (5, 2, 0, 1));
        assert_eq!(conference_params(45).unwrap(), (45, 22, 10, 11));
        assert!(conference_params(7).is_err());
        assert_eq!(johnson2_params(7).unwrap(), (21, 10, 5, 4));
        assert_eq!(johnson2_params(5).unwrap(), (10, 6, 3, 4));
        assert_eq!(johnson2_params(15).unwrap(), (105, 26, 13, 4));
        assert!(johnson2_params(4).is_err());
    }

    #[test]
    fn prime_powers() {
        assert_eq!(prime_power(125), Some((5, 3)));
        assert_eq!(prime_power(45), None);
        assert_eq!(prime_power(2), Some((2, 1)));
        assert_eq!(prime_power(1), None);
    }
}
