//! Exact arithmetic over the rationals and real quadratic surd sums.
//!
//! A [`SurdSum`] is a finite sum `Σ cᵢ√nᵢ` with rational coefficients and
//! squarefree radicands. Radicand 1 carries the rational part. Sign
//! decisions are made by repeated squaring, so nothing here ever consults
//! a floating point value.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub};

use num_bigint::{BigInt, Sign};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::de::{self, Deserializer};
use serde::ser::{SerializeSeq, Serializer};
use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Exact rational number, always stored in lowest terms with a positive denominator.
pub type Rational = BigRational;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SurdError {
    #[error("square root of negative value {0}")]
    Negative(Rational),
    #[error("value {0} is too large to factor")]
    TooLarge(BigInt),
}

/// Shorthand for `num/den` as a [`Rational`].
pub fn rat(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

/// Integer as a [`Rational`].
pub fn int(v: i64) -> Rational {
    Rational::from_integer(BigInt::from(v))
}

/// Splits `m > 0` as `(s, t)` with `m = s²·t` and `t` squarefree.
pub fn square_free_split(mut m: u128) -> (u128, u128) {
    debug_assert!(m > 0);
    let mut square = 1u128;
    let mut free = 1u128;
    let mut d = 2u128;
    while d * d <= m {
        if m.is_multiple_of(d) {
            let mut e = 0u32;
            while m.is_multiple_of(d) {
                m /= d;
                e += 1;
            }
            square *= d.pow(e / 2);
            if e % 2 == 1 {
                free *= d;
            }
        }
        d += if d == 2 { 1 } else { 2 };
    }
    free *= m;
    (square, free)
}

/// Distinct prime factors of `m`, ascending.
fn prime_factors(mut m: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2u64;
    while d * d <= m {
        if m.is_multiple_of(d) {
            out.push(d);
            while m.is_multiple_of(d) {
                m /= d;
            }
        }
        d += if d == 2 { 1 } else { 2 };
    }
    if m > 1 {
        out.push(m);
    }
    out
}

/// Exact number `Σ cᵢ√nᵢ` in normal form.
///
/// Every key is a squarefree radicand `≥ 1` and no stored coefficient is zero,
/// so two values are equal exactly when their maps are equal.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct SurdSum {
    terms: BTreeMap<u64, Rational>,
}

impl SurdSum {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::from_rational(Rational::one())
    }

    pub fn from_int(v: i64) -> Self {
        Self::from_rational(int(v))
    }

    pub fn from_rational(r: Rational) -> Self {
        Self::term(r, 1)
    }

    /// `coeff·√radicand`; the radicand must already be squarefree.
    pub fn term(coeff: Rational, radicand: u64) -> Self {
        assert!(radicand >= 1, "radicand must be positive");
        let mut terms = BTreeMap::new();
        if !coeff.is_zero() {
            terms.insert(radicand, coeff);
        }
        SurdSum { terms }
    }

    /// `√m` for an arbitrary positive integer `m`.
    pub fn sqrt_int(m: u64) -> Self {
        if m == 0 {
            return Self::zero();
        }
        let (s, t) = square_free_split(m as u128);
        Self::term(Rational::from_integer(BigInt::from(s)), t as u64)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// True when no irrational term is present.
    pub fn is_rational(&self) -> bool {
        self.terms.keys().all(|&r| r == 1)
    }

    /// The rational part (coefficient of `√1`).
    pub fn rational_part(&self) -> Rational {
        self.terms.get(&1).cloned().unwrap_or_else(Rational::zero)
    }

    /// `Some(r)` when the value is rational.
    pub fn to_rational(&self) -> Option<Rational> {
        self.is_rational().then(|| self.rational_part())
    }

    /// Iterates `(radicand, coefficient)` pairs in ascending radicand order.
    pub fn terms(&self) -> impl Iterator<Item = (u64, &Rational)> {
        self.terms.iter().map(|(&r, c)| (r, c))
    }

    pub fn radicands(&self) -> impl Iterator<Item = u64> + '_ {
        self.terms.keys().copied()
    }

    fn add_term(&mut self, radicand: u64, coeff: Rational) {
        if coeff.is_zero() {
            return;
        }
        let entry = self.terms.entry(radicand).or_insert_with(Rational::zero);
        *entry += coeff;
        if entry.is_zero() {
            self.terms.remove(&radicand);
        }
    }

    pub fn scale(&self, k: &Rational) -> Self {
        if k.is_zero() {
            return Self::zero();
        }
        SurdSum { terms: self.terms.iter().map(|(&r, c)| (r, c * k)).collect() }
    }

    pub fn square(&self) -> Self {
        self * self
    }

    /// Exact sign in `{-1, 0, 1}`.
    pub fn signum(&self) -> i32 {
        surd_sign(self)
    }

    /// Floating approximation, for display and diagnostics only.
    pub fn to_f64(&self) -> f64 {
        self.terms.iter().map(|(&r, c)| c.to_f64().unwrap_or(f64::NAN) * (r as f64).sqrt()).sum()
    }
}

/// `√x` for a nonnegative rational `x`.
///
/// `√(p/q) = √(pq)/q`, and the radicand is the squarefree part of `pq`.
pub fn surd_sqrt(x: &Rational) -> Result<SurdSum, SurdError> {
    if x.is_negative() {
        return Err(SurdError::Negative(x.clone()));
    }
    if x.is_zero() {
        return Ok(SurdSum::zero());
    }
    let prod = x.numer() * x.denom();
    let m = prod.to_u128().ok_or_else(|| SurdError::TooLarge(prod.clone()))?;
    let (s, t) = square_free_split(m);
    let radicand = u64::try_from(t).map_err(|_| SurdError::TooLarge(prod.clone()))?;
    let coeff = Rational::new(BigInt::from(s), x.denom().clone());
    Ok(SurdSum::term(coeff, radicand))
}

/// Returns the exact square root of `x` when it is rational.
pub fn rational_sqrt(x: &Rational) -> Option<Rational> {
    if x.is_negative() {
        return None;
    }
    let n = x.numer().sqrt();
    let d = x.denom().sqrt();
    (&n * &n == *x.numer() && &d * &d == *x.denom()).then(|| Rational::new(n, d))
}

/// Exact sign of a surd sum.
///
/// Picks a prime `p` dividing some radicand, writes the value as `A + √p·B`
/// where neither part involves `√p`, and when `A` and `B` have opposite
/// signs decides by the sign of `A² − p·B²`, which has strictly fewer
/// primes under its radicals.
pub fn surd_sign(a: &SurdSum) -> i32 {
    if a.is_rational() {
        return sign_of(&a.rational_part());
    }
    if a.terms.len() == 1 {
        let (_, c) = a.terms.iter().next().unwrap();
        return sign_of(c);
    }
    let p = a.radicands().filter(|&r| r > 1).map(|r| *prime_factors(r).last().unwrap()).max().unwrap();
    let mut with_p = SurdSum::zero();
    let mut without_p = SurdSum::zero();
    for (r, c) in a.terms() {
        if r % p == 0 {
            with_p.add_term(r / p, c.clone());
        } else {
            without_p.add_term(r, c.clone());
        }
    }
    let sa = surd_sign(&without_p);
    let sb = surd_sign(&with_p);
    if sb == 0 {
        return sa;
    }
    if sa == 0 || sa == sb {
        return sb;
    }
    let diff = without_p.square() - with_p.square().scale(&int(p as i64));
    sa * surd_sign(&diff)
}

/// `Some(v)` when `a` is a rational integer that fits in an `i64`.
pub fn as_integer(a: &SurdSum) -> Option<i64> {
    let r = a.to_rational()?;
    if r.is_integer() {
        r.to_integer().to_i64()
    } else {
        None
    }
}

fn sign_of(r: &Rational) -> i32 {
    match r.numer().sign() {
        Sign::Minus => -1,
        Sign::NoSign => 0,
        Sign::Plus => 1,
    }
}

impl From<i64> for SurdSum {
    fn from(v: i64) -> Self {
        SurdSum::from_int(v)
    }
}

impl From<Rational> for SurdSum {
    fn from(r: Rational) -> Self {
        SurdSum::from_rational(r)
    }
}

impl<'a> Add<&'a SurdSum> for &'a SurdSum {
    type Output = SurdSum;
    fn add(self, rhs: &SurdSum) -> SurdSum {
        let mut out = self.clone();
        for (r, c) in rhs.terms() {
            out.add_term(r, c.clone());
        }
        out
    }
}

impl Add for SurdSum {
    type Output = SurdSum;
    fn add(self, rhs: SurdSum) -> SurdSum {
        &self + &rhs
    }
}

impl AddAssign<&SurdSum> for SurdSum {
    fn add_assign(&mut self, rhs: &SurdSum) {
        for (r, c) in rhs.terms() {
            self.add_term(r, c.clone());
        }
    }
}

impl<'a> Sub<&'a SurdSum> for &'a SurdSum {
    type Output = SurdSum;
    fn sub(self, rhs: &SurdSum) -> SurdSum {
        let mut out = self.clone();
        for (r, c) in rhs.terms() {
            out.add_term(r, -c.clone());
        }
        out
    }
}

impl Sub for SurdSum {
    type Output = SurdSum;
    fn sub(self, rhs: SurdSum) -> SurdSum {
        &self - &rhs
    }
}

impl Neg for &SurdSum {
    type Output = SurdSum;
    fn neg(self) -> SurdSum {
        SurdSum { terms: self.terms.iter().map(|(&r, c)| (r, -c.clone())).collect() }
    }
}

impl Neg for SurdSum {
    type Output = SurdSum;
    fn neg(self) -> SurdSum {
        -&self
    }
}

impl<'a> Mul<&'a SurdSum> for &'a SurdSum {
    type Output = SurdSum;
    fn mul(self, rhs: &SurdSum) -> SurdSum {
        let mut out = SurdSum::zero();
        for (ra, ca) in self.terms() {
            for (rb, cb) in rhs.terms() {
                // √a·√b = g·√(ab/g²) for squarefree a, b with g = gcd(a, b)
                let g = ra.gcd(&rb);
                let radicand = (ra / g) * (rb / g);
                out.add_term(radicand, ca * cb * BigInt::from(g));
            }
        }
        out
    }
}

impl Mul for SurdSum {
    type Output = SurdSum;
    fn mul(self, rhs: SurdSum) -> SurdSum {
        &self * &rhs
    }
}

fn fmt_rational(r: &Rational) -> String {
    if r.is_integer() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

impl fmt::Display for SurdSum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (idx, (r, c)) in self.terms().enumerate() {
            let neg = c.is_negative();
            let mag = c.abs();
            if idx == 0 {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { "-" } else { "+" })?;
            }
            match (r, mag.is_one()) {
                (1, _) => write!(f, "{}", fmt_rational(&mag))?,
                (_, true) => write!(f, "sqrt({r})")?,
                (_, false) => write!(f, "{}*sqrt({r})", fmt_rational(&mag))?,
            }
        }
        Ok(())
    }
}

impl fmt::Debug for SurdSum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "SurdSum({self})")
    }
}

/// Integer in JSON: a plain number when it fits in `i64`, a decimal string otherwise.
#[derive(Serialize, Deserialize)]
#[serde(untagged)]
enum IntRepr {
    Small(i64),
    Big(String),
}

impl IntRepr {
    fn from_big(v: &BigInt) -> Self {
        v.to_i64().map(IntRepr::Small).unwrap_or_else(|| IntRepr::Big(v.to_string()))
    }

    fn into_big<E: de::Error>(self) -> Result<BigInt, E> {
        match self {
            IntRepr::Small(v) => Ok(BigInt::from(v)),
            IntRepr::Big(s) => s.parse().map_err(E::custom),
        }
    }
}

/// Serialized as a list of `[radicand, numerator, denominator]` triples.
impl Serialize for SurdSum {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let mut seq = serializer.serialize_seq(Some(self.terms.len()))?;
        for (r, c) in self.terms() {
            seq.serialize_element(&(r, IntRepr::from_big(c.numer()), IntRepr::from_big(c.denom())))?;
        }
        seq.end()
    }
}

impl<'de> Deserialize<'de> for SurdSum {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let raw: Vec<(u64, IntRepr, IntRepr)> = Vec::deserialize(deserializer)?;
        let mut out = SurdSum::zero();
        for (r, num, den) in raw {
            if r == 0 || square_free_split(r as u128).0 != 1 {
                return Err(de::Error::custom(format!("radicand {r} is not squarefree")));
            }
            let den = den.into_big::<D::Error>()?;
            if den.is_zero() {
                return Err(de::Error::custom("zero denominator"));
            }
            out.add_term(r, Rational::new(num.into_big::<D::Error>()?, den));
        }
        Ok(out)
    }
}

/// `re + i·im` with surd-sum parts.
#[derive(Clone, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
pub struct ComplexSurd {
    pub re: SurdSum,
    pub im: SurdSum,
}

impl ComplexSurd {
    pub fn new(re: SurdSum, im: SurdSum) -> Self {
        ComplexSurd { re, im }
    }

    pub fn real(re: SurdSum) -> Self {
        ComplexSurd { re, im: SurdSum::zero() }
    }

    pub fn from_int(v: i64) -> Self {
        Self::real(SurdSum::from_int(v))
    }

    pub fn from_rational(r: Rational) -> Self {
        Self::real(SurdSum::from_rational(r))
    }

    /// `(re + √(−x))/2`-style entries: `(a + i·√x)·scale`.
    pub fn with_sqrt_neg(a: SurdSum, x: &Rational, scale: &Rational) -> Result<Self, SurdError> {
        Ok(ComplexSurd { re: a.scale(scale), im: surd_sqrt(x)?.scale(scale) })
    }

    pub fn conj(&self) -> Self {
        ComplexSurd { re: self.re.clone(), im: -&self.im }
    }

    pub fn is_real(&self) -> bool {
        self.im.is_zero()
    }

    pub fn scale(&self, k: &Rational) -> Self {
        ComplexSurd { re: self.re.scale(k), im: self.im.scale(k) }
    }

    pub fn to_f64_pair(&self) -> (f64, f64) {
        (self.re.to_f64(), self.im.to_f64())
    }
}

impl<'a> Add<&'a ComplexSurd> for &'a ComplexSurd {
    type Output = ComplexSurd;
    fn add(self, rhs: &ComplexSurd) -> ComplexSurd {
        ComplexSurd { re: &self.re + &rhs.re, im: &self.im + &rhs.im }
    }
}

impl AddAssign<&ComplexSurd> for ComplexSurd {
    fn add_assign(&mut self, rhs: &ComplexSurd) {
        self.re += &rhs.re;
        self.im += &rhs.im;
    }
}

impl<'a> Sub<&'a ComplexSurd> for &'a ComplexSurd {
    type Output = ComplexSurd;
    fn sub(self, rhs: &ComplexSurd) -> ComplexSurd {
        ComplexSurd { re: &self.re - &rhs.re, im: &self.im - &rhs.im }
    }
}

impl<'a> Mul<&'a ComplexSurd> for &'a ComplexSurd {
    type Output = ComplexSurd;
    fn mul(self, rhs: &ComplexSurd) -> ComplexSurd {
        ComplexSurd {
            re: &(&self.re * &rhs.re) - &(&self.im * &rhs.im),
            im: &(&self.re * &rhs.im) + &(&self.im * &rhs.re),
        }
    }
}

impl fmt::Display for ComplexSurd {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.im.is_zero() {
            return write!(f, "{}", self.re);
        }
        if self.re.is_zero() {
            return write!(f, "i*({})", self.im);
        }
        write!(f, "{} + i*({})", self.re, self.im)
    }
}

impl fmt::Debug for ComplexSurd {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "ComplexSurd({self})")
    }
}
