//! Exact numbers of the form `a + b·√D` with rational `a`, `b` and square-free `D`.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// `rational + radical·√radicand`.
///
/// The radicand is square-free and may be negative. A value with
/// `radical == 0` always carries radicand `1`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct QuadValue {
    rational: BigRational,
    radical: BigRational,
    radicand: i64,
}

/// Splits `d` as `s² · core` with `core` square-free.
pub fn square_free_decompose(d: i64) -> (u64, i64) {
    if d == 0 {
        return (0, 0);
    }
    let sign = d.signum();
    let mut m = d.unsigned_abs();
    let mut square = 1u64;
    let mut core = 1u64;
    let mut p = 2u64;
    while p * p <= m {
        let mut e = 0;
        while m.is_multiple_of(p) {
            m /= p;
            e += 1;
        }
        square *= p.pow(e / 2);
        if e % 2 == 1 {
            core *= p;
        }
        p += 1;
    }
    core *= m;
    (square, sign * core as i64)
}

impl QuadValue {
    pub fn new(rational: BigRational, radical: BigRational, radicand: i64) -> Self {
        if radical.is_zero() || radicand == 0 {
            return Self::rational(rational);
        }
        let (square, core) = square_free_decompose(radicand);
        let radical = radical * BigRational::from_integer(BigInt::from(square));
        if core == 1 {
            return Self::rational(rational + radical);
        }
        QuadValue { rational, radical, radicand: core }
    }

    pub fn rational(value: BigRational) -> Self {
        QuadValue { rational: value, radical: BigRational::zero(), radicand: 1 }
    }

    pub fn from_integer(value: impl Into<BigInt>) -> Self {
        Self::rational(BigRational::from_integer(value.into()))
    }

    pub fn zero() -> Self {
        Self::from_integer(0)
    }

    pub fn rational_part(&self) -> &BigRational {
        &self.rational
    }

    pub fn radical_coeff(&self) -> &BigRational {
        &self.radical
    }

    pub fn radicand(&self) -> i64 {
        self.radicand
    }

    pub fn is_rational(&self) -> bool {
        self.radical.is_zero()
    }

    pub fn is_zero(&self) -> bool {
        self.rational.is_zero() && self.radical.is_zero()
    }

    pub fn is_real(&self) -> bool {
        self.radicand > 0
    }

    pub fn as_rational(&self) -> Option<&BigRational> {
        self.is_rational().then_some(&self.rational)
    }

    /// Complex conjugate; the identity on real values.
    pub fn conj(&self) -> Self {
        if self.radicand < 0 {
            QuadValue { radical: -self.radical.clone(), ..self.clone() }
        } else {
            self.clone()
        }
    }

    fn common_radicand(&self, other: &Self) -> Result<i64> {
        match (self.is_rational(), other.is_rational()) {
            (true, _) => Ok(other.radicand),
            (_, true) => Ok(self.radicand),
            _ if self.radicand == other.radicand => Ok(self.radicand),
            _ => Err(Error::IncompatibleRadicands(self.radicand, other.radicand)),
        }
    }

    pub fn try_add(&self, other: &Self) -> Result<Self> {
        let d = self.common_radicand(other)?;
        Ok(QuadValue::new(&self.rational + &other.rational, &self.radical + &other.radical, d))
    }

    pub fn try_mul(&self, other: &Self) -> Result<Self> {
        let d = self.common_radicand(other)?;
        let dq = BigRational::from_integer(BigInt::from(d));
        let rational = &self.rational * &other.rational + &self.radical * &other.radical * dq;
        let radical = &self.rational * &other.radical + &self.radical * &other.rational;
        Ok(QuadValue::new(rational, radical, d))
    }

    pub fn scale(&self, factor: &BigRational) -> Self {
        QuadValue::new(&self.rational * factor, &self.radical * factor, self.radicand)
    }

    /// `|z|²`, which is real but may still be irrational when the radicand is positive.
    pub fn modulus_squared(&self) -> Self {
        self.try_mul(&self.conj()).expect("same field")
    }

    /// Sign of a real value; `None` for non-real values.
    pub fn signum(&self) -> Option<Ordering> {
        if self.radicand < 0 && !self.radical.is_zero() {
            return None;
        }
        let a = &self.rational;
        let b = &self.radical;
        let sa = a.cmp(&BigRational::zero());
        let sb = b.cmp(&BigRational::zero());
        if sb == Ordering::Equal || sa == sb {
            return Some(if sa == Ordering::Equal { sb } else { sa });
        }
        if sa == Ordering::Equal {
            return Some(sb);
        }
        // opposite signs: compare a² with b²·D
        let d = BigRational::from_integer(BigInt::from(self.radicand));
        let lhs = a * a;
        let rhs = b * b * d;
        Some(match lhs.cmp(&rhs) {
            Ordering::Greater => sa,
            Ordering::Less => sb,
            Ordering::Equal => Ordering::Equal,
        })
    }

    /// Exact test of `|z|² ≤ bound`.
    pub fn modulus_squared_at_most(&self, bound: &BigRational) -> bool {
        let diff = QuadValue::rational(bound.clone()) - self.modulus_squared();
        diff.signum().expect("modulus is real") != Ordering::Less
    }

    /// Floating-point approximation as `(re, im)`, for display and diagnostics only.
    pub fn to_complex_f64(&self) -> (f64, f64) {
        let a = ratio_to_f64(&self.rational);
        let b = ratio_to_f64(&self.radical);
        let root = (self.radicand.unsigned_abs() as f64).sqrt();
        if self.radicand < 0 {
            (a, b * root)
        } else {
            (a + b * root, 0.0)
        }
    }
}

fn ratio_to_f64(r: &BigRational) -> f64 {
    use num_traits::ToPrimitive;
    r.to_f64().unwrap_or(f64::NAN)
}

impl From<BigRational> for QuadValue {
    fn from(value: BigRational) -> Self {
        QuadValue::rational(value)
    }
}

impl From<BigInt> for QuadValue {
    fn from(value: BigInt) -> Self {
        QuadValue::from_integer(value)
    }
}

impl From<i64> for QuadValue {
    fn from(value: i64) -> Self {
        QuadValue::from_integer(value)
    }
}

impl Add for QuadValue {
    type Output = QuadValue;
    fn add(self, rhs: QuadValue) -> QuadValue {
        self.try_add(&rhs).expect("QuadValue addition across fields")
    }
}

impl Sub for QuadValue {
    type Output = QuadValue;
    fn sub(self, rhs: QuadValue) -> QuadValue {
        self.try_add(&-rhs).expect("QuadValue subtraction across fields")
    }
}

impl Mul for QuadValue {
    type Output = QuadValue;
    fn mul(self, rhs: QuadValue) -> QuadValue {
        self.try_mul(&rhs).expect("QuadValue multiplication across fields")
    }
}

impl Neg for QuadValue {
    type Output = QuadValue;
    fn neg(self) -> QuadValue {
        QuadValue { rational: -self.rational, radical: -self.radical, radicand: self.radicand }
    }
}

impl fmt::Display for QuadValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_rational() {
            return write!(f, "{}", self.rational);
        }
        let root = format!("sqrt({})", self.radicand);
        let coeff = if self.radical.abs().is_one() {
            root
        } else {
            format!("{}*{}", self.radical.abs(), root)
        };
        match (self.rational.is_zero(), self.radical.is_negative()) {
            (true, false) => write!(f, "{coeff}"),
            (true, true) => write!(f, "-{coeff}"),
            (false, false) => write!(f, "{} + {coeff}", self.rational),
            (false, true) => write!(f, "{} - {coeff}", self.rational),
        }
    }
}

impl fmt::Debug for QuadValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "QuadValue({self})")
    }
}

/// Sums values from several quadratic fields, one bucket per radicand.
///
/// Sums that are known to be rational (character-sum identities) are closed
/// with [`QuadSum::into_rational`], which fails if any irrational bucket is
/// left over.
#[derive(Debug, Clone, Default)]
pub struct QuadSum {
    rational: BigRational,
    buckets: BTreeMap<i64, BigRational>,
}

impl QuadSum {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn add(&mut self, value: &QuadValue) {
        self.rational += &value.rational;
        if !value.is_rational() {
            *self.buckets.entry(value.radicand).or_insert_with(BigRational::zero) += &value.radical;
        }
    }

    pub fn into_rational(self) -> Result<BigRational> {
        if let Some((d, c)) = self.buckets.iter().find(|(_, c)| !c.is_zero()) {
            return Err(Error::Inconsistency(format!(
                "sum did not collapse to a rational: leftover {c}*sqrt({d})"
            )));
        }
        Ok(self.rational)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(a: i64, b: i64) -> BigRational {
        BigRational::new(a.into(), b.into())
    }

    #[test]
    fn square_free() {
        assert_eq!(square_free_decompose(12), (2, 3));
        assert_eq!(square_free_decompose(-27), (3, -3));
        assert_eq!(square_free_decompose(9), (3, 1));
        assert_eq!(square_free_decompose(-1), (1, -1));
        assert_eq!(square_free_decompose(15), (1, 15));
    }

    #[test]
    fn normalizes_perfect_squares() {
        let v = QuadValue::new(q(1, 2), q(1, 2), 9);
        assert!(v.is_rational());
        assert_eq!(v.as_rational(), Some(&q(2, 1)));
        let w = QuadValue::new(q(0, 1), q(1, 1), 12);
        assert_eq!((w.radical_coeff().clone(), w.radicand()), (q(2, 1), 3));
        assert_eq!(QuadValue::new(q(3, 1), q(0, 1), 5).radicand(), 1);
    }

    #[test]
    fn cube_root_of_unity() {
        // ω = (-1 + √-3)/2 satisfies ω² + ω + 1 = 0 and ω·ω̄ = 1
        let w = QuadValue::new(q(-1, 2), q(1, 2), -3);
        let sum = w.clone() * w.clone() + w.clone() + QuadValue::from(1);
        assert!(sum.is_zero());
        assert_eq!(w.modulus_squared(), QuadValue::from(1));
        assert_eq!(w.conj().radical_coeff(), &q(-1, 2));
    }

    #[test]
    fn golden_ratio_sign_and_modulus() {
        let phi = QuadValue::new(q(1, 2), q(1, 2), 5);
        let psi = QuadValue::new(q(1, 2), q(-1, 2), 5);
        assert_eq!(phi.signum(), Some(Ordering::Greater));
        assert_eq!(psi.signum(), Some(Ordering::Less));
        assert_eq!(phi.clone() * psi.clone(), QuadValue::from(-1));
        // φ² = φ + 1 ≈ 2.618
        assert!(phi.modulus_squared_at_most(&q(3, 1)));
        assert!(!phi.modulus_squared_at_most(&q(5, 2)));
        assert!(QuadValue::new(q(0, 1), q(1, 1), -3).signum().is_none());
    }

    #[test]
    fn mixed_fields_rejected() {
        let a = QuadValue::new(q(0, 1), q(1, 1), 5);
        let b = QuadValue::new(q(0, 1), q(1, 1), -3);
        assert_eq!(a.try_mul(&b), Err(Error::IncompatibleRadicands(5, -3)));
        assert!(a.try_mul(&QuadValue::from(4)).is_ok());
    }

    #[test]
    fn quad_sum_buckets() {
        let mut s = QuadSum::new();
        s.add(&QuadValue::new(q(1, 2), q(1, 2), -3));
        s.add(&QuadValue::new(q(1, 2), q(-1, 2), -3));
        s.add(&QuadValue::new(q(0, 1), q(3, 1), 5));
        let leftover = s.clone().into_rational();
        assert!(matches!(leftover, Err(Error::Inconsistency(_))));
        s.add(&QuadValue::new(q(0, 1), q(-3, 1), 5));
        assert_eq!(s.into_rational().unwrap(), q(1, 1));
    }

    #[test]
    fn display() {
        assert_eq!(QuadValue::new(q(-1, 2), q(1, 2), -3).to_string(), "-1/2 + 1/2*sqrt(-3)");
        assert_eq!(QuadValue::new(q(0, 1), q(-1, 1), 7).to_string(), "-sqrt(7)");
        assert_eq!(QuadValue::from(4).to_string(), "4");
    }
}
