//! Scalar fields used throughout the crate.
//!
//! Two scalar profiles implement [`Scalar`]: exact arbitrary-precision
//! rationals ([`Rational`]) and binary floating point (`f64`). The two-element
//! field [`F2`] implements only [`Field`]; it is used by the cohomology code.
//!
//! Every comparison that may involve floating point takes an explicit
//! [`Tolerance`]. Exact fields ignore it.

use std::cmp::Ordering;
use std::fmt::{self, Debug, Display};
use std::ops::{Add, AddAssign, Div, Mul, MulAssign, Neg, Sub, SubAssign};
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};

/// Arbitrary precision rational number, the exact profile.
pub type Rational = num_rational::BigRational;

/// Absolute tolerance used by comparisons in the floating profile.
#[derive(Clone, Copy, Debug, PartialEq, PartialOrd)]
pub struct Tolerance(pub f64);

impl Tolerance {
    /// Zero tolerance: only exact zeros count as zero.
    pub const EXACT: Tolerance = Tolerance(0.0);

    pub fn new(tol: f64) -> Self {
        Tolerance(tol.abs())
    }

    pub fn value(self) -> f64 {
        self.0
    }
}

impl Default for Tolerance {
    fn default() -> Self {
        Tolerance(1e-10)
    }
}

/// A commutative field with the arithmetic needed by the linear algebra.
pub trait Field:
    Clone
    + PartialEq
    + Debug
    + Send
    + Sync
    + 'static
    + Zero
    + One
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Div<Output = Self>
    + Neg<Output = Self>
    + AddAssign
    + SubAssign
    + MulAssign
{
    fn from_i64(v: i64) -> Self;

    /// Whether the value counts as zero. Exact fields ignore `tol`.
    fn is_negligible(&self, tol: Tolerance) -> bool;

    /// Magnitude used for pivot selection; exact fields only need nonzero
    /// versus zero, floating fields use the absolute value.
    fn pivot_weight(&self) -> f64;

    fn is_exact() -> bool;

    fn inv(&self) -> Self {
        Self::one() / self.clone()
    }
}

/// A real scalar: the ground field of polynomials, jets and forms.
pub trait Scalar: Field + PartialOrd + Display {
    fn from_ratio(num: i64, den: i64) -> Self;

    fn from_rational(r: &Rational) -> Self;

    /// Lossless for `f64`; exact binary expansion for rationals.
    fn from_f64(v: f64) -> Self;

    fn to_f64(&self) -> f64;

    fn abs(&self) -> Self {
        if *self < Self::zero() {
            -self.clone()
        } else {
            self.clone()
        }
    }

    fn approx_eq(&self, other: &Self, tol: Tolerance) -> bool {
        (self.clone() - other.clone()).is_negligible(tol)
    }

    fn total_cmp(&self, other: &Self) -> Ordering {
        self.partial_cmp(other).unwrap_or(Ordering::Equal)
    }

    fn factorial(n: u32) -> Self {
        (1..=n as i64).fold(Self::one(), |acc, k| acc * Self::from_i64(k))
    }

    fn pow_n(&self, e: u32) -> Self {
        let mut out = Self::one();
        for _ in 0..e {
            out *= self.clone();
        }
        out
    }
}

impl Field for Rational {
    fn from_i64(v: i64) -> Self {
        Rational::from_integer(BigInt::from(v))
    }

    fn is_negligible(&self, _tol: Tolerance) -> bool {
        self.is_zero()
    }

    fn pivot_weight(&self) -> f64 {
        if self.is_zero() {
            0.0
        } else {
            1.0
        }
    }

    fn is_exact() -> bool {
        true
    }
}

impl Scalar for Rational {
    fn from_ratio(num: i64, den: i64) -> Self {
        Rational::new(BigInt::from(num), BigInt::from(den))
    }

    fn from_rational(r: &Rational) -> Self {
        r.clone()
    }

    fn from_f64(v: f64) -> Self {
        Rational::from_float(v).expect("finite float")
    }

    fn to_f64(&self) -> f64 {
        // numerator/denominator may individually overflow f64
        match (self.numer().to_f64(), self.denom().to_f64()) {
            (Some(n), Some(d)) if n.is_finite() && d.is_finite() => n / d,
            _ => {
                let shift = self.denom().bits().max(self.numer().bits()) as i64 - 900;
                let scale = BigInt::one() << shift.max(0) as usize;
                let n = (self.numer() / &scale).to_f64().unwrap_or(0.0);
                let d = (self.denom() / &scale).to_f64().unwrap_or(1.0);
                n / d
            }
        }
    }

    fn abs(&self) -> Self {
        Signed::abs(self)
    }
}

impl Field for f64 {
    fn from_i64(v: i64) -> Self {
        v as f64
    }

    fn is_negligible(&self, tol: Tolerance) -> bool {
        f64::abs(*self) <= tol.0
    }

    fn pivot_weight(&self) -> f64 {
        f64::abs(*self)
    }

    fn is_exact() -> bool {
        false
    }
}

impl Scalar for f64 {
    fn from_ratio(num: i64, den: i64) -> Self {
        num as f64 / den as f64
    }

    fn from_rational(r: &Rational) -> Self {
        Scalar::to_f64(r)
    }

    fn from_f64(v: f64) -> Self {
        v
    }

    fn to_f64(&self) -> f64 {
        *self
    }

    fn abs(&self) -> Self {
        f64::abs(*self)
    }
}

/// Parses `"p/q"`, `"p"` or a decimal literal into an exact rational.
pub fn parse_rational(s: &str) -> Option<Rational> {
    let s = s.trim();
    if let Some((n, d)) = s.split_once('/') {
        let n = BigInt::from_str(n.trim()).ok()?;
        let d = BigInt::from_str(d.trim()).ok()?;
        if d.is_zero() {
            return None;
        }
        return Some(Rational::new(n, d));
    }
    if let Ok(n) = BigInt::from_str(s) {
        return Some(Rational::from_integer(n));
    }
    // decimal such as "0.125" or "1e-5": read it as a decimal fraction
    let lower = s.to_ascii_lowercase();
    let (mantissa, exp) = match lower.split_once('e') {
        Some((m, e)) => (m.to_string(), e.parse::<i32>().ok()?),
        None => (lower.clone(), 0),
    };
    let (neg, mantissa) = match mantissa.strip_prefix('-') {
        Some(rest) => (true, rest.to_string()),
        None => (false, mantissa.trim_start_matches('+').to_string()),
    };
    let (int_part, frac_part) = mantissa.split_once('.').unwrap_or((&mantissa, ""));
    let digits = format!("{int_part}{frac_part}");
    if digits.is_empty() || !digits.chars().all(|c| c.is_ascii_digit()) {
        return None;
    }
    let n = BigInt::from_str(&digits).ok()?;
    let scale = exp - frac_part.len() as i32;
    let ten = BigInt::from(10);
    let mut r = Rational::from_integer(n);
    if scale >= 0 {
        r *= Rational::from_integer(num_traits::pow(ten, scale as usize));
    } else {
        r /= Rational::from_integer(num_traits::pow(ten, (-scale) as usize));
    }
    Some(if neg { -r } else { r })
}

/// Renders an exact rational as `"p/q"` (or `"p"` for integers).
pub fn format_rational(r: &Rational) -> String {
    if r.is_integer() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// The field with two elements.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct F2(pub bool);

impl Display for F2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0 as u8)
    }
}

impl Zero for F2 {
    fn zero() -> Self {
        F2(false)
    }
    fn is_zero(&self) -> bool {
        !self.0
    }
}

impl One for F2 {
    fn one() -> Self {
        F2(true)
    }
}

#[allow(clippy::suspicious_arithmetic_impl)]
impl Add for F2 {
    type Output = F2;
    fn add(self, rhs: F2) -> F2 {
        F2(self.0 ^ rhs.0)
    }
}

#[allow(clippy::suspicious_arithmetic_impl)]
impl Sub for F2 {
    type Output = F2;
    fn sub(self, rhs: F2) -> F2 {
        F2(self.0 ^ rhs.0)
    }
}

#[allow(clippy::suspicious_arithmetic_impl)]
impl Mul for F2 {
    type Output = F2;
    fn mul(self, rhs: F2) -> F2 {
        F2(self.0 & rhs.0)
    }
}

impl Div for F2 {
    type Output = F2;
    fn div(self, rhs: F2) -> F2 {
        assert!(rhs.0, "division by zero in F2");
        self
    }
}

impl Neg for F2 {
    type Output = F2;
    fn neg(self) -> F2 {
        self
    }
}

#[allow(clippy::suspicious_op_assign_impl)]
impl AddAssign for F2 {
    fn add_assign(&mut self, rhs: F2) {
        self.0 ^= rhs.0;
    }
}

#[allow(clippy::suspicious_op_assign_impl)]
impl SubAssign for F2 {
    fn sub_assign(&mut self, rhs: F2) {
        self.0 ^= rhs.0;
    }
}

#[allow(clippy::suspicious_op_assign_impl)]
impl MulAssign for F2 {
    fn mul_assign(&mut self, rhs: F2) {
        self.0 &= rhs.0;
    }
}

impl Field for F2 {
    fn from_i64(v: i64) -> Self {
        F2(v.rem_euclid(2) == 1)
    }

    fn is_negligible(&self, _tol: Tolerance) -> bool {
        !self.0
    }

    fn pivot_weight(&self) -> f64 {
        self.0 as u8 as f64
    }

    fn is_exact() -> bool {
        true
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_forms() {
        assert_eq!(parse_rational("3/4"), Some(Rational::from_ratio(3, 4)));
        assert_eq!(parse_rational("-7"), Some(Rational::from_i64(-7)));
        assert_eq!(parse_rational("0.125"), Some(Rational::from_ratio(1, 8)));
        assert_eq!(parse_rational("1e-5"), Some(Rational::from_ratio(1, 100_000)));
        assert_eq!(parse_rational("-2.5E1"), Some(Rational::from_i64(-25)));
        assert_eq!(parse_rational("1/0"), None);
        assert_eq!(parse_rational("abc"), None);
    }

    #[test]
    fn format_roundtrip() {
        let r = Rational::from_ratio(-22, 6);
        assert_eq!(format_rational(&r), "-11/3");
        assert_eq!(parse_rational(&format_rational(&r)), Some(r));
    }

    #[test]
    fn f2_arithmetic() {
        let one = F2::one();
        assert_eq!(one + one, F2::zero());
        assert_eq!(-one, one);
        assert_eq!(F2::from_i64(-1), one);
        assert_eq!(F2::from_i64(4), F2::zero());
    }

    #[test]
    fn huge_rational_to_f64() {
        let big = num_traits::pow(BigInt::from(10), 400);
        let r = Rational::new(big.clone() * 3, big);
        assert!((Scalar::to_f64(&r) - 3.0).abs() < 1e-12);
    }
}
