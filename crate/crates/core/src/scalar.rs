//! Numeric backends.
//!
//! Every algorithm in the crate is generic over [`Scalar`], which is
//! implemented for three backends: exact rationals ([`Rational`]), `f64`,
//! and [`Complex64`]. A run picks one backend and never mixes them.

use std::cmp::Ordering;
use std::f64::consts::PI;
use std::fmt;
use std::ops::Neg;
use std::str::FromStr;

use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{Num, One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result, SingularReason};

/// Arbitrary-precision rational number.
pub type Rational = BigRational;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Backend {
    Rational,
    Float,
    Complex,
}

impl Backend {
    pub const ALL: [Backend; 3] = [Backend::Rational, Backend::Float, Backend::Complex];

    pub fn name(self) -> &'static str {
        match self {
            Backend::Rational => "rational",
            Backend::Float => "float",
            Backend::Complex => "complex",
        }
    }
}

impl fmt::Display for Backend {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Backend {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Backend::ALL
            .into_iter()
            .find(|b| b.name() == s.trim())
            .ok_or_else(|| Error::parse("backend", s, "expected rational, float or complex"))
    }
}

/// A number from one of the three backends.
pub trait Scalar:
    Clone + fmt::Debug + PartialEq + Send + Sync + 'static + Num + Neg<Output = Self>
{
    const BACKEND: Backend;

    /// True when arithmetic never rounds.
    fn is_exact() -> bool {
        Self::BACKEND == Backend::Rational
    }

    /// Converts a float. The rational backend takes the exact binary value.
    fn from_f64(x: f64) -> Self;

    fn from_i64(x: i64) -> Self;

    /// Parses integers, `p/q` fractions and decimals (optionally with an
    /// exponent). Decimals are exact in the rational backend.
    fn parse_literal(s: &str) -> Result<Self>;

    fn is_finite(&self) -> bool {
        true
    }

    /// Absolute value (modulus) as a float.
    fn magnitude(&self) -> f64;

    fn to_complex(&self) -> Complex64;

    /// Ordering on the real line; `None` for genuinely complex values.
    fn real_cmp(&self, other: &Self) -> Option<Ordering>;

    /// Compares `|self|` against 1 without rounding where the backend allows.
    fn modulus_cmp_one(&self) -> Ordering;

    /// `exp(2πi·p/k)` when the backend can represent it.
    fn unit_root(p: usize, k: usize) -> Option<Self>;

    /// Text form: `p/q` for rationals, shortest round-trip decimal for floats.
    fn render(&self) -> String;
}

/// `num / den`, refusing a zero denominator or a non-finite quotient.
pub fn checked_div<T: Scalar>(num: &T, den: &T) -> Result<T, SingularReason> {
    if den.is_zero() {
        return Err(SingularReason::ZeroDenominator);
    }
    let q = num.clone() / den.clone();
    if q.is_finite() {
        Ok(q)
    } else {
        Err(SingularReason::NonFinite)
    }
}

/// `|a − b| / max(|a|, |b|)`, zero when the values are equal.
pub fn relative_difference<T: Scalar>(a: &T, b: &T) -> f64 {
    if a == b {
        return 0.0;
    }
    let scale = a.magnitude().max(b.magnitude());
    let diff = (a.clone() - b.clone()).magnitude();
    if scale == 0.0 {
        diff
    } else {
        diff / scale
    }
}

/// Exact equality in the rational backend, relative tolerance otherwise.
pub fn approx_eq<T: Scalar>(a: &T, b: &T, rel_tol: f64) -> bool {
    if T::is_exact() {
        a == b
    } else {
        relative_difference(a, b) <= rel_tol
    }
}

fn normalize_literal(s: &str) -> String {
    s.trim().replace('\u{2212}', "-").replace('_', "")
}

/// Splits a decimal literal like `-12.5e-3` into an exact rational.
fn parse_decimal_exact(s: &str) -> Option<Rational> {
    let (mantissa, exponent) = match s.find(['e', 'E']) {
        Some(i) => (&s[..i], s[i + 1..].parse::<i32>().ok()?),
        None => (s, 0),
    };
    let (negative, digits) = match mantissa.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, mantissa.strip_prefix('+').unwrap_or(mantissa)),
    };
    let (int_part, frac_part) = match digits.split_once('.') {
        Some((i, f)) => (i, f),
        None => (digits, ""),
    };
    if int_part.is_empty() && frac_part.is_empty() {
        return None;
    }
    if !int_part.chars().chain(frac_part.chars()).all(|c| c.is_ascii_digit()) {
        return None;
    }
    let all_digits = format!("{int_part}{frac_part}");
    let numer = BigInt::from_str(if all_digits.is_empty() { "0" } else { &all_digits }).ok()?;
    let scale = exponent - frac_part.len() as i32;
    let ten = BigInt::from(10u32);
    let mut value = if scale >= 0 {
        Rational::from_integer(numer * num_traits::pow(ten, scale as usize))
    } else {
        Rational::new(numer, num_traits::pow(ten, (-scale) as usize))
    };
    if negative {
        value = -value;
    }
    Some(value)
}

fn parse_rational(input: &str) -> Result<Rational> {
    let s = normalize_literal(input);
    if let Some((p, q)) = s.split_once('/') {
        let p = parse_decimal_exact(p.trim())
            .ok_or_else(|| Error::parse("rational", input, "bad numerator"))?;
        let q = parse_decimal_exact(q.trim())
            .ok_or_else(|| Error::parse("rational", input, "bad denominator"))?;
        if q.is_zero() {
            return Err(Error::parse("rational", input, "zero denominator"));
        }
        return Ok(p / q);
    }
    parse_decimal_exact(&s).ok_or_else(|| Error::parse("rational", input, "not a number"))
}

fn parse_real(input: &str) -> Result<f64> {
    let s = normalize_literal(input);
    let parse_one = |t: &str| -> Result<f64> {
        t.trim()
            .parse::<f64>()
            .map_err(|e| Error::parse("real", input, e.to_string()))
    };
    match s.split_once('/') {
        Some((p, q)) => {
            let q = parse_one(q)?;
            if q == 0.0 {
                return Err(Error::parse("real", input, "zero denominator"));
            }
            Ok(parse_one(p)? / q)
        }
        None => parse_one(&s),
    }
}

fn render_f64(x: f64) -> String {
    // Debug formatting is the shortest string that round-trips.
    format!("{x:?}")
}

impl Scalar for Rational {
    const BACKEND: Backend = Backend::Rational;

    fn from_f64(x: f64) -> Self {
        Rational::from_float(x).expect("finite float")
    }

    fn from_i64(x: i64) -> Self {
        Rational::from_integer(BigInt::from(x))
    }

    fn parse_literal(s: &str) -> Result<Self> {
        parse_rational(s)
    }

    fn magnitude(&self) -> f64 {
        self.abs().to_f64().unwrap_or(f64::INFINITY)
    }

    fn to_complex(&self) -> Complex64 {
        Complex64::new(self.to_f64().unwrap_or(f64::NAN), 0.0)
    }

    fn real_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }

    fn modulus_cmp_one(&self) -> Ordering {
        self.abs().cmp(&Rational::one())
    }

    fn unit_root(p: usize, k: usize) -> Option<Self> {
        real_unit_root(p, k).map(Rational::from_integer)
    }

    fn render(&self) -> String {
        if self.is_integer() {
            self.numer().to_string()
        } else {
            format!("{}/{}", self.numer(), self.denom())
        }
    }
}

/// `exp(2πi·p/k)` when it is ±1.
fn real_unit_root(p: usize, k: usize) -> Option<BigInt> {
    if k == 0 {
        return None;
    }
    let twice = 2 * (p % k);
    if !twice.is_multiple_of(k) {
        return None;
    }
    Some(if (twice / k).is_multiple_of(2) {
        BigInt::one()
    } else {
        -BigInt::one()
    })
}

impl Scalar for f64 {
    const BACKEND: Backend = Backend::Float;

    fn from_f64(x: f64) -> Self {
        x
    }

    fn from_i64(x: i64) -> Self {
        x as f64
    }

    fn parse_literal(s: &str) -> Result<Self> {
        parse_real(s)
    }

    fn is_finite(&self) -> bool {
        f64::is_finite(*self)
    }

    fn magnitude(&self) -> f64 {
        self.abs()
    }

    fn to_complex(&self) -> Complex64 {
        Complex64::new(*self, 0.0)
    }

    fn real_cmp(&self, other: &Self) -> Option<Ordering> {
        self.partial_cmp(other)
    }

    fn modulus_cmp_one(&self) -> Ordering {
        self.abs().total_cmp(&1.0)
    }

    fn unit_root(p: usize, k: usize) -> Option<Self> {
        real_unit_root(p, k).and_then(|r| r.to_f64())
    }

    fn render(&self) -> String {
        render_f64(*self)
    }

}

impl Scalar for Complex64 {
    const BACKEND: Backend = Backend::Complex;

    fn from_f64(x: f64) -> Self {
        Complex64::new(x, 0.0)
    }

    fn from_i64(x: i64) -> Self {
        Complex64::new(x as f64, 0.0)
    }

    fn parse_literal(s: &str) -> Result<Self> {
        match parse_real(s) {
            Ok(re) => Ok(Complex64::new(re, 0.0)),
            Err(_) => Complex64::from_str(&normalize_literal(s))
                .map_err(|e| Error::parse("complex", s, e.to_string())),
        }
    }

    fn is_finite(&self) -> bool {
        Complex64::is_finite(*self)
    }

    fn magnitude(&self) -> f64 {
        self.norm()
    }

    fn to_complex(&self) -> Complex64 {
        *self
    }

    fn real_cmp(&self, other: &Self) -> Option<Ordering> {
        if self.im == 0.0 && other.im == 0.0 {
            self.re.partial_cmp(&other.re)
        } else {
            None
        }
    }

    fn modulus_cmp_one(&self) -> Ordering {
        self.norm_sqr().total_cmp(&1.0)
    }

    fn unit_root(p: usize, k: usize) -> Option<Self> {
        if k == 0 {
            return None;
        }
        let p = p % k;
        // Quarter turns are exact.
        if (4 * p).is_multiple_of(k) {
            return Some(match (4 * p / k) % 4 {
                0 => Complex64::new(1.0, 0.0),
                1 => Complex64::new(0.0, 1.0),
                2 => Complex64::new(-1.0, 0.0),
                _ => Complex64::new(0.0, -1.0),
            });
        }
        Some(Complex64::from_polar(1.0, 2.0 * PI * p as f64 / k as f64))
    }

    fn render(&self) -> String {
        let sign = if self.im.is_sign_negative() { '-' } else { '+' };
        format!("{}{}{}i", render_f64(self.re), sign, render_f64(self.im.abs()))
    }

}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(s: &str) -> Rational {
        Rational::parse_literal(s).unwrap()
    }

    #[test]
    fn rational_literals_are_exact() {
        assert_eq!(q("-1/2"), Rational::new((-1).into(), 2.into()));
        assert_eq!(q("0.25"), Rational::new(1.into(), 4.into()));
        assert_eq!(q("\u{2212}4"), Rational::from_integer((-4).into()));
        assert_eq!(q("1.5e2"), Rational::from_integer(150.into()));
        assert_eq!(q("3/0.5"), Rational::from_integer(6.into()));
        assert!(Rational::parse_literal("1/0").is_err());
        assert!(Rational::parse_literal("pi").is_err());
    }

    #[test]
    fn float_and_complex_literals() {
        assert_eq!(f64::parse_literal("1/4").unwrap(), 0.25);
        assert_eq!(f64::parse_literal("-0.5").unwrap(), -0.5);
        assert_eq!(
            Complex64::parse_literal("1+2i").unwrap(),
            Complex64::new(1.0, 2.0)
        );
        assert_eq!(Complex64::parse_literal("3/2").unwrap(), Complex64::new(1.5, 0.0));
    }

    #[test]
    fn division_by_zero_is_detected() {
        assert_eq!(
            checked_div(&q("1"), &q("0")),
            Err(SingularReason::ZeroDenominator)
        );
        assert_eq!(checked_div(&1.0, &0.0), Err(SingularReason::ZeroDenominator));
        assert_eq!(checked_div(&1e300, &1e-300), Err(SingularReason::NonFinite));
        assert_eq!(
            checked_div(&Complex64::new(1.0, 0.0), &Complex64::new(0.0, 0.0)),
            Err(SingularReason::ZeroDenominator)
        );
    }

    #[test]
    fn rendering() {
        assert_eq!(q("2/4").render(), "1/2");
        assert_eq!(q("-3").render(), "-3");
        assert_eq!(0.375f64.render(), "0.375");
        assert_eq!(Complex64::new(0.5, -0.25).render(), "0.5-0.25i");
    }

    #[test]
    fn unit_roots() {
        assert_eq!(Rational::unit_root(0, 5), Some(q("1")));
        assert_eq!(Rational::unit_root(1, 2), Some(q("-1")));
        assert_eq!(Rational::unit_root(1, 3), None);
        assert_eq!(Complex64::unit_root(1, 4), Some(Complex64::new(0.0, 1.0)));
        assert_eq!(Complex64::unit_root(3, 4), Some(Complex64::new(0.0, -1.0)));
        let w = Complex64::unit_root(1, 3).unwrap();
        assert!((w.powu(3) - Complex64::new(1.0, 0.0)).norm() < 1e-15);
    }

    #[test]
    fn modulus_against_one() {
        assert_eq!(q("-1").modulus_cmp_one(), Ordering::Equal);
        assert_eq!(q("1/14").modulus_cmp_one(), Ordering::Less);
        assert_eq!((-14.0f64).modulus_cmp_one(), Ordering::Greater);
        assert_eq!(Complex64::new(0.0, -1.0).modulus_cmp_one(), Ordering::Equal);
    }

    #[test]
    fn relative_difference_is_symmetric_and_zero_on_equal() {
        assert_eq!(relative_difference(&q("1/3"), &q("1/3")), 0.0);
        let d = relative_difference(&1.0, &1.0000001);
        assert!((d - 1e-7).abs() < 1e-12);
        assert_eq!(d, relative_difference(&1.0000001, &1.0));
    }
}
