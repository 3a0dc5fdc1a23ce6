//! Exact complex-rational scalars.
//!
//! A [`Coeff`] is a pair of arbitrary precision rationals holding the real and
//! imaginary parts. Most data in this crate is real, so the arithmetic skips
//! imaginary work whenever one operand has a zero imaginary part.

use std::fmt;
use std::ops::{Add, AddAssign, Div, Mul, Neg, Sub, SubAssign};
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// Exact rational number with arbitrary precision numerator and denominator.
pub type Rational = BigRational;

/// Builds a rational from a small integer.
pub fn rat(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// Builds the rational `n / d`. Panics if `d == 0`.
pub fn ratio(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

/// Parses `"p"`, `"-p"` or `"p/q"` into an exact rational.
pub fn parse_rational(s: &str) -> Result<Rational> {
    let s = s.trim();
    let parsed = match s.split_once('/') {
        Some((n, d)) => {
            let n = BigInt::from_str(n.trim()).map_err(|_| Error::Parse(format!("bad numerator in {s:?}")))?;
            let d = BigInt::from_str(d.trim()).map_err(|_| Error::Parse(format!("bad denominator in {s:?}")))?;
            if d.is_zero() {
                return Err(Error::Parse(format!("zero denominator in {s:?}")));
            }
            Rational::new(n, d)
        }
        None => Rational::from_integer(
            BigInt::from_str(s).map_err(|_| Error::Parse(format!("bad rational {s:?}")))?,
        ),
    };
    Ok(parsed)
}

/// Converts an exact rational to the nearest-ish `f64`.
///
/// Works for numerators and denominators far outside the `f64` range by
/// shifting both to 64 significant bits first.
pub fn rational_to_f64(r: &Rational) -> f64 {
    if r.is_zero() {
        return 0.0;
    }
    if let (Some(n), Some(d)) = (r.numer().to_f64(), r.denom().to_f64()) {
        if n.is_finite() && d.is_finite() && n.abs() < 9.0e15 && d < 9.0e15 {
            return n / d;
        }
    }
    let nb = r.numer().bits() as i64;
    let db = r.denom().bits() as i64;
    let n_shift = (nb - 64).max(0);
    let d_shift = (db - 64).max(0);
    let n = (r.numer().abs() >> n_shift as usize).to_f64().unwrap_or(f64::MAX);
    let d = (r.denom() >> d_shift as usize).to_f64().unwrap_or(f64::MAX);
    let mag = (n / d) * 2f64.powi((n_shift - d_shift) as i32);
    if r.is_negative() {
        -mag
    } else {
        mag
    }
}

/// Natural logarithm of a positive rational, robust to huge operands.
pub fn rational_ln(r: &Rational) -> f64 {
    debug_assert!(r.is_positive());
    fn big_ln(b: &BigInt) -> f64 {
        let bits = b.bits() as i64;
        let shift = (bits - 60).max(0);
        let top = (b >> shift as usize).to_f64().unwrap_or(f64::MAX);
        top.ln() + shift as f64 * std::f64::consts::LN_2
    }
    big_ln(r.numer()) - big_ln(r.denom())
}

/// Complex rational `re + i·im`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct Coeff {
    pub re: Rational,
    pub im: Rational,
}

impl Coeff {
    pub fn new(re: Rational, im: Rational) -> Self {
        Coeff { re, im }
    }

    pub fn real(re: Rational) -> Self {
        Coeff { re, im: Rational::zero() }
    }

    pub fn from_int(n: i64) -> Self {
        Coeff::real(rat(n))
    }

    pub fn i() -> Self {
        Coeff::new(Rational::zero(), Rational::one())
    }

    pub fn is_real(&self) -> bool {
        self.im.is_zero()
    }

    pub fn conj(&self) -> Self {
        Coeff::new(self.re.clone(), -self.im.clone())
    }

    /// `|z|²`, always a non-negative rational.
    pub fn norm_sqr(&self) -> Rational {
        &self.re * &self.re + &self.im * &self.im
    }

    pub fn scale(&self, r: &Rational) -> Self {
        if self.im.is_zero() {
            Coeff::real(&self.re * r)
        } else {
            Coeff::new(&self.re * r, &self.im * r)
        }
    }

    /// Multiplicative inverse. Panics on zero.
    pub fn inv(&self) -> Self {
        if self.im.is_zero() {
            return Coeff::real(self.re.recip());
        }
        let n = self.norm_sqr();
        Coeff::new(&self.re / &n, -(&self.im / &n))
    }

    pub fn to_f64_pair(&self) -> (f64, f64) {
        (rational_to_f64(&self.re), rational_to_f64(&self.im))
    }
}

impl Zero for Coeff {
    fn zero() -> Self {
        Coeff::default()
    }
    fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }
}

impl One for Coeff {
    fn one() -> Self {
        Coeff::real(Rational::one())
    }
}

impl From<Rational> for Coeff {
    fn from(r: Rational) -> Self {
        Coeff::real(r)
    }
}

impl From<i64> for Coeff {
    fn from(n: i64) -> Self {
        Coeff::from_int(n)
    }
}

impl<'a> Add<&'a Coeff> for &'a Coeff {
    type Output = Coeff;
    fn add(self, rhs: &Coeff) -> Coeff {
        Coeff::new(&self.re + &rhs.re, &self.im + &rhs.im)
    }
}

impl Add for Coeff {
    type Output = Coeff;
    fn add(self, rhs: Coeff) -> Coeff {
        Coeff::new(self.re + rhs.re, self.im + rhs.im)
    }
}

impl AddAssign<&Coeff> for Coeff {
    fn add_assign(&mut self, rhs: &Coeff) {
        self.re += &rhs.re;
        if !rhs.im.is_zero() {
            self.im += &rhs.im;
        }
    }
}

impl SubAssign<&Coeff> for Coeff {
    fn sub_assign(&mut self, rhs: &Coeff) {
        self.re -= &rhs.re;
        if !rhs.im.is_zero() {
            self.im -= &rhs.im;
        }
    }
}

impl<'a> Sub<&'a Coeff> for &'a Coeff {
    type Output = Coeff;
    fn sub(self, rhs: &Coeff) -> Coeff {
        Coeff::new(&self.re - &rhs.re, &self.im - &rhs.im)
    }
}

impl Sub for Coeff {
    type Output = Coeff;
    fn sub(self, rhs: Coeff) -> Coeff {
        Coeff::new(self.re - rhs.re, self.im - rhs.im)
    }
}

impl<'a> Mul<&'a Coeff> for &'a Coeff {
    type Output = Coeff;
    fn mul(self, rhs: &Coeff) -> Coeff {
        match (self.im.is_zero(), rhs.im.is_zero()) {
            (true, true) => Coeff::real(&self.re * &rhs.re),
            (true, false) => Coeff::new(&self.re * &rhs.re, &self.re * &rhs.im),
            (false, true) => Coeff::new(&self.re * &rhs.re, &self.im * &rhs.re),
            (false, false) => Coeff::new(
                &self.re * &rhs.re - &self.im * &rhs.im,
                &self.re * &rhs.im + &self.im * &rhs.re,
            ),
        }
    }
}

impl Mul for Coeff {
    type Output = Coeff;
    fn mul(self, rhs: Coeff) -> Coeff {
        &self * &rhs
    }
}

impl<'a> Div<&'a Coeff> for &'a Coeff {
    type Output = Coeff;
    fn div(self, rhs: &Coeff) -> Coeff {
        if rhs.im.is_zero() {
            if self.im.is_zero() {
                return Coeff::real(&self.re / &rhs.re);
            }
            return Coeff::new(&self.re / &rhs.re, &self.im / &rhs.re);
        }
        self * &rhs.inv()
    }
}

impl Div for Coeff {
    type Output = Coeff;
    fn div(self, rhs: Coeff) -> Coeff {
        &self / &rhs
    }
}

impl Neg for Coeff {
    type Output = Coeff;
    fn neg(self) -> Coeff {
        Coeff::new(-self.re, -self.im)
    }
}

impl Neg for &Coeff {
    type Output = Coeff;
    fn neg(self) -> Coeff {
        Coeff::new(-self.re.clone(), -self.im.clone())
    }
}

impl fmt::Display for Coeff {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.re.is_zero(), self.im.is_zero()) {
            (_, true) => write!(f, "{}", self.re),
            (true, false) => write!(f, "{}i", self.im),
            (false, false) => {
                if self.im.is_negative() {
                    write!(f, "({} - {}i)", self.re, -self.im.clone())
                } else {
                    write!(f, "({} + {}i)", self.re, self.im)
                }
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_forms() {
        assert_eq!(parse_rational("3").unwrap(), rat(3));
        assert_eq!(parse_rational("-6/4").unwrap(), ratio(-3, 2));
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("0.5").is_err());
    }

    #[test]
    fn complex_field_ops() {
        let z = Coeff::new(rat(1), rat(2));
        let w = Coeff::new(rat(3), rat(-1));
        let p = &z * &w;
        assert_eq!(p, Coeff::new(rat(5), rat(5)));
        assert_eq!(&p / &w, z);
        assert_eq!(&z * &z.conj(), Coeff::real(rat(5)));
    }

    #[test]
    fn huge_rationals_convert() {
        let big = Rational::new(BigInt::from(10).pow(400) * 3, BigInt::from(10).pow(400));
        assert!((rational_to_f64(&big) - 3.0).abs() < 1e-15);
        let tiny = Rational::new(BigInt::from(1), BigInt::from(10).pow(400));
        assert!((rational_ln(&tiny) + 400.0 * std::f64::consts::LN_10).abs() < 1e-9);
    }
}
