//! Exact Gaussian-rational scalars `a + b·i` with `a, b ∈ ℚ`.
//!
//! Every coefficient in the engine (structure constants, metric entries,
//! Hodge-star matrices, curvature symbols) lives in this field. Rationals are
//! backed by arbitrary-precision integers, so no operation ever rounds.

use std::fmt;
use std::iter::{Product, Sum};
use std::ops::{Add, AddAssign, Div, Mul, MulAssign, Neg, Sub, SubAssign};
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// Arbitrary-precision rational number in canonical form.
pub type Rational = BigRational;

/// Builds the rational `num/den`. Panics if `den == 0`.
pub fn rat(num: i64, den: i64) -> Rational {
  Rational::new(BigInt::from(num), BigInt::from(den))
}

/// Parses a rational written as `p` or `p/q`.
pub fn parse_rational(text: &str) -> Result<Rational> {
  let t = text.trim();
  let bad = || Error::Parse { what: "rational", input: text.to_string() };
  if t.is_empty() {
    return Err(bad());
  }
  let (num, den) = match t.split_once('/') {
    Some((n, d)) => (n.trim(), Some(d.trim())),
    None => (t, None),
  };
  let num: BigInt = parse_int(num).ok_or_else(bad)?;
  let den: BigInt = match den {
    Some(d) => parse_int(d).ok_or_else(bad)?,
    None => BigInt::one(),
  };
  if den.is_zero() {
    return Err(Error::DivisionByZero);
  }
  Ok(Rational::new(num, den))
}

fn parse_int(s: &str) -> Option<BigInt> {
  let digits = s.strip_prefix(['+', '-']).unwrap_or(s);
  if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
    return None;
  }
  s.parse().ok()
}

/// A Gaussian rational `re + im·i`.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Default)]
pub struct Scalar {
  re: Rational,
  im: Rational,
}

impl Scalar {
  pub fn new(re: Rational, im: Rational) -> Self { Self { re, im } }

  pub fn from_int(n: i64) -> Self { Self::real(Rational::from_integer(n.into())) }

  pub fn real(re: Rational) -> Self { Self { re, im: Rational::zero() } }

  pub fn imag(im: Rational) -> Self { Self { re: Rational::zero(), im } }

  /// `num/den` as a real scalar.
  pub fn ratio(num: i64, den: i64) -> Self { Self::real(rat(num, den)) }

  /// The imaginary unit `√−1`.
  pub fn i() -> Self { Self::imag(Rational::one()) }

  pub fn re(&self) -> &Rational { &self.re }

  pub fn im(&self) -> &Rational { &self.im }

  pub fn conj(&self) -> Self { Self { re: self.re.clone(), im: -self.im.clone() } }

  /// `|a|² = a·conj(a)`, always a nonnegative rational.
  pub fn norm_sqr(&self) -> Rational { &self.re * &self.re + &self.im * &self.im }

  pub fn is_real(&self) -> bool { self.im.is_zero() }

  pub fn is_zero(&self) -> bool { self.re.is_zero() && self.im.is_zero() }

  pub fn is_one(&self) -> bool { self.re.is_one() && self.im.is_zero() }

  /// Multiplicative inverse.
  pub fn inv(&self) -> Result<Self> {
    let n = self.norm_sqr();
    if n.is_zero() {
      return Err(Error::DivisionByZero);
    }
    Ok(Self { re: &self.re / &n, im: -(&self.im / &n) })
  }

  pub fn checked_div(&self, rhs: &Self) -> Result<Self> { Ok(self * &rhs.inv()?) }

  pub fn scale(&self, k: &Rational) -> Self { Self { re: &self.re * k, im: &self.im * k } }

  /// Multiplication by `√−1`.
  pub fn mul_i(&self) -> Self { Self { re: -self.im.clone(), im: self.re.clone() } }

  /// Least common multiple of the denominators of both parts.
  pub fn denominator_lcm(&self) -> BigInt {
    num_integer::Integer::lcm(self.re.denom(), self.im.denom())
  }

  /// Approximate value, for human-facing output only.
  pub fn to_f64_pair(&self) -> (f64, f64) { (rational_to_f64(&self.re), rational_to_f64(&self.im)) }
}

pub fn rational_to_f64(r: &Rational) -> f64 {
  use num_traits::ToPrimitive;
  r.to_f64().unwrap_or(f64::NAN)
}

impl From<i64> for Scalar {
  fn from(n: i64) -> Self { Self::from_int(n) }
}

impl From<Rational> for Scalar {
  fn from(r: Rational) -> Self { Self::real(r) }
}

impl Zero for Scalar {
  fn zero() -> Self { Self { re: Rational::zero(), im: Rational::zero() } }

  fn is_zero(&self) -> bool { Scalar::is_zero(self) }
}

impl One for Scalar {
  fn one() -> Self { Self::real(Rational::one()) }
}

impl Neg for Scalar {
  type Output = Scalar;

  fn neg(self) -> Scalar { Scalar { re: -self.re, im: -self.im } }
}

impl Neg for &Scalar {
  type Output = Scalar;

  fn neg(self) -> Scalar { Scalar { re: -self.re.clone(), im: -self.im.clone() } }
}

impl Add<&Scalar> for &Scalar {
  type Output = Scalar;

  fn add(self, rhs: &Scalar) -> Scalar { Scalar { re: &self.re + &rhs.re, im: &self.im + &rhs.im } }
}

impl Sub<&Scalar> for &Scalar {
  type Output = Scalar;

  fn sub(self, rhs: &Scalar) -> Scalar { Scalar { re: &self.re - &rhs.re, im: &self.im - &rhs.im } }
}

impl Mul<&Scalar> for &Scalar {
  type Output = Scalar;

  fn mul(self, rhs: &Scalar) -> Scalar {
    if self.im.is_zero() && rhs.im.is_zero() {
      return Scalar::real(&self.re * &rhs.re);
    }
    Scalar {
      re: &self.re * &rhs.re - &self.im * &rhs.im,
      im: &self.re * &rhs.im + &self.im * &rhs.re,
    }
  }
}

/// Panics on division by zero; use [`Scalar::checked_div`] for a fallible version.
impl Div<&Scalar> for &Scalar {
  type Output = Scalar;

  fn div(self, rhs: &Scalar) -> Scalar { self.checked_div(rhs).expect("division by zero scalar") }
}

macro_rules! forward_binop {
  ($Trait:ident, $method:ident) => {
    impl $Trait<Scalar> for Scalar {
      type Output = Scalar;

      fn $method(self, rhs: Scalar) -> Scalar { (&self).$method(&rhs) }
    }
    impl $Trait<&Scalar> for Scalar {
      type Output = Scalar;

      fn $method(self, rhs: &Scalar) -> Scalar { (&self).$method(rhs) }
    }
    impl $Trait<Scalar> for &Scalar {
      type Output = Scalar;

      fn $method(self, rhs: Scalar) -> Scalar { self.$method(&rhs) }
    }
  };
}

forward_binop!(Add, add);
forward_binop!(Sub, sub);
forward_binop!(Mul, mul);
forward_binop!(Div, div);

impl AddAssign<&Scalar> for Scalar {
  fn add_assign(&mut self, rhs: &Scalar) {
    self.re += &rhs.re;
    self.im += &rhs.im;
  }
}

impl AddAssign for Scalar {
  fn add_assign(&mut self, rhs: Scalar) { *self += &rhs; }
}

impl SubAssign<&Scalar> for Scalar {
  fn sub_assign(&mut self, rhs: &Scalar) {
    self.re -= &rhs.re;
    self.im -= &rhs.im;
  }
}

impl SubAssign for Scalar {
  fn sub_assign(&mut self, rhs: Scalar) { *self -= &rhs; }
}

impl MulAssign<&Scalar> for Scalar {
  fn mul_assign(&mut self, rhs: &Scalar) { *self = &*self * rhs; }
}

impl Sum for Scalar {
  fn sum<I: Iterator<Item = Scalar>>(iter: I) -> Scalar {
    iter.fold(Scalar::zero(), |mut acc, x| {
      acc += &x;
      acc
    })
  }
}

impl<'a> Sum<&'a Scalar> for Scalar {
  fn sum<I: Iterator<Item = &'a Scalar>>(iter: I) -> Scalar {
    iter.fold(Scalar::zero(), |mut acc, x| {
      acc += x;
      acc
    })
  }
}

impl Product for Scalar {
  fn product<I: Iterator<Item = Scalar>>(iter: I) -> Scalar { iter.fold(Scalar::one(), |acc, x| acc * x) }
}

/// Text form `p/q+r/s i`. Pure imaginary parts with unit magnitude print as `i` / `-i`.
impl fmt::Display for Scalar {
  fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
    let im_text = |im: &Rational| -> String {
      if im.is_one() {
        "i".to_string()
      } else if (-im).is_one() {
        "-i".to_string()
      } else {
        format!("{im} i")
      }
    };
    match (self.re.is_zero(), self.im.is_zero()) {
      (_, true) => write!(f, "{}", self.re),
      (true, false) => write!(f, "{}", im_text(&self.im)),
      (false, false) => {
        let im = im_text(&self.im);
        if self.im.is_negative() {
          write!(f, "{}{}", self.re, im)
        } else {
          write!(f, "{}+{}", self.re, im)
        }
      }
    }
  }
}

impl FromStr for Scalar {
  type Err = Error;

  /// Accepts `p/q`, `r/s i`, `p/q+r/s i`, `i`, `-i`, `1/2-i`, with optional
  /// whitespace. Either part may be omitted.
  fn from_str(text: &str) -> Result<Scalar> {
    let compact: String = text.chars().filter(|c| !c.is_whitespace()).collect();
    let bad = || Error::Parse { what: "scalar", input: text.to_string() };
    if compact.is_empty() {
      return Err(bad());
    }
    let Some(body) = compact.strip_suffix('i') else {
      return Ok(Scalar::real(parse_rational(&compact).map_err(|e| relabel(e, text))?));
    };
    // Split at the last sign that starts the imaginary part (not a sign right after '/').
    let bytes = body.as_bytes();
    let split = (1..bytes.len()).rev().find(|&k| (bytes[k] == b'+' || bytes[k] == b'-') && bytes[k - 1] != b'/');
    let (re_text, im_text) = match split {
      Some(k) => (&body[..k], &body[k..]),
      None => ("", body),
    };
    let im = match im_text {
      "" | "+" => Rational::one(),
      "-" => -Rational::one(),
      t => parse_rational(t).map_err(|e| relabel(e, text))?,
    };
    let re = if re_text.is_empty() { Rational::zero() } else { parse_rational(re_text).map_err(|e| relabel(e, text))? };
    if re_text.ends_with(['+', '-']) {
      return Err(bad());
    }
    Ok(Scalar { re, im })
  }
}

fn relabel(err: Error, text: &str) -> Error {
  match err {
    Error::Parse { .. } => Error::Parse { what: "scalar", input: text.to_string() },
    other => other,
  }
}

impl serde::Serialize for Scalar {
  fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&self.to_string())
  }
}

impl<'de> serde::Deserialize<'de> for Scalar {
  fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
    let text = String::deserialize(d)?;
    text.parse().map_err(serde::de::Error::custom)
  }
}

#[cfg(test)]
mod tests {
  use super::*;

  fn s(text: &str) -> Scalar { text.parse().unwrap() }

  #[test]
  fn products_and_quotients() {
    assert_eq!(s("1+2i") * s("3-i"), s("5+5i"));
    assert_eq!(s("1/2 i") + s("1/2 i"), Scalar::i());
    assert_eq!(Scalar::one().checked_div(&s("1+i")).unwrap(), s("1/2-1/2 i"));
  }

  #[test]
  fn division_by_zero_is_an_error() {
    assert!(matches!(Scalar::one().checked_div(&Scalar::zero()), Err(Error::DivisionByZero)));
    assert!(matches!("1/0".parse::<Scalar>(), Err(Error::DivisionByZero)));
  }

  #[test]
  fn conjugation() {
    assert_eq!(s("2+3i").conj(), s("2-3i"));
    assert_eq!(s("5").conj(), s("5"));
    let (a, b) = (s("1+i"), s("2-i"));
    assert_eq!((&a * &b).conj(), s("3-i"));
    assert_eq!(a.conj() * b.conj(), s("3-i"));
  }

  #[test]
  fn parse_forms() {
    assert_eq!(s("-i"), -Scalar::i());
    assert_eq!(s("i"), Scalar::i());
    assert_eq!(s("3/4 i"), Scalar::imag(rat(3, 4)));
    assert_eq!(s("-1/2+3/4i"), Scalar::new(rat(-1, 2), rat(3, 4)));
    assert_eq!(s(" 1/2 - i "), Scalar::new(rat(1, 2), rat(-1, 1)));
    assert_eq!(s("2/4"), Scalar::ratio(1, 2));
    for bad in ["1//2", "", "abc", "1/2+", "1+2", "1.5", "++i", "1+-2i"] {
      assert!(bad.parse::<Scalar>().is_err(), "{bad:?} should not parse");
    }
  }

  #[test]
  fn display_round_trips() {
    for text in ["0", "1/2", "i", "-i", "3/4 i", "1/2-i", "-7+2/3 i", "5-5/9 i"] {
      let v = s(text);
      assert_eq!(v.to_string(), text);
      assert_eq!(s(&v.to_string()), v);
    }
  }

  #[test]
  fn norm_is_real_nonnegative() {
    let a = s("-3/2+5/7i");
    let n = &a * &a.conj();
    assert!(n.is_real());
    assert_eq!(n.re(), &a.norm_sqr());
    assert!(!a.norm_sqr().is_negative());
  }
}
