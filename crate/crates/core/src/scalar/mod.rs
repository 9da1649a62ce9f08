//! Exact arithmetic in the Gaussian rationals ℚ(i).
//!
//! Every structure constant in the crate is a [`GaussScalar`]. The text form
//! is `a/b+c/d*i` with zero parts omitted, e.g. `1`, `-1/2*i`, `3/4-1/4*i`;
//! unit imaginary parts print as `i` / `-i`.

mod gaussint;
mod univariate;

pub use univariate::{solve_univariate, UniPoly, UnivariateRoots};

use crate::error::{Error, Result};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, AddAssign, Div, Mul, MulAssign, Neg, Sub, SubAssign};
use std::str::FromStr;

/// An element `re + im·i` of ℚ(i), both parts kept in lowest terms.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct GaussScalar {
    re: BigRational,
    im: BigRational,
}

impl GaussScalar {
    pub fn new(re: BigRational, im: BigRational) -> Self {
        GaussScalar { re, im }
    }

    /// Builds `re_num/re_den + (im_num/im_den)·i`, reducing both parts.
    pub fn from_parts(re_num: BigInt, re_den: BigInt, im_num: BigInt, im_den: BigInt) -> Result<Self> {
        if re_den.is_zero() || im_den.is_zero() {
            return Err(Error::ZeroDenominator);
        }
        Ok(GaussScalar {
            re: BigRational::new(re_num, re_den),
            im: BigRational::new(im_num, im_den),
        })
    }

    pub fn zero() -> Self {
        GaussScalar::default()
    }

    pub fn one() -> Self {
        Self::from_int(1)
    }

    pub fn i() -> Self {
        GaussScalar { re: BigRational::zero(), im: BigRational::one() }
    }

    pub fn from_int(n: i64) -> Self {
        GaussScalar { re: BigRational::from_integer(n.into()), im: BigRational::zero() }
    }

    /// `p/q` as a real scalar. Panics on `q == 0`; use [`GaussScalar::from_parts`] for untrusted input.
    pub fn ratio(p: i64, q: i64) -> Self {
        assert!(q != 0, "zero denominator");
        GaussScalar { re: BigRational::new(p.into(), q.into()), im: BigRational::zero() }
    }

    pub fn complex(re: Self, im: Self) -> Self {
        re + Self::i() * im
    }

    pub fn re(&self) -> &BigRational {
        &self.re
    }

    pub fn im(&self) -> &BigRational {
        &self.im
    }

    pub fn re_num(&self) -> &BigInt {
        self.re.numer()
    }

    pub fn re_den(&self) -> &BigInt {
        self.re.denom()
    }

    pub fn im_num(&self) -> &BigInt {
        self.im.numer()
    }

    pub fn im_den(&self) -> &BigInt {
        self.im.denom()
    }

    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.re.is_one() && self.im.is_zero()
    }

    pub fn is_real(&self) -> bool {
        self.im.is_zero()
    }

    pub fn conj(&self) -> Self {
        GaussScalar { re: self.re.clone(), im: -self.im.clone() }
    }

    /// The field norm `re² + im²`.
    pub fn norm(&self) -> BigRational {
        &self.re * &self.re + &self.im * &self.im
    }

    pub fn inv(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let n = self.norm();
        Ok(GaussScalar { re: &self.re / &n, im: -(&self.im / &n) })
    }

    /// Re-reduces both parts; values built through this API are always normal already.
    pub fn normalize(&self) -> Self {
        GaussScalar {
            re: BigRational::new(self.re.numer().clone(), self.re.denom().clone()),
            im: BigRational::new(self.im.numer().clone(), self.im.denom().clone()),
        }
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Self::one();
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    /// All `r` in ℚ(i) with `r² = self`, sorted; empty when none exists.
    pub fn sqrt(&self) -> Vec<Self> {
        if self.is_zero() {
            return vec![Self::zero()];
        }
        let Some(m) = rational_sqrt(&self.norm()) else {
            return Vec::new();
        };
        let two = BigRational::from_integer(2.into());
        let a2 = (&self.re + &m) / &two;
        let b2 = (&m - &self.re) / &two;
        let (Some(a), Some(mut b)) = (rational_sqrt(&a2), rational_sqrt(&b2)) else {
            return Vec::new();
        };
        // choose the sign of b so that 2ab = im
        if !a.is_zero() && (&a * &b * &two) != self.im {
            b = -b;
        }
        let r = GaussScalar { re: a, im: b };
        debug_assert_eq!(&(&r * &r), self);
        let mut out = vec![-r.clone(), r];
        out.sort();
        out
    }
}

/// Exact square root of a nonnegative rational, when it is rational.
pub(crate) fn rational_sqrt(q: &BigRational) -> Option<BigRational> {
    if q.is_negative() {
        return None;
    }
    let n = q.numer().sqrt();
    let d = q.denom().sqrt();
    (&n * &n == *q.numer() && &d * &d == *q.denom()).then(|| BigRational::new(n, d))
}

/// Canonical total order (real part, then imaginary part) used for sorting; not a field order.
impl Ord for GaussScalar {
    fn cmp(&self, other: &Self) -> Ordering {
        self.re.cmp(&other.re).then_with(|| self.im.cmp(&other.im))
    }
}

impl PartialOrd for GaussScalar {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl From<i64> for GaussScalar {
    fn from(n: i64) -> Self {
        Self::from_int(n)
    }
}

impl From<BigRational> for GaussScalar {
    fn from(re: BigRational) -> Self {
        GaussScalar { re, im: BigRational::zero() }
    }
}

macro_rules! forward_binop {
    ($tr:ident, $method:ident, $body:expr) => {
        impl<'a> $tr<&'a GaussScalar> for &'a GaussScalar {
            type Output = GaussScalar;
            fn $method(self, rhs: &'a GaussScalar) -> GaussScalar {
                let f: fn(&GaussScalar, &GaussScalar) -> GaussScalar = $body;
                f(self, rhs)
            }
        }
        impl $tr<GaussScalar> for GaussScalar {
            type Output = GaussScalar;
            fn $method(self, rhs: GaussScalar) -> GaussScalar {
                (&self).$method(&rhs)
            }
        }
        impl<'a> $tr<&'a GaussScalar> for GaussScalar {
            type Output = GaussScalar;
            fn $method(self, rhs: &'a GaussScalar) -> GaussScalar {
                (&self).$method(rhs)
            }
        }
    };
}

forward_binop!(Add, add, |a, b| GaussScalar { re: &a.re + &b.re, im: &a.im + &b.im });
forward_binop!(Sub, sub, |a, b| GaussScalar { re: &a.re - &b.re, im: &a.im - &b.im });
forward_binop!(Mul, mul, |a, b| {
    if a.im.is_zero() && b.im.is_zero() {
        return GaussScalar { re: &a.re * &b.re, im: BigRational::zero() };
    }
    GaussScalar {
        re: &a.re * &b.re - &a.im * &b.im,
        im: &a.re * &b.im + &a.im * &b.re,
    }
});
forward_binop!(Div, div, |a, b| a * &b.inv().expect("division by zero scalar"));

impl Neg for GaussScalar {
    type Output = GaussScalar;
    fn neg(self) -> GaussScalar {
        GaussScalar { re: -self.re, im: -self.im }
    }
}

impl Neg for &GaussScalar {
    type Output = GaussScalar;
    fn neg(self) -> GaussScalar {
        GaussScalar { re: -self.re.clone(), im: -self.im.clone() }
    }
}

impl AddAssign<&GaussScalar> for GaussScalar {
    fn add_assign(&mut self, rhs: &GaussScalar) {
        self.re += &rhs.re;
        self.im += &rhs.im;
    }
}

impl SubAssign<&GaussScalar> for GaussScalar {
    fn sub_assign(&mut self, rhs: &GaussScalar) {
        self.re -= &rhs.re;
        self.im -= &rhs.im;
    }
}

impl MulAssign<&GaussScalar> for GaussScalar {
    fn mul_assign(&mut self, rhs: &GaussScalar) {
        *self = &*self * rhs;
    }
}

impl std::iter::Sum for GaussScalar {
    fn sum<I: Iterator<Item = GaussScalar>>(iter: I) -> Self {
        iter.fold(GaussScalar::zero(), |acc, x| acc + x)
    }
}

fn fmt_rational(q: &BigRational) -> String {
    if q.denom().is_one() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

impl fmt::Display for GaussScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let mut out = String::new();
        if !self.re.is_zero() {
            out.push_str(&fmt_rational(&self.re));
        }
        if !self.im.is_zero() {
            if !self.re.is_zero() && self.im.is_positive() {
                out.push('+');
            }
            if self.im.is_one() {
                out.push('i');
            } else if (-&self.im).is_one() {
                out.push_str("-i");
            } else {
                out.push_str(&fmt_rational(&self.im));
                out.push_str("*i");
            }
        }
        f.write_str(&out)
    }
}

impl fmt::Debug for GaussScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

fn parse_rational(s: &str, whole: &str) -> Result<BigRational> {
    let bad = || Error::MalformedScalar(whole.to_string());
    let digits_ok = |t: &str| {
        let t = t.strip_prefix(['-', '+']).unwrap_or(t);
        !t.is_empty() && t.bytes().all(|b| b.is_ascii_digit())
    };
    match s.split_once('/') {
        None => {
            if !digits_ok(s) {
                return Err(bad());
            }
            Ok(BigRational::from_integer(s.trim_start_matches('+').parse().map_err(|_| bad())?))
        }
        Some((n, d)) => {
            if !digits_ok(n) || d.is_empty() || !d.bytes().all(|b| b.is_ascii_digit()) {
                return Err(bad());
            }
            let n: BigInt = n.trim_start_matches('+').parse().map_err(|_| bad())?;
            let d: BigInt = d.parse().map_err(|_| bad())?;
            if d.is_zero() {
                return Err(Error::ZeroDenominator);
            }
            Ok(BigRational::new(n, d))
        }
    }
}

fn parse_imag(s: &str, whole: &str) -> Result<BigRational> {
    let body = s.strip_suffix('i').ok_or_else(|| Error::MalformedScalar(whole.to_string()))?;
    match body {
        "" | "+" => Ok(BigRational::one()),
        "-" => Ok(-BigRational::one()),
        _ => {
            let coeff = body.strip_suffix('*').unwrap_or(body);
            parse_rational(coeff, whole)
        }
    }
}

impl FromStr for GaussScalar {
    type Err = Error;

    fn from_str(input: &str) -> Result<Self> {
        let s: String = input.chars().filter(|c| !c.is_whitespace()).collect();
        if s.is_empty() {
            return Err(Error::MalformedScalar(input.to_string()));
        }
        if !s.ends_with('i') {
            return Ok(GaussScalar { re: parse_rational(&s, input)?, im: BigRational::zero() });
        }
        // split before the last sign that is not the leading one
        let split = s
            .char_indices()
            .filter(|&(k, c)| k > 0 && (c == '+' || c == '-'))
            .map(|(k, _)| k)
            .next_back();
        let (re, im) = match split {
            Some(k) => (parse_rational(&s[..k], input)?, parse_imag(&s[k..], input)?),
            None => (BigRational::zero(), parse_imag(&s, input)?),
        };
        Ok(GaussScalar { re, im })
    }
}

impl serde::Serialize for GaussScalar {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> serde::Deserialize<'de> for GaussScalar {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// Shorthand for parsing a trusted scalar literal; panics on malformed input.
pub fn sc(s: &str) -> GaussScalar {
    s.parse().unwrap_or_else(|e| panic!("{e}"))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn reduces_to_lowest_terms() {
        let s = GaussScalar::from_parts(2.into(), 4.into(), 0.into(), 1.into()).unwrap();
        assert_eq!(s, sc("1/2"));
        assert_eq!(s.re_num(), &BigInt::from(1));
        assert_eq!(s.re_den(), &BigInt::from(2));
        assert!(GaussScalar::from_parts(1.into(), 0.into(), 0.into(), 1.into()).is_err());
    }

    #[test]
    fn i_squared_is_minus_one() {
        assert_eq!(GaussScalar::i() * GaussScalar::i(), sc("-1"));
    }

    #[test]
    fn inverse_multiplies_back() {
        let z = sc("1+i");
        let w = z.inv().unwrap();
        assert_eq!(w, sc("1/2-1/2*i"));
        assert!((&z * &w).is_one());
        assert!(GaussScalar::zero().inv().is_err());
    }

    #[test]
    fn text_round_trip() {
        for s in ["0", "1", "-1", "i", "-i", "-1/2*i", "3/4-1/4*i", "2+i", "-7/3+5/2*i", "1/2"] {
            assert_eq!(sc(s).to_string(), s);
        }
        assert_eq!(sc("1*i"), GaussScalar::i());
        assert_eq!(sc(" 1/2 + 1/2 * i"), sc("1/2+1/2*i"));
        for bad in ["", "x", "1/0", "1//2", "i*", "1+", "--1", "1.5"] {
            assert!(bad.parse::<GaussScalar>().is_err(), "{bad}");
        }
    }

    #[test]
    fn sqrt_examples() {
        assert_eq!(sc("-1").sqrt(), vec![sc("-i"), sc("i")]);
        assert_eq!(sc("1/4").sqrt(), vec![sc("-1/2"), sc("1/2")]);
        assert!(sc("2").sqrt().is_empty());
        assert_eq!(sc("2*i").sqrt(), vec![sc("-1-i"), sc("1+i")]);
        assert_eq!(sc("-3-4*i").sqrt(), vec![sc("-1+2*i"), sc("1-2*i")]);
        assert_eq!(sc("0").sqrt(), vec![sc("0")]);
    }

    /// Oracle: a² − b² = 2 and ab = 0 has no rational solution, checked by the case split
    /// a = 0 (−b² = 2) or b = 0 (a² = 2, no rational root by bounded search of a = p/q).
    #[test]
    fn sqrt_two_oracle() {
        for q in 1i64..40 {
            for p in 0i64..80 {
                assert_ne!(p * p, 2 * q * q);
            }
        }
        assert!(sc("2").sqrt().is_empty());
    }
}
