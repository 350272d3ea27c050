//! Exact complex scalars `a + b·i` with rational `a`, `b`.
//!
//! Values are kept in canonical form at all times (reduced fractions with a
//! positive denominator, zero as `0/1`), so structural equality and hashing
//! agree with numeric equality.

use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::ParseError;

#[derive(Clone, PartialEq, Eq, Hash, Debug, Default)]
pub struct GaussianRational {
    re: BigRational,
    im: BigRational,
}

fn rat(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

impl GaussianRational {
    pub fn new(re: BigRational, im: BigRational) -> Self {
        // `Ratio` arithmetic keeps values reduced; this is the single entry
        // point so nothing unreduced can sneak in.
        Self { re, im }
    }

    pub fn from_ints(re: i64, im: i64) -> Self {
        Self::new(rat(re), rat(im))
    }

    pub fn from_fractions(re: (i64, i64), im: (i64, i64)) -> Self {
        Self::new(
            BigRational::new(BigInt::from(re.0), BigInt::from(re.1)),
            BigRational::new(BigInt::from(im.0), BigInt::from(im.1)),
        )
    }

    pub fn real(re: BigRational) -> Self {
        Self::new(re, BigRational::zero())
    }

    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::from_ints(1, 0)
    }

    pub fn i() -> Self {
        Self::from_ints(0, 1)
    }

    pub fn re(&self) -> &BigRational {
        &self.re
    }

    pub fn im(&self) -> &BigRational {
        &self.im
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
        Self::new(self.re.clone(), -self.im.clone())
    }

    /// `|z|²`, always a non-negative rational.
    pub fn norm_sqr(&self) -> BigRational {
        &self.re * &self.re + &self.im * &self.im
    }

    pub fn scale(&self, k: &BigRational) -> Self {
        Self::new(&self.re * k, &self.im * k)
    }

    /// Multiplicative inverse, `None` for zero.
    pub fn inv(&self) -> Option<Self> {
        if self.is_zero() {
            return None;
        }
        let n = self.norm_sqr();
        Some(Self::new(&self.re / &n, -(&self.im / &n)))
    }

    pub fn checked_div(&self, rhs: &Self) -> Option<Self> {
        rhs.inv().map(|r| self * &r)
    }

    pub fn pow(&self, mut e: u32) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one();
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            base = &base * &base;
            e >>= 1;
        }
        acc
    }

    /// Integer value when the scalar is a real integer.
    pub fn to_integer(&self) -> Option<BigInt> {
        if self.im.is_zero() && self.re.is_integer() {
            Some(self.re.to_integer())
        } else {
            None
        }
    }
}

impl From<i64> for GaussianRational {
    fn from(n: i64) -> Self {
        Self::from_ints(n, 0)
    }
}

impl Add for &GaussianRational {
    type Output = GaussianRational;
    fn add(self, rhs: &GaussianRational) -> GaussianRational {
        GaussianRational::new(&self.re + &rhs.re, &self.im + &rhs.im)
    }
}

impl Add for GaussianRational {
    type Output = GaussianRational;
    fn add(self, rhs: GaussianRational) -> GaussianRational {
        GaussianRational::new(self.re + rhs.re, self.im + rhs.im)
    }
}

impl AddAssign<&GaussianRational> for GaussianRational {
    fn add_assign(&mut self, rhs: &GaussianRational) {
        self.re += &rhs.re;
        self.im += &rhs.im;
    }
}

impl Sub for &GaussianRational {
    type Output = GaussianRational;
    fn sub(self, rhs: &GaussianRational) -> GaussianRational {
        GaussianRational::new(&self.re - &rhs.re, &self.im - &rhs.im)
    }
}

impl Sub for GaussianRational {
    type Output = GaussianRational;
    fn sub(self, rhs: GaussianRational) -> GaussianRational {
        &self - &rhs
    }
}

impl Mul for &GaussianRational {
    type Output = GaussianRational;
    fn mul(self, rhs: &GaussianRational) -> GaussianRational {
        // Fast paths: most entries in this domain are 0 or ±1, ±i.
        if self.is_zero() || rhs.is_zero() {
            return GaussianRational::zero();
        }
        if self.im.is_zero() && rhs.im.is_zero() {
            return GaussianRational::real(&self.re * &rhs.re);
        }
        GaussianRational::new(
            &self.re * &rhs.re - &self.im * &rhs.im,
            &self.re * &rhs.im + &self.im * &rhs.re,
        )
    }
}

impl Mul for GaussianRational {
    type Output = GaussianRational;
    fn mul(self, rhs: GaussianRational) -> GaussianRational {
        &self * &rhs
    }
}

impl Neg for &GaussianRational {
    type Output = GaussianRational;
    fn neg(self) -> GaussianRational {
        GaussianRational::new(-self.re.clone(), -self.im.clone())
    }
}

impl Neg for GaussianRational {
    type Output = GaussianRational;
    fn neg(self) -> GaussianRational {
        GaussianRational::new(-self.re, -self.im)
    }
}

fn fmt_rational(r: &BigRational) -> String {
    if r.is_integer() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// Imaginary part with the `i` suffix; unit coefficients collapse to `i`/`-i`.
fn fmt_imag(r: &BigRational) -> String {
    if r.is_one() {
        "i".to_string()
    } else if (-r).is_one() {
        "-i".to_string()
    } else {
        format!("{}i", fmt_rational(r))
    }
}

impl fmt::Display for GaussianRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.re.is_zero(), self.im.is_zero()) {
            (true, true) => f.write_str("0"),
            (false, true) => f.write_str(&fmt_rational(&self.re)),
            (true, false) => f.write_str(&fmt_imag(&self.im)),
            (false, false) => {
                let sign = if self.im.is_negative() { '-' } else { '+' };
                write!(
                    f,
                    "{}{}{}",
                    fmt_rational(&self.re),
                    sign,
                    fmt_imag(&self.im.abs())
                )
            }
        }
    }
}

/// Cursor over one entry token.
struct Lexer<'a> {
    bytes: &'a [u8],
    pos: usize,
}

impl<'a> Lexer<'a> {
    fn peek(&self) -> Option<u8> {
        self.bytes.get(self.pos).copied()
    }

    fn eat(&mut self, c: u8) -> bool {
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn nat(&mut self) -> Option<BigInt> {
        let start = self.pos;
        while matches!(self.peek(), Some(b'0'..=b'9')) {
            self.pos += 1;
        }
        if start == self.pos {
            return None;
        }
        let digits = std::str::from_utf8(&self.bytes[start..self.pos]).ok()?;
        digits.parse().ok()
    }

    fn err(&self, msg: impl Into<String>) -> ParseError {
        ParseError::at_offset(self.pos, msg)
    }

    /// `nat ['/' nat]`
    fn fraction(&mut self) -> Result<Option<BigRational>, ParseError> {
        let Some(num) = self.nat() else {
            return Ok(None);
        };
        if self.eat(b'/') {
            let den = self.nat().ok_or_else(|| self.err("expected denominator"))?;
            if den.is_zero() {
                return Err(ParseError::zero_denominator(self.pos));
            }
            Ok(Some(BigRational::new(num, den)))
        } else {
            Ok(Some(BigRational::from_integer(num)))
        }
    }

    /// One signed term: either a real part or an imaginary part.
    fn term(&mut self) -> Result<(BigRational, bool), ParseError> {
        let neg = self.eat(b'-');
        let mag = self.fraction()?;
        let imag = self.eat(b'i');
        let mag = match (mag, imag) {
            (Some(m), _) => m,
            (None, true) => BigRational::one(),
            (None, false) => return Err(self.err("expected number or 'i'")),
        };
        Ok((if neg { -mag } else { mag }, imag))
    }
}

impl FromStr for GaussianRational {
    type Err = ParseError;

    /// Entry grammar: `real | imag | real sign imag`, e.g. `0`, `-1/2`,
    /// `i`, `-3i`, `1/2+1/2i`, `1-i`.
    fn from_str(s: &str) -> Result<Self, ParseError> {
        let mut lx = Lexer {
            bytes: s.as_bytes(),
            pos: 0,
        };
        if s.is_empty() {
            return Err(lx.err("empty entry"));
        }
        let (first, first_imag) = lx.term()?;
        if lx.peek().is_none() {
            return Ok(if first_imag {
                Self::new(BigRational::zero(), first)
            } else {
                Self::real(first)
            });
        }
        if first_imag {
            return Err(lx.err("imaginary part must come last"));
        }
        let sign = match lx.peek() {
            Some(b'+') => 1,
            Some(b'-') => -1,
            _ => return Err(lx.err("expected '+' or '-'")),
        };
        lx.pos += 1;
        let (second, second_imag) = lx.term()?;
        if !second_imag {
            return Err(lx.err("expected imaginary part"));
        }
        if lx.peek().is_some() {
            return Err(lx.err("trailing characters"));
        }
        let im = if sign < 0 { -second } else { second };
        Ok(Self::new(first, im))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn g(s: &str) -> GaussianRational {
        s.parse().unwrap()
    }

    #[test]
    fn canonical_printing() {
        assert_eq!(g("0").to_string(), "0");
        assert_eq!(g("-0").to_string(), "0");
        assert_eq!(g("2/4").to_string(), "1/2");
        assert_eq!(g("i").to_string(), "i");
        assert_eq!(g("-1i").to_string(), "-i");
        assert_eq!(g("1/2+1/2i").to_string(), "1/2+1/2i");
        assert_eq!(g("3-6/4i").to_string(), "3-3/2i");
        assert_eq!(g("0+0i").to_string(), "0");
        assert_eq!(g("0-i").to_string(), "-i");
        assert_eq!(g("1+-i").to_string(), "1-i");
    }

    #[test]
    fn unit_identities() {
        let one_plus_i = g("1+i");
        let one_minus_i = g("1-i");
        assert_eq!(&one_plus_i * &one_minus_i, GaussianRational::from(2));
        assert!(GaussianRational::i().pow(4).is_one());
        assert_eq!(GaussianRational::i().pow(2), GaussianRational::from(-1));
    }

    #[test]
    fn inverse() {
        let z = g("1/2+1/2i");
        assert!((&z * &z.inv().unwrap()).is_one());
        assert!(GaussianRational::zero().inv().is_none());
    }

    #[test]
    fn parse_errors() {
        assert!("".parse::<GaussianRational>().is_err());
        assert!("1/0".parse::<GaussianRational>().is_err());
        assert!("i+1".parse::<GaussianRational>().is_err());
        assert!("1+2".parse::<GaussianRational>().is_err());
        assert!("1 + i".parse::<GaussianRational>().is_err());
        assert!("x".parse::<GaussianRational>().is_err());
        assert!("1/".parse::<GaussianRational>().is_err());
        let e = "1/0".parse::<GaussianRational>().unwrap_err();
        assert!(e.to_string().contains("zero denominator"));
    }
}
