//! Dense polynomials over GF(2).
//!
//! Bit `i` of the limb vector holds the coefficient of `X^i`. The limb vector
//! never carries trailing zero limbs, so structural equality is polynomial
//! equality and the zero polynomial is the empty vector.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Degree of a polynomial; the zero polynomial has degree [`Degree::NegInf`],
/// which orders below every finite degree.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Degree {
    NegInf,
    Finite(usize),
}

impl Degree {
    pub fn finite(self) -> Option<usize> {
        match self {
            Degree::NegInf => None,
            Degree::Finite(d) => Some(d),
        }
    }

    /// `true` when the degree is strictly below `bound`.
    pub fn lt(self, bound: usize) -> bool {
        match self {
            Degree::NegInf => true,
            Degree::Finite(d) => d < bound,
        }
    }
}

impl fmt::Display for Degree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Degree::NegInf => f.write_str("-inf"),
            Degree::Finite(d) => write!(f, "{d}"),
        }
    }
}

/// Degree of a nonzero `u64` polynomial, `NegInf` for zero.
#[inline]
pub fn word_degree(w: u64) -> Degree {
    if w == 0 {
        Degree::NegInf
    } else {
        Degree::Finite(63 - w.leading_zeros() as usize)
    }
}

#[derive(Clone, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
#[serde(into = "String", try_from = "String")]
pub struct BinaryPolynomial {
    limbs: Vec<u64>,
}

impl BinaryPolynomial {
    pub fn zero() -> Self {
        Self { limbs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::from_u64(1)
    }

    /// The monomial `X^k`.
    pub fn monomial(k: usize) -> Self {
        let mut limbs = vec![0u64; k / 64 + 1];
        limbs[k / 64] = 1u64 << (k % 64);
        Self { limbs }
    }

    /// `X^n + 1` (equal to `X^n - 1` in characteristic 2).
    pub fn x_pow_minus_one(n: usize) -> Self {
        let mut p = Self::monomial(n);
        p.flip(0);
        p
    }

    pub fn from_u64(w: u64) -> Self {
        let mut p = Self { limbs: vec![w] };
        p.normalize();
        p
    }

    pub fn from_limbs(limbs: Vec<u64>) -> Self {
        let mut p = Self { limbs };
        p.normalize();
        p
    }

    /// Builds `c_0 + c_1 X + ...` from a coefficient list.
    pub fn from_coeffs<I: IntoIterator<Item = bool>>(coeffs: I) -> Self {
        let mut p = Self::zero();
        for (i, c) in coeffs.into_iter().enumerate() {
            if c {
                p.set(i, true);
            }
        }
        p
    }

    /// Builds the polynomial with `1` at every listed exponent.
    pub fn from_exponents(exps: &[usize]) -> Self {
        let mut p = Self::zero();
        for &e in exps {
            p.flip(e);
        }
        p
    }

    fn normalize(&mut self) {
        while self.limbs.last() == Some(&0) {
            self.limbs.pop();
        }
    }

    pub fn limbs(&self) -> &[u64] {
        &self.limbs
    }

    pub fn is_zero(&self) -> bool {
        self.limbs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.limbs.len() == 1 && self.limbs[0] == 1
    }

    pub fn degree(&self) -> Degree {
        match self.limbs.last() {
            None => Degree::NegInf,
            Some(&top) => Degree::Finite((self.limbs.len() - 1) * 64 + 63 - top.leading_zeros() as usize),
        }
    }

    /// Finite degree, panicking on the zero polynomial.
    pub(crate) fn deg(&self) -> usize {
        self.degree().finite().expect("degree of the zero polynomial")
    }

    pub fn coeff(&self, i: usize) -> bool {
        self.limbs.get(i / 64).is_some_and(|w| (w >> (i % 64)) & 1 == 1)
    }

    pub fn set(&mut self, i: usize, value: bool) {
        if self.coeff(i) != value {
            self.flip(i);
        }
    }

    pub fn flip(&mut self, i: usize) {
        if self.limbs.len() <= i / 64 {
            self.limbs.resize(i / 64 + 1, 0);
        }
        self.limbs[i / 64] ^= 1u64 << (i % 64);
        self.normalize();
    }

    /// Value as a single machine word, if the degree is below 64.
    pub fn to_u64(&self) -> Option<u64> {
        match self.limbs.len() {
            0 => Some(0),
            1 => Some(self.limbs[0]),
            _ => None,
        }
    }

    pub fn weight(&self) -> usize {
        self.limbs.iter().map(|w| w.count_ones() as usize).sum()
    }

    /// Exponents with nonzero coefficient, ascending.
    pub fn support(&self) -> impl Iterator<Item = usize> + '_ {
        self.limbs.iter().enumerate().flat_map(|(li, &w)| {
            let mut w = w;
            std::iter::from_fn(move || {
                if w == 0 {
                    None
                } else {
                    let b = w.trailing_zeros() as usize;
                    w &= w - 1;
                    Some(li * 64 + b)
                }
            })
        })
    }

    /// Largest `v` with `X^v | self`; 0 for the zero polynomial.
    pub fn trailing_zeros(&self) -> usize {
        for (i, &w) in self.limbs.iter().enumerate() {
            if w != 0 {
                return i * 64 + w.trailing_zeros() as usize;
            }
        }
        0
    }

    pub fn add(&self, other: &Self) -> Self {
        let (long, short) = if self.limbs.len() >= other.limbs.len() { (self, other) } else { (other, self) };
        let mut limbs = long.limbs.clone();
        for (l, s) in limbs.iter_mut().zip(&short.limbs) {
            *l ^= s;
        }
        Self::from_limbs(limbs)
    }

    pub fn shl(&self, k: usize) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let (ls, bs) = (k / 64, k % 64);
        let mut limbs = vec![0u64; self.limbs.len() + ls + 1];
        for (i, &w) in self.limbs.iter().enumerate() {
            limbs[i + ls] ^= w << bs;
            if bs != 0 {
                limbs[i + ls + 1] ^= w >> (64 - bs);
            }
        }
        Self::from_limbs(limbs)
    }

    /// Divides by `X^k`, discarding the low coefficients.
    pub fn shr(&self, k: usize) -> Self {
        let (ls, bs) = (k / 64, k % 64);
        if ls >= self.limbs.len() {
            return Self::zero();
        }
        let src = &self.limbs[ls..];
        let mut limbs = vec![0u64; src.len()];
        for i in 0..src.len() {
            limbs[i] = src[i] >> bs;
            if bs != 0 && i + 1 < src.len() {
                limbs[i] |= src[i + 1] << (64 - bs);
            }
        }
        Self::from_limbs(limbs)
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        let mut limbs = vec![0u64; self.limbs.len() + other.limbs.len()];
        for (i, &a) in self.limbs.iter().enumerate() {
            for (j, &b) in other.limbs.iter().enumerate() {
                let (lo, hi) = clmul(a, b);
                limbs[i + j] ^= lo;
                limbs[i + j + 1] ^= hi;
            }
        }
        Self::from_limbs(limbs)
    }

    pub fn square(&self) -> Self {
        let mut limbs = Vec::with_capacity(self.limbs.len() * 2);
        for &w in &self.limbs {
            limbs.push(spread_bits(w as u32));
            limbs.push(spread_bits((w >> 32) as u32));
        }
        Self::from_limbs(limbs)
    }

    /// Quotient and remainder; `deg(rem) < deg(divisor)`.
    pub fn div_rem(&self, divisor: &Self) -> Result<(Self, Self)> {
        let dd = divisor.degree().finite().ok_or(Error::DivisionByZero)?;
        let mut rem = self.clone();
        let mut quo = Self::zero();
        while let Degree::Finite(rd) = rem.degree() {
            if rd < dd {
                break;
            }
            let shift = rd - dd;
            quo.flip(shift);
            rem = rem.add(&divisor.shl(shift));
        }
        Ok((quo, rem))
    }

    pub fn rem(&self, divisor: &Self) -> Result<Self> {
        if let (Some(a), Some(g)) = (self.to_u64(), divisor.to_u64()) {
            if g == 0 {
                return Err(Error::DivisionByZero);
            }
            return Ok(Self::from_u64(rem_word(a, g)));
        }
        Ok(self.div_rem(divisor)?.1)
    }

    pub fn quot(&self, divisor: &Self) -> Result<Self> {
        Ok(self.div_rem(divisor)?.0)
    }

    /// `true` when `self` divides `other`. The zero polynomial divides only zero.
    pub fn divides(&self, other: &Self) -> bool {
        if self.is_zero() {
            return other.is_zero();
        }
        other.rem(self).map(|r| r.is_zero()).unwrap_or(false)
    }

    /// Greatest common divisor, with `gcd(a, 0) = a`.
    pub fn gcd(&self, other: &Self) -> Self {
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let r = a.rem(&b).expect("nonzero divisor");
            a = b;
            b = r;
        }
        a
    }

    pub fn mul_mod(&self, other: &Self, modulus: &Self) -> Result<Self> {
        self.mul(other).rem(modulus)
    }

    /// `self^e mod modulus` by square-and-multiply.
    pub fn pow_mod(&self, mut e: u128, modulus: &Self) -> Result<Self> {
        let mut base = self.rem(modulus)?;
        let mut acc = Self::one().rem(modulus)?;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul_mod(&base, modulus)?;
            }
            e >>= 1;
            if e > 0 {
                base = base.square().rem(modulus)?;
            }
        }
        Ok(acc)
    }

    /// `X^e mod modulus`.
    pub fn x_pow_mod(e: u128, modulus: &Self) -> Result<Self> {
        Self::monomial(1).pow_mod(e, modulus)
    }

    /// Coefficient reversal `X^deg(h) h(1/X)`.
    pub fn reciprocal(&self) -> Self {
        match self.degree() {
            Degree::NegInf => Self::zero(),
            Degree::Finite(d) => Self::from_exponents(&self.support().map(|i| d - i).collect::<Vec<_>>()),
        }
    }

    /// Formal derivative.
    pub fn derivative(&self) -> Self {
        let exps: Vec<usize> = self.support().filter(|i| i % 2 == 1).map(|i| i - 1).collect();
        Self::from_exponents(&exps)
    }

    /// Square root of a polynomial in `X^2`; `None` when an odd coefficient is set.
    pub fn sqrt_even(&self) -> Option<Self> {
        if self.support().any(|i| i % 2 == 1) {
            return None;
        }
        Some(Self::from_exponents(&self.support().map(|i| i / 2).collect::<Vec<_>>()))
    }

    /// Evaluates at `X = 1`.
    pub fn eval_one(&self) -> bool {
        self.weight() % 2 == 1
    }

    pub fn to_hex(&self) -> String {
        if self.is_zero() {
            return "0x0".into();
        }
        let mut s = format!("0x{:x}", self.limbs.last().unwrap());
        for w in self.limbs.iter().rev().skip(1) {
            s.push_str(&format!("{w:016x}"));
        }
        s
    }

    /// Human-readable form, highest power first (`x^3+x+1`).
    pub fn to_human(&self) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let mut terms: Vec<String> = self
            .support()
            .map(|i| match i {
                0 => "1".to_string(),
                1 => "x".to_string(),
                _ => format!("x^{i}"),
            })
            .collect();
        terms.reverse();
        terms.join("+")
    }

    /// Parses `0x..` hex masks, `x^3+x+1` human forms and `[1,1,0,1]` coefficient lists.
    pub fn parse(text: &str) -> Result<Self> {
        let s: String = text.chars().filter(|c| !c.is_whitespace()).collect();
        let err = || Error::Parse(text.to_string());
        if s.is_empty() {
            return Err(err());
        }
        if let Some(hex) = s.strip_prefix("0x").or_else(|| s.strip_prefix("0X")) {
            if hex.is_empty() || !hex.chars().all(|c| c.is_ascii_hexdigit()) {
                return Err(err());
            }
            let mut limbs = Vec::new();
            let bytes = hex.as_bytes();
            let mut end = bytes.len();
            while end > 0 {
                let start = end.saturating_sub(16);
                let chunk = std::str::from_utf8(&bytes[start..end]).map_err(|_| err())?;
                limbs.push(u64::from_str_radix(chunk, 16).map_err(|_| err())?);
                end = start;
            }
            return Ok(Self::from_limbs(limbs));
        }
        if let Some(body) = s.strip_prefix('[').and_then(|b| b.strip_suffix(']')) {
            if body.is_empty() {
                return Ok(Self::zero());
            }
            let coeffs = body
                .split(',')
                .map(|c| match c {
                    "0" => Ok(false),
                    "1" => Ok(true),
                    _ => Err(err()),
                })
                .collect::<Result<Vec<_>>>()?;
            return Ok(Self::from_coeffs(coeffs));
        }
        let lower = s.to_ascii_lowercase();
        if lower == "0" {
            return Ok(Self::zero());
        }
        let mut p = Self::zero();
        for term in lower.split('+') {
            let exp = match term {
                "1" => 0,
                "x" => 1,
                t => t.strip_prefix("x^").and_then(|e| e.parse::<usize>().ok()).ok_or_else(err)?,
            };
            p.flip(exp);
        }
        Ok(p)
    }
}

impl PartialOrd for BinaryPolynomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Orders polynomials by their coefficient bit string read as an integer.
impl Ord for BinaryPolynomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.limbs.len().cmp(&other.limbs.len()).then_with(|| self.limbs.iter().rev().cmp(other.limbs.iter().rev()))
    }
}

impl fmt::Debug for BinaryPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} ({})", self.to_hex(), self.to_human())
    }
}

impl fmt::Display for BinaryPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_hex())
    }
}

impl FromStr for BinaryPolynomial {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Self::parse(s)
    }
}

impl From<BinaryPolynomial> for String {
    fn from(p: BinaryPolynomial) -> String {
        p.to_hex()
    }
}

impl TryFrom<String> for BinaryPolynomial {
    type Error = Error;
    fn try_from(s: String) -> Result<Self> {
        Self::parse(&s)
    }
}

/// Carry-less 64x64 -> 128 multiply, returned as (low, high).
#[inline]
pub fn clmul(a: u64, b: u64) -> (u64, u64) {
    let mut lo = 0u64;
    let mut hi = 0u64;
    let mut b = b;
    while b != 0 {
        let i = b.trailing_zeros();
        lo ^= a << i;
        if i != 0 {
            hi ^= a >> (64 - i);
        }
        b &= b - 1;
    }
    (lo, hi)
}

/// Interleaves zeros between the bits of `x` (the GF(2) squaring map).
#[inline]
fn spread_bits(x: u32) -> u64 {
    let mut x = x as u64;
    x = (x | (x << 16)) & 0x0000_FFFF_0000_FFFF;
    x = (x | (x << 8)) & 0x00FF_00FF_00FF_00FF;
    x = (x | (x << 4)) & 0x0F0F_0F0F_0F0F_0F0F;
    x = (x | (x << 2)) & 0x3333_3333_3333_3333;
    x = (x | (x << 1)) & 0x5555_5555_5555_5555;
    x
}

/// `a mod g` for single-word polynomials; `g` must be nonzero.
#[inline]
pub fn rem_word(mut a: u64, g: u64) -> u64 {
    let dg = 63 - g.leading_zeros();
    while a != 0 {
        let da = 63 - a.leading_zeros();
        if da < dg {
            break;
        }
        a ^= g << (da - dg);
    }
    a
}

/// Multiplies a residue of degree `< r` by `X` modulo the degree-`r` polynomial `g`.
/// `g` must fit in 64 bits including its leading term, so `r <= 63`.
#[inline]
pub fn mulx_mod_word(f: u64, g: u64, r: u32) -> u64 {
    let shifted = f << 1;
    if (shifted >> r) & 1 == 1 {
        shifted ^ g
    } else {
        shifted
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> BinaryPolynomial {
        BinaryPolynomial::parse(s).unwrap()
    }

    #[test]
    fn ring_examples() {
        assert!(p("x+1").add(&p("x+1")).is_zero());
        assert_eq!(p("x+1").mul(&p("x+1")), p("x^2+1"));
        assert!(p("x^7+1").rem(&p("x^3+x+1")).unwrap().is_zero());
    }

    #[test]
    fn long_division_oracle_for_x7() {
        // X^7 + 1 = (X^3+X+1)(X^4+X^2+X+1)
        let (q, r) = p("x^7+1").div_rem(&p("x^3+x+1")).unwrap();
        assert!(r.is_zero());
        assert_eq!(q, p("x^4+x^2+x+1"));
    }

    #[test]
    fn division_by_zero_is_an_error() {
        assert_eq!(p("x+1").div_rem(&BinaryPolynomial::zero()), Err(Error::DivisionByZero));
        assert_eq!(p("x+1").rem(&BinaryPolynomial::zero()), Err(Error::DivisionByZero));
    }

    #[test]
    fn gcd_with_zero_is_identity() {
        assert_eq!(p("x^2+1").gcd(&BinaryPolynomial::zero()), p("x^2+1"));
        assert_eq!(p("x^2+1").gcd(&p("x+1")), p("x+1"));
    }

    #[test]
    fn zero_degree_is_below_everything() {
        assert_eq!(BinaryPolynomial::zero().degree(), Degree::NegInf);
        assert!(Degree::NegInf < Degree::Finite(0));
        assert!(Degree::NegInf.lt(0));
        assert!(!Degree::Finite(0).lt(0));
    }

    #[test]
    fn text_forms_agree() {
        assert_eq!(p("0xB"), p("x^3+x+1"));
        assert_eq!(p("[1,1,0,1]"), p("0xb"));
        assert_eq!(p("x^3+x+1").to_hex(), "0xb");
        assert_eq!(p("x^3+x+1").to_human(), "x^3+x+1");
        let big = BinaryPolynomial::x_pow_minus_one(130);
        assert_eq!(p(&big.to_hex()), big);
        assert!(BinaryPolynomial::parse("x^").is_err());
        assert!(BinaryPolynomial::parse("0xZ").is_err());
        assert!(BinaryPolynomial::parse("[1,2]").is_err());
    }

    #[test]
    fn multi_limb_arithmetic() {
        let a = BinaryPolynomial::x_pow_minus_one(100);
        let b = p("x^70+x^3+1");
        let prod = a.mul(&b);
        let (q, r) = prod.div_rem(&b).unwrap();
        assert!(r.is_zero());
        assert_eq!(q, a);
        assert_eq!(a.square(), a.mul(&a));
        assert_eq!(a.shl(77).shr(77), a);
    }

    #[test]
    fn reciprocal_reverses_coefficients() {
        assert_eq!(p("x^4+x+1").reciprocal(), p("x^4+x^3+1"));
    }

    #[test]
    fn ordering_is_integer_order() {
        assert!(p("0x3") < p("0x5"));
        assert!(p("0xffff") < BinaryPolynomial::monomial(64));
    }

    #[test]
    fn pow_mod_matches_repeated_multiplication() {
        let g = p("x^5+x^2+1");
        let mut acc = BinaryPolynomial::one();
        for e in 0..40u128 {
            assert_eq!(BinaryPolynomial::x_pow_mod(e, &g).unwrap(), acc);
            acc = acc.shl(1).rem(&g).unwrap();
        }
    }
}
