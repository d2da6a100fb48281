//! GF(2^m) in polynomial basis.

use serde::{Deserialize, Serialize};

use super::factor::{default_primitive, is_irreducible, is_primitive};
use super::poly::{clmul, rem_word, BinaryPolynomial};
use crate::error::{Error, Result};

/// Largest extension degree supported by [`FieldContext`].
pub const MAX_FIELD_DEGREE: usize = 31;
/// Log/antilog tables are built for primitive contexts up to this degree.
const TABLE_DEGREE_LIMIT: usize = 20;

/// An element of GF(2^m): the coefficient bits of its polynomial-basis
/// representative, degree `< m`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default, Serialize, Deserialize)]
pub struct FieldElement(pub u64);

impl FieldElement {
    pub const ZERO: Self = FieldElement(0);
    pub const ONE: Self = FieldElement(1);

    pub fn is_zero(self) -> bool {
        self.0 == 0
    }

    pub fn bits(self) -> u64 {
        self.0
    }
}

impl std::ops::Add for FieldElement {
    type Output = Self;
    fn add(self, rhs: Self) -> Self {
        FieldElement(self.0 ^ rhs.0)
    }
}

impl std::ops::AddAssign for FieldElement {
    fn add_assign(&mut self, rhs: Self) {
        self.0 ^= rhs.0;
    }
}

#[derive(Debug, Clone)]
struct LogTables {
    exp: Vec<u32>,
    log: Vec<u32>,
}

/// Arithmetic context for GF(2^m) modulo an irreducible polynomial of degree `m`.
#[derive(Debug, Clone)]
pub struct FieldContext {
    m: usize,
    modulus: BinaryPolynomial,
    modulus_word: u64,
    primitive: bool,
    trace_mask: u64,
    tables: Option<LogTables>,
}

impl PartialEq for FieldContext {
    fn eq(&self, other: &Self) -> bool {
        self.modulus == other.modulus
    }
}

impl Eq for FieldContext {}

impl FieldContext {
    pub fn new(modulus: BinaryPolynomial) -> Result<Self> {
        let m = modulus.degree().finite().ok_or(Error::NotIrreducible)?;
        if m == 0 || !is_irreducible(&modulus) {
            return Err(Error::NotIrreducible);
        }
        if m > MAX_FIELD_DEGREE {
            return Err(Error::DegreeTooLarge(m, MAX_FIELD_DEGREE));
        }
        let modulus_word = modulus.to_u64().expect("degree <= 31");
        let primitive = is_primitive(&modulus);
        let mut ctx = FieldContext { m, modulus, modulus_word, primitive, trace_mask: 0, tables: None };
        ctx.trace_mask =
            (0..m).filter(|&i| ctx.trace_slow(FieldElement(1u64 << i))).fold(0u64, |acc, i| acc | (1u64 << i));
        if primitive && m <= TABLE_DEGREE_LIMIT {
            ctx.tables = Some(ctx.build_tables());
        }
        Ok(ctx)
    }

    /// Context over the numerically smallest primitive polynomial of degree `m`.
    pub fn default_for(m: usize) -> Result<Self> {
        if m == 0 || m > MAX_FIELD_DEGREE {
            return Err(Error::DegreeTooLarge(m, MAX_FIELD_DEGREE));
        }
        Self::new(default_primitive(m))
    }

    fn build_tables(&self) -> LogTables {
        let n = self.order();
        let mut exp = vec![0u32; 2 * n as usize];
        let mut log = vec![0u32; 1usize << self.m];
        let mut x = 1u64;
        for k in 0..n as usize {
            exp[k] = x as u32;
            exp[k + n as usize] = x as u32;
            log[x as usize] = k as u32;
            x = self.mul_slow(FieldElement(x), self.alpha()).0;
        }
        LogTables { exp, log }
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn modulus(&self) -> &BinaryPolynomial {
        &self.modulus
    }

    pub fn is_primitive(&self) -> bool {
        self.primitive
    }

    /// Size of the multiplicative group, `2^m - 1`.
    pub fn order(&self) -> u64 {
        (1u64 << self.m) - 1
    }

    pub fn size(&self) -> u64 {
        1u64 << self.m
    }

    /// The residue class of `X`.
    pub fn alpha(&self) -> FieldElement {
        FieldElement(rem_word(2, self.modulus_word))
    }

    pub fn elements(&self) -> impl Iterator<Item = FieldElement> {
        (0..self.size()).map(FieldElement)
    }

    pub fn from_poly(&self, p: &BinaryPolynomial) -> FieldElement {
        FieldElement(p.rem(&self.modulus).expect("nonzero modulus").to_u64().expect("degree < m"))
    }

    #[inline]
    fn mul_slow(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        let (lo, hi) = clmul(a.0, b.0);
        debug_assert_eq!(hi, 0);
        FieldElement(rem_word(lo, self.modulus_word))
    }

    #[inline]
    pub fn mul(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        match &self.tables {
            Some(t) => {
                if a.0 == 0 || b.0 == 0 {
                    FieldElement::ZERO
                } else {
                    let k = t.log[a.0 as usize] + t.log[b.0 as usize];
                    FieldElement(t.exp[k as usize] as u64)
                }
            }
            None => self.mul_slow(a, b),
        }
    }

    pub fn square(&self, a: FieldElement) -> FieldElement {
        self.mul(a, a)
    }

    pub fn pow(&self, a: FieldElement, e: u64) -> FieldElement {
        if let Some(t) = &self.tables {
            if a.0 == 0 {
                return if e == 0 { FieldElement::ONE } else { FieldElement::ZERO };
            }
            let n = self.order();
            let k = (t.log[a.0 as usize] as u128 * (e % n) as u128 % n as u128) as usize;
            return FieldElement(t.exp[k] as u64);
        }
        let mut acc = FieldElement::ONE;
        let mut base = a;
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul_slow(acc, base);
            }
            base = self.mul_slow(base, base);
            e >>= 1;
        }
        acc
    }

    /// `alpha^k` for any signed exponent (negative exponents use the inverse).
    pub fn alpha_pow(&self, k: i64) -> FieldElement {
        let n = self.multiplicative_order_of_alpha() as i64;
        let e = k.rem_euclid(n) as u64;
        if let Some(t) = &self.tables {
            return FieldElement(t.exp[e as usize] as u64);
        }
        self.pow(self.alpha(), e)
    }

    fn multiplicative_order_of_alpha(&self) -> u64 {
        if self.primitive {
            self.order()
        } else {
            crate::gf2::factor::poly_order(&self.modulus).expect("irreducible with X not dividing")
        }
    }

    pub fn inv(&self, a: FieldElement) -> Result<FieldElement> {
        if a.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(self.pow(a, self.order() - 1))
    }

    /// Discrete logarithm to base alpha, for primitive contexts.
    pub fn log(&self, a: FieldElement) -> Option<u64> {
        if a.is_zero() || !self.primitive {
            return None;
        }
        if let Some(t) = &self.tables {
            return Some(t.log[a.0 as usize] as u64);
        }
        let mut x = FieldElement::ONE;
        for k in 0..self.order() {
            if x == a {
                return Some(k);
            }
            x = self.mul_slow(x, self.alpha());
        }
        None
    }

    fn trace_slow(&self, x: FieldElement) -> bool {
        let mut acc = x;
        let mut pw = x;
        for _ in 1..self.m {
            pw = self.mul_slow(pw, pw);
            acc += pw;
        }
        debug_assert!(acc.0 <= 1);
        acc.0 == 1
    }

    /// Absolute trace `x + x^2 + ... + x^(2^(m-1))` as a bit.
    #[inline]
    pub fn trace(&self, x: FieldElement) -> bool {
        (x.0 & self.trace_mask).count_ones() & 1 == 1
    }

    /// Reduces a signed exponent modulo `2^m - 1`.
    pub fn normalize_exponent(&self, t: i64) -> u64 {
        t.rem_euclid(self.order() as i64) as u64
    }

    /// Frobenius class `{t 2^j mod 2^m - 1}` in generation order.
    pub fn cyclotomic_coset(&self, t: i64) -> Vec<u64> {
        let n = self.order();
        let t0 = self.normalize_exponent(t);
        let mut coset = vec![t0];
        let mut cur = (t0 * 2) % n;
        while cur != t0 {
            coset.push(cur);
            cur = (cur * 2) % n;
        }
        coset
    }

    /// Minimal polynomial of `alpha^t` over GF(2).
    pub fn minimal_polynomial(&self, t: i64) -> Result<BinaryPolynomial> {
        self.minimal_polynomial_with(t, false)
    }

    /// As [`Self::minimal_polynomial`], optionally accepting `t = 0` (root 1, giving `X + 1`).
    pub fn minimal_polynomial_with(&self, t: i64, allow_root_one: bool) -> Result<BinaryPolynomial> {
        if !self.primitive {
            return Err(Error::NotPrimitive);
        }
        if self.normalize_exponent(t) == 0 {
            return if allow_root_one {
                Ok(BinaryPolynomial::from_u64(0b11))
            } else {
                Err(Error::DegenerateExponent(t))
            };
        }
        // Field-coefficient product of (X + alpha^e), low degree first.
        let mut coeffs = vec![FieldElement::ONE];
        for e in self.cyclotomic_coset(t) {
            let root = self.alpha_pow(e as i64);
            let mut next = vec![FieldElement::ZERO; coeffs.len() + 1];
            for (i, &c) in coeffs.iter().enumerate() {
                next[i + 1] += c;
                next[i] += self.mul(c, root);
            }
            coeffs = next;
        }
        debug_assert!(coeffs.iter().all(|c| c.0 <= 1));
        Ok(BinaryPolynomial::from_coeffs(coeffs.iter().map(|c| c.0 == 1)))
    }

    /// Smallest nonnegative `t` with `minimal_polynomial(t) == p`, if the roots of
    /// `p` lie in this field.
    pub fn root_exponent_of(&self, p: &BinaryPolynomial) -> Option<u64> {
        if !self.primitive || p.degree().finite().is_none_or(|d| !self.m.is_multiple_of(d)) {
            return None;
        }
        if *p == BinaryPolynomial::from_u64(0b11) {
            return Some(0);
        }
        (1..self.order()).find(|&t| self.eval(p, self.alpha_pow(t as i64)).is_zero())
    }

    /// Evaluates a binary polynomial at a field element (Horner).
    pub fn eval(&self, p: &BinaryPolynomial, x: FieldElement) -> FieldElement {
        let deg = match p.degree().finite() {
            None => return FieldElement::ZERO,
            Some(d) => d,
        };
        let mut acc = FieldElement::ZERO;
        for i in (0..=deg).rev() {
            acc = self.mul(acc, x);
            if p.coeff(i) {
                acc += FieldElement::ONE;
            }
        }
        acc
    }
}

/// `Tr(x)` for a field element, as a free function.
pub fn field_trace(ctx: &FieldContext, x: FieldElement) -> bool {
    ctx.trace(x)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> BinaryPolynomial {
        BinaryPolynomial::parse(s).unwrap()
    }

    #[test]
    fn minimal_polynomial_examples() {
        let ctx = FieldContext::new(p("x^4+x+1")).unwrap();
        assert_eq!(ctx.minimal_polynomial(1).unwrap(), p("x^4+x+1"));
        assert_eq!(ctx.minimal_polynomial(3).unwrap(), p("x^4+x^3+x^2+x+1"));
        assert_eq!(ctx.minimal_polynomial(-1).unwrap(), p("x^4+x^3+1"));
        assert_eq!(ctx.minimal_polynomial(5).unwrap(), p("x^2+x+1"));
        assert_eq!(ctx.minimal_polynomial(0), Err(Error::DegenerateExponent(0)));
        assert_eq!(ctx.minimal_polynomial_with(15, true).unwrap(), p("x+1"));
    }

    #[test]
    fn minimal_polynomial_by_brute_force_root_search() {
        // Independent route: the minimal polynomial of alpha^t is the lowest-degree
        // nonzero binary polynomial vanishing at alpha^t.
        let ctx = FieldContext::default_for(5).unwrap();
        for t in 1..31 {
            let beta = ctx.alpha_pow(t);
            let brute = (2u64..64).map(BinaryPolynomial::from_u64).find(|q| ctx.eval(q, beta).is_zero()).unwrap();
            assert_eq!(ctx.minimal_polynomial(t).unwrap(), brute, "t = {t}");
        }
    }

    #[test]
    fn frobenius_class_invariance() {
        for m in 2..=9 {
            let ctx = FieldContext::default_for(m).unwrap();
            let n = ctx.order() as i64;
            for t in 1..n {
                assert_eq!(ctx.minimal_polynomial(t).unwrap(), ctx.minimal_polynomial(2 * t % n).unwrap());
                let deg = ctx.minimal_polynomial(t).unwrap().deg();
                assert_eq!(m % deg, 0);
            }
        }
    }

    #[test]
    fn trace_examples() {
        for m in 1..=12 {
            let ctx = FieldContext::default_for(m).unwrap();
            assert!(!ctx.trace(FieldElement::ZERO));
            assert_eq!(ctx.trace(FieldElement::ONE), m % 2 == 1);
            let zeros = ctx.elements().filter(|&x| !ctx.trace(x)).count() as u64;
            assert_eq!(zeros, 1u64 << (m - 1), "m = {m}");
        }
    }

    #[test]
    fn trace_is_linear_exhaustively() {
        for m in 1..=8 {
            let ctx = FieldContext::default_for(m).unwrap();
            for x in ctx.elements() {
                assert_eq!(ctx.trace(x), ctx.trace_slow(x));
                for y in ctx.elements() {
                    assert_eq!(ctx.trace(x + y), ctx.trace(x) ^ ctx.trace(y));
                }
            }
        }
    }

    #[test]
    fn table_and_bitwise_multiplication_agree() {
        let ctx = FieldContext::default_for(7).unwrap();
        for a in ctx.elements() {
            for b in ctx.elements().step_by(3) {
                assert_eq!(ctx.mul(a, b), ctx.mul_slow(a, b));
            }
        }
    }

    #[test]
    fn alpha_has_full_order_in_primitive_context() {
        let ctx = FieldContext::default_for(8).unwrap();
        assert!(ctx.is_primitive());
        let n = ctx.order();
        assert_eq!(ctx.pow(ctx.alpha(), n), FieldElement::ONE);
        for q in [3u64, 5, 17] {
            assert_ne!(ctx.pow(ctx.alpha(), n / q), FieldElement::ONE);
        }
        assert_eq!(ctx.mul(ctx.alpha_pow(-1), ctx.alpha()), FieldElement::ONE);
    }

    #[test]
    fn non_primitive_context_is_flagged() {
        let ctx = FieldContext::new(p("x^4+x^3+x^2+x+1")).unwrap();
        assert!(!ctx.is_primitive());
        assert_eq!(ctx.pow(ctx.alpha(), 5), FieldElement::ONE);
        assert!(FieldContext::new(p("x^4+1")).is_err());
    }
}
