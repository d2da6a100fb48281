//! Order, irreducibility and factorization of binary polynomials.

use serde::Serialize;

use super::mersenne::MERSENNE_PRIME_DIVISORS;
use super::poly::{BinaryPolynomial, Degree};
use crate::error::{Error, Result};

/// Largest degree for which orders are computed.
pub const MAX_ORDER_DEGREE: usize = 64;

pub fn gcd_u64(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

pub fn lcm_u64(a: u64, b: u64) -> u64 {
    if a == 0 || b == 0 {
        return 0;
    }
    a / gcd_u64(a, b) * b
}

fn x() -> BinaryPolynomial {
    BinaryPolynomial::monomial(1)
}

/// `X^(2^k) mod f` by `k` squarings.
fn x_pow_two_pow(k: usize, f: &BinaryPolynomial) -> BinaryPolynomial {
    let mut h = x().rem(f).expect("nonzero modulus");
    for _ in 0..k {
        h = h.square().rem(f).expect("nonzero modulus");
    }
    h
}

fn prime_divisors(mut n: usize) -> Vec<usize> {
    let mut out = Vec::new();
    let mut p = 2;
    while p * p <= n {
        if n.is_multiple_of(p) {
            out.push(p);
            while n.is_multiple_of(p) {
                n /= p;
            }
        }
        p += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

/// Rabin's irreducibility test.
pub fn is_irreducible(f: &BinaryPolynomial) -> bool {
    let d = match f.degree() {
        Degree::NegInf | Degree::Finite(0) => return false,
        Degree::Finite(d) => d,
    };
    if d == 1 {
        return true;
    }
    if !f.coeff(0) {
        return false;
    }
    let xf = x();
    if x_pow_two_pow(d, f) != xf {
        return false;
    }
    prime_divisors(d).into_iter().all(|q| {
        let h = x_pow_two_pow(d / q, f).add(&xf);
        h.gcd(f).is_one()
    })
}

/// Multiplicative order of `X` modulo an irreducible `p` of degree `d <= 64`.
fn irreducible_order(p: &BinaryPolynomial) -> Result<u64> {
    let d = p.deg();
    if d > MAX_ORDER_DEGREE {
        return Err(Error::DegreeTooLarge(d, MAX_ORDER_DEGREE));
    }
    if d == 1 {
        // X + 1 has order 1; X itself is excluded by callers.
        return Ok(1);
    }
    let full: u64 = if d == 64 { u64::MAX } else { (1u64 << d) - 1 };
    let mut n = full;
    for &q in MERSENNE_PRIME_DIVISORS[d] {
        while n.is_multiple_of(q) {
            let cand = n / q;
            if BinaryPolynomial::x_pow_mod(cand as u128, p)?.is_one() {
                n = cand;
            } else {
                break;
            }
        }
    }
    Ok(n)
}

/// Least `n > 0` with `g | X^n - 1`.
pub fn poly_order(g: &BinaryPolynomial) -> Result<u64> {
    if g.is_zero() {
        return Err(Error::OrderUndefined("zero polynomial"));
    }
    if !g.coeff(0) {
        return Err(Error::OrderUndefined("X divides the polynomial"));
    }
    if g.deg() > MAX_ORDER_DEGREE {
        return Err(Error::DegreeTooLarge(g.deg(), MAX_ORDER_DEGREE));
    }
    if g.deg() == 0 {
        return Ok(1);
    }
    let mut ord = 1u64;
    let mut max_mult = 1usize;
    for (p, mult) in factorize(g) {
        ord = lcm_u64(ord, irreducible_order(&p)?);
        max_mult = max_mult.max(mult);
    }
    let mut t = 0;
    while (1usize << t) < max_mult {
        t += 1;
    }
    ord.checked_mul(1u64 << t).ok_or(Error::DegreeTooLarge(g.deg(), MAX_ORDER_DEGREE))
}

/// Square-free decomposition: pairs `(s_i, i)` with `f = prod s_i^i`, each `s_i` square-free.
fn square_free_decomposition(f: &BinaryPolynomial) -> Vec<(BinaryPolynomial, usize)> {
    let mut out = Vec::new();
    if f.degree() <= Degree::Finite(0) {
        return out;
    }
    let d = f.derivative();
    if d.is_zero() {
        let root = f.sqrt_even().expect("zero derivative means a square");
        for (s, i) in square_free_decomposition(&root) {
            out.push((s, 2 * i));
        }
        return out;
    }
    let mut c = f.gcd(&d);
    let mut w = f.quot(&c).expect("nonzero");
    let mut i = 1;
    while !w.is_one() {
        let y = w.gcd(&c);
        let fac = w.quot(&y).expect("nonzero");
        if !fac.is_one() {
            out.push((fac, i));
        }
        w = y.clone();
        c = c.quot(&y).expect("nonzero");
        i += 1;
    }
    if !c.is_one() {
        let root = c.sqrt_even().expect("remaining cofactor is a square");
        for (s, j) in square_free_decomposition(&root) {
            out.push((s, 2 * j));
        }
    }
    out
}

/// Distinct-degree factorization of a square-free polynomial.
fn distinct_degree(f: &BinaryPolynomial) -> Vec<(BinaryPolynomial, usize)> {
    let mut out = Vec::new();
    let mut rest = f.clone();
    let xf = x();
    let mut h = xf.clone();
    let mut i = 0;
    while let Degree::Finite(dr) = rest.degree() {
        if dr < 2 * (i + 1) {
            break;
        }
        i += 1;
        h = h.square().rem(&rest).expect("nonzero");
        let g = h.add(&xf).gcd(&rest);
        if !g.is_one() {
            out.push((g.clone(), i));
            rest = rest.quot(&g).expect("nonzero");
            h = h.rem(&rest).expect("nonzero");
        }
    }
    if rest.degree() > Degree::Finite(0) {
        let d = rest.deg();
        out.push((rest, d));
    }
    out
}

/// Splits a product of distinct irreducibles of common degree `d`.
fn equal_degree(f: &BinaryPolynomial, d: usize, out: &mut Vec<BinaryPolynomial>) {
    let n = f.deg();
    if n == d {
        out.push(f.clone());
        return;
    }
    let mut seed = 2u64;
    loop {
        let a = BinaryPolynomial::from_u64(seed).rem(f).expect("nonzero");
        seed += 1;
        if a.degree() < Degree::Finite(1) {
            continue;
        }
        // Relative trace a + a^2 + ... + a^(2^(d-1)) mod f.
        let mut t = a.clone();
        let mut pw = a;
        for _ in 1..d {
            pw = pw.square().rem(f).expect("nonzero");
            t = t.add(&pw);
        }
        let g = t.gcd(f);
        if !g.is_one() && g.deg() < n {
            let other = f.quot(&g).expect("nonzero");
            equal_degree(&g, d, out);
            equal_degree(&other, d, out);
            return;
        }
    }
}

/// Complete factorization into irreducibles with multiplicities, sorted by
/// (degree, bit-string value).
pub fn factorize(f: &BinaryPolynomial) -> Vec<(BinaryPolynomial, usize)> {
    let mut out = Vec::new();
    let mut f = f.clone();
    let v = f.trailing_zeros();
    if v > 0 && !f.is_zero() {
        out.push((x(), v));
        f = f.shr(v);
    }
    for (s, mult) in square_free_decomposition(&f) {
        for (block, d) in distinct_degree(&s) {
            let mut irr = Vec::new();
            equal_degree(&block, d, &mut irr);
            out.extend(irr.into_iter().map(|p| (p, mult)));
        }
    }
    out.sort_by(|(a, _), (b, _)| a.deg().cmp(&b.deg()).then(a.cmp(b)));
    out
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FactorReport {
    pub irreducible: bool,
    pub primitive: bool,
    pub square_free: bool,
    /// Distinct irreducible factors with their degrees.
    pub distinct_irreducible_factors: Vec<(BinaryPolynomial, usize)>,
    /// Multiplicity of each entry of `distinct_irreducible_factors`.
    pub multiplicities: Vec<usize>,
}

pub fn classify(g: &BinaryPolynomial) -> Result<FactorReport> {
    if g.is_zero() {
        return Err(Error::InvalidArgument("cannot classify the zero polynomial".into()));
    }
    let factors = factorize(g);
    let square_free = factors.iter().all(|&(_, m)| m == 1);
    let irreducible = factors.len() == 1 && factors[0].1 == 1;
    let primitive = irreducible && is_primitive(g);
    Ok(FactorReport {
        irreducible,
        primitive,
        square_free,
        multiplicities: factors.iter().map(|&(_, m)| m).collect(),
        distinct_irreducible_factors: factors
            .into_iter()
            .map(|(p, _)| {
                let d = p.deg();
                (p, d)
            })
            .collect(),
    })
}

/// Irreducible with order `2^deg - 1`.
pub fn is_primitive(g: &BinaryPolynomial) -> bool {
    let d = match g.degree().finite() {
        Some(d) if (1..=MAX_ORDER_DEGREE).contains(&d) => d,
        _ => return false,
    };
    if !g.coeff(0) || !is_irreducible(g) {
        return false;
    }
    let full: u64 = if d == 64 { u64::MAX } else { (1u64 << d) - 1 };
    irreducible_order(g) == Ok(full)
}

/// All primitive polynomials of degree `m` in increasing bit-string order.
pub fn primitive_polynomials(m: usize) -> impl Iterator<Item = BinaryPolynomial> {
    assert!((1..=32).contains(&m), "primitive enumeration supports 1 <= m <= 32");
    let lo = 1u64 << m;
    let hi = 1u64 << (m + 1);
    (lo..hi).filter(move |v| m == 1 || v & 1 == 1).map(BinaryPolynomial::from_u64).filter(is_primitive)
}

/// The numerically smallest primitive polynomial of degree `m`.
pub fn default_primitive(m: usize) -> BinaryPolynomial {
    primitive_polynomials(m).next().expect("a primitive polynomial exists for every degree")
}
