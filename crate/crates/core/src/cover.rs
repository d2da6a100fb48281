//! Burst covering for cyclic codes: given a syndrome, find a combination of
//! at most `b'` cyclically consecutive columns producing it.
//!
//! The leading `r x r` block of the parity-check matrix is invertible, so any
//! syndrome is first written as `LC(0, f)` with `deg f < r`. Multiplying by
//! `X` modulo `g` shifts the start index back by one while preserving the
//! value, so stepping until `deg f < b'` yields the answer.

use serde::{Deserialize, Serialize};

use crate::cyclic::CyclicCode;
use crate::error::{Error, Result};
use crate::gf2::BinaryPolynomial;
use crate::lfsr::WordModulus;
use crate::matrix::{row_mask, SquareInverse};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CoveringCertificate {
    /// Start column in `[0, n)`.
    pub i: usize,
    /// Combination pattern; `f(0) = 1` unless `f = 0`.
    pub f: BinaryPolynomial,
    /// `deg f + 1`, or 0 for `f = 0`.
    pub width: usize,
    pub iterations: usize,
}

/// Per-code precomputation shared by all queries.
#[derive(Debug, Clone)]
pub struct BurstCoverer<'a> {
    code: &'a CyclicCode,
    inverse: SquareInverse,
    word: WordModulus,
}

impl<'a> BurstCoverer<'a> {
    pub fn new(code: &'a CyclicCode) -> Result<Self> {
        Ok(Self { code, inverse: code.leading_block_inverse()?, word: WordModulus::new(code.generator())? })
    }

    pub fn code(&self) -> &CyclicCode {
        self.code
    }

    fn check_syndrome(&self, x: u64) -> Result<()> {
        if x & !row_mask(self.code.r()) != 0 {
            return Err(Error::InvalidArgument(format!("syndrome {x:#x} has more than {} bits", self.code.r())));
        }
        Ok(())
    }

    /// Pattern `f` of degree `< r` with `LC(0, f) = x`.
    fn initial_pattern(&self, x: u64) -> u64 {
        self.inverse.apply(x)
    }

    pub fn cover(&self, x: u64, b_prime: usize) -> Result<CoveringCertificate> {
        self.run(x, b_prime, false)
    }

    /// As [`Self::cover`], re-evaluating the combination after every step.
    pub fn cover_traced(&self, x: u64, b_prime: usize) -> Result<CoveringCertificate> {
        self.run(x, b_prime, true)
    }

    fn run(&self, x: u64, b_prime: usize, trace: bool) -> Result<CoveringCertificate> {
        self.check_syndrome(x)?;
        let n = self.code.n();
        let width = |f: u64| if f == 0 { 0 } else { 64 - f.leading_zeros() as usize };
        let mut f = self.initial_pattern(x);
        let mut t = 0usize;
        while width(f) > b_prime {
            if t > n {
                return Err(Error::ThresholdBelowRadius { b_prime, iterations: t });
            }
            f = self.word.mulx(f);
            t += 1;
            if trace {
                let i = (n - t % n) % n;
                let v = self.code.lc_eval(i, &BinaryPolynomial::from_u64(f));
                if v != x {
                    return Err(Error::InvalidArgument(format!("step {t}: combination drifted to {v:#x}")));
                }
            }
        }
        let mut i = (n - t % n) % n;
        if f != 0 {
            let v = f.trailing_zeros() as usize;
            f >>= v;
            i = (i + v) % n;
        }
        Ok(CoveringCertificate { i, f: BinaryPolynomial::from_u64(f), width: width(f), iterations: t })
    }
}

pub fn burst_cover(code: &CyclicCode, x: u64, b_prime: usize) -> Result<CoveringCertificate> {
    BurstCoverer::new(code)?.cover(x, b_prime)
}

/// Recomputes the combination and the width constraint.
pub fn verify_certificate(code: &CyclicCode, x: u64, cert: &CoveringCertificate, b_prime: usize) -> bool {
    let width = match cert.f.degree().finite() {
        None => 0,
        Some(d) => d + 1,
    };
    cert.i < code.n()
        && width == cert.width
        && width <= b_prime
        && (cert.f.is_zero() || cert.f.coeff(0))
        && code.lc_eval(cert.i, &cert.f) == x
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cyclic::make_bch;
    use crate::radius::cyclic_burst_radius;

    #[test]
    fn zero_syndrome() {
        let code = make_bch(2, 5).unwrap();
        let cert = burst_cover(&code, 0, 1).unwrap();
        assert_eq!(cert, CoveringCertificate { i: 0, f: BinaryPolynomial::zero(), width: 0, iterations: 0 });
        assert!(verify_certificate(&code, 0, &cert, 1));
    }

    #[test]
    fn exhaustive_at_radius() {
        let code = make_bch(2, 5).unwrap();
        let b = cyclic_burst_radius(&code).unwrap().b;
        let cov = BurstCoverer::new(&code).unwrap();
        for x in 0..(1u64 << code.r()) {
            let cert = cov.cover(x, b).unwrap();
            assert!(verify_certificate(&code, x, &cert, b), "x = {x:#x}");
            assert!(cert.iterations <= code.n());
        }
    }

    #[test]
    fn traced_steps_keep_the_value() {
        let code = make_bch(2, 4).unwrap();
        let b = cyclic_burst_radius(&code).unwrap().b;
        let cov = BurstCoverer::new(&code).unwrap();
        for x in 0..(1u64 << code.r()) {
            cov.cover_traced(x, b).unwrap();
        }
    }

    #[test]
    fn full_width_needs_no_steps() {
        let code = make_bch(2, 5).unwrap();
        let cov = BurstCoverer::new(&code).unwrap();
        for x in 0..(1u64 << code.r()) {
            let cert = cov.cover(x, code.r()).unwrap();
            assert_eq!(cert.iterations, 0);
        }
    }

    #[test]
    fn threshold_below_radius_is_diagnosed() {
        let code = make_bch(2, 5).unwrap();
        let b = cyclic_burst_radius(&code).unwrap().b;
        let cov = BurstCoverer::new(&code).unwrap();
        let failures = (0..(1u64 << code.r()))
            .filter(|&x| matches!(cov.cover(x, b - 1), Err(Error::ThresholdBelowRadius { .. })))
            .count();
        assert!(failures > 0);
    }

    #[test]
    fn tampering_is_detected() {
        let code = make_bch(2, 5).unwrap();
        let x = 0x2d5;
        let cert = burst_cover(&code, x, 8).unwrap();
        let mut bad = cert.clone();
        bad.i = (bad.i + 1) % code.n();
        assert!(!verify_certificate(&code, x, &bad, 8));
        let mut bad = cert.clone();
        bad.f.flip(1);
        assert!(!verify_certificate(&code, x, &bad, 8));
        assert!(burst_cover(&code, 1 << 12, 8).is_err());
    }
}
