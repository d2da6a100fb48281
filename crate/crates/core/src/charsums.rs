//! Additive character sums over GF(2^m) and empirical checks of the bounds
//! built on them: Weil-Carlitz-Uchiyama, the Laurent-polynomial extension,
//! Niederreiter's pattern-frequency bound, the equal-degree and mixed
//! pattern theorems, and the integer inequality behind the two-factor case.
//!
//! Verdicts never use floating point: a bound `K * 2^(k/2)` is compared by
//! squaring both sides.

use num_bigint::BigInt;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::cyclic::CyclicCode;
use crate::error::{Error, Result};
use crate::gf2::factor::{gcd_u64, lcm_u64};
use crate::gf2::{factorize, poly_order, BinaryPolynomial, FieldContext, FieldElement};
use crate::lfsr::{galois_output_word, orbits, pattern_histogram, period_of, LfsrSpec, WordModulus};
use crate::matrix::solve_square;

/// `lhs <= coeff * sqrt(2^k)` for `lhs`, `coeff` nonnegative.
pub fn le_sqrt_pow2(lhs: u128, coeff: u128, k: u32) -> bool {
    let l2 = lhs.checked_mul(lhs);
    let r2 = coeff.checked_mul(coeff).and_then(|c| if k < 128 { c.checked_mul(1u128 << k) } else { None });
    match (l2, r2) {
        (Some(l), Some(r)) => l <= r,
        _ => BigInt::from(lhs).pow(2) <= BigInt::from(coeff).pow(2) << k,
    }
}

/// `(-1)^Tr(x)`.
#[inline]
pub fn chi(ctx: &FieldContext, x: FieldElement) -> i64 {
    if ctx.trace(x) {
        -1
    } else {
        1
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Domain {
    All,
    Nonzero,
}

/// `f(X) = sum a_i X^{t_i} + sum b_i X^{-u_i}` with odd, strictly increasing
/// exponents and nonzero coefficients in each part.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LaurentExponentForm {
    pub positive: Vec<(FieldElement, u64)>,
    pub negative: Vec<(FieldElement, u64)>,
}

impl LaurentExponentForm {
    pub fn new(positive: Vec<(FieldElement, u64)>, negative: Vec<(FieldElement, u64)>) -> Result<Self> {
        let form = Self { positive, negative };
        form.validate()?;
        Ok(form)
    }

    pub fn validate(&self) -> Result<()> {
        for part in [&self.positive, &self.negative] {
            for w in part.windows(2) {
                if w[0].1 >= w[1].1 {
                    return Err(Error::InvalidArgument("exponents must be strictly increasing".into()));
                }
            }
            for &(c, t) in part {
                if c.is_zero() {
                    return Err(Error::InvalidArgument("coefficients must be nonzero".into()));
                }
                if t % 2 == 0 {
                    return Err(Error::InvalidArgument(format!("exponent {t} is not odd")));
                }
            }
        }
        Ok(())
    }

    pub fn top_positive(&self) -> u64 {
        self.positive.last().map_or(0, |p| p.1)
    }

    pub fn top_negative(&self) -> u64 {
        self.negative.last().map_or(0, |p| p.1)
    }

    /// `f(alpha^k)`.
    fn eval_at_log(&self, ctx: &FieldContext, k: i64) -> FieldElement {
        let mut acc = FieldElement::ZERO;
        for &(a, t) in &self.positive {
            acc += ctx.mul(a, ctx.alpha_pow(k * t as i64));
        }
        for &(b, u) in &self.negative {
            acc += ctx.mul(b, ctx.alpha_pow(-k * u as i64));
        }
        acc
    }
}

/// Exact `sum chi(f(x))` over the chosen domain.
pub fn char_sum(ctx: &FieldContext, f: &LaurentExponentForm, domain: Domain) -> Result<i64> {
    if !ctx.is_primitive() {
        return Err(Error::NotPrimitive);
    }
    if domain == Domain::All && !f.negative.is_empty() {
        return Err(Error::InvalidArgument("pole at zero: use the nonzero domain".into()));
    }
    let nonzero: i64 = (0..ctx.order() as i64).map(|k| chi(ctx, f.eval_at_log(ctx, k))).sum();
    // No constant term, so f(0) = 0 and chi(f(0)) = 1.
    Ok(match domain {
        Domain::All => nonzero + 1,
        Domain::Nonzero => nonzero,
    })
}

/// Sum of `chi(f(x))` over all `x` for `f` given by field coefficients, low degree first.
pub fn poly_char_sum(ctx: &FieldContext, coeffs: &[FieldElement]) -> i64 {
    ctx.elements()
        .map(|x| {
            let v = coeffs.iter().rev().fold(FieldElement::ZERO, |acc, &c| ctx.mul(acc, x) + c);
            chi(ctx, v)
        })
        .sum()
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct WeilCheck {
    pub m: usize,
    pub sum: i64,
    /// The bound is `coefficient * 2^(m/2)`.
    pub coefficient: u64,
    pub bound_approx: f64,
    pub applicable: bool,
    pub ok: bool,
}

impl WeilCheck {
    fn new(m: usize, sum: i64, coefficient: u64, applicable: bool) -> Self {
        let ok = !applicable || le_sqrt_pow2(sum.unsigned_abs() as u128, coefficient as u128, m as u32);
        Self { m, sum, coefficient, bound_approx: coefficient as f64 * 2f64.powf(m as f64 / 2.0), applicable, ok }
    }
}

/// `|sum_x chi(f(x))| <= (deg f - 1) 2^(m/2)` for odd `deg f`.
pub fn wcu_check(ctx: &FieldContext, coeffs: &[FieldElement]) -> WeilCheck {
    let deg = coeffs.iter().rposition(|c| !c.is_zero());
    let sum = poly_char_sum(ctx, coeffs);
    match deg {
        Some(d) if d % 2 == 1 => WeilCheck::new(ctx.m(), sum, d as u64 - 1, true),
        _ => WeilCheck::new(ctx.m(), sum, 0, false),
    }
}

/// `|sum_{x != 0} chi(f(x))| <= (t_e + u_d) 2^(m/2)`; forms without negative
/// terms are routed to [`wcu_check`].
pub fn laurent_weil_check(ctx: &FieldContext, f: &LaurentExponentForm) -> Result<WeilCheck> {
    f.validate()?;
    if f.negative.is_empty() {
        let top = f.top_positive() as usize;
        let mut coeffs = vec![FieldElement::ZERO; top + 1];
        for &(a, t) in &f.positive {
            coeffs[t as usize] = a;
        }
        return Ok(wcu_check(ctx, &coeffs));
    }
    if f.positive.is_empty() {
        return Ok(WeilCheck::new(ctx.m(), char_sum(ctx, f, Domain::Nonzero)?, 0, false));
    }
    let sum = char_sum(ctx, f, Domain::Nonzero)?;
    Ok(WeilCheck::new(ctx.m(), sum, f.top_positive() + f.top_negative(), true))
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct CheckReport {
    pub theorem: String,
    pub hypotheses: Vec<String>,
    pub cases_checked: u64,
    pub violations: Vec<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub notes: Vec<String>,
}

impl CheckReport {
    pub fn new(theorem: impl Into<String>) -> Self {
        Self { theorem: theorem.into(), ..Default::default() }
    }

    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }

    /// Folds `other` into `self`, keeping `self`'s theorem name.
    pub fn absorb(&mut self, other: CheckReport) {
        self.cases_checked += other.cases_checked;
        self.violations.extend(other.violations);
        for h in other.hypotheses {
            if !self.hypotheses.contains(&h) {
                self.hypotheses.push(h);
            }
        }
        for n in other.notes {
            if !self.notes.contains(&n) {
                self.notes.push(n);
            }
        }
    }
}

/// Bit masks `mask(y)` with `Tr(a y) = parity(a & mask(y))`.
fn trace_mask_of(ctx: &FieldContext, y: FieldElement) -> u64 {
    (0..ctx.m()).fold(0u64, |acc, b| if ctx.trace(ctx.mul(FieldElement(1 << b), y)) { acc | 1 << b } else { acc })
}

#[inline]
fn parity(x: u64) -> u32 {
    x.count_ones() & 1
}

/// Exhaustive check for all monic odd-degree `f` of degree at most 5 over GF(2^m).
///
/// Since `Tr(y^2) = Tr(y)`, a term `a X^{2k}` contributes the same character
/// as `a^{1/2} X^k`. Every monic quintic is therefore character-equivalent to
/// `X^5 + a3 X^3 + a1 X + a0`, and `a0` only flips the sign of the sum, so
/// enumerating `(a3, a1)` covers every polynomial. Cubics reduce to
/// `X^3 + a1 X + a0` and linear polynomials are checked directly.
pub fn wcu_exhaustive(ctx: &FieldContext) -> CheckReport {
    let m = ctx.m();
    let q = ctx.size();
    let mut report = CheckReport::new("weil-carlitz-uchiyama");
    report.hypotheses.push(format!("monic, odd degree <= 5, m = {m}"));
    let xs: Vec<FieldElement> = ctx.elements().collect();
    let m1: Vec<u64> = xs.iter().map(|&x| trace_mask_of(ctx, x)).collect();
    let m3: Vec<u64> = xs.iter().map(|&x| trace_mask_of(ctx, ctx.pow(x, 3))).collect();
    let t3: Vec<u32> = xs.iter().map(|&x| ctx.trace(ctx.pow(x, 3)) as u32).collect();
    let t5: Vec<u32> = xs.iter().map(|&x| ctx.trace(ctx.pow(x, 5)) as u32).collect();

    // Degree 1: X + a0 sums to zero over the field.
    for a0 in 0..q {
        let s = poly_char_sum(ctx, &[FieldElement(a0), FieldElement::ONE]);
        report.cases_checked += 1;
        if s != 0 {
            report.violations.push(format!("m={m} X+{a0:#x}: sum {s}"));
        }
    }
    let check = |sum: i64, deg: u64, label: String| -> Option<String> {
        (!le_sqrt_pow2(sum.unsigned_abs() as u128, deg as u128 - 1, m as u32))
            .then(|| format!("m={m} {label}: |{sum}| exceeds {}*2^(m/2)", deg - 1))
    };
    for a1 in 0..q {
        let s: i64 = (0..xs.len()).map(|i| 1 - 2 * (t3[i] ^ parity(a1 & m1[i])) as i64).sum();
        report.cases_checked += 1;
        if let Some(v) = check(s, 3, format!("X^3+{a1:#x}X")) {
            report.violations.push(v);
        }
    }
    let quintic: Vec<String> = (0..q)
        .into_par_iter()
        .flat_map_iter(|a3| {
            let (m1, m3, t5) = (&m1, &m3, &t5);
            (0..q).filter_map(move |a1| {
                let s: i64 =
                    (0..m1.len()).map(|i| 1 - 2 * (t5[i] ^ parity(a3 & m3[i]) ^ parity(a1 & m1[i])) as i64).sum();
                check(s, 5, format!("X^5+{a3:#x}X^3+{a1:#x}X"))
            })
        })
        .collect();
    report.cases_checked += q * q;
    report.violations.extend(quintic);
    report
        .notes
        .push("even-degree terms folded into odd ones via Tr(y^2) = Tr(y); constant term flips sign only".into());
    report
}

/// Literal enumeration of every monic polynomial of degree 1, 3 or 5 (small `m` only).
pub fn wcu_literal(ctx: &FieldContext) -> Result<CheckReport> {
    let m = ctx.m();
    if 5 * m > 22 {
        return Err(Error::BudgetExceeded(format!("literal enumeration for m = {m}")));
    }
    let q = ctx.size() as usize;
    let mut report = CheckReport::new("weil-carlitz-uchiyama (literal)");
    for deg in [1usize, 3, 5] {
        let total = q.pow(deg as u32);
        for idx in 0..total {
            let mut coeffs = Vec::with_capacity(deg + 1);
            let mut v = idx;
            for _ in 0..deg {
                coeffs.push(FieldElement((v % q) as u64));
                v /= q;
            }
            coeffs.push(FieldElement::ONE);
            let c = wcu_check(ctx, &coeffs);
            report.cases_checked += 1;
            if !c.ok {
                report.violations.push(format!("m={m} coeffs {coeffs:?}: sum {}", c.sum));
            }
        }
    }
    Ok(report)
}

/// Random form with top exponents `t`, `u`, random lower odd exponents and
/// random nonzero coefficients.
pub fn random_laurent_form(ctx: &FieldContext, t: u64, u: u64, rng: &mut impl Rng) -> LaurentExponentForm {
    let q = ctx.size();
    let mut part = |top: u64| -> Vec<(FieldElement, u64)> {
        let mut exps: Vec<u64> = (1..top).step_by(2).filter(|_| rng.gen_bool(0.5)).collect();
        exps.push(top);
        exps.into_iter().map(|e| (FieldElement(rng.gen_range(1..q)), e)).collect()
    };
    let positive = part(t);
    let negative = part(u);
    LaurentExponentForm { positive, negative }
}

/// Sampled check of the Laurent bound for `t, u` in `tops` and `m` in `ms`.
pub fn laurent_suite(ms: &[usize], tops: &[u64], draws: usize, seed: u64) -> Result<CheckReport> {
    let mut report = CheckReport::new("laurent weil corollary");
    report.seed = Some(seed);
    report.hypotheses.push("odd exponents, nonzero coefficients, both parts nonempty".into());
    for &m in ms {
        let ctx = FieldContext::default_for(m)?;
        for &t in tops {
            for &u in tops {
                let mut rng = ChaCha8Rng::seed_from_u64(seed ^ ((m as u64) << 32) ^ (t << 16) ^ u);
                let forms: Vec<LaurentExponentForm> =
                    (0..draws).map(|_| random_laurent_form(&ctx, t, u, &mut rng)).collect();
                let results: Vec<Result<WeilCheck>> = forms.par_iter().map(|f| laurent_weil_check(&ctx, f)).collect();
                for (f, r) in forms.iter().zip(results) {
                    let r = r?;
                    report.cases_checked += 1;
                    if !r.ok {
                        report.violations.push(format!("m={m} form {f:?}: sum {}", r.sum));
                    }
                }
            }
        }
    }
    Ok(report)
}

/// Number of occurrences of every length-`s` pattern in one period `period`
/// (first symbol as the high bit of the index).
fn histogram(period: &[bool], s: usize) -> Vec<u32> {
    pattern_histogram(period, s, period.len())
}

/// `true` when the sequence is annihilated by the recurrence with characteristic polynomial `h`.
fn satisfies_recurrence(period: &[bool], h: &BinaryPolynomial) -> bool {
    let n = period.len();
    let support: Vec<usize> = h.support().collect();
    (0..n).all(|k| !support.iter().fold(false, |acc, &i| acc ^ period[(k + i) % n]))
}

/// Minimal polynomial of a periodic sequence whose connection polynomial `g` is square-free.
pub fn minimal_polynomial_of_sequence(period: &[bool], g: &BinaryPolynomial) -> Result<Vec<BinaryPolynomial>> {
    let factors = factorize(g);
    if factors.iter().any(|(_, mult)| *mult > 1) {
        return Err(Error::RepeatedFactors);
    }
    Ok(factors
        .into_iter()
        .map(|(f, _)| f)
        .filter(|f| {
            let (h, _) = g.div_rem(f).expect("nonzero factor");
            !satisfies_recurrence(period, &h)
        })
        .collect())
}

/// Niederreiter frequency bound for one sequence and pattern length `s`.
pub fn niederreiter_check(spec: &LfsrSpec, s: usize) -> Result<CheckReport> {
    let period = period_of(spec)?;
    let minimal = minimal_polynomial_of_sequence(&period, spec.connection())?;
    let d_min = minimal.iter().map(|f| f.deg()).min().expect("nonzero sequence");
    if s == 0 || s > d_min {
        return Err(Error::Inapplicable(format!(
            "pattern length {s} exceeds the smallest factor degree {d_min} of the minimal polynomial"
        )));
    }
    let r: usize = minimal.iter().map(|f| f.deg()).sum();
    let pi = period.len() as u128;
    let expected = minimal.iter().map(|f| poly_order(f).expect("factor")).fold(1, lcm_u64) as u128;
    let mut report = CheckReport::new("niederreiter frequency bound");
    report.hypotheses.push(format!("s = {s} <= {d_min}, minimal polynomial degree {r}"));
    if pi != expected {
        report.violations.push(format!("minimal period {pi} differs from lcm of orders {expected}"));
    }
    let k = (1u128 << s) - 1;
    if le_sqrt_pow2(pi, k, r as u32) {
        report.notes.push(format!("vacuous lower bound at s = {s}: period {pi} <= (2^s-1) 2^(r/2)"));
    }
    for (y, &n) in histogram(&period, s).iter().enumerate() {
        report.cases_checked += 1;
        let dev = ((n as i128) << s) - pi as i128;
        if !le_sqrt_pow2(dev.unsigned_abs(), k, r as u32) {
            report.violations.push(format!(
                "g={} init {} pattern {y:0s$b}: N = {n}, period {pi}",
                spec.connection().to_hex(),
                spec.galois_load().to_hex(),
            ));
        }
    }
    Ok(report)
}

/// Niederreiter check over every nonzero sequence (one per orbit) and every admissible `s`.
pub fn niederreiter_suite(g: &BinaryPolynomial) -> Result<CheckReport> {
    let mut report = CheckReport::new("niederreiter frequency bound");
    report.hypotheses.push(format!("connection {}", g.to_hex()));
    let reps = orbits(g)?;
    let parts: Vec<Result<CheckReport>> = reps
        .par_iter()
        .map(|o| {
            let spec = LfsrSpec::galois(g.clone(), o.representative.clone())?;
            let period = period_of(&spec)?;
            let d_min = minimal_polynomial_of_sequence(&period, g)?.iter().map(|f| f.deg()).min().unwrap();
            let mut acc = CheckReport::new("");
            for s in 1..=d_min {
                acc.absorb(niederreiter_check(&spec, s)?);
            }
            Ok(acc)
        })
        .collect();
    for p in parts {
        let mut p = p?;
        p.hypotheses.clear();
        report.absorb(p);
    }
    Ok(report)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum PatternVariant {
    EqualDegree,
    MelasMixed,
}

/// Smallest odd element of the cyclotomic coset of `t`.
pub fn smallest_odd_exponent(ctx: &FieldContext, t: i64) -> u64 {
    ctx.cyclotomic_coset(t)
        .into_iter()
        .filter(|e| e % 2 == 1)
        .min()
        .expect("nonzero cosets modulo an odd number contain odd elements")
}

/// Exponent data validated against the hypotheses of a pattern theorem.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PatternHypotheses {
    pub m: usize,
    /// Odd `t_i` with `alpha^{t_i}` a root of a factor.
    pub positive: Vec<u64>,
    /// Odd `u_i` with `alpha^{-u_i}` a root of a factor.
    pub negative: Vec<u64>,
}

impl PatternHypotheses {
    /// Deviation coefficient: the bound is `(2^s - 1)(coeff 2^(m/2) + extra)`.
    fn bound_parts(&self, variant: PatternVariant) -> (u64, u64) {
        let t = self.positive.iter().copied().max().unwrap_or(0);
        let u = self.negative.iter().copied().max().unwrap_or(0);
        match variant {
            PatternVariant::EqualDegree => (t - 1, 1),
            PatternVariant::MelasMixed => (t + u, 0),
        }
    }

    /// Corollary guarantee: `s <= m/2 - log2(coeff)`, i.e. `2^(2s) coeff^2 <= 2^m`.
    pub fn guarantees(&self, variant: PatternVariant, s: usize) -> bool {
        let (c, _) = self.bound_parts(variant);
        c > 0 && (c as u128).pow(2) << (2 * s) <= 1u128 << self.m
    }
}

pub fn pattern_hypotheses(code: &CyclicCode, variant: PatternVariant) -> Result<PatternHypotheses> {
    let ctx = code.context().ok_or_else(|| Error::Inapplicable("code has no shared splitting field".into()))?;
    let m = ctx.m();
    let factors = code.factors();
    if factors.iter().any(|f| f.degree != m) {
        return Err(Error::Inapplicable("factors do not all have the degree of the splitting field".into()));
    }
    let mut positive = Vec::new();
    let mut negative = Vec::new();
    for f in factors {
        let t = f.exponent.ok_or_else(|| Error::Inapplicable("factor exponent unknown".into()))?;
        match variant {
            PatternVariant::EqualDegree => positive.push(smallest_odd_exponent(ctx, t)),
            PatternVariant::MelasMixed if t < 0 => negative.push(smallest_odd_exponent(ctx, -t)),
            PatternVariant::MelasMixed => positive.push(smallest_odd_exponent(ctx, t)),
        }
    }
    match variant {
        PatternVariant::EqualDegree => {
            if positive.iter().max().copied().unwrap_or(0) < 3 {
                return Err(Error::Inapplicable("largest exponent t must be at least 3".into()));
            }
        }
        PatternVariant::MelasMixed => {
            if positive.is_empty() || negative.is_empty() {
                return Err(Error::Inapplicable("needs factors with both positive and negative exponents".into()));
            }
        }
    }
    Ok(PatternHypotheses { m, positive, negative })
}

/// Checks the pattern-count bound for every nonzero dual sequence (one per
/// orbit) and every pattern of length `s`, plus the corollary's `N > 0`
/// guarantee when `s` is below its threshold.
pub fn pattern_theorem_check(code: &CyclicCode, variant: PatternVariant, s: usize) -> Result<CheckReport> {
    let hyp = pattern_hypotheses(code, variant)?;
    let m = hyp.m;
    if s == 0 || s > m {
        return Err(Error::Inapplicable(format!("pattern length {s} outside 1..={m}")));
    }
    let (coeff, extra) = hyp.bound_parts(variant);
    let guaranteed = hyp.guarantees(variant, s);
    let mut report = CheckReport::new(match variant {
        PatternVariant::EqualDegree => "equal-degree pattern theorem",
        PatternVariant::MelasMixed => "mixed-exponent pattern theorem",
    });
    report.hypotheses.push(format!(
        "m = {m}, t = {:?}, u = {:?}, s = {s}, corollary applies: {guaranteed}",
        hyp.positive, hyp.negative
    ));
    let window = (1usize << m) - 1;
    let word = WordModulus::new(code.generator())?;
    let k = (1u128 << s) - 1;
    let reps = orbits(code.generator())?;
    let found: Vec<(u64, Vec<String>, bool)> = reps
        .par_iter()
        .map(|o| {
            let f = o.representative.to_u64().expect("word residue");
            let seq = galois_output_word(word, f, window);
            let mut bad = Vec::new();
            for (y, &n) in histogram(&seq, s).iter().enumerate() {
                // |2^s N - (2^m - 1)| - (2^s - 1) extra <= (2^s - 1) coeff 2^(m/2)
                let dev = (((n as i128) << s) - window as i128).abs() - (k * extra as u128) as i128;
                if dev > 0 && !le_sqrt_pow2(dev as u128, k * coeff as u128, m as u32) {
                    bad.push(format!("init {:#x} pattern {y:0s$b}: N = {n}", f));
                }
                if guaranteed && n == 0 {
                    bad.push(format!("init {:#x} misses pattern {y:0s$b} below the corollary threshold", f));
                }
            }
            let one_sided = variant == PatternVariant::MelasMixed
                && minimal_polynomial_of_sequence(&seq, code.generator()).is_ok_and(|f| f.len() == 1);
            (1u64 << s, bad, one_sided)
        })
        .collect();
    let mut one_sided = 0;
    for (cases, bad, single) in found {
        report.cases_checked += cases;
        report.violations.extend(bad);
        one_sided += usize::from(single);
    }
    if variant == PatternVariant::MelasMixed {
        report.notes.push(format!(
            "mixed bound applied to all {} sequences; {one_sided} are generated by a single factor, where it overestimates",
            reps.len()
        ));
    }
    Ok(report)
}

/// Pattern counts of a dual sequence recomputed from its trace representation
/// `a_k = Tr(sum gamma_i alpha^{t_i k})` by expanding the indicator product
/// into character sums. Requires all factors to have the splitting-field degree.
pub fn pattern_counts_via_characters(code: &CyclicCode, seq: &[bool], s: usize) -> Result<Vec<i64>> {
    let ctx = code.context().ok_or(Error::UnresolvedFactors)?;
    let m = ctx.m();
    let q1 = ctx.order() as usize;
    let exps: Vec<i64> =
        code.factors().iter().map(|f| f.exponent.ok_or(Error::UnresolvedFactors)).collect::<Result<_>>()?;
    if code.factors().iter().any(|f| f.degree != m) {
        return Err(Error::Inapplicable("factor degree differs from the field degree".into()));
    }
    let r = code.r();
    if seq.len() < r {
        return Err(Error::InvalidArgument("sequence shorter than the register".into()));
    }
    // Unknown bit (i, b) of gamma_i contributes Tr(2^b alpha^{t_i k}) to a_k.
    let mut cols = Vec::with_capacity(r);
    for &t in &exps {
        for b in 0..m {
            let col = (0..r).fold(0u64, |acc, k| {
                let v = ctx.mul(FieldElement(1 << b), ctx.alpha_pow(t * k as i64));
                acc | (ctx.trace(v) as u64) << k
            });
            cols.push(col);
        }
    }
    let rhs = (0..r).fold(0u64, |acc, k| acc | (seq[k] as u64) << k);
    let sol = solve_square(&cols, rhs)?;
    let gammas: Vec<FieldElement> = (0..exps.len()).map(|i| FieldElement((sol >> (i * m)) & ((1 << m) - 1))).collect();
    for (k, &bit) in seq.iter().enumerate() {
        let v = exps
            .iter()
            .zip(&gammas)
            .fold(FieldElement::ZERO, |acc, (&t, &g)| acc + ctx.mul(g, ctx.alpha_pow(t * k as i64)));
        if ctx.trace(v) != bit {
            return Err(Error::InvalidArgument("sequence is not generated by the code's dual".into()));
        }
    }
    // S_J = sum_{x != 0} chi(sum_i gamma_i (sum_{j in J} alpha^{t_i j}) x^{t_i}).
    let subsets = 1usize << s;
    let mut sums = vec![0i64; subsets];
    for (jmask, slot) in sums.iter_mut().enumerate().skip(1) {
        let coeffs: Vec<FieldElement> = exps
            .iter()
            .zip(&gammas)
            .map(|(&t, &g)| {
                let inner = (0..s)
                    .filter(|j| jmask >> j & 1 == 1)
                    .fold(FieldElement::ZERO, |acc, j| acc + ctx.alpha_pow(t * j as i64));
                ctx.mul(g, inner)
            })
            .collect();
        *slot = (0..q1 as i64)
            .map(|k| {
                let v = exps
                    .iter()
                    .zip(&coeffs)
                    .fold(FieldElement::ZERO, |acc, (&t, &c)| acc + ctx.mul(c, ctx.alpha_pow(t * k)));
                chi(ctx, v)
            })
            .sum();
    }
    let mut counts = Vec::with_capacity(subsets);
    for y in 0..subsets {
        // Pattern index has the first symbol as the high bit: y_j = bit (s - 1 - j).
        let total: i64 = q1 as i64
            + (1..subsets)
                .map(|jmask| {
                    let sign = (0..s).filter(|j| jmask >> j & 1 == 1).map(|j| y >> (s - 1 - j) & 1).sum::<usize>();
                    if sign % 2 == 0 {
                        sums[jmask]
                    } else {
                        -sums[jmask]
                    }
                })
                .sum::<i64>();
        if total % (1 << s) != 0 {
            return Err(Error::InvalidArgument("character expansion is not divisible by 2^s".into()));
        }
        counts.push(total >> s);
    }
    Ok(counts)
}

/// `2^c (2^c - 1) 2^((a+b)/2) + 2^(a+b) + 2^c > 2^(a+c) + 2^(b+c)` with `c = gcd(a, b)`, exactly.
pub fn appendix_inequality_check(a: u64, b: u64) -> Result<bool> {
    if a == 0 || b == 0 {
        return Err(Error::InvalidArgument("a and b must be positive".into()));
    }
    let c = gcd_u64(a, b);
    let p = |e: u64| BigInt::from(1) << e;
    let lhs_rest = p(a + b) + p(c);
    let rhs = p(a + c) + p(b + c);
    let coeff = p(c) * (p(c) - 1);
    Ok(gt_times_half_power(&coeff, a + b, &(rhs - lhs_rest)))
}

/// The lemma in its original ratio form,
/// `1 + (2^a - 1)(2^b - 1) / ((2^c - 1) 2^((a+b)/2)) > 2^((a+b)/2 - c)`,
/// multiplied through by `(2^c - 1) 2^((a+b)/2) 2^c`.
pub fn appendix_lemma_direct(a: u64, b: u64) -> Result<bool> {
    if a == 0 || b == 0 {
        return Err(Error::InvalidArgument("a and b must be positive".into()));
    }
    let c = gcd_u64(a, b);
    let p = |e: u64| BigInt::from(1) << e;
    let q = p(c) - 1;
    let prod = (p(a) - 1) * (p(b) - 1);
    // q 2^c 2^h + prod 2^c > q 2^(2h) with h = (a+b)/2.
    let lhs_int = &prod * p(c);
    let rhs = &q * p(a + b);
    Ok(gt_times_half_power(&(q * p(c)), a + b, &(rhs - lhs_int)))
}

/// `x 2^(k/2) > y` for `x >= 0`.
fn gt_times_half_power(x: &BigInt, k: u64, y: &BigInt) -> bool {
    if y.sign() == num_bigint::Sign::Minus {
        return true;
    }
    // x^2 2^k > y^2
    (x * x) << k > y * y
}

/// Shuffled list helper for reproducible sampling of syndromes and states.
pub fn sample_indices(total: u64, count: usize, seed: u64) -> Vec<u64> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    if (total as usize) <= count {
        let mut all: Vec<u64> = (0..total).collect();
        all.shuffle(&mut rng);
        return all;
    }
    (0..count).map(|_| rng.gen_range(0..total)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cyclic::{make_bch, make_melas};

    #[test]
    fn linear_character_sums() {
        let ctx = FieldContext::default_for(5).unwrap();
        let f = LaurentExponentForm::new(vec![(FieldElement::ONE, 1)], vec![]).unwrap();
        assert_eq!(char_sum(&ctx, &f, Domain::All).unwrap(), 0);
        assert_eq!(char_sum(&ctx, &f, Domain::Nonzero).unwrap(), -1);
    }

    #[test]
    fn pole_needs_nonzero_domain() {
        let ctx = FieldContext::default_for(4).unwrap();
        let f = LaurentExponentForm::new(vec![(FieldElement::ONE, 1)], vec![(FieldElement::ONE, 1)]).unwrap();
        assert!(char_sum(&ctx, &f, Domain::All).is_err());
        let c = laurent_weil_check(&ctx, &f).unwrap();
        assert!(c.ok && c.applicable);
        assert_eq!(c.coefficient, 2);
    }

    #[test]
    fn form_validation() {
        assert!(LaurentExponentForm::new(vec![(FieldElement::ONE, 2)], vec![]).is_err());
        assert!(LaurentExponentForm::new(vec![(FieldElement::ZERO, 1)], vec![]).is_err());
        assert!(LaurentExponentForm::new(vec![(FieldElement::ONE, 3), (FieldElement::ONE, 1)], vec![]).is_err());
    }

    #[test]
    fn cube_over_gf16() {
        let ctx = FieldContext::default_for(4).unwrap();
        let c = wcu_check(&ctx, &[FieldElement::ZERO, FieldElement::ZERO, FieldElement::ZERO, FieldElement::ONE]);
        assert!(c.ok);
        assert!(c.sum.abs() <= 8);
        assert_eq!(c.coefficient, 2);
        let even = wcu_check(&ctx, &[FieldElement::ZERO, FieldElement::ZERO, FieldElement::ONE]);
        assert!(!even.applicable);
    }

    #[test]
    fn reduction_matches_literal_enumeration() {
        for m in 1..=4 {
            let ctx = FieldContext::default_for(m).unwrap();
            assert!(wcu_literal(&ctx).unwrap().passed());
            assert!(wcu_exhaustive(&ctx).passed());
        }
    }

    #[test]
    fn trace_square_invariance_underlies_reduction() {
        let ctx = FieldContext::default_for(6).unwrap();
        for x in ctx.elements() {
            assert_eq!(ctx.trace(x), ctx.trace(ctx.square(x)));
        }
    }

    #[test]
    fn exact_sqrt_comparison() {
        assert!(le_sqrt_pow2(8, 2, 4));
        assert!(!le_sqrt_pow2(9, 2, 4));
        // 2 * sqrt(2) = 2.828...
        assert!(le_sqrt_pow2(2, 2, 1));
        assert!(!le_sqrt_pow2(3, 2, 1));
        assert!(le_sqrt_pow2(u128::MAX, u128::MAX, 0));
    }

    #[test]
    fn appendix_small_cases() {
        assert!(appendix_inequality_check(1, 1).unwrap());
        assert!(appendix_inequality_check(2, 4).unwrap());
        assert!(appendix_inequality_check(0, 3).is_err());
        for a in 1..=12 {
            for b in 1..=12 {
                assert_eq!(appendix_inequality_check(a, b).unwrap(), appendix_lemma_direct(a, b).unwrap());
            }
        }
    }

    #[test]
    fn bch_pattern_bound_s1() {
        let code = make_bch(2, 6).unwrap();
        let rep = pattern_theorem_check(&code, PatternVariant::EqualDegree, 1).unwrap();
        assert!(rep.passed(), "{:?}", rep.violations);
        assert!(pattern_theorem_check(&code, PatternVariant::MelasMixed, 1).is_err());
    }

    #[test]
    fn melas_pattern_bound() {
        let code = make_melas(6).unwrap();
        for s in 1..=6 {
            let rep = pattern_theorem_check(&code, PatternVariant::MelasMixed, s).unwrap();
            assert!(rep.passed(), "{:?}", rep.violations);
        }
    }

    #[test]
    fn character_expansion_reproduces_counts() {
        let code = make_bch(2, 5).unwrap();
        let word = WordModulus::new(code.generator()).unwrap();
        for o in orbits(code.generator()).unwrap().iter().take(8) {
            let seq = galois_output_word(word, o.representative.to_u64().unwrap(), 31);
            for s in 1..=4 {
                let want: Vec<i64> = histogram(&seq, s).into_iter().map(i64::from).collect();
                assert_eq!(pattern_counts_via_characters(&code, &seq, s).unwrap(), want);
            }
        }
    }

    #[test]
    fn pn_niederreiter() {
        let g = BinaryPolynomial::from_u64(0x25);
        let spec = LfsrSpec::galois(g.clone(), BinaryPolynomial::one()).unwrap();
        let rep = niederreiter_check(&spec, 1).unwrap();
        assert!(rep.passed());
        assert!(niederreiter_check(&spec, 6).is_err());
        assert!(niederreiter_suite(&g).unwrap().passed());
    }

    #[test]
    fn equal_degree_niederreiter_is_vacuous() {
        let code = make_bch(2, 5).unwrap();
        let spec = LfsrSpec::galois(code.generator().clone(), BinaryPolynomial::one()).unwrap();
        let rep = niederreiter_check(&spec, 1).unwrap();
        assert!(rep.passed());
        assert!(rep.notes.iter().any(|n| n.contains("vacuous")));
    }
}
