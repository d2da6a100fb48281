//! Fibonacci and Galois-mode LFSRs, zero runs, pattern counts, orbits of
//! residues under multiplication by `X`, and trace representations.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::gf2::factor::{factorize, poly_order};
use crate::gf2::poly::{mulx_mod_word, word_degree};
use crate::gf2::{BinaryPolynomial, Degree, FieldContext, FieldElement};
use crate::matrix::solve_square;

/// Largest connection degree handled by the word-level kernels.
pub const MAX_WORD_DEGREE: usize = 63;
/// Largest degree for which a full walk over all `2^r - 1` residues is attempted.
pub const MAX_ORBIT_DEGREE: usize = 30;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Init {
    /// Initial conditions `a_0, ..., a_{r-1}`.
    Fibonacci(Vec<bool>),
    /// Initial Galois-mode load `f`, `deg f < r`.
    Galois(BinaryPolynomial),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LfsrSpec {
    connection: BinaryPolynomial,
    init: Init,
}

impl LfsrSpec {
    pub fn fibonacci(connection: BinaryPolynomial, init: Vec<bool>) -> Result<Self> {
        let r = check_connection(&connection)?;
        if init.len() != r {
            return Err(Error::InvalidArgument(format!(
                "Fibonacci initial conditions need length {r}, got {}",
                init.len()
            )));
        }
        Ok(Self { connection, init: Init::Fibonacci(init) })
    }

    pub fn galois(connection: BinaryPolynomial, load: BinaryPolynomial) -> Result<Self> {
        let r = check_connection(&connection)?;
        if !load.degree().lt(r) {
            return Err(Error::InvalidArgument("Galois load must have degree below r".into()));
        }
        Ok(Self { connection, init: Init::Galois(load) })
    }

    pub fn connection(&self) -> &BinaryPolynomial {
        &self.connection
    }

    pub fn order(&self) -> usize {
        self.connection.deg()
    }

    pub fn init(&self) -> &Init {
        &self.init
    }

    /// Fibonacci initial conditions, converting a Galois load if needed.
    pub fn fibonacci_init(&self) -> Vec<bool> {
        match &self.init {
            Init::Fibonacci(a) => a.clone(),
            Init::Galois(f) => galois_outputs(&self.connection, f, self.order()),
        }
    }

    /// Galois load producing the same output, converting Fibonacci conditions if needed.
    pub fn galois_load(&self) -> BinaryPolynomial {
        match &self.init {
            Init::Galois(f) => f.clone(),
            Init::Fibonacci(a) => galois_load_for(&self.connection, a),
        }
    }

    pub fn is_zero(&self) -> bool {
        match &self.init {
            Init::Fibonacci(a) => a.iter().all(|&b| !b),
            Init::Galois(f) => f.is_zero(),
        }
    }
}

fn check_connection(g: &BinaryPolynomial) -> Result<usize> {
    match g.degree() {
        Degree::Finite(r) if r >= 1 => Ok(r),
        _ => Err(Error::InvalidArgument("connection polynomial needs degree >= 1".into())),
    }
}

/// First `len` terms of the recurrence `a_k = sum_{i<r} m_i a_{k-r+i}`.
pub fn lfsr_sequence(spec: &LfsrSpec, len: usize) -> Vec<bool> {
    let g = &spec.connection;
    let r = spec.order();
    let init = spec.fibonacci_init();
    let taps: Vec<usize> = (0..r).filter(|&i| g.coeff(i)).collect();
    let mut seq = Vec::with_capacity(len.max(r));
    seq.extend_from_slice(&init);
    for k in r..len {
        let bit = taps.iter().fold(false, |acc, &i| acc ^ seq[k - r + i]);
        seq.push(bit);
    }
    seq.truncate(len);
    seq
}

/// Runs a Galois-mode LFSR: `states[k] = X^k f mod g`, `output[k]` is the
/// coefficient of `X^{r-1}` in `states[k]`.
pub fn galois_run(
    g: &BinaryPolynomial,
    f: &BinaryPolynomial,
    steps: usize,
) -> Result<(Vec<BinaryPolynomial>, Vec<bool>)> {
    let r = check_connection(g)?;
    if !f.degree().lt(r) {
        return Err(Error::InvalidArgument("initial load must have degree below deg(g)".into()));
    }
    let mut states = Vec::with_capacity(steps);
    let mut output = Vec::with_capacity(steps);
    let mut cur = f.clone();
    for _ in 0..steps {
        output.push(cur.coeff(r - 1));
        let next = cur.shl(1);
        let next = if next.coeff(r) { next.add(g) } else { next };
        states.push(std::mem::replace(&mut cur, next));
    }
    Ok((states, output))
}

fn galois_outputs(g: &BinaryPolynomial, f: &BinaryPolynomial, steps: usize) -> Vec<bool> {
    galois_run(g, f, steps).expect("validated load").1
}

/// The Galois load whose first `r` outputs equal `init`.
///
/// Output `a_k` depends on `f_{r-1-k}` with coefficient one and otherwise only
/// on higher coefficients, so the load is recovered top-down.
pub fn galois_load_for(g: &BinaryPolynomial, init: &[bool]) -> BinaryPolynomial {
    let r = g.deg();
    let mut f = BinaryPolynomial::zero();
    for (k, &want) in init.iter().enumerate().take(r) {
        let got = galois_outputs(g, &f, k + 1)[k];
        if got != want {
            f.flip(r - 1 - k);
        }
    }
    f
}

/// Smallest `p` with `seq[i] = seq[(i + p) mod len]`; `seq.len()` must be a period.
pub fn minimal_period(seq: &[bool]) -> usize {
    let n = seq.len();
    let mut divisors: Vec<usize> = (1..=n).filter(|d| n.is_multiple_of(*d)).collect();
    divisors.sort_unstable();
    divisors.into_iter().find(|&p| (0..n).all(|i| seq[i] == seq[(i + p) % n])).unwrap_or(n)
}

/// One full period of the sequence (length = its minimal period).
pub fn period_of(spec: &LfsrSpec) -> Result<Vec<bool>> {
    if spec.is_zero() {
        return Err(Error::ZeroInitialCondition);
    }
    let g = &spec.connection;
    if !g.coeff(0) {
        return Err(Error::InvalidArgument("connection polynomial divisible by X".into()));
    }
    let ord = poly_order(g)? as usize;
    let seq = lfsr_sequence(spec, ord);
    let p = minimal_period(&seq);
    Ok(seq[..p].to_vec())
}

/// Longest run of zeros of a periodic sequence, reading cyclically.
/// Returns `None` for the all-zero sequence.
pub fn max_zero_run_cyclic(period: &[bool]) -> Option<usize> {
    let start = period.iter().position(|&b| b)?;
    let n = period.len();
    let mut best = 0;
    let mut run = 0;
    for k in 1..=n {
        if period[(start + k) % n] {
            best = best.max(run);
            run = 0;
        } else {
            run += 1;
        }
    }
    Some(best)
}

/// Maximum zero run of the periodic LFSR sequence.
pub fn max_zero_run(spec: &LfsrSpec) -> Result<usize> {
    let period = period_of(spec)?;
    Ok(max_zero_run_cyclic(&period).expect("nonzero sequence"))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PatternStats {
    /// Pattern as a 0/1 string, first symbol first.
    pub pattern: String,
    pub window: usize,
    pub count: usize,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub positions: Option<Vec<usize>>,
}

pub fn bits_to_string(bits: &[bool]) -> String {
    bits.iter().map(|&b| if b { '1' } else { '0' }).collect()
}

/// Occurrences of `y` starting in `[0, window)`, reading the periodic continuation.
pub fn count_in_period(period: &[bool], y: &[bool], window: usize, keep_positions: bool) -> PatternStats {
    let n = period.len();
    let mut positions = Vec::new();
    let mut count = 0;
    for k in 0..window {
        if y.iter().enumerate().all(|(j, &b)| period[(k + j) % n] == b) {
            count += 1;
            if keep_positions {
                positions.push(k);
            }
        }
    }
    PatternStats { pattern: bits_to_string(y), window, count, positions: keep_positions.then_some(positions) }
}

pub fn pattern_count(spec: &LfsrSpec, y: &[bool], window: usize) -> Result<PatternStats> {
    if y.is_empty() || window == 0 {
        return Err(Error::InvalidArgument("pattern and window must be nonempty".into()));
    }
    let period = period_of(spec)?;
    Ok(count_in_period(&period, y, window, false))
}

/// Counts of every length-`s` pattern over `window` start positions, indexed
/// by the pattern read as an integer with the first symbol as the high bit.
pub fn pattern_histogram(period: &[bool], s: usize, window: usize) -> Vec<u32> {
    assert!((1..=24).contains(&s), "pattern length out of range");
    let n = period.len();
    let mask = (1u32 << s) - 1;
    let mut hist = vec![0u32; 1usize << s];
    let mut cur = 0u32;
    for j in 0..s {
        cur = (cur << 1) | period[j % n] as u32;
    }
    for k in 0..window {
        hist[cur as usize] += 1;
        cur = ((cur << 1) | period[(k + s) % n] as u32) & mask;
    }
    hist
}

/// Word-level view of a connection polynomial of degree `r <= 63`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct WordModulus {
    pub g: u64,
    pub r: u32,
}

impl WordModulus {
    pub fn new(g: &BinaryPolynomial) -> Result<Self> {
        let r = check_connection(g)?;
        if r > MAX_WORD_DEGREE {
            return Err(Error::DegreeTooLarge(r, MAX_WORD_DEGREE));
        }
        Ok(Self { g: g.to_u64().expect("degree <= 63"), r: r as u32 })
    }

    #[inline]
    pub fn mulx(&self, f: u64) -> u64 {
        mulx_mod_word(f, self.g, self.r)
    }

    #[inline]
    pub fn output(&self, f: u64) -> bool {
        (f >> (self.r - 1)) & 1 == 1
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Orbit {
    /// Numerically smallest residue in the orbit.
    pub representative: BinaryPolynomial,
    pub size: usize,
    /// `min_k deg(X^k f mod g)` over the orbit.
    pub min_degree: usize,
}

/// Walks every orbit of the nonzero residues modulo `g` under multiplication by `X`.
///
/// Residues are visited in increasing integer order and each orbit is walked
/// once, so the first unvisited residue is always the orbit minimum.
pub fn orbits(g: &BinaryPolynomial) -> Result<Vec<Orbit>> {
    let word = validate_orbit_modulus(g)?;
    let r = word.r as usize;
    if r > MAX_ORBIT_DEGREE {
        return Err(Error::BudgetExceeded(format!("orbit walk over 2^{r} residues exceeds 2^{MAX_ORBIT_DEGREE}")));
    }
    let total = 1u64 << r;
    let mut visited = vec![0u64; (total as usize).div_ceil(64)];
    let mut out = Vec::new();
    for start in 1..total {
        if (visited[(start / 64) as usize] >> (start % 64)) & 1 == 1 {
            continue;
        }
        let mut f = start;
        let mut size = 0usize;
        let mut min_deg = r;
        loop {
            visited[(f / 64) as usize] |= 1u64 << (f % 64);
            size += 1;
            if let Degree::Finite(d) = word_degree(f) {
                min_deg = min_deg.min(d);
            }
            f = word.mulx(f);
            if f == start {
                break;
            }
        }
        out.push(Orbit { representative: BinaryPolynomial::from_u64(start), size, min_degree: min_deg });
    }
    Ok(out)
}

pub(crate) fn validate_orbit_modulus(g: &BinaryPolynomial) -> Result<WordModulus> {
    let word = WordModulus::new(g)?;
    if !g.coeff(0) {
        return Err(Error::InvalidArgument("X divides the modulus".into()));
    }
    if factorize(g).iter().any(|&(_, m)| m > 1) {
        return Err(Error::RepeatedFactors);
    }
    Ok(word)
}

/// One representative (the numerically smallest member) per orbit.
pub fn orbit_representatives(g: &BinaryPolynomial) -> Result<Vec<BinaryPolynomial>> {
    Ok(orbits(g)?.into_iter().map(|o| o.representative).collect())
}

/// Period of the Galois output from load `f` (the orbit size of `f`).
pub fn orbit_size(word: WordModulus, f: u64) -> usize {
    assert_ne!(f, 0);
    let mut cur = word.mulx(f);
    let mut size = 1;
    while cur != f {
        cur = word.mulx(cur);
        size += 1;
    }
    size
}

/// Galois output bits from load `f` for `len` steps.
pub fn galois_output_word(word: WordModulus, f: u64, len: usize) -> Vec<bool> {
    let mut out = Vec::with_capacity(len);
    let mut cur = f;
    for _ in 0..len {
        out.push(word.output(cur));
        cur = word.mulx(cur);
    }
    out
}

/// One term `Tr(gamma alpha^k)` of a trace representation; `alpha` is the
/// class of `X` in the field defined by `factor`.
#[derive(Debug, Clone)]
pub struct TraceTerm {
    pub factor: BinaryPolynomial,
    pub field: FieldContext,
    pub gamma: FieldElement,
}

impl TraceTerm {
    pub fn value(&self, k: u64) -> bool {
        let alpha_k = self.field.pow(self.field.alpha(), k);
        self.field.trace(self.field.mul(self.gamma, alpha_k))
    }
}

/// Regenerates `a_k = sum_i Tr(gamma_i alpha_i^k)` for `k < len`.
pub fn regenerate(terms: &[TraceTerm], len: usize) -> Vec<bool> {
    let mut powers: Vec<FieldElement> = terms.iter().map(|t| t.gamma).collect();
    let mut out = Vec::with_capacity(len);
    for _ in 0..len {
        let bit = terms.iter().zip(&powers).fold(false, |acc, (t, &p)| acc ^ t.field.trace(p));
        out.push(bit);
        for (t, p) in terms.iter().zip(powers.iter_mut()) {
            *p = t.field.mul(*p, t.field.alpha());
        }
    }
    out
}

/// Writes the sequence as `sum_i Tr(gamma_i alpha_i^k)` over the irreducible factors
/// of its square-free connection polynomial, and verifies the result by regenerating
/// `ord(g) + r` terms.
pub fn trace_representation(spec: &LfsrSpec) -> Result<Vec<TraceTerm>> {
    let g = spec.connection();
    let r = spec.order();
    if r > 64 {
        return Err(Error::DegreeTooLarge(r, 64));
    }
    if !g.coeff(0) {
        return Err(Error::InvalidArgument("X divides the connection polynomial".into()));
    }
    let factors = factorize(g);
    if factors.iter().any(|&(_, m)| m > 1) {
        return Err(Error::RepeatedFactors);
    }
    let mut terms: Vec<TraceTerm> = factors
        .into_iter()
        .map(|(p, _)| Ok(TraceTerm { field: FieldContext::new(p.clone())?, factor: p, gamma: FieldElement::ZERO }))
        .collect::<Result<_>>()?;
    // Unknown bit (i, j) is bit j of gamma_i; its column is (Tr(X^j alpha_i^k))_{k<r}.
    let mut cols = Vec::with_capacity(r);
    let mut owners = Vec::with_capacity(r);
    for (i, t) in terms.iter().enumerate() {
        for j in 0..t.field.m() {
            let probe = TraceTerm { factor: t.factor.clone(), field: t.field.clone(), gamma: FieldElement(1 << j) };
            let seq = regenerate(std::slice::from_ref(&probe), r);
            cols.push(seq.iter().enumerate().fold(0u64, |acc, (k, &b)| acc | ((b as u64) << k)));
            owners.push((i, j));
        }
    }
    let init = spec.fibonacci_init();
    let rhs = init.iter().enumerate().fold(0u64, |acc, (k, &b)| acc | ((b as u64) << k));
    let sol = solve_square(&cols, rhs)?;
    for (idx, &(i, j)) in owners.iter().enumerate() {
        if (sol >> idx) & 1 == 1 {
            terms[i].gamma.0 |= 1 << j;
        }
    }
    let len = poly_order(g)? as usize + r;
    if regenerate(&terms, len) != lfsr_sequence(spec, len) {
        return Err(Error::InvalidArgument("trace representation failed regeneration".into()));
    }
    Ok(terms)
}

/// `initHex : bits` line for sequence dumps; the hex form packs `a_i` at bit `i`.
pub fn dump_line(spec: &LfsrSpec, len: usize) -> String {
    let init = spec.fibonacci_init();
    let hex = BinaryPolynomial::from_coeffs(init).to_hex();
    format!("{hex} : {}", bits_to_string(&lfsr_sequence(spec, len)))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> BinaryPolynomial {
        BinaryPolynomial::parse(s).unwrap()
    }

    #[test]
    fn pn_sequence_of_length_seven() {
        let spec = LfsrSpec::fibonacci(p("x^3+x+1"), vec![true, false, false]).unwrap();
        let seq = lfsr_sequence(&spec, 7);
        // a_k = a_{k-3} + a_{k-2}
        assert_eq!(bits_to_string(&seq), "1001011");
        let mut seen = std::collections::HashSet::new();
        for k in 0..7 {
            let w: Vec<bool> = (0..3).map(|j| seq[(k + j) % 7]).collect();
            assert!(seen.insert(w));
        }
        assert_eq!(period_of(&spec).unwrap().len(), 7);
    }

    #[test]
    fn zero_init_gives_zero_sequence() {
        let spec = LfsrSpec::fibonacci(p("x^3+x+1"), vec![false; 3]).unwrap();
        assert!(lfsr_sequence(&spec, 20).iter().all(|&b| !b));
        assert_eq!(max_zero_run(&spec), Err(Error::ZeroInitialCondition));
        assert_eq!(pattern_count(&spec, &[true], 7).unwrap_err(), Error::ZeroInitialCondition);
    }

    #[test]
    fn galois_hand_example() {
        let (states, out) = galois_run(&p("x^3+x+1"), &p("x^2"), 3).unwrap();
        assert_eq!(states, vec![p("x^2"), p("x+1"), p("x^2+x")]);
        assert_eq!(out, vec![true, false, true]);
        let (states, out) = galois_run(&p("x^3+x+1"), &BinaryPolynomial::zero(), 5).unwrap();
        assert!(states.iter().all(|s| s.is_zero()) && out.iter().all(|&b| !b));
        assert!(galois_run(&p("x^3+x+1"), &p("x^3"), 2).is_err());
    }

    #[test]
    fn galois_load_conversion_round_trips() {
        let g = p("x^6+x^4+x^3+x+1");
        for v in 0..64u64 {
            let f = BinaryPolynomial::from_u64(v);
            let init = galois_outputs(&g, &f, 6);
            assert_eq!(galois_load_for(&g, &init), f);
        }
    }

    #[test]
    fn zero_run_of_pn_sequences() {
        for m in 2..=8 {
            let g = crate::gf2::default_primitive(m);
            let mut init = vec![false; m];
            init[m - 1] = true;
            let spec = LfsrSpec::fibonacci(g, init).unwrap();
            assert_eq!(max_zero_run(&spec).unwrap(), m - 1);
        }
    }

    #[test]
    fn parity_factor_admits_all_ones_sequence() {
        // g = (X+1)(X^3+X+1): the all-ones sequence satisfies the recurrence.
        let g = p("x+1").mul(&p("x^3+x+1"));
        let spec = LfsrSpec::fibonacci(g, vec![true; 4]).unwrap();
        assert_eq!(max_zero_run(&spec).unwrap(), 0);
    }

    #[test]
    fn cyclic_run_wraps_the_period() {
        assert_eq!(max_zero_run_cyclic(&[false, true, true, false, false]), Some(3));
        assert_eq!(max_zero_run_cyclic(&[false, false]), None);
    }

    #[test]
    fn pattern_counts_of_pn_sequence() {
        let m = 5;
        let g = crate::gf2::default_primitive(m);
        let spec = LfsrSpec::galois(g, BinaryPolynomial::one()).unwrap();
        let period = period_of(&spec).unwrap();
        assert_eq!(period.len(), 31);
        for s in 1..=m {
            for v in 0..(1u32 << s) {
                let y: Vec<bool> = (0..s).map(|j| (v >> (s - 1 - j)) & 1 == 1).collect();
                let n = pattern_count(&spec, &y, 31).unwrap().count;
                let want = if v == 0 { (1 << (m - s)) - 1 } else { 1 << (m - s) };
                assert_eq!(n, want, "s = {s}, y = {v:b}");
            }
        }
        let hist = pattern_histogram(&period, 3, 31);
        assert_eq!(hist.iter().sum::<u32>(), 31);
        assert_eq!(hist[0], 3);
    }

    #[test]
    fn pattern_stats_json() {
        let stats = PatternStats { pattern: "101".into(), window: 7, count: 1, positions: None };
        let json = serde_json::to_string(&stats).unwrap();
        assert_eq!(json, r#"{"pattern":"101","window":7,"count":1}"#);
    }

    #[test]
    fn orbit_examples() {
        let g = p("x^3+x+1");
        let o = orbits(&g).unwrap();
        assert_eq!(o.len(), 1);
        assert_eq!(o[0].size, 7);
        assert_eq!(o[0].representative, BinaryPolynomial::one());

        let g = p("x^3+x+1").mul(&p("x^4+x+1"));
        let o = orbits(&g).unwrap();
        assert_eq!(o.iter().map(|x| x.size).sum::<usize>(), 127);
        assert!(o.iter().all(|x| 105 % x.size == 0));

        assert_eq!(orbit_representatives(&p("x^2+1")), Err(Error::RepeatedFactors));
        assert!(orbit_representatives(&p("x^3+x")).is_err());
    }

    #[test]
    fn orbit_representative_is_orbit_minimum_and_closes() {
        let g = p("x^3+x+1").mul(&p("x^2+x+1"));
        let word = WordModulus::new(&g).unwrap();
        for o in orbits(&g).unwrap() {
            let rep = o.representative.to_u64().unwrap();
            let mut f = rep;
            for _ in 0..o.size {
                assert!(f >= rep);
                f = word.mulx(f);
            }
            assert_eq!(f, rep);
        }
    }

    #[test]
    fn trace_representation_of_impulse() {
        let g = crate::gf2::default_primitive(4);
        let spec = LfsrSpec::fibonacci(g, vec![true, false, false, false]).unwrap();
        let terms = trace_representation(&spec).unwrap();
        assert_eq!(terms.len(), 1);
        assert!(!terms[0].gamma.is_zero());
        let seq = lfsr_sequence(&spec, 15);
        for k in 0..15 {
            assert_eq!(terms[0].value(k as u64), seq[k]);
        }
    }

    #[test]
    fn trace_representation_zero_and_composite() {
        let g = p("x^3+x+1").mul(&p("x^4+x^3+1"));
        let zero = LfsrSpec::fibonacci(g.clone(), vec![false; 7]).unwrap();
        assert!(trace_representation(&zero).unwrap().iter().all(|t| t.gamma.is_zero()));

        let spec = LfsrSpec::galois(g.clone(), p("x^5+x+1")).unwrap();
        let mut terms = trace_representation(&spec).unwrap();
        terms[1].gamma = FieldElement::ZERO;
        let seq = regenerate(&terms, 30);
        // The remaining component satisfies the recurrence of the first factor alone.
        let g1 = terms[0].factor.clone();
        let sub = LfsrSpec::fibonacci(g1, seq[..3].to_vec()).unwrap();
        assert_eq!(lfsr_sequence(&sub, 30), seq);
    }

    #[test]
    fn dump_line_format() {
        let spec = LfsrSpec::fibonacci(p("x^3+x+1"), vec![true, false, false]).unwrap();
        assert_eq!(dump_line(&spec, 7), "0x1 : 1001011");
    }
}
