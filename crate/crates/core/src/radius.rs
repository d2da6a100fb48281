//! Exact burst-covering radius by three independent routes.
//!
//! * [`matrix_burst_radius`] marks every syndrome reachable from windows of
//!   growing width in a parity-check matrix.
//! * [`geometric_is_covering`] checks that burst balls around codewords fill
//!   the ambient space, by exhaustive enumeration of `F_2^n`.
//! * [`cyclic_burst_radius`] walks the orbits of residues modulo `g` under
//!   multiplication by `X`; the radius is one more than the largest
//!   orbit-minimal degree.

use std::collections::BTreeMap;
use std::sync::atomic::{AtomicU64, Ordering};

use rayon::prelude::*;
use serde::Serialize;

use crate::cyclic::CyclicCode;
use crate::error::{Error, Result};
use crate::gf2::BinaryPolynomial;
use crate::lfsr::{galois_output_word, max_zero_run_cyclic, orbits, WordModulus};
use crate::matrix::{BinaryMatrix, XorBasis};

/// Largest redundancy for syndrome bitsets.
pub const MAX_BITSET_REDUNDANCY: usize = 28;
/// Largest redundancy for per-syndrome multiplicity tables.
pub const MAX_CENSUS_REDUNDANCY: usize = 24;
/// Largest length for exhaustive enumeration of `F_2^n`.
pub const MAX_GEOMETRIC_LENGTH: usize = 20;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Method {
    MatrixBruteforce,
    Geometric,
    Orbit,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Witness {
    /// A syndrome no window of width `b - 1` produces.
    Syndrome(String),
    /// An orbit whose minimal degree is `b - 1`.
    Orbit { representative: BinaryPolynomial, syndrome: String },
    /// A vector outside every `(b-1)`-burst ball.
    Vector(String),
    /// `b = 0`: nothing to witness.
    None,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RadiusResult {
    pub b: usize,
    pub method: Method,
    pub witness: Witness,
    pub cyclic: bool,
}

impl RadiusResult {
    /// Syndrome carried by the witness, if any.
    pub fn witness_syndrome(&self) -> Option<u64> {
        let hex = match &self.witness {
            Witness::Syndrome(s) => s,
            Witness::Orbit { syndrome, .. } => syndrome,
            _ => return None,
        };
        u64::from_str_radix(hex.trim_start_matches("0x"), 16).ok()
    }
}

/// Work limit for brute-force enumeration (number of XOR steps).
#[derive(Debug, Clone, Copy)]
pub struct Budget {
    pub max_work: u64,
}

impl Default for Budget {
    fn default() -> Self {
        Self { max_work: 1 << 33 }
    }
}

pub fn syndrome_hex(s: u64) -> String {
    format!("0x{s:x}")
}

/// `true` when some window of `width` (cyclic or not) spans `syndrome`.
pub fn window_reaches(h: &BinaryMatrix, syndrome: u64, width: usize, cyclic: bool) -> bool {
    let n = h.cols();
    if syndrome == 0 {
        return true;
    }
    if width == 0 {
        return false;
    }
    let width = width.min(n);
    let starts = if cyclic { n } else { n + 1 - width };
    (0..starts).any(|i| {
        let mut basis = XorBasis::default();
        for k in 0..width {
            basis.insert(h.column((i + k) % n));
        }
        basis.reduce(syndrome) == 0
    })
}

struct AtomicBitset {
    words: Vec<AtomicU64>,
}

impl AtomicBitset {
    fn new(bits: usize) -> Self {
        Self { words: (0..bits.div_ceil(64)).map(|_| AtomicU64::new(0)).collect() }
    }

    /// Sets the bit; returns `true` if it was previously clear.
    #[inline]
    fn insert(&self, i: u64) -> bool {
        let bit = 1u64 << (i % 64);
        self.words[(i / 64) as usize].fetch_or(bit, Ordering::Relaxed) & bit == 0
    }
}

fn check_matrix(h: &BinaryMatrix) -> Result<()> {
    let r = h.rows();
    if r == 0 {
        return Err(Error::InvalidArgument("matrix has no rows".into()));
    }
    if r > MAX_BITSET_REDUNDANCY {
        return Err(Error::DegreeTooLarge(r, MAX_BITSET_REDUNDANCY));
    }
    if !h.is_full_row_rank() {
        return Err(Error::RankDeficient);
    }
    Ok(())
}

/// Smallest `b` such that every syndrome is a combination of `b` consecutive
/// columns (cyclically consecutive when `cyclic`).
pub fn matrix_burst_radius(h: &BinaryMatrix, cyclic: bool) -> Result<RadiusResult> {
    matrix_burst_radius_with(h, cyclic, Budget::default())
}

pub fn matrix_burst_radius_with(h: &BinaryMatrix, cyclic: bool, budget: Budget) -> Result<RadiusResult> {
    check_matrix(h)?;
    let r = h.rows();
    let n = h.cols();
    let total = 1u64 << r;
    let reach = AtomicBitset::new(total as usize);
    reach.insert(0);
    let mut covered = 1u64;
    let mut work = 0u64;
    for w in 1..=n {
        let per_window = if w >= 2 { 1u64 << (w - 2) } else { 1 };
        let windows = if cyclic { n } else { n + 1 - w } as u64;
        work = work.saturating_add(per_window.saturating_mul(windows));
        if work > budget.max_work {
            return Err(Error::BudgetExceeded(format!("window width {w} needs more than {} steps", budget.max_work)));
        }
        // Combinations whose extreme columns are both set: rightmost `j`, leftmost `j - w + 1`.
        let rights: Vec<usize> = if cyclic { (0..n).collect() } else { (w - 1..n).collect() };
        let (new_count, min_new) = rights
            .par_iter()
            .map(|&j| {
                let left = (j + n - (w - 1)) % n;
                let mut fresh = 0u64;
                let mut min_new = u64::MAX;
                let mut mark = |v: u64| {
                    if reach.insert(v) {
                        fresh += 1;
                        min_new = min_new.min(v);
                    }
                };
                if w == 1 {
                    mark(h.column(j));
                } else {
                    let mid: Vec<u64> = (1..w - 1).map(|k| h.column((left + k) % n)).collect();
                    let mut v = h.column(j) ^ h.column(left);
                    mark(v);
                    for k in 1u64..(1u64 << mid.len()) {
                        v ^= mid[k.trailing_zeros() as usize];
                        mark(v);
                    }
                }
                (fresh, min_new)
            })
            .reduce(|| (0, u64::MAX), |a, b| (a.0 + b.0, a.1.min(b.1)));
        covered += new_count;
        if covered == total {
            return Ok(RadiusResult {
                b: w,
                method: Method::MatrixBruteforce,
                witness: Witness::Syndrome(syndrome_hex(min_new)),
                cyclic,
            });
        }
    }
    Err(Error::RankDeficient)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SyndromeCensus {
    pub b: usize,
    pub cyclic: bool,
    /// Number of window combinations enumerated.
    pub total_combinations: u64,
    /// Multiplicity of the zero syndrome.
    pub zero_multiplicity: u64,
    /// Extremes over nonzero syndromes.
    pub min_multiplicity: u64,
    pub max_multiplicity: u64,
    /// Nonzero syndromes with multiplicity 0.
    pub count_of_uncovered: u64,
    /// multiplicity -> number of nonzero syndromes with it.
    pub histogram: BTreeMap<u64, u64>,
    /// Every nonzero syndrome produced exactly once and zero never.
    pub perfect: bool,
}

/// Counts, for every syndrome, the window-`b` combinations producing it.
///
/// Combinations are enumerated rightmost column first: each consists of a
/// rightmost column `j` with coefficient one and an arbitrary subset of the
/// `b - 1` columns before it (fewer near the left edge in the linear case).
pub fn syndrome_census(h: &BinaryMatrix, b: usize, cyclic: bool) -> Result<SyndromeCensus> {
    syndrome_census_with(h, b, cyclic, Budget::default())
}

pub fn syndrome_census_with(h: &BinaryMatrix, b: usize, cyclic: bool, budget: Budget) -> Result<SyndromeCensus> {
    let r = h.rows();
    if r == 0 || r > MAX_CENSUS_REDUNDANCY {
        return Err(Error::DegreeTooLarge(r, MAX_CENSUS_REDUNDANCY));
    }
    if b == 0 {
        return Err(Error::InvalidArgument("window width must be positive".into()));
    }
    let n = h.cols();
    let prev_len = |j: usize| if cyclic { (b - 1).min(n - 1) } else { (b - 1).min(j) };
    let total: u64 = (0..n).map(|j| 1u64 << prev_len(j)).sum();
    if total > budget.max_work {
        return Err(Error::BudgetExceeded(format!("census needs {total} combinations")));
    }
    let mut counts = vec![0u32; 1usize << r];
    for j in 0..n {
        let prev: Vec<u64> = (1..=prev_len(j)).map(|k| h.column((j + n - k) % n)).collect();
        let mut v = h.column(j);
        counts[v as usize] += 1;
        for k in 1u64..(1u64 << prev.len()) {
            v ^= prev[k.trailing_zeros() as usize];
            counts[v as usize] += 1;
        }
    }
    let mut histogram = BTreeMap::new();
    for &c in &counts[1..] {
        *histogram.entry(c as u64).or_insert(0u64) += 1;
    }
    let min_multiplicity = *histogram.keys().next().unwrap_or(&0);
    let max_multiplicity = *histogram.keys().next_back().unwrap_or(&0);
    let count_of_uncovered = histogram.get(&0).copied().unwrap_or(0);
    let zero_multiplicity = counts[0] as u64;
    let perfect = zero_multiplicity == 0 && min_multiplicity == 1 && max_multiplicity == 1;
    Ok(SyndromeCensus {
        b,
        cyclic,
        total_combinations: total,
        zero_multiplicity,
        min_multiplicity,
        max_multiplicity,
        count_of_uncovered,
        histogram,
        perfect,
    })
}

/// Code given either as a cyclic code or by a parity-check matrix.
#[derive(Debug, Clone, Copy)]
pub enum CodeSource<'a> {
    Cyclic(&'a CyclicCode),
    Matrix(&'a BinaryMatrix),
}

impl CodeSource<'_> {
    fn length(&self) -> usize {
        match self {
            CodeSource::Cyclic(c) => c.n(),
            CodeSource::Matrix(h) => h.cols(),
        }
    }

    /// Basis of the code as `n`-bit words.
    fn codeword_basis(&self) -> Result<Vec<u64>> {
        match self {
            CodeSource::Cyclic(c) => {
                let g = c.generator().to_u64().expect("r < 64 and n <= 20");
                Ok((0..c.n() - c.r()).map(|i| g << i).collect())
            }
            CodeSource::Matrix(h) => {
                if h.rows() == 0 {
                    return Err(Error::InvalidArgument("redundancy must be positive".into()));
                }
                h.kernel_basis()
            }
        }
    }
}

fn span(basis: &[u64]) -> Vec<u64> {
    let mut out = Vec::with_capacity(1 << basis.len());
    let mut v = 0u64;
    out.push(v);
    for k in 1u64..(1u64 << basis.len()) {
        v ^= basis[k.trailing_zeros() as usize];
        out.push(v);
    }
    out
}

/// First vector of `F_2^n` outside the union of `b`-burst balls around
/// codewords, or `None` when the balls cover the space.
pub fn geometric_uncovered(code: CodeSource<'_>, b: usize, cyclic: bool) -> Result<Option<u64>> {
    let n = code.length();
    if n > MAX_GEOMETRIC_LENGTH {
        return Err(Error::BudgetExceeded(format!(
            "geometric check enumerates 2^{n} vectors (limit 2^{MAX_GEOMETRIC_LENGTH})"
        )));
    }
    let codewords = span(&code.codeword_basis()?);
    let full = (1u64 << n) - 1;
    // Distinct burst vectors supported on a window of b positions.
    let mut is_burst = vec![false; 1usize << n];
    let width = b.min(n);
    let starts = if cyclic || width == n { n } else { n + 1 - width };
    for i in 0..starts {
        let window: Vec<u64> = (0..width).map(|k| 1u64 << ((i + k) % n)).collect();
        for e in span(&window) {
            is_burst[e as usize] = true;
        }
    }
    is_burst[0] = true;
    let bursts: Vec<u64> = (0..=full).filter(|&e| is_burst[e as usize]).collect();
    let mut covered = vec![false; 1usize << n];
    for &c in &codewords {
        for &e in &bursts {
            covered[(c ^ e) as usize] = true;
        }
    }
    Ok(covered.iter().position(|&x| !x).map(|v| v as u64))
}

/// `true` iff the burst balls of radius `b` around the codewords cover `F_2^n`.
pub fn geometric_is_covering(code: CodeSource<'_>, b: usize) -> Result<bool> {
    Ok(geometric_uncovered(code, b, true)?.is_none())
}

/// Radius from the geometric definition, by increasing `b`.
pub fn geometric_burst_radius(code: CodeSource<'_>, cyclic: bool) -> Result<RadiusResult> {
    let n = code.length();
    let mut last = None;
    for b in 0..=n {
        match geometric_uncovered(code, b, cyclic)? {
            None => {
                return Ok(RadiusResult {
                    b,
                    method: Method::Geometric,
                    witness: last.map_or(Witness::None, |v| Witness::Vector(syndrome_hex(v))),
                    cyclic,
                })
            }
            Some(v) => last = Some(v),
        }
    }
    unreachable!("b = n always covers")
}

/// Radius of a cyclic code via orbits of `X` acting on residues modulo `g`.
pub fn cyclic_burst_radius(code: &CyclicCode) -> Result<RadiusResult> {
    let all = orbits(code.generator())?;
    let worst = all.iter().map(|o| o.min_degree).max().expect("at least one nonzero residue");
    // Among orbits attaining the maximum, report the one with the smallest syndrome.
    let (rep, syn) = all
        .iter()
        .filter(|o| o.min_degree == worst)
        .map(|o| {
            let syn =
                (0..o.size.min(code.n())).map(|i| code.lc_eval(i, &o.representative)).min().expect("nonempty orbit");
            (o.representative.clone(), syn)
        })
        .min_by_key(|(_, s)| *s)
        .expect("worst orbit exists");
    Ok(RadiusResult {
        b: worst + 1,
        method: Method::Orbit,
        witness: Witness::Orbit { representative: rep, syndrome: syndrome_hex(syn) },
        cyclic: true,
    })
}

/// Radius as `r - min Z` over dual sequences, reading zero runs off the
/// Galois-mode outputs of each orbit representative.
pub fn cyclic_radius_by_zero_runs(code: &CyclicCode) -> Result<usize> {
    let word = WordModulus::new(code.generator())?;
    let min_run = orbits(code.generator())?
        .iter()
        .map(|o| {
            let f = o.representative.to_u64().expect("word residue");
            let seq = galois_output_word(word, f, o.size);
            max_zero_run_cyclic(&seq).expect("nonzero sequence")
        })
        .min()
        .expect("nonempty");
    Ok(code.r() - min_run)
}
