//! Corpus-wide verification drivers. Each returns a [`CheckReport`]; an empty
//! violation list means every checked case agreed.

use rayon::prelude::*;

use crate::bounds::bounds_report;
use crate::charsums::{
    appendix_inequality_check, laurent_suite, niederreiter_suite, pattern_theorem_check, wcu_exhaustive, CheckReport,
    PatternVariant,
};
use crate::cyclic::{make_bch, make_cyclic_code, make_melas, mixed_degree_corpus, standard_corpus, CorpusEntry};
use crate::error::Result;
use crate::gf2::factor::{gcd_u64, lcm_u64};
use crate::gf2::{default_primitive, poly_order, primitive_polynomials, FieldContext};
use crate::lfsr::{galois_output_word, max_zero_run_cyclic, orbits, pattern_histogram, WordModulus};
use crate::radius::{
    cyclic_burst_radius, cyclic_radius_by_zero_runs, geometric_uncovered, matrix_burst_radius, CodeSource,
};

pub const DEFAULT_SEED: u64 = 0x5eed_2024;

/// Orbit, zero-run and matrix radii agree on every corpus code with `n <= nmax`;
/// for `n <= geometric_nmax` the geometric definition switches from false to
/// true exactly at the radius.
pub fn equivalence_suite(nmax: usize, geometric_nmax: usize) -> Result<CheckReport> {
    let mut report = CheckReport::new("radius equivalence");
    report.hypotheses.push(format!("corpus codes with n <= {nmax}; geometric check for n <= {geometric_nmax}"));
    let corpus: Vec<CorpusEntry> = standard_corpus()?.into_iter().filter(|e| e.code.n() <= nmax).collect();
    let results: Vec<Result<(u64, Vec<String>)>> = corpus
        .par_iter()
        .map(|e| {
            let code = &e.code;
            let mut bad = Vec::new();
            let mut cases = 1;
            let orbit = cyclic_burst_radius(code)?.b;
            let runs = cyclic_radius_by_zero_runs(code)?;
            let matrix = matrix_burst_radius(&code.parity_check_matrix(), true)?.b;
            if orbit != matrix || orbit != runs {
                bad.push(format!("{}: orbit {orbit}, zero runs {runs}, matrix {matrix}", e.name));
            }
            if code.n() <= geometric_nmax {
                for b in 0..=code.n() {
                    cases += 1;
                    let covers = geometric_uncovered(CodeSource::Cyclic(code), b, true)?.is_none();
                    if covers != (b >= orbit) {
                        bad.push(format!("{}: geometric covering at b = {b} is {covers}, radius {orbit}", e.name));
                    }
                }
            }
            Ok((cases, bad))
        })
        .collect();
    for r in results {
        let (cases, bad) = r?;
        report.cases_checked += cases;
        report.violations.extend(bad);
    }
    Ok(report)
}

/// Codes with two primitive factors of degrees `d1 < d2`, `d1 + d2 <= max_sum`,
/// using the default primitive polynomial of each degree.
pub fn two_factor_codes(max_sum: usize) -> Result<Vec<CorpusEntry>> {
    let mut out = Vec::new();
    for d1 in 1..max_sum {
        for d2 in d1 + 1..=max_sum - d1 {
            let (g1, g2) = (default_primitive(d1), default_primitive(d2));
            let n = lcm_u64(poly_order(&g1)?, poly_order(&g2)?) as usize;
            let code = make_cyclic_code(n, g1.mul(&g2))?;
            out.push(CorpusEntry { name: format!("{}*{}", g1.to_hex(), g2.to_hex()), code });
        }
    }
    Ok(out)
}

fn part3_applies(d1: usize, d2: usize) -> bool {
    d1 < d2 && ((gcd_u64(d1 as u64, d2 as u64) as usize) < d2 - d1 || d2 - d1 <= 2)
}

/// Every applicable bound brackets the radius, on the standard corpus, the
/// mixed-degree corpus and the two-primitive-factor family.
pub fn bounds_suite(max_sum: usize) -> Result<CheckReport> {
    let mut report = CheckReport::new("bound sandwich");
    report.hypotheses.push(format!("standard and mixed corpora; two primitive factors with d1 + d2 <= {max_sum}"));
    let mut codes = standard_corpus()?;
    codes.extend(mixed_degree_corpus()?);
    let pairs = two_factor_codes(max_sum)?;
    let results: Vec<Result<(Vec<String>, Vec<String>)>> = codes
        .par_iter()
        .chain(pairs.par_iter())
        .map(|e| {
            let code = &e.code;
            let b = cyclic_burst_radius(code)?.b;
            let mut rep = bounds_report(code);
            rep.check_radius(b);
            let mut bad: Vec<String> = rep.violations.iter().map(|v| format!("{}: {v}", e.name)).collect();
            let mut notes = Vec::new();
            let d = code.degrees();
            if d.len() == 2 && code.factors().iter().all(|f| f.primitive) && d[0] < d[1] {
                if part3_applies(d[0], d[1]) {
                    let brute = matrix_burst_radius(&code.parity_check_matrix(), true)?.b;
                    if brute != d[1] + 1 || brute != b {
                        bad.push(format!("{}: brute force {brute}, orbit {b}, expected {}", e.name, d[1] + 1));
                    }
                } else if b != d[1] + 1 {
                    notes.push(format!("{}: outside the gcd conditions, radius {b} differs from d2 + 1", e.name));
                } else {
                    notes.push(format!("{}: outside the gcd conditions, radius still d2 + 1 = {b}", e.name));
                }
            }
            Ok((bad, notes))
        })
        .collect();
    for r in results {
        let (bad, notes) = r?;
        report.cases_checked += 1;
        report.violations.extend(bad);
        report.notes.extend(notes);
    }
    Ok(report)
}

/// Pattern theorems for BCH(2, m) and Melas(m), every `s <= m`, plus
/// Niederreiter's bound over the mixed-degree corpus.
pub fn patterns_suite(ms: &[usize]) -> Result<CheckReport> {
    let mut report = CheckReport::new("pattern frequencies");
    for &m in ms {
        let bch = make_bch(2, m)?;
        let melas = make_melas(m)?;
        for s in 1..=m {
            report.absorb(pattern_theorem_check(&bch, PatternVariant::EqualDegree, s)?);
            report.absorb(pattern_theorem_check(&melas, PatternVariant::MelasMixed, s)?);
        }
    }
    report.absorb(niederreiter_corpus_suite()?);
    Ok(report)
}

pub fn niederreiter_corpus_suite() -> Result<CheckReport> {
    let mut report = CheckReport::new("niederreiter frequency bound");
    for e in mixed_degree_corpus()? {
        report.absorb(niederreiter_suite(e.code.generator())?);
    }
    Ok(report)
}

/// Every nonzero dual sequence of BCH(2, m) contains every pattern of length
/// `floor(m/2 - 1)`, hence every shorter one.
pub fn corollary_suite(ms: &[usize]) -> Result<CheckReport> {
    let mut report = CheckReport::new("pattern containment");
    for &m in ms {
        let s = (m / 2).saturating_sub(1);
        report.hypotheses.push(format!("BCH(2,{m}), s = {s}"));
        if s == 0 {
            continue;
        }
        let code = make_bch(2, m)?;
        let word = WordModulus::new(code.generator())?;
        let window = (1usize << m) - 1;
        let misses: Vec<(u64, Vec<String>)> = orbits(code.generator())?
            .par_iter()
            .map(|o| {
                let f = o.representative.to_u64().expect("word");
                let seq = galois_output_word(word, f, window);
                let bad = pattern_histogram(&seq, s, window)
                    .iter()
                    .enumerate()
                    .filter(|(_, &n)| n == 0)
                    .map(|(y, _)| format!("m={m} init {f:#x} misses {y:0s$b}"))
                    .collect();
                (1u64 << s, bad)
            })
            .collect();
        for (c, bad) in misses {
            report.cases_checked += c;
            report.violations.extend(bad);
        }
    }
    Ok(report)
}

/// WCU exhaustively for `m <= wcu_mmax`, Laurent sampled for `2 <= m <= laurent_mmax`.
pub fn charsums_suite(wcu_mmax: usize, laurent_mmax: usize, draws: usize, seed: u64) -> Result<CheckReport> {
    let mut report = CheckReport::new("character sums");
    for m in 1..=wcu_mmax {
        report.absorb(wcu_exhaustive(&FieldContext::default_for(m)?));
    }
    let ms: Vec<usize> = (2..=laurent_mmax).collect();
    let laurent = laurent_suite(&ms, &[1, 3, 5], draws, seed)?;
    report.seed = laurent.seed;
    report.absorb(laurent);
    Ok(report)
}

pub fn appendix_suite(max: u64) -> Result<CheckReport> {
    let mut report = CheckReport::new("two-factor integer inequality");
    report.hypotheses.push(format!("1 <= a, b <= {max}"));
    for a in 1..=max {
        for b in 1..=max {
            report.cases_checked += 1;
            if !appendix_inequality_check(a, b)? {
                report.violations.push(format!("a={a}, b={b}"));
            }
        }
    }
    Ok(report)
}

/// Maximal-length sequences: every nonzero `m`-pattern once per period, no zero
/// `m`-pattern, longest zero run `m - 1`.
pub fn pn_suite(mmax: usize) -> Result<CheckReport> {
    let mut report = CheckReport::new("maximal-length sequences");
    for m in 1..=mmax {
        for g in primitive_polynomials(m) {
            report.cases_checked += 1;
            let word = WordModulus::new(&g)?;
            let period = (1usize << m) - 1;
            let seq = galois_output_word(word, 1, period);
            let hist = pattern_histogram(&seq, m, period);
            if hist[0] != 0 || hist[1..].iter().any(|&c| c != 1) {
                report.violations.push(format!("{}: pattern counts not uniform", g.to_hex()));
            }
            if max_zero_run_cyclic(&seq) != Some(m - 1) {
                report.violations.push(format!("{}: zero run differs from m - 1", g.to_hex()));
            }
        }
    }
    Ok(report)
}
