use std::panic::{catch_unwind, AssertUnwindSafe};
use std::process::ExitCode;
use std::time::{Duration, Instant};

use burstcover::charsums::sample_indices;
use burstcover::cover::{verify_certificate, BurstCoverer};
use burstcover::cyclic::{make_bch, standard_corpus};
use burstcover::matrix::BinaryMatrix;
use burstcover::radius::{cyclic_burst_radius, geometric_uncovered, matrix_burst_radius, CodeSource};
use burstcover::suites;
use burstcover::table::{table1, Column, Table1Options, REFERENCE};
use burstcover::Error;

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn check(cond: bool, msg: impl Into<String>) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg.into())
    }
}

fn within(elapsed: Duration, limit: Duration) -> Result<(), String> {
    check(elapsed <= limit, format!("took {elapsed:.2?}, limit {limit:.0?}"))
}

fn table_rows() -> Outcome {
    let start = Instant::now();
    let small = table1(&Table1Options { ms: (6..=9).collect(), ..Default::default() }).map_err(|e| e.to_string())?;
    let small_time = start.elapsed();
    let large = table1(&Table1Options { ms: vec![10, 11], ..Default::default() }).map_err(|e| e.to_string())?;
    let large_time = start.elapsed() - small_time;
    let rows: Vec<_> = small.rows.iter().chain(&large.rows).collect();
    for (row, want) in rows.iter().zip(REFERENCE.iter()) {
        check(row.upper == want.upper, format!("m={}: upper {} vs {}", row.m, row.upper, want.upper))?;
    }
    check(small.resolved() && large.resolved(), format!("unresolved: {:?} {:?}", small.unresolved, large.unresolved))?;
    let deps: Vec<_> = small.dependences.iter().chain(&large.dependences).collect();
    for row in &rows {
        for col in row.mismatches() {
            check(
                deps.iter().any(|d| d.m == row.m && d.column == col && !d.attained_by.is_empty()),
                format!("m={} {col:?} mismatch not flagged", row.m),
            )?;
        }
    }
    within(small_time, Duration::from_secs(10))?;
    within(large_time, Duration::from_secs(300))?;
    let bch: Vec<_> = rows.iter().map(|r| r.bch).collect();
    let melas: Vec<_> = rows.iter().map(|r| r.melas).collect();
    let flagged: Vec<String> = deps
        .iter()
        .map(|d| {
            let col = match d.column {
                Column::Bch => "BCH",
                Column::Melas => "Melas",
            };
            format!("{col}({}) default {} -> {} under {}", d.m, d.default_radius, d.expected, d.attained_by.join(","))
        })
        .collect();
    Ok(format!(
        "BCH {bch:?}, Melas {melas:?}; modulus-dependent: [{}]; m<=9 {small_time:.2?}, m=10,11 {large_time:.2?}",
        flagged.join("; ")
    ))
}

fn example_fixtures() -> Outcome {
    let start = Instant::now();
    let h = BinaryMatrix::from_rows(&[
        vec![1, 1, 1, 1, 1, 1, 1, 1],
        vec![0, 0, 0, 0, 1, 1, 1, 1],
        vec![0, 0, 1, 1, 0, 0, 1, 1],
        vec![0, 1, 0, 1, 0, 1, 0, 1],
    ])
    .map_err(|e| e.to_string())?;
    let hp = BinaryMatrix::from_rows(&[
        vec![1, 1, 1, 1, 1, 1, 1, 1],
        vec![0, 0, 1, 1, 1, 0, 0, 1],
        vec![0, 0, 0, 1, 1, 1, 1, 0],
        vec![0, 1, 0, 0, 1, 1, 0, 1],
    ])
    .map_err(|e| e.to_string())?;
    let b = matrix_burst_radius(&h, false).map_err(|e| e.to_string())?.b;
    let bp = matrix_burst_radius(&hp, false).map_err(|e| e.to_string())?.b;
    check((b, bp) == (4, 3), format!("H -> {b}, H' -> {bp}"))?;
    within(start.elapsed(), Duration::from_secs(1))?;
    Ok(format!("H -> {b}, H' -> {bp} in {:.2?}", start.elapsed()))
}

fn oracle_equivalence() -> Outcome {
    let start = Instant::now();
    let corpus = standard_corpus().map_err(|e| e.to_string())?;
    check(corpus.len() >= 30, format!("corpus has {} codes", corpus.len()))?;
    for e in &corpus {
        check(e.code.n() <= 63 && e.code.r() <= 14, format!("{} out of range", e.name))?;
    }
    let report = suites::equivalence_suite(63, 0).map_err(|e| e.to_string())?;
    check(report.passed(), report.violations.join("; "))?;
    within(start.elapsed(), Duration::from_secs(30))?;
    Ok(format!("{} codes agree in {:.2?}", corpus.len(), start.elapsed()))
}

fn geometric_equivalence() -> Outcome {
    let start = Instant::now();
    let mut count = 0;
    for e in standard_corpus().map_err(|e| e.to_string())?.iter().filter(|e| e.code.n() <= 16) {
        let radius = cyclic_burst_radius(&e.code).map_err(|e| e.to_string())?.b;
        for b in 0..=e.code.n() {
            count += 1;
            let covers =
                geometric_uncovered(CodeSource::Cyclic(&e.code), b, true).map_err(|e| e.to_string())?.is_none();
            check(covers == (b >= radius), format!("{} at b = {b}: {covers}, radius {radius}", e.name))?;
        }
    }
    within(start.elapsed(), Duration::from_secs(60))?;
    Ok(format!("{count} (code, b) pairs in {:.2?}", start.elapsed()))
}

fn bound_sandwich() -> Outcome {
    let start = Instant::now();
    let report = suites::bounds_suite(14).map_err(|e| e.to_string())?;
    check(report.passed(), report.violations.join("; "))?;
    Ok(format!("{} codes, 0 violations in {:.2?}", report.cases_checked, start.elapsed()))
}

fn pattern_theorems() -> Outcome {
    let start = Instant::now();
    let report = suites::patterns_suite(&[6, 8]).map_err(|e| e.to_string())?;
    check(report.passed(), report.violations.iter().take(5).cloned().collect::<Vec<_>>().join("; "))?;
    within(start.elapsed(), Duration::from_secs(300))?;
    Ok(format!("{} cases, 0 violations in {:.2?}", report.cases_checked, start.elapsed()))
}

fn corollary() -> Outcome {
    let report = suites::corollary_suite(&[6, 8, 10]).map_err(|e| e.to_string())?;
    check(report.passed(), report.violations.iter().take(5).cloned().collect::<Vec<_>>().join("; "))?;
    Ok(format!("{} (sequence, pattern) pairs, 0 misses", report.cases_checked))
}

fn character_sums() -> Outcome {
    let start = Instant::now();
    let report = suites::charsums_suite(8, 10, 200, suites::DEFAULT_SEED).map_err(|e| e.to_string())?;
    check(report.passed(), report.violations.iter().take(5).cloned().collect::<Vec<_>>().join("; "))?;
    Ok(format!(
        "{} sums, 0 violations, seed {:#x}, {:.2?}",
        report.cases_checked,
        suites::DEFAULT_SEED,
        start.elapsed()
    ))
}

fn algorithm() -> Outcome {
    let code = make_bch(2, 8).map_err(|e| e.to_string())?;
    let coverer = BurstCoverer::new(&code).map_err(|e| e.to_string())?;
    let b_prime = 12;
    let mut queries = sample_indices(1 << code.r(), 4096, suites::DEFAULT_SEED);
    queries.push(0);
    let start = Instant::now();
    let mut certs = Vec::with_capacity(queries.len());
    for &x in &queries {
        certs.push(coverer.cover(x, b_prime).map_err(|e| format!("{x:#x}: {e}"))?);
    }
    let per_query = start.elapsed() / queries.len() as u32;
    for (&x, cert) in queries.iter().zip(&certs) {
        check(verify_certificate(&code, x, cert, b_prime), format!("certificate for {x:#x} fails"))?;
        check(cert.iterations <= code.n(), format!("{x:#x}: {} iterations", cert.iterations))?;
    }
    check(per_query < Duration::from_millis(1), format!("{per_query:.2?} per query"))?;
    let small = make_bch(2, 6).map_err(|e| e.to_string())?;
    let b = cyclic_burst_radius(&small).map_err(|e| e.to_string())?.b;
    let guard = BurstCoverer::new(&small).map_err(|e| e.to_string())?;
    let tripped = (0..1u64 << small.r())
        .filter(|&x| matches!(guard.cover(x, b - 1), Err(Error::ThresholdBelowRadius { .. })))
        .count();
    check(tripped > 0, "guard never fired")?;
    Ok(format!(
        "{} certificates verified, {per_query:.2?}/query; BCH(2,6) at b'={}: {tripped} below-radius reports",
        queries.len(),
        b - 1
    ))
}

fn appendix() -> Outcome {
    let start = Instant::now();
    let report = suites::appendix_suite(40).map_err(|e| e.to_string())?;
    check(report.passed() && report.cases_checked == 1600, report.violations.join("; "))?;
    within(start.elapsed(), Duration::from_secs(1))?;
    Ok(format!("1600 cases in {:.2?}", start.elapsed()))
}

fn pn_baseline() -> Outcome {
    let report = suites::pn_suite(10).map_err(|e| e.to_string())?;
    check(report.passed(), report.violations.join("; "))?;
    Ok(format!("{} primitive polynomials", report.cases_checked))
}

fn main() -> ExitCode {
    let criteria: [Criterion; 11] = [
        ("table rows m = 6..11", table_rows),
        ("extended Hamming fixtures", example_fixtures),
        ("orbit = brute-force radius", oracle_equivalence),
        ("geometric characterization", geometric_equivalence),
        ("bound sandwich", bound_sandwich),
        ("pattern-frequency theorems", pattern_theorems),
        ("pattern containment", corollary),
        ("character-sum bounds", character_sums),
        ("covering algorithm", algorithm),
        ("two-factor inequality", appendix),
        ("maximal-length baseline", pn_baseline),
    ];
    let mut failed = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        let outcome = catch_unwind(AssertUnwindSafe(run)).unwrap_or_else(|_| Err("panicked".into()));
        match outcome {
            Ok(detail) => println!("PASS {:>2} {name}: {detail}", i + 1),
            Err(why) => {
                failed += 1;
                println!("FAIL {:>2} {name}: {why}", i + 1);
            }
        }
    }
    println!("acceptance: {} passed, {failed} failed", criteria.len() - failed);
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
