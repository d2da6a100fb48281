mod code;
mod emit;

use std::collections::BTreeMap;
use std::process::ExitCode;

use burstcover::bounds::bounds_report;
use burstcover::charsums::{pattern_theorem_check, CheckReport, PatternVariant};
use burstcover::cover::{verify_certificate, BurstCoverer};
use burstcover::cyclic::{make_bch, make_melas, CyclicCode};
use burstcover::gf2::BinaryPolynomial;
use burstcover::lfsr::{bits_to_string, dump_line, max_zero_run, orbits, pattern_count, period_of, LfsrSpec};
use burstcover::radius::{
    cyclic_burst_radius, geometric_burst_radius, matrix_burst_radius_with, Budget, CodeSource, RadiusResult,
};
use burstcover::suites;
use burstcover::table::{table1, Table1Options};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use emit::{opt, Emit, Output};

pub const EXIT_ERROR: u8 = 1;
pub const EXIT_VIOLATION: u8 = 2;
pub const EXIT_MISMATCH: u8 = 3;
pub const EXIT_BUDGET: u8 = 4;

const WORKERS_ENV: &str = "BURSTCOVER_WORKERS";

#[derive(Debug, thiserror::Error)]
#[error("{message}")]
pub struct CliError {
    pub code: u8,
    pub message: String,
}

impl CliError {
    pub fn usage(message: impl Into<String>) -> Self {
        Self { code: EXIT_ERROR, message: message.into() }
    }
}

impl From<burstcover::Error> for CliError {
    fn from(e: burstcover::Error) -> Self {
        let code = match e {
            burstcover::Error::BudgetExceeded(_) | burstcover::Error::DegreeTooLarge(..) => EXIT_BUDGET,
            _ => EXIT_ERROR,
        };
        Self { code, message: e.to_string() }
    }
}

#[derive(Parser)]
#[command(name = "burstcover", version, about = "Burst-covering radius of binary cyclic codes")]
struct Cli {
    /// Output format.
    #[arg(long, value_enum, global = true, default_value = "plain")]
    emit: Emit,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct CodeArgs {
    /// Descriptor JSON file, or bch:E:M, melas:M, generic:N:G.
    #[arg(long)]
    code: String,
    /// Primitive polynomial defining the field basis.
    #[arg(long)]
    modulus: Option<String>,
}

impl CodeArgs {
    fn resolve(&self) -> Result<CyclicCode, CliError> {
        code::resolve(&self.code, self.modulus.as_deref())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum MethodArg {
    Orbit,
    Matrix,
    Geometric,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Suite {
    Bounds,
    Patterns,
    Charsums,
    Appendix,
    Equivalence,
    Corollary,
    Pn,
    All,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum FamilyArg {
    Bch,
    Melas,
}

#[derive(Subcommand)]
enum Command {
    /// Compute the burst-covering radius.
    Radius {
        #[command(flatten)]
        code: CodeArgs,
        #[arg(long, value_enum, default_value = "orbit")]
        method: MethodArg,
        /// Non-cyclic windows (matrix and geometric methods only).
        #[arg(long)]
        linear: bool,
        /// Include the parity-check matrix, one hex row per line.
        #[arg(long)]
        dump_matrix: bool,
        /// Work budget for the brute-force method, in window evaluations.
        #[arg(long)]
        max_work: Option<u64>,
    },
    /// Report every bound and check it against the computed radius.
    Bounds {
        #[command(flatten)]
        code: CodeArgs,
        /// Skip computing the radius.
        #[arg(long)]
        no_radius: bool,
    },
    /// Find a burst of width at most b' producing a syndrome.
    Cover {
        #[command(flatten)]
        code: CodeArgs,
        /// Syndrome in hex; bit k is row k.
        #[arg(long)]
        syndrome: String,
        /// Width threshold; defaults to the radius.
        #[arg(long)]
        bprime: Option<usize>,
    },
    /// Exact radii of BCH(2, m) and Melas(m) against the reference table.
    Table1 {
        #[arg(long, default_value_t = 6)]
        m_min: usize,
        #[arg(long, default_value_t = 11)]
        m_max: usize,
        /// Hex modulus for the row of its degree (repeatable), or `all` for a full sensitivity sweep.
        #[arg(long)]
        modulus: Vec<String>,
        /// Report mismatches without failing.
        #[arg(long)]
        no_assert: bool,
        /// Fail on any mismatch under the chosen modulus, even when another modulus attains the value.
        #[arg(long)]
        strict: bool,
    },
    /// Period, zero runs and pattern counts of an LFSR sequence.
    LfsrStats {
        /// Connection polynomial.
        #[arg(long)]
        poly: String,
        /// Initial state a_0..a_{r-1} packed with a_i at bit i; omit to list every orbit.
        #[arg(long)]
        init: Option<String>,
        /// Pattern as a 0/1 string.
        #[arg(long)]
        pattern: Option<String>,
        /// Window length for pattern counts; defaults to one period.
        #[arg(long)]
        window: Option<usize>,
        /// Print the first LEN output bits as `initHex : bits`.
        #[arg(long, value_name = "LEN")]
        dump: Option<usize>,
    },
    /// Run a verification suite over the built-in corpus.
    Verify {
        #[arg(value_enum)]
        suite: Suite,
        /// Largest a and b for the integer inequality.
        #[arg(long, default_value_t = 40)]
        max: u64,
        /// Largest code length in the equivalence suite.
        #[arg(long, default_value_t = 63)]
        nmax: usize,
        /// Largest code length for the geometric check.
        #[arg(long, default_value_t = 16)]
        geometric_nmax: usize,
        /// Restrict the pattern suite to one family.
        #[arg(long, value_enum)]
        family: Option<FamilyArg>,
        /// Field degrees (repeatable).
        #[arg(long)]
        m: Vec<usize>,
        /// Largest pattern length; defaults to m.
        #[arg(long)]
        s_max: Option<usize>,
        #[arg(long, default_value_t = suites::DEFAULT_SEED)]
        seed: u64,
        #[arg(long, default_value_t = 200)]
        draws: usize,
        /// Largest d1 + d2 in the two-factor bound family.
        #[arg(long, default_value_t = 14)]
        max_sum: usize,
        /// Largest field degree for the exhaustive polynomial sums.
        #[arg(long, default_value_t = 8)]
        wcu_m_max: usize,
        /// Largest field degree for the sampled Laurent sums.
        #[arg(long, default_value_t = 10)]
        laurent_m_max: usize,
    },
}

#[derive(Serialize)]
struct RadiusOutput {
    code: burstcover::cyclic::CodeDescriptor,
    result: RadiusResult,
    #[serde(skip_serializing_if = "Option::is_none")]
    matrix: Option<Vec<String>>,
}

fn radius(
    args: &CodeArgs,
    method: MethodArg,
    linear: bool,
    dump: bool,
    max_work: Option<u64>,
) -> Result<Output, CliError> {
    let code = args.resolve()?;
    let h = code.parity_check_matrix();
    let result = match method {
        MethodArg::Orbit if linear => return Err(CliError::usage("the orbit method is cyclic only")),
        MethodArg::Orbit => cyclic_burst_radius(&code)?,
        MethodArg::Matrix => {
            let budget = max_work.map(|max_work| Budget { max_work }).unwrap_or_default();
            matrix_burst_radius_with(&h, !linear, budget)?
        }
        MethodArg::Geometric => geometric_burst_radius(CodeSource::Cyclic(&code), !linear)?,
    };
    let matrix = dump.then(|| h.to_hex_rows().lines().map(str::to_string).collect::<Vec<_>>());
    let mut out = Output::new(
        &RadiusOutput { code: code.descriptor(), result: result.clone(), matrix: matrix.clone() },
        vec!["n", "r", "g", "method", "cyclic", "b", "witness"],
    );
    let method = serde_json::to_value(result.method).expect("serializable");
    out.row(vec![
        code.n().to_string(),
        code.r().to_string(),
        code.generator().to_hex(),
        method.as_str().unwrap_or_default().to_string(),
        result.cyclic.to_string(),
        result.b.to_string(),
        opt(result.witness_syndrome().map(|s| format!("{s:#x}"))),
    ]);
    if let Some(rows) = matrix {
        out.notes.push("parity-check matrix (bit j of row i is H[i][j]):".into());
        out.notes.extend(rows);
    }
    Ok(out)
}

fn bounds(args: &CodeArgs, no_radius: bool) -> Result<(Output, u8), CliError> {
    let code = args.resolve()?;
    let mut report = bounds_report(&code);
    if !no_radius {
        report.check_radius(cyclic_burst_radius(&code)?.b);
    }
    let mut out = Output::new(&report, vec!["bound", "kind", "value", "applicable", "admits_radius"]);
    for e in &report.entries {
        let kind = serde_json::to_value(e.kind).expect("serializable");
        out.row(vec![
            e.name.to_string(),
            kind.as_str().unwrap_or_default().to_string(),
            opt(e.value),
            e.applicable.to_string(),
            opt(report.radius.map(|b| e.admits(b as i64))),
        ]);
    }
    out.notes.push(format!("lower {} <= b <= upper {}; radius {}", report.lower, report.upper, opt(report.radius)));
    out.notes.extend(report.violations.iter().map(|v| format!("violation: {v}")));
    let code = if report.violations.is_empty() { 0 } else { EXIT_VIOLATION };
    Ok((out, code))
}

#[derive(Serialize)]
struct CoverOutput {
    i: usize,
    f_hex: String,
    width: usize,
    iterations: usize,
    verified: bool,
}

fn parse_hex(s: &str) -> Result<u64, CliError> {
    u64::from_str_radix(s.trim_start_matches("0x").trim_start_matches("0X"), 16)
        .map_err(|_| CliError::usage(format!("`{s}` is not a hex number")))
}

fn cover(args: &CodeArgs, syndrome: &str, bprime: Option<usize>) -> Result<Output, CliError> {
    let code = args.resolve()?;
    let x = parse_hex(syndrome)?;
    let b = match bprime {
        Some(b) => b,
        None => cyclic_burst_radius(&code)?.b,
    };
    let cert = BurstCoverer::new(&code)?.cover(x, b)?;
    let verified = verify_certificate(&code, x, &cert, b);
    let res =
        CoverOutput { i: cert.i, f_hex: cert.f.to_hex(), width: cert.width, iterations: cert.iterations, verified };
    let mut out = Output::new(&res, vec!["syndrome", "bprime", "i", "f", "width", "iterations", "verified"]);
    out.row(vec![
        format!("{x:#x}"),
        b.to_string(),
        res.i.to_string(),
        res.f_hex.clone(),
        res.width.to_string(),
        res.iterations.to_string(),
        verified.to_string(),
    ]);
    if !verified {
        return Err(CliError { code: EXIT_ERROR, message: "certificate failed verification".into() });
    }
    Ok(out)
}

fn table(
    m_min: usize,
    m_max: usize,
    moduli: &[String],
    no_assert: bool,
    strict: bool,
) -> Result<(Output, u8), CliError> {
    if m_min > m_max || m_min < 6 {
        return Err(CliError::usage("rows must lie within m = 6..11"));
    }
    if m_max > 11 {
        return Err(CliError { code: EXIT_BUDGET, message: format!("m = {m_max} exceeds the supported rows 6..11") });
    }
    let mut opts = Table1Options { ms: (m_min..=m_max).collect(), ..Default::default() };
    for m in moduli {
        if m.eq_ignore_ascii_case("all") {
            opts.full_sensitivity = true;
            continue;
        }
        let p = BinaryPolynomial::parse(m)?;
        let d = p.degree().finite().unwrap_or(0);
        opts.moduli.insert(d, p);
    }
    let report = table1(&opts)?;
    let mut out =
        Output::new(&report, vec!["m", "modulus", "bch", "melas", "upper", "ref_bch", "ref_melas", "ref_upper"]);
    for r in &report.rows {
        let e = r.expected;
        out.row(vec![
            r.m.to_string(),
            r.modulus.clone(),
            r.bch.to_string(),
            r.melas.to_string(),
            r.upper.to_string(),
            opt(e.map(|e| e.bch)),
            opt(e.map(|e| e.melas)),
            opt(e.map(|e| e.upper)),
        ]);
    }
    for d in &report.dependences {
        out.notes.push(format!(
            "modulus-dependent: {:?}(m={}) is {} under the chosen modulus, {} under {}; observed {:?}",
            d.column,
            d.m,
            d.default_radius,
            d.expected,
            d.attained_by.join(", "),
            d.observed
        ));
    }
    if !report.sensitivity.is_empty() {
        let mut by_cell: BTreeMap<(usize, String), Vec<String>> = BTreeMap::new();
        for s in &report.sensitivity {
            by_cell.entry((s.m, format!("{:?}", s.column))).or_default().push(format!("{}->{}", s.modulus, s.radius));
        }
        for ((m, col), cells) in by_cell {
            out.notes.push(format!("sensitivity {col}(m={m}): {}", cells.join(" ")));
        }
    }
    out.notes.extend(report.unresolved.iter().map(|u| format!("unresolved: {u}")));
    let failed = !report.resolved() || (strict && !report.exact());
    Ok((out, if failed && !no_assert { EXIT_MISMATCH } else { 0 }))
}

#[derive(Serialize)]
struct OrbitRow {
    representative: String,
    size: usize,
    max_zero_run: usize,
}

#[derive(Serialize)]
struct LfsrOutput {
    poly: String,
    init: String,
    period: usize,
    max_zero_run: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pattern: Option<burstcover::lfsr::PatternStats>,
    #[serde(skip_serializing_if = "Option::is_none")]
    dump: Option<String>,
}

fn parse_bits(s: &str) -> Result<Vec<bool>, CliError> {
    s.chars()
        .map(|c| match c {
            '0' => Ok(false),
            '1' => Ok(true),
            _ => Err(CliError::usage(format!("pattern `{s}` must be a 0/1 string"))),
        })
        .collect()
}

fn lfsr_stats(
    poly: &str,
    init: Option<&str>,
    pattern: Option<&str>,
    window: Option<usize>,
    dump: Option<usize>,
) -> Result<Output, CliError> {
    let g = BinaryPolynomial::parse(poly)?;
    let Some(init) = init else {
        let mut rows = Vec::new();
        for o in orbits(&g)? {
            let spec = LfsrSpec::galois(g.clone(), o.representative.clone())?;
            rows.push(OrbitRow {
                representative: o.representative.to_hex(),
                size: o.size,
                max_zero_run: max_zero_run(&spec)?,
            });
        }
        let mut out = Output::new(&rows, vec!["representative", "size", "max_zero_run"]);
        for r in &rows {
            out.row(vec![r.representative.clone(), r.size.to_string(), r.max_zero_run.to_string()]);
        }
        return Ok(out);
    };
    let r = g.degree().finite().unwrap_or(0);
    let word = parse_hex(init)?;
    if r < 64 && word >> r != 0 {
        return Err(CliError::usage(format!("initial state {init} has more than {r} bits")));
    }
    let spec = LfsrSpec::fibonacci(g.clone(), (0..r).map(|i| word >> i & 1 == 1).collect())?;
    let period = period_of(&spec)?;
    let stats = match pattern {
        Some(p) => Some(pattern_count(&spec, &parse_bits(p)?, window.unwrap_or(period.len()))?),
        None => None,
    };
    let res = LfsrOutput {
        poly: g.to_hex(),
        init: BinaryPolynomial::from_coeffs(spec.fibonacci_init()).to_hex(),
        period: period.len(),
        max_zero_run: max_zero_run(&spec)?,
        pattern: stats,
        dump: dump.map(|len| dump_line(&spec, len)),
    };
    let mut out = Output::new(&res, vec!["poly", "init", "period", "max_zero_run", "pattern", "window", "count"]);
    out.row(vec![
        res.poly.clone(),
        res.init.clone(),
        res.period.to_string(),
        res.max_zero_run.to_string(),
        opt(res.pattern.as_ref().map(|p| p.pattern.clone())),
        opt(res.pattern.as_ref().map(|p| p.window)),
        opt(res.pattern.as_ref().map(|p| p.count)),
    ]);
    if let Some(d) = &res.dump {
        out.notes.push(d.clone());
    }
    if period.len() <= 64 && dump.is_none() {
        out.notes.push(format!("period: {}", bits_to_string(&period)));
    }
    Ok(out)
}

struct VerifyArgs {
    max: u64,
    nmax: usize,
    geometric_nmax: usize,
    family: Option<FamilyArg>,
    ms: Vec<usize>,
    s_max: Option<usize>,
    seed: u64,
    draws: usize,
    max_sum: usize,
    wcu_m_max: usize,
    laurent_m_max: usize,
}

fn run_suite(suite: Suite, a: &VerifyArgs) -> Result<Vec<CheckReport>, CliError> {
    let ms = |default: &[usize]| {
        if a.ms.is_empty() {
            default.to_vec()
        } else {
            a.ms.clone()
        }
    };
    let report = match suite {
        Suite::Bounds => suites::bounds_suite(a.max_sum)?,
        Suite::Patterns => match a.family {
            None if a.s_max.is_none() => suites::patterns_suite(&ms(&[6, 8]))?,
            family => {
                let mut report = CheckReport::new("pattern frequencies");
                for m in ms(&[6, 8]) {
                    for (fam, variant) in
                        [(FamilyArg::Bch, PatternVariant::EqualDegree), (FamilyArg::Melas, PatternVariant::MelasMixed)]
                    {
                        if family.is_some_and(|f| f != fam) {
                            continue;
                        }
                        let code = match fam {
                            FamilyArg::Bch => make_bch(2, m)?,
                            FamilyArg::Melas => make_melas(m)?,
                        };
                        for s in 1..=a.s_max.unwrap_or(m).min(m) {
                            report.absorb(pattern_theorem_check(&code, variant, s)?);
                        }
                    }
                }
                report
            }
        },
        Suite::Charsums => suites::charsums_suite(a.wcu_m_max, a.laurent_m_max, a.draws, a.seed)?,
        Suite::Appendix => suites::appendix_suite(a.max)?,
        Suite::Equivalence => suites::equivalence_suite(a.nmax, a.geometric_nmax)?,
        Suite::Corollary => suites::corollary_suite(&ms(&[6, 8, 10]))?,
        Suite::Pn => suites::pn_suite(ms(&[10]).into_iter().max().unwrap_or(10))?,
        Suite::All => {
            let mut all = Vec::new();
            for s in [
                Suite::Equivalence,
                Suite::Bounds,
                Suite::Patterns,
                Suite::Corollary,
                Suite::Charsums,
                Suite::Appendix,
                Suite::Pn,
            ] {
                all.extend(run_suite(s, &VerifyArgs { ms: Vec::new(), family: None, s_max: None, ..*a })?);
            }
            return Ok(all);
        }
    };
    Ok(vec![report])
}

fn verify(suite: Suite, args: &VerifyArgs) -> Result<(Output, u8), CliError> {
    let reports = run_suite(suite, args)?;
    let header = vec!["theorem", "cases_checked", "violations", "seed"];
    let mut out = if reports.len() == 1 { Output::new(&reports[0], header) } else { Output::new(&reports, header) };
    for r in &reports {
        out.row(vec![r.theorem.clone(), r.cases_checked.to_string(), r.violations.len().to_string(), opt(r.seed)]);
        out.notes.extend(r.violations.iter().map(|v| format!("violation: {v}")));
    }
    let failed = reports.iter().any(|r| !r.passed());
    Ok((out, if failed { EXIT_VIOLATION } else { 0 }))
}

fn configure_workers() -> Result<(), CliError> {
    let Ok(v) = std::env::var(WORKERS_ENV) else {
        return Ok(());
    };
    let n: usize = v
        .parse()
        .ok()
        .filter(|&n| n > 0)
        .ok_or_else(|| CliError::usage(format!("{WORKERS_ENV}={v} is not a positive integer")))?;
    rayon::ThreadPoolBuilder::new().num_threads(n).build_global().map_err(|e| CliError::usage(e.to_string()))
}

fn run(cli: Cli) -> Result<(Output, u8), CliError> {
    configure_workers()?;
    match cli.command {
        Command::Radius { code, method, linear, dump_matrix, max_work } => {
            Ok((radius(&code, method, linear, dump_matrix, max_work)?, 0))
        }
        Command::Bounds { code, no_radius } => bounds(&code, no_radius),
        Command::Cover { code, syndrome, bprime } => Ok((cover(&code, &syndrome, bprime)?, 0)),
        Command::Table1 { m_min, m_max, modulus, no_assert, strict } => {
            table(m_min, m_max, &modulus, no_assert, strict)
        }
        Command::LfsrStats { poly, init, pattern, window, dump } => {
            Ok((lfsr_stats(&poly, init.as_deref(), pattern.as_deref(), window, dump)?, 0))
        }
        Command::Verify {
            suite,
            max,
            nmax,
            geometric_nmax,
            family,
            m,
            s_max,
            seed,
            draws,
            max_sum,
            wcu_m_max,
            laurent_m_max,
        } => verify(
            suite,
            &VerifyArgs {
                max,
                nmax,
                geometric_nmax,
                family,
                ms: m,
                s_max,
                seed,
                draws,
                max_sum,
                wcu_m_max,
                laurent_m_max,
            },
        ),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let emit = cli.emit;
    match run(cli) {
        Ok((out, code)) => {
            print!("{}", out.render(emit));
            ExitCode::from(code)
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.code)
        }
    }
}
