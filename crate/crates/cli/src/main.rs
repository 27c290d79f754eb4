//! Command-line front end: run the identity suite or individual verifiers,
//! enumerate path tables, and emit machine-readable reports.
//!
//! Exit codes: 0 when every selected check passes, 1 when any verification
//! fails, 2 on usage errors (bad flags, out-of-range sizes, unknown names).

mod registry;
mod report;

use std::collections::BTreeMap;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use nccb_core::identities::{
    realize_capelli, realize_weyl_example, verify_berezin_calibration,
    verify_cauchy_binet_quantum, verify_cbh, verify_cross_representation,
    verify_direct_grassmann, verify_grassmann_rep, verify_holomorphic_coldet, verify_lem_faf,
    verify_lukasiewicz_agreement, verify_multilin, verify_oracle_independence,
    verify_oscillator_rep, verify_prop_old, verify_support_lemmas, Status, VerificationResult,
};
use nccb_core::lukasiewicz::{c_formula, enumerate_excursions};
use nccb_core::ncdet::DetVariant;
use nccb_core::ring::{rational_string, ratio, Rational, Ring};
use nccb_core::series::TruncSeries;

use registry::{jobs_for, run_jobs, Job, SuiteConfig, DEFAULT_SEED, IDENTITY_NAMES};
use report::{Format, Report};

#[derive(Parser)]
#[command(
    name = "nccb",
    version,
    about = "Exact verification of noncommutative Cauchy-Binet and Capelli-type identities"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run the verification suite over a size grid
    Suite(SuiteArgs),
    /// Run one named verifier
    Verify(VerifyArgs),
    /// Enumerate Łukasiewicz excursions of a given length
    Paths(PathsArgs),
    /// Check the specialized Campbell-Baker-Hausdorff identity for a polynomial f
    Cbh(CbhArgs),
}

#[derive(Args, Clone)]
struct CommonArgs {
    /// Output format
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// Suppress the timestamp and timing fields (byte-identical reports)
    #[arg(long)]
    no_timestamp: bool,
    /// Write the report to this file instead of stdout
    #[arg(long)]
    out: Option<PathBuf>,
    /// Parallelism degree for independent verifications
    #[arg(long)]
    jobs: Option<usize>,
}

#[derive(Args)]
struct SuiteArgs {
    /// Comma-separated identity names (default: all)
    #[arg(long)]
    identities: Option<String>,
    /// Largest matrix size n
    #[arg(long)]
    n_max: Option<usize>,
    /// Largest column count m
    #[arg(long)]
    m_max: Option<usize>,
    /// Largest flavor count s_dim
    #[arg(long)]
    s_dim_max: Option<usize>,
    /// Grading order K for the CBH checks
    #[arg(long)]
    cbh_order: Option<usize>,
    /// Exhaustive path-sweep length bound
    #[arg(long)]
    paths_len: Option<usize>,
    /// Seed for the randomized sweeps
    #[arg(long)]
    seed: Option<u64>,
    /// Plain `key = value` config file with the same keys as the flags
    #[arg(long)]
    config: Option<PathBuf>,
    #[command(flatten)]
    common: CommonArgs,
}

#[derive(Args)]
struct VerifyArgs {
    /// Identity name (see `suite --help` for the list)
    name: String,
    /// Matrix size n
    #[arg(long, default_value_t = 2)]
    n: usize,
    /// Column count m (selects the symbolic α/β realization when given)
    #[arg(long)]
    m: Option<usize>,
    /// Flavor count s_dim (selects the symbolic α/β realization when given)
    #[arg(long)]
    s_dim: Option<usize>,
    /// Determinant variant (default: both where applicable)
    #[arg(long)]
    variant: Option<String>,
    /// Geometric-kernel truncation override (oscillator only)
    #[arg(long)]
    trunc: Option<usize>,
    /// Grading / expansion order (cbh, lukasiewicz)
    #[arg(long)]
    order: Option<usize>,
    /// Comma-separated rational coefficients of f, constant term first
    #[arg(long)]
    f: Option<String>,
    /// Value of s (a rational, or "symbolic")
    #[arg(long)]
    s: Option<String>,
    /// Number of substitution levels k (multilin)
    #[arg(long, default_value_t = 1)]
    k: usize,
    /// Seed for randomized parts
    #[arg(long, default_value_t = DEFAULT_SEED)]
    seed: u64,
    #[command(flatten)]
    common: CommonArgs,
}

#[derive(Args)]
struct PathsArgs {
    /// Path length
    #[arg(long)]
    len: usize,
    /// Print only the excursion count
    #[arg(long, conflicts_with = "table")]
    count: bool,
    /// Print one line per excursion with its weight
    #[arg(long)]
    table: bool,
}

#[derive(Args)]
struct CbhArgs {
    /// Grading order K
    #[arg(long, default_value_t = 6)]
    order: usize,
    /// Comma-separated rational coefficients of f, constant term first
    #[arg(long)]
    f: String,
    #[command(flatten)]
    common: CommonArgs,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match cli.command {
        Command::Suite(args) => run_suite(args),
        Command::Verify(args) => run_verify(args),
        Command::Paths(args) => run_paths(args),
        Command::Cbh(args) => run_cbh(args),
    }
}

fn usage_error(msg: impl std::fmt::Display) -> ExitCode {
    eprintln!("error: {msg}");
    ExitCode::from(2)
}

fn parse_rational(text: &str) -> Result<Rational, String> {
    let text = text.trim();
    let (num, den) = match text.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (text, "1"),
    };
    let n: i64 = num.parse().map_err(|_| format!("bad rational {text:?}"))?;
    let d: i64 = den.parse().map_err(|_| format!("bad rational {text:?}"))?;
    if d == 0 {
        return Err(format!("zero denominator in {text:?}"));
    }
    Ok(ratio(n, d))
}

fn parse_series(text: &str, min_order: usize) -> Result<TruncSeries<Rational>, String> {
    let coeffs: Result<Vec<Rational>, String> =
        text.split(',').map(parse_rational).collect();
    let coeffs = coeffs?;
    if coeffs.is_empty() {
        return Err("empty coefficient list".to_string());
    }
    let order = (coeffs.len() - 1).max(min_order);
    Ok(TruncSeries::from_poly(&coeffs, order))
}

fn load_config_file(path: &PathBuf) -> Result<BTreeMap<String, String>, String> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| format!("cannot read config {}: {e}", path.display()))?;
    let mut map = BTreeMap::new();
    for (lineno, line) in text.lines().enumerate() {
        let line = line.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let (key, value) = line
            .split_once('=')
            .ok_or_else(|| format!("line {}: expected `key = value`", lineno + 1))?;
        map.insert(key.trim().to_string(), value.trim().to_string());
    }
    Ok(map)
}

fn emit(report: &Report, common: &CommonArgs) -> ExitCode {
    let rendered = report.render(common.format);
    if let Some(path) = &common.out {
        if let Err(e) = std::fs::write(path, &rendered) {
            return usage_error(format!("cannot write {}: {e}", path.display()));
        }
    } else {
        print!("{rendered}");
    }
    match report.overall() {
        Status::Pass => ExitCode::SUCCESS,
        Status::Fail => ExitCode::from(1),
    }
}

fn run_suite(args: SuiteArgs) -> ExitCode {
    let mut cfg = SuiteConfig::default();
    let mut file_values = BTreeMap::new();
    if let Some(path) = &args.config {
        match load_config_file(path) {
            Ok(values) => file_values = values,
            Err(e) => return usage_error(e),
        }
    }
    let file_usize = |map: &BTreeMap<String, String>, key: &str| -> Result<Option<usize>, String> {
        map.get(key)
            .map(|v| v.parse::<usize>().map_err(|_| format!("bad {key}: {v:?}")))
            .transpose()
    };
    // file values first, explicit flags override
    let applied = (|| -> Result<(), String> {
        if let Some(names) = file_values.get("identities") {
            cfg.identities = names.split(',').map(|s| s.trim().to_string()).collect();
        }
        if let Some(v) = file_usize(&file_values, "n-max")? {
            cfg.n_max = v;
        }
        if let Some(v) = file_usize(&file_values, "m-max")? {
            cfg.m_max = v;
        }
        if let Some(v) = file_usize(&file_values, "s-dim-max")? {
            cfg.s_dim_max = v;
        }
        if let Some(v) = file_usize(&file_values, "cbh-order")? {
            cfg.cbh_order = v;
        }
        if let Some(v) = file_usize(&file_values, "paths-len")? {
            cfg.paths_len = v;
        }
        if let Some(v) = file_values.get("seed") {
            cfg.seed = v.parse().map_err(|_| format!("bad seed: {v:?}"))?;
        }
        Ok(())
    })();
    if let Err(e) = applied {
        return usage_error(e);
    }
    if let Some(names) = &args.identities {
        cfg.identities = names.split(',').map(|s| s.trim().to_string()).collect();
    }
    if let Some(v) = args.n_max {
        cfg.n_max = v;
    }
    if let Some(v) = args.m_max {
        cfg.m_max = v;
    }
    if let Some(v) = args.s_dim_max {
        cfg.s_dim_max = v;
    }
    if let Some(v) = args.cbh_order {
        cfg.cbh_order = v;
    }
    if let Some(v) = args.paths_len {
        cfg.paths_len = v;
    }
    if let Some(v) = args.seed {
        cfg.seed = v;
    }
    if let Err(e) = cfg.validate() {
        return usage_error(e);
    }

    let mut jobs: Vec<(String, Job)> = Vec::new();
    for name in &cfg.identities {
        for job in jobs_for(name, &cfg) {
            jobs.push((name.clone(), job));
        }
    }
    let results = run_jobs(jobs, args.common.jobs);
    let report = Report::new(config_echo(&cfg), results, !args.common.no_timestamp);
    emit(&report, &args.common)
}

fn config_echo(cfg: &SuiteConfig) -> BTreeMap<String, String> {
    let mut map = BTreeMap::new();
    map.insert("identities".to_string(), cfg.identities.join(","));
    map.insert("n_max".to_string(), cfg.n_max.to_string());
    map.insert("m_max".to_string(), cfg.m_max.to_string());
    map.insert("s_dim_max".to_string(), cfg.s_dim_max.to_string());
    map.insert("cbh_order".to_string(), cfg.cbh_order.to_string());
    map.insert("paths_len".to_string(), cfg.paths_len.to_string());
    map.insert("seed".to_string(), cfg.seed.to_string());
    map
}

fn parse_variants(text: &Option<String>) -> Result<Vec<DetVariant>, String> {
    match text.as_deref() {
        None => Ok(vec![DetVariant::Col, DetVariant::Row]),
        Some("col") => Ok(vec![DetVariant::Col]),
        Some("row") => Ok(vec![DetVariant::Row]),
        Some(other) => Err(format!("bad variant {other:?}; expected col or row")),
    }
}

fn run_verify(args: VerifyArgs) -> ExitCode {
    if !IDENTITY_NAMES.contains(&args.name.as_str()) {
        return usage_error(format!(
            "unknown identity {:?}; known: {}",
            args.name,
            IDENTITY_NAMES.join(", ")
        ));
    }
    if args.n == 0 || args.n > registry::MAX_N {
        return usage_error(format!("n must lie in 1..={}", registry::MAX_N));
    }
    if let Some(m) = args.m {
        if m < args.n || m > registry::MAX_M {
            return usage_error(format!("m must lie in n..={}", registry::MAX_M));
        }
    }
    if let Some(s) = args.s_dim {
        if s == 0 || s > registry::MAX_S_DIM {
            return usage_error(format!("s-dim must lie in 1..={}", registry::MAX_S_DIM));
        }
    }
    let variants = match parse_variants(&args.variant) {
        Ok(v) => v,
        Err(e) => return usage_error(e),
    };
    let use_weyl_example = args.m.is_some() || args.s_dim.is_some();
    let realization = || -> Result<_, nccb_core::AlgebraError> {
        if use_weyl_example {
            realize_weyl_example(args.n, args.m.unwrap_or(args.n), args.s_dim.unwrap_or(1))
        } else {
            Ok(realize_capelli(args.n))
        }
    };

    let f_series = |default: &[Rational], min_order: usize| -> Result<TruncSeries<Rational>, String> {
        match &args.f {
            Some(text) => parse_series(text, min_order),
            None => Ok(TruncSeries::from_poly(default, min_order)),
        }
    };
    let s_value = || -> Result<Option<Rational>, String> {
        match args.s.as_deref() {
            None | Some("symbolic") => Ok(None),
            Some(text) => parse_rational(text).map(Some),
        }
    };

    let mut outcomes: Vec<Result<VerificationResult, nccb_core::AlgebraError>> = Vec::new();
    match args.name.as_str() {
        "capelli" => {
            for v in &variants {
                outcomes.push(realization().and_then(|r| verify_cauchy_binet_quantum(&r, *v)));
            }
        }
        "oscillator" => {
            for v in &variants {
                outcomes
                    .push(realization().and_then(|r| verify_oscillator_rep(&r, *v, args.trunc)));
            }
        }
        "grassmann" => {
            for v in &variants {
                outcomes.push(realization().and_then(|r| verify_grassmann_rep(&r, *v)));
            }
        }
        "holomorphic" => {
            outcomes.push(realization().and_then(|r| verify_holomorphic_coldet(&r)));
        }
        "direct_grassmann" => {
            outcomes.push(realization().and_then(|r| verify_direct_grassmann(&r)));
        }
        "support_lemmas" => {
            outcomes.push(realization().and_then(|r| verify_support_lemmas(&r)));
        }
        "cross_representation" => {
            outcomes.push(realization().and_then(|r| verify_cross_representation(&r)));
        }
        "prop_old" => outcomes.push(verify_prop_old(args.n)),
        "multilin" => {
            let one_minus_a = [Rational::from_int(1), Rational::from_int(-1)];
            let f = match f_series(&one_minus_a, (args.n * args.k).max(2)) {
                Ok(f) => f,
                Err(e) => return usage_error(e),
            };
            let s = match s_value() {
                Ok(s) => s,
                Err(e) => return usage_error(e),
            };
            outcomes.push(verify_multilin(args.n, args.k, &f, s, args.seed));
        }
        "lem_faf" => {
            let one_minus_a = [Rational::from_int(1), Rational::from_int(-1)];
            let f = match f_series(&one_minus_a, 8) {
                Ok(f) => f,
                Err(e) => return usage_error(e),
            };
            outcomes.push(verify_lem_faf(&f, 3, 3));
        }
        "cbh" => {
            let id_series = [Rational::from_int(0), Rational::from_int(1)];
            let f = match f_series(&id_series, 3) {
                Ok(f) => f,
                Err(e) => return usage_error(e),
            };
            let order = args.order.unwrap_or(6);
            if order == 0 || order > registry::MAX_CBH_ORDER {
                return usage_error(format!(
                    "order must lie in 1..={}",
                    registry::MAX_CBH_ORDER
                ));
            }
            outcomes.push(verify_cbh(&f, order));
        }
        "lukasiewicz" => {
            let len = args.order.unwrap_or(6);
            if len == 0 || len > registry::MAX_PATHS_LEN {
                return usage_error(format!(
                    "order must lie in 1..={}",
                    registry::MAX_PATHS_LEN
                ));
            }
            outcomes.push(verify_lukasiewicz_agreement(len, 8, 1000, args.seed));
        }
        "berezin" => outcomes.push(verify_berezin_calibration(100, args.seed)),
        "oracles" => outcomes.push(verify_oracle_independence(1000, 8, 500, args.seed)),
        _ => unreachable!("name validated above"),
    }

    let mut results = Vec::new();
    for outcome in outcomes {
        match outcome {
            Ok(res) => results.push(res),
            Err(err) => return usage_error(err),
        }
    }
    let mut config = BTreeMap::new();
    config.insert("identity".to_string(), args.name.clone());
    config.insert("n".to_string(), args.n.to_string());
    if let Some(m) = args.m {
        config.insert("m".to_string(), m.to_string());
    }
    if let Some(s) = args.s_dim {
        config.insert("s_dim".to_string(), s.to_string());
    }
    if let Some(v) = &args.variant {
        config.insert("variant".to_string(), v.clone());
    }
    config.insert("seed".to_string(), args.seed.to_string());
    let report = Report::new(config, results, !args.common.no_timestamp);
    emit(&report, &args.common)
}

fn run_paths(args: PathsArgs) -> ExitCode {
    if args.len == 0 || args.len > registry::MAX_PATHS_LEN {
        return usage_error(format!(
            "paths length must lie in 1..={}",
            registry::MAX_PATHS_LEN
        ));
    }
    let excursions = enumerate_excursions(args.len);
    if args.count {
        println!("{}", excursions.len());
    } else if args.table {
        for path in &excursions {
            let nu = path.nu();
            let weight = c_formula(path, args.len);
            let nu_text = nu
                .iter()
                .map(|v| v.to_string())
                .collect::<Vec<_>>()
                .join(" ");
            println!("⟨{nu_text}⟩  c = {weight}");
        }
    } else {
        println!("excursions of length {}: {}", args.len, excursions.len());
        println!(
            "total weight: {}",
            excursions
                .iter()
                .map(|p| c_formula(p, args.len))
                .sum::<i64>()
        );
    }
    ExitCode::SUCCESS
}

fn run_cbh(args: CbhArgs) -> ExitCode {
    if args.order == 0 || args.order > registry::MAX_CBH_ORDER {
        return usage_error(format!(
            "order must lie in 1..={}",
            registry::MAX_CBH_ORDER
        ));
    }
    let f = match parse_series(&args.f, 1) {
        Ok(f) => f,
        Err(e) => return usage_error(e),
    };
    let result = match verify_cbh(&f, args.order) {
        Ok(r) => r,
        Err(e) => return usage_error(e),
    };
    let mut config = BTreeMap::new();
    config.insert("identity".to_string(), "cbh".to_string());
    config.insert("order".to_string(), args.order.to_string());
    config.insert(
        "f".to_string(),
        f.coeffs()
            .iter()
            .map(rational_string)
            .collect::<Vec<_>>()
            .join(","),
    );
    let report = Report::new(config, vec![result], !args.common.no_timestamp);
    emit(&report, &args.common)
}
