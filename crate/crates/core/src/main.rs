//! Command-line front end: parse functions and formulas, run analyses and
//! experiments, emit deterministic JSON/CSV reports.
//!
//! Exit codes: 0 success, 2 parse error, 3 size/DP limit exceeded,
//! 4 precondition or parameter-domain violation, 5 unknown experiment.

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::json;

use avgdepth::certificate::min_certificate_with_limit;
use avgdepth::criticality::{
    criticality_class_bound, default_p_grid, lambda_estimate, restriction_cost_bound,
    restriction_tail, CriticalityBoundKind, TAIL_LIMIT,
};
use avgdepth::error::Error;
use avgdepth::exact::{dave_exact_with_limit, dtsize_min_with_limit, worst_depth_with_limit};
use avgdepth::experiments::{
    block_dnf_experiment, criticality_consistency_experiment, gate_cost_experiment,
    pso_table_experiment,
};
use avgdepth::families::{disjoint_block_bounds, disjoint_block_dnf, make_named, pso, NamedKind};
use avgdepth::rational::{frac_to_f64, parse_frac, Frac};
use avgdepth::report::ExperimentReport;
use avgdepth::sampling::{
    is_delta_parity_path, is_t_delta_parity, min_certificate_experiment,
    parity_deviation_experiment, sample_fixed_weight, MinCertificateParams,
    ParityDeviationParams,
};
use avgdepth::strategy::{
    ecs_strategy, measure_cost, naive_strategy, partition_strategy, recursive_strategy,
    restriction_strategy, CostEstimate, DecisionStrategy, MeasureMode,
};
use avgdepth::{PathSpec, TruthTable};

#[derive(Parser)]
#[command(
    name = "avgdepth",
    about = "Average-case decision-tree depth of boolean functions: exact values, query strategies, and restriction experiments",
    version
)]
struct Cli {
    /// Seed for every randomized computation.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Report format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,
    /// Write output here instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// Cap the rayon thread pool (output is identical for any value).
    #[arg(long, global = true)]
    threads: Option<usize>,
    /// Cap n for the 3^n dynamic programs.
    #[arg(long = "dp-limit", global = true, default_value_t = avgdepth::lattice::DEFAULT_DP_LIMIT)]
    dp_limit: u32,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
}

#[derive(Subcommand)]
enum Cmd {
    /// Exact quantities of a truth-table file: average depth, depth,
    /// minimum tree size, minimum certificate.
    Exact { table: PathBuf },
    /// Measure a query strategy on a truth-table file against its bound.
    Strategy {
        table: PathBuf,
        /// naive | ecs | partition | recursive | restriction:P
        #[arg(long)]
        name: String,
        /// exact (default) | mc:TRIALS
        #[arg(long, default_value = "exact")]
        mode: String,
    },
    /// Sample a uniform fixed-weight function and print its table.
    Sample {
        #[arg(long)]
        n: u32,
        #[arg(long)]
        m: u64,
    },
    /// Parity-window checks for a truth-table file.
    Parity {
        table: PathBuf,
        /// Check one path, e.g. "3=1,5=0".
        #[arg(long, conflicts_with = "t")]
        path: Option<String>,
        /// Check every path of length <= t.
        #[arg(long)]
        t: Option<u32>,
        /// Window tolerance, e.g. "1/6" or "0.2".
        #[arg(long)]
        delta: String,
    },
    /// Build named functions, shoot-out functions, or the hard wide-DNF
    /// instance.
    #[command(subcommand)]
    Construct(ConstructCmd),
    /// Restriction tails and the criticality estimate of a truth table.
    Criticality {
        table: PathBuf,
        /// Comma-separated p grid, e.g. "1/2,1/4,1/8".
        #[arg(long)]
        grid: Option<String>,
        /// Include full exact tails per grid point.
        #[arg(long, default_value_t = false)]
        tails: bool,
    },
    /// Closed-form bound calculators.
    #[command(subcommand)]
    Bounds(BoundsCmd),
    /// Named experiment harnesses with key=value parameters:
    /// lemma36, theorem12, theorem13, criticality, prop41, pso-table.
    Experiment {
        name: String,
        /// key=value parameters; integers accept 2^k, fractions a/b.
        params: Vec<String>,
    },
}

#[derive(Subcommand)]
enum ConstructCmd {
    /// and | or | xor | point:INDEX | const:0/1
    Named {
        #[arg(long)]
        kind: String,
        #[arg(long)]
        n: u32,
    },
    /// Penalty shoot-out on 2*rounds+1 variables.
    Pso {
        #[arg(long)]
        rounds: u32,
    },
    /// Hard wide-DNF instance (OR of a weight-m inner function over
    /// disjoint blocks).
    Theorem13 {
        #[arg(long)]
        n: u32,
        #[arg(long)]
        w: u32,
        #[arg(long, default_value_t = 32)]
        candidates: u32,
        /// Also write the DNF formula file here.
        #[arg(long = "dnf-out")]
        dnf_out: Option<PathBuf>,
    },
}

#[derive(Subcommand)]
enum BoundsCmd {
    /// Restrict-then-query bound for a lambda-critical function:
    /// n(1 - 1/lambda) + 2 sqrt(n/lambda).
    Critical {
        #[arg(long)]
        n: u32,
        #[arg(long)]
        lambda: f64,
    },
    /// Width-w CNF/DNF: n(1 - 1/(c w)).
    Width {
        #[arg(long)]
        n: u32,
        #[arg(long)]
        w: u32,
        #[arg(long, default_value_t = 1.0)]
        c: f64,
    },
    /// Size-s CNF/DNF: n(1 - 1/(c log2 s)).
    Size {
        #[arg(long)]
        n: u32,
        #[arg(long)]
        s: u64,
        #[arg(long, default_value_t = 1.0)]
        c: f64,
    },
    /// Depth-d size-s circuit: n(1 - 1/(c log2 s)^(d-1)).
    Circuit {
        #[arg(long)]
        n: u32,
        #[arg(long)]
        d: u32,
        #[arg(long)]
        s: u64,
        #[arg(long, default_value_t = 1.0)]
        c: f64,
    },
    /// Depth-d size-s formula: n(1 - 1/((c/d) log2 s)^(d-1)).
    Formula {
        #[arg(long)]
        n: u32,
        #[arg(long)]
        d: u32,
        #[arg(long)]
        s: u64,
        #[arg(long, default_value_t = 1.0)]
        c: f64,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(threads) = cli.threads {
        if let Err(e) = rayon::ThreadPoolBuilder::new()
            .num_threads(threads)
            .build_global()
        {
            eprintln!("avgdepth: thread pool: {e}");
            return ExitCode::from(1);
        }
    }
    match run(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("avgdepth: {e}");
            ExitCode::from(e.code)
        }
    }
}

struct CliError {
    code: u8,
    message: String,
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}", self.message)
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> CliError {
        let code = match &e {
            Error::Parse { .. } => 2,
            Error::TableTooLarge { .. }
            | Error::DpLimitExceeded { .. }
            | Error::MeasureLimitExceeded { .. } => 3,
            Error::Precondition { .. }
            | Error::Domain(_)
            | Error::WeightOutOfRange { .. }
            | Error::VarOutOfRange { .. }
            | Error::ZeroWeight => 4,
            _ => 1,
        };
        CliError {
            code,
            message: e.to_string(),
        }
    }
}

fn unknown_experiment(name: &str) -> CliError {
    CliError {
        code: 5,
        message: format!(
            "unknown experiment {name:?} (available: lemma36, theorem12, theorem13, criticality, prop41, pso-table)"
        ),
    }
}

fn run(cli: &Cli) -> Result<(), CliError> {
    match &cli.cmd {
        Cmd::Exact { table } => cmd_exact(cli, table),
        Cmd::Strategy { table, name, mode } => cmd_strategy(cli, table, name, mode),
        Cmd::Sample { n, m } => {
            let f = sample_fixed_weight(*n, *m, cli.seed)?;
            emit_raw(cli, &f.to_text())
        }
        Cmd::Parity { table, path, t, delta } => cmd_parity(cli, table, path.as_deref(), *t, delta),
        Cmd::Construct(c) => cmd_construct(cli, c),
        Cmd::Criticality { table, grid, tails } => {
            cmd_criticality(cli, table, grid.as_deref(), *tails)
        }
        Cmd::Bounds(b) => cmd_bounds(cli, b),
        Cmd::Experiment { name, params } => cmd_experiment(cli, name, params),
    }
}

fn load_table(path: &PathBuf) -> Result<TruthTable, CliError> {
    let text = std::fs::read_to_string(path).map_err(|e| CliError {
        code: 2,
        message: format!("{}: {e}", path.display()),
    })?;
    TruthTable::parse_text(&text).map_err(|e| CliError {
        code: 2,
        message: format!("{}: {e}", path.display()),
    })
}

fn emit_raw(cli: &Cli, payload: &str) -> Result<(), CliError> {
    match &cli.out {
        Some(path) => std::fs::write(path, payload).map_err(|e| CliError {
            code: 1,
            message: format!("{}: {e}", path.display()),
        }),
        None => {
            print!("{payload}");
            Ok(())
        }
    }
}

fn emit_value(cli: &Cli, value: &serde_json::Value) -> Result<(), CliError> {
    let payload = match cli.format {
        Format::Json => {
            let mut s = serde_json::to_string_pretty(value).expect("serializable");
            s.push('\n');
            s
        }
        Format::Csv => avgdepth::report::value_to_csv(value),
    };
    emit_raw(cli, &payload)
}

fn emit_report(cli: &Cli, report: &ExperimentReport) -> Result<(), CliError> {
    let payload = match cli.format {
        Format::Json => report.to_json(),
        Format::Csv => report.to_csv(),
    };
    emit_raw(cli, &payload)
}

fn cmd_exact(cli: &Cli, table: &PathBuf) -> Result<(), CliError> {
    let f = load_table(table)?;
    let dave = dave_exact_with_limit(&f, cli.dp_limit)?;
    let depth = worst_depth_with_limit(&f, cli.dp_limit)?;
    let dtsize = dtsize_min_with_limit(&f, cli.dp_limit)?;
    let min_cert = min_certificate_with_limit(&f, cli.dp_limit)?;
    emit_value(
        cli,
        &json!({
            "n": f.n(),
            "weight": f.weight(),
            "dave": {
                "fraction": dave.fraction_string(),
                "decimal": dave.decimal_string(12),
            },
            "depth": depth,
            "dtsize": dtsize,
            "min_certificate": min_cert,
        }),
    )
}

fn cmd_strategy(cli: &Cli, table: &PathBuf, name: &str, mode: &str) -> Result<(), CliError> {
    let f = load_table(table)?;
    let n = f.n();
    let wt = f.weight();

    let mode = if mode == "exact" {
        MeasureMode::Exact
    } else if let Some(trials) = mode.strip_prefix("mc:") {
        let trials = trials.parse::<u64>().map_err(|_| CliError {
            code: 4,
            message: format!("bad trial count in mode {mode:?}"),
        })?;
        MeasureMode::MonteCarlo {
            trials,
            seed: cli.seed,
        }
    } else {
        return Err(CliError {
            code: 4,
            message: format!("unknown mode {mode:?} (use exact or mc:TRIALS)"),
        });
    };

    // The applicable bound is evaluated on this instance, never hard-coded
    // downstream.
    let log2n = f64::from(n).log2();
    let (strategy, bound_formula, bound_value): (Box<dyn DecisionStrategy>, &str, Option<f64>) =
        match name {
            "naive" => {
                let b = if wt == 0 { 0.0 } else { (wt as f64).log2() + 2.0 };
                (Box::new(naive_strategy(&f)), "log2(wt(f)) + 2", Some(b))
            }
            "ecs" => (Box::new(ecs_strategy(&f)?), "5", Some(5.0)),
            "partition" => (Box::new(partition_strategy(&f)?), "40", Some(40.0)),
            "recursive" => {
                let (formula, value) = if wt == 0 {
                    ("0", 0.0)
                } else if (wt as f64) < 4.0 * log2n {
                    ("40 (weight below 4 log2 n)", 40.0)
                } else {
                    let r = wt as f64 / log2n;
                    (
                        "log2(m/log2 n) + log2 log2(m/log2 n) + 87",
                        r.log2() + r.log2().log2() + 87.0,
                    )
                };
                (Box::new(recursive_strategy(&f)?), formula, Some(value))
            }
            other => match other.strip_prefix("restriction:") {
                Some(p) => {
                    let p = parse_frac(p)?;
                    let strategy = Box::new(restriction_strategy(&f, p, cli.seed)?);
                    if n <= TAIL_LIMIT {
                        let est = lambda_estimate(&f, &default_p_grid())?;
                        let b = restriction_cost_bound(n, est.lambda)?;
                        (
                            strategy as Box<dyn DecisionStrategy>,
                            "n(1-1/lambda) + 2 sqrt(n/lambda)",
                            Some(b),
                        )
                    } else {
                        (strategy, "n(1-1/lambda) + 2 sqrt(n/lambda)", None)
                    }
                }
                None => {
                    return Err(CliError {
                        code: 4,
                        message: format!(
                            "unknown strategy {name:?} (naive, ecs, partition, recursive, restriction:P)"
                        ),
                    })
                }
            },
        };

    let report = measure_cost(strategy.as_ref(), &f, mode)?;
    let measured = report.estimate.mean();
    // Monte Carlo runs get a 3-sigma allowance on top of the bound.
    let tolerance = match report.estimate {
        CostEstimate::Exact { .. } => 0.0,
        CostEstimate::MonteCarlo { trials, .. } => 3.0 * f64::from(n) / (trials as f64).sqrt(),
    };
    let verdict = match bound_value {
        None => "vacuous",
        Some(b) if b >= f64::from(n) => "vacuous",
        Some(b) if measured <= b + tolerance + 1e-9 => "pass",
        Some(_) => "fail",
    };

    let cost_json = match &report.estimate {
        CostEstimate::Exact { total, expected } => json!({
            "mode": "exact",
            "total": total,
            "fraction": expected.fraction_string(),
            "decimal": expected.decimal_string(12),
        }),
        CostEstimate::MonteCarlo { mean, trials, seed } => json!({
            "mode": "monte_carlo",
            "mean": mean,
            "trials": trials,
            "seed": seed,
        }),
    };
    emit_value(
        cli,
        &json!({
            "n": n,
            "weight": wt,
            "strategy": report.strategy,
            "cost": cost_json,
            "max_cost": report.max_cost,
            "bound": {
                "formula": bound_formula,
                "value": bound_value,
            },
            "verdict": verdict,
        }),
    )
}

fn cmd_parity(
    cli: &Cli,
    table: &PathBuf,
    path: Option<&str>,
    t: Option<u32>,
    delta: &str,
) -> Result<(), CliError> {
    let f = load_table(table)?;
    let delta = parse_frac(delta)?;
    let (mode, detail, parity) = match (path, t) {
        (Some(spec), None) => {
            let path = PathSpec::parse(spec)?;
            let ok = is_delta_parity_path(&f, &path, delta)?;
            ("path", json!(spec), ok)
        }
        (None, Some(t)) => {
            let ok = is_t_delta_parity(&f, t, delta)?;
            ("all-paths", json!(t), ok)
        }
        _ => {
            return Err(CliError {
                code: 4,
                message: "provide exactly one of --path or --t".to_string(),
            })
        }
    };
    emit_value(
        cli,
        &json!({
            "n": f.n(),
            "weight": f.weight(),
            "mode": mode,
            "query": detail,
            "delta": delta.to_string(),
            "parity": parity,
        }),
    )
}

fn cmd_construct(cli: &Cli, cmd: &ConstructCmd) -> Result<(), CliError> {
    match cmd {
        ConstructCmd::Named { kind, n } => {
            let kind = parse_named_kind(kind)?;
            let f = make_named(kind, *n)?;
            emit_raw(cli, &f.to_text())
        }
        ConstructCmd::Pso { rounds } => emit_raw(cli, &pso(*rounds)?.to_text()),
        ConstructCmd::Theorem13 {
            n,
            w,
            candidates,
            dnf_out,
        } => {
            let inst = disjoint_block_dnf(*n, *w, *candidates, cli.seed)?;
            if let Some(path) = dnf_out {
                std::fs::write(path, inst.formula.print_file()).map_err(|e| CliError {
                    code: 1,
                    message: format!("{}: {e}", path.display()),
                })?;
            }
            let (lower, upper) = disjoint_block_bounds(&inst);
            emit_value(
                cli,
                &json!({
                    "n": inst.n,
                    "w": inst.w,
                    "m": inst.m,
                    "h": inst.h,
                    "size": inst.formula.size(),
                    "width": inst.formula.width(),
                    "d": inst.d,
                    "p": inst.p.to_string(),
                    "lower": lower,
                    "upper": upper,
                }),
            )
        }
    }
}

fn parse_named_kind(kind: &str) -> Result<NamedKind, CliError> {
    Ok(match kind {
        "and" => NamedKind::And,
        "or" => NamedKind::Or,
        "xor" => NamedKind::Xor,
        other => {
            if let Some(z) = other.strip_prefix("point:") {
                NamedKind::Point(z.parse().map_err(|_| CliError {
                    code: 4,
                    message: format!("bad point index in {kind:?}"),
                })?)
            } else if let Some(b) = other.strip_prefix("const:") {
                NamedKind::Constant(b == "1")
            } else {
                return Err(CliError {
                    code: 4,
                    message: format!("unknown kind {kind:?} (and, or, xor, point:Z, const:B)"),
                });
            }
        }
    })
}

fn cmd_criticality(
    cli: &Cli,
    table: &PathBuf,
    grid: Option<&str>,
    tails: bool,
) -> Result<(), CliError> {
    let f = load_table(table)?;
    let grid: Vec<Frac> = match grid {
        Some(spec) => spec.split(',').map(parse_frac).collect::<Result<_, _>>()?,
        None => default_p_grid(),
    };
    let est = lambda_estimate(&f, &grid)?;
    let tails_json = if tails {
        let mut per_p = Vec::new();
        for &p in &grid {
            let tail = restriction_tail(&f, p)?;
            let rows: Vec<serde_json::Value> = (0..=f.n() as usize)
                .map(|t| {
                    json!({
                        "t": t,
                        "exact": tail.tail[t].to_string(),
                        "value": tail.tail_f64(t),
                    })
                })
                .collect();
            per_p.push(json!({"p": p.to_string(), "tail": rows}));
        }
        json!(per_p)
    } else {
        serde_json::Value::Null
    };
    emit_value(
        cli,
        &json!({
            "n": f.n(),
            "grid": grid.iter().map(|p| p.to_string()).collect::<Vec<_>>(),
            "lambda": est.lambda,
            "witnesses": est
                .witnesses
                .iter()
                .map(|(p, t)| json!({"p": p.to_string(), "t": t}))
                .collect::<Vec<_>>(),
            "tails": tails_json,
        }),
    )
}

fn cmd_bounds(cli: &Cli, cmd: &BoundsCmd) -> Result<(), CliError> {
    let (kind, params, value) = match *cmd {
        BoundsCmd::Critical { n, lambda } => (
            "critical",
            json!({"n": n, "lambda": lambda}),
            restriction_cost_bound(n, lambda)?,
        ),
        BoundsCmd::Width { n, w, c } => (
            "width",
            json!({"n": n, "w": w, "c": c}),
            criticality_class_bound(CriticalityBoundKind::Width { w }, n, c)?,
        ),
        BoundsCmd::Size { n, s, c } => (
            "size",
            json!({"n": n, "s": s, "c": c}),
            criticality_class_bound(CriticalityBoundKind::Size { s }, n, c)?,
        ),
        BoundsCmd::Circuit { n, d, s, c } => (
            "circuit",
            json!({"n": n, "d": d, "s": s, "c": c}),
            criticality_class_bound(CriticalityBoundKind::Circuit { d, s }, n, c)?,
        ),
        BoundsCmd::Formula { n, d, s, c } => (
            "formula",
            json!({"n": n, "d": d, "s": s, "c": c}),
            criticality_class_bound(CriticalityBoundKind::Formula { d, s }, n, c)?,
        ),
    };
    emit_value(cli, &json!({"kind": kind, "params": params, "value": value}))
}

/// key=value experiment parameters; integers accept a 2^k form.
struct Params {
    pairs: Vec<(String, String)>,
}

impl Params {
    fn parse(args: &[String]) -> Result<Params, CliError> {
        let mut pairs = Vec::new();
        for arg in args {
            let (k, v) = arg.split_once('=').ok_or_else(|| CliError {
                code: 4,
                message: format!("expected key=value, found {arg:?}"),
            })?;
            pairs.push((k.trim().to_string(), v.trim().to_string()));
        }
        Ok(Params { pairs })
    }

    fn get(&self, key: &str) -> Option<&str> {
        self.pairs
            .iter()
            .find(|(k, _)| k == key)
            .map(|(_, v)| v.as_str())
    }

    fn int(&self, key: &str, default: Option<u64>) -> Result<u64, CliError> {
        match self.get(key) {
            None => default.ok_or_else(|| CliError {
                code: 4,
                message: format!("missing parameter {key}"),
            }),
            Some(v) => parse_u64_ext(v).ok_or_else(|| CliError {
                code: 4,
                message: format!("bad integer for {key}: {v:?}"),
            }),
        }
    }

    fn frac(&self, key: &str, default: Option<Frac>) -> Result<Frac, CliError> {
        match self.get(key) {
            None => default.ok_or_else(|| CliError {
                code: 4,
                message: format!("missing parameter {key}"),
            }),
            Some(v) => Ok(parse_frac(v)?),
        }
    }

    fn float(&self, key: &str, default: Option<f64>) -> Result<f64, CliError> {
        match self.get(key) {
            None => default.ok_or_else(|| CliError {
                code: 4,
                message: format!("missing parameter {key}"),
            }),
            Some(v) => {
                if let Ok(f) = v.parse::<f64>() {
                    Ok(f)
                } else {
                    Ok(frac_to_f64(&parse_frac(v)?))
                }
            }
        }
    }
}

/// "1024" or "2^10".
fn parse_u64_ext(s: &str) -> Option<u64> {
    if let Some(exp) = s.strip_prefix("2^") {
        let e: u32 = exp.parse().ok()?;
        if e >= 64 {
            return None;
        }
        Some(1u64 << e)
    } else {
        s.parse().ok()
    }
}

fn cmd_experiment(cli: &Cli, name: &str, args: &[String]) -> Result<(), CliError> {
    let params = Params::parse(args)?;
    let report = match name {
        "lemma36" => parity_deviation_experiment(&ParityDeviationParams {
            n: params.int("n", Some(60))? as u32,
            m: params.int("m", Some(1 << 30))?,
            eps: params.float("eps", Some(0.5))?,
            delta: params.frac("delta", Some(Frac::new(1, 30)))?,
            path_len: params.int("len", Some(15))? as u32,
            trials: params.int("trials", Some(100_000))?,
            seed: cli.seed,
        })?,
        "theorem12" => {
            let t = params.int("t", Some(3))? as u32;
            min_certificate_experiment(&MinCertificateParams {
                n: params.int("n", Some(14))? as u32,
                m: params.int("m", Some(1 << 13))?,
                samples: params.int("trials", Some(200))?,
                seed: cli.seed,
                parity_t: t,
                parity_delta: params.frac("delta", Some(Frac::new(1, 2 * u64::from(t))))?,
            })?
        }
        "theorem13" => block_dnf_experiment(
            params.int("n", Some(16))? as u32,
            params.int("w", Some(8))? as u32,
            params.int("candidates", Some(32))? as u32,
            cli.seed,
        )?,
        "criticality" => criticality_consistency_experiment(
            params.int("n", Some(10))? as u32,
            params.int("width", Some(3))? as u32,
            params.int("terms", Some(8))? as usize,
            params.int("count", Some(50))?,
            cli.seed,
        )?,
        "prop41" => gate_cost_experiment(
            params.int("count", Some(200))?,
            params.int("max-n", Some(12))? as u32,
            params.int("max-terms", Some(8))? as usize,
            cli.seed,
        )?,
        "pso-table" => {
            let (from, to) = match params.get("n") {
                None => (0, 5),
                Some(v) => parse_range(v).ok_or_else(|| CliError {
                    code: 4,
                    message: format!("bad range for n: {v:?} (use A..B)"),
                })?,
            };
            pso_table_experiment(from, to)?
        }
        other => return Err(unknown_experiment(other)),
    };
    emit_report(cli, &report)
}

/// "0..5" (inclusive) or a single integer.
fn parse_range(s: &str) -> Option<(u32, u32)> {
    if let Some((a, b)) = s.split_once("..") {
        Some((a.parse().ok()?, b.parse().ok()?))
    } else {
        let v: u32 = s.parse().ok()?;
        Some((v, v))
    }
}
