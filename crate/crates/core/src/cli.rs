//! Command-line front end. Every analytic and simulation capability is
//! exposed as a subcommand with text, JSON and CSV output; exact masses
//! are serialized as `p/q` strings, floats at seventeen significant
//! digits so emitted files round-trip exactly.

use std::io::Write;
use std::str::FromStr;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_traits::ToPrimitive;
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::params::ModelParams;
use crate::progeny;
use crate::range;
use crate::simulate::{monte_carlo, Engine, MonteCarloSummary, SimConfig, DEFAULT_VERTEX_BUDGET};
use crate::survival::{self, DEFAULT_TOL};
use crate::validate::{self, ValidateOptions};

#[derive(Debug, Parser)]
#[command(
    name = "treerumor",
    version,
    about = "Rumor spreading with k-stifling on infinite Cayley trees: exact laws, survival probabilities, progeny, range bounds, and seeded simulators"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
    Csv,
}

#[derive(Debug, Args)]
struct OutputArgs {
    /// Output format.
    #[arg(long, value_enum, default_value = "text")]
    format: Format,
    /// Write to this path instead of standard output.
    #[arg(long)]
    out: Option<std::path::PathBuf>,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Exact root and offspring spreader-count pmfs.
    Pmf {
        #[arg(long)]
        d: u32,
        #[arg(long)]
        k: u32,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Survival probability theta(d, k), single value or a grid.
    Theta {
        /// Degree, or a comma-separated list with --table.
        #[arg(long)]
        d: String,
        /// Stifling threshold, or a comma-separated list with --table.
        #[arg(long)]
        k: String,
        /// Emit a grid over all (d, k) combinations.
        #[arg(long)]
        table: bool,
        /// Fixed-point tolerance (0 < tol < 1e-6).
        #[arg(long, default_value_t = DEFAULT_TOL)]
        tol: f64,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Distribution and mean of the total informed count.
    Progeny {
        #[arg(long)]
        d: u32,
        #[arg(long)]
        k: u32,
        /// Truncation depth of the reported pmf.
        #[arg(long, default_value_t = 200)]
        imax: u64,
        /// Use the float fast path (no exact fractions); required for
        /// very large truncation depths.
        #[arg(long)]
        float: bool,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Extinction-time and range cdf bounds, and the expected-range
    /// enclosure (defined for d=2, k=1 only).
    Range {
        /// Inclusive depth window `A..B` for the bounds table.
        #[arg(long, default_value = "0..10")]
        n: String,
        /// Also compute the expected-range enclosure and its six series
        /// constants.
        #[arg(long)]
        expected: bool,
        /// Series truncation tolerance (0 < tol <= 1e-12).
        #[arg(long, default_value_t = 1e-12)]
        series_tol: f64,
        #[arg(long, default_value_t = 2)]
        d: u32,
        #[arg(long, default_value_t = 1)]
        k: u32,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Seeded Monte Carlo over independent runs.
    Simulate {
        #[arg(long)]
        d: u32,
        #[arg(long)]
        k: u32,
        #[arg(long)]
        runs: u64,
        /// Depth limit; boundary vertices can be informed but never act.
        #[arg(long)]
        depth: u32,
        #[arg(long, default_value = "genealogy")]
        engine: String,
        /// Base seed; run r uses stream r of this seed.
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Vertex budget per run; exceeding it fails the run loudly.
        #[arg(long, default_value_t = DEFAULT_VERTEX_BUDGET)]
        budget: usize,
        /// Worker threads (default: all cores). Any value produces
        /// identical output.
        #[arg(long)]
        jobs: Option<usize>,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Full analytic and simulator cross-check suite; nonzero exit on
    /// any failing check.
    Validate {
        /// Smaller Monte Carlo sizes; finishes in well under a minute.
        #[arg(long)]
        quick: bool,
        #[arg(long, default_value_t = 0xC0FFEE)]
        seed: u64,
        #[arg(long)]
        jobs: Option<usize>,
        #[command(flatten)]
        output: OutputArgs,
    },
}

/// Entry point; returns the process exit code (0 success, 1 validation
/// failure, 2 numeric non-convergence, 3 resource cap).
#[must_use]
pub fn run() -> i32 {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return code;
        }
    };
    match dispatch(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            e.exit_code()
        }
    }
}

fn dispatch(cli: Cli) -> Result<i32> {
    match cli.command {
        Command::Pmf { d, k, output } => {
            let params = ModelParams::new(d, k)?;
            emit(&output, &pmf_document(params))?;
            Ok(0)
        }
        Command::Theta {
            d,
            k,
            table,
            tol,
            output,
        } => {
            let d_values = parse_list(&d)?;
            let k_values = parse_list(&k)?;
            if table {
                emit(&output, &theta_table_document(&d_values, &k_values, tol))?;
                Ok(0)
            } else {
                if d_values.len() != 1 || k_values.len() != 1 {
                    return Err(Error::InvalidArgument(
                        "without --table, --d and --k take a single value each".into(),
                    ));
                }
                let params = ModelParams::new(d_values[0], k_values[0])?;
                emit(&output, &theta_document(params, tol)?)?;
                Ok(0)
            }
        }
        Command::Progeny {
            d,
            k,
            imax,
            float,
            output,
        } => {
            let params = ModelParams::new(d, k)?;
            if !float && imax > 5000 {
                return Err(Error::InvalidArgument(format!(
                    "exact mode is limited to --imax <= 5000 (got {imax}); pass --float"
                )));
            }
            emit(&output, &progeny_document(params, imax, float)?)?;
            Ok(0)
        }
        Command::Range {
            n,
            expected,
            series_tol,
            d,
            k,
            output,
        } => {
            range::require_base_params(ModelParams::new(d, k)?)?;
            let (from, to) = parse_span(&n)?;
            emit(&output, &range_document(from, to, expected, series_tol)?)?;
            Ok(0)
        }
        Command::Simulate {
            d,
            k,
            runs,
            depth,
            engine,
            seed,
            budget,
            jobs,
            output,
        } => {
            let params = ModelParams::new(d, k)?;
            let cfg = SimConfig::new(params, depth, budget)?;
            let engine = Engine::from_str(&engine)?;
            let summary = with_jobs(jobs, || monte_carlo(&cfg, engine, runs, seed))?;
            emit(&output, &simulate_document(params, &cfg, &summary))?;
            Ok(0)
        }
        Command::Validate {
            quick,
            seed,
            jobs,
            output,
        } => {
            let opts = ValidateOptions {
                quick,
                base_seed: seed,
            };
            let report = with_jobs(jobs, || Ok(validate::run_suite(&opts)))?;
            emit(&output, &validate_document(&report))?;
            Ok(if report.passed() { 0 } else { 1 })
        }
    }
}

fn with_jobs<T>(jobs: Option<usize>, f: impl FnOnce() -> Result<T> + Send) -> Result<T>
where
    T: Send,
{
    match jobs {
        None => f(),
        Some(n) => {
            if n == 0 {
                return Err(Error::InvalidArgument("--jobs must be >= 1".into()));
            }
            let pool = rayon::ThreadPoolBuilder::new()
                .num_threads(n)
                .build()
                .map_err(|e| Error::InvalidArgument(format!("thread pool: {e}")))?;
            pool.install(f)
        }
    }
}

fn parse_list(s: &str) -> Result<Vec<u32>> {
    s.split(',')
        .map(|part| {
            part.trim()
                .parse::<u32>()
                .map_err(|_| Error::InvalidArgument(format!("not an integer: '{part}'")))
        })
        .collect()
}

fn parse_span(s: &str) -> Result<(u64, u64)> {
    let err = || Error::InvalidArgument(format!("expected an inclusive range 'A..B', got '{s}'"));
    let (a, b) = s.split_once("..").ok_or_else(err)?;
    let from: u64 = a.trim().parse().map_err(|_| err())?;
    let to: u64 = b.trim().parse().map_err(|_| err())?;
    if from > to {
        return Err(err());
    }
    Ok((from, to))
}

/// Seventeen significant digits: enough for exact f64 round-trips in
/// CSV output.
fn fmt_f64(x: f64) -> String {
    format!("{x:.16e}")
}

/// A rendered document: the three output modes of one command.
struct Document {
    text: String,
    json: Value,
    csv: String,
}

fn emit(output: &OutputArgs, doc: &Document) -> Result<()> {
    let body = match output.format {
        Format::Text => doc.text.clone(),
        Format::Json => format!("{:#}\n", doc.json),
        Format::Csv => doc.csv.clone(),
    };
    match &output.out {
        None => {
            let mut stdout = std::io::stdout().lock();
            stdout.write_all(body.as_bytes())?;
            Ok(())
        }
        Some(path) => {
            std::fs::write(path, body)?;
            Ok(())
        }
    }
}

fn pmf_document(params: ModelParams) -> Document {
    let offspring = crate::distributions::offspring_pmf(params);
    let root = crate::distributions::root_pmf(params);
    let section = |pmf: &crate::pmf::ExactPmf| -> Vec<Value> {
        pmf.entries()
            .iter()
            .map(|(v, m)| {
                json!({
                    "value": v,
                    "mass": m.to_string(),
                    "mass_float": m.to_f64(),
                })
            })
            .collect()
    };
    let json = json!({
        "command": "pmf",
        "d": params.degree(),
        "k": params.stifling_threshold(),
        "offspring": section(&offspring),
        "root": section(&root),
    });

    let mut text = format!("pmf {params}\n\noffspring X (new spreaders per non-root spreader)\n");
    for (v, m) in offspring.entries() {
        text += &format!("  {v}: {m} = {:.12}\n", m.to_f64().unwrap_or(f64::NAN));
    }
    text += "\nroot N (new spreaders from the root)\n";
    for (v, m) in root.entries() {
        text += &format!("  {v}: {m} = {:.12}\n", m.to_f64().unwrap_or(f64::NAN));
    }

    let mut csv = String::from("distribution,value,mass,mass_float\n");
    for (name, pmf) in [("offspring", &offspring), ("root", &root)] {
        for (v, m) in pmf.entries() {
            csv += &format!(
                "{name},{v},{m},{}\n",
                fmt_f64(m.to_f64().unwrap_or(f64::NAN))
            );
        }
    }
    Document { text, json, csv }
}

fn theta_document(params: ModelParams, tol: f64) -> Result<Document> {
    let fp = survival::extinction_fixed_point(params, tol)?;
    let theta = survival::survival_from_fixed_point(params, &fp)?;
    let json = json!({
        "command": "theta",
        "d": params.degree(),
        "k": params.stifling_threshold(),
        "tol": tol,
        "psi": fp.psi,
        "iterations": fp.iterations,
        "residual": fp.residual,
        "converged": fp.converged,
        "theta": theta,
        "theta_6dp": format!("{theta:.6}"),
    });
    let text = format!("{theta:.6}\n");
    let csv = format!(
        "d,k,psi,theta,theta_6dp,iterations,residual,converged\n{},{},{},{},{theta:.6},{},{},{}\n",
        params.degree(),
        params.stifling_threshold(),
        fmt_f64(fp.psi),
        fmt_f64(theta),
        fp.iterations,
        fmt_f64(fp.residual),
        fp.converged
    );
    Ok(Document { text, json, csv })
}

fn theta_table_document(d_values: &[u32], k_values: &[u32], tol: f64) -> Document {
    let table = survival::theta_table(d_values, k_values, tol);

    let mut text = String::from("theta(d,k)\n d ");
    for d in d_values {
        text += &format!("{d:>10}");
    }
    text.push('\n');
    for (ki, k) in k_values.iter().enumerate() {
        text += &format!("k={k} ");
        for cell in &table.cells[ki] {
            match cell {
                Ok(theta) => text += &format!("  {theta:.6}"),
                Err(_) => text += "     error",
            }
        }
        text.push('\n');
    }

    let cells_json: Vec<Vec<Value>> = table
        .cells
        .iter()
        .map(|row| {
            row.iter()
                .map(|cell| match cell {
                    Ok(theta) => json!({"theta": theta, "theta_6dp": format!("{theta:.6}")}),
                    Err(e) => json!({ "error": e.to_string() }),
                })
                .collect()
        })
        .collect();
    let json = json!({
        "command": "theta_table",
        "tol": tol,
        "d_values": d_values,
        "k_values": k_values,
        "cells": cells_json,
    });

    let mut csv = String::from("d,k,theta,theta_6dp,error\n");
    for (ki, k) in k_values.iter().enumerate() {
        for (di, d) in d_values.iter().enumerate() {
            match &table.cells[ki][di] {
                Ok(theta) => csv += &format!("{d},{k},{},{theta:.6},\n", fmt_f64(*theta)),
                Err(e) => csv += &format!("{d},{k},,,{e}\n"),
            }
        }
    }
    Document { text, json, csv }
}

fn progeny_document(params: ModelParams, i_max: u64, float: bool) -> Result<Document> {
    let supercritical =
        crate::distributions::offspring_mean(params) >= num_rational::BigRational::from_integer(1.into());
    if supercritical {
        eprintln!(
            "warning: {params} is supercritical; the truncated pmf is defective and its deficit approaches the survival probability"
        );
    }
    let means = progeny::progeny_mean(params).ok();

    struct Row {
        i: u64,
        mass: Option<String>,
        mass_float: f64,
    }
    let mut rows = Vec::with_capacity(i_max as usize);
    let cumulative: f64;
    if float {
        let masses = progeny::progeny_pmf_f64(params, i_max);
        cumulative = masses.iter().sum();
        for (idx, m) in masses.iter().enumerate() {
            rows.push(Row {
                i: idx as u64 + 1,
                mass: None,
                mass_float: *m,
            });
        }
    } else {
        let pmf = progeny::progeny_pmf(params, i_max)?;
        cumulative = pmf.total_mass().to_f64().unwrap_or(f64::NAN);
        for (i, m) in pmf.entries() {
            rows.push(Row {
                i: *i,
                mass: Some(m.to_string()),
                mass_float: m.to_f64().unwrap_or(f64::NAN),
            });
        }
    }
    let deficit = 1.0 - cumulative;

    let entries_json: Vec<Value> = rows
        .iter()
        .map(|r| {
            json!({
                "i": r.i,
                "mass": r.mass,
                "mass_float": r.mass_float,
            })
        })
        .collect();
    let json = json!({
        "command": "progeny",
        "d": params.degree(),
        "k": params.stifling_threshold(),
        "i_max": i_max,
        "exact": !float,
        "supercritical": supercritical,
        "entries": entries_json,
        "cumulative_mass": cumulative,
        "deficit": deficit,
        "mean_excluding_initial": means.as_ref().map(|m| m.excluding_initial.to_string()),
        "mean_including_initial": means.as_ref().map(|m| m.including_initial.to_string()),
    });

    let mut text = format!("total informed (excluding the initial spreader), {params}\n");
    let shown = rows.len().min(50);
    for r in &rows[..shown] {
        match &r.mass {
            Some(frac) => text += &format!("  P(T={}) = {frac} = {:.12}\n", r.i, r.mass_float),
            None => text += &format!("  P(T={}) = {:.12}\n", r.i, r.mass_float),
        }
    }
    if rows.len() > shown {
        text += &format!("  ... ({} more rows; use --format csv or json)\n", rows.len() - shown);
    }
    text += &format!("cumulative mass up to {i_max}: {cumulative:.9}\ndeficit: {deficit:.9}\n");
    match &means {
        Some(m) => {
            text += &format!(
                "E[T] = {} (excluding initial spreader), E[S_inf] = {} (including it)\n",
                m.excluding_initial, m.including_initial
            );
        }
        None => text += "means: infinite (supercritical)\n",
    }

    let mut csv = String::from("kind,i,mass,mass_float\n");
    for r in &rows {
        csv += &format!(
            "mass,{},{},{}\n",
            r.i,
            r.mass.clone().unwrap_or_default(),
            fmt_f64(r.mass_float)
        );
    }
    csv += &format!("cumulative,,,{}\n", fmt_f64(cumulative));
    csv += &format!("deficit,,,{}\n", fmt_f64(deficit));
    if let Some(m) = &means {
        csv += &format!(
            "mean_excluding_initial,,{},{}\n",
            m.excluding_initial,
            fmt_f64(m.excluding_initial.to_f64().unwrap_or(f64::NAN))
        );
        csv += &format!(
            "mean_including_initial,,{},{}\n",
            m.including_initial,
            fmt_f64(m.including_initial.to_f64().unwrap_or(f64::NAN))
        );
    }
    Ok(Document { text, json, csv })
}

fn range_document(from: u64, to: u64, expected: bool, series_tol: f64) -> Result<Document> {
    struct Row {
        n: u64,
        alpha1: f64,
        alpha2: f64,
        lower: f64,
        upper: f64,
    }
    let rows: Vec<Row> = (from..=to)
        .map(|n| {
            let (alpha1, alpha2) = range::extinction_time_cdf_bounds(n);
            let (lower, upper) = range::range_cdf_bounds(n);
            Row {
                n,
                alpha1,
                alpha2,
                lower,
                upper,
            }
        })
        .collect();
    let enclosure = if expected {
        Some(range::expected_range_bounds(series_tol)?)
    } else {
        None
    };

    let rows_json: Vec<Value> = rows
        .iter()
        .map(|r| {
            json!({
                "n": r.n,
                "alpha1": r.alpha1,
                "alpha2": r.alpha2,
                "range_cdf_lower": r.lower,
                "range_cdf_upper": r.upper,
            })
        })
        .collect();
    let json = json!({
        "command": "range",
        "d": 2,
        "k": 1,
        "bounds": rows_json,
        "expected_range": enclosure.as_ref().map(|b| serde_json::to_value(b).expect("serializable")),
        "series_tol": if expected { Some(series_tol) } else { None },
    });

    let mut text = String::from(
        "extinction-time and range cdf bounds (d=2, k=1)\n  n    alpha1    alpha2   P(R<=n) low  P(R<=n) high\n",
    );
    for r in &rows {
        text += &format!(
            "{:>4}  {:.6}  {:.6}     {:.6}      {:.6}\n",
            r.n, r.alpha1, r.alpha2, r.lower, r.upper
        );
    }
    if let Some(b) = &enclosure {
        text += &format!(
            "\nexpected range enclosure: [{:.6}, {:.6}]\ntail series (p = 1, 2, 3):\n  lower: {:.6} {:.6} {:.6}\n  upper: {:.6} {:.6} {:.6}\n",
            b.lower,
            b.upper,
            b.series_lower[0],
            b.series_lower[1],
            b.series_lower[2],
            b.series_upper[0],
            b.series_upper[1],
            b.series_upper[2],
        );
    }

    let csv = if let Some(b) = &enclosure {
        let mut csv = String::from("constant,value\n");
        for (p, v) in b.series_lower.iter().enumerate() {
            csv += &format!("series_lower_p{},{}\n", p + 1, fmt_f64(*v));
        }
        for (p, v) in b.series_upper.iter().enumerate() {
            csv += &format!("series_upper_p{},{}\n", p + 1, fmt_f64(*v));
        }
        csv += &format!("expected_range_lower,{}\n", fmt_f64(b.lower));
        csv += &format!("expected_range_upper,{}\n", fmt_f64(b.upper));
        csv += &format!("tail_bound,{}\n", fmt_f64(b.tail_bound));
        csv += &format!("terms,{}\n", b.terms);
        csv
    } else {
        let mut csv = String::from("n,alpha1,alpha2,range_cdf_lower,range_cdf_upper\n");
        for r in &rows {
            csv += &format!(
                "{},{},{},{},{}\n",
                r.n,
                fmt_f64(r.alpha1),
                fmt_f64(r.alpha2),
                fmt_f64(r.lower),
                fmt_f64(r.upper)
            );
        }
        csv
    };
    Ok(Document { text, json, csv })
}

fn simulate_document(params: ModelParams, cfg: &SimConfig, summary: &MonteCarloSummary) -> Document {
    let hist_json = |hist: &std::collections::BTreeMap<u32, u64>| -> Value {
        Value::Object(
            hist.iter()
                .map(|(k, v)| (k.to_string(), json!(v)))
                .collect(),
        )
    };
    let informed_json: Value = Value::Object(
        summary
            .informed_total_hist
            .iter()
            .map(|(k, v)| (k.to_string(), json!(v)))
            .collect(),
    );
    let estimate_json = |e: &Option<crate::simulate::Estimate>| match e {
        None => json!(null),
        Some(est) => json!({
            "value": est.value,
            "std_error": est.std_error,
            "std_error_defined": est.std_error.is_some(),
        }),
    };
    let survival = summary.survival_frequency();
    let informed = summary.informed_mean();
    let json = json!({
        "command": "simulate",
        "d": params.degree(),
        "k": params.stifling_threshold(),
        "engine": summary.engine,
        "base_seed": summary.base_seed,
        "requested_runs": summary.requested_runs,
        "depth_limit": summary.depth_limit,
        "vertex_budget": cfg.vertex_budget,
        "completed_runs": summary.completed_runs,
        "failed_runs": summary.failed_runs,
        "censored_runs": summary.censored_runs,
        "censoring_rate": if summary.completed_runs > 0 {
            json!(summary.censored_runs as f64 / summary.completed_runs as f64)
        } else {
            json!(null)
        },
        "survival_to_depth": estimate_json(&survival),
        "informed_mean_uncensored": estimate_json(&informed),
        "root_offspring_hist": hist_json(&summary.root_offspring_hist),
        "max_depth_hist": hist_json(&summary.max_depth_hist),
        "offspring_hist": hist_json(&summary.offspring_hist),
        "informed_total_hist": informed_json,
    });

    let fmt_est = |e: &Option<crate::simulate::Estimate>| match e {
        None => "undefined (no runs)".to_string(),
        Some(est) => match est.std_error {
            Some(se) => format!("{:.6} +- {:.6}", est.value, se),
            None => format!("{:.6} (std error undefined: single run)", est.value),
        },
    };
    let mut text = format!(
        "simulate {params} engine={} runs={} depth={} seed={}\n",
        summary.engine, summary.requested_runs, summary.depth_limit, summary.base_seed
    );
    text += &format!(
        "completed {}  failed {}  censored {}\n",
        summary.completed_runs, summary.failed_runs, summary.censored_runs
    );
    text += &format!("survival to depth: {}\n", fmt_est(&survival));
    text += &format!("mean informed (uncensored): {}\n", fmt_est(&informed));
    text += "root offspring histogram:\n";
    for (v, c) in &summary.root_offspring_hist {
        text += &format!("  {v}: {c}\n");
    }

    let mut csv = String::from("kind,key,value,std_error\n");
    csv += &format!("engine,,{},\n", summary.engine);
    csv += &format!("base_seed,,{},\n", summary.base_seed);
    csv += &format!("requested_runs,,{},\n", summary.requested_runs);
    csv += &format!("depth_limit,,{},\n", summary.depth_limit);
    csv += &format!("completed_runs,,{},\n", summary.completed_runs);
    csv += &format!("failed_runs,,{},\n", summary.failed_runs);
    csv += &format!("censored_runs,,{},\n", summary.censored_runs);
    if let Some(est) = &survival {
        csv += &format!(
            "survival_to_depth,,{},{}\n",
            fmt_f64(est.value),
            est.std_error.map(fmt_f64).unwrap_or_default()
        );
    }
    if let Some(est) = &informed {
        csv += &format!(
            "informed_mean_uncensored,,{},{}\n",
            fmt_f64(est.value),
            est.std_error.map(fmt_f64).unwrap_or_default()
        );
    }
    for (v, c) in &summary.root_offspring_hist {
        csv += &format!("root_offspring_hist,{v},{c},\n");
    }
    for (v, c) in &summary.max_depth_hist {
        csv += &format!("max_depth_hist,{v},{c},\n");
    }
    for (v, c) in &summary.offspring_hist {
        csv += &format!("offspring_hist,{v},{c},\n");
    }
    for (v, c) in &summary.informed_total_hist {
        csv += &format!("informed_total_hist,{v},{c},\n");
    }
    Document { text, json, csv }
}

fn validate_document(report: &validate::ValidationReport) -> Document {
    let json = serde_json::to_value(report).expect("report serializes");
    let mut text = format!(
        "validation suite ({} mode, seed {})\n",
        if report.quick { "quick" } else { "full" },
        report.base_seed
    );
    for c in &report.checks {
        text += &format!(
            "[{}] {} — {}\n",
            if c.passed { "PASS" } else { "FAIL" },
            c.name,
            c.detail
        );
    }
    let failures = report.failures().len();
    text += &format!(
        "{} checks, {} failed\n",
        report.checks.len(),
        failures
    );

    let mut csv = String::from("name,passed,measured,expected,tolerance\n");
    for c in &report.checks {
        csv += &format!(
            "{},{},{},{},{}\n",
            c.name.replace(',', ";"),
            c.passed,
            fmt_f64(c.measured),
            fmt_f64(c.expected),
            fmt_f64(c.tolerance)
        );
    }
    Document { text, json, csv }
}
