//! Stochastic simulators for the rumor process on truncated trees, and
//! seeded, reproducible Monte Carlo aggregation over independent runs.

mod genealogy;
mod jumpchain;
mod tree;

pub use genealogy::{genealogy_run, genealogy_run_tree};
pub use jumpchain::{gillespie_run, gillespie_run_tree, JumpChain};
pub use tree::{Contact, SimConfig, TruncatedTree, Vertex, VertexState, DEFAULT_VERTEX_BUDGET, ROOT};

use std::collections::BTreeMap;

use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};

/// Per-run summary.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SimOutcome {
    /// Realized root offspring count.
    pub root_offspring: u32,
    /// Vertices ever informed, root excluded.
    pub informed_total: u64,
    pub max_depth_reached: u32,
    /// The boundary was reached, so extinction was not decided.
    pub censored: bool,
    /// Index `n` counts informed vertices at depth `n + 1`.
    pub generation_counts: Vec<u64>,
    /// Realized offspring counts of completed non-root spreaders.
    pub offspring_histogram: BTreeMap<u32, u64>,
}

/// Which simulator drives a run.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Engine {
    JumpChain,
    Genealogy,
}

impl std::str::FromStr for Engine {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "jumpchain" | "jump-chain" | "jump_chain" => Ok(Engine::JumpChain),
            "genealogy" => Ok(Engine::Genealogy),
            other => Err(Error::InvalidArgument(format!(
                "unknown engine '{other}' (expected jumpchain or genealogy)"
            ))),
        }
    }
}

impl std::fmt::Display for Engine {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Engine::JumpChain => write!(f, "jumpchain"),
            Engine::Genealogy => write!(f, "genealogy"),
        }
    }
}

/// Deterministic per-run generator: one ChaCha8 stream per run index on
/// top of the base seed, so any subset of runs can be reproduced on any
/// platform and both engines can be driven from the same base seed.
#[must_use]
pub fn run_rng(base_seed: u64, run_index: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(base_seed);
    rng.set_stream(run_index);
    rng
}

/// One seeded run on the chosen engine.
pub fn simulate_one(
    engine: Engine,
    cfg: &SimConfig,
    base_seed: u64,
    run_index: u64,
) -> Result<SimOutcome> {
    let mut rng = run_rng(base_seed, run_index);
    match engine {
        Engine::JumpChain => gillespie_run(cfg, &mut rng),
        Engine::Genealogy => genealogy_run(cfg, &mut rng),
    }
}

/// Point estimate with its standard error; the error is `None` when the
/// sample is too small to estimate one.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Estimate {
    pub value: f64,
    pub std_error: Option<f64>,
}

/// Aggregate over independent runs. Every accumulator is an integer, so
/// merging is exact, commutative and associative: parallel and serial
/// execution produce identical summaries.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MonteCarloSummary {
    pub engine: Engine,
    pub base_seed: u64,
    pub requested_runs: u64,
    pub depth_limit: u32,
    /// Runs that finished within the vertex budget.
    pub completed_runs: u64,
    /// Runs that hit the vertex budget, by count.
    pub failed_runs: u64,
    /// Completed runs that reached the depth limit.
    pub censored_runs: u64,
    pub root_offspring_hist: BTreeMap<u32, u64>,
    pub max_depth_hist: BTreeMap<u32, u64>,
    /// Informed totals of uncensored runs only.
    pub informed_total_hist: BTreeMap<u64, u64>,
    /// Offspring counts pooled over completed non-root spreaders.
    pub offspring_hist: BTreeMap<u32, u64>,
    informed_sum: u128,
    informed_sq_sum: u128,
}

impl MonteCarloSummary {
    fn empty(engine: Engine, cfg: &SimConfig, base_seed: u64, requested_runs: u64) -> Self {
        MonteCarloSummary {
            engine,
            base_seed,
            requested_runs,
            depth_limit: cfg.depth_limit,
            completed_runs: 0,
            failed_runs: 0,
            censored_runs: 0,
            root_offspring_hist: BTreeMap::new(),
            max_depth_hist: BTreeMap::new(),
            informed_total_hist: BTreeMap::new(),
            offspring_hist: BTreeMap::new(),
            informed_sum: 0,
            informed_sq_sum: 0,
        }
    }

    fn record(&mut self, outcome: &Result<SimOutcome>) {
        match outcome {
            Err(_) => self.failed_runs += 1,
            Ok(out) => {
                self.completed_runs += 1;
                *self.root_offspring_hist.entry(out.root_offspring).or_insert(0) += 1;
                *self.max_depth_hist.entry(out.max_depth_reached).or_insert(0) += 1;
                for (&off, &count) in &out.offspring_histogram {
                    *self.offspring_hist.entry(off).or_insert(0) += count;
                }
                if out.censored {
                    self.censored_runs += 1;
                } else {
                    *self
                        .informed_total_hist
                        .entry(out.informed_total)
                        .or_insert(0) += 1;
                    self.informed_sum += u128::from(out.informed_total);
                    self.informed_sq_sum +=
                        u128::from(out.informed_total) * u128::from(out.informed_total);
                }
            }
        }
    }

    fn merge(mut self, other: Self) -> Self {
        self.completed_runs += other.completed_runs;
        self.failed_runs += other.failed_runs;
        self.censored_runs += other.censored_runs;
        for (k, v) in other.root_offspring_hist {
            *self.root_offspring_hist.entry(k).or_insert(0) += v;
        }
        for (k, v) in other.max_depth_hist {
            *self.max_depth_hist.entry(k).or_insert(0) += v;
        }
        for (k, v) in other.informed_total_hist {
            *self.informed_total_hist.entry(k).or_insert(0) += v;
        }
        for (k, v) in other.offspring_hist {
            *self.offspring_hist.entry(k).or_insert(0) += v;
        }
        self.informed_sum += other.informed_sum;
        self.informed_sq_sum += other.informed_sq_sum;
        self
    }

    /// Uncensored run count.
    #[must_use]
    pub fn uncensored_runs(&self) -> u64 {
        self.completed_runs - self.censored_runs
    }

    /// Fraction of completed runs that reached the depth limit, with a
    /// binomial standard error.
    #[must_use]
    pub fn survival_frequency(&self) -> Option<Estimate> {
        if self.completed_runs == 0 {
            return None;
        }
        let n = self.completed_runs as f64;
        let p = self.censored_runs as f64 / n;
        let std_error = if self.completed_runs >= 2 {
            Some((p * (1.0 - p) / n).sqrt())
        } else {
            None
        };
        Some(Estimate { value: p, std_error })
    }

    /// Mean informed count over uncensored runs.
    #[must_use]
    pub fn informed_mean(&self) -> Option<Estimate> {
        let n = self.uncensored_runs();
        if n == 0 {
            return None;
        }
        let nf = n as f64;
        let mean = self.informed_sum as f64 / nf;
        let std_error = if n >= 2 {
            let var = (self.informed_sq_sum as f64 - nf * mean * mean) / (nf - 1.0);
            Some((var.max(0.0) / nf).sqrt())
        } else {
            None
        };
        Some(Estimate { value: mean, std_error })
    }

    /// `P(R <= n)` estimate: completed runs whose maximal reached depth
    /// is at most `n`. Exact as long as `n < depth_limit`.
    #[must_use]
    pub fn range_cdf_estimate(&self, n: u32) -> Option<Estimate> {
        if self.completed_runs == 0 {
            return None;
        }
        let within: u64 = self
            .max_depth_hist
            .iter()
            .filter(|(depth, _)| **depth <= n)
            .map(|(_, c)| *c)
            .sum();
        let total = self.completed_runs as f64;
        let p = within as f64 / total;
        let std_error = if self.completed_runs >= 2 {
            Some((p * (1.0 - p) / total).sqrt())
        } else {
            None
        };
        Some(Estimate { value: p, std_error })
    }
}

/// Normalizes an integer histogram into an empirical distribution.
#[must_use]
pub fn normalize_hist<K: Copy + Ord>(hist: &BTreeMap<K, u64>) -> Vec<(K, f64)> {
    let total: u64 = hist.values().sum();
    if total == 0 {
        return Vec::new();
    }
    hist.iter()
        .map(|(k, v)| (*k, *v as f64 / total as f64))
        .collect()
}

/// Executes `runs` independent seeded runs (in parallel when a rayon
/// pool is available) and aggregates them. Identical inputs produce
/// bit-identical summaries at any parallelism degree.
pub fn monte_carlo(
    cfg: &SimConfig,
    engine: Engine,
    runs: u64,
    base_seed: u64,
) -> Result<MonteCarloSummary> {
    if runs < 1 {
        return Err(Error::InvalidArgument("runs must be >= 1".into()));
    }
    let summary = (0..runs)
        .into_par_iter()
        .fold(
            || MonteCarloSummary::empty(engine, cfg, base_seed, runs),
            |mut acc, idx| {
                acc.record(&simulate_one(engine, cfg, base_seed, idx));
                acc
            },
        )
        .reduce(
            || MonteCarloSummary::empty(engine, cfg, base_seed, runs),
            MonteCarloSummary::merge,
        );
    Ok(summary)
}

/// Total variation distance between two empirical distributions given as
/// histograms.
#[must_use]
pub fn tv_distance_hists<K: Copy + Ord>(a: &BTreeMap<K, u64>, b: &BTreeMap<K, u64>) -> f64 {
    let pa = normalize_hist(a);
    let pb = normalize_hist(b);
    let mut keys: Vec<K> = pa.iter().map(|(k, _)| *k).collect();
    keys.extend(pb.iter().map(|(k, _)| *k));
    keys.sort_unstable();
    keys.dedup();
    let lookup = |dist: &[(K, f64)], key: K| {
        dist.iter()
            .find(|(k, _)| *k == key)
            .map_or(0.0, |(_, p)| *p)
    };
    0.5 * keys
        .iter()
        .map(|&k| (lookup(&pa, k) - lookup(&pb, k)).abs())
        .sum::<f64>()
}

/// Total variation distance between an empirical histogram and an exact
/// pmf over `u64` support.
#[must_use]
pub fn tv_distance_to_pmf(hist: &BTreeMap<u32, u64>, pmf: &crate::pmf::ExactPmf) -> f64 {
    let total: u64 = hist.values().sum();
    if total == 0 {
        return 1.0;
    }
    let mut keys: Vec<u64> = hist.keys().map(|&k| u64::from(k)).collect();
    keys.extend(pmf.entries().iter().map(|(v, _)| *v));
    keys.sort_unstable();
    keys.dedup();
    let exact: Vec<(u64, f64)> = pmf.to_f64_entries();
    0.5 * keys
        .iter()
        .map(|&k| {
            let emp = hist
                .get(&(k as u32))
                .map_or(0.0, |&c| c as f64 / total as f64);
            let ex = exact.iter().find(|(v, _)| *v == k).map_or(0.0, |(_, p)| *p);
            (emp - ex).abs()
        })
        .sum::<f64>()
}
