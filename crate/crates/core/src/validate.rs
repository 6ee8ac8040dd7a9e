//! Cross-check suite: every analytic module against an independent
//! route, and both simulators against the analytics. Run through the
//! CLI `validate` command; the same checks back the integration tests.

use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};
use serde::Serialize;

use crate::distributions::{offspring_mean, offspring_pmf, root_pmf, stifling_sum};
use crate::oracle;
use crate::params::ModelParams;
use crate::progeny;
use crate::range;
use crate::simulate::{
    monte_carlo, tv_distance_hists, tv_distance_to_pmf, Engine, SimConfig,
    DEFAULT_VERTEX_BUDGET,
};
use crate::survival::{extinction_fixed_point, survival_probability, DEFAULT_TOL};

/// Six-decimal reference grid for the survival probability, as printed
/// in the source table this build regresses against.
pub const REFERENCE_THETA_6DP: [(u32, u32, f64); 14] = [
    (2, 1, 0.000000),
    (3, 1, 0.661289),
    (4, 1, 0.869802),
    (5, 1, 0.931135),
    (6, 1, 0.957300),
    (7, 1, 0.970887),
    (50, 1, 0.999583),
    (2, 2, 0.937500),
    (3, 2, 0.991439),
    (4, 2, 0.997434),
    (5, 2, 0.998936),
    (6, 2, 0.999474),
    (7, 2, 0.999708),
    (50, 2, 0.999999),
];

/// High-precision reference values for the same grid, frozen from exact
/// polynomial root isolation done independently of this crate. Three
/// printed cells disagree with the exact algebra beyond half-ulp of six
/// decimals; see [`REFERENCE_THETA_DISCREPANT`].
pub const REFERENCE_THETA_EXACT: [(u32, u32, f64); 14] = [
    (2, 1, 0.0),
    (3, 1, 0.661_288_923_219_778_4),
    (4, 1, 0.869_802_260_461_794_7),
    (5, 1, 0.931_134_026_824_290_7),
    (6, 1, 0.957_299_562_284_252_8),
    (7, 1, 0.970_887_198_653_555_8),
    (50, 1, 0.999_583_166_811_075_3),
    (2, 2, 0.9375),
    (3, 2, 0.991_498_799_978_553_1),
    (4, 2, 0.997_434_303_349_189_6),
    (5, 2, 0.998_936_335_374_779_5),
    (6, 2, 0.999_473_874_300_663),
    (7, 2, 0.999_708_227_282_739_1),
    (50, 2, 0.999_999_851_513_118_4),
];

/// Grid cells whose printed six-decimal value deviates from the exact
/// algebra by more than 5e-7: (5,1) is mis-rounded, (50,2) truncated,
/// and (3,2) is off by 6.0e-5 (exact value `(42*sqrt(501) - 717)/225`).
pub const REFERENCE_THETA_DISCREPANT: [(u32, u32); 3] = [(5, 1), (3, 2), (50, 2)];

#[derive(Debug, Clone, Serialize)]
pub struct CheckResult {
    pub name: String,
    pub passed: bool,
    pub measured: f64,
    pub expected: f64,
    pub tolerance: f64,
    pub detail: String,
}

impl CheckResult {
    fn approx(name: impl Into<String>, measured: f64, expected: f64, tolerance: f64) -> Self {
        let passed = (measured - expected).abs() <= tolerance;
        CheckResult {
            name: name.into(),
            passed,
            measured,
            expected,
            tolerance,
            detail: format!("|{measured:.12} - {expected:.12}| <= {tolerance:.1e}"),
        }
    }

    fn claim(name: impl Into<String>, passed: bool, detail: impl Into<String>) -> Self {
        CheckResult {
            name: name.into(),
            passed,
            measured: f64::from(u8::from(passed)),
            expected: 1.0,
            tolerance: 0.0,
            detail: detail.into(),
        }
    }

    fn at_most(name: impl Into<String>, measured: f64, limit: f64) -> Self {
        CheckResult {
            name: name.into(),
            passed: measured <= limit,
            measured,
            expected: limit,
            tolerance: 0.0,
            detail: format!("{measured:.6} <= {limit:.6}"),
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct ValidationReport {
    pub quick: bool,
    pub base_seed: u64,
    pub checks: Vec<CheckResult>,
}

impl ValidationReport {
    #[must_use]
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    #[must_use]
    pub fn failures(&self) -> Vec<&CheckResult> {
        self.checks.iter().filter(|c| !c.passed).collect()
    }
}

#[derive(Debug, Clone, Copy)]
pub struct ValidateOptions {
    pub quick: bool,
    pub base_seed: u64,
}

impl Default for ValidateOptions {
    fn default() -> Self {
        ValidateOptions {
            quick: false,
            base_seed: 0xC0FFEE,
        }
    }
}

fn params(d: u32, k: u32) -> ModelParams {
    ModelParams::new(d, k).expect("grid parameters are valid")
}

/// Runs the whole suite and collects per-check outcomes; no check aborts
/// the others.
#[must_use]
pub fn run_suite(opts: &ValidateOptions) -> ValidationReport {
    let mut checks = Vec::new();
    distribution_checks(&mut checks);
    survival_checks(&mut checks);
    progeny_checks(&mut checks, opts);
    range_checks(&mut checks);
    simulator_checks(&mut checks, opts);
    ValidationReport {
        quick: opts.quick,
        base_seed: opts.base_seed,
        checks,
    }
}

fn distribution_checks(checks: &mut Vec<CheckResult>) {
    // normalization is enforced by construction; re-derive it anyway
    let mut normalized = true;
    for d in 2..=10 {
        for k in 1..=4 {
            normalized &= offspring_pmf(params(d, k)).total_mass().is_one();
            normalized &= root_pmf(params(d, k)).total_mass().is_one();
        }
    }
    checks.push(CheckResult::claim(
        "pmf normalization, d in 2..=10, k in 1..=4",
        normalized,
        "exact rational sums equal one",
    ));

    let mut oracle_match = true;
    for d in 2..=4 {
        for k in 1..=3 {
            let p = params(d, k);
            let pmf = offspring_pmf(p);
            let by_enum = oracle::offspring_by_sequence_enumeration(p);
            for (i, expect) in by_enum.iter().enumerate() {
                oracle_match &= &pmf.mass(i as u64) == expect;
            }
            let pmf = root_pmf(p);
            let by_enum = oracle::root_by_sequence_enumeration(p);
            for (i, expect) in by_enum.iter().enumerate().skip(1) {
                oracle_match &= &pmf.mass(i as u64) == expect;
            }
        }
    }
    checks.push(CheckResult::claim(
        "pmf oracle: contact-sequence enumeration, d<=4, k<=3",
        oracle_match,
        "exact equality against exhaustive enumeration",
    ));

    let mean21 = offspring_mean(params(2, 1));
    checks.push(CheckResult::claim(
        "offspring mean (2,1) = 8/9 exactly",
        mean21 == BigRational::new(8.into(), 9.into()),
        format!("mean = {mean21}"),
    ));

    let mut phase = offspring_mean(params(2, 1)) < BigRational::one();
    for d in 3..=8 {
        phase &= offspring_mean(params(d, 1)) > BigRational::one();
    }
    for d in 2..=8 {
        for k in 2..=4 {
            phase &= offspring_mean(params(d, k)) > BigRational::one();
        }
    }
    checks.push(CheckResult::claim(
        "mean thresholds: (2,1) subcritical, d>=3 or k>=2 supercritical",
        phase,
        "exact rational comparisons",
    ));
}

fn survival_checks(checks: &mut Vec<CheckResult>) {
    // exact fixture: (2,2) solves a quadratic by hand
    let fp = extinction_fixed_point(params(2, 2), DEFAULT_TOL).expect("solver");
    checks.push(CheckResult::approx("psi(2,2) = 1/4", fp.psi, 0.25, 1e-10));
    let theta = survival_probability(params(2, 2), DEFAULT_TOL).expect("solver");
    checks.push(CheckResult::approx("theta(2,2) = 15/16", theta, 0.9375, 1e-10));

    // (2,3): fixed points solve 50 s^2 - 53 s + 3 = 0, psi = 3/50; the
    // stifling sums there are cross-checked against cubic closed forms
    let mut cubic_forms = true;
    for i in 0..=6u64 {
        let closed = (i + 1) * (i + 2) * (3 * i * i + 13 * i + 12) / 24;
        cubic_forms &= stifling_sum(i, 3).expect("valid") == closed.into();
    }
    checks.push(CheckResult::claim(
        "cubic closed forms of the k=3 stifling sums",
        cubic_forms,
        "DP sums equal the polynomial forms for i <= 6",
    ));
    let theta23 = survival_probability(params(2, 3), DEFAULT_TOL).expect("solver");
    checks.push(CheckResult::approx("theta(2,3) = 0.9964", theta23, 0.9964, 5e-5));

    // full grid against exact references, and against the printed
    // six-decimal grid where that grid is internally consistent
    for ((d, k, printed), (_, _, exact)) in
        REFERENCE_THETA_6DP.iter().zip(REFERENCE_THETA_EXACT.iter())
    {
        let theta = survival_probability(params(*d, *k), DEFAULT_TOL).expect("solver");
        checks.push(CheckResult::approx(
            format!("theta({d},{k}) vs exact root isolation"),
            theta,
            *exact,
            1e-9,
        ));
        if REFERENCE_THETA_DISCREPANT.contains(&(*d, *k)) {
            checks.push(CheckResult::claim(
                format!("theta({d},{k}): printed cell known inconsistent"),
                (theta - exact).abs() <= 1e-9,
                format!(
                    "printed {printed:.6} deviates from exact {exact:.12} by {:.2e}; \
                     solver follows the exact value",
                    (printed - exact).abs()
                ),
            ));
        } else {
            checks.push(CheckResult::approx(
                format!("theta({d},{k}) vs printed 6dp grid"),
                theta,
                *printed,
                5e-7,
            ));
        }
    }

    // dual route: at the fixed point, the root mixture equals 1 - psi^2
    // because the root count is the offspring count plus one in law
    let mut dual = true;
    for (d, k) in [(3u32, 1u32), (4, 1), (2, 2), (5, 2), (50, 1)] {
        let fp = extinction_fixed_point(params(d, k), DEFAULT_TOL).expect("solver");
        let theta = survival_probability(params(d, k), DEFAULT_TOL).expect("solver");
        dual &= (theta - (1.0 - fp.psi * fp.psi)).abs() < 1e-10;
    }
    checks.push(CheckResult::claim(
        "theta = 1 - psi^2 identity (root law = offspring law shifted)",
        dual,
        "two algebraic routes to theta agree within 1e-10",
    ));

    // monotonicity in d and k, and the large-d trend
    let mut monotone = true;
    let mut prev_by_k = [0.0f64; 3];
    for d in 2..=10 {
        let mut prev_theta = -1.0;
        for k in 1..=3 {
            let theta = survival_probability(params(d, k), DEFAULT_TOL).expect("solver");
            monotone &= theta >= prev_theta;
            monotone &= theta >= prev_by_k[k as usize - 1];
            prev_theta = theta;
            prev_by_k[k as usize - 1] = theta;
        }
    }
    checks.push(CheckResult::claim(
        "theta non-decreasing in d and k over d 2..=10, k 1..=3",
        monotone,
        "all 27 grid comparisons hold",
    ));
    let theta50 = survival_probability(params(50, 1), DEFAULT_TOL).expect("solver");
    checks.push(CheckResult::claim(
        "theta(50,1) >= 0.9995 (trend toward one)",
        theta50 >= 0.9995,
        format!("theta(50,1) = {theta50:.6}"),
    ));

    // the iteration's monotonicity certificate: phi(s) > s below psi
    let mut no_smaller = true;
    for (d, k) in [(3u32, 1u32), (2, 2)] {
        let p = params(d, k);
        let fp = extinction_fixed_point(p, DEFAULT_TOL).expect("solver");
        let pmf = offspring_pmf(p);
        for j in 0..1000 {
            let s = (fp.psi - DEFAULT_TOL) * f64::from(j) / 1000.0;
            no_smaller &= pmf.pgf::<f64>(&s) > s;
        }
    }
    checks.push(CheckResult::claim(
        "no root below psi on a 1e3-point grid",
        no_smaller,
        "phi(s) > s for s < psi - tol",
    ));
}

fn progeny_checks(checks: &mut Vec<CheckResult>, opts: &ValidateOptions) {
    let p21 = params(2, 1);
    let i_max = if opts.quick { 800 } else { 2000 };
    let pmf = progeny::progeny_pmf(p21, i_max).expect("progeny");
    checks.push(CheckResult::claim(
        "P(T=1) = 1/9 and P(T=2) = 8/81 exactly",
        pmf.mass(1) == BigRational::new(1.into(), 9.into())
            && pmf.mass(2) == BigRational::new(8.into(), 81.into()),
        "exact masses",
    ));

    let closed = progeny::progeny_pmf_d2_closed_form(50).expect("closed form");
    let equal = closed.iter().all(|(i, m)| &pmf.mass(*i) == m);
    checks.push(CheckResult::claim(
        "size-biased mixture equals coefficient form for i <= 50",
        equal,
        "exact equality of the two progeny routes",
    ));

    let rec = oracle::progeny_by_recursive_convolution(p21, 15);
    let equal = (1..=15u64).all(|i| pmf.mass(i) == rec[i as usize]);
    checks.push(CheckResult::claim(
        "progeny oracle: recursive convolution, i <= 15",
        equal,
        "exact equality against the fixed-point composition route",
    ));

    let means = progeny::progeny_mean(p21).expect("subcritical");
    checks.push(CheckResult::claim(
        "E[T] = 17 and E[S_inf] = 18 exactly",
        means.excluding_initial == BigRational::from_integer(17.into())
            && means.including_initial == BigRational::from_integer(18.into()),
        format!("E[T] = {}", means.excluding_initial),
    ));

    let truncated = progeny::truncated_mean(&pmf);
    let tol = if opts.quick { 1e-3 } else { 1e-6 };
    checks.push(CheckResult::approx(
        format!("truncated progeny mean at i_max = {i_max}"),
        truncated,
        17.0,
        tol,
    ));

    // supercritical deficit approaches theta from below
    let masses = progeny::progeny_pmf_f64(params(3, 1), if opts.quick { 2000 } else { 10_000 });
    let deficit = 1.0 - masses.iter().sum::<f64>();
    let theta = survival_probability(params(3, 1), DEFAULT_TOL).expect("solver");
    checks.push(CheckResult::approx(
        "supercritical (3,1) deficit vs theta",
        deficit,
        theta,
        1e-3,
    ));
}

fn range_checks(checks: &mut Vec<CheckResult>) {
    let lower = range::FractionalLinearGf::lower_bound();
    let upper = range::FractionalLinearGf::upper_bound();
    let mean = BigRational::new(8.into(), 9.into());
    checks.push(CheckResult::claim(
        "bounding gf certificates at one",
        lower.at_one().is_one()
            && upper.at_one().is_one()
            && lower.derivative_at_one() == mean
            && upper.derivative_at_one() == mean,
        "L(1) = U(1) = 1 and L'(1) = U'(1) = 8/9 exactly",
    ));

    let h_negative = (0..1000).all(|j| {
        range::h_criterion_eval::<BigRational>(&BigRational::new(j.into(), 1000.into()))
            < BigRational::zero()
    });
    checks.push(CheckResult::claim(
        "h(s) < 0 on the 1e3-point grid of [0,1)",
        h_negative,
        "exact rational evaluation",
    ));

    let pmf = offspring_pmf(params(2, 1));
    let sandwich = (0..=999).all(|j| {
        let s = BigRational::new(j.into(), 999.into());
        let phi = pmf.pgf::<BigRational>(&s);
        lower.eval::<BigRational>(&s) <= phi && phi <= upper.eval::<BigRational>(&s)
    });
    checks.push(CheckResult::claim(
        "L <= phi <= U on the 1e3-point grid of [0,1]",
        sandwich,
        "exact rational comparisons",
    ));

    let composition = (1..=60u64).all(|n| {
        let (a1, a2) = range::extinction_time_cdf_bounds_exact(n);
        let fl = lower.iterate_from_zero(n);
        let fu = upper.iterate_from_zero(n);
        (BigRational::to_f64(&(fl - a1)).unwrap()).abs() <= 1e-10
            && (BigRational::to_f64(&(fu - a2)).unwrap()).abs() <= 1e-10
    });
    checks.push(CheckResult::claim(
        "n-fold composition reproduces alpha bounds for n <= 60",
        composition,
        "closed forms are fixed points of the composition law",
    ));

    let b = range::expected_range_bounds(1e-12).expect("series");
    let printed_lower = [4.4619, 2.0982, 1.5189];
    let printed_upper = [4.9792, 2.3592, 1.6804];
    for p in 0..3 {
        checks.push(CheckResult::approx(
            format!("tail series p={} lower constant", p + 1),
            b.series_lower[p],
            printed_lower[p],
            1e-4,
        ));
        checks.push(CheckResult::approx(
            format!("tail series p={} upper constant", p + 1),
            b.series_upper[p],
            printed_upper[p],
            1e-4,
        ));
    }
    checks.push(CheckResult::approx("expected range lower bound", b.lower, 6.144, 1e-3));
    checks.push(CheckResult::approx("expected range upper bound", b.upper, 7.448, 1e-3));
}

fn simulator_checks(checks: &mut Vec<CheckResult>, opts: &ValidateOptions) {
    let seed = opts.base_seed;
    let pmf_runs: u64 = if opts.quick { 10_000 } else { 100_000 };
    let eq_runs: u64 = if opts.quick { 10_000 } else { 50_000 };

    // reproducibility contract
    let cfg = SimConfig::new(params(2, 2), 6, DEFAULT_VERTEX_BUDGET).expect("config");
    let a = monte_carlo(&cfg, Engine::Genealogy, 2000, seed).expect("mc");
    let b = monte_carlo(&cfg, Engine::Genealogy, 2000, seed).expect("mc");
    checks.push(CheckResult::claim(
        "identical seeds give identical summaries",
        a == b,
        "bit-reproducible aggregation",
    ));

    // empirical pmfs vs exact, genealogy engine
    for (d, k) in [(2u32, 1u32), (2, 2), (3, 1)] {
        let p = params(d, k);
        let cfg = SimConfig::new(p, 10, DEFAULT_VERTEX_BUDGET).expect("config");
        let summary = monte_carlo(&cfg, Engine::Genealogy, pmf_runs, seed + u64::from(d * 16 + k))
            .expect("mc");
        let mut root_hist = std::collections::BTreeMap::new();
        for (&v, &c) in &summary.root_offspring_hist {
            root_hist.insert(v, c);
        }
        checks.push(CheckResult::at_most(
            format!("TV(empirical root pmf, exact) for ({d},{k})"),
            tv_distance_to_pmf(&root_hist, &root_pmf(p)),
            0.01,
        ));
        checks.push(CheckResult::at_most(
            format!("TV(empirical offspring pmf, exact) for ({d},{k})"),
            tv_distance_to_pmf(&summary.offspring_hist, &offspring_pmf(p)),
            0.01,
        ));
    }

    // engine equivalence on root offspring and max depth
    for (d, k) in [(2u32, 1u32), (2, 2), (3, 1)] {
        let p = params(d, k);
        let cfg = SimConfig::new(p, 8, DEFAULT_VERTEX_BUDGET).expect("config");
        let jump = monte_carlo(&cfg, Engine::JumpChain, eq_runs, seed + 101).expect("mc");
        let gen = monte_carlo(&cfg, Engine::Genealogy, eq_runs, seed + 202).expect("mc");
        checks.push(CheckResult::at_most(
            format!("engine TV on root offspring for ({d},{k})"),
            tv_distance_hists(&jump.root_offspring_hist, &gen.root_offspring_hist),
            0.02,
        ));
        checks.push(CheckResult::at_most(
            format!("engine TV on max depth for ({d},{k})"),
            tv_distance_hists(&jump.max_depth_hist, &gen.max_depth_hist),
            0.02,
        ));
    }

    // subcritical totals: mean informed within 3 standard errors of 17
    let cfg = SimConfig::new(params(2, 1), 1000, DEFAULT_VERTEX_BUDGET).expect("config");
    let summary = monte_carlo(&cfg, Engine::Genealogy, pmf_runs, seed + 7).expect("mc");
    let mean = summary.informed_mean().expect("runs present");
    let se = mean.std_error.expect("more than one run");
    checks.push(CheckResult::approx(
        "mean informed total (2,1) within 3 SE of 17",
        mean.value,
        17.0,
        3.0 * se,
    ));

    // progeny histogram vs exact pmf over the full support: the TV
    // statistic over several hundred atoms needs about 1e6 runs before
    // its own sampling noise drops under the 0.01 budget
    let tv_runs: u64 = if opts.quick { 500_000 } else { 1_000_000 };
    let tv_summary = monte_carlo(&cfg, Engine::Genealogy, tv_runs, seed + 29).expect("mc");
    let exact = progeny::progeny_pmf(params(2, 1), 600).expect("progeny");
    let mut informed_hist = std::collections::BTreeMap::new();
    for (&v, &c) in &tv_summary.informed_total_hist {
        informed_hist.insert(v as u32, c);
    }
    checks.push(CheckResult::at_most(
        "TV(empirical progeny, exact pmf) for (2,1)",
        tv_distance_to_pmf(&informed_hist, &exact),
        0.01,
    ));

    // range cdf sandwich with 3-sigma slack
    let mut sandwiched = true;
    let mut worst = String::new();
    for n in 1..=8u32 {
        let est = summary.range_cdf_estimate(n).expect("estimate");
        let se = est.std_error.unwrap_or(0.0);
        let (lo, hi) = range::range_cdf_bounds(u64::from(n));
        if est.value < lo - 3.0 * se || est.value > hi + 3.0 * se {
            sandwiched = false;
            worst = format!("n={n}: {:.4} outside [{lo:.4}, {hi:.4}] +- 3se", est.value);
        }
    }
    checks.push(CheckResult::claim(
        "empirical P(R <= n) inside the bound sandwich, n = 1..=8",
        sandwiched,
        if worst.is_empty() {
            "all eight levels inside".to_string()
        } else {
            worst
        },
    ));

    // reach-to-depth frequency vs theta (finite-depth proxy biases the
    // frequency upward by at most the probability of dying after the
    // boundary, small at this depth)
    let depth = if opts.quick { 20 } else { 30 };
    let runs = if opts.quick { 4000 } else { 20_000 };
    let cfg = SimConfig::new(params(3, 1), depth, DEFAULT_VERTEX_BUDGET).expect("config");
    let summary = monte_carlo(&cfg, Engine::Genealogy, runs, seed + 13).expect("mc");
    let freq = summary.survival_frequency().expect("estimate");
    let se = freq.std_error.unwrap_or(0.0);
    let theta = survival_probability(params(3, 1), DEFAULT_TOL).expect("solver");
    checks.push(CheckResult::approx(
        format!("reach-depth-{depth} frequency vs theta(3,1)"),
        freq.value,
        theta,
        3.0 * se + 5e-3,
    ));
}
