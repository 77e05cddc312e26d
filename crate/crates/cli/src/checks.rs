//! The golden-value verification suite: thirteen numbered checks, each with
//! its tolerance and time limit pinned below. `verify-all` and the
//! `acceptance` test target both run this list.

use std::f64::consts::PI;
use std::time::Instant;

use num_complex::Complex;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use serde_json::{json, Value};
use strichartz_core::montecarlo::MonteCarloSpec;
use strichartz_core::norms::{first_moment_cross_term, strichartz_norm_gaussian, InitialData, TimeQuadratureSpec};
use strichartz_core::propagator::{evolve_gaussian, evolve_grid, fourier_forward};
use strichartz_core::search::{optimize, ratio_report, FunctionalId, SearchSpec, SimplexParams};
use strichartz_core::surfaces::{cone_pair_weight, cone_triple_weight, extension_norm_power, extension_ratio_report, isometric_factor, ExtensionSpec};
use strichartz_core::theorem1::{rhs_functional, sobolev_strichartz_report, theorem1_report, ProductTransform};
use strichartz_core::{
    kernel_k, kernel_k_centered, normalization_residual, reversed_hls_1d, CorollaryCase, CorollaryKind, Exponent, GaussianProfile,
    GridFunction, StrichartzCase, SurfaceFunction, TrialFunction, COROLLARY_CASES,
};

use crate::commands::{self, cone_gaussian_table};
use crate::config::{Command, Profile, RunConfig};
use crate::report::to_json_bytes;

pub const CONSTANTS_REL_TOL: f64 = 1e-12;
pub const EXACT_RATIO_TOL: f64 = 1e-8;
pub const MC_SIGMAS: f64 = 3.0;
/// Relative stderr cap at 10⁶ samples; scaled by √(10⁶/samples) otherwise.
pub const MC_REL_STDERR: f64 = 5e-3;
pub const MC_REFERENCE_SAMPLES: f64 = 1e6;
pub const MC_CASE_SECONDS: f64 = 60.0;
pub const STRICT_C2: f64 = 0.5;
pub const MIXED_TOL: f64 = 1e-8;
pub const SOBOLEV_TOL: f64 = 1e-6;
pub const CROSS_TERM_TOL: f64 = 1e-10;
pub const PAIR_WEIGHT_TOL: f64 = 1e-6;
pub const TRIPLE_WEIGHT_TOL: f64 = 1e-3;
pub const PAIR_POINTS: usize = 10;
pub const TRIPLE_POINTS: usize = 5;
pub const CONE3_TOL: f64 = 1e-3;
pub const CONE2_TOL: f64 = 5e-3;
pub const PARABOLOID_TOL: f64 = 1e-6;
pub const RESIDUAL_TOL: f64 = 1e-12;
pub const KERNEL_TOL: f64 = 1e-12;
pub const KERNEL_TUPLES: usize = 1000;
pub const MASS_TOL: f64 = 1e-12;
pub const GROUP_LAW_TOL: f64 = 1e-10;
pub const REVERSAL_TOL: f64 = 1e-12;
pub const OPTIMIZER_MIN_RATIO: f64 = 0.999;
pub const OPTIMIZER_MAX_COEFF: f64 = 0.02;
pub const OPTIMIZER_BUDGET: usize = 500;
pub const OPTIMIZER_START_C2: f64 = 0.3;
pub const BECKNER_TOL: f64 = 1e-4;

#[derive(Debug, Clone, Serialize)]
pub struct CheckResult {
    pub id: u32,
    pub name: &'static str,
    pub passed: bool,
    pub seconds: f64,
    pub limit_seconds: Option<f64>,
    pub detail: String,
    pub values: Value,
}

impl CheckResult {
    pub fn line(&self) -> String {
        let limit = self.limit_seconds.map_or(String::new(), |l| format!(" / {l:.0}s"));
        format!(
            "{} {:>2} {:<28} {:>8.2}s{limit}  {}",
            if self.passed { "PASS" } else { "FAIL" },
            self.id,
            self.name,
            self.seconds,
            self.detail
        )
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SuiteSettings {
    pub samples: u64,
    pub seed: u64,
    pub chunk_size: u64,
    pub workers: usize,
}

impl SuiteSettings {
    pub fn full() -> Self {
        Self { samples: 1_000_000, seed: 7, chunk_size: 16_384, workers: 0 }
    }

    pub fn quick() -> Self {
        Self { samples: 250_000, ..Self::full() }
    }

    pub fn from_config(cfg: &RunConfig) -> Self {
        let base = match cfg.profile {
            Profile::Quick => Self::quick(),
            Profile::Full => Self::full(),
        };
        Self { seed: cfg.seed, chunk_size: cfg.chunk_size, workers: cfg.workers, ..base }
    }

    fn mc(&self) -> MonteCarloSpec {
        MonteCarloSpec::new(self.samples, self.seed).with_chunk_size(self.chunk_size).with_workers(self.workers)
    }

    fn stderr_cap(&self) -> f64 {
        MC_REL_STDERR * (MC_REFERENCE_SAMPLES / self.samples as f64).sqrt()
    }
}

/// What a check body reports: its verdict, a one-line summary and the
/// numbers behind it.
struct Finding {
    ok: bool,
    detail: String,
    values: Value,
}

type Body = fn(&SuiteSettings) -> Result<Finding, String>;

const CHECKS: [(u32, &str, Option<f64>, Body); 13] = [
    (1, "constants golden table", Some(1.0), constants),
    (2, "theorem1 closed-form", Some(5.0), theorem1_exact),
    (3, "theorem1 monte carlo", Some(180.0), theorem1_mc),
    (4, "strictness off maximizer", Some(30.0), strictness),
    (5, "mixed-norm constants", Some(5.0), mixed_norms),
    (6, "sobolev-strichartz equality", Some(30.0), sobolev),
    (7, "cone weight invariance", Some(120.0), cone_weights),
    (8, "cone sharp equality", Some(120.0), cone_equality),
    (9, "paraboloid sharp equality", Some(10.0), paraboloid),
    (10, "algebraic identities", Some(10.0), identities),
    (11, "optimizer recovery", Some(120.0), optimizer),
    (12, "beckner desk check", Some(10.0), beckner),
    (13, "worker reproducibility", None, reproducibility),
];

/// Check ids in suite order.
pub fn ids() -> impl Iterator<Item = u32> {
    CHECKS.iter().map(|c| c.0)
}

pub fn run_check(id: u32, settings: &SuiteSettings) -> CheckResult {
    let &(id, name, limit, body) = CHECKS.iter().find(|c| c.0 == id).expect("check ids are 1..=13");
    let start = Instant::now();
    let outcome = body(settings);
    let seconds = start.elapsed().as_secs_f64();
    let in_time = limit.map_or(true, |l| seconds <= l);
    match outcome {
        Ok(v) => CheckResult {
            id,
            name,
            passed: v.ok && in_time,
            seconds,
            limit_seconds: limit,
            detail: if in_time { v.detail } else { format!("{} (over time limit)", v.detail) },
            values: v.values,
        },
        Err(e) => CheckResult { id, name, passed: false, seconds, limit_seconds: limit, detail: format!("error: {e}"), values: Value::Null },
    }
}

pub fn run_suite(settings: &SuiteSettings) -> Vec<CheckResult> {
    ids().map(|id| run_check(id, settings)).collect()
}

fn e<E: std::fmt::Display>(err: E) -> String {
    err.to_string()
}

fn rel(a: f64, b: f64) -> f64 {
    ((a - b) / b).abs()
}

fn constants(_: &SuiteSettings) -> Result<Finding, String> {
    // the constants written out independently of the table's closed forms
    let want = [
        ("n1_q6_r6", 12f64.powf(-1.0 / 12.0)),
        ("n1_q8_r4", 2f64.powf(-0.25)),
        ("n2_q4_r4", 2f64.powf(-0.5)),
        ("sob_n1_q10_r10", (2.0 * 5f64.sqrt() * PI).powf(-0.1)),
        ("sob_n1_q12_r6", (6.0 * PI).powf(-1.0 / 12.0)),
        ("sob_n1_q16_r4", (8.0 * PI).powf(-1.0 / 16.0)),
        ("sob_n2_q6_r6", (12.0 * PI).powf(-1.0 / 6.0)),
        ("sob_n2_q8_r4", (16.0 * PI).powf(-0.125)),
        ("sob_n4_q4_r4", (32.0 * PI).powf(-0.25)),
        ("parab_n1_q6", (2.0 * PI).powf(-0.5) * 12f64.powf(-1.0 / 12.0)),
        ("parab_n2_q4", (4.0 * PI).powf(-0.5)),
        ("cone_n2_q6", (2.0 * PI).powf(1.0 / 3.0)),
        ("cone_n3_q4", (2.0 * PI).powf(0.25)),
    ];
    if want.len() != COROLLARY_CASES.len() {
        return Err("table size changed".into());
    }
    let mut worst = 0.0f64;
    let mut rows = Vec::new();
    for (id, w) in want {
        let case = CorollaryCase::lookup(id).map_err(e)?;
        let (closed, derived) = (case.closed_form::<f64>(), case.derived::<f64>());
        let err = rel(closed, w).max(rel(derived, w));
        worst = worst.max(err);
        rows.push(json!({ "case": id, "closed_form": closed, "derived": derived, "relative_error": err }));
    }
    Ok(Finding { ok: worst <= CONSTANTS_REL_TOL, detail: format!("max rel err {worst:.2e} (tol {CONSTANTS_REL_TOL:.0e})"), values: json!(rows) })
}

fn standard(n: usize) -> InitialData<f64> {
    InitialData::Gaussian(GaussianProfile::standard(n))
}

fn theorem1_exact(s: &SuiteSettings) -> Result<Finding, String> {
    let mut worst = 0.0f64;
    let mut rows = Vec::new();
    for (n, k) in [(1, 3), (2, 2)] {
        let r = theorem1_report(&standard(n), &StrichartzCase::theorem1(n, k).map_err(e)?, &s.mc(), &TimeQuadratureSpec::gaussian()).map_err(e)?;
        let ratio = r.ratio.ok_or("vanishing rhs")?;
        worst = worst.max((ratio - 1.0).abs());
        rows.push(json!({ "n": n, "k": k, "ratio": ratio }));
    }
    Ok(Finding { ok: worst <= EXACT_RATIO_TOL, detail: format!("max |ratio-1| {worst:.2e} (tol {EXACT_RATIO_TOL:.0e})"), values: json!(rows) })
}

fn theorem1_mc(s: &SuiteSettings) -> Result<Finding, String> {
    let cap = s.stderr_cap();
    let mut ok = true;
    let mut parts = Vec::new();
    let mut rows = Vec::new();
    for (n, k) in [(1, 4), (2, 3), (1, 5)] {
        let start = Instant::now();
        let r = theorem1_report(&standard(n), &StrichartzCase::theorem1(n, k).map_err(e)?, &s.mc(), &TimeQuadratureSpec::gaussian()).map_err(e)?;
        let ratio = r.ratio.ok_or("vanishing rhs")?;
        let err = r.ratio_error();
        let rel_stderr = r.rhs_err / r.rhs;
        let seconds = start.elapsed().as_secs_f64();
        let this = (ratio - 1.0).abs() <= MC_SIGMAS * err && rel_stderr <= cap && rel_stderr > 0.0 && seconds <= MC_CASE_SECONDS;
        ok &= this;
        parts.push(format!("({n},{k}) {ratio:.5}±{err:.1e}"));
        rows.push(json!({ "n": n, "k": k, "ratio": ratio, "ratio_error": err, "relative_stderr": rel_stderr, "seconds": seconds, "pass": this }));
    }
    // chi moment: 2K = (η₁−η₂)²+… has E[K^{1/2}] = 2/√π under e^{−ω²} factors
    let pt = ProductTransform::from_data(&standard(1), 4).map_err(e)?;
    let fv = rhs_functional(&pt, &StrichartzCase::theorem1(1, 4).map_err(e)?, &s.mc()).map_err(e)?;
    let want = 2.0 / PI.sqrt();
    let oracle = (fv.kernel_mean - want).abs() <= MC_SIGMAS * fv.kernel_mean_stderr;
    ok &= oracle;
    parts.push(format!("E[K^1/2] {:.5}±{:.1e} vs {want:.5}", fv.kernel_mean, fv.kernel_mean_stderr));
    let values = json!({ "cases": rows, "kernel_mean": fv.kernel_mean, "kernel_mean_stderr": fv.kernel_mean_stderr, "oracle": want, "samples": s.samples });
    Ok(Finding { ok, detail: parts.join("; "), values })
}

fn strictness(_: &SuiteSettings) -> Result<Finding, String> {
    let mut ok = true;
    let mut parts = Vec::new();
    let mut rows = Vec::new();
    for (n, k) in [(1, 3), (2, 2)] {
        let t = TrialFunction::with_coefficient(GaussianProfile::standard(n), 2, Complex::new(STRICT_C2, 0.0)).map_err(e)?;
        let r = ratio_report(&t, &FunctionalId::Theorem1 { n, k }, &SearchSpec::default()).map_err(e)?;
        let ratio = r.ratio.ok_or("vanishing rhs")?;
        let margin = MC_SIGMAS * r.ratio_error();
        let this = ratio < 1.0 - margin;
        ok &= this;
        parts.push(format!("({n},{k}) {ratio:.6}"));
        rows.push(json!({ "n": n, "k": k, "ratio": ratio, "margin": margin }));
    }
    Ok(Finding { ok, detail: parts.join("; "), values: json!(rows) })
}

fn mixed_norms(_: &SuiteSettings) -> Result<Finding, String> {
    let g = GaussianProfile::standard(1);
    let mut worst = 0.0f64;
    let mut rows = Vec::new();
    for (q, r, want) in [(8, 4, 2f64.powf(-0.25)), (6, 6, 12f64.powf(-1.0 / 12.0))] {
        let norm = strichartz_norm_gaussian(&g, Exponent::int(q), Exponent::int(r), &TimeQuadratureSpec::gaussian()).map_err(e)?;
        let ratio = norm.value / g.l2_norm();
        worst = worst.max((ratio - want).abs());
        rows.push(json!({ "q": q, "r": r, "norm_over_l2": ratio, "constant": want }));
    }
    Ok(Finding { ok: worst <= MIXED_TOL, detail: format!("max |norm/|f| - C| {worst:.2e} (tol {MIXED_TOL:.0e})"), values: json!(rows) })
}

fn sobolev(_: &SuiteSettings) -> Result<Finding, String> {
    let mut worst = 0.0f64;
    let mut rows = Vec::new();
    for case in COROLLARY_CASES.iter().filter(|c| c.kind == CorollaryKind::SobolevStrichartz) {
        let r = sobolev_strichartz_report(&standard(case.n), case.id, &TimeQuadratureSpec::gaussian()).map_err(e)?;
        let ratio = r.ratio.ok_or("vanishing rhs")?;
        worst = worst.max((ratio - 1.0).abs());
        rows.push(json!({ "case": case.id, "ratio": ratio }));
    }
    // the positivity identity: ∫∫ g(x)g(y) x·y = |∫ x g|², zero when centred
    let centred = GridFunction::from_gaussian(&GaussianProfile::standard(1), 12.0, 256).map_err(e)?;
    let x0 = 0.7;
    let shifted = GridFunction::from_gaussian(&GaussianProfile::standard(1).translated(&[x0]), 14.0, 256).map_err(e)?;
    let (c0, c1) = (first_moment_cross_term(&centred).map_err(e)?, first_moment_cross_term(&shifted).map_err(e)?);
    let want = 2.0 * PI * x0 * x0;
    let identity = c0.abs() <= CROSS_TERM_TOL && rel(c1, want) <= CROSS_TERM_TOL;
    let ok = worst <= SOBOLEV_TOL && rows.len() == 6 && identity;
    let detail = format!("6 cases max |ratio-1| {worst:.2e} (tol {SOBOLEV_TOL:.0e}); identity {c0:.1e}, {:.2e}", rel(c1, want));
    Ok(Finding { ok, detail, values: json!({ "cases": rows, "cross_term_centred": c0, "cross_term_shifted": c1, "cross_term_expected": want }) })
}

fn cone_weights(s: &SuiteSettings) -> Result<Finding, String> {
    let mut rng = ChaCha8Rng::seed_from_u64(s.seed);
    let mut pair_worst = 0.0f64;
    for _ in 0..PAIR_POINTS {
        let om: [f64; 3] = [rng.gen_range(-2.0..2.0), rng.gen_range(-2.0..2.0), rng.gen_range(-2.0..2.0)];
        let tau = om.iter().map(|v| v * v).sum::<f64>().sqrt() + rng.gen_range(0.05..3.0);
        pair_worst = pair_worst.max(rel(cone_pair_weight(tau, &om).map_err(e)?.value, 2.0 * PI));
    }
    let mut triple_worst = 0.0f64;
    for _ in 0..TRIPLE_POINTS {
        let om: [f64; 2] = [rng.gen_range(-2.0..2.0), rng.gen_range(-2.0..2.0)];
        let tau = om.iter().map(|v| v * v).sum::<f64>().sqrt() + rng.gen_range(0.1..3.0);
        triple_worst = triple_worst.max(rel(cone_triple_weight(tau, &om).map_err(e)?.value, 4.0 * PI * PI));
    }
    Ok(Finding {
        ok: pair_worst <= PAIR_WEIGHT_TOL && triple_worst <= TRIPLE_WEIGHT_TOL,
        detail: format!("pair {pair_worst:.1e} (tol {PAIR_WEIGHT_TOL:.0e}), triple {triple_worst:.1e} (tol {TRIPLE_WEIGHT_TOL:.0e})"),
        values: json!({ "pair_max_rel_error": pair_worst, "triple_max_rel_error": triple_worst }),
    })
}

fn cone_equality(_: &SuiteSettings) -> Result<Finding, String> {
    let spec = ExtensionSpec::default();
    let lhs = |n: usize, q: f64| -> Result<f64, String> {
        let sf = SurfaceFunction::cone_radial(n, -1.0).map_err(e)?;
        Ok(extension_norm_power(&sf, q, &spec).map_err(e)?.value * isometric_factor::<f64>(n, q))
    };
    let (l3, l2) = (lhs(3, 4.0)?, lhs(2, 6.0)?);
    let (w3, w2) = (2.0 * PI.powi(3), 4.0 * PI.powi(5));
    let wrong = extension_ratio_report(&cone_gaussian_table(3, -1.0, 0.0)?, "cone_n3_q4", &ExtensionSpec::table()).map_err(e)?;
    let wrong_ratio = wrong.ratio.ok_or("vanishing rhs")?;
    let strict = wrong_ratio < 1.0 - MC_SIGMAS * wrong.ratio_error();
    let ok = rel(l3, w3) <= CONE3_TOL && rel(l2, w2) <= CONE2_TOL && strict;
    let detail = format!("n=3 {:.1e} (tol {CONE3_TOL:.0e}), n=2 {:.1e} (tol {CONE2_TOL:.0e}), e^-|w|^2 ratio {wrong_ratio:.4}", rel(l3, w3), rel(l2, w2));
    Ok(Finding { ok, detail, values: json!({ "n3_norm4": l3, "n2_norm6": l2, "gaussian_profile_ratio": wrong_ratio }) })
}

fn paraboloid(_: &SuiteSettings) -> Result<Finding, String> {
    // e^{−|ω|²/2} has ‖g‖₂² = π, so (4π)^{−2}·π² = 1/16
    let sf = SurfaceFunction::paraboloid_gaussian(&GaussianProfile::standard(2));
    let v = extension_norm_power(&sf, 4.0, &ExtensionSpec::default()).map_err(e)?.value;
    let err = (v - 1.0 / 16.0).abs();
    Ok(Finding { ok: err <= PARABOLOID_TOL, detail: format!("|norm4^4 - 1/16| {err:.1e} (tol {PARABOLOID_TOL:.0e})"), values: json!({ "norm4": v }) })
}

fn identities(s: &SuiteSettings) -> Result<Finding, String> {
    let mut residual = 0.0f64;
    for n in 1..=4 {
        for k in 2..=6 {
            if (n, k) != (1, 2) {
                residual = residual.max(normalization_residual::<f64>(n, k).map_err(e)?);
            }
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(s.seed);
    let mut kernel = 0.0f64;
    for i in 0..KERNEL_TUPLES {
        let (n, k) = (1 + i % 3, 2 + i % 5);
        let eta: Vec<Vec<f64>> = (0..k).map(|_| (0..n).map(|_| rng.gen_range(-3.0..3.0)).collect()).collect();
        kernel = kernel.max((kernel_k(&eta).map_err(e)? - kernel_k_centered(&eta).map_err(e)?).abs());
    }
    let g = GaussianProfile::new(1, Complex::new(-0.5, 0.3), vec![Complex::new(0.2, 1.0)], Complex::new(0.0, 0.0)).map_err(e)?;
    let f = GridFunction::from_gaussian(&g, 24.0, 512).map_err(e)?;
    let norm = f.l2_norm();
    let parseval = rel(fourier_forward(&f).l2_norm(), norm);
    let (s1, s2) = (0.3, 0.45);
    let mass = [s1, s2, s1 + s2].iter().map(|&t| rel(evolve_grid(&f, t).field.l2_norm(), norm)).fold(0.0, f64::max);
    let gauss_mass = rel(evolve_gaussian(&g, 1.7).profile().l2_norm(), g.l2_norm());
    let composed = evolve_grid(&evolve_grid(&f, s1).field, s2).field;
    let group = composed.max_abs_diff(&evolve_grid(&f, s1 + s2).field).map_err(e)? / f.max_abs();
    let reversal = evolve_grid(&f.conj(), -s2).field.max_abs_diff(&evolve_grid(&f, s2).field.conj()).map_err(e)? / f.max_abs();
    let ok = residual <= RESIDUAL_TOL
        && kernel <= KERNEL_TOL
        && parseval.max(mass).max(gauss_mass) <= MASS_TOL
        && group <= GROUP_LAW_TOL
        && reversal <= REVERSAL_TOL;
    let detail = format!(
        "residual {residual:.0e}, kernel {kernel:.0e}, mass {:.0e}, group {group:.0e}, reversal {reversal:.0e}",
        parseval.max(mass).max(gauss_mass)
    );
    let values = json!({
        "normalization_residual": residual,
        "kernel_difference": kernel,
        "parseval": parseval,
        "grid_mass": mass,
        "gaussian_mass": gauss_mass,
        "group_law": group,
        "time_reversal": reversal,
    });
    Ok(Finding { ok, detail, values })
}

fn optimizer(_: &SuiteSettings) -> Result<Finding, String> {
    let init = TrialFunction::with_coefficient(GaussianProfile::standard(1), 2, Complex::new(OPTIMIZER_START_C2, 0.0)).map_err(e)?;
    let id = FunctionalId::Theorem1 { n: 1, k: 3 };
    let r = optimize(&id, &init, OPTIMIZER_BUDGET, &SimplexParams::default(), &SearchSpec::default()).map_err(e)?;
    let norm = r.best.coeff_norm();
    let ok = r.best_ratio >= OPTIMIZER_MIN_RATIO && norm <= OPTIMIZER_MAX_COEFF && r.evaluations <= OPTIMIZER_BUDGET;
    Ok(Finding {
        ok,
        detail: format!("ratio {:.8}, |c| {norm:.1e}, {} evaluations", r.best_ratio, r.evaluations),
        values: json!({ "ratio": r.best_ratio, "coefficient_norm": norm, "evaluations": r.evaluations, "recentered_loss": r.recentered_loss }),
    })
}

fn beckner(_: &SuiteSettings) -> Result<Finding, String> {
    let h = reversed_hls_1d(|x: f64| (1.0 + x * x).powf(-1.5), 1.0, 1.0).map_err(e)?;
    let err = (h.ratio - 1.0).abs();
    Ok(Finding {
        ok: err <= BECKNER_TOL,
        detail: format!("ratio {:.6} with C(1,1) = {:.6} (tol {BECKNER_TOL:.0e})", h.ratio, h.constant),
        values: json!({ "pairing": h.pairing, "norm_sq": h.norm_sq, "constant": h.constant, "ratio": h.ratio }),
    })
}

/// Repeats the (1,4) Monte Carlo run through the CLI pipeline with one and
/// with four workers and compares the serialized numbers byte for byte.
fn reproducibility(s: &SuiteSettings) -> Result<Finding, String> {
    let run = |workers: usize| -> Result<Vec<u8>, String> {
        let mut cfg = RunConfig::defaults(Command::Theorem1);
        cfg.n = Some(1);
        cfg.k = Some(4);
        cfg.samples = s.samples;
        cfg.seed = s.seed;
        cfg.chunk_size = s.chunk_size;
        cfg.workers = workers;
        let report = commands::execute(&cfg)?;
        Ok(to_json_bytes(&(report.value, report.stderr, report.lhs, report.rhs, report.ratio, report.tolerance, report.verdict, report.details)))
    };
    let (a, b) = (run(1)?, run(4)?);
    let same = a == b;
    Ok(Finding {
        ok: same,
        detail: format!("workers 1 vs 4: {} ({} bytes)", if same { "identical" } else { "different" }, a.len()),
        values: json!({ "identical": same, "bytes": a.len() }),
    })
}
