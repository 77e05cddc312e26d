//! One pipeline per subcommand. Every function validates its whole
//! configuration before computing, and returns `Err(message)` for usage
//! errors; verdicts travel in the `Ok` value.

use std::time::Instant;

use num_complex::Complex;
use serde_json::{json, Value};
use strichartz_core::domain::case::SOBOLEV_WHITELIST;
use strichartz_core::montecarlo::MonteCarloSpec;
use strichartz_core::norms::{strichartz_norm, InitialData, TimeQuadratureSpec};
use strichartz_core::search::{optimize, perturbation_scan, ratio_report, FunctionalId, ScanDirection, SearchSpec, SimplexParams};
use strichartz_core::surfaces::{extension_ratio_report, surface_l2_norm, ExtensionSpec, RadialTable, SurfaceKind};
use strichartz_core::theorem1::{mixed_corollary_report, sobolev_strichartz_report, theorem1_report};
use strichartz_core::{
    CorollaryCase, CorollaryKind, Exponent, RatioReport, StrichartzCase, SurfaceFunction, TrialFunction, Verdict, COROLLARY_CASES,
};

use crate::checks;
use crate::config::{Command, RunConfig};
use crate::input::{parse_complex_list, parse_real_list, InputSpec};
use crate::report::{Outcome, Report};

pub type CmdResult = Result<(Outcome, Verdict), String>;

/// Relative agreement demanded of the constants table.
pub const CONSTANTS_TOLERANCE: f64 = 1e-12;
/// |best ratio − 1| accepted by `optimize`.
pub const OPTIMIZE_TOLERANCE: f64 = 1e-3;
/// Flatness demanded of symmetry scans, on top of 3 combined errors.
pub const SCAN_TOLERANCE: f64 = 1e-6;
pub const DEFAULT_EPSILONS: &str = "-0.1,-0.05,-0.01,0,0.01,0.05,0.1";
pub const DEFAULT_START_COEFFS: &str = "0,0.3";

/// Runs the configured command inside a pool of `workers` threads and
/// stamps the wall time.
pub fn execute(cfg: &RunConfig) -> Result<Report, String> {
    let mut pool = rayon::ThreadPoolBuilder::new();
    if cfg.workers > 0 {
        pool = pool.num_threads(cfg.workers);
    }
    let pool = pool.build().map_err(|e| format!("cannot build worker pool: {e}"))?;
    let start = Instant::now();
    let (outcome, verdict) = pool.install(|| run(cfg))?;
    Ok(Report::new(cfg.clone(), outcome, verdict, start.elapsed().as_secs_f64()))
}

pub fn run(cfg: &RunConfig) -> CmdResult {
    match cfg.command {
        Command::Constants => constants(cfg),
        Command::Theorem1 => theorem1(cfg),
        Command::Strichartz => strichartz(cfg),
        Command::Sobolev => sobolev(cfg),
        Command::Cone => cone(cfg),
        Command::Paraboloid => paraboloid(cfg),
        Command::Optimize => optimize_cmd(cfg),
        Command::Scan => scan(cfg),
        Command::VerifyAll => verify_all(cfg),
    }
}

fn err<E: std::fmt::Display>(e: E) -> String {
    e.to_string()
}

fn mc_spec(cfg: &RunConfig) -> MonteCarloSpec {
    MonteCarloSpec::new(cfg.samples, cfg.seed).with_chunk_size(cfg.chunk_size).with_workers(cfg.workers)
}

/// Re-judges an equality report with a user tolerance; for strict reports
/// the tolerance replaces the margin below 1.
fn apply_tolerance(r: RatioReport, tolerance: Option<f64>, equality: bool) -> RatioReport {
    match tolerance {
        Some(tol) if equality => RatioReport::equality(r.lhs, r.rhs, r.lhs_err, r.rhs_err, r.expected, tol),
        Some(tol) => {
            let mut s = r.clone();
            s.tolerance = tol;
            s.verdict = match s.ratio {
                Some(q) if q < 1.0 - tol => Verdict::Pass,
                Some(q) if q.is_finite() => Verdict::Fail,
                _ => Verdict::Indeterminate,
            };
            s
        }
        None => r,
    }
}

fn ratio_result(r: RatioReport, cfg: &RunConfig, equality: bool, details: Value) -> CmdResult {
    let r = apply_tolerance(r, cfg.tolerance, equality);
    Ok((Outcome::from_ratio(&r).with_details(details), r.verdict))
}

fn parse_exponent(s: &Option<String>, flag: &str) -> Result<Exponent, String> {
    let s = s.as_deref().ok_or_else(|| format!("missing --{flag}"))?;
    Exponent::parse(s).map_err(err)
}

fn input_spec(cfg: &RunConfig, n: usize) -> Result<InputSpec, String> {
    let spec = match &cfg.input {
        Some(s) => InputSpec::parse(s)?,
        None => InputSpec::standard_gaussian(n),
    };
    if let Some(d) = spec.dim() {
        if d != n {
            return Err(format!("input has dimension {d}, the case needs {n}"));
        }
    }
    Ok(spec)
}

/// Trial function from `--coeffs`, based on the `--input` Gaussian.
fn trial(cfg: &RunConfig, n: usize, default_coeffs: Option<&str>) -> Result<Option<TrialFunction>, String> {
    let coeffs = match cfg.coeffs.as_deref().or(default_coeffs) {
        Some(c) => parse_complex_list(c)?,
        None => return Ok(None),
    };
    let base = input_spec(cfg, n)?.gaussian().map_err(|e| format!("--coeffs needs a gaussian base: {e}"))?;
    TrialFunction::new(base, coeffs).map(Some).map_err(err)
}

/// Initial data for the Schrödinger pipelines, with the matching time quadrature.
fn initial_data(cfg: &RunConfig, n: usize) -> Result<(InitialData<f64>, TimeQuadratureSpec), String> {
    if let Some(t) = trial(cfg, n, None)? {
        return Ok((InitialData::Trial(t), TimeQuadratureSpec::gaussian()));
    }
    match input_spec(cfg, n)? {
        spec @ InputSpec::Gaussian { .. } => Ok((InitialData::Gaussian(spec.gaussian()?), TimeQuadratureSpec::gaussian())),
        spec @ InputSpec::Grid(_) => {
            let g = spec.load_grid()?;
            if g.dim() != n {
                return Err(format!("grid has dimension {}, the case needs {n}", g.dim()));
            }
            Ok((InitialData::Grid(g), TimeQuadratureSpec::grid()))
        }
        InputSpec::Exponential { .. } => Err("exponential inputs live on the cone; use a gaussian or grid input".into()),
    }
}

fn is_maximizer(data: &InitialData<f64>) -> bool {
    match data {
        InitialData::Gaussian(_) => true,
        InitialData::Trial(t) => t.coeff_norm() == 0.0,
        InitialData::Grid(_) => false,
    }
}

fn constants(cfg: &RunConfig) -> CmdResult {
    let tol = cfg.tolerance.unwrap_or(CONSTANTS_TOLERANCE);
    let mut worst = 0.0f64;
    let rows: Vec<Value> = COROLLARY_CASES
        .iter()
        .map(|c| {
            let value: f64 = c.closed_form();
            let derived: f64 = c.derived();
            let rel = ((derived - value) / value).abs();
            worst = worst.max(rel);
            json!({ "case": c.id, "kind": c.kind, "value": value, "derived": derived, "relative_difference": rel })
        })
        .collect();
    let verdict = if worst <= tol { Verdict::Pass } else { Verdict::Fail };
    let outcome = Outcome { value: Some(worst), expected: Some(0.0), tolerance: Some(tol), details: json!({ "table": rows }), ..Outcome::default() };
    Ok((outcome, verdict))
}

/// (n, k) from `--n/--k` or a `--case nN_kK` id.
fn n_k(cfg: &RunConfig) -> Result<(usize, usize), String> {
    if let (Some(n), Some(k)) = (cfg.n, cfg.k) {
        return Ok((n, k));
    }
    if let Some(id) = &cfg.case_id {
        if let Ok(FunctionalId::Theorem1 { n, k }) = FunctionalId::parse(id) {
            return Ok((n, k));
        }
    }
    Err("theorem1 needs --n and --k (or --case nN_kK)".into())
}

fn theorem1(cfg: &RunConfig) -> CmdResult {
    let (n, k) = n_k(cfg)?;
    let case = StrichartzCase::theorem1(n, k).map_err(err)?;
    let (data, quad) = initial_data(cfg, n)?;
    let equality = is_maximizer(&data);
    let r = theorem1_report(&data, &case, &mc_spec(cfg), &quad).map_err(err)?;
    let power = case.kernel_power().map(|p| p.to_string());
    let samples = if power.as_deref() == Some("0") { 0 } else { cfg.samples };
    ratio_result(r, cfg, equality, json!({ "n": n, "k": k, "kernel_power": power, "samples": samples }))
}

/// Table id from `--case`, else assembled from `--n/--q/--r` by `make`.
fn table_id(cfg: &RunConfig, make: impl FnOnce(usize) -> Result<String, String>) -> Result<String, String> {
    match (&cfg.case_id, cfg.n) {
        (Some(id), _) => Ok(id.clone()),
        (None, Some(n)) => make(n),
        (None, None) => Err("missing --case or --n".into()),
    }
}

fn strichartz(cfg: &RunConfig) -> CmdResult {
    let id = table_id(cfg, |n| {
        let (q, r) = (parse_exponent(&cfg.q, "q")?, parse_exponent(&cfg.r, "r")?);
        Ok(format!("n{n}_q{q}_r{r}"))
    })?;
    if let Ok(case) = CorollaryCase::lookup(&id) {
        if case.kind != CorollaryKind::Strichartz {
            return Err(format!("{id} is not a Strichartz case"));
        }
        let (data, quad) = initial_data(cfg, case.n)?;
        let equality = is_maximizer(&data);
        let l2 = data.l2_norm();
        let r = mixed_corollary_report(&data, case, &quad).map_err(err)?;
        let constant: f64 = case.closed_form();
        let details = json!({ "case": id, "constant": constant, "norm_over_l2": r.lhs / l2 });
        return ratio_result(r, cfg, equality, details);
    }
    // an admissible pair without a tabulated constant: report the norm only
    let n = cfg.n.ok_or_else(|| format!("unknown case id {id:?}"))?;
    let (q, r) = (parse_exponent(&cfg.q, "q")?, parse_exponent(&cfg.r, "r")?);
    StrichartzCase::mixed(n, q, r).map_err(err)?;
    let (data, quad) = initial_data(cfg, n)?;
    let norm = strichartz_norm(&data, q, r, &quad).map_err(err)?;
    let l2 = data.l2_norm();
    let outcome = Outcome {
        value: Some(norm.value / l2),
        stderr: Some(norm.error / l2),
        lhs: Some(norm.value),
        details: json!({ "case": null, "n": n, "q": q.to_string(), "r": r.to_string(), "reliable": norm.reliable }),
        ..Outcome::default()
    };
    Ok((outcome, if norm.reliable { Verdict::Pass } else { Verdict::Indeterminate }))
}

fn sobolev(cfg: &RunConfig) -> CmdResult {
    let id = table_id(cfg, |n| {
        let (q, r) = (parse_exponent(&cfg.q, "q")?, parse_exponent(&cfg.r, "r")?);
        Ok(format!("sob_n{n}_q{q}_r{r}"))
    })?;
    let case = CorollaryCase::lookup(&id).map_err(|_| {
        let known: Vec<String> = SOBOLEV_WHITELIST.iter().map(|(n, q, r)| format!("sob_n{n}_q{q}_r{r}")).collect();
        format!("unknown Sobolev-Strichartz case {id:?}; known: {}", known.join(", "))
    })?;
    let (data, quad) = initial_data(cfg, case.n)?;
    let equality = is_maximizer(&data);
    let r = sobolev_strichartz_report(&data, &id, &quad).map_err(err)?;
    let details = json!({
        "case": id,
        "constant": case.closed_form::<f64>(),
        "gradient_norm": data.gradient_norm(),
        "l2_norm": data.l2_norm(),
    });
    ratio_result(r, cfg, equality, details)
}

/// Radial table of e^{A r² + C} on the cone, the standard non-maximizer.
pub fn cone_gaussian_table(n: usize, a: f64, c: f64) -> Result<SurfaceFunction, String> {
    if !(a < 0.0) {
        return Err(format!("cone gaussian input needs A < 0, got {a}"));
    }
    let r_max = (49.0 / -a).sqrt();
    let table = RadialTable::from_fn(r_max, 2801, |r: f64| Complex::new((a * r * r + c).exp(), 0.0)).map_err(err)?;
    SurfaceFunction::radial(SurfaceKind::Cone, n, table).map_err(err)
}

fn cone(cfg: &RunConfig) -> CmdResult {
    let id = table_id(cfg, |n| {
        let q = match (&cfg.q, n) {
            (Some(q), _) => q.clone(),
            (None, 2) => "6".into(),
            (None, 3) => "4".into(),
            (None, _) => return Err(format!("no cone case in dimension {n}")),
        };
        Ok(format!("cone_n{n}_q{q}"))
    })?;
    let case = CorollaryCase::lookup(&id).map_err(err)?;
    if case.kind != CorollaryKind::Cone {
        return Err(format!("{id} is not a cone case"));
    }
    let n = case.n;
    let spec = match &cfg.input {
        Some(s) => InputSpec::parse(s)?,
        None => InputSpec::Exponential { a: Complex::new(-1.0, 0.0), b: vec![Complex::new(0.0, 0.0); n], c: Complex::new(0.0, 0.0) },
    };
    if spec.dim().is_some_and(|d| d != n) {
        return Err(format!("input has dimension {}, {id} needs {n}", spec.dim().unwrap_or(0)));
    }
    let (sf, ext) = match spec {
        InputSpec::Exponential { a, b, c } => (SurfaceFunction::exponential(SurfaceKind::Cone, n, a, b, c).map_err(err)?, ExtensionSpec::default()),
        InputSpec::Gaussian { a, b, c } => {
            if b.iter().any(|z| z.norm() != 0.0) || a.im != 0.0 || c.im != 0.0 {
                return Err("cone gaussian input must be radial and real (b = 0, real A and C)".into());
            }
            (cone_gaussian_table(n, a.re, c.re)?, ExtensionSpec::table())
        }
        InputSpec::Grid(_) => return Err("grid inputs are not supported on the cone".into()),
    };
    let equality = matches!(sf.profile(), strichartz_core::surfaces::SurfaceProfile::Exponential { .. });
    let r = extension_ratio_report(&sf, &id, &ext).map_err(err)?;
    let details = json!({ "case": id, "constant": case.closed_form::<f64>(), "surface_l2_norm": surface_l2_norm(&sf).map_err(err)?, "convention": "isometric" });
    ratio_result(r, cfg, equality, details)
}

fn paraboloid(cfg: &RunConfig) -> CmdResult {
    let id = table_id(cfg, |n| match n {
        1 => Ok("parab_n1_q6".into()),
        2 => Ok("parab_n2_q4".into()),
        _ => Err(format!("no paraboloid case in dimension {n}")),
    })?;
    let case = CorollaryCase::lookup(&id).map_err(err)?;
    if case.kind != CorollaryKind::Paraboloid {
        return Err(format!("{id} is not a paraboloid case"));
    }
    let details = json!({ "case": id, "constant": case.closed_form::<f64>(), "convention": "unitary" });
    if let Some(t) = trial(cfg, case.n, None)? {
        let equality = t.coeff_norm() == 0.0;
        let spec = SearchSpec { mc: mc_spec(cfg), quad: TimeQuadratureSpec::gaussian() };
        let r = ratio_report(&t, &FunctionalId::Corollary(case), &spec).map_err(err)?;
        return ratio_result(r, cfg, equality, details);
    }
    let g = input_spec(cfg, case.n)?.gaussian().map_err(|e| format!("paraboloid input: {e}"))?;
    let sf = SurfaceFunction::paraboloid_gaussian(&g);
    let r = extension_ratio_report(&sf, &id, &ExtensionSpec::default()).map_err(err)?;
    ratio_result(r, cfg, true, details)
}

fn functional(cfg: &RunConfig) -> Result<FunctionalId, String> {
    let id = match (&cfg.case_id, cfg.n, cfg.k) {
        (Some(id), _, _) => id.clone(),
        (None, Some(n), Some(k)) => format!("n{n}_k{k}"),
        _ => return Err("missing --case (a functional id such as n1_k3) or --n/--k".into()),
    };
    FunctionalId::parse(&id).map_err(err)
}

fn complex_pairs(z: &[Complex<f64>]) -> Value {
    Value::Array(z.iter().map(|c| json!([c.re, c.im])).collect())
}

fn optimize_cmd(cfg: &RunConfig) -> CmdResult {
    let id = functional(cfg)?;
    let init = trial(cfg, id.dim(), Some(DEFAULT_START_COEFFS))?.expect("default coefficients");
    let spec = SearchSpec { mc: mc_spec(cfg), quad: TimeQuadratureSpec::gaussian() };
    let res = optimize(&id, &init, cfg.budget, &SimplexParams::default(), &spec).map_err(err)?;
    let tol = cfg.tolerance.unwrap_or(OPTIMIZE_TOLERANCE);
    let verdict = if (res.best_ratio - 1.0).abs() <= tol { Verdict::Pass } else { Verdict::Fail };
    let outcome = Outcome {
        value: Some(res.best_ratio),
        ratio: Some(res.best_ratio),
        expected: Some(1.0),
        tolerance: Some(tol),
        details: json!({
            "coefficients": complex_pairs(res.best.hermite_coeffs()),
            "coefficient_norm": res.best.coeff_norm(),
            "evaluations": res.evaluations,
            "exhausted": res.exhausted,
            "recentered_loss": res.recentered_loss,
            "trace": res.trace,
        }),
        ..Outcome::default()
    };
    Ok((outcome, verdict))
}

fn scan(cfg: &RunConfig) -> CmdResult {
    let id = functional(cfg)?;
    let direction = ScanDirection::parse(cfg.direction.as_deref().ok_or("scan needs --direction (h<j>, scaling, translation, modulation, zero)")?).map_err(err)?;
    let eps = parse_real_list(cfg.epsilons.as_deref().unwrap_or(DEFAULT_EPSILONS))?;
    let at = trial(cfg, id.dim(), Some(""))?.expect("empty coefficient list");
    let spec = SearchSpec { mc: mc_spec(cfg), quad: TimeQuadratureSpec::gaussian() };
    let res = perturbation_scan(&id, &at, direction, &eps, &spec).map_err(err)?;
    let tol = cfg.tolerance.unwrap_or(SCAN_TOLERANCE);
    let max_err = res.points.iter().map(|p| p.error).fold(0.0, f64::max);
    let bounded = res.points.iter().all(|p| p.ratio <= 1.0 + 3.0 * p.error + tol);
    let (lo, hi) = res.points.iter().fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), p| (lo.min(p.ratio), hi.max(p.ratio)));
    let flat = !direction.is_symmetry() || hi - lo <= tol + 3.0 * max_err;
    let verdict = if bounded && flat { Verdict::Pass } else { Verdict::Fail };
    let outcome = Outcome {
        value: res.second_difference,
        stderr: Some(max_err),
        tolerance: Some(tol),
        details: json!({ "direction": cfg.direction, "symmetry": direction.is_symmetry(), "points": res.points, "spread": hi - lo }),
        ..Outcome::default()
    };
    Ok((outcome, verdict))
}

fn verify_all(cfg: &RunConfig) -> CmdResult {
    let settings = checks::SuiteSettings::from_config(cfg);
    let checks: Vec<_> = checks::ids()
        .map(|id| {
            let r = checks::run_check(id, &settings);
            eprintln!("{}", r.line());
            r
        })
        .collect();
    let passed = checks.iter().filter(|c| c.passed).count();
    let verdict = if passed == checks.len() { Verdict::Pass } else { Verdict::Fail };
    let outcome = Outcome {
        value: Some(passed as f64),
        expected: Some(checks.len() as f64),
        details: json!({ "profile": cfg.profile, "checks": checks }),
        ..Outcome::default()
    };
    Ok((outcome, verdict))
}
