//! Derivative-free search over Hermite-perturbed Gaussians and perturbation
//! scans around the Gaussian family.
//!
//! The ratio of a trial function does not depend on its base Gaussian:
//! Re A dilates, Im A shifts time, Re b and Im b translate in frequency and
//! space, and C is absorbed by homogeneity. The simplex therefore moves only
//! the Hermite coefficients, in the scaled coordinates e_j = c_j √(2^j j!)
//! in which ‖f̂‖² ∝ 1 + Σ|e_j|².

use num_complex::Complex;
use rayon::prelude::*;
use serde::Serialize;

use crate::domain::case::{Exponent, StrichartzCase};
use crate::domain::constants::{CorollaryCase, CorollaryKind};
use crate::domain::gaussian::GaussianProfile;
use crate::domain::report::RatioReport;
use crate::error::{Error, Result};
use crate::montecarlo::MonteCarloSpec;
use crate::norms::{InitialData, TimeQuadratureSpec};
use crate::scalar::Scalar;
use crate::theorem1::{mixed_corollary_report, theorem1_report, EXACT_RATIO_TOLERANCE};
use crate::trial::TrialFunction;

/// A functional the search can maximize.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub enum FunctionalId {
    /// ‖u‖_{2k}^{2k} against the kernel functional, written `n1_k3`.
    Theorem1 { n: usize, k: usize },
    /// A Strichartz, Sobolev-Strichartz or paraboloid table row.
    Corollary(&'static CorollaryCase),
}

impl FunctionalId {
    pub fn parse(id: &str) -> Result<Self> {
        if let Some((n, k)) = id.strip_prefix('n').and_then(|s| s.split_once("_k")) {
            if let (Ok(n), Ok(k)) = (n.parse(), k.parse()) {
                StrichartzCase::theorem1(n, k)?;
                return Ok(Self::Theorem1 { n, k });
            }
        }
        let case = CorollaryCase::lookup(id)?;
        if case.kind == CorollaryKind::Cone {
            return Err(Error::Unsupported(format!("{id}: trial functions live on the paraboloid, not the cone")));
        }
        Ok(Self::Corollary(case))
    }

    pub fn dim(&self) -> usize {
        match self {
            Self::Theorem1 { n, .. } => *n,
            Self::Corollary(c) => c.n,
        }
    }

    /// True when the ratio is deterministic (no Monte Carlo).
    pub fn is_exact(&self) -> bool {
        match self {
            Self::Theorem1 { n, k } => matches!((n, k), (1, 3) | (2, 2)),
            Self::Corollary(_) => true,
        }
    }
}

/// Evaluation settings shared by every objective call; the Monte Carlo seed
/// is reused across calls so that the landscape is deterministic.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SearchSpec {
    pub mc: MonteCarloSpec,
    pub quad: TimeQuadratureSpec,
}

impl Default for SearchSpec {
    fn default() -> Self {
        Self { mc: MonteCarloSpec::new(200_000, 0), quad: TimeQuadratureSpec::gaussian() }
    }
}

/// Full report for one trial function.
pub fn ratio_report<T: Scalar>(trial: &TrialFunction<T>, id: &FunctionalId, spec: &SearchSpec) -> Result<RatioReport<T>> {
    if trial.dim() != id.dim() {
        return Err(Error::DimensionMismatch { expected: id.dim(), found: trial.dim() });
    }
    let data = InitialData::Trial(trial.clone());
    match id {
        FunctionalId::Theorem1 { n, k } => theorem1_report(&data, &StrichartzCase::theorem1(*n, *k)?, &spec.mc, &spec.quad),
        FunctionalId::Corollary(case) => match case.kind {
            CorollaryKind::Strichartz | CorollaryKind::SobolevStrichartz => mixed_corollary_report(&data, case, &spec.quad),
            CorollaryKind::Paraboloid => paraboloid_trial_report(trial, case, &spec.quad),
            CorollaryKind::Cone => Err(Error::Unsupported("cone functionals of trial functions".into())),
        },
    }
}

/// The paraboloid extension of g = f̂ is (2π)^{−1/2} u(t, −x), so
/// ‖(g dσ)^‖_q^q = (2π)^{−q/2} ‖u‖_q^q against (C ‖g‖₂)^q.
fn paraboloid_trial_report<T: Scalar>(trial: &TrialFunction<T>, case: &CorollaryCase, quad: &TimeQuadratureSpec) -> Result<RatioReport<T>> {
    let q = T::from_u32(case.q).expect("small");
    let e = Exponent::int(case.q as i64);
    let norm = trial.strichartz_norm(e, e, quad)?;
    let scale = (T::lit(2.0) * T::PI()).powf(-q * T::lit(0.5));
    let lhs = norm.value.powf(q) * scale;
    let lhs_err = q * lhs * norm.error / norm.value;
    let rhs = case.closed_form::<T>().powf(q);
    Ok(if trial.coeff_norm() == T::zero() {
        let probe = RatioReport::equality(lhs, rhs, lhs_err, T::zero(), T::one(), T::zero());
        let tol = (T::lit(3.0) * probe.ratio_error()).max(T::lit(EXACT_RATIO_TOLERANCE));
        RatioReport::equality(lhs, rhs, lhs_err, T::zero(), T::one(), tol)
    } else {
        RatioReport::strict(lhs, rhs, lhs_err, T::zero())
    })
}

/// The ratio alone.
pub fn ratio_objective<T: Scalar>(trial: &TrialFunction<T>, id: &FunctionalId, spec: &SearchSpec) -> Result<T> {
    ratio_report(trial, id, spec)?.ratio.ok_or_else(|| Error::Degenerate("right-hand side vanishes".into()))
}

/// Nelder-Mead coefficients. `adaptive` replaces the classic
/// (1, 2, 1/2, 1/2) by the dimension-dependent
/// (1, 1 + 2/d, 3/4 − 1/(2d), 1 − 1/d), which keeps the simplex from
/// collapsing in higher dimension.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SimplexParams {
    pub initial_step: f64,
    pub diameter_tol: f64,
    pub adaptive: bool,
    /// Fix the gauge c₁ = c₂ = 0 before searching (see [`optimize`]).
    pub recenter: bool,
}

impl Default for SimplexParams {
    fn default() -> Self {
        Self { initial_step: 0.25, diameter_tol: 1e-6, adaptive: true, recenter: true }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct OptimizeResult<T> {
    pub best: TrialFunction<T>,
    pub best_ratio: T,
    /// Best-so-far ratio after each objective evaluation.
    pub trace: Vec<T>,
    pub evaluations: usize,
    /// The budget ran out before the simplex contracted.
    pub exhausted: bool,
    /// Relative L² mass dropped when the start point was recentered.
    pub recentered_loss: Option<T>,
}

fn hermite_scale<T: Scalar>(j: usize) -> T {
    // √(2^j j!)
    let mut s = T::one();
    for i in 1..=j {
        s = s * T::lit(2.0) * T::from_usize_lossy(i);
    }
    s.sqrt()
}

/// Maps simplex coordinates to trial functions: the free coefficients
/// c_j, j ≥ `first`, as scaled real and imaginary parts; c_j for j < first
/// are pinned at zero.
struct Chart<T: Scalar> {
    base: GaussianProfile<T>,
    order: usize,
    first: usize,
}

impl<T: Scalar> Chart<T> {
    fn coords(&self, c: &[Complex<T>]) -> Vec<T> {
        (self.first..=self.order)
            .flat_map(|j| {
                let z = c.get(j - 1).copied().unwrap_or(Complex::new(T::zero(), T::zero()));
                let s = hermite_scale::<T>(j);
                [z.re * s, z.im * s]
            })
            .collect()
    }

    fn trial(&self, x: &[T]) -> Result<TrialFunction<T>> {
        let mut c = vec![Complex::new(T::zero(), T::zero()); self.order];
        for (i, p) in x.chunks(2).enumerate() {
            let j = self.first + i;
            c[j - 1] = Complex::new(p[0], p[1]) / hermite_scale::<T>(j);
        }
        TrialFunction::new(self.base.clone(), c)
    }
}

struct Counter<'a, T: Scalar> {
    id: &'a FunctionalId,
    spec: &'a SearchSpec,
    budget: usize,
    trace: Vec<T>,
    best: Option<(T, TrialFunction<T>)>,
}

impl<T: Scalar> Counter<'_, T> {
    fn remaining(&self) -> usize {
        self.budget - self.trace.len()
    }

    /// Deficits 1 − ratio of up to `remaining()` trials, evaluated
    /// concurrently but recorded in input order, so the trace does not
    /// depend on the thread count.
    fn eval_many(&mut self, trials: Vec<TrialFunction<T>>) -> Result<Vec<T>> {
        let take = trials.len().min(self.remaining());
        let values: Vec<Result<T>> = trials[..take].par_iter().map(|t| Ok(T::one() - ratio_objective(t, self.id, self.spec)?)).collect();
        let mut out = Vec::with_capacity(take);
        for (t, v) in trials.into_iter().zip(values) {
            let v = v?;
            let v = if v.is_finite() { v } else { T::infinity() };
            if self.best.as_ref().map_or(true, |(b, _)| v < *b) {
                self.best = Some((v, t));
            }
            self.trace.push(T::one() - self.best.as_ref().expect("set above").0);
            out.push(v);
        }
        Ok(out)
    }

    fn eval_points(&mut self, chart: &Chart<T>, xs: &[Vec<T>]) -> Result<Vec<T>> {
        let trials = xs.iter().take(self.remaining()).map(|x| chart.trial(x)).collect::<Result<Vec<_>>>()?;
        self.eval_many(trials)
    }

    fn finish(self, exhausted: bool, recentered_loss: Option<T>) -> OptimizeResult<T> {
        let (deficit, best) = self.best.expect("at least one evaluation");
        OptimizeResult { best, best_ratio: T::one() - deficit, evaluations: self.trace.len(), trace: self.trace, exhausted, recentered_loss }
    }
}

/// Nelder-Mead on the Hermite coefficients of `init`, maximizing the ratio
/// of `id`. Terminates when the simplex diameter (in scaled coordinates)
/// drops below `params.diameter_tol` or after `budget` evaluations.
///
/// With `params.recenter` the start point is first rewritten about a
/// refitted Gaussian with c₁ = c₂ = 0 (c₁ = 0 for n ≥ 2) and those
/// coefficients stay pinned: they are tangent to the symmetry orbit of the
/// Gaussian family, where the ratio is flat to fourth or sixth order and
/// the simplex would otherwise drift without approaching the family.
pub fn optimize<T: Scalar>(id: &FunctionalId, init: &TrialFunction<T>, budget: usize, params: &SimplexParams, spec: &SearchSpec) -> Result<OptimizeResult<T>> {
    if budget == 0 {
        return Err(Error::InvalidInput("budget must be at least 1".into()));
    }
    if !(init.base().a().re < T::zero()) {
        return Err(Error::Domain("initial base needs Re A < 0".into()));
    }
    let mut ctr = Counter { id, spec, budget, trace: Vec::new(), best: None };
    let f0 = ctr.eval_many(vec![init.clone()])?[0];
    let order = init.hermite_coeffs().len();
    if order == 0 || (init.coeff_norm() == T::zero() && f0.abs() <= T::lit(EXACT_RATIO_TOLERANCE)) {
        // already a Gaussian: nothing to improve
        return Ok(ctr.finish(false, None));
    }

    let (start, first, loss) = if params.recenter {
        let (t, loss) = init.recentered()?;
        let first = if init.dim() == 1 { 3 } else { 2 };
        (t, first.min(order + 1), Some(loss))
    } else {
        (init.clone(), 1, None)
    };
    let chart = Chart { base: start.base().clone(), order, first };
    let x0 = chart.coords(start.hermite_coeffs());
    let d = x0.len();
    if d == 0 {
        if ctr.remaining() > 0 {
            ctr.eval_many(vec![start])?;
        }
        return Ok(ctr.finish(false, loss));
    }
    if ctr.remaining() == 0 {
        return Ok(ctr.finish(true, loss));
    }
    let f_start = ctr.eval_points(&chart, std::slice::from_ref(&x0))?[0];

    let df = T::from_usize_lossy(d);
    let (alpha, gamma, rho, sigma) = if params.adaptive {
        (T::one(), T::one() + T::lit(2.0) / df, T::lit(0.75) - T::lit(0.5) / df, T::one() - T::one() / df)
    } else {
        (T::one(), T::lit(2.0), T::lit(0.5), T::lit(0.5))
    };
    let step = T::lit(params.initial_step);
    let tol = T::lit(params.diameter_tol);

    let mut simplex: Vec<(T, Vec<T>)> = vec![(f_start, x0.clone())];
    let vertices: Vec<Vec<T>> = (0..d)
        .map(|i| {
            let mut x = x0.clone();
            x[i] = x[i] + step;
            x
        })
        .collect();
    let values = ctr.eval_points(&chart, &vertices)?;
    if values.len() < d {
        return Ok(ctr.finish(true, loss));
    }
    simplex.extend(values.into_iter().zip(vertices));

    let lerp = |a: &[T], b: &[T], s: T| -> Vec<T> { a.iter().zip(b).map(|(&a, &b)| a + (b - a) * s).collect() };
    loop {
        simplex.sort_by(|a, b| a.0.partial_cmp(&b.0).unwrap_or(std::cmp::Ordering::Equal));
        let diameter = simplex[1..]
            .iter()
            .map(|(_, x)| x.iter().zip(&simplex[0].1).fold(T::zero(), |s, (&a, &b)| s.max((a - b).abs())))
            .fold(T::zero(), T::max);
        if diameter < tol {
            return Ok(ctr.finish(false, loss));
        }
        if ctr.remaining() == 0 {
            return Ok(ctr.finish(true, loss));
        }
        let worst = simplex[d].clone();
        let mut centroid = vec![T::zero(); d];
        for (_, x) in &simplex[..d] {
            for (c, &v) in centroid.iter_mut().zip(x) {
                *c = *c + v / df;
            }
        }
        let xr = lerp(&centroid, &worst.1, -alpha);
        let fr = ctr.eval_points(&chart, std::slice::from_ref(&xr))?[0];
        if fr < simplex[0].0 {
            if ctr.remaining() == 0 {
                simplex[d] = (fr, xr);
                continue;
            }
            let xe = lerp(&centroid, &worst.1, -alpha * gamma);
            let fe = ctr.eval_points(&chart, std::slice::from_ref(&xe))?[0];
            simplex[d] = if fe < fr { (fe, xe) } else { (fr, xr) };
            continue;
        }
        if fr < simplex[d - 1].0 {
            simplex[d] = (fr, xr);
            continue;
        }
        if ctr.remaining() == 0 {
            continue;
        }
        // outside contraction when the reflection beat the worst vertex
        let (xc, limit) = if fr < worst.0 { (lerp(&centroid, &worst.1, -alpha * rho), fr) } else { (lerp(&centroid, &worst.1, rho), worst.0) };
        let fc = ctr.eval_points(&chart, std::slice::from_ref(&xc))?[0];
        if fc < limit {
            simplex[d] = (fc, xc);
            continue;
        }
        let best = simplex[0].1.clone();
        let shrunk: Vec<Vec<T>> = simplex[1..].iter().map(|(_, x)| lerp(&best, x, sigma)).collect();
        let values = ctr.eval_points(&chart, &shrunk)?;
        for (slot, (v, x)) in simplex[1..].iter_mut().zip(values.into_iter().zip(shrunk)) {
            *slot = (v, x);
        }
    }
}

/// One-parameter deformations of a trial function.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum ScanDirection {
    /// c_j += ε.
    Hermite(usize),
    /// A ↦ e^{ε} A (dilation).
    Scaling,
    /// Re b += ε (frequency translation).
    Translation,
    /// Im b += ε (the phase e^{iεω₁}).
    Modulation,
    Zero,
}

impl ScanDirection {
    pub fn parse(s: &str) -> Result<Self> {
        Ok(match s {
            "scaling" => Self::Scaling,
            "translation" => Self::Translation,
            "modulation" => Self::Modulation,
            "zero" => Self::Zero,
            _ => match s.strip_prefix('h').or_else(|| s.strip_prefix("hermite")).and_then(|j| j.parse().ok()) {
                Some(j) if j >= 1 => Self::Hermite(j),
                _ => return Err(Error::InvalidInput(format!("unknown scan direction {s:?}"))),
            },
        })
    }

    /// True for the symmetries of the Gaussian family.
    pub fn is_symmetry(&self) -> bool {
        !matches!(self, Self::Hermite(_))
    }

    fn apply<T: Scalar>(&self, at: &TrialFunction<T>, eps: T) -> Result<TrialFunction<T>> {
        let base = at.base();
        let mut coeffs = at.hermite_coeffs().to_vec();
        let (mut a, mut b, c) = (base.a(), base.b().to_vec(), base.c());
        match *self {
            Self::Hermite(j) => {
                if coeffs.len() < j {
                    coeffs.resize(j, Complex::new(T::zero(), T::zero()));
                }
                coeffs[j - 1] = coeffs[j - 1] + eps;
            }
            Self::Scaling => a = a * eps.exp(),
            Self::Translation => b[0] = b[0] + eps,
            Self::Modulation => b[0] = b[0] + Complex::new(T::zero(), eps),
            Self::Zero => {}
        }
        TrialFunction::new(GaussianProfile::new(base.dim(), a, b, c)?, coeffs)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ScanPoint<T> {
    pub epsilon: T,
    pub ratio: T,
    pub error: T,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ScanResult<T> {
    pub points: Vec<ScanPoint<T>>,
    /// ratio(ε) − 2 ratio(0) + ratio(−ε) for the smallest |ε| ≠ 0 present.
    pub second_difference: Option<T>,
}

/// Ratios along `direction` through `at`; the grid must be symmetric about 0.
pub fn perturbation_scan<T: Scalar>(id: &FunctionalId, at: &TrialFunction<T>, direction: ScanDirection, epsilons: &[T], spec: &SearchSpec) -> Result<ScanResult<T>> {
    let mut sorted = epsilons.to_vec();
    sorted.sort_by(|a, b| a.partial_cmp(b).unwrap_or(std::cmp::Ordering::Equal));
    let symmetric = sorted.iter().zip(sorted.iter().rev()).all(|(&a, &b)| (a + b).abs() <= T::lit(1e-12) * (T::one() + a.abs()));
    if !symmetric {
        return Err(Error::InvalidInput("scan grid must be symmetric about 0".into()));
    }
    let points: Vec<ScanPoint<T>> = epsilons
        .par_iter()
        .map(|&eps| {
            let r = ratio_report(&direction.apply(at, eps)?, id, spec)?;
            let ratio = r.ratio.ok_or_else(|| Error::Degenerate("right-hand side vanishes".into()))?;
            Ok(ScanPoint { epsilon: eps, ratio, error: r.ratio_error() })
        })
        .collect::<Result<_>>()?;
    let at_zero = points.iter().find(|p| p.epsilon == T::zero()).map(|p| p.ratio);
    let h = points.iter().filter(|p| p.epsilon > T::zero()).map(|p| p.epsilon).fold(T::infinity(), T::min);
    let second_difference = at_zero.and_then(|r0| {
        let plus = points.iter().find(|p| p.epsilon == h)?.ratio;
        let minus = points.iter().find(|p| p.epsilon == -h)?.ratio;
        Some(plus - r0 * T::lit(2.0) + minus)
    });
    Ok(ScanResult { points, second_difference })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex<f64> {
        Complex::new(re, im)
    }

    fn spec() -> SearchSpec {
        SearchSpec { mc: MonteCarloSpec::new(20_000, 3), quad: TimeQuadratureSpec::gaussian() }
    }

    #[test]
    fn parses_ids() {
        assert_eq!(FunctionalId::parse("n1_k3").unwrap(), FunctionalId::Theorem1 { n: 1, k: 3 });
        assert!(FunctionalId::parse("n1_k2").is_err());
        assert!(matches!(FunctionalId::parse("sob_n1_q10_r10").unwrap(), FunctionalId::Corollary(_)));
        assert!(matches!(FunctionalId::parse("cone_n3_q4"), Err(Error::Unsupported(_))));
        assert_eq!(ScanDirection::parse("h4").unwrap(), ScanDirection::Hermite(4));
        assert!(ScanDirection::parse("h0").is_err());
    }

    #[test]
    fn objective_examples() {
        let id = FunctionalId::parse("n1_k3").unwrap();
        let g = TrialFunction::gaussian(GaussianProfile::<f64>::standard(1));
        assert!((ratio_objective(&g, &id, &spec()).unwrap() - 1.0).abs() < 1e-8);
        let h2 = TrialFunction::with_coefficient(GaussianProfile::standard(1), 2, c(0.5, 0.0)).unwrap();
        assert!(ratio_objective(&h2, &id, &spec()).unwrap() < 1.0 - 1e-3);
        let boosted = TrialFunction::gaussian(GaussianProfile::new(1, c(-0.5, 0.3), vec![c(0.0, 2.0)], c(0.0, 0.0)).unwrap());
        assert!((ratio_objective(&boosted, &id, &spec()).unwrap() - 1.0).abs() < 1e-8);
        // the ratio ignores the base Gaussian
        let moved = TrialFunction::with_coefficient(GaussianProfile::new(1, c(-2.0, 0.7), vec![c(0.4, -1.0)], c(0.2, 0.0)).unwrap(), 2, c(0.5, 0.0)).unwrap();
        let (a, b) = (ratio_objective(&h2, &id, &spec()).unwrap(), ratio_objective(&moved, &id, &spec()).unwrap());
        assert!((a - b).abs() < 1e-9, "{a} {b}");
    }

    #[test]
    fn paraboloid_objective_matches_gaussian() {
        let id = FunctionalId::parse("parab_n2_q4").unwrap();
        let g = TrialFunction::gaussian(GaussianProfile::<f64>::standard(2));
        let r = ratio_report(&g, &id, &spec()).unwrap();
        // unit L² norm instead of π
        assert!((r.lhs - 1.0 / (16.0 * std::f64::consts::PI.powi(2))).abs() < 1e-9);
        assert!(r.passed());
    }

    #[test]
    fn optimizer_contracts() {
        let id = FunctionalId::parse("n1_k3").unwrap();
        let g = TrialFunction::gaussian(GaussianProfile::<f64>::standard(1));
        let r = optimize(&id, &g, 100, &SimplexParams::default(), &spec()).unwrap();
        assert_eq!(r.evaluations, 1);
        assert!(!r.exhausted && (r.best_ratio - 1.0).abs() < 1e-8);
        let h2 = TrialFunction::with_coefficient(GaussianProfile::standard(1), 2, c(0.3, 0.0)).unwrap();
        let r = optimize(&id, &h2, 1, &SimplexParams::default(), &spec()).unwrap();
        assert!(r.exhausted && r.evaluations == 1 && r.trace.len() == 1);
        let bad = TrialFunction::gaussian(GaussianProfile::<f64>::standard(1));
        assert!(optimize(&id, &bad, 0, &SimplexParams::default(), &spec()).is_err());
    }

    #[test]
    fn optimizer_trace_is_monotone_and_reproducible() {
        let id = FunctionalId::parse("n1_k3").unwrap();
        let h2 = TrialFunction::with_coefficient(GaussianProfile::standard(1), 3, c(0.2, 0.1)).unwrap();
        let a = optimize(&id, &h2, 60, &SimplexParams::default(), &spec()).unwrap();
        assert!(a.trace.windows(2).all(|w| w[1] >= w[0]));
        assert!(a.best_ratio > a.trace[0]);
        let pool = rayon::ThreadPoolBuilder::new().num_threads(1).build().unwrap();
        let b = pool.install(|| optimize(&id, &h2, 60, &SimplexParams::default(), &spec()).unwrap());
        assert_eq!(a.trace, b.trace);
    }

    #[test]
    fn hermite_scan_is_peaked() {
        let id = FunctionalId::parse("n1_k3").unwrap();
        let g = TrialFunction::gaussian(GaussianProfile::<f64>::standard(1));
        let eps = [-0.4, -0.2, 0.0, 0.2, 0.4];
        let s = perturbation_scan(&id, &g, ScanDirection::Hermite(4), &eps, &spec()).unwrap();
        let r: Vec<f64> = s.points.iter().map(|p| p.ratio).collect();
        assert!((r[2] - 1.0).abs() < 1e-8);
        assert!(r[0] < r[1] && r[1] < 1.0 && r[4] < r[3] && r[3] < 1.0, "{r:?}");
        assert!(s.second_difference.unwrap() <= 0.0);
        for dir in [ScanDirection::Zero, ScanDirection::Modulation, ScanDirection::Scaling, ScanDirection::Translation] {
            let s = perturbation_scan(&id, &g, dir, &eps, &spec()).unwrap();
            assert!(s.points.iter().all(|p| (p.ratio - 1.0).abs() < 1e-8), "{dir:?}");
        }
        assert!(perturbation_scan(&id, &g, ScanDirection::Zero, &[0.0, 0.1], &spec()).is_err());
    }

    #[test]
    fn optimizer_recovers_the_gaussian() {
        let id = FunctionalId::parse("n1_k3").unwrap();
        let init = TrialFunction::with_coefficient(GaussianProfile::standard(1), 2, c(0.3, 0.0)).unwrap();
        let r = optimize(&id, &init, 500, &SimplexParams::default(), &spec()).unwrap();
        assert!(r.best_ratio >= 0.999 && r.best.coeff_norm() <= 0.02, "{} {}", r.best_ratio, r.best.coeff_norm());
        assert!(r.evaluations <= 500);
        // without the gauge the simplex stalls along the flat tangent directions
        let free = SimplexParams { recenter: false, ..SimplexParams::default() };
        let r = optimize(&id, &init, 500, &free, &spec()).unwrap();
        assert!(r.best_ratio > 0.999 && r.best.coeff_norm() > 0.02);
    }
}
