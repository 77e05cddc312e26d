//! Spatial L^r norms and mixed space-time L^q_t L^r_x norms of free
//! Schrödinger evolutions, plus the first-moment cross term.

use num_complex::Complex;
use serde::Serialize;

use crate::domain::case::{Exponent, StrichartzCase};
use crate::domain::gaussian::GaussianProfile;
use crate::domain::grid::GridFunction;
use crate::error::{Error, Result};
use crate::propagator::{evolve_gaussian, evolve_grid, far_field, far_field_threshold, fourier_forward};
use crate::quadrature::{integrate_real_line, QuadOptions};
use crate::scalar::Scalar;
use crate::trial::TrialFunction;

/// Time integration over R through t = t₀ + s·tan θ, θ ∈ (−π/2, π/2), with
/// adaptive Gauss-Kronrod panels (15 nodes each) in θ.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct TimeQuadratureSpec {
    pub rel_tol: f64,
    pub max_panels: usize,
}

impl TimeQuadratureSpec {
    pub const NODES_PER_PANEL: usize = 15;

    pub fn gaussian() -> Self {
        Self { rel_tol: 1e-11, max_panels: 4000 }
    }

    pub fn grid() -> Self {
        Self { rel_tol: 1e-8, max_panels: 400 }
    }

    fn options(&self) -> QuadOptions {
        QuadOptions { rel_tol: self.rel_tol, abs_tol: 1e-300, max_intervals: self.max_panels }
    }
}

impl Default for TimeQuadratureSpec {
    fn default() -> Self {
        Self::gaussian()
    }
}

/// A norm value with its quadrature error estimate.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct NormEstimate<T> {
    pub value: T,
    pub error: T,
    /// False when a grid slice lost mass to the box boundary or aliasing,
    /// or the time quadrature did not converge.
    pub reliable: bool,
    pub evaluations: usize,
}

/// Initial data in either representation.
#[derive(Debug, Clone, PartialEq)]
pub enum InitialData<T> {
    Gaussian(GaussianProfile<T>),
    Grid(GridFunction<T>),
    /// Hermite-perturbed Gaussian, defined on the frequency side.
    Trial(TrialFunction<T>),
}

impl<T: Scalar> InitialData<T> {
    pub fn dim(&self) -> usize {
        match self {
            InitialData::Gaussian(g) => g.dim(),
            InitialData::Grid(f) => f.dim(),
            InitialData::Trial(f) => f.dim(),
        }
    }

    pub fn l2_norm(&self) -> T {
        match self {
            InitialData::Gaussian(g) => g.l2_norm(),
            InitialData::Grid(f) => f.l2_norm(),
            InitialData::Trial(_) => T::one(),
        }
    }

    pub fn gradient_norm(&self) -> T {
        match self {
            InitialData::Gaussian(g) => g.gradient_norm(),
            InitialData::Grid(f) => crate::propagator::gradient_norm_grid(f),
            InitialData::Trial(f) => f.gradient_norm(),
        }
    }
}

fn finite_exponent<T: Scalar>(r: T, what: &str) -> Result<T> {
    if !(r >= T::one()) || !r.is_finite() {
        return Err(Error::Domain(format!("{what} must satisfy 1 ≤ {what} < ∞, got {r}")));
    }
    Ok(r)
}

/// ∫|f|^r over the grid box (Riemann sum with the cell measure).
pub fn spatial_integral<T: Scalar>(slice: &GridFunction<T>, r: T) -> Result<T> {
    let r = finite_exponent(r, "r")?;
    let half_r = r * T::lit(0.5);
    let sum = slice.samples().iter().fold(T::zero(), |acc, z| acc + z.norm_sqr().powf(half_r));
    Ok(sum * slice.cell_volume())
}

/// ‖f‖_{L^r} of a grid slice.
pub fn spatial_norm<T: Scalar>(slice: &GridFunction<T>, r: T) -> Result<T> {
    Ok(spatial_integral(slice, r)?.powf(T::one() / r))
}

/// log ∫|e^{A|x|²+b·x+C}|^r dx: with α = −r Re A and β = r Re b,
/// (n/2) log(π/α) + |β|²/(4α) + r Re C.
pub fn gaussian_log_spatial_integral<T: Scalar>(a: Complex<T>, b: &[Complex<T>], c: Complex<T>, r: T) -> T {
    let alpha = -r * a.re;
    let beta_sq = b.iter().fold(T::zero(), |acc, b| acc + (r * b.re) * (r * b.re));
    T::from_usize_lossy(b.len()) * T::lit(0.5) * (T::PI() / alpha).ln() + beta_sq / (T::lit(4.0) * alpha) + r * c.re
}

pub fn spatial_norm_gaussian<T: Scalar>(g: &GaussianProfile<T>, r: T) -> Result<T> {
    let r = finite_exponent(r, "r")?;
    Ok((gaussian_log_spatial_integral(g.a(), g.b(), g.c(), r) / r).exp())
}

pub(crate) fn validate_exponents<T: Scalar>(n: usize, q: Exponent, r: Exponent) -> Result<(T, T)> {
    StrichartzCase::mixed(n, q, r)?;
    if !r.is_finite() {
        return Err(Error::Unsupported("r = ∞ spatial norms".into()));
    }
    if !q.is_finite() {
        return Err(Error::Unsupported("q = ∞ time norms".into()));
    }
    Ok((q.to_scalar(), r.to_scalar()))
}

/// [∫_R (∫|u(t,x)|^r dx)^{q/r} dt]^{1/q} given t ↦ log ∫|u(t,x)|^r dx.
/// `t0` and `width` centre and scale the tan map.
pub(crate) fn time_norm_from_log<T: Scalar, F: FnMut(T) -> T>(
    mut log_spatial: F,
    q: T,
    r: T,
    t0: T,
    width: T,
    spec: &TimeQuadratureSpec,
) -> NormEstimate<T> {
    let ratio = q / r;
    // factor out the value at t0 so that the integrand is O(1)
    let log_peak = log_spatial(t0) * ratio;
    let res = integrate_real_line(|s: T| (log_spatial(t0 + s) * ratio - log_peak).exp(), width, spec.options());
    let inv_q = T::one() / q;
    if !(res.value > T::zero()) {
        return NormEstimate { value: T::zero(), error: res.error, reliable: res.converged, evaluations: res.evaluations };
    }
    let value = ((res.value.ln() + log_peak) * inv_q).exp();
    NormEstimate {
        value,
        error: value * inv_q * res.error / res.value,
        reliable: res.converged,
        evaluations: res.evaluations,
    }
}

/// Time at which |1 − 4iAt| is smallest (where a chirped Gaussian
/// focuses) and the width of that focus.
pub(crate) fn focus_time<T: Scalar>(a: Complex<T>) -> (T, T) {
    let norm_sq = a.norm_sqr();
    let t0 = -a.im / (T::lit(4.0) * norm_sq);
    let width = a.re.abs() / (T::lit(4.0) * norm_sq);
    (t0, width)
}

/// ‖e^{itΔ}g‖_{L^q_t L^r_x} on the Gaussian family: the spatial integral is
/// closed form at each t, leaving a smooth one-dimensional time integral.
pub fn strichartz_norm_gaussian<T: Scalar>(
    g: &GaussianProfile<T>,
    q: Exponent,
    r: Exponent,
    spec: &TimeQuadratureSpec,
) -> Result<NormEstimate<T>> {
    let (q, r) = validate_exponents::<T>(g.dim(), q, r)?;
    let (t0, width) = focus_time(g.a());
    Ok(time_norm_from_log(
        |t: T| {
            let u = evolve_gaussian(g, t);
            gaussian_log_spatial_integral(u.a_t, &u.b_t, u.c_t, r)
        },
        q,
        r,
        t0,
        width,
        spec,
    ))
}

/// Root-mean-square spread of |f|² about its centre.
fn rms_width<T: Scalar>(f: &GridFunction<T>) -> T {
    let n = f.dim();
    let mut x = vec![T::zero(); n];
    let mut mass = T::zero();
    let mut first = vec![T::zero(); n];
    let mut second = T::zero();
    for (idx, z) in f.samples().iter().enumerate() {
        f.coords_into(idx, &mut x);
        let m = z.norm_sqr();
        mass = mass + m;
        for (s, &v) in first.iter_mut().zip(&x) {
            *s = *s + m * v;
        }
        second = second + m * x.iter().fold(T::zero(), |a, &v| a + v * v);
    }
    if mass <= T::zero() {
        return T::zero();
    }
    let centre_sq = first.iter().fold(T::zero(), |a, &v| a + (v / mass) * (v / mass));
    (second / mass - centre_sq).max(T::zero()).sqrt()
}

/// ‖e^{itΔ}f‖_{L^q_t L^r_x} for grid data. Slices with |t| below the
/// far-field threshold come from the Fourier multiplier; later slices use
/// the far-field identity, whose grid stretches with t so dispersion
/// never reaches the box edge.
pub fn strichartz_norm_grid<T: Scalar>(
    f: &GridFunction<T>,
    q: Exponent,
    r: Exponent,
    spec: &TimeQuadratureSpec,
) -> Result<NormEstimate<T>> {
    let (q, r) = validate_exponents::<T>(f.dim(), q, r)?;
    if f.max_abs() == T::zero() {
        return Ok(NormEstimate { value: T::zero(), error: T::zero(), reliable: true, evaluations: 0 });
    }
    let threshold = far_field_threshold(f);
    let spread_x = rms_width(f);
    let spread_w = rms_width(&fourier_forward(f));
    let scale = if spread_w > T::zero() { spread_x / (T::lit(2.0) * spread_w) } else { T::one() };
    let ratio = q / r;
    let mut reliable = true;
    let mut failure: Option<Error> = None;
    let peak = spatial_integral(f, r)?;
    let res = integrate_real_line(
        |t: T| {
            let evolved = if t.abs() <= threshold {
                evolve_grid(f, t)
            } else {
                match far_field(f, t) {
                    Ok(e) => e,
                    Err(e) => {
                        failure.get_or_insert(e);
                        return T::zero();
                    }
                }
            };
            reliable &= evolved.reliable;
            match spatial_integral(&evolved.field, r) {
                Ok(v) => (v / peak).powf(ratio),
                Err(e) => {
                    failure.get_or_insert(e);
                    T::zero()
                }
            }
        },
        scale,
        spec.options(),
    );
    if let Some(e) = failure {
        return Err(e);
    }
    let inv_q = T::one() / q;
    let value = (res.value * peak.powf(ratio)).powf(inv_q);
    Ok(NormEstimate {
        value,
        error: value * inv_q * res.error / res.value,
        reliable: reliable && res.converged,
        evaluations: res.evaluations,
    })
}

pub fn strichartz_norm<T: Scalar>(
    f: &InitialData<T>,
    q: Exponent,
    r: Exponent,
    spec: &TimeQuadratureSpec,
) -> Result<NormEstimate<T>> {
    match f {
        InitialData::Gaussian(g) => strichartz_norm_gaussian(g, q, r, spec),
        InitialData::Grid(g) => strichartz_norm_grid(g, q, r, spec),
        InitialData::Trial(g) => g.strichartz_norm(q, r, spec),
    }
}

/// ∫∫ g(x) g(y) x·y dx dy = |∫ x g(x) dx|² for real g; nonnegative by
/// construction and zero whenever the first moment vanishes.
pub fn first_moment_cross_term<T: Scalar>(g: &GridFunction<T>) -> Result<T> {
    if !g.is_real(T::lit(1e-12)) {
        return Err(Error::InvalidInput("first-moment cross term needs a real-valued function".into()));
    }
    let n = g.dim();
    let mut x = vec![T::zero(); n];
    let mut moment = vec![T::zero(); n];
    for (idx, z) in g.samples().iter().enumerate() {
        g.coords_into(idx, &mut x);
        for (m, &v) in moment.iter_mut().zip(&x) {
            *m = *m + z.re * v;
        }
    }
    let w = g.cell_volume();
    Ok(moment.iter().fold(T::zero(), |a, &m| a + (m * w) * (m * w)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    fn e(p: i64) -> Exponent {
        Exponent::int(p)
    }

    fn std1() -> GaussianProfile<f64> {
        GaussianProfile::standard(1)
    }

    #[test]
    fn spatial_norm_examples() {
        let f = GridFunction::from_gaussian(&std1(), 12.0, 256).unwrap();
        assert!((spatial_norm(&f, 2.0).unwrap() - PI.powf(0.25)).abs() < 1e-12);
        let zero = GridFunction::<f64>::zeros(1, 3.0, 16).unwrap();
        assert_eq!(spatial_norm(&zero, 3.0).unwrap(), 0.0);
        let want = (PI / 3.0).sqrt().powf(1.0 / 6.0);
        assert!((spatial_norm(&f, 6.0).unwrap() - want).abs() < 1e-9);
        assert!((spatial_norm_gaussian(&std1(), 6.0).unwrap() - want).abs() < 1e-14);
        assert!(spatial_norm(&f, 0.5).is_err());
    }

    #[test]
    fn gaussian_diagonal_value() {
        let got = strichartz_norm_gaussian(&std1(), e(6), e(6), &TimeQuadratureSpec::gaussian()).unwrap();
        let want = (PI / 2.0 * (PI / 3.0).sqrt()).powf(1.0 / 6.0);
        assert!((got.value - want).abs() < 1e-10 * want, "{} vs {want}", got.value);
        assert!(got.error < 1e-10);
        let ratio = got.value / std1().l2_norm();
        assert!((ratio - 12f64.powf(-1.0 / 12.0)).abs() < 1e-9);
    }

    #[test]
    fn gaussian_mixed_ratio() {
        let got = strichartz_norm_gaussian(&std1(), e(8), e(4), &TimeQuadratureSpec::gaussian()).unwrap();
        assert!((got.value / std1().l2_norm() - 2f64.powf(-0.25)).abs() < 1e-9);
    }

    #[test]
    fn zero_data_has_zero_norm() {
        let zero = GridFunction::<f64>::zeros(1, 5.0, 64).unwrap();
        assert_eq!(strichartz_norm_grid(&zero, e(6), e(6), &TimeQuadratureSpec::grid()).unwrap().value, 0.0);
    }

    #[test]
    fn rejects_bad_exponents() {
        assert!(strichartz_norm_gaussian(&std1(), e(4), e(4), &TimeQuadratureSpec::gaussian()).is_err());
        assert!(strichartz_norm_gaussian(&std1(), Exponent::Infinity, e(2), &TimeQuadratureSpec::gaussian()).is_err());
        let g2 = GaussianProfile::<f64>::standard(3);
        assert!(strichartz_norm_gaussian(&g2, e(2), e(6), &TimeQuadratureSpec::gaussian()).is_ok());
    }

    #[test]
    fn scaling_covariance() {
        let spec = TimeQuadratureSpec::gaussian();
        let g: GaussianProfile<f64> = GaussianProfile::new(2, Complex::new(-0.7, 0.3), vec![Complex::new(0.1, 0.4), Complex::new(0.0, -0.2)], Complex::new(0.0, 0.0)).unwrap();
        for &(q, r) in &[(4i64, 4i64), (6, 3)] {
            let base = strichartz_norm_gaussian(&g, e(q), e(r), &spec).unwrap().value;
            for &lambda in &[0.5, 2.0] {
                let scaled = strichartz_norm_gaussian(&g.dilated(lambda), e(q), e(r), &spec).unwrap().value;
                let power = -2.0 / r as f64 - 2.0 / q as f64;
                assert!((scaled / base - lambda.powf(power)).abs() < 1e-9);
            }
        }
    }

    #[test]
    fn galilean_invariance() {
        let spec = TimeQuadratureSpec::gaussian();
        let g: GaussianProfile<f64> = GaussianProfile::new(1, Complex::new(-0.4, -0.8), vec![Complex::new(0.3, 0.1)], Complex::new(0.2, 0.0)).unwrap();
        let base = strichartz_norm_gaussian(&g, e(8), e(4), &spec).unwrap().value / g.l2_norm();
        for &v in &[-3.0, 0.7, 5.0] {
            let m = g.modulated(&[v]);
            let got = strichartz_norm_gaussian(&m, e(8), e(4), &spec).unwrap().value / m.l2_norm();
            assert!((got - base).abs() < 1e-8);
        }
    }

    #[test]
    fn grid_path_matches_closed_form() {
        let g: GaussianProfile<f64> = GaussianProfile::new(1, Complex::new(-0.5, 0.2), vec![Complex::new(0.0, 0.6)], Complex::new(0.0, 0.0)).unwrap();
        let f = GridFunction::from_gaussian(&g, 20.0, 1024).unwrap();
        for &(q, r) in &[(6i64, 6i64), (8, 4)] {
            let exact = strichartz_norm_gaussian(&g, e(q), e(r), &TimeQuadratureSpec::gaussian()).unwrap().value;
            let grid = strichartz_norm_grid(&f, e(q), e(r), &TimeQuadratureSpec::grid()).unwrap();
            assert!(grid.reliable);
            assert!(((grid.value - exact) / exact).abs() < 1e-6, "{} vs {exact}", grid.value);
        }
    }

    #[test]
    fn grid_path_two_dimensions() {
        let g: GaussianProfile<f64> = GaussianProfile::standard(2);
        let f = GridFunction::from_gaussian(&g, 12.0, 128).unwrap();
        let exact = strichartz_norm_gaussian(&g, e(4), e(4), &TimeQuadratureSpec::gaussian()).unwrap().value;
        let grid = strichartz_norm_grid(&f, e(4), e(4), &TimeQuadratureSpec::grid()).unwrap();
        assert!(((grid.value - exact) / exact).abs() < 1e-6, "{} vs {exact}", grid.value);
    }

    #[test]
    fn cross_term_examples() {
        let radial = GridFunction::from_fn(2, 8.0, 64, |x: &[f64]| Complex::new((-x[0] * x[0] - x[1] * x[1]).exp(), 0.0)).unwrap();
        assert!(first_moment_cross_term(&radial).unwrap() < 1e-12);
        let shifted = GridFunction::from_fn(1, 12.0, 512, |x: &[f64]| Complex::new((-(x[0] - 1.0).powi(2)).exp(), 0.0)).unwrap();
        assert!((first_moment_cross_term(&shifted).unwrap() - PI).abs() < 1e-8);
        let odd = GridFunction::from_fn(1, 6.0, 128, |x: &[f64]| Complex::new(x[0] * (-x[0] * x[0]).exp(), 0.0)).unwrap();
        assert!(first_moment_cross_term(&odd).unwrap() >= 0.0);
        let complex = GridFunction::from_fn(1, 6.0, 64, |x: &[f64]| Complex::new(0.0, (-x[0] * x[0]).exp())).unwrap();
        assert!(first_moment_cross_term(&complex).is_err());
    }
}
