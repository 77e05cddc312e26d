//! Free Schrödinger evolution i u_t + Δu = 0 under the unitary Fourier
//! convention f̂(ω) = (2π)^{−n/2} ∫ e^{−iω·x} f(x) dx, so that
//! u(t, x) = (2π)^{−n/2} ∫ e^{ix·ω} e^{−it|ω|²} f̂(ω) dω.

use num_complex::Complex;
use rustfft::{FftDirection, FftPlanner};
use serde::Serialize;

use crate::domain::gaussian::{bilinear, GaussianProfile};
use crate::domain::grid::GridFunction;
use crate::error::Result;
use crate::scalar::Scalar;

/// Boundary mass above which a grid evolution is flagged unreliable.
pub const BOUNDARY_MASS_LIMIT: f64 = 1e-10;
/// Shell width, as a fraction of the half width, used for the boundary mass.
pub const BOUNDARY_SHELL: f64 = 0.05;

fn fft_axes<T: Scalar>(samples: &mut [Complex<T>], n: usize, points: usize, direction: FftDirection) {
    let mut planner = FftPlanner::<T>::new();
    let fft = planner.plan_fft(points, direction);
    let total = samples.len();
    let mut line = vec![Complex::new(T::zero(), T::zero()); points];
    let mut scratch = vec![Complex::new(T::zero(), T::zero()); fft.get_inplace_scratch_len()];
    for axis in 0..n {
        let stride = points.pow((n - 1 - axis) as u32);
        let block = stride * points;
        for outer in (0..total).step_by(block) {
            for inner in 0..stride {
                let base = outer + inner;
                for (j, v) in line.iter_mut().enumerate() {
                    *v = samples[base + j * stride];
                }
                fft.process_with_scratch(&mut line, &mut scratch);
                for (j, v) in line.iter().enumerate() {
                    samples[base + j * stride] = *v;
                }
            }
        }
    }
}

/// (−1)^{Σ j_axis}: the index-shift ramp that centres both grids at 0.
fn apply_checkerboard<T: Scalar>(grid: &mut GridFunction<T>) {
    let n = grid.dim();
    let mut idx = vec![0usize; n];
    for i in 0..grid.len() {
        grid.multi_index(i, &mut idx);
        if idx.iter().sum::<usize>() % 2 == 1 {
            let s = &mut grid.samples_mut()[i];
            *s = -*s;
        }
    }
}

fn transform<T: Scalar>(f: &GridFunction<T>, direction: FftDirection) -> GridFunction<T> {
    let n = f.dim();
    let points = f.points();
    let dual_half_width = T::PI() * T::from_usize_lossy(points) / (T::lit(2.0) * f.half_width());
    let mut out = GridFunction::new(n, dual_half_width, points, f.samples().to_vec()).expect("dual grid shape");
    apply_checkerboard(&mut out);
    fft_axes(out.samples_mut(), n, points, direction);
    apply_checkerboard(&mut out);
    // per axis: measure weight h/√(2π) and the global sign (−1)^{N/2}
    let per_axis = f.step() / (T::lit(2.0) * T::PI()).sqrt();
    let mut scale = per_axis.powi(n as i32);
    if (points / 2) % 2 == 1 && n % 2 == 1 {
        scale = -scale;
    }
    for s in out.samples_mut() {
        *s = *s * scale;
    }
    out
}

/// Discrete unitary-convention Fourier transform onto the dual grid (step π/L).
pub fn fourier_forward<T: Scalar>(f: &GridFunction<T>) -> GridFunction<T> {
    transform(f, FftDirection::Forward)
}

pub fn fourier_inverse<T: Scalar>(fhat: &GridFunction<T>) -> GridFunction<T> {
    transform(fhat, FftDirection::Inverse)
}

/// A Gaussian evolved to time t, again of the form e^{A(t)|x|² + b(t)·x + C(t)}.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct EvolvedGaussian<T> {
    pub base: GaussianProfile<T>,
    pub t: T,
    /// (1 − 4iAt)^{−n/2}, principal branch (continuous in t from t = 0).
    pub amplitude_factor: Complex<T>,
    pub a_t: Complex<T>,
    pub b_t: Vec<Complex<T>>,
    /// Full constant term, amplitude included.
    pub c_t: Complex<T>,
}

impl<T: Scalar> EvolvedGaussian<T> {
    pub fn profile(&self) -> GaussianProfile<T> {
        GaussianProfile::new(self.base.dim(), self.a_t, self.b_t.clone(), self.c_t).expect("evolution preserves Re A < 0")
    }

    pub fn eval(&self, x: &[T]) -> Complex<T> {
        self.profile().eval(x)
    }
}

/// Exact evolution of the Gaussian family. With w = 1 − 4iAt:
/// A(t) = A/w, b(t) = b/w, C(t) = C + it (b·b)/w − (n/2) log w.
pub fn evolve_gaussian<T: Scalar>(g: &GaussianProfile<T>, t: T) -> EvolvedGaussian<T> {
    let one = Complex::new(T::one(), T::zero());
    let it = Complex::new(T::zero(), t);
    // Im w = −4 Re(A) t has the sign of t, so w never meets the branch cut
    // for t ≠ 0 and the principal log is the continuous branch.
    let w = one - it * g.a() * T::lit(4.0);
    let log_w = w.ln();
    let half_n = T::from_usize_lossy(g.dim()) * T::lit(0.5);
    let amplitude_log = -log_w * half_n;
    let bb = bilinear(g.b(), g.b());
    EvolvedGaussian {
        base: g.clone(),
        t,
        amplitude_factor: amplitude_log.exp(),
        a_t: g.a() / w,
        b_t: g.b().iter().map(|b| b / w).collect(),
        c_t: g.c() + it * bb / w + amplitude_log,
    }
}

/// Grid evolution with its boundary diagnostics.
#[derive(Debug, Clone)]
pub struct GridEvolution<T> {
    pub field: GridFunction<T>,
    pub boundary_mass: T,
    pub reliable: bool,
}

/// Multiplies f̂ by e^{−it|ω|²} on the dual grid and transforms back.
pub fn evolve_grid<T: Scalar>(f: &GridFunction<T>, t: T) -> GridEvolution<T> {
    let mut fhat = fourier_forward(f);
    let n = fhat.dim();
    let mut w = vec![T::zero(); n];
    for idx in 0..fhat.len() {
        fhat.coords_into(idx, &mut w);
        let w2 = w.iter().fold(T::zero(), |acc, &v| acc + v * v);
        let phase = Complex::new(T::zero(), -t * w2).exp();
        let s = &mut fhat.samples_mut()[idx];
        *s = *s * phase;
    }
    let field = fourier_inverse(&fhat);
    let boundary_mass = field.boundary_mass_fraction(T::lit(BOUNDARY_SHELL));
    GridEvolution { reliable: boundary_mass <= T::lit(BOUNDARY_MASS_LIMIT), boundary_mass, field }
}

/// Smallest |t| at which the far-field chirp e^{i|y|²/(4t)} stays below
/// half the Nyquist rate across the box: 2L²/(πN).
pub fn far_field_threshold<T: Scalar>(f: &GridFunction<T>) -> T {
    T::lit(2.0) * f.half_width() * f.half_width() / (T::PI() * T::from_usize_lossy(f.points()))
}

/// u(t, ·) from the far-field identity
/// u(t, 2tξ) = (2it)^{−n/2} e^{it|ξ|²} ĝ_t(ξ), g_t(y) = e^{i|y|²/(4t)} f(y),
/// sampled on the stretched grid x = 2tξ (half width |t|πN/L). Only
/// accurate for |t| ≥ `far_field_threshold`.
pub fn far_field<T: Scalar>(f: &GridFunction<T>, t: T) -> Result<GridEvolution<T>> {
    let n = f.dim();
    let quarter_inv_t = T::one() / (T::lit(4.0) * t);
    let mut chirped = f.clone();
    let mut y = vec![T::zero(); n];
    for idx in 0..chirped.len() {
        chirped.coords_into(idx, &mut y);
        let y2 = y.iter().fold(T::zero(), |acc, &v| acc + v * v);
        let s = &mut chirped.samples_mut()[idx];
        *s = *s * Complex::new(T::zero(), y2 * quarter_inv_t).exp();
    }
    let ghat = fourier_forward(&chirped);
    let half_n = T::from_usize_lossy(n) * T::lit(0.5);
    let prefactor = (-Complex::new(T::zero(), T::lit(2.0) * t).ln() * half_n).exp();
    let points = f.points();
    let half_width = t.abs() * T::PI() * T::from_usize_lossy(points) / f.half_width();
    let mut out = GridFunction::zeros(n, half_width, points)?;
    let mut xi = vec![T::zero(); n];
    let mut src = vec![0usize; n];
    let mut dst = vec![0usize; n];
    for idx in 0..ghat.len() {
        ghat.coords_into(idx, &mut xi);
        let xi2 = xi.iter().fold(T::zero(), |acc, &v| acc + v * v);
        let value = prefactor * Complex::new(T::zero(), t * xi2).exp() * ghat.samples()[idx];
        ghat.multi_index(idx, &mut src);
        for (d, &s) in dst.iter_mut().zip(&src) {
            // x = 2tξ reverses orientation for t < 0; the unmatched Nyquist
            // row wraps to the (negligible) edge
            *d = if t < T::zero() { (points - s) % points } else { s };
        }
        let flat = dst.iter().fold(0usize, |acc, &d| acc * points + d);
        out.samples_mut()[flat] = value;
    }
    let boundary_mass = ghat.boundary_mass_fraction(T::lit(BOUNDARY_SHELL));
    Ok(GridEvolution {
        reliable: boundary_mass <= T::lit(BOUNDARY_MASS_LIMIT) && t.abs() >= far_field_threshold(f),
        boundary_mass,
        field: out,
    })
}

/// ‖∇f‖₂ = ‖ |ω| f̂ ‖₂ on the dual grid.
pub fn gradient_norm_grid<T: Scalar>(f: &GridFunction<T>) -> T {
    let fhat = fourier_forward(f);
    let mut w = vec![T::zero(); fhat.dim()];
    let mut acc = T::zero();
    for (idx, z) in fhat.samples().iter().enumerate() {
        fhat.coords_into(idx, &mut w);
        acc = acc + w.iter().fold(T::zero(), |a, &v| a + v * v) * z.norm_sqr();
    }
    (acc * fhat.cell_volume()).sqrt()
}

/// ‖∇f‖₂ in closed form.
pub fn gradient_norm_gaussian<T: Scalar>(g: &GaussianProfile<T>) -> T {
    g.gradient_norm()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex<f64> {
        Complex::new(re, im)
    }

    fn test_profile() -> GaussianProfile<f64> {
        GaussianProfile::new(1, c(-0.6, 0.25), vec![c(0.4, -0.7)], c(0.1, 0.3)).unwrap()
    }

    #[test]
    fn self_dual_gaussian() {
        let f = GridFunction::from_fn(1, 12.0, 512, |x: &[f64]| c((-x[0] * x[0] / 2.0).exp(), 0.0)).unwrap();
        let fhat = fourier_forward(&f);
        let want = GridFunction::from_fn(1, fhat.half_width(), 512, |w: &[f64]| c((-w[0] * w[0] / 2.0).exp(), 0.0)).unwrap();
        assert!(fhat.max_abs_diff(&want).unwrap() < 1e-10);
    }

    #[test]
    fn transform_matches_closed_form_family() {
        let g = test_profile();
        let f = GridFunction::from_gaussian(&g, 16.0, 512).unwrap();
        let fhat = fourier_forward(&f);
        let want = GridFunction::from_gaussian(&g.fourier_transform(), fhat.half_width(), 512).unwrap();
        assert!(fhat.max_abs_diff(&want).unwrap() < 1e-10);
    }

    #[test]
    fn roundtrip_and_parseval() {
        for &points in &[64usize, 66] {
            let f = GridFunction::from_fn(2, 6.0, points, |x: &[f64]| c((-x[0] * x[0] - 0.5 * x[1] * x[1]).exp(), x[0] * (-x[1] * x[1]).exp())).unwrap();
            let fhat = fourier_forward(&f);
            let back = fourier_inverse(&fhat);
            assert!(back.max_abs_diff(&f).unwrap() < 1e-12);
            assert!((fhat.l2_norm() - f.l2_norm()).abs() < 1e-12);
        }
    }

    #[test]
    fn gaussian_evolution_example() {
        let g = GaussianProfile::<f64>::standard(1);
        let u = evolve_gaussian(&g, 1.0);
        let w = c(1.0, 2.0);
        for &x in &[-2.0, -0.3, 0.0, 1.7] {
            let want = w.powf(-0.5) * (-(x * x) / (w * 2.0)).exp();
            assert!((u.eval(&[x]) - want).norm() < 1e-14);
        }
    }

    #[test]
    fn gaussian_evolution_at_zero_is_identity() {
        let g = test_profile();
        let u = evolve_gaussian(&g, 0.0);
        for &x in &[-1.0, 0.2, 3.0] {
            assert!((u.eval(&[x]) - g.eval(&[x])).norm() < 1e-15);
        }
    }

    #[test]
    fn gaussian_evolution_conserves_mass() {
        let g = test_profile();
        for &t in &[0.5, 2.0, 10.0, -3.0] {
            let u = evolve_gaussian(&g, t);
            assert!(((u.profile().l2_norm() - g.l2_norm()) / g.l2_norm()).abs() < 1e-12);
            assert!(u.a_t.re < 0.0);
        }
    }

    #[test]
    fn gaussian_branch_is_continuous_in_odd_dimension() {
        let g = GaussianProfile::new(3, c(-0.5, 2.0), vec![c(0.0, 0.0); 3], c(0.0, 0.0)).unwrap();
        let mut prev = evolve_gaussian(&g, 0.0).amplitude_factor;
        for i in 1..=20000 {
            let t = i as f64 * 0.001;
            let a = evolve_gaussian(&g, t).amplitude_factor;
            assert!((a - prev).norm() < 0.05 * prev.norm().max(1e-3), "jump at t = {t}");
            prev = a;
        }
    }

    #[test]
    fn grid_matches_closed_form() {
        let g = GaussianProfile::<f64>::standard(1);
        let f = GridFunction::from_gaussian(&g, 32.0, 1024).unwrap();
        let u = evolve_grid(&f, 1.0);
        assert!(u.reliable);
        let exact = evolve_gaussian(&g, 1.0);
        let mut x = [0.0];
        let mut worst = 0.0f64;
        for idx in 0..u.field.len() {
            u.field.coords_into(idx, &mut x);
            if x[0].abs() <= 8.0 {
                worst = worst.max((u.field.samples()[idx] - exact.eval(&x)).norm());
            }
        }
        assert!(worst < 1e-8, "{worst}");
    }

    #[test]
    fn grid_identity_conservation_group_law_reversal() {
        let g = test_profile();
        let f = GridFunction::from_gaussian(&g, 24.0, 512).unwrap();
        assert!(evolve_grid(&f, 0.0).field.max_abs_diff(&f).unwrap() < 1e-13);
        let m0 = f.l2_norm();
        for &t in &[0.3, 1.0, -2.0] {
            assert!((evolve_grid(&f, t).field.l2_norm() - m0).abs() < 1e-12 * m0);
        }
        let two_step = evolve_grid(&evolve_grid(&f, 0.4).field, 0.7).field;
        assert!(two_step.max_abs_diff(&evolve_grid(&f, 1.1).field).unwrap() < 1e-10);
        let lhs = evolve_grid(&f.conj(), -0.8).field;
        let rhs = evolve_grid(&f, 0.8).field.conj();
        assert!(lhs.max_abs_diff(&rhs).unwrap() < 1e-12);
    }

    #[test]
    fn spreading_past_the_box_is_flagged() {
        let f = GridFunction::from_gaussian(&GaussianProfile::<f64>::standard(1), 10.0, 256).unwrap();
        assert!(evolve_grid(&f, 0.2).reliable);
        assert!(!evolve_grid(&f, 20.0).reliable);
    }

    #[test]
    fn far_field_matches_closed_form() {
        let g = test_profile();
        let f = GridFunction::from_gaussian(&g, 16.0, 512).unwrap();
        for &t in &[3.0, -5.0, 40.0] {
            let u = far_field(&f, t).unwrap();
            assert!(u.reliable);
            let exact = evolve_gaussian(&g, t);
            let mut x = [0.0];
            let scale = u.field.max_abs();
            for idx in (0..u.field.len()).step_by(7) {
                u.field.coords_into(idx, &mut x);
                assert!((u.field.samples()[idx] - exact.eval(&x)).norm() < 1e-10 * scale.max(1.0), "t={t} x={}", x[0]);
            }
        }
    }

    #[test]
    fn gradient_norms() {
        let g = GaussianProfile::<f64>::standard(1);
        assert!((gradient_norm_gaussian(&g) - (std::f64::consts::PI.sqrt() / 2.0).sqrt()).abs() < 1e-14);
        let zero = GridFunction::<f64>::zeros(1, 5.0, 32).unwrap();
        assert_eq!(gradient_norm_grid(&zero), 0.0);
        let g2 = GaussianProfile::<f64>::standard(2);
        let grid = GridFunction::from_gaussian(&g2, 12.0, 128).unwrap();
        assert!((gradient_norm_grid(&grid) - gradient_norm_gaussian(&g2)).abs() < 1e-8);
    }
}
