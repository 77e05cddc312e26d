//! Trial functions f̂(ω) = s·(1 + Σ_j c_j H_j(ξ)) G(ω): a Gaussian G on the
//! frequency side times a Hermite polynomial in the standardized first
//! coordinate ξ = (ω₁ − μ)/κ, where |G|² ∝ e^{−ξ²} along that axis.
//! H_j are the physicists' Hermite polynomials (H₂(ξ) = 4ξ² − 2), so the
//! factor is orthogonal to 1 and the norm is closed form. Evolution is
//! exact: e^{itΔ} maps the polynomial factor to another polynomial.

use num_complex::Complex;
use serde::{Deserialize, Serialize};

use crate::domain::case::Exponent;
use crate::domain::gaussian::GaussianProfile;
use crate::domain::grid::GridFunction;
use crate::error::{Error, Result};
use crate::norms::{focus_time, gaussian_log_spatial_integral, time_norm_from_log, validate_exponents, NormEstimate, TimeQuadratureSpec};
use crate::propagator::evolve_gaussian;
use crate::quadrature::gauss_hermite;
use crate::scalar::Scalar;

pub const DEFAULT_HERMITE_ORDER: usize = 6;

type Poly<T> = Vec<Complex<T>>;

fn horner<T: Scalar>(p: &[Complex<T>], z: Complex<T>) -> Complex<T> {
    p.iter().rev().fold(Complex::new(T::zero(), T::zero()), |acc, &c| acc * z + c)
}

fn add_scaled<T: Scalar>(acc: &mut Poly<T>, p: &[Complex<T>], s: Complex<T>) {
    if acc.len() < p.len() {
        acc.resize(p.len(), Complex::new(T::zero(), T::zero()));
    }
    for (a, &c) in acc.iter_mut().zip(p) {
        *a = *a + c * s;
    }
}

/// Physicists' Hermite polynomials H₀..H_m as polynomials in ω, with ξ = α + βω.
fn hermite_in<T: Scalar>(m: usize, alpha: T, beta: T) -> Vec<Poly<T>> {
    let zero = Complex::new(T::zero(), T::zero());
    let two = T::lit(2.0);
    let mut out: Vec<Poly<T>> = vec![vec![Complex::new(T::one(), T::zero())]];
    if m >= 1 {
        out.push(vec![Complex::new(two * alpha, T::zero()), Complex::new(two * beta, T::zero())]);
    }
    for j in 1..m {
        // H_{j+1} = 2ξ H_j − 2j H_{j−1}
        let hj = &out[j];
        let mut next = vec![zero; hj.len() + 1];
        for (i, &c) in hj.iter().enumerate() {
            next[i] = next[i] + c * (two * alpha);
            next[i + 1] = next[i + 1] + c * (two * beta);
        }
        add_scaled(&mut next, &out[j - 1], Complex::new(-two * T::from_usize_lossy(j), T::zero()));
        out.push(next);
    }
    out
}

/// Normalized Gaussian moments ∫ω^j e^{Aω²+βω} / ∫e^{Aω²+βω} = p_j(β),
/// p₀ = 1, p_{j+1} = p_j' + 2γβ p_j with γ = −1/(4A); returned as the
/// single polynomial Σ_j d_j p_j(β).
fn moment_polynomial<T: Scalar>(d: &[Complex<T>], a: Complex<T>) -> Poly<T> {
    let zero = Complex::new(T::zero(), T::zero());
    let two_gamma = -Complex::new(T::one(), T::zero()) / (a * T::lit(2.0));
    let mut p: Poly<T> = vec![Complex::new(T::one(), T::zero())];
    let mut out: Poly<T> = vec![zero; d.len().max(1)];
    for (j, &dj) in d.iter().enumerate() {
        add_scaled(&mut out, &p, dj);
        if j + 1 == d.len() {
            break;
        }
        let mut next = vec![zero; p.len() + 1];
        for (i, &c) in p.iter().enumerate().skip(1) {
            next[i - 1] = next[i - 1] + c * T::from_usize_lossy(i);
        }
        for (i, &c) in p.iter().enumerate() {
            next[i + 1] = next[i + 1] + c * two_gamma;
        }
        p = next;
    }
    out
}

/// Hermite-perturbed Gaussian, normalized to ‖f̂‖₂ = 1.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TrialFunction<T> {
    base: GaussianProfile<T>,
    hermite_coeffs: Vec<Complex<T>>,
    /// Multiplier that brings ‖f̂‖₂ to 1.
    normalization: T,
}

impl<T: Scalar> TrialFunction<T> {
    /// `base` is the frequency-side Gaussian; `hermite_coeffs[j−1]` = c_j.
    pub fn new(base: GaussianProfile<T>, hermite_coeffs: Vec<Complex<T>>) -> Result<Self> {
        if hermite_coeffs.iter().any(|c| !c.re.is_finite() || !c.im.is_finite()) {
            return Err(Error::InvalidInput("non-finite Hermite coefficient".into()));
        }
        let mut out = Self { base, hermite_coeffs, normalization: T::one() };
        let raw = out.raw_norm();
        if !(raw > T::zero()) || !raw.is_finite() {
            return Err(Error::Degenerate("trial function cannot be normalized".into()));
        }
        out.normalization = T::one() / raw;
        Ok(out)
    }

    pub fn gaussian(base: GaussianProfile<T>) -> Self {
        Self::new(base, vec![Complex::new(T::zero(), T::zero()); DEFAULT_HERMITE_ORDER]).expect("a Gaussian is normalizable")
    }

    /// Gaussian base with a single coefficient c_j set.
    pub fn with_coefficient(base: GaussianProfile<T>, j: usize, c: Complex<T>) -> Result<Self> {
        let mut coeffs = vec![Complex::new(T::zero(), T::zero()); DEFAULT_HERMITE_ORDER.max(j)];
        if j == 0 {
            return Err(Error::InvalidInput("Hermite coefficients start at c_1".into()));
        }
        coeffs[j - 1] = c;
        Self::new(base, coeffs)
    }

    pub fn dim(&self) -> usize {
        self.base.dim()
    }

    pub fn base(&self) -> &GaussianProfile<T> {
        &self.base
    }

    pub fn hermite_coeffs(&self) -> &[Complex<T>] {
        &self.hermite_coeffs
    }

    pub fn normalization(&self) -> T {
        self.normalization
    }

    /// Euclidean norm of the coefficient vector.
    pub fn coeff_norm(&self) -> T {
        self.hermite_coeffs.iter().fold(T::zero(), |a, c| a + c.norm_sqr()).sqrt()
    }

    /// ‖(1 + Σ c_j H_j) G‖₂ before normalization:
    /// ‖G‖₂² (1 + Σ |c_j|² 2^j j!) by Hermite orthogonality.
    pub fn raw_norm(&self) -> T {
        let mut weight = T::one();
        let mut sum = T::one();
        for (j, c) in self.hermite_coeffs.iter().enumerate() {
            weight = weight * T::lit(2.0) * T::from_usize_lossy(j + 1);
            sum = sum + c.norm_sqr() * weight;
        }
        self.base.l2_norm() * sum.sqrt()
    }

    /// (μ, κ) with ξ = (ω₁ − μ)/κ.
    pub fn hermite_variable(&self) -> (T, T) {
        let (_, mean, var) = self.base.modulus_squared_moments();
        (mean[0], (T::lit(2.0) * var).sqrt())
    }

    fn effective_order(&self) -> usize {
        self.hermite_coeffs.iter().rposition(|c| c.norm_sqr() > T::zero()).map_or(0, |j| j + 1)
    }

    /// Monomial coefficients of P(ω₁) = 1 + Σ c_j H_j(ξ(ω₁)).
    pub fn polynomial(&self) -> Vec<Complex<T>> {
        let m = self.effective_order();
        let (mu, kappa) = self.hermite_variable();
        let hermite = hermite_in(m, -mu / kappa, T::one() / kappa);
        let mut p: Poly<T> = vec![Complex::new(T::one(), T::zero())];
        for (j, &c) in self.hermite_coeffs.iter().take(m).enumerate() {
            add_scaled(&mut p, &hermite[j + 1], c);
        }
        p
    }

    /// Normalized Gaussian part s·G on the frequency side.
    pub fn gaussian_factor(&self) -> GaussianProfile<T> {
        self.base.scaled(Complex::new(self.normalization, T::zero()))
    }

    pub fn eval_polynomial(&self, omega1: T) -> Complex<T> {
        horner(&self.polynomial(), Complex::new(omega1, T::zero()))
    }

    pub fn eval_frequency(&self, omega: &[T]) -> Complex<T> {
        self.eval_polynomial(omega[0]) * self.gaussian_factor().eval(omega)
    }

    fn evolution_parts(&self, t: T) -> (Poly<T>, GaussianProfile<T>) {
        let g = self.gaussian_factor();
        let a_t = g.a() - Complex::new(T::zero(), t);
        let q = moment_polynomial(&self.polynomial(), a_t);
        let u = evolve_gaussian(&g.inverse_fourier_transform(), t).profile();
        (q, u)
    }

    /// u(t, x) = Q_t(b₁ + i x₁) · u_G(t, x), with u_G the evolution of the
    /// Gaussian part and Q_t the moment polynomial of P under the evolved
    /// frequency Gaussian.
    pub fn evolve(&self, t: T, x: &[T]) -> Complex<T> {
        let (q, u) = self.evolution_parts(t);
        let beta = self.base.b()[0] + Complex::new(T::zero(), x[0]);
        horner(&q, beta) * u.eval(x)
    }

    /// ‖∇f‖₂ = ‖ |ω| f̂ ‖₂: Gauss-Hermite along the polynomial axis, exact
    /// Gaussian moments along the others.
    pub fn gradient_norm(&self) -> T {
        let g = self.gaussian_factor();
        let (mass, mean, var) = g.modulus_squared_moments();
        let poly = self.polynomial();
        let (mu, kappa) = self.hermite_variable();
        let (nodes, weights) = gauss_hermite::<T>(self.effective_order() + 3);
        let mut e_p = T::zero();
        let mut e_wp = T::zero();
        for (&y, &w) in nodes.iter().zip(&weights) {
            let omega = mu + kappa * y;
            let p = horner(&poly, Complex::new(omega, T::zero())).norm_sqr();
            e_p = e_p + w * p;
            e_wp = e_wp + w * p * omega * omega;
        }
        let sqrt_pi = T::PI().sqrt();
        let others = mean.iter().skip(1).fold(T::zero(), |a, &m| a + var + m * m);
        (mass * (e_wp + e_p * others) / sqrt_pi).sqrt()
    }

    /// The same function written about a refitted base G' for which the
    /// tangent coefficients vanish: c₁ = c₂ = 0 in one dimension, c₁ = 0
    /// otherwise (A is isotropic, so the ω₁-width cannot move alone).
    /// f̂/G' is re-projected onto H₀..H_m; the second value is the relative
    /// squared L² mass lost to that truncation.
    pub fn recentered(&self) -> Result<(Self, T)> {
        let m = self.hermite_coeffs.len();
        if m == 0 {
            return Ok((self.clone(), T::zero()));
        }
        let fit_width = self.dim() == 1;
        let (nodes, weights) = gauss_hermite::<T>(64);
        let sqrt_pi = T::PI().sqrt();
        let poly = self.polynomial();
        let (a0, b0) = (self.base.a(), self.base.b()[0]);
        // ω₁-dependence of f̂ up to a constant
        let f = |w: T| horner(&poly, Complex::new(w, T::zero())) * (a0 * w * w + b0 * w).exp();
        let norms: Vec<T> = (0..=m.max(2)).scan(T::one(), |s, j| {
            if j > 0 {
                *s = *s * T::lit(2.0) * T::from_usize_lossy(j);
            }
            Some(*s)
        }).collect();
        let (mut a, mut b) = (a0, b0);
        let mut proj = vec![Complex::new(T::zero(), T::zero()); m.max(2) + 1];
        let mut q_norm = T::zero();
        for _ in 0..200 {
            if !(a.re < T::zero()) {
                return Err(Error::Degenerate("recentering left the Gaussian family".into()));
            }
            let kappa = (-T::one() / (T::lit(2.0) * a.re)).sqrt();
            let mu = -b.re / (T::lit(2.0) * a.re);
            proj.iter_mut().for_each(|p| *p = Complex::new(T::zero(), T::zero()));
            q_norm = T::zero();
            for (&x, &w) in nodes.iter().zip(&weights) {
                let om = mu + kappa * x;
                let q = f(om) / (a * om * om + b * om).exp();
                q_norm = q_norm + w * q.norm_sqr();
                let (mut h0, mut h1) = (T::one(), T::lit(2.0) * x);
                proj[0] = proj[0] + q * w;
                proj[1] = proj[1] + q * (w * h1);
                for (j, p) in proj.iter_mut().enumerate().skip(2) {
                    let h2 = T::lit(2.0) * x * h1 - T::lit(2.0) * T::from_usize_lossy(j - 1) * h0;
                    *p = *p + q * (w * h2);
                    h0 = h1;
                    h1 = h2;
                }
            }
            for (p, &nj) in proj.iter_mut().zip(&norms) {
                *p = *p / (sqrt_pi * nj);
            }
            q_norm = q_norm / sqrt_pi;
            if proj[0].norm() == T::zero() {
                return Err(Error::Degenerate("trial function is orthogonal to its Gaussian fit".into()));
            }
            let r1 = proj[1] / proj[0];
            let r2 = if fit_width { proj[2] / proj[0] } else { Complex::new(T::zero(), T::zero()) };
            if r1.norm() < T::lit(1e-13) && r2.norm() < T::lit(1e-13) {
                break;
            }
            // G' ← G' e^{δα x² + δβ x} with x = (ω₁ − μ)/κ; damped to stay
            // inside the basin of the first-order update
            let mut da = r2 * T::lit(4.0);
            let mut db = r1 * T::lit(2.0);
            let big = da.norm().max(db.norm());
            if big > T::lit(0.25) {
                da = da * (T::lit(0.25) / big);
                db = db * (T::lit(0.25) / big);
            }
            a = a + da / (kappa * kappa);
            b = b + db / kappa - da * (T::lit(2.0) * mu / (kappa * kappa));
        }
        let kept = proj.iter().zip(&norms).fold(T::zero(), |s, (p, &nj)| s + p.norm_sqr() * nj);
        let loss = ((q_norm - kept) / q_norm).max(T::zero());
        let mut coeffs: Vec<Complex<T>> = proj[1..=m].iter().map(|p| p / proj[0]).collect();
        coeffs[0] = Complex::new(T::zero(), T::zero());
        if fit_width && m >= 2 {
            coeffs[1] = Complex::new(T::zero(), T::zero());
        }
        let mut bv = self.base.b().to_vec();
        bv[0] = b;
        let base = GaussianProfile::new(self.dim(), a, bv, self.base.c() + proj[0].ln())?;
        Ok((Self::new(base, coeffs)?, loss))
    }

    /// Samples the initial datum f on a spatial grid.
    pub fn to_grid(&self, half_width: T, points: usize) -> Result<GridFunction<T>> {
        let (q, u) = self.evolution_parts(T::zero());
        let b1 = self.base.b()[0];
        GridFunction::from_fn(self.dim(), half_width, points, |x| horner(&q, b1 + Complex::new(T::zero(), x[0])) * u.eval(x))
    }

    /// Gauss-Hermite node count that integrates |Q|^r exactly when r is an
    /// even integer, and generously otherwise.
    fn node_count(&self, r: T) -> usize {
        let m = self.effective_order();
        let rr = r.to_f64_lossy();
        let even = (rr / 2.0).fract() == 0.0;
        let exact = (rr * m as f64 / 2.0).ceil() as usize + 2;
        if even { exact.max(4) } else { exact.max(64).min(160) }
    }

    /// log ∫|u(t, x)|^r dx.
    fn log_spatial_integral(&self, t: T, r: T, nodes: &(Vec<T>, Vec<T>)) -> T {
        let (q, u) = self.evolution_parts(t);
        let log_g = gaussian_log_spatial_integral(u.a(), u.b(), u.c(), r);
        let alpha = -r * u.a().re;
        let centre = r * u.b()[0].re / (T::lit(2.0) * alpha);
        let inv_sqrt_alpha = T::one() / alpha.sqrt();
        let b1 = self.base.b()[0];
        let half_r = r * T::lit(0.5);
        let mut acc = T::zero();
        for (&y, &w) in nodes.0.iter().zip(&nodes.1) {
            let x = centre + y * inv_sqrt_alpha;
            acc = acc + w * horner(&q, b1 + Complex::new(T::zero(), x)).norm_sqr().powf(half_r);
        }
        log_g + (acc / T::PI().sqrt()).ln()
    }

    /// ∫|u(t, x)|^r dx, exact up to rounding for even integer r.
    pub fn spatial_integral(&self, t: T, r: T) -> T {
        let nodes = gauss_hermite(self.node_count(r));
        self.log_spatial_integral(t, r, &nodes).exp()
    }

    /// ‖e^{itΔ}f‖_{L^q_t L^r_x}.
    pub fn strichartz_norm(&self, q: Exponent, r: Exponent, spec: &TimeQuadratureSpec) -> Result<NormEstimate<T>> {
        let (q, r) = validate_exponents::<T>(self.dim(), q, r)?;
        let nodes = gauss_hermite(self.node_count(r));
        let spatial = self.base.inverse_fourier_transform();
        let (t0, width) = focus_time(spatial.a());
        Ok(time_norm_from_log(|t: T| self.log_spatial_integral(t, r, &nodes), q, r, t0, width, spec))
    }
}
