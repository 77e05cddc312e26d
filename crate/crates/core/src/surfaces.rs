//! Extension operators for the paraboloid τ = |ω|² (measure dω) and the
//! cone τ = |ω| (measure dω/|ω|), the delta-constrained cone weights, and
//! the sharp extension ratio reports.
//!
//! Point evaluation uses the unitary transform
//! (g dσ)^(t, x) = (2π)^{−(n+1)/2} ∫ g e^{−i(tτ + ω·x)} dσ.
//! Cone space-time norms are reported in the isometric convention
//! e^{−2πi(tτ + ω·x)} without prefactor, in which the cone constants are
//! stated; the two differ by ‖E_iso‖_q^q = (2π)^{q(n+1)/2 − (n+1)} ‖E‖_q^q.

use num_complex::Complex;
use serde::{Deserialize, Serialize};

use crate::domain::case::Exponent;
use crate::domain::constants::{CorollaryCase, CorollaryKind};
use crate::domain::gaussian::GaussianProfile;
use crate::domain::grid::GridFunction;
use crate::domain::report::RatioReport;
use crate::error::{Error, Result};
use crate::norms::{strichartz_norm_gaussian, NormEstimate, TimeQuadratureSpec};
use crate::propagator::evolve_gaussian;
use crate::quadrature::{gauss_legendre, integrate, integrate_half_line, integrate_real_line, QuadOptions};
use crate::scalar::Scalar;
use crate::special::{bessel_j0, sphere_area};

/// Floor for the equality tolerance of extension reports.
pub const EXTENSION_RATIO_TOLERANCE: f64 = 1e-6;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SurfaceKind {
    Paraboloid,
    Cone,
}

/// Radial profile g(|ω|) sampled at r_j = j·r_max/(len − 1), interpolated
/// by Catmull-Rom cubics and taken to vanish beyond r_max.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RadialTable<T> {
    pub r_max: T,
    pub values: Vec<Complex<T>>,
}

impl<T: Scalar> RadialTable<T> {
    pub fn new(r_max: T, values: Vec<Complex<T>>) -> Result<Self> {
        if !(r_max > T::zero()) || values.len() < 4 {
            return Err(Error::InvalidInput("radial table needs r_max > 0 and at least 4 samples".into()));
        }
        Ok(Self { r_max, values })
    }

    pub fn from_fn<F: FnMut(T) -> Complex<T>>(r_max: T, samples: usize, mut f: F) -> Result<Self> {
        let h = r_max / T::from_usize_lossy(samples.max(2) - 1);
        Self::new(r_max, (0..samples).map(|j| f(T::from_usize_lossy(j) * h)).collect())
    }

    fn step(&self) -> T {
        self.r_max / T::from_usize_lossy(self.values.len() - 1)
    }

    pub fn eval(&self, r: T) -> Complex<T> {
        let zero = Complex::new(T::zero(), T::zero());
        if r < T::zero() || r > self.r_max {
            return zero;
        }
        let last = self.values.len() - 1;
        let s = r / self.step();
        let j = s.floor().to_usize_lossy().min(last - 1);
        let u = s - T::from_usize_lossy(j);
        // even reflection at r = 0, zero beyond the end
        let at = |i: isize| -> Complex<T> {
            if i < 0 {
                self.values[(-i) as usize]
            } else if i as usize > last {
                zero
            } else {
                self.values[i as usize]
            }
        };
        let j = j as isize;
        let (p0, p1, p2, p3) = (at(j - 1), at(j), at(j + 1), at(j + 2));
        let half = T::lit(0.5);
        let u2 = u * u;
        let u3 = u2 * u;
        (p1 * T::lit(2.0) + (p2 - p0) * u + (p0 * T::lit(2.0) - p1 * T::lit(5.0) + p2 * T::lit(4.0) - p3) * u2
            + (p1 * T::lit(3.0) - p0 - p2 * T::lit(3.0) + p3) * u3)
            * half
    }

    fn is_zero(&self) -> bool {
        self.values.iter().all(|z| z.norm_sqr() == T::zero())
    }
}

trait UsizeLossy {
    fn to_usize_lossy(self) -> usize;
}

impl<T: Scalar> UsizeLossy for T {
    fn to_usize_lossy(self) -> usize {
        self.to_usize().unwrap_or(0)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub enum SurfaceProfile<T> {
    /// g = e^{A|ω|² + b·ω + C} (paraboloid) or e^{A|ω| + b·ω + C} (cone).
    Exponential { a: Complex<T>, b: Vec<Complex<T>>, c: Complex<T> },
    RadialTable(RadialTable<T>),
}

/// A function on the paraboloid or cone over R^n.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SurfaceFunction<T> {
    kind: SurfaceKind,
    n: usize,
    profile: SurfaceProfile<T>,
}

fn sinc<T: Scalar>(z: T) -> T {
    if z.abs() < T::lit(1e-4) {
        T::one() - z * z / T::lit(6.0)
    } else {
        z.sin() / z
    }
}

fn dot<T: Scalar>(a: &[Complex<T>], b: &[Complex<T>]) -> Complex<T> {
    a.iter().zip(b).fold(Complex::new(T::zero(), T::zero()), |acc, (x, y)| acc + x * y)
}

impl<T: Scalar> SurfaceFunction<T> {
    pub fn exponential(kind: SurfaceKind, n: usize, a: Complex<T>, b: Vec<Complex<T>>, c: Complex<T>) -> Result<Self> {
        if n == 0 {
            return Err(Error::Domain("dimension must be at least 1".into()));
        }
        if b.len() != n {
            return Err(Error::DimensionMismatch { expected: n, found: b.len() });
        }
        match kind {
            SurfaceKind::Paraboloid if !(a.re < T::zero()) => {
                return Err(Error::Domain(format!("paraboloid family needs Re A < 0, got {}", a.re)));
            }
            SurfaceKind::Cone => {
                let re_b = b.iter().fold(T::zero(), |s, z| s + z.re * z.re).sqrt();
                if !(re_b < -a.re) {
                    return Err(Error::Domain(format!("cone family needs |Re b| < −Re A, got {re_b} and {}", a.re)));
                }
            }
            _ => {}
        }
        Ok(Self { kind, n, profile: SurfaceProfile::Exponential { a, b, c } })
    }

    /// g = e^{A|ω|}: the radial cone maximizer.
    pub fn cone_radial(n: usize, a: T) -> Result<Self> {
        Self::exponential(SurfaceKind::Cone, n, Complex::new(a, T::zero()), vec![Complex::new(T::zero(), T::zero()); n], Complex::new(T::zero(), T::zero()))
    }

    /// g = f̂ for the Gaussian f̂ = e^{A|ω|² + b·ω + C}.
    pub fn paraboloid_gaussian(g: &GaussianProfile<T>) -> Self {
        Self { kind: SurfaceKind::Paraboloid, n: g.dim(), profile: SurfaceProfile::Exponential { a: g.a(), b: g.b().to_vec(), c: g.c() } }
    }

    pub fn radial(kind: SurfaceKind, n: usize, table: RadialTable<T>) -> Result<Self> {
        if n == 0 {
            return Err(Error::Domain("dimension must be at least 1".into()));
        }
        Ok(Self { kind, n, profile: SurfaceProfile::RadialTable(table) })
    }

    /// g ≡ 0.
    pub fn zero(kind: SurfaceKind, n: usize) -> Self {
        let table = RadialTable { r_max: T::one(), values: vec![Complex::new(T::zero(), T::zero()); 4] };
        Self { kind, n, profile: SurfaceProfile::RadialTable(table) }
    }

    pub fn kind(&self) -> SurfaceKind {
        self.kind
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn profile(&self) -> &SurfaceProfile<T> {
        &self.profile
    }

    /// g at the surface point over ω.
    pub fn eval(&self, omega: &[T]) -> Complex<T> {
        let r = omega.iter().fold(T::zero(), |s, &w| s + w * w).sqrt();
        match &self.profile {
            SurfaceProfile::Exponential { a, b, c } => {
                let radial = match self.kind {
                    SurfaceKind::Paraboloid => r * r,
                    SurfaceKind::Cone => r,
                };
                let bw = b.iter().zip(omega).fold(Complex::new(T::zero(), T::zero()), |s, (b, &w)| s + b * w);
                (*a * radial + bw + c).exp()
            }
            SurfaceProfile::RadialTable(t) => t.eval(r),
        }
    }

    fn is_zero(&self) -> bool {
        matches!(&self.profile, SurfaceProfile::RadialTable(t) if t.is_zero())
    }

    /// Frequency-side Gaussian f̂ = g for the paraboloid family.
    fn paraboloid_gaussian_profile(&self) -> Option<GaussianProfile<T>> {
        match (&self.profile, self.kind) {
            (SurfaceProfile::Exponential { a, b, c }, SurfaceKind::Paraboloid) => GaussianProfile::new(self.n, *a, b.clone(), *c).ok(),
            _ => None,
        }
    }

    /// Radial profile as a function of r, when g is radial.
    fn radial_profile(&self) -> Option<Box<dyn Fn(T) -> Complex<T> + '_>> {
        match &self.profile {
            SurfaceProfile::RadialTable(t) => Some(Box::new(move |r| t.eval(r))),
            SurfaceProfile::Exponential { a, b, c } if b.iter().all(|z| z.norm_sqr() == T::zero()) => {
                let kind = self.kind;
                Some(Box::new(move |r: T| {
                    let radial = if kind == SurfaceKind::Paraboloid { r * r } else { r };
                    (*a * radial + c).exp()
                }))
            }
            _ => None,
        }
    }

    /// Outer radius of the support and a characteristic radius of |g|².
    fn radial_extent(&self) -> (Option<T>, T) {
        match &self.profile {
            SurfaceProfile::RadialTable(t) => {
                let h = t.step();
                let (mut m0, mut m1) = (T::zero(), T::zero());
                for (j, z) in t.values.iter().enumerate() {
                    let r = T::from_usize_lossy(j) * h;
                    m0 = m0 + z.norm_sqr();
                    m1 = m1 + z.norm_sqr() * r;
                }
                let rc = if m0 > T::zero() { m1 / m0 } else { t.r_max };
                (Some(t.r_max), rc.max(h))
            }
            SurfaceProfile::Exponential { a, .. } => {
                let rc = match self.kind {
                    SurfaceKind::Paraboloid => (T::one() / (T::lit(2.0) * a.re.abs())).sqrt(),
                    SurfaceKind::Cone => T::one() / a.re.abs(),
                };
                (None, rc)
            }
        }
    }
}

/// ∫_{S^{n−1}} e^{−i z u·e} du for a unit vector e, as a function of z.
fn angular_factor<T: Scalar>(n: usize, z: T) -> Result<T> {
    match n {
        1 => Ok(T::lit(2.0) * z.cos()),
        2 => Ok(T::lit(2.0) * T::PI() * bessel_j0(z)),
        3 => Ok(T::lit(4.0) * T::PI() * sinc(z)),
        _ => Err(Error::Unsupported(format!("radial quadrature in dimension {n}"))),
    }
}

fn integrate_complex<T: Scalar, F: Fn(T) -> Complex<T>>(f: F, a: Option<T>, scale: T, opts: QuadOptions) -> (Complex<T>, T) {
    let (re, im) = match a {
        Some(r_max) => (integrate(|r| f(r).re, T::zero(), r_max, &[], opts), integrate(|r| f(r).im, T::zero(), r_max, &[], opts)),
        None => (integrate_half_line(|r| f(r).re, scale, &[], opts), integrate_half_line(|r| f(r).im, scale, &[], opts)),
    };
    (Complex::new(re.value, im.value), re.error + im.error)
}

fn radial_norm<T: Scalar>(x: &[T]) -> T {
    x.iter().fold(T::zero(), |s, &v| s + v * v).sqrt()
}

/// (g dσ)^(t, x) for radial g by radial quadrature:
/// (2π)^{−(n+1)/2} ∫ g(r) e^{−itφ(r)} S_n(r|x|) r^m dr with φ = r², m = n − 1
/// (paraboloid) or φ = r, m = n − 2 (cone) and S_n the angular factor.
fn radial_extension<T: Scalar>(sf: &SurfaceFunction<T>, t: T, rho: T, opts: QuadOptions) -> Result<(Complex<T>, T)> {
    let g = sf.radial_profile().ok_or_else(|| Error::Unsupported("radial quadrature needs a radial profile (b = 0)".into()))?;
    angular_factor::<T>(sf.n, T::zero())?;
    let n = sf.n;
    let (support, rc) = sf.radial_extent();
    let kind = sf.kind;
    let m = match kind {
        SurfaceKind::Paraboloid => n as i32 - 1,
        SurfaceKind::Cone => n as i32 - 2,
    };
    if kind == SurfaceKind::Cone && m < 0 {
        return Err(Error::Unsupported("cone over R^1".into()));
    }
    let pref = (T::lit(2.0) * T::PI()).powf(-T::from_usize_lossy(n + 1) * T::lit(0.5));
    let (v, e) = integrate_complex(
        |r: T| {
            let phase = if kind == SurfaceKind::Paraboloid { r * r } else { r };
            let ang = angular_factor::<T>(n, r * rho).unwrap_or(T::zero());
            g(r) * Complex::new(T::zero(), -t * phase).exp() * (ang * r.powi(m))
        },
        support,
        rc,
        opts,
    );
    Ok((v * pref, e * pref))
}

/// sup over (t, ρ) of the radial-quadrature integrand's absolute integral,
/// (2π)^{−(n+1)/2} |S^{n−1}| ∫ |g| r^m dr: the scale for absolute
/// tolerances, since E itself can cancel to nothing in the far field.
fn radial_envelope<T: Scalar>(sf: &SurfaceFunction<T>) -> Result<T> {
    let g = sf.radial_profile().ok_or_else(|| Error::Unsupported("radial quadrature needs a radial profile (b = 0)".into()))?;
    let m = match sf.kind {
        SurfaceKind::Paraboloid => sf.n as i32 - 1,
        SurfaceKind::Cone => sf.n as i32 - 2,
    };
    let (support, rc) = sf.radial_extent();
    let opts = QuadOptions::rel(1e-6);
    let f = |r: T| g(r).norm() * r.powi(m.max(0));
    let mass = match support {
        Some(r_max) => integrate(f, T::zero(), r_max, &[], opts).value,
        None => integrate_half_line(f, rc, &[], opts).value,
    };
    let pref = (T::lit(2.0) * T::PI()).powf(-T::from_usize_lossy(sf.n + 1) * T::lit(0.5));
    Ok(pref * sphere_area::<T>(sf.n) * mass)
}

/// (g dσ)^(t, x) on the paraboloid: (2π)^{−1/2} u(t, −x), where u is the
/// Schrödinger evolution of the datum with f̂ = g.
pub fn paraboloid_extension<T: Scalar>(sf: &SurfaceFunction<T>, t: T, x: &[T]) -> Result<Complex<T>> {
    if sf.kind != SurfaceKind::Paraboloid {
        return Err(Error::InvalidInput("paraboloid extension of a cone function".into()));
    }
    if x.len() != sf.n {
        return Err(Error::DimensionMismatch { expected: sf.n, found: x.len() });
    }
    if sf.is_zero() {
        return Ok(Complex::new(T::zero(), T::zero()));
    }
    let scale = (T::lit(2.0) * T::PI()).sqrt().recip();
    match sf.paraboloid_gaussian_profile() {
        Some(ghat) => {
            let u = evolve_gaussian(&ghat.inverse_fourier_transform(), t);
            let minus_x: Vec<T> = x.iter().map(|&v| -v).collect();
            Ok(u.eval(&minus_x) * scale)
        }
        None => Ok(radial_extension(sf, t, radial_norm(x), QuadOptions::rel(1e-10))?.0),
    }
}

/// (g dσ)^(t, x) on the cone, n ∈ {2, 3}. For the exponential family with
/// α = −A + it and w = x + ib:
/// n = 3: e^C / (π(α² + w·w)); n = 2: (2π)^{−1/2} e^C (α² + w·w)^{−1/2}
/// (principal root). Radial tables use radial quadrature.
pub fn cone_extension<T: Scalar>(sf: &SurfaceFunction<T>, t: T, x: &[T]) -> Result<Complex<T>> {
    if sf.kind != SurfaceKind::Cone {
        return Err(Error::InvalidInput("cone extension of a paraboloid function".into()));
    }
    if !(sf.n == 2 || sf.n == 3) {
        return Err(Error::Unsupported(format!("cone extension over R^{}", sf.n)));
    }
    if x.len() != sf.n {
        return Err(Error::DimensionMismatch { expected: sf.n, found: x.len() });
    }
    if sf.is_zero() {
        return Ok(Complex::new(T::zero(), T::zero()));
    }
    match &sf.profile {
        SurfaceProfile::Exponential { a, b, c } => {
            let alpha = -*a + Complex::new(T::zero(), t);
            let w: Vec<Complex<T>> = x.iter().zip(b).map(|(&x, b)| Complex::new(x, T::zero()) + Complex::new(T::zero(), T::one()) * b).collect();
            let d = alpha * alpha + dot(&w, &w);
            let e = c.exp();
            if sf.n == 3 {
                Ok(e / (d * T::PI()))
            } else {
                Ok(e / (d.sqrt() * (T::lit(2.0) * T::PI()).sqrt()))
            }
        }
        SurfaceProfile::RadialTable(_) => Ok(radial_extension(sf, t, radial_norm(x), QuadOptions::rel(1e-10))?.0),
    }
}

/// Cone extension by radial quadrature regardless of closed forms
/// (radial profiles only); the cross-check for `cone_extension`.
pub fn cone_extension_quadrature<T: Scalar>(sf: &SurfaceFunction<T>, t: T, x: &[T]) -> Result<Complex<T>> {
    if sf.kind != SurfaceKind::Cone {
        return Err(Error::InvalidInput("cone extension of a paraboloid function".into()));
    }
    Ok(radial_extension(sf, t, radial_norm(x), QuadOptions::rel(1e-12))?.0)
}

/// Node-doubling result of a delta-constrained weight integral.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct WeightEstimate<T> {
    pub value: T,
    /// |last − previous| / |last| at termination.
    pub relative_change: T,
    pub nodes: usize,
}

fn check_cone_point<T: Scalar>(tau: T, omega: &[T]) -> Result<T> {
    let w = radial_norm(omega);
    if !(tau > w) {
        return Err(Error::Domain(format!("(τ, ω) must satisfy τ > |ω|, got τ = {tau}, |ω| = {w}")));
    }
    Ok(w)
}

/// ∫_{R³} δ(τ − |η| − |ω − η|) / (|η||ω − η|) dη.
///
/// Along a direction u the delta fixes |η| = r(u) = (τ² − |ω|²)/(2(τ − ω·u))
/// with Jacobian (τ − r)/(τ − ω·u); together with r² dr/(r(τ − r)) the
/// integrand on the sphere becomes r(u)/(τ − ω·u). Angles are taken in the
/// lab frame: Gauss-Legendre in cos θ, trapezoid in azimuth.
pub fn cone_pair_weight<T: Scalar>(tau: T, omega: &[T; 3]) -> Result<WeightEstimate<T>> {
    let w = check_cone_point(tau, omega)?;
    let num = (tau * tau - w * w) * T::lit(0.5);
    let eval = |m: usize| -> T {
        let (xs, ws) = gauss_legendre::<T>(m);
        let na = 2 * m;
        let dphi = T::lit(2.0) * T::PI() / T::from_usize_lossy(na);
        let mut acc = T::zero();
        for (&ct, &wt) in xs.iter().zip(&ws) {
            let st = (T::one() - ct * ct).max(T::zero()).sqrt();
            let mut ring = T::zero();
            for j in 0..na {
                let phi = T::from_usize_lossy(j) * dphi;
                let u = [st * phi.cos(), st * phi.sin(), ct];
                let d = tau - (omega[0] * u[0] + omega[1] * u[1] + omega[2] * u[2]);
                ring = ring + num / (d * d);
            }
            acc = acc + wt * ring * dphi;
        }
        acc
    };
    converge(eval, 8, 2048, T::lit(1e-8))
}

fn converge<T: Scalar, F: FnMut(usize) -> T>(mut eval: F, start: usize, max: usize, tol: T) -> Result<WeightEstimate<T>> {
    let mut m = start;
    let mut prev = eval(m);
    loop {
        m *= 2;
        let cur = eval(m);
        let change = ((cur - prev) / cur).abs();
        if change < tol || m >= max {
            return Ok(WeightEstimate { value: cur, relative_change: change, nodes: m });
        }
        prev = cur;
    }
}

/// The planar pair weight ∫_{R²} δ(τ − |η| − |ω − η|)/(|η||ω − η|) dη,
/// reduced as in three dimensions to ∫_0^{2π} dφ/(τ − ω·u(φ)); periodic
/// trapezoid with node doubling.
fn planar_pair_weight<T: Scalar>(tau: T, omega: [T; 2], tol: T) -> T {
    let eval = |m: usize| -> T {
        let h = T::lit(2.0) * T::PI() / T::from_usize_lossy(m);
        let mut acc = T::zero();
        for j in 0..m {
            let phi = T::from_usize_lossy(j) * h;
            acc = acc + (tau - omega[0] * phi.cos() - omega[1] * phi.sin()).recip();
        }
        acc * h
    };
    converge(eval, 16, 1 << 16, tol).map(|w| w.value).unwrap_or(T::nan())
}

/// ∫ δ²(ω − η − ξ − ζ) δ(τ − |η| − |ξ| − |ζ|)/(|η||ξ||ζ|) over (R²)³.
///
/// The outer variable ζ = ρ v(ψ) runs over the ellipse τ − ρ > |ω − ρv|,
/// i.e. ρ < ρ_max(ψ) = (τ² − |ω|²)/(2(τ − ω·v)), with dζ/|ζ| = dρ dψ; the
/// inner factor is the planar pair weight at (τ − ρ, ω − ρv), which blows
/// up like (ρ_max − ρ)^{−1/2}. The substitution ρ = ρ_max sin²s removes
/// that endpoint singularity.
pub fn cone_triple_weight<T: Scalar>(tau: T, omega: &[T; 2]) -> Result<WeightEstimate<T>> {
    let w = check_cone_point(tau, omega)?;
    let num = (tau * tau - w * w) * T::lit(0.5);
    let eval = |m: usize| -> T {
        let (xs, ws) = gauss_legendre::<T>(m);
        let quarter = T::FRAC_PI_4();
        let na = 2 * m;
        let dpsi = T::lit(2.0) * T::PI() / T::from_usize_lossy(na);
        let mut acc = T::zero();
        for j in 0..na {
            let psi = T::from_usize_lossy(j) * dpsi;
            let v = [psi.cos(), psi.sin()];
            let rho_max = num / (tau - omega[0] * v[0] - omega[1] * v[1]);
            let mut inner = T::zero();
            for (&x, &wx) in xs.iter().zip(&ws) {
                // s ∈ (0, π/2)
                let s = quarter * (x + T::one());
                let (ss, cs) = (s.sin(), s.cos());
                let rho = rho_max * ss * ss;
                let jac = T::lit(2.0) * rho_max * ss * cs * quarter;
                let inner_tau = tau - rho;
                let inner_omega = [omega[0] - rho * v[0], omega[1] - rho * v[1]];
                inner = inner + wx * jac * planar_pair_weight(inner_tau, inner_omega, T::lit(1e-10));
            }
            acc = acc + inner * dpsi;
        }
        acc
    };
    converge(eval, 8, 128, T::lit(1e-6))
}

/// ‖g‖²_{L²(dσ)}: dω on the paraboloid, dω/|ω| on the cone.
pub fn surface_l2_norm_sq<T: Scalar>(sf: &SurfaceFunction<T>) -> Result<T> {
    if sf.is_zero() {
        return Ok(T::zero());
    }
    match (&sf.profile, sf.kind) {
        (SurfaceProfile::Exponential { .. }, SurfaceKind::Paraboloid) => {
            Ok(sf.paraboloid_gaussian_profile().expect("validated family").modulus_squared_moments().0)
        }
        (SurfaceProfile::Exponential { a, b, c }, SurfaceKind::Cone) => {
            // |g|² = e^{−a r + β·ω + 2 Re C} with a = −2 Re A, β = 2 Re b
            let a2 = -T::lit(2.0) * a.re;
            let beta = T::lit(2.0) * b.iter().fold(T::zero(), |s, z| s + z.re * z.re).sqrt();
            let d = a2 * a2 - beta * beta;
            if !(d > T::zero()) {
                return Err(Error::Domain("cone profile is not square integrable".into()));
            }
            let e = (T::lit(2.0) * c.re).exp();
            match sf.n {
                1 => Err(Error::Domain("cone measure over R^1 is not locally finite".into())),
                2 => Ok(e * T::lit(2.0) * T::PI() / d.sqrt()),
                3 => Ok(e * T::lit(4.0) * T::PI() / d),
                n => Err(Error::Unsupported(format!("cone norm over R^{n}"))),
            }
        }
        (SurfaceProfile::RadialTable(table), kind) => {
            let m = match kind {
                SurfaceKind::Paraboloid => sf.n as i32 - 1,
                SurfaceKind::Cone => sf.n as i32 - 2,
            };
            if m < 0 {
                return Err(Error::Domain("cone measure over R^1 is not locally finite".into()));
            }
            let res = integrate(|r: T| table.eval(r).norm_sqr() * r.powi(m), T::zero(), table.r_max, &[], QuadOptions::rel(1e-12));
            Ok(res.value * sphere_area::<T>(sf.n))
        }
    }
}

pub fn surface_l2_norm<T: Scalar>(sf: &SurfaceFunction<T>) -> Result<T> {
    Ok(surface_l2_norm_sq(sf)?.sqrt())
}

/// Accuracy targets for the space-time extension norms.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ExtensionSpec {
    /// Outer (time) and middle (radius) relative tolerances.
    pub rel_tol: f64,
    /// Relative tolerance of the innermost radial transform (tables only).
    pub inner_rel_tol: f64,
}

impl Default for ExtensionSpec {
    fn default() -> Self {
        Self { rel_tol: 1e-9, inner_rel_tol: 1e-9 }
    }
}

impl ExtensionSpec {
    /// Looser targets for radial tables, whose transforms are themselves
    /// quadratures.
    pub fn table() -> Self {
        Self { rel_tol: 1e-5, inner_rel_tol: 1e-7 }
    }
}

/// ∫∫ |E(t, ρ)|^q |S^{n−1}| ρ^{n−1} dρ dt for a radial space-time integrand.
fn radial_spacetime<T: Scalar, F: FnMut(T, T) -> T>(mut abs_e: F, n: usize, q: T, t_scale: T, rho_scale: T, rel: f64) -> (T, T, bool) {
    let area = sphere_area::<T>(n);
    let opts = QuadOptions { rel_tol: rel, abs_tol: 1e-300, max_intervals: 2000 };
    let mut inner_err = T::zero();
    let mut converged = true;
    let outer = integrate_real_line(
        |t: T| {
            let res = integrate_half_line(|rho: T| abs_e(t, rho).powf(q) * rho.powi(n as i32 - 1), rho_scale, &[], opts);
            inner_err = inner_err + res.error;
            converged &= res.converged;
            res.value * area
        },
        t_scale,
        opts,
    );
    (outer.value, outer.error + outer.value * T::lit(rel), converged && outer.converged)
}

/// ‖(g dσ)^‖_{L^q(R^{n+1})}^q in the unitary convention.
pub fn extension_norm_power<T: Scalar>(sf: &SurfaceFunction<T>, q: T, spec: &ExtensionSpec) -> Result<NormEstimate<T>> {
    if !(q >= T::one()) || !q.is_finite() {
        return Err(Error::Domain(format!("exponent q = {q} out of range")));
    }
    if sf.is_zero() {
        return Ok(NormEstimate { value: T::zero(), error: T::zero(), reliable: true, evaluations: 0 });
    }
    let (_, rc) = sf.radial_extent();
    match (&sf.profile, sf.kind) {
        (SurfaceProfile::Exponential { .. }, SurfaceKind::Paraboloid) => {
            let ghat = sf.paraboloid_gaussian_profile().expect("validated family");
            let qi = q.to_f64_lossy();
            if qi.fract() != 0.0 {
                return Err(Error::Unsupported("non-integer paraboloid exponents".into()));
            }
            let e = Exponent::int(qi as i64);
            let tq = TimeQuadratureSpec { rel_tol: spec.rel_tol.min(1e-10), max_panels: 4000 };
            let u = strichartz_norm_gaussian(&ghat.inverse_fourier_transform(), e, e, &tq)?;
            let scale = (T::lit(2.0) * T::PI()).powf(-q * T::lit(0.5));
            let value = u.value.powf(q) * scale;
            Ok(NormEstimate { value, error: q * value * u.error / u.value, reliable: u.reliable, evaluations: u.evaluations })
        }
        (SurfaceProfile::Exponential { a, b, c }, SurfaceKind::Cone) => {
            if b.iter().any(|z| z.re != T::zero()) {
                return Err(Error::Unsupported("cone norms with Re b ≠ 0 (Lorentz-boosted profiles)".into()));
            }
            // Im b translates in x and Im A shifts t: neither changes the norm
            let radial = cone_real(sf.n, a.re, c.re)?;
            let (value, error, ok) = radial_spacetime(
                |t, rho| cone_extension(&radial, t, &[rho, T::zero(), T::zero()][..sf.n]).map(|z| z.norm()).unwrap_or(T::nan()),
                sf.n,
                q,
                rc,
                rc,
                spec.rel_tol,
            );
            Ok(NormEstimate { value, error, reliable: ok, evaluations: 0 })
        }
        (SurfaceProfile::RadialTable(_), _) => {
            let envelope = radial_envelope(sf)?;
            let opts = QuadOptions { abs_tol: spec.inner_rel_tol * envelope.to_f64_lossy(), ..QuadOptions::rel(spec.inner_rel_tol) };
            let mut failure = None;
            let (value, error, ok) = radial_spacetime(
                |t, rho| match radial_extension(sf, t, rho, opts) {
                    Ok((v, _)) => v.norm(),
                    Err(e) => {
                        failure.get_or_insert(e);
                        T::zero()
                    }
                },
                sf.n,
                q,
                T::one() / (rc * rc).max(T::lit(1e-12)),
                T::one() / rc,
                spec.rel_tol,
            );
            if let Some(e) = failure {
                return Err(e);
            }
            let error = error + value * q * T::lit(spec.inner_rel_tol);
            Ok(NormEstimate { value, error, reliable: ok, evaluations: 0 })
        }
    }
}

fn cone_real<T: Scalar>(n: usize, a: T, c: T) -> Result<SurfaceFunction<T>> {
    SurfaceFunction::exponential(SurfaceKind::Cone, n, Complex::new(a, T::zero()), vec![Complex::new(T::zero(), T::zero()); n], Complex::new(c, T::zero()))
}

/// (2π)^{q(n+1)/2 − (n+1)}: unitary to isometric norm^q conversion.
pub fn isometric_factor<T: Scalar>(n: usize, q: T) -> T {
    let d = T::from_usize_lossy(n + 1);
    (T::lit(2.0) * T::PI()).powf(q * d * T::lit(0.5) - d)
}

/// lhs = ‖(g dσ)^‖_q^q (isometric convention on the cone), rhs =
/// (constant · ‖g‖_{L²(dσ)})^q. Equality is expected on the maximizer
/// families, strictness on radial tables.
pub fn extension_ratio_report<T: Scalar>(sf: &SurfaceFunction<T>, case_id: &str, spec: &ExtensionSpec) -> Result<RatioReport<T>> {
    let case = CorollaryCase::lookup(case_id)?;
    let kind = match case.kind {
        CorollaryKind::Paraboloid => SurfaceKind::Paraboloid,
        CorollaryKind::Cone => SurfaceKind::Cone,
        _ => return Err(Error::UnknownCase(format!("{case_id} is not an extension case"))),
    };
    if kind != sf.kind || case.n != sf.n {
        return Err(Error::InvalidInput(format!("{case_id} does not match a {:?} function over R^{}", sf.kind, sf.n)));
    }
    let q = T::from_u32(case.q).expect("small");
    let mut lhs = extension_norm_power(sf, q, spec)?;
    if kind == SurfaceKind::Cone {
        let f = isometric_factor::<T>(sf.n, q);
        lhs.value = lhs.value * f;
        lhs.error = lhs.error * f;
    }
    let constant: T = case.closed_form();
    let rhs = (constant * surface_l2_norm(sf)?).powf(q);
    let maximizer = matches!(sf.profile, SurfaceProfile::Exponential { .. });
    Ok(if maximizer {
        let probe = RatioReport::equality(lhs.value, rhs, lhs.error, T::zero(), T::one(), T::zero());
        let tol = (T::lit(3.0) * probe.ratio_error()).max(T::lit(EXTENSION_RATIO_TOLERANCE));
        RatioReport::equality(lhs.value, rhs, lhs.error, T::zero(), T::one(), tol)
    } else {
        RatioReport::strict(lhs.value, rhs, lhs.error, T::zero())
    })
}

/// h = C |E|^{q−2} conj(E) on a space-time grid, with C = ‖E‖_q^{−(q−1)}
/// so that ‖h‖_{q'} = 1 and ∫ h E = ‖E‖_q (all on the grid).
#[derive(Debug, Clone)]
pub struct DualMaximizer<T> {
    /// Axis 0 is time, axes 1..=n are space.
    pub h: GridFunction<T>,
    pub pairing: Complex<T>,
    /// ‖E‖_q on the same grid.
    pub grid_norm: T,
    /// ‖h‖_{q'}.
    pub dual_norm: T,
}

pub fn dual_maximizer<T: Scalar>(sf: &SurfaceFunction<T>, q: T, half_width: T, points: usize) -> Result<DualMaximizer<T>> {
    if !(q > T::one()) || !q.is_finite() {
        return Err(Error::Domain(format!("exponent q = {q} must lie in (1, ∞)")));
    }
    let n = sf.n;
    let mut x = vec![T::zero(); n];
    let mut failure = None;
    let e = GridFunction::from_fn(n + 1, half_width, points, |p| {
        x.copy_from_slice(&p[1..]);
        let v = match sf.kind {
            SurfaceKind::Paraboloid => paraboloid_extension(sf, p[0], &x),
            SurfaceKind::Cone => cone_extension(sf, p[0], &x),
        };
        v.unwrap_or_else(|err| {
            failure.get_or_insert(err);
            Complex::new(T::zero(), T::zero())
        })
    })?;
    if let Some(err) = failure {
        return Err(err);
    }
    let vol = e.cell_volume();
    let sum_q = e.samples().iter().fold(T::zero(), |s, z| s + z.norm().powf(q)) * vol;
    if !(sum_q > T::zero()) {
        return Err(Error::Degenerate("extension vanishes identically; the dual normalization is undefined".into()));
    }
    let grid_norm = sum_q.powf(q.recip());
    let c = grid_norm.powf(-(q - T::one()));
    let h = e.map(|z| z.conj() * (c * z.norm().powf(q - T::lit(2.0))));
    let pairing = h.samples().iter().zip(e.samples()).fold(Complex::new(T::zero(), T::zero()), |s, (a, b)| s + a * b) * vol;
    let q_dual = q / (q - T::one());
    let dual_norm = (h.samples().iter().fold(T::zero(), |s, z| s + z.norm().powf(q_dual)) * vol).powf(q_dual.recip());
    Ok(DualMaximizer { h, pairing, grid_norm, dual_norm })
}
