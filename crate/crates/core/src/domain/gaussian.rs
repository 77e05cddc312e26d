use num_complex::Complex;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::scalar::Scalar;

/// e^{A|x|² + b·x + C} on R^n with complex A, b, C and Re(A) < 0.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GaussianProfile<T> {
    n: usize,
    a: Complex<T>,
    b: Vec<Complex<T>>,
    c: Complex<T>,
}

/// Complex bilinear (not Hermitian) dot product.
pub(crate) fn bilinear<T: Scalar>(u: &[Complex<T>], v: &[Complex<T>]) -> Complex<T> {
    u.iter().zip(v).fold(Complex::new(T::zero(), T::zero()), |acc, (x, y)| acc + x * y)
}

impl<T: Scalar> GaussianProfile<T> {
    pub fn new(n: usize, a: Complex<T>, b: Vec<Complex<T>>, c: Complex<T>) -> Result<Self> {
        if n == 0 {
            return Err(Error::Domain("dimension must be at least 1".into()));
        }
        if b.len() != n {
            return Err(Error::DimensionMismatch { expected: n, found: b.len() });
        }
        if !(a.re < T::zero()) {
            return Err(Error::Domain(format!("Re(A) = {} must be negative", a.re)));
        }
        Ok(Self { n, a, b, c })
    }

    /// e^{A|x|²}
    pub fn isotropic(n: usize, a: T) -> Result<Self> {
        Self::new(n, Complex::new(a, T::zero()), vec![Complex::new(T::zero(), T::zero()); n], Complex::new(T::zero(), T::zero()))
    }

    /// e^{-|x|²/2}, the fixed point of the unitary Fourier transform.
    pub fn standard(n: usize) -> Self {
        Self::isotropic(n, T::lit(-0.5)).expect("valid standard Gaussian")
    }

    pub fn dim(&self) -> usize {
        self.n
    }
    pub fn a(&self) -> Complex<T> {
        self.a
    }
    pub fn b(&self) -> &[Complex<T>] {
        &self.b
    }
    pub fn c(&self) -> Complex<T> {
        self.c
    }

    pub fn eval(&self, x: &[T]) -> Complex<T> {
        let r2 = x.iter().fold(T::zero(), |acc, &v| acc + v * v);
        let bx = self.b.iter().zip(x).fold(Complex::new(T::zero(), T::zero()), |acc, (b, &x)| acc + b * x);
        (self.a * r2 + bx + self.c).exp()
    }

    /// Unitary Fourier transform, again a member of the family:
    /// A' = 1/(4A), b' = i b/(2A), C' = C − b·b/(4A) − (n/2) log(−2A).
    pub fn fourier_transform(&self) -> Self {
        let four = T::lit(4.0);
        let two = T::lit(2.0);
        let i = Complex::new(T::zero(), T::one());
        let a = Complex::new(T::one(), T::zero()) / (self.a * four);
        let b = self.b.iter().map(|b| i * b / (self.a * two)).collect();
        let half_n = T::from_usize_lossy(self.n) * T::lit(0.5);
        let c = self.c - bilinear(&self.b, &self.b) / (self.a * four) - (-self.a * two).ln() * half_n;
        Self { n: self.n, a, b, c }
    }

    /// Inverse unitary transform: F⁻¹g(x) = Fg(−x).
    pub fn inverse_fourier_transform(&self) -> Self {
        let mut out = self.fourier_transform();
        for b in out.b.iter_mut() {
            *b = -*b;
        }
        out
    }

    /// |f|² as a real Gaussian: returns (total mass, mean, per-axis variance).
    pub fn modulus_squared_moments(&self) -> (T, Vec<T>, T) {
        // |f|² = exp(2Re A |x|² + 2 Re b·x + 2 Re C)
        let alpha = -T::lit(2.0) * self.a.re;
        let var = T::one() / (T::lit(2.0) * alpha);
        let mean: Vec<T> = self.b.iter().map(|b| b.re / alpha).collect();
        let mean_sq = mean.iter().fold(T::zero(), |acc, &m| acc + m * m);
        let log_mass = T::from_usize_lossy(self.n) * T::lit(0.5) * (T::PI() / alpha).ln()
            + alpha * mean_sq
            + T::lit(2.0) * self.c.re;
        (log_mass.exp(), mean, var)
    }

    pub fn l2_norm(&self) -> T {
        self.modulus_squared_moments().0.sqrt()
    }

    /// ‖∇f‖₂ = ‖ |ω| f̂ ‖₂, in closed form.
    pub fn gradient_norm(&self) -> T {
        let (mass, mean, var) = self.fourier_transform().modulus_squared_moments();
        let mean_sq = mean.iter().fold(T::zero(), |acc, &m| acc + m * m);
        (mass * (T::from_usize_lossy(self.n) * var + mean_sq)).sqrt()
    }

    /// x ↦ f(λx)
    pub fn dilated(&self, lambda: T) -> Self {
        Self {
            n: self.n,
            a: self.a * lambda * lambda,
            b: self.b.iter().map(|b| b * lambda).collect(),
            c: self.c,
        }
    }

    /// x ↦ e^{i v·x} f(x)
    pub fn modulated(&self, v: &[T]) -> Self {
        let mut out = self.clone();
        for (b, &v) in out.b.iter_mut().zip(v) {
            *b = *b + Complex::new(T::zero(), v);
        }
        out
    }

    /// x ↦ f(x − x₀)
    pub fn translated(&self, x0: &[T]) -> Self {
        let two = T::lit(2.0);
        let x0c: Vec<Complex<T>> = x0.iter().map(|&v| Complex::new(v, T::zero())).collect();
        let r2 = x0.iter().fold(T::zero(), |acc, &v| acc + v * v);
        Self {
            n: self.n,
            a: self.a,
            b: self.b.iter().zip(&x0c).map(|(b, x)| b - self.a * x * two).collect(),
            c: self.c + self.a * r2 - bilinear(&self.b, &x0c),
        }
    }

    /// f ↦ s·f for complex s ≠ 0.
    pub fn scaled(&self, s: Complex<T>) -> Self {
        let mut out = self.clone();
        out.c = out.c + s.ln();
        out
    }
}
