use num_complex::Complex;

use crate::domain::gaussian::GaussianProfile;
use crate::error::{Error, Result};
use crate::scalar::Scalar;

/// Complex samples on the uniform grid x_j = −L + j·(2L/N), j = 0..N, per
/// axis, over the box [−L, L)^n. Samples are stored row-major with the last
/// axis fastest.
#[derive(Debug, Clone, PartialEq)]
pub struct GridFunction<T> {
    n: usize,
    half_width: T,
    points: usize,
    samples: Vec<Complex<T>>,
}

impl<T: Scalar> GridFunction<T> {
    pub fn new(n: usize, half_width: T, points: usize, samples: Vec<Complex<T>>) -> Result<Self> {
        if n == 0 {
            return Err(Error::Domain("grid dimension must be at least 1".into()));
        }
        if !(half_width > T::zero()) || !half_width.is_finite() {
            return Err(Error::Domain(format!("half width {half_width} must be positive")));
        }
        if points == 0 || points % 2 != 0 {
            return Err(Error::Domain(format!("points per axis {points} must be positive and even")));
        }
        let expected = points.checked_pow(n as u32).ok_or_else(|| Error::Domain("grid too large".into()))?;
        if samples.len() != expected {
            return Err(Error::DimensionMismatch { expected, found: samples.len() });
        }
        Ok(Self { n, half_width, points, samples })
    }

    pub fn zeros(n: usize, half_width: T, points: usize) -> Result<Self> {
        let len = points.checked_pow(n as u32).ok_or_else(|| Error::Domain("grid too large".into()))?;
        Self::new(n, half_width, points, vec![Complex::new(T::zero(), T::zero()); len])
    }

    pub fn from_fn<F: FnMut(&[T]) -> Complex<T>>(n: usize, half_width: T, points: usize, mut f: F) -> Result<Self> {
        let mut grid = Self::zeros(n, half_width, points)?;
        let mut x = vec![T::zero(); n];
        for idx in 0..grid.samples.len() {
            grid.coords_into(idx, &mut x);
            grid.samples[idx] = f(&x);
        }
        Ok(grid)
    }

    pub fn from_gaussian(g: &GaussianProfile<T>, half_width: T, points: usize) -> Result<Self> {
        Self::from_fn(g.dim(), half_width, points, |x| g.eval(x))
    }

    /// Half width large enough that |g| drops below 1e-16·max|g| inside the
    /// box (with one grid cell of margin).
    pub fn auto_half_width(g: &GaussianProfile<T>) -> T {
        let alpha = -g.a().re;
        let centre = g.b().iter().fold(T::zero(), |acc, b| acc.max((b.re / (T::lit(2.0) * alpha)).abs()));
        let reach = (T::lit(16.0) * T::LN_10() / alpha).sqrt();
        (centre + reach) * T::lit(1.05)
    }

    pub fn dim(&self) -> usize {
        self.n
    }
    pub fn half_width(&self) -> T {
        self.half_width
    }
    pub fn points(&self) -> usize {
        self.points
    }
    pub fn len(&self) -> usize {
        self.samples.len()
    }
    pub fn is_empty(&self) -> bool {
        self.samples.is_empty()
    }
    pub fn samples(&self) -> &[Complex<T>] {
        &self.samples
    }
    pub fn samples_mut(&mut self) -> &mut [Complex<T>] {
        &mut self.samples
    }
    pub fn into_samples(self) -> Vec<Complex<T>> {
        self.samples
    }

    pub fn step(&self) -> T {
        T::lit(2.0) * self.half_width / T::from_usize_lossy(self.points)
    }

    /// Volume element h^n.
    pub fn cell_volume(&self) -> T {
        self.step().powi(self.n as i32)
    }

    pub fn axis_coord(&self, j: usize) -> T {
        -self.half_width + T::from_usize_lossy(j) * self.step()
    }

    pub fn axis_coords(&self) -> Vec<T> {
        (0..self.points).map(|j| self.axis_coord(j)).collect()
    }

    /// Multi-index of a flat sample index (axis 0 slowest).
    pub fn multi_index(&self, mut idx: usize, out: &mut [usize]) {
        for axis in (0..self.n).rev() {
            out[axis] = idx % self.points;
            idx /= self.points;
        }
    }

    pub fn coords_into(&self, idx: usize, out: &mut [T]) {
        let mut rem = idx;
        for axis in (0..self.n).rev() {
            out[axis] = self.axis_coord(rem % self.points);
            rem /= self.points;
        }
    }

    pub fn map<F: FnMut(Complex<T>) -> Complex<T>>(&self, f: F) -> Self {
        Self { samples: self.samples.iter().copied().map(f).collect(), ..self.clone() }
    }

    pub fn conj(&self) -> Self {
        self.map(|z| z.conj())
    }

    /// Riemann-sum L² norm.
    pub fn l2_norm(&self) -> T {
        (self.samples.iter().fold(T::zero(), |acc, z| acc + z.norm_sqr()) * self.cell_volume()).sqrt()
    }

    pub fn max_abs(&self) -> T {
        self.samples.iter().fold(T::zero(), |acc, z| acc.max(z.norm()))
    }

    /// Fraction of the L² mass carried by the outer `shell` fraction of the
    /// box along any axis.
    pub fn boundary_mass_fraction(&self, shell: T) -> T {
        let cut = self.half_width * (T::one() - shell);
        let mut total = T::zero();
        let mut outer = T::zero();
        let mut x = vec![T::zero(); self.n];
        for (idx, z) in self.samples.iter().enumerate() {
            self.coords_into(idx, &mut x);
            let m = z.norm_sqr();
            total = total + m;
            if x.iter().any(|v| v.abs() >= cut) {
                outer = outer + m;
            }
        }
        if total > T::zero() { outer / total } else { T::zero() }
    }

    pub fn max_abs_diff(&self, other: &Self) -> Result<T> {
        if self.samples.len() != other.samples.len() {
            return Err(Error::DimensionMismatch { expected: self.samples.len(), found: other.samples.len() });
        }
        Ok(self.samples.iter().zip(&other.samples).fold(T::zero(), |acc, (a, b)| acc.max((a - b).norm())))
    }

    pub fn is_real(&self, rel_tol: T) -> bool {
        let scale = self.max_abs();
        self.samples.iter().all(|z| z.im.abs() <= rel_tol * scale)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn validates_shape() {
        assert!(GridFunction::<f64>::zeros(1, 1.0, 7).is_err());
        assert!(GridFunction::<f64>::zeros(1, -1.0, 8).is_err());
        assert!(GridFunction::<f64>::new(2, 1.0, 4, vec![Complex::new(0.0, 0.0); 15]).is_err());
        assert_eq!(GridFunction::<f64>::zeros(3, 1.0, 4).unwrap().len(), 64);
    }

    #[test]
    fn coordinates_are_centred() {
        let g = GridFunction::<f64>::zeros(2, 3.0, 6).unwrap();
        assert_eq!(g.axis_coord(0), -3.0);
        assert_eq!(g.axis_coord(3), 0.0);
        let mut x = [0.0; 2];
        g.coords_into(3 * 6 + 5, &mut x);
        assert_eq!(x, [0.0, 2.0]);
    }

    #[test]
    fn gaussian_l2_norm_on_grid() {
        let f = GaussianProfile::<f64>::standard(1);
        let l = GridFunction::auto_half_width(&f);
        let g = GridFunction::from_gaussian(&f, l, 256).unwrap();
        assert!((g.l2_norm() - f.l2_norm()).abs() < 1e-13);
        assert!(g.boundary_mass_fraction(0.05) < 1e-30);
    }
}
