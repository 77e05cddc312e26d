//! Quadrature primitives: globally adaptive Gauss-Kronrod (7/15) on finite
//! intervals, tangent maps for infinite ranges, and Gauss-Legendre /
//! Gauss-Hermite node generation.

use std::collections::BinaryHeap;
use std::cmp::Ordering;

use crate::scalar::Scalar;

const XGK: [f64; 8] = [
    0.991_455_371_120_812_639_206_854_697_671_9,
    0.949_107_912_342_758_524_526_189_684_047_9,
    0.864_864_423_359_769_072_789_712_788_640_9,
    0.741_531_185_599_394_439_863_864_773_280_8,
    0.586_087_235_467_691_130_294_144_845_693_0,
    0.405_845_151_377_397_166_906_606_412_076_9,
    0.207_784_955_007_898_467_600_689_403_773_2,
    0.0,
];
const WGK: [f64; 8] = [
    0.022_935_322_010_529_224_963_732_008_058_97,
    0.063_092_092_629_978_553_290_700_663_189_20,
    0.104_790_010_322_250_183_839_876_322_541_5,
    0.140_653_259_715_525_918_745_189_590_510_2,
    0.169_004_726_639_267_902_826_583_426_598_6,
    0.190_350_578_064_785_409_913_256_402_421_0,
    0.204_432_940_075_298_892_414_161_999_234_6,
    0.209_482_141_084_727_828_012_999_174_891_7,
];
const WG: [f64; 4] = [
    0.129_484_966_168_869_693_270_611_432_679_1,
    0.279_705_391_489_276_667_901_467_771_423_8,
    0.381_830_050_505_118_944_950_369_775_488_98,
    0.417_959_183_673_469_387_755_102_040_816_3,
];

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadOptions {
    pub rel_tol: f64,
    pub abs_tol: f64,
    pub max_intervals: usize,
}

impl Default for QuadOptions {
    fn default() -> Self {
        Self { rel_tol: 1e-10, abs_tol: 1e-300, max_intervals: 4000 }
    }
}

impl QuadOptions {
    pub fn rel(rel_tol: f64) -> Self {
        Self { rel_tol, ..Self::default() }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadResult<T> {
    pub value: T,
    /// Kronrod-minus-Gauss error estimate, summed over the final partition.
    pub error: T,
    pub evaluations: usize,
    pub converged: bool,
}

struct Segment<T> {
    a: T,
    b: T,
    value: T,
    error: T,
}

impl<T: Scalar> PartialEq for Segment<T> {
    fn eq(&self, other: &Self) -> bool {
        self.error == other.error
    }
}
impl<T: Scalar> Eq for Segment<T> {}
impl<T: Scalar> PartialOrd for Segment<T> {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}
impl<T: Scalar> Ord for Segment<T> {
    fn cmp(&self, other: &Self) -> Ordering {
        self.error.partial_cmp(&other.error).unwrap_or(Ordering::Equal)
    }
}

fn gk15<T: Scalar, F: FnMut(T) -> T>(f: &mut F, a: T, b: T) -> (T, T) {
    let half = T::lit(0.5);
    let center = half * (a + b);
    let half_len = half * (b - a);
    let fc = f(center);
    let mut kronrod = fc * T::lit(WGK[7]);
    let mut gauss = fc * T::lit(WG[3]);
    for j in 0..7 {
        let dx = half_len * T::lit(XGK[j]);
        let pair = f(center - dx) + f(center + dx);
        kronrod = kronrod + T::lit(WGK[j]) * pair;
        if j % 2 == 1 {
            gauss = gauss + T::lit(WG[j / 2]) * pair;
        }
    }
    let value = kronrod * half_len;
    let error = ((kronrod - gauss) * half_len).abs();
    (value, error)
}

/// Globally adaptive Gauss-Kronrod on `[a, b]`, optionally pre-split at
/// `breaks` (points strictly inside the interval).
pub fn integrate<T: Scalar, F: FnMut(T) -> T>(
    mut f: F,
    a: T,
    b: T,
    breaks: &[T],
    opts: QuadOptions,
) -> QuadResult<T> {
    let mut points = vec![a];
    points.extend(breaks.iter().copied().filter(|&p| p > a && p < b));
    points.push(b);
    let mut heap = BinaryHeap::new();
    let mut total = T::zero();
    let mut total_err = T::zero();
    let mut evaluations = 0;
    for w in points.windows(2) {
        let (value, error) = gk15(&mut f, w[0], w[1]);
        evaluations += 15;
        total = total + value;
        total_err = total_err + error;
        heap.push(Segment { a: w[0], b: w[1], value, error });
    }
    let rel = T::lit(opts.rel_tol);
    let abs = T::lit(opts.abs_tol);
    let mut converged = false;
    while heap.len() < opts.max_intervals {
        if total_err <= abs.max(rel * total.abs()) {
            converged = true;
            break;
        }
        let worst = match heap.pop() {
            Some(s) => s,
            None => break,
        };
        let mid = T::lit(0.5) * (worst.a + worst.b);
        if !(mid > worst.a && mid < worst.b) {
            // interval exhausted at machine resolution
            heap.push(worst);
            break;
        }
        let (lv, le) = gk15(&mut f, worst.a, mid);
        let (rv, re) = gk15(&mut f, mid, worst.b);
        evaluations += 30;
        total = total - worst.value + lv + rv;
        total_err = total_err - worst.error + le + re;
        heap.push(Segment { a: worst.a, b: mid, value: lv, error: le });
        heap.push(Segment { a: mid, b: worst.b, value: rv, error: re });
    }
    if !converged && total_err <= abs.max(rel * total.abs()) {
        converged = true;
    }
    // recompute the sums to shed accumulated cancellation
    let mut value = T::zero();
    let mut error = T::zero();
    for s in heap.iter() {
        value = value + s.value;
        error = error + s.error;
    }
    QuadResult { value, error, evaluations, converged }
}

/// ∫_{-∞}^{∞} f(t) dt through t = scale·tan(θ).
pub fn integrate_real_line<T: Scalar, F: FnMut(T) -> T>(mut f: F, scale: T, opts: QuadOptions) -> QuadResult<T> {
    let hp = T::FRAC_PI_2();
    integrate(
        |theta: T| {
            let c = theta.cos();
            if c <= T::zero() {
                return T::zero();
            }
            let t = scale * theta.tan();
            let v = f(t) * scale / (c * c);
            if v.is_finite() { v } else { T::zero() }
        },
        -hp,
        hp,
        &[T::zero()],
        opts,
    )
}

/// ∫_0^∞ f(r) dr through r = scale·tan(θ); `breaks` are given in r.
pub fn integrate_half_line<T: Scalar, F: FnMut(T) -> T>(
    mut f: F,
    scale: T,
    breaks: &[T],
    opts: QuadOptions,
) -> QuadResult<T> {
    let hp = T::FRAC_PI_2();
    let theta_breaks: Vec<T> = breaks.iter().map(|&r| (r / scale).atan()).collect();
    integrate(
        |theta: T| {
            let c = theta.cos();
            if c <= T::zero() {
                return T::zero();
            }
            let r = scale * theta.tan();
            let v = f(r) * scale / (c * c);
            if v.is_finite() { v } else { T::zero() }
        },
        T::zero(),
        hp,
        &theta_breaks,
        opts,
    )
}

/// Gauss-Legendre nodes and weights on [-1, 1] (Newton iteration on P_n).
pub fn gauss_legendre<T: Scalar>(n: usize) -> (Vec<T>, Vec<T>) {
    assert!(n >= 1);
    let mut nodes = vec![T::zero(); n];
    let mut weights = vec![T::zero(); n];
    let m = (n + 1) / 2;
    let nf = n as f64;
    for i in 0..m {
        let mut z = (std::f64::consts::PI * (i as f64 + 0.75) / (nf + 0.5)).cos();
        let mut dp = 0.0;
        for _ in 0..100 {
            let (mut p0, mut p1) = (1.0f64, 0.0f64);
            for j in 0..n {
                let p2 = p1;
                p1 = p0;
                p0 = ((2.0 * j as f64 + 1.0) * z * p1 - j as f64 * p2) / (j as f64 + 1.0);
            }
            dp = nf * (z * p0 - p1) / (z * z - 1.0);
            let dz = p0 / dp;
            z -= dz;
            if dz.abs() < 1e-16 {
                break;
            }
        }
        let w = 2.0 / ((1.0 - z * z) * dp * dp);
        nodes[i] = T::lit(-z);
        nodes[n - 1 - i] = T::lit(z);
        weights[i] = T::lit(w);
        weights[n - 1 - i] = T::lit(w);
    }
    (nodes, weights)
}

/// Gauss-Hermite nodes and weights for the weight e^{-x²}.
pub fn gauss_hermite<T: Scalar>(n: usize) -> (Vec<T>, Vec<T>) {
    assert!(n >= 1);
    let nf = n as f64;
    let pim4 = std::f64::consts::PI.powf(-0.25);
    let mut x = vec![0.0f64; n];
    let mut w = vec![0.0f64; n];
    let m = (n + 1) / 2;
    let mut z = 0.0f64;
    for i in 0..m {
        z = match i {
            0 => (2.0 * nf + 1.0).sqrt() - 1.855_75 * (2.0 * nf + 1.0).powf(-0.166_67),
            1 => z - 1.14 * nf.powf(0.426) / z,
            2 => 1.86 * z - 0.86 * x[0],
            3 => 1.91 * z - 0.91 * x[1],
            _ => 2.0 * z - x[i - 2],
        };
        let mut pp = 0.0;
        for _ in 0..200 {
            // orthonormal Hermite recurrence
            let mut p1 = pim4;
            let mut p2 = 0.0;
            for j in 0..n {
                let p3 = p2;
                p2 = p1;
                let jf = j as f64;
                p1 = z * (2.0 / (jf + 1.0)).sqrt() * p2 - (jf / (jf + 1.0)).sqrt() * p3;
            }
            pp = (2.0 * nf).sqrt() * p2;
            let dz = p1 / pp;
            z -= dz;
            if dz.abs() <= 1e-15 * z.abs().max(1.0) {
                break;
            }
        }
        x[i] = z;
        x[n - 1 - i] = -z;
        w[i] = 2.0 / (pp * pp);
        w[n - 1 - i] = w[i];
    }
    let mut pairs: Vec<(f64, f64)> = x.into_iter().zip(w).collect();
    pairs.sort_by(|a, b| a.0.partial_cmp(&b.0).unwrap_or(Ordering::Equal));
    (pairs.iter().map(|p| T::lit(p.0)).collect(), pairs.iter().map(|p| T::lit(p.1)).collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    #[test]
    fn gk_polynomial_exact() {
        let r = integrate(|x: f64| x.powi(5) - 3.0 * x * x + 1.0, -1.0, 2.0, &[], QuadOptions::default());
        // [x^6/6 - x^3 + x] from -1 to 2
        let exact = (64.0 / 6.0 - 8.0 + 2.0) - (1.0 / 6.0 + 1.0 - 1.0);
        assert!((r.value - exact).abs() < 1e-13);
        assert!(r.converged);
    }

    #[test]
    fn gk_endpoint_singularity() {
        let r = integrate(|x: f64| 1.0 / x.sqrt(), 0.0, 1.0, &[], QuadOptions::rel(1e-10));
        assert!((r.value - 2.0).abs() < 1e-8, "{}", r.value);
    }

    #[test]
    fn real_line_lorentzian_and_gaussian() {
        let r = integrate_real_line(|t: f64| 1.0 / (1.0 + 4.0 * t * t), 0.5, QuadOptions::rel(1e-13));
        assert!((r.value - PI / 2.0).abs() < 1e-12);
        let g = integrate_real_line(|t: f64| (-t * t).exp(), 1.0, QuadOptions::rel(1e-13));
        assert!((g.value - PI.sqrt()).abs() < 1e-12);
    }

    #[test]
    fn half_line_laplace() {
        let r = integrate_half_line(|x: f64| x * (-x).exp(), 1.0, &[], QuadOptions::rel(1e-13));
        assert!((r.value - 1.0).abs() < 1e-12);
    }

    #[test]
    fn legendre_integrates_degree_2n_minus_1() {
        let (x, w) = gauss_legendre::<f64>(10);
        let s: f64 = x.iter().zip(&w).map(|(x, w)| w * x.powi(18)).sum();
        assert!((s - 2.0 / 19.0).abs() < 1e-14);
        assert!((w.iter().sum::<f64>() - 2.0).abs() < 1e-14);
    }

    #[test]
    fn hermite_moments() {
        let (x, w) = gauss_hermite::<f64>(40);
        let m0: f64 = w.iter().sum();
        let m4: f64 = x.iter().zip(&w).map(|(x, w)| w * x.powi(4)).sum();
        assert!((m0 - PI.sqrt()).abs() < 1e-13);
        // ∫x⁴e^{-x²} = 3√π/4
        assert!((m4 - 0.75 * PI.sqrt()).abs() < 1e-12);
        let (x, w) = gauss_hermite::<f64>(120);
        let m40: f64 = x.iter().zip(&w).map(|(x, w)| w * (x * x / 4.0).powi(20)).sum();
        // ∫x^{40}e^{-x²} = Γ(20.5), scaled by 4^{-20}
        let exact = crate::special::gamma(20.5f64) / 4f64.powi(20);
        assert!(((m40 - exact) / exact).abs() < 1e-11, "{m40} {exact}");
    }
}
