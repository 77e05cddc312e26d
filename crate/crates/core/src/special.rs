//! Gamma function and the handful of special functions the constants and
//! radial transforms need.

use crate::scalar::Scalar;

const LANCZOS_G: f64 = 7.0;
const LANCZOS_COEFFS: [f64; 9] = [
    0.999_999_999_999_809_93,
    676.520_368_121_885_1,
    -1_259.139_216_722_402_8,
    771.323_428_777_653_13,
    -176.615_029_162_140_59,
    12.507_343_278_686_905,
    -0.138_571_095_265_720_12,
    9.984_369_578_019_571_6e-6,
    1.505_632_735_149_311_6e-7,
];

fn lanczos_sum<T: Scalar>(z: T) -> T {
    // z is the shifted argument x - 1
    let mut acc = T::lit(LANCZOS_COEFFS[0]);
    for (i, &c) in LANCZOS_COEFFS.iter().enumerate().skip(1) {
        acc = acc + T::lit(c) / (z + T::from_usize_lossy(i));
    }
    acc
}

/// Gamma function for real arguments, Lanczos approximation with
/// reflection below 1/2. Poles return NaN.
pub fn gamma<T: Scalar>(x: T) -> T {
    let half = T::lit(0.5);
    if x < half {
        if x == x.floor() {
            return T::nan();
        }
        let pi = T::PI();
        return pi / ((pi * x).sin() * gamma(T::one() - x));
    }
    // integer arguments are exact products up to 171
    if x == x.floor() && x <= T::lit(30.0) {
        let n = x.to_usize().unwrap_or(1);
        let mut p = T::one();
        for i in 2..n {
            p = p * T::from_usize_lossy(i);
        }
        return p;
    }
    let z = x - T::one();
    let t = z + T::lit(LANCZOS_G) + half;
    let sqrt_two_pi = (T::lit(2.0) * T::PI()).sqrt();
    sqrt_two_pi * t.powf(z + half) * (-t).exp() * lanczos_sum(z)
}

/// Natural log of |Γ(x)|.
pub fn ln_gamma<T: Scalar>(x: T) -> T {
    let half = T::lit(0.5);
    if x < half {
        let pi = T::PI();
        return (pi / (pi * x).sin().abs()).ln() - ln_gamma(T::one() - x);
    }
    let z = x - T::one();
    let t = z + T::lit(LANCZOS_G) + half;
    half * (T::lit(2.0) * T::PI()).ln() + (z + half) * t.ln() - t + lanczos_sum(z).ln()
}

/// Surface area of the unit sphere S^{d-1} in R^d.
pub fn sphere_area<T: Scalar>(d: usize) -> T {
    let half_d = T::from_usize_lossy(d) * T::lit(0.5);
    T::lit(2.0) * T::PI().powf(half_d) / gamma(half_d)
}

/// Bessel function J0 via the trapezoid rule on its periodic integral
/// representation, which converges geometrically once the node count
/// exceeds |z|.
pub fn bessel_j0<T: Scalar>(z: T) -> T {
    let az = z.abs().to_f64_lossy();
    let nodes = 48 + az.ceil() as usize;
    let h = T::PI() / T::from_usize_lossy(nodes);
    let mut acc = T::zero();
    for i in 0..nodes {
        let theta = (T::from_usize_lossy(i) + T::lit(0.5)) * h;
        acc = acc + (z * theta.sin()).cos();
    }
    acc / T::from_usize_lossy(nodes)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rel(a: f64, b: f64) -> f64 {
        ((a - b) / b).abs()
    }

    #[test]
    fn gamma_factorials() {
        let mut fact = 1.0f64;
        for n in 1..30usize {
            // Γ(n+1) = n!
            fact *= n as f64;
            assert!(rel(gamma(n as f64 + 1.0), fact) < 1e-13, "n = {n}");
        }
    }

    #[test]
    fn gamma_half_integers() {
        // Γ(m + 1/2) = (2m)! / (4^m m!) √π
        let sqrt_pi = std::f64::consts::PI.sqrt();
        let mut expected = sqrt_pi;
        for m in 0..28usize {
            let x = m as f64 + 0.5;
            assert!(rel(gamma(x), expected) < 1e-13, "x = {x}: {} vs {}", gamma(x), expected);
            expected *= x;
        }
    }

    #[test]
    fn gamma_reflection_and_poles() {
        let pi = std::f64::consts::PI;
        assert!(rel(gamma(-0.5f64), -2.0 * pi.sqrt()) < 1e-13);
        assert!(gamma(0.0f64).is_nan());
        assert!(gamma(-3.0f64).is_nan());
    }

    #[test]
    fn gamma_non_lattice_values() {
        // Γ(1/3), Γ(2.7), Γ(17.25) from high-precision tables
        assert!(rel(gamma(1.0f64 / 3.0), 2.678_938_534_707_747_6) < 1e-13);
        assert!(rel(gamma(2.7f64), 1.544_685_845_850_593_8) < 1e-13);
        assert!(rel(gamma(17.25f64), 4.224_986_665_692_703_6e13) < 1e-12);
    }

    #[test]
    fn ln_gamma_matches_gamma() {
        for &x in &[0.1f64, 0.5, 1.5, 3.3, 10.0, 25.5] {
            assert!((ln_gamma(x) - gamma(x).abs().ln()).abs() < 1e-12);
        }
    }

    #[test]
    fn sphere_areas() {
        let pi = std::f64::consts::PI;
        assert!(rel(sphere_area::<f64>(2), 2.0 * pi) < 1e-14);
        assert!(rel(sphere_area::<f64>(3), 4.0 * pi) < 1e-14);
        assert!(rel(sphere_area::<f64>(4), 2.0 * pi * pi) < 1e-14);
    }

    #[test]
    fn j0_values() {
        assert!((bessel_j0(0.0f64) - 1.0).abs() < 1e-15);
        assert!((bessel_j0(1.0f64) - 0.765_197_686_557_966_6).abs() < 1e-14);
        assert!((bessel_j0(2.404_825_557_695_773f64)).abs() < 1e-14);
        assert!((bessel_j0(30.0f64) - (-0.086_367_983_581_040_21)).abs() < 1e-13);
    }

    #[test]
    fn f32_gamma_smoke() {
        assert!((gamma(5.0f32) - 24.0).abs() < 1e-4);
    }
}
