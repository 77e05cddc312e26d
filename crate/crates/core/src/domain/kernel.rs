//! The pairwise-spread kernel K(η) = (1/k) Σ_{i<j} |η_i − η_j|².

use crate::error::{Error, Result};
use crate::scalar::Scalar;

fn check_tuple<T, V: AsRef<[T]>>(eta: &[V]) -> Result<usize> {
    if eta.len() < 2 {
        return Err(Error::Domain(format!("kernel needs k >= 2 points, got {}", eta.len())));
    }
    let n = eta[0].as_ref().len();
    for v in eta {
        if v.as_ref().len() != n {
            return Err(Error::DimensionMismatch { expected: n, found: v.as_ref().len() });
        }
    }
    Ok(n)
}

/// Pairwise-difference form.
pub fn kernel_k<T: Scalar, V: AsRef<[T]>>(eta: &[V]) -> Result<T> {
    check_tuple(eta)?;
    let k = eta.len();
    let mut acc = T::zero();
    for i in 0..k {
        for j in (i + 1)..k {
            acc = eta[i].as_ref().iter().zip(eta[j].as_ref()).fold(acc, |a, (&x, &y)| a + (x - y) * (x - y));
        }
    }
    Ok(acc / T::from_usize_lossy(k))
}

/// Centred form |η|² − |Σ η_i|²/k.
pub fn kernel_k_centered<T: Scalar, V: AsRef<[T]>>(eta: &[V]) -> Result<T> {
    let n = check_tuple(eta)?;
    Ok(kernel_flat(&eta.iter().flat_map(|v| v.as_ref().iter().copied()).collect::<Vec<_>>(), n))
}

/// Centred form on a flat buffer of k consecutive n-vectors, computed as
/// the squared distance to the mean (never negative).
pub(crate) fn kernel_flat<T: Scalar>(eta: &[T], n: usize) -> T {
    let k = eta.len() / n;
    let kf = T::from_usize_lossy(k);
    let mut acc = T::zero();
    for axis in 0..n {
        let mean = (0..k).fold(T::zero(), |s, i| s + eta[i * n + axis]) / kf;
        acc = (0..k).fold(acc, |s, i| {
            let d = eta[i * n + axis] - mean;
            s + d * d
        });
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn examples() {
        let same = vec![vec![1.0f64, 1.0, 1.0]; 3];
        assert_eq!(kernel_k(&same).unwrap(), 0.0);
        assert_eq!(kernel_k(&[[1.0f64], [-1.0]]).unwrap(), 2.0);
        assert_eq!(kernel_k_centered(&[[1.0f64], [-1.0]]).unwrap(), 2.0);
        assert_eq!(kernel_k_centered(&[[0.3f64, 2.0], [0.3, 2.0]]).unwrap(), 0.0);
    }

    #[test]
    fn rejects_bad_tuples() {
        assert!(kernel_k(&[vec![1.0f64, 2.0], vec![1.0]]).is_err());
        assert!(kernel_k(&[vec![1.0f64]]).is_err());
        assert!(kernel_k_centered(&[vec![1.0f64], vec![1.0, 2.0]]).is_err());
    }

    #[test]
    fn raw_centered_formula_agrees() {
        // the literal |η|² − |Ση|²/k expression, kept separate from kernel_flat
        let eta = [[0.5f64, -1.25], [2.0, 0.75], [-0.3, 0.1], [1.1, -2.2]];
        let sq: f64 = eta.iter().flatten().map(|v| v * v).sum();
        let s0: f64 = eta.iter().map(|v| v[0]).sum();
        let s1: f64 = eta.iter().map(|v| v[1]).sum();
        let raw = sq - (s0 * s0 + s1 * s1) / 4.0;
        assert!((kernel_k(&eta).unwrap() - raw).abs() < 1e-12);
    }

    fn tuples() -> impl Strategy<Value = (usize, Vec<Vec<f64>>)> {
        (1usize..4, 2usize..7).prop_flat_map(|(n, k)| {
            (Just(n), prop::collection::vec(prop::collection::vec(-5.0f64..5.0, n), k))
        })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(1000))]

        #[test]
        fn pairwise_equals_centered((_n, eta) in tuples()) {
            let a = kernel_k(&eta).unwrap();
            let b = kernel_k_centered(&eta).unwrap();
            prop_assert!((a - b).abs() < 1e-12);
            prop_assert!(a >= 0.0);
        }

        #[test]
        fn translation_invariant((n, eta) in tuples(), shift in prop::collection::vec(-3.0f64..3.0, 3)) {
            let moved: Vec<Vec<f64>> = eta.iter().map(|v| v.iter().zip(&shift[..n]).map(|(a, b)| a + b).collect()).collect();
            prop_assert!((kernel_k(&eta).unwrap() - kernel_k(&moved).unwrap()).abs() < 1e-12);
        }

        #[test]
        fn quadratic_scaling((_n, eta) in tuples(), lambda in 0.1f64..3.0) {
            let scaled: Vec<Vec<f64>> = eta.iter().map(|v| v.iter().map(|a| a * lambda).collect()).collect();
            let base = kernel_k(&eta).unwrap();
            let s = kernel_k(&scaled).unwrap();
            prop_assert!((s - lambda * lambda * base).abs() <= 1e-12 * (1.0 + s.abs()));
        }
    }
}
