//! Property tests over the public API.

use num_complex::Complex;
use proptest::prelude::*;
use strichartz_core::domain::{GaussianProfile, GridFunction};
use strichartz_core::gridio::{read_grid, write_grid};
use strichartz_core::norms::{strichartz_norm_gaussian, TimeQuadratureSpec};
use strichartz_core::propagator::{evolve_gaussian, evolve_grid, fourier_forward, fourier_inverse};
use strichartz_core::search::{ratio_objective, FunctionalId, SearchSpec};
use strichartz_core::trial::TrialFunction;
use strichartz_core::{kernel_k, kernel_k_centered, sharp_constant, Exponent};

fn c(re: f64, im: f64) -> Complex<f64> {
    Complex::new(re, im)
}

fn gaussian_1d() -> impl Strategy<Value = GaussianProfile<f64>> {
    (-2.0..-0.2f64, -1.0..1.0f64, -1.0..1.0f64, -1.0..1.0f64).prop_map(|(ar, ai, br, bi)| {
        GaussianProfile::new(1, c(ar, ai), vec![c(br, bi)], c(0.0, 0.0)).unwrap()
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn gaussian_evolution_is_a_group(g in gaussian_1d(), s in -2.0..2.0f64, t in -2.0..2.0f64, x in -3.0..3.0f64) {
        let two_steps = evolve_gaussian(&evolve_gaussian(&g, s).profile(), t).eval(&[x]);
        let one_step = evolve_gaussian(&g, s + t).eval(&[x]);
        prop_assert!((two_steps - one_step).norm() <= 1e-10 * (1.0 + one_step.norm()));
    }

    #[test]
    fn gaussian_evolution_preserves_mass(g in gaussian_1d(), t in -5.0..5.0f64) {
        let m0 = g.l2_norm();
        let mt = evolve_gaussian(&g, t).profile().l2_norm();
        prop_assert!((mt / m0 - 1.0).abs() < 1e-12);
    }

    #[test]
    fn fft_is_unitary(g in gaussian_1d(), t in -0.5..0.5f64) {
        let f = GridFunction::from_gaussian(&g, 14.0, 256).unwrap();
        let fh = fourier_forward(&f);
        prop_assert!((fh.l2_norm() / f.l2_norm() - 1.0).abs() < 1e-12);
        let back = fourier_inverse(&fh);
        prop_assert!(back.max_abs_diff(&f).unwrap() < 1e-12 * f.max_abs());
        let u = evolve_grid(&f, t).field;
        prop_assert!((u.l2_norm() / f.l2_norm() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn kernel_forms_agree(v in prop::collection::vec(-10.0..10.0f64, 2..24), n in 1usize..4) {
        let k = v.len() / n;
        prop_assume!(k >= 2);
        let eta: Vec<&[f64]> = v[..k * n].chunks(n).collect();
        let a: f64 = kernel_k(&eta).unwrap();
        let b: f64 = kernel_k_centered(&eta).unwrap();
        prop_assert!((a - b).abs() <= 1e-12 * (1.0 + a.abs()));
        prop_assert!(b >= 0.0);
    }

    #[test]
    fn trial_functions_are_normalized(coeffs in prop::collection::vec((-1.0..1.0f64, -1.0..1.0f64), 1..7), g in gaussian_1d()) {
        let coeffs: Vec<_> = coeffs.into_iter().map(|(a, b)| c(a, b)).collect();
        let t = TrialFunction::new(g, coeffs).unwrap();
        // ‖f̂‖₂² by quadrature on a wide grid
        let (mu, kappa) = t.hermite_variable();
        let h = kappa / 40.0;
        let mass: f64 = (-800..=800).map(|j| t.eval_frequency(&[mu + j as f64 * h]).norm_sqr()).sum::<f64>() * h;
        prop_assert!((mass - 1.0).abs() < 1e-9, "{mass}");
    }

    #[test]
    fn ratio_never_exceeds_one(coeffs in prop::collection::vec((-0.6..0.6f64, -0.6..0.6f64), 1..5)) {
        let id = FunctionalId::parse("n1_k3").unwrap();
        let coeffs: Vec<_> = coeffs.into_iter().map(|(a, b)| c(a, b)).collect();
        let t = TrialFunction::new(GaussianProfile::standard(1), coeffs).unwrap();
        let r = ratio_objective(&t, &id, &SearchSpec::default()).unwrap();
        prop_assert!(r <= 1.0 + 1e-9, "{r}");
    }

    #[test]
    fn grid_files_round_trip(n in 1usize..3, half in 0.5..20.0f64, seed in any::<u64>()) {
        let points = 8;
        let mut state = seed;
        let g = GridFunction::from_fn(n, half, points, |_| {
            state = state.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            c(f64::from_bits(state >> 2) , (state as f64).sin())
        }).unwrap();
        let mut buf = Vec::new();
        write_grid(&g, &mut buf).unwrap();
        let back: GridFunction<f64> = read_grid(&buf[..]).unwrap();
        prop_assert_eq!(buf.len(), 32 + 16 * points.pow(n as u32));
        for (a, b) in g.samples().iter().zip(back.samples()) {
            prop_assert_eq!(a.re.to_bits(), b.re.to_bits());
            prop_assert_eq!(a.im.to_bits(), b.im.to_bits());
        }
    }
}

#[test]
fn strichartz_ratio_is_invariant_on_the_gaussian_family() {
    let c13: f64 = sharp_constant(1, 3).unwrap();
    for (a, b) in [(c(-0.5, 0.0), c(0.0, 0.0)), (c(-3.0, 1.0), c(0.5, -2.0)), (c(-0.1, -0.4), c(-1.0, 0.3))] {
        let g = GaussianProfile::new(1, a, vec![b], c(0.2, 0.1)).unwrap();
        let u = strichartz_norm_gaussian(&g.inverse_fourier_transform(), Exponent::int(6), Exponent::int(6), &TimeQuadratureSpec::gaussian()).unwrap();
        let ratio = u.value.powi(6) / (c13 * g.l2_norm().powi(6));
        assert!((ratio - 1.0).abs() < 1e-8, "{ratio}");
    }
}

#[test]
fn f32_instantiation_runs() {
    let g = GaussianProfile::<f32>::standard(1);
    let u = evolve_gaussian(&g, 0.5f32).eval(&[0.3f32]);
    let want = evolve_gaussian(&GaussianProfile::<f64>::standard(1), 0.5).eval(&[0.3]);
    assert!((u.re as f64 - want.re).abs() < 1e-5 && (u.im as f64 - want.im).abs() < 1e-5);
}
