//! Numerical laboratory for sharp Strichartz and Fourier extension
//! inequalities: free Schrödinger evolution, mixed space-time norms,
//! Monte Carlo evaluation of the kernel-weighted product functional,
//! delta-constrained cone weights and a derivative-free maximizer search.
//!
//! Numerics are generic over [`Scalar`] (`f32`/`f64`); the aliases at the
//! bottom of this file pin the `f64` instantiations used by the CLI.

pub mod domain;
pub mod error;
pub mod gridio;
pub mod montecarlo;
pub mod norms;
pub mod propagator;
pub mod quadrature;
pub mod scalar;
pub mod search;
pub mod special;
pub mod surfaces;
pub mod theorem1;
pub mod trial;

pub use error::{Error, Result};
pub use scalar::Scalar;

pub use domain::{
    admissible, beckner_constant, reversed_hls_1d, corollary_constant, derived_constant, kernel_k, kernel_k_centered,
    normalization_residual, sharp_constant, weak_exponents, CaseKind, CorollaryCase, CorollaryKind, Exponent,
    StrichartzCase, Verdict, COROLLARY_CASES,
};
pub use montecarlo::{Estimate, MonteCarloSpec};

pub type Real = f64;
pub type Complex = num_complex::Complex<f64>;
pub type GaussianProfile = domain::GaussianProfile<f64>;
pub type GridFunction = domain::GridFunction<f64>;
pub type RatioReport = domain::RatioReport<f64>;
pub type EvolvedGaussian = propagator::EvolvedGaussian<f64>;
pub type TrialFunction = trial::TrialFunction<f64>;
pub type ProductTransform = theorem1::ProductTransform<f64>;



pub type SurfaceFunction = surfaces::SurfaceFunction<f64>;
