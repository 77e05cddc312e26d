//! Domain types, exact sharp-constant formulas and the closed-form algebraic
//! identities behind the estimates.

pub mod case;
pub mod constants;
pub mod gaussian;
pub mod grid;
pub mod kernel;
pub mod report;

pub use case::{admissible, weak_exponents, CaseKind, Exponent, StrichartzCase};
pub use constants::{
    beckner_constant, corollary_constant, derived_constant, normalization_residual, reversed_hls_1d, sharp_constant, ReversedHls,
    CorollaryCase, CorollaryKind, COROLLARY_CASES,
};
pub use gaussian::GaussianProfile;
pub use grid::GridFunction;
pub use kernel::{kernel_k, kernel_k_centered};
pub use report::{RatioReport, Verdict};
