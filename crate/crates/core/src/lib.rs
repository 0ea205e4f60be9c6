// Validation guards are written as negated comparisons (`!(x > 0.0)`) on
// purpose: they must also trip on NaN, which the un-negated forms let through.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

//! Spectral solver for the Lévy-Feller advection-dispersion equation on a
//! bounded interval,
//!
//!   ∂u/∂t = d · D^α_θ u − e · ∂u/∂x + s(x,t),   x ∈ (0, L),  1 < α ≤ 2,
//!
//! with homogeneous Dirichlet boundaries and the Riesz-Feller fractional
//! derivative D^α_θ of order α and skewness θ. Space is discretized by
//! Jacobi spectral collocation at Gauss-Lobatto points, using closed-form
//! Riesz-Feller derivatives of the shifted Jacobi basis; time by the
//! trapezoidal rule. The [`benchmarks`] module carries manufactured problems,
//! error metrics and convergence studies used for verification.

pub mod benchmarks;
pub mod error;
pub mod jacobi;
pub mod riesz;
pub mod solver;
pub mod special;

pub use error::{Error, Result};
pub use jacobi::{ExpansionCoeffs, GaussJacobiRule, JacobiParams};
pub use riesz::{FracDerivCoeffs, RieszFellerParams, Side};
pub use solver::{CollocationSystem, ProblemSpec, SpectralSolution};
