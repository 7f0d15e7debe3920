//! Interpolation from simplex integrals.
//!
//! `ℐ(f, σ)` integrates the `r`-th derivative of `f` over an affine
//! simplex `σ = [x_0, …, x_r]` (normalized to volume one). Collecting these
//! forms along prefixes of an ordered cluster of points gives the fiber map
//! `G`; inverting it on a complement `D` yields the interpolation operator
//! `A(Y, ·)` with `f ≡ A(Y, f)` modulo the functions whose jets vanish at
//! `Y`. With `D` the polynomials of degree `< k` and one cluster of `k`
//! points this is Kergin interpolation.

mod forms;
mod operator;
mod precise;
mod quadrature;

pub use forms::{
    boundary_identity_residual, g_map, multiplicities, newton_expansion, simplex_form,
    simplex_form_estimated, vanishing_certificate, VanishingCertificate, QUADRATURE_TOLERANCE,
};
pub use operator::{
    default_complement, fiber_dimension, fiber_matrix, fiber_vector, InterpolationOperator,
};
pub use quadrature::grundmann_moller;

use crate::config::WeightedConfig;
use crate::error::Result;
use crate::polycalc::{MultivariatePolynomial, SmoothFunction};
use crate::tolerances::Tolerances;

/// Builds `A(Y, ·)` on the complement `D` at the coalesced cluster tuples of `Y`.
pub fn build_interpolator(
    config: &WeightedConfig,
    basis: Vec<MultivariatePolynomial>,
    tol: &Tolerances,
) -> Result<InterpolationOperator> {
    InterpolationOperator::build(config, basis, tol)
}

/// `A(Y, f)`.
pub fn interpolate(
    op: &InterpolationOperator,
    f: &dyn SmoothFunction,
) -> Result<MultivariatePolynomial> {
    op.interpolate(f)
}
