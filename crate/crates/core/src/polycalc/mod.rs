//! Polynomial arithmetic, derivative tensors, jets and exact simplex
//! moments. Every other module computes on top of these types.

mod jet;
mod moments;
pub mod multi_index;
mod polynomial;
mod simplex;
mod smooth;
mod symform;

pub use jet::{jet_rows, monomial_taylor_coeff, Jet};
pub use moments::{barycentric_moment, simplex_moment};
pub use multi_index::MultiIndex;
pub use polynomial::MultivariatePolynomial;
pub use simplex::AffineSimplex;
pub use smooth::{derivative_tensor, PartialsOracle, SmoothFunction};
pub use symform::SymmetricForm;

/// `Σ_α c_α x^α`.
pub fn poly_eval(p: &MultivariatePolynomial, x: &[f64]) -> crate::Result<f64> {
    p.eval(x)
}

/// Evaluates a symmetric form on `r` vectors.
pub fn symform_eval(t: &SymmetricForm, vectors: &[&[f64]]) -> crate::Result<f64> {
    t.eval(vectors)
}
