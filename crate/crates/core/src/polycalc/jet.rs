use super::multi_index::{below_degree, count_below_degree, MultiIndex};
use super::smooth::SmoothFunction;
use crate::error::Result;

/// A `(k-1)`-jet at a base point, stored as Taylor coefficients
/// `∂^α f(y) / α!` for `|α| < k` in graded-lex order.
#[derive(Clone, Debug, PartialEq)]
pub struct Jet {
    base: Vec<f64>,
    order: u32,
    coeffs: Vec<f64>,
}

impl Jet {
    /// `j^{order}_y f`.
    pub fn of(f: &dyn SmoothFunction, y: &[f64], order: u32) -> Result<Self> {
        let mut coeffs = Vec::with_capacity(count_below_degree(y.len(), order + 1));
        for n in 0..=order {
            let t = f.derivative_tensor(y, n as usize)?;
            let alphas = super::multi_index::of_degree(y.len(), n);
            coeffs.extend(
                alphas
                    .iter()
                    .zip(t.coeffs())
                    .map(|(a, c)| c / a.factorial()),
            );
        }
        Ok(Jet {
            base: y.to_vec(),
            order,
            coeffs,
        })
    }

    pub fn base(&self) -> &[f64] {
        &self.base
    }

    pub fn order(&self) -> u32 {
        self.order
    }

    pub fn coeffs(&self) -> &[f64] {
        &self.coeffs
    }

    pub fn max_abs(&self) -> f64 {
        self.coeffs.iter().fold(0.0, |m, c| m.max(c.abs()))
    }
}

/// Taylor coefficient `∂^α(x^β)(y) / α! = binom(β, α) · y^{β-α}`.
pub fn monomial_taylor_coeff(beta: &MultiIndex, alpha: &MultiIndex, y: &[f64]) -> f64 {
    match beta.checked_sub(alpha) {
        None => 0.0,
        Some(rest) => {
            let binom: f64 = beta
                .entries()
                .iter()
                .zip(alpha.entries())
                .map(|(&b, &a)| {
                    (0..a).fold(1.0, |acc, i| acc * f64::from(b - i) / f64::from(i + 1))
                })
                .product();
            binom * rest.eval_monomial(y)
        }
    }
}

/// Rows of the Taylor-scaled jet functionals at `y` up to order `k - 1`,
/// applied to the monomials of `basis`: entry `(α, β)` is
/// `∂^α(x^β)(y) / α!`.
pub fn jet_rows(basis: &[MultiIndex], y: &[f64], k: u32) -> Vec<Vec<f64>> {
    below_degree(y.len(), k)
        .iter()
        .map(|alpha| {
            basis
                .iter()
                .map(|beta| monomial_taylor_coeff(beta, alpha, y))
                .collect()
        })
        .collect()
}
