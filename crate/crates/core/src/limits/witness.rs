use serde::Serialize;

use super::curve::ConfigCurve;
use crate::error::{Error, Result};
use crate::idealspace::Transversal;
use crate::kergin::{default_complement, InterpolationOperator};
use crate::polycalc::MultivariatePolynomial;
use crate::tolerances::Tolerances;

#[derive(Clone, Debug, Serialize)]
pub struct WitnessStep {
    pub t: f64,
    /// `f_t = f - A(Y(t), f)`.
    pub f_t: MultivariatePolynomial,
    /// Coefficient norm of `f_t - f`.
    pub distance: f64,
    /// Largest `|f_t(x)|` over the points of `Y(t)`.
    pub vanishing_residual: f64,
}

/// `f_t = f - A(Y(t), f)` along the schedule, for `f ∈ F ∩ m_{Y(0)}`. The
/// points of `Y(t)` are grouped into Kergin tuples by their limit cluster
/// and `D` is fixed at the limit.
pub fn approximation_witness(
    f_space: &Transversal,
    curve: &ConfigCurve,
    f: &MultivariatePolynomial,
    schedule: &[f64],
    tol: &Tolerances,
) -> Result<Vec<WitnessStep>> {
    let coords = f_space.coords(f)?;
    let (y0, assignment) = curve.limit_assignment()?;
    let jets = f_space.jet_matrix(&y0)?;
    let jet_values = &jets * nalgebra::DVector::from_vec(coords);
    let scale = f.max_abs_coeff().max(1.0);
    if jet_values.amax() > 1e-10 * scale {
        return Err(Error::InvalidInput(format!(
            "f does not vanish to the limit orders at {y0} (jet residual {:.3e})",
            jet_values.amax()
        )));
    }
    let d_monomials = default_complement(&y0.coalesced_tuples(), f_space.basis(), tol)?;
    let d_basis: Vec<MultivariatePolynomial> = d_monomials
        .into_iter()
        .map(|a| MultivariatePolynomial::monomial(a, 1.0))
        .collect();
    let mut steps = Vec::with_capacity(schedule.len());
    for &t in schedule {
        let points = curve.distinct_at(t)?;
        let mut tuples = vec![Vec::new(); y0.len()];
        for (p, &c) in points.iter().zip(&assignment) {
            tuples[c].push(p.clone());
        }
        let op = InterpolationOperator::from_tuples(tuples, d_basis.clone(), tol)?;
        let a = op.interpolate(f)?;
        let f_t = f - &a;
        let vanishing_residual = points
            .iter()
            .map(|p| f_t.eval(p).map(f64::abs))
            .collect::<Result<Vec<_>>>()?
            .into_iter()
            .fold(0.0, f64::max);
        steps.push(WitnessStep {
            t,
            distance: a.coeff_norm(),
            f_t,
            vanishing_residual,
        });
    }
    Ok(steps)
}
