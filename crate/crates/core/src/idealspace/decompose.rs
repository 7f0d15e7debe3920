use super::algebra::QuotientAlgebra;
use super::ideal::IdealPoint;
use super::spectrum::spectral_split;
use super::subspace::Subspace;
use super::transversal::Transversal;
use crate::config::WeightedConfig;
use crate::error::{Error, Result};
use crate::linalg::Matrix;
use crate::tolerances::Tolerances;

/// Splits a certified ideal point into its primary components
/// `({y_i^{k_i}}, L_i)`, with `L_i` the preimage in `F` of
/// `ker(Q → E_i Q)`.
pub fn primary_decomposition(
    f: &Transversal,
    p: &IdealPoint,
    tol: &Tolerances,
) -> Result<Vec<IdealPoint>> {
    if p.transversal() != f {
        return Err(Error::InvalidInput(
            "ideal point lives in a different transversal".into(),
        ));
    }
    if p.config().len() == 1 {
        return Ok(vec![p.clone()]);
    }
    let q = QuotientAlgebra::new(p, tol)?;
    let split = spectral_split(&q, tol)?;
    let d = q.dim();
    let l = p.subspace().frame();
    let mut out = Vec::with_capacity(split.idempotents.len());
    for ((point, k), e) in split.config.clusters().iter().zip(&split.idempotents) {
        let lifted = q.basis() * (Matrix::identity(d, d) - e);
        let mut columns = Matrix::zeros(f.dim(), l.ncols() + d);
        columns.view_mut((0, 0), (f.dim(), l.ncols())).copy_from(l);
        columns
            .view_mut((0, l.ncols()), (f.dim(), d))
            .copy_from(&lifted);
        let li = Subspace::from_spanning(f.clone(), &columns, 1e-8)?;
        if li.codim() != *k as usize {
            return Err(Error::CodimMismatch {
                expected: *k as usize,
                got: li.codim(),
            });
        }
        let config = WeightedConfig::new(vec![(point.clone(), *k)])?;
        let (component, _) = IdealPoint::certify(config, li, tol)?;
        out.push(component);
    }
    Ok(out)
}
