use serde::Serialize;

use super::curve::ConfigCurve;
use super::exact::kernel_projector;
use crate::error::{Error, Result};
use crate::idealspace::{
    local_types, membership_oracle, subspace_distance, IdealPoint, LocalType, QuotientAlgebra,
    Subspace, Transversal,
};
use crate::linalg::Matrix;
use crate::tolerances::Tolerances;

/// `t_k = 0.1 · 2^{-k}`, `k = 0..8`.
pub fn default_schedule() -> Vec<f64> {
    (0..=8).map(|k| 0.1 * 0.5f64.powi(k)).collect()
}

pub const DEFAULT_ORDER: usize = 3;

/// Successive extrapolants may differ by at most this much.
pub const CAUCHY_TOLERANCE: f64 = 1e-6;

/// Orthogonal projector onto `F ∩ m_{Y(t)}`.
pub fn projector_at(f: &Transversal, curve: &ConfigCurve, t: f64) -> Result<Matrix> {
    if curve.m != f.m() {
        return Err(Error::DimensionMismatch {
            expected: f.m(),
            got: curve.m,
        });
    }
    if !(t > 0.0 && t <= curve.t_max) {
        return Err(Error::InvalidInput(format!(
            "t = {t} lies outside (0, {}]",
            curve.t_max
        )));
    }
    let points = curve.distinct_at(t)?;
    kernel_projector(f, &points)
}

/// Frame of the eigenvalue-one part of a (nearly) orthogonal projector.
fn frame_of_projector(f: &Transversal, p: &Matrix, expected_dim: usize) -> Result<(Subspace, f64)> {
    let sym = (p + p.transpose()) * 0.5;
    let eig = sym.symmetric_eigen();
    let mut keep: Vec<usize> = (0..eig.eigenvalues.len())
        .filter(|&i| eig.eigenvalues[i] > 0.5)
        .collect();
    keep.sort_by(|&a, &b| eig.eigenvalues[b].total_cmp(&eig.eigenvalues[a]));
    let defect = eig
        .eigenvalues
        .iter()
        .fold(0.0f64, |m, &l| m.max(l.abs().min((l - 1.0).abs())));
    if keep.len() != expected_dim {
        return Err(Error::ExtrapolationDivergence(format!(
            "limit projector has rank {}, expected {expected_dim}",
            keep.len()
        )));
    }
    let frame = Matrix::from_fn(p.nrows(), keep.len(), |i, j| eig.eigenvectors[(i, keep[j])]);
    Ok((Subspace::new(f.clone(), frame)?, defect))
}

/// `F ∩ m_{Y(t)}` for `t` in the validity interval.
pub fn subspace_at(f: &Transversal, curve: &ConfigCurve, t: f64) -> Result<Subspace> {
    let p = projector_at(f, curve, t)?;
    let dim = f
        .dim()
        .checked_sub(curve.len())
        .ok_or(Error::TransversalityFail {
            witness: format!("{} points in a space of dimension {}", curve.len(), f.dim()),
            sigma_min: 0.0,
        })?;
    Ok(frame_of_projector(f, &p, dim)?.0)
}

#[derive(Clone, Debug, Serialize)]
pub struct LimitReport {
    pub limit: IdealPoint,
    /// `(t, subspace distance from L(t) to the limit)`.
    pub samples: Vec<(f64, f64)>,
    pub order: usize,
    pub certified: bool,
    pub diagnostics: String,
    /// Largest entry of the difference between the last two extrapolants.
    pub cauchy_increment: f64,
    /// Distance of the extrapolated projector from an exact projector.
    pub projector_defect: f64,
    pub local_types: Vec<LocalType>,
}

impl LimitReport {
    /// `t,distance` rows with 17 significant digits.
    pub fn samples_csv(&self) -> String {
        let mut out = String::from("t,distance\n");
        for (t, dist) in &self.samples {
            out.push_str(&format!("{t:.16e},{dist:.16e}\n"));
        }
        out
    }
}

/// Neville extrapolation to `t = 0` of matrices sampled at `ts`.
fn extrapolate(ts: &[f64], values: &[Matrix]) -> Matrix {
    let mut out = Matrix::zeros(values[0].nrows(), values[0].ncols());
    for (i, v) in values.iter().enumerate() {
        let weight: f64 = ts
            .iter()
            .enumerate()
            .filter(|&(j, _)| j != i)
            .map(|(_, &tj)| tj / (tj - ts[i]))
            .product();
        out += v * weight;
    }
    out
}

/// Limit of `(Y(t), F ∩ m_{Y(t)})` as `t → 0`: Richardson extrapolation of
/// the projectors, then certification by the membership oracle.
pub fn limit_ideal(
    f: &Transversal,
    curve: &ConfigCurve,
    schedule: &[f64],
    order: usize,
    tol: &Tolerances,
) -> Result<LimitReport> {
    if schedule.len() < 3 {
        return Err(Error::InvalidInput(
            "the schedule needs at least 3 samples".into(),
        ));
    }
    if schedule.windows(2).any(|w| !(w[1] < w[0])) {
        return Err(Error::InvalidInput(
            "the schedule must be strictly decreasing".into(),
        ));
    }
    if order == 0 || order >= schedule.len() {
        return Err(Error::InvalidInput(format!(
            "extrapolation order must lie in 1..{}",
            schedule.len()
        )));
    }
    let projectors = schedule
        .iter()
        .map(|&t| projector_at(f, curve, t))
        .collect::<Result<Vec<_>>>()?;
    let window = order + 1;
    let estimates: Vec<Matrix> = (window..=schedule.len())
        .map(|end| extrapolate(&schedule[end - window..end], &projectors[end - window..end]))
        .collect();
    let limit_projector = estimates.last().expect("non-empty").clone();
    let cauchy_increment = if estimates.len() >= 2 {
        (&estimates[estimates.len() - 1] - &estimates[estimates.len() - 2]).amax()
    } else {
        (&limit_projector - projectors.last().expect("non-empty")).amax()
    };
    if !(cauchy_increment <= CAUCHY_TOLERANCE) {
        return Err(Error::ExtrapolationDivergence(format!(
            "last extrapolants differ by {cauchy_increment:.3e}"
        )));
    }
    let y0 = curve.limit_config()?;
    let dim = f
        .dim()
        .checked_sub(curve.len())
        .ok_or(Error::TransversalityFail {
            witness: format!("{} points in a space of dimension {}", curve.len(), f.dim()),
            sigma_min: 0.0,
        })?;
    let (l0, projector_defect) = frame_of_projector(f, &limit_projector, dim)?;
    if projector_defect > 1e-6 {
        return Err(Error::ExtrapolationDivergence(format!(
            "extrapolated projector is {projector_defect:.3e} away from idempotent"
        )));
    }

    let samples = schedule
        .iter()
        .zip(&projectors)
        .map(|(&t, p)| {
            Ok((
                t,
                subspace_distance(&frame_of_projector(f, p, dim)?.0, &l0)?,
            ))
        })
        .collect::<Result<Vec<_>>>()?;

    let report = membership_oracle(f, &y0, &l0, tol)?;
    let mut certified = report.is_certified();
    let mut diagnostics = report.reason();
    let monotone = samples.windows(2).all(|w| w[1].1 <= w[0].1 + 1e-12);
    if certified && !monotone {
        certified = false;
        diagnostics = "sampled distances do not decrease along the schedule".into();
    }
    let mut limit = IdealPoint::uncertified(y0.clone(), l0.clone())?;
    let mut types = Vec::new();
    if certified {
        limit = IdealPoint::certify(y0, l0, tol)?.0;
        let q = QuotientAlgebra::new(&limit, tol)?;
        types = local_types(&q, tol)?;
    }
    Ok(LimitReport {
        limit,
        samples,
        order,
        certified,
        diagnostics,
        cauchy_increment,
        projector_defect,
        local_types: types,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::idealspace::monomial_transversal;

    fn two_point_line() -> ConfigCurve {
        ConfigCurve::new(1, vec![vec![vec![0.0, -1.0]], vec![vec![0.0, 1.0]]], 1.0).unwrap()
    }

    #[test]
    fn sample_at_tenth() {
        let f = monomial_transversal(1, 3).unwrap();
        let l = subspace_at(&f, &two_point_line(), 0.1).unwrap();
        let v = l.frame().column(0);
        let ratio = v[0] / v[2];
        assert!((ratio + 0.01).abs() < 1e-15);
        assert!(v[1].abs() < 1e-15);
    }

    #[test]
    fn double_point_limit() {
        let tol = Tolerances::default();
        let f = monomial_transversal(1, 3).unwrap();
        let report = limit_ideal(
            &f,
            &two_point_line(),
            &default_schedule(),
            DEFAULT_ORDER,
            &tol,
        )
        .unwrap();
        assert!(report.certified, "{}", report.diagnostics);
        assert_eq!(report.limit.config().clusters(), &[(vec![0.0], 2)]);
        let v = report.limit.subspace().frame().column(0);
        assert!((v[2].abs() - 1.0).abs() < 1e-12);
        assert!(report.samples_csv().lines().count() == 10);
    }
}
