use serde::Serialize;

use super::algebra::QuotientAlgebra;
use super::ideal::vanishing_subspace;
use super::reducer::Reducer;
use super::spectrum::spectral_split;
use super::subspace::Subspace;
use super::transversal::Transversal;
use crate::config::WeightedConfig;
use crate::error::{Error, Result};
use crate::tolerances::Tolerances;

/// Recovered spectrum points may differ from the declared ones by this
/// much (relative to `max(1, |y|)`).
pub const SPECTRUM_MATCH: f64 = 1e-7;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Condition {
    /// `codim L` differs from the total weight.
    Codimension,
    /// `F ∩ m_Y ⊄ L`.
    Containment,
    /// `A(Y, F·L) ⊄ L`.
    Closure,
    /// The quotient's weighted spectrum differs from `Y`.
    Spectrum,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(tag = "status")]
pub enum Verdict {
    Certified,
    Rejected {
        condition: Condition,
        detail: String,
    },
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct OracleReport {
    pub verdict: Verdict,
    /// Largest principal angle of `F ∩ m_Y` away from `L`.
    pub containment_angle: f64,
    /// Largest relative `‖(I - P_L) A(Y, p·ℓ)‖`.
    pub closure_residual: f64,
    /// Monomial `p` and frame column `ℓ` attaining the closure residual.
    pub worst_pair: Option<(String, usize)>,
    /// Distance between the recovered and the declared spectrum.
    pub spectrum_distance: Option<f64>,
}

impl OracleReport {
    pub fn is_certified(&self) -> bool {
        self.verdict == Verdict::Certified
    }

    pub fn reason(&self) -> String {
        match &self.verdict {
            Verdict::Certified => "certified".into(),
            Verdict::Rejected { condition, detail } => format!("{condition:?}: {detail}"),
        }
    }

    fn reject(&mut self, condition: Condition, detail: String) {
        if self.verdict == Verdict::Certified {
            self.verdict = Verdict::Rejected { condition, detail };
        }
    }
}

/// Decides whether `(Y, L)` represents the ideal `m_Y + L`:
/// (a) `F ∩ m_Y ⊆ L`, (b) `A(Y, p·ℓ) ∈ L` for every monomial `p` of `F`
/// and frame vector `ℓ` of `L`, and (c) the quotient `F / L` has weighted
/// spectrum `Y`.
pub fn membership_oracle(
    f: &Transversal,
    y: &WeightedConfig,
    l: &Subspace,
    tol: &Tolerances,
) -> Result<OracleReport> {
    if l.ambient() != f {
        return Err(Error::InvalidInput(
            "subspace lives in a different transversal".into(),
        ));
    }
    let mut report = OracleReport {
        verdict: Verdict::Certified,
        containment_angle: f64::NAN,
        closure_residual: f64::NAN,
        worst_pair: None,
        spectrum_distance: None,
    };
    let d = y.total_weight() as usize;
    if l.codim() != d {
        report.reject(
            Condition::Codimension,
            format!("codim L = {}, total weight {d}", l.codim()),
        );
        return Ok(report);
    }

    let k = vanishing_subspace(f, y, tol)?;
    report.containment_angle = k.containment_angle_in(l);
    if !(report.containment_angle < tol.angle) {
        report.reject(
            Condition::Containment,
            format!("F ∩ m_Y leaves L at angle {:.3e}", report.containment_angle),
        );
    }

    let reducer = Reducer::new(f, y, tol)?;
    let table = reducer.product_table();
    let frame = l.frame();
    let mut worst = 0.0f64;
    for col in 0..l.dim() {
        let ell: Vec<f64> = frame.column(col).iter().copied().collect();
        for beta in f.basis() {
            let a = nalgebra::DVector::from_vec(table.reduce_monomial_times(beta, &ell));
            let outside = &a - frame * (frame.transpose() * &a);
            let resid = outside.norm() / a.norm().max(1.0);
            if resid > worst || report.worst_pair.is_none() {
                worst = worst.max(resid);
                report.worst_pair = Some((beta.to_string(), col));
            }
        }
    }
    report.closure_residual = worst;
    if !(worst < tol.membership) {
        let (p, c) = report.worst_pair.clone().unwrap_or_default();
        report.reject(
            Condition::Closure,
            format!("A(Y, x^{p}·ℓ_{c}) leaves L by {worst:.3e}"),
        );
    }
    if !report.is_certified() {
        return Ok(report);
    }

    match QuotientAlgebra::from_parts(y.clone(), l.clone(), &reducer, &table)
        .and_then(|q| spectral_split(&q, tol))
    {
        Ok(split) => match split.config.distance_to(y) {
            Some(dist) => {
                report.spectrum_distance = Some(dist);
                let scale = y
                    .clusters()
                    .iter()
                    .flat_map(|(p, _)| p.iter())
                    .fold(1.0f64, |s, c| s.max(c.abs()));
                if !(dist <= SPECTRUM_MATCH * scale) {
                    report.reject(
                        Condition::Spectrum,
                        format!("recovered spectrum {} is {dist:.3e} away", split.config),
                    );
                }
            }
            None => report.reject(
                Condition::Spectrum,
                format!("recovered spectrum {} has different weights", split.config),
            ),
        },
        Err(e @ (Error::ComplexSpectrum { .. } | Error::ClusterAmbiguity(_))) => {
            report.reject(Condition::Spectrum, e.to_string());
        }
        Err(e) => return Err(e),
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::idealspace::{curvilinear_ideal, monomial_transversal};
    use crate::linalg::Matrix;

    fn line(f: &Transversal, coords: &[f64]) -> Subspace {
        Subspace::from_spanning(
            f.clone(),
            &Matrix::from_column_slice(f.dim(), 1, coords),
            1e-12,
        )
        .unwrap()
    }

    #[test]
    fn double_point_examples() {
        let tol = Tolerances::default();
        let f = monomial_transversal(1, 3).unwrap();
        let y = WeightedConfig::new(vec![(vec![0.0], 2)]).unwrap();
        let ok = membership_oracle(&f, &y, &line(&f, &[0.0, 0.0, 1.0]), &tol).unwrap();
        assert!(ok.is_certified(), "{ok:?}");
        let bad = membership_oracle(&f, &y, &line(&f, &[0.0, 1.0, 1.0]), &tol).unwrap();
        assert!(matches!(
            bad.verdict,
            Verdict::Rejected {
                condition: Condition::Containment,
                ..
            }
        ));
    }

    #[test]
    fn curvilinear_is_certified() {
        let tol = Tolerances::default();
        let f = monomial_transversal(2, 3).unwrap();
        let p = curvilinear_ideal(&f, &[0.0, 0.0], &[vec![1.0, 0.0]], 2, &tol).unwrap();
        let report = membership_oracle(&f, p.config(), p.subspace(), &tol).unwrap();
        assert!(report.is_certified(), "{report:?}");
    }

    #[test]
    fn wrong_weights_rejected_by_spectrum() {
        // m_0² has codimension 3; declaring it as {0², (1,1)¹} passes (a)
        // and (b) but not (c).
        let tol = Tolerances::default();
        let f = monomial_transversal(2, 4).unwrap();
        let fat = crate::idealspace::power_of_maximal(&f, &[0.0, 0.0], 2, &tol).unwrap();
        let y = WeightedConfig::new(vec![(vec![0.0, 0.0], 2), (vec![1.0, 1.0], 1)]).unwrap();
        let report = membership_oracle(&f, &y, fat.subspace(), &tol).unwrap();
        assert!(
            matches!(
                report.verdict,
                Verdict::Rejected {
                    condition: Condition::Spectrum,
                    ..
                }
            ),
            "{report:?}"
        );
    }
}
