use serde::Serialize;

use super::curve::ConfigCurve;
use super::limit::{default_schedule, limit_ideal, LimitReport, DEFAULT_ORDER};
use crate::error::Result;
use crate::idealspace::{monomial_transversal, Transversal};
use crate::tolerances::Tolerances;

#[derive(Clone, Debug, Serialize)]
pub struct GalleryEntry {
    pub name: &'static str,
    pub description: &'static str,
    pub curve: ConfigCurve,
    pub transversal: Transversal,
    pub report: LimitReport,
}

/// A named collision preset: the curve and the transversal `deg < d + 1`.
pub struct Preset {
    pub name: &'static str,
    pub description: &'static str,
    pub curve: ConfigCurve,
}

impl Preset {
    pub fn transversal(&self) -> Transversal {
        monomial_transversal(self.curve.m, self.curve.len() as u32 + 1).expect("valid preset")
    }
}

fn preset(
    name: &'static str,
    description: &'static str,
    m: usize,
    paths: Vec<Vec<Vec<f64>>>,
) -> Preset {
    Preset {
        name,
        description,
        curve: ConfigCurve::new(m, paths, 1.0).expect("valid preset"),
    }
}

pub fn presets() -> Vec<Preset> {
    vec![
        preset(
            "two-point-line",
            "{-t, t} in one variable",
            1,
            vec![vec![vec![0.0, -1.0]], vec![vec![0.0, 1.0]]],
        ),
        preset(
            "two-point-plane",
            "{(0,0), (t,0)} in the plane",
            2,
            vec![vec![vec![0.0], vec![0.0]], vec![vec![0.0, 1.0], vec![0.0]]],
        ),
        preset(
            "collinear-triple",
            "{(0,0), (t,0), (2t,0)}",
            2,
            vec![
                vec![vec![0.0], vec![0.0]],
                vec![vec![0.0, 1.0], vec![0.0]],
                vec![vec![0.0, 2.0], vec![0.0]],
            ],
        ),
        preset(
            "non-collinear-triple",
            "{(0,0), (t,0), (0,t)}",
            2,
            vec![
                vec![vec![0.0], vec![0.0]],
                vec![vec![0.0, 1.0], vec![0.0]],
                vec![vec![0.0], vec![0.0, 1.0]],
            ],
        ),
        preset(
            "mixed",
            "{(-t,0), (t,0), (1,1)}: one pair merges, one point stays",
            2,
            vec![
                vec![vec![0.0, -1.0], vec![0.0]],
                vec![vec![0.0, 1.0], vec![0.0]],
                vec![vec![1.0], vec![1.0]],
            ],
        ),
        preset(
            "tangential-triple",
            "{(-t,t²), (0,0), (t,t²)}: three points on the parabola y = x²",
            2,
            vec![
                vec![vec![0.0, -1.0], vec![0.0, 0.0, 1.0]],
                vec![vec![0.0], vec![0.0]],
                vec![vec![0.0, 1.0], vec![0.0, 0.0, 1.0]],
            ],
        ),
    ]
}

/// Limit reports for every preset, with the default schedule and order.
pub fn collision_gallery(tol: &Tolerances) -> Result<Vec<GalleryEntry>> {
    presets()
        .into_iter()
        .map(|p| {
            let f = p.transversal();
            let report = limit_ideal(&f, &p.curve, &default_schedule(), DEFAULT_ORDER, tol)?;
            Ok(GalleryEntry {
                name: p.name,
                description: p.description,
                curve: p.curve,
                transversal: f,
                report,
            })
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn every_preset_certifies() {
        let tol = Tolerances::default();
        for entry in collision_gallery(&tol).unwrap() {
            assert!(
                entry.report.certified,
                "{}: {}",
                entry.name, entry.report.diagnostics
            );
        }
    }
}
