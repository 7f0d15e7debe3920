use serde::{Deserialize, Serialize};

use crate::config::{distance, WeightedConfig};
use crate::error::{Error, Result};

/// `d` points moving polynomially in a parameter `t ∈ (0, t_max]`.
/// `paths[i][j]` holds the ascending coefficients of coordinate `j` of
/// point `i`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ConfigCurve {
    pub m: usize,
    pub paths: Vec<Vec<Vec<f64>>>,
    pub t_max: f64,
}

/// Points of the limit configuration closer than this are merged.
pub const LIMIT_MERGE_RADIUS: f64 = 1e-9;

impl ConfigCurve {
    pub fn new(m: usize, paths: Vec<Vec<Vec<f64>>>, t_max: f64) -> Result<Self> {
        let curve = ConfigCurve { m, paths, t_max };
        curve.validate()?;
        Ok(curve)
    }

    /// Checks shapes and that the points stay apart on a sample of `(0, t_max]`.
    pub fn validate(&self) -> Result<()> {
        if self.m == 0 || self.paths.is_empty() {
            return Err(Error::InvalidInput(
                "curve needs m ≥ 1 and at least one point".into(),
            ));
        }
        if !(self.t_max > 0.0 && self.t_max.is_finite()) {
            return Err(Error::InvalidInput(format!(
                "t_max must be positive, got {}",
                self.t_max
            )));
        }
        for (i, p) in self.paths.iter().enumerate() {
            if p.len() != self.m {
                return Err(Error::DimensionMismatch {
                    expected: self.m,
                    got: p.len(),
                });
            }
            if p.iter()
                .any(|c| c.is_empty() || c.iter().any(|v| !v.is_finite()))
            {
                return Err(Error::InvalidInput(format!(
                    "path {i} has an empty or non-finite coordinate"
                )));
            }
        }
        for k in 1..=16 {
            let t = self.t_max * f64::from(k) / 16.0;
            self.distinct_at(t)?;
        }
        Ok(())
    }

    pub fn len(&self) -> usize {
        self.paths.len()
    }

    pub fn is_empty(&self) -> bool {
        self.paths.is_empty()
    }

    pub fn points_at(&self, t: f64) -> Vec<Vec<f64>> {
        self.paths
            .iter()
            .map(|p| {
                p.iter()
                    .map(|c| c.iter().rev().fold(0.0, |acc, &a| acc * t + a))
                    .collect()
            })
            .collect()
    }

    /// Errors when two points are within the merge tolerance at `t`.
    pub fn distinct_at(&self, t: f64) -> Result<Vec<Vec<f64>>> {
        let pts = self.points_at(t);
        for i in 0..pts.len() {
            for j in 0..i {
                if distance(&pts[i], &pts[j]) <= crate::config::MERGE_TOLERANCE {
                    return Err(Error::MergeToleranceViolation(format!(
                        "points {j} and {i} of the curve meet at t = {t}"
                    )));
                }
            }
        }
        Ok(pts)
    }

    /// `Y(0)`: the constant terms, merged with their multiplicities.
    pub fn limit_config(&self) -> Result<WeightedConfig> {
        WeightedConfig::merge_points(&self.points_at(0.0), LIMIT_MERGE_RADIUS)
    }

    /// For each point of the curve, the index of its cluster in `Y(0)`.
    pub fn limit_assignment(&self) -> Result<(WeightedConfig, Vec<usize>)> {
        let y0 = self.limit_config()?;
        let assignment = self
            .points_at(0.0)
            .iter()
            .map(|p| {
                y0.clusters()
                    .iter()
                    .enumerate()
                    .min_by(|a, b| distance(p, &a.1 .0).total_cmp(&distance(p, &b.1 .0)))
                    .map(|(i, _)| i)
                    .expect("non-empty limit")
            })
            .collect();
        Ok((y0, assignment))
    }

    /// The same curve with its points listed in another order.
    pub fn permuted(&self, order: &[usize]) -> Self {
        ConfigCurve {
            m: self.m,
            paths: order.iter().map(|&i| self.paths[i].clone()).collect(),
            t_max: self.t_max,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn limit_of_two_point_collision() {
        let c =
            ConfigCurve::new(1, vec![vec![vec![0.0, -1.0]], vec![vec![0.0, 1.0]]], 1.0).unwrap();
        assert_eq!(c.points_at(0.5), vec![vec![-0.5], vec![0.5]]);
        let y0 = c.limit_config().unwrap();
        assert_eq!(y0.clusters(), &[(vec![0.0], 2)]);
        assert!(
            ConfigCurve::new(1, vec![vec![vec![0.0, 1.0]], vec![vec![0.0, 1.0]]], 1.0).is_err()
        );
    }
}
