use std::cmp::Ordering;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Default minimum separation of distinct points.
pub const MERGE_TOLERANCE: f64 = 1e-10;

/// A point of the symmetric product: distinct points `y_i ∈ ℝ^m` with
/// positive integer weights `k_i`, kept in lexicographic order of the
/// coordinates.
#[derive(Clone, Debug, PartialEq)]
pub struct WeightedConfig {
    dim: usize,
    clusters: Vec<(Vec<f64>, u32)>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
struct ClusterRepr {
    point: Vec<f64>,
    weight: u32,
}

impl WeightedConfig {
    pub fn new(clusters: Vec<(Vec<f64>, u32)>) -> Result<Self> {
        Self::with_merge_tolerance(clusters, MERGE_TOLERANCE)
    }

    /// Rejects points closer than `merge_tol`; multiplicities must be stated
    /// through the weights.
    pub fn with_merge_tolerance(
        mut clusters: Vec<(Vec<f64>, u32)>,
        merge_tol: f64,
    ) -> Result<Self> {
        let Some((first, _)) = clusters.first() else {
            return Err(Error::InvalidInput("empty configuration".into()));
        };
        let dim = first.len();
        if dim == 0 {
            return Err(Error::InvalidInput(
                "points must have at least one coordinate".into(),
            ));
        }
        for (p, k) in &clusters {
            if p.len() != dim {
                return Err(Error::DimensionMismatch {
                    expected: dim,
                    got: p.len(),
                });
            }
            if *k == 0 {
                return Err(Error::InvalidInput("weights must be positive".into()));
            }
            if p.iter().any(|c| !c.is_finite()) {
                return Err(Error::InvalidInput(format!("non-finite point {p:?}")));
            }
        }
        clusters.sort_by(|a, b| lex_cmp(&a.0, &b.0));
        for i in 0..clusters.len() {
            for j in (i + 1)..clusters.len() {
                if distance(&clusters[i].0, &clusters[j].0) <= merge_tol {
                    return Err(Error::MergeToleranceViolation(format!(
                        "{:?} and {:?}",
                        clusters[i].0, clusters[j].0
                    )));
                }
            }
        }
        Ok(WeightedConfig { dim, clusters })
    }

    /// All weights one.
    pub fn from_points(points: &[Vec<f64>]) -> Result<Self> {
        Self::new(points.iter().map(|p| (p.clone(), 1)).collect())
    }

    /// Groups an unordered list of possibly coinciding points: points within
    /// `radius` of an existing group (single linkage) join it, and each group
    /// becomes one cluster at its centroid.
    pub fn merge_points(points: &[Vec<f64>], radius: f64) -> Result<Self> {
        let n = points.len();
        let mut group: Vec<usize> = (0..n).collect();
        fn root(group: &mut [usize], mut i: usize) -> usize {
            while group[i] != i {
                group[i] = group[group[i]];
                i = group[i];
            }
            i
        }
        for i in 0..n {
            for j in (i + 1)..n {
                if distance(&points[i], &points[j]) <= radius {
                    let (a, b) = (root(&mut group, i), root(&mut group, j));
                    group[a.max(b)] = a.min(b);
                }
            }
        }
        let mut clusters: Vec<(Vec<f64>, u32)> = Vec::new();
        let mut roots: Vec<usize> = Vec::new();
        for i in 0..n {
            let r = root(&mut group, i);
            match roots.iter().position(|&x| x == r) {
                Some(c) => {
                    let (sum, k) = &mut clusters[c];
                    for (s, v) in sum.iter_mut().zip(&points[i]) {
                        *s += v;
                    }
                    *k += 1;
                }
                None => {
                    roots.push(r);
                    clusters.push((points[i].clone(), 1));
                }
            }
        }
        for (sum, k) in &mut clusters {
            for s in sum.iter_mut() {
                *s /= f64::from(*k);
            }
        }
        Self::with_merge_tolerance(clusters, radius)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn clusters(&self) -> &[(Vec<f64>, u32)] {
        &self.clusters
    }

    pub fn len(&self) -> usize {
        self.clusters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.clusters.is_empty()
    }

    pub fn total_weight(&self) -> u32 {
        self.clusters.iter().map(|(_, k)| k).sum()
    }

    /// Cluster tuples with every point repeated according to its weight.
    pub fn coalesced_tuples(&self) -> Vec<Vec<Vec<f64>>> {
        self.clusters
            .iter()
            .map(|(p, k)| vec![p.clone(); *k as usize])
            .collect()
    }

    /// Largest distance between matched clusters when both configurations
    /// carry the same weights; `None` if the weight patterns differ.
    pub fn distance_to(&self, other: &WeightedConfig) -> Option<f64> {
        if self.dim != other.dim || self.clusters.len() != other.clusters.len() {
            return None;
        }
        let mut used = vec![false; other.clusters.len()];
        let mut worst: f64 = 0.0;
        for (p, k) in &self.clusters {
            let best = other
                .clusters
                .iter()
                .enumerate()
                .filter(|(j, (_, kk))| !used[*j] && kk == k)
                .min_by(|a, b| distance(p, &a.1 .0).total_cmp(&distance(p, &b.1 .0)))?;
            used[best.0] = true;
            worst = worst.max(distance(p, &best.1 .0));
        }
        Some(worst)
    }

    pub fn min_separation(&self) -> f64 {
        let mut best = f64::INFINITY;
        for i in 0..self.clusters.len() {
            for j in (i + 1)..self.clusters.len() {
                best = best.min(distance(&self.clusters[i].0, &self.clusters[j].0));
            }
        }
        best
    }
}

impl fmt::Display for WeightedConfig {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, (p, k)) in self.clusters.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{p:?}^{k}")?;
        }
        write!(f, "}}")
    }
}

impl Serialize for WeightedConfig {
    fn serialize<S: serde::Serializer>(
        &self,
        serializer: S,
    ) -> std::result::Result<S::Ok, S::Error> {
        self.clusters
            .iter()
            .map(|(p, k)| ClusterRepr {
                point: p.clone(),
                weight: *k,
            })
            .collect::<Vec<_>>()
            .serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for WeightedConfig {
    fn deserialize<D: serde::Deserializer<'de>>(
        deserializer: D,
    ) -> std::result::Result<Self, D::Error> {
        let repr = Vec::<ClusterRepr>::deserialize(deserializer)?;
        WeightedConfig::new(repr.into_iter().map(|c| (c.point, c.weight)).collect())
            .map_err(serde::de::Error::custom)
    }
}

pub fn distance(a: &[f64], b: &[f64]) -> f64 {
    a.iter()
        .zip(b)
        .map(|(x, y)| (x - y) * (x - y))
        .sum::<f64>()
        .sqrt()
}

fn lex_cmp(a: &[f64], b: &[f64]) -> Ordering {
    for (x, y) in a.iter().zip(b) {
        match x.total_cmp(y) {
            Ordering::Equal => continue,
            o => return o,
        }
    }
    Ordering::Equal
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn canonical_order_and_weight() {
        let y = WeightedConfig::new(vec![(vec![1.0, 0.0], 2), (vec![0.0, 5.0], 1)]).unwrap();
        assert_eq!(y.clusters()[0].0, vec![0.0, 5.0]);
        assert_eq!(y.total_weight(), 3);
    }

    #[test]
    fn degenerate_input_rejected() {
        let err = WeightedConfig::from_points(&[vec![0.0], vec![1e-12]]).unwrap_err();
        assert!(matches!(err, Error::MergeToleranceViolation(_)));
        assert!(WeightedConfig::new(vec![(vec![0.0], 0)]).is_err());
        assert!(WeightedConfig::new(vec![]).is_err());
    }

    #[test]
    fn merging_collided_points() {
        let y =
            WeightedConfig::merge_points(&[vec![0.0, 0.0], vec![1e-9, 0.0], vec![1.0, 1.0]], 1e-7)
                .unwrap();
        assert_eq!(y.len(), 2);
        assert_eq!(y.clusters()[0].1, 2);
        assert_eq!(y.clusters()[1].1, 1);
    }

    #[test]
    fn json_round_trip() {
        let y = WeightedConfig::new(vec![(vec![0.25], 2), (vec![-1.0], 1)]).unwrap();
        let s = serde_json::to_string(&y).unwrap();
        assert_eq!(
            s,
            r#"[{"point":[-1.0],"weight":1},{"point":[0.25],"weight":2}]"#
        );
        let back: WeightedConfig = serde_json::from_str(&s).unwrap();
        assert_eq!(back, y);
    }
}
