use rand::Rng;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::config::WeightedConfig;
use crate::error::{Error, Result};
use crate::linalg::{full_svd, Matrix};
use crate::polycalc::multi_index::{below_degree, binomial};
use crate::polycalc::{jet_rows, MultiIndex, MultivariatePolynomial};

/// Polynomials of degree `< deg` in `m` variables with the graded-lex
/// monomial basis and orthonormal coefficients.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Transversal {
    m: usize,
    deg: u32,
    basis: Vec<MultiIndex>,
}

pub fn monomial_transversal(m: usize, deg: u32) -> Result<Transversal> {
    Transversal::new(m, deg)
}

impl Transversal {
    pub fn new(m: usize, deg: u32) -> Result<Self> {
        if m == 0 || deg == 0 {
            return Err(Error::InvalidInput(
                "transversal needs m ≥ 1 and D_max ≥ 1".into(),
            ));
        }
        Ok(Transversal {
            m,
            deg,
            basis: below_degree(m, deg),
        })
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn deg(&self) -> u32 {
        self.deg
    }

    /// `r = binom(m + D_max - 1, m)`.
    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[MultiIndex] {
        &self.basis
    }

    pub fn basis_polys(&self) -> Vec<MultivariatePolynomial> {
        self.basis
            .iter()
            .map(|a| MultivariatePolynomial::monomial(a.clone(), 1.0))
            .collect()
    }

    pub fn poly(&self, coords: &[f64]) -> MultivariatePolynomial {
        MultivariatePolynomial::from_coords(self.m, &self.basis, coords)
    }

    /// Coordinates of a polynomial lying in `F`.
    pub fn coords(&self, p: &MultivariatePolynomial) -> Result<Vec<f64>> {
        if p.dim() != self.m {
            return Err(Error::DimensionMismatch {
                expected: self.m,
                got: p.dim(),
            });
        }
        p.coords(&self.basis)
    }

    /// True when `self ⊆ other`; coordinates of `self` are then the leading
    /// coordinates of `other`.
    pub fn is_sub_of(&self, other: &Transversal) -> bool {
        self.m == other.m && self.deg <= other.deg
    }

    /// Jet-evaluation matrix: for each cluster `(y, k)` the rows
    /// `∂^α/α!` at `y`, `|α| < k`, applied to the basis.
    pub fn jet_matrix(&self, config: &WeightedConfig) -> Result<Matrix> {
        if config.dim() != self.m {
            return Err(Error::DimensionMismatch {
                expected: self.m,
                got: config.dim(),
            });
        }
        let mut rows = Vec::new();
        for (y, k) in config.clusters() {
            rows.extend(jet_rows(&self.basis, y, *k));
        }
        Ok(Matrix::from_fn(rows.len(), self.dim(), |i, j| rows[i][j]))
    }

    /// `Σ_i binom(m + k_i - 1, m)`, the number of jet conditions of `m_Y`.
    pub fn jet_count(&self, config: &WeightedConfig) -> usize {
        config
            .clusters()
            .iter()
            .map(|(_, k)| binomial(self.m + *k as usize - 1, self.m))
            .sum()
    }
}

#[derive(Serialize, Deserialize)]
struct TransversalDump {
    m: usize,
    deg: u32,
}

impl Serialize for Transversal {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        TransversalDump {
            m: self.m,
            deg: self.deg,
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for Transversal {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let dump = TransversalDump::deserialize(d)?;
        Transversal::new(dump.m, dump.deg).map_err(serde::de::Error::custom)
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct TransversalityReport {
    pub d: usize,
    pub samples: usize,
    /// Smallest `σ_min / σ_max` of a jet-evaluation matrix seen.
    pub min_relative_sigma: f64,
    pub worst: Option<WeightedConfig>,
}

/// Integer partitions of `n` in non-increasing order.
pub fn partitions(n: u32) -> Vec<Vec<u32>> {
    fn go(n: u32, max: u32, prefix: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if n == 0 {
            out.push(prefix.clone());
            return;
        }
        for part in (1..=n.min(max)).rev() {
            prefix.push(part);
            go(n - part, part, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    go(n, n, &mut Vec::new(), &mut out);
    out
}

pub(crate) fn random_point(rng: &mut impl Rng, m: usize) -> Vec<f64> {
    (0..m).map(|_| rng.gen_range(-1.0..1.0)).collect()
}

/// Random configuration with the given weights inside `[-1, 1]^m`,
/// points at least `0.05` apart.
pub(crate) fn random_config(rng: &mut impl Rng, m: usize, weights: &[u32]) -> WeightedConfig {
    loop {
        let points: Vec<Vec<f64>> = weights.iter().map(|_| random_point(rng, m)).collect();
        let spread = points.iter().enumerate().all(|(i, p)| {
            points[..i]
                .iter()
                .all(|q| crate::config::distance(p, q) > 0.05)
        });
        if spread {
            let clusters = points.into_iter().zip(weights.iter().copied()).collect();
            return WeightedConfig::new(clusters).expect("separated points with positive weights");
        }
    }
}

/// Samples `Y ∈ SP_{d+1}` over every weight partition (fully coalesced
/// included) and checks the jet-evaluation matrix has full row rank.
pub fn transversality_check(
    f: &Transversal,
    d: usize,
    samples_per_partition: usize,
    rank_tol: f64,
    rng: &mut impl Rng,
) -> Result<TransversalityReport> {
    let mut report = TransversalityReport {
        d,
        samples: 0,
        min_relative_sigma: f64::INFINITY,
        worst: None,
    };
    for weights in partitions(d as u32 + 1) {
        for _ in 0..samples_per_partition.max(1) {
            let y = random_config(rng, f.m, &weights);
            let j = f.jet_matrix(&y)?;
            report.samples += 1;
            let rel = if j.nrows() > j.ncols() {
                0.0
            } else {
                let s = full_svd(&j.transpose()).singular;
                s[j.nrows() - 1] / s[0]
            };
            if rel < report.min_relative_sigma {
                report.min_relative_sigma = rel;
                report.worst = Some(y.clone());
            }
            if rel <= rank_tol {
                return Err(Error::TransversalityFail {
                    witness: y.to_string(),
                    sigma_min: rel,
                });
            }
        }
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn basis_enumeration() {
        let f = monomial_transversal(1, 3).unwrap();
        assert_eq!(f.dim(), 3);
        let f = monomial_transversal(2, 2).unwrap();
        let entries: Vec<_> = f.basis().iter().map(|a| a.entries().to_vec()).collect();
        assert_eq!(entries, vec![vec![0, 0], vec![1, 0], vec![0, 1]]);
        assert_eq!(monomial_transversal(2, 3).unwrap().dim(), 6);
    }

    #[test]
    fn transversality_examples() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let f = monomial_transversal(1, 3).unwrap();
        assert!(transversality_check(&f, 2, 10, 1e-9, &mut rng).is_ok());
        let f = monomial_transversal(1, 2).unwrap();
        assert!(matches!(
            transversality_check(&f, 2, 10, 1e-9, &mut rng),
            Err(Error::TransversalityFail { .. })
        ));
        let f = monomial_transversal(2, 3).unwrap();
        assert!(transversality_check(&f, 2, 10, 1e-9, &mut rng).is_ok());
    }

    #[test]
    fn partitions_of_four() {
        assert_eq!(partitions(4).len(), 5);
    }
}
