use nalgebra::DVector;
use serde::{Deserialize, Serialize};

use twofloat::TwoFloat;

use super::forms::{multiplicities, simplex_form};
use super::precise::{fiber_dd, Terms};
use crate::config::{WeightedConfig, MERGE_TOLERANCE};
use crate::error::{Error, Result};
use crate::linalg::{condition_number, from_rows, to_rows, Matrix};
use crate::polycalc::multi_index::{count_below_degree, of_degree};
use crate::polycalc::{AffineSimplex, Jet, MultiIndex, MultivariatePolynomial, SmoothFunction};
use crate::tolerances::Tolerances;

const REFINEMENT_STEPS: usize = 3;

/// The local interpolation map `A(Y, ·)`: the inverse of the fiber map
/// `G_D` over an ordered tuple of clusters, composed with `G`.
///
/// Each cluster is an ordered tuple of points. Coalesced tuples
/// `(y, …, y)` give Hermite-type jet conditions; spread tuples give
/// Kergin interpolation built from simplex integrals.
#[derive(Clone, Debug, PartialEq)]
pub struct InterpolationOperator {
    clusters: Vec<Vec<Vec<f64>>>,
    config: WeightedConfig,
    basis: Vec<MultivariatePolynomial>,
    solve: Matrix,
    condition: f64,
}

impl InterpolationOperator {
    /// Operator at a weighted configuration: cluster `i` is `y_i`
    /// repeated `k_i` times.
    pub fn build(
        config: &WeightedConfig,
        basis: Vec<MultivariatePolynomial>,
        tol: &Tolerances,
    ) -> Result<Self> {
        Self::from_tuples(config.coalesced_tuples(), basis, tol)
    }

    /// Operator over explicit cluster tuples. The basis must have
    /// `Σ_i binom(m + k_i - 1, m)` elements.
    pub fn from_tuples(
        clusters: Vec<Vec<Vec<f64>>>,
        basis: Vec<MultivariatePolynomial>,
        tol: &Tolerances,
    ) -> Result<Self> {
        let dim = tuples_dim(&clusters)?;
        let expected = fiber_dimension(&clusters);
        if basis.len() != expected {
            return Err(Error::DimensionMismatch {
                expected,
                got: basis.len(),
            });
        }
        if let Some(b) = basis.iter().find(|b| b.dim() != dim) {
            return Err(Error::DimensionMismatch {
                expected: dim,
                got: b.dim(),
            });
        }
        let all: Vec<Vec<f64>> = clusters.iter().flatten().cloned().collect();
        let config = WeightedConfig::merge_points(&all, MERGE_TOLERANCE)?;
        let columns = basis
            .iter()
            .map(|b| fiber_vector(&clusters, b))
            .collect::<Result<Vec<_>>>()?;
        let g = Matrix::from_fn(expected, expected, |i, j| columns[j][i]);
        let condition = condition_number(&g);
        if !(condition <= tol.max_condition) {
            return Err(Error::SingularFiber { condition });
        }
        let solve = g.try_inverse().ok_or(Error::SingularFiber { condition })?;
        Ok(InterpolationOperator {
            clusters,
            config,
            basis,
            solve,
            condition,
        })
    }

    /// Operator whose complement `D` is chosen greedily from `candidates`
    /// (see [`default_complement`]).
    pub fn with_default_complement(
        clusters: Vec<Vec<Vec<f64>>>,
        candidates: &[MultiIndex],
        tol: &Tolerances,
    ) -> Result<Self> {
        let chosen = default_complement(&clusters, candidates, tol)?;
        let basis = chosen
            .into_iter()
            .map(|a| MultivariatePolynomial::monomial(a, 1.0))
            .collect();
        Self::from_tuples(clusters, basis, tol)
    }

    pub fn clusters(&self) -> &[Vec<Vec<f64>>] {
        &self.clusters
    }

    pub fn config(&self) -> &WeightedConfig {
        &self.config
    }

    pub fn basis(&self) -> &[MultivariatePolynomial] {
        &self.basis
    }

    /// `G_D^{-1}` (maps fiber values to coordinates in `D`).
    pub fn solve_matrix(&self) -> &Matrix {
        &self.solve
    }

    pub fn condition_number(&self) -> f64 {
        self.condition
    }

    pub fn dim(&self) -> usize {
        self.basis[0].dim()
    }

    /// Coordinates of `A(Y, f)` in the basis `D`.
    pub fn coefficients(&self, f: &dyn SmoothFunction) -> Result<DVector<f64>> {
        if f.dim() != self.dim() {
            return Err(Error::DimensionMismatch {
                expected: self.dim(),
                got: f.dim(),
            });
        }
        let g = fiber_vector(&self.clusters, f)?;
        let mut c = &self.solve * DVector::from_vec(g.clone());
        // Iterative refinement with the residual fiber taken in
        // double-double arithmetic.
        for _ in 0..REFINEMENT_STEPS {
            let r = DVector::from_vec(self.residual(f, &g, &c));
            let dc = &self.solve * r;
            let converged = dc.amax() <= f64::EPSILON * c.amax();
            c += dc;
            if converged {
                break;
            }
        }
        Ok(c)
    }

    /// `G(f) - G(Σ c_i b_i)`, rounded once.
    fn residual(&self, f: &dyn SmoothFunction, g: &[f64], c: &DVector<f64>) -> Vec<f64> {
        let mut terms: Terms = self
            .basis
            .iter()
            .zip(c.iter())
            .flat_map(|(b, &ci)| b.terms().map(move |(a, v)| (a, -(TwoFloat::from(v) * ci))))
            .collect();
        match f.as_polynomial() {
            Some(p) => {
                terms.extend(p.terms().map(|(a, v)| (a, TwoFloat::from(v))));
                fiber_dd(&self.clusters, self.dim(), &terms)
                    .into_iter()
                    .map(f64::from)
                    .collect()
            }
            None => fiber_dd(&self.clusters, self.dim(), &terms)
                .into_iter()
                .zip(g)
                .map(|(a, &gi)| f64::from(a + gi))
                .collect(),
        }
    }

    /// `A(Y, f) ∈ span(D)`.
    pub fn interpolate(&self, f: &dyn SmoothFunction) -> Result<MultivariatePolynomial> {
        let c = self.coefficients(f)?;
        let mut out = MultivariatePolynomial::zero(self.dim());
        for (b, &ci) in self.basis.iter().zip(c.iter()) {
            out = &out + &b.scale(ci);
        }
        Ok(out)
    }

    /// Largest Taylor coefficient of `j^{k-1}_y (f - A(Y,f))` over every
    /// point `y` of multiplicity `k` in each cluster tuple.
    pub fn jet_residual(&self, f: &dyn SmoothFunction) -> Result<f64> {
        let a = self.interpolate(f)?;
        let mut worst: f64 = 0.0;
        for tuple in &self.clusters {
            for (y, k) in multiplicities(tuple) {
                let jf = Jet::of(f, &y, k - 1)?;
                let ja = Jet::of(&a, &y, k - 1)?;
                for (u, v) in jf.coeffs().iter().zip(ja.coeffs()) {
                    worst = worst.max((u - v).abs());
                }
            }
        }
        Ok(worst)
    }

    pub fn to_json(&self) -> Result<String> {
        Ok(serde_json::to_string(&OperatorDump::from(self))?)
    }

    pub fn from_json(s: &str) -> Result<Self> {
        let dump: OperatorDump = serde_json::from_str(s)?;
        dump.try_into()
    }
}

/// Serialized operator. The solve matrix is stored row-major so that a
/// round trip reproduces it bit for bit.
#[derive(Serialize, Deserialize)]
struct OperatorDump {
    config: WeightedConfig,
    clusters: Vec<Vec<Vec<f64>>>,
    basis: Vec<MultivariatePolynomial>,
    solve_matrix: Vec<Vec<f64>>,
    condition_number: f64,
}

impl From<&InterpolationOperator> for OperatorDump {
    fn from(op: &InterpolationOperator) -> Self {
        OperatorDump {
            config: op.config.clone(),
            clusters: op.clusters.clone(),
            basis: op.basis.clone(),
            solve_matrix: to_rows(&op.solve),
            condition_number: op.condition,
        }
    }
}

impl TryFrom<OperatorDump> for InterpolationOperator {
    type Error = Error;

    fn try_from(d: OperatorDump) -> Result<Self> {
        let n = fiber_dimension(&d.clusters);
        tuples_dim(&d.clusters)?;
        if d.basis.len() != n
            || d.solve_matrix.len() != n
            || d.solve_matrix.iter().any(|r| r.len() != n)
        {
            return Err(Error::InvalidInput(format!(
                "operator dump must carry {n} basis elements and a {n}×{n} solve matrix"
            )));
        }
        Ok(InterpolationOperator {
            solve: from_rows(&d.solve_matrix, n),
            clusters: d.clusters,
            config: d.config,
            basis: d.basis,
            condition: d.condition_number,
        })
    }
}

fn tuples_dim(clusters: &[Vec<Vec<f64>>]) -> Result<usize> {
    let dim = clusters
        .first()
        .and_then(|c| c.first())
        .map(Vec::len)
        .ok_or_else(|| Error::InvalidInput("no cluster points".into()))?;
    for tuple in clusters {
        if tuple.is_empty() {
            return Err(Error::InvalidInput("empty cluster tuple".into()));
        }
        if let Some(p) = tuple.iter().find(|p| p.len() != dim) {
            return Err(Error::DimensionMismatch {
                expected: dim,
                got: p.len(),
            });
        }
    }
    Ok(dim)
}

/// `Σ_i binom(m + k_i - 1, m)`.
pub fn fiber_dimension(clusters: &[Vec<Vec<f64>>]) -> usize {
    let m = clusters.first().and_then(|c| c.first()).map_or(0, Vec::len);
    clusters
        .iter()
        .map(|c| count_below_degree(m, c.len() as u32))
        .sum()
}

/// `G(x, f)` flattened: for every cluster tuple `(x_1..x_k)` and every
/// `j < k`, the components of `ℐ(f, [x_1..x_{j+1}])` divided by `α!`.
/// On a coalesced tuple these are the Taylor coefficients of `f`.
pub fn fiber_vector(clusters: &[Vec<Vec<f64>>], f: &dyn SmoothFunction) -> Result<Vec<f64>> {
    let mut out = Vec::with_capacity(fiber_dimension(clusters));
    for tuple in clusters {
        let sigma = AffineSimplex::new(tuple.clone())?;
        for j in 0..tuple.len() {
            let form = simplex_form(f, &sigma.prefix(j))?;
            let alphas = of_degree(f.dim(), j as u32);
            out.extend(
                alphas
                    .iter()
                    .zip(form.coeffs())
                    .map(|(a, c)| c / a.factorial()),
            );
        }
    }
    Ok(out)
}

/// Square matrix of `G_D` over the cluster tuples.
pub fn fiber_matrix(
    clusters: &[Vec<Vec<f64>>],
    basis: &[MultivariatePolynomial],
) -> Result<Matrix> {
    let n = fiber_dimension(clusters);
    let columns = basis
        .iter()
        .map(|b| fiber_vector(clusters, b))
        .collect::<Result<Vec<_>>>()?;
    Ok(Matrix::from_fn(n, basis.len(), |i, j| columns[j][i]))
}

/// First monomials of `candidates` (in the given order) whose fiber
/// vectors are linearly independent, until `Σ binom(m + k_i - 1, m)` are
/// found. For a single cluster of weight `k` and graded-lex candidates
/// this picks the monomials of degree `< k`.
pub fn default_complement(
    clusters: &[Vec<Vec<f64>>],
    candidates: &[MultiIndex],
    tol: &Tolerances,
) -> Result<Vec<MultiIndex>> {
    let dim = tuples_dim(clusters)?;
    let needed = fiber_dimension(clusters);
    let mut chosen = Vec::with_capacity(needed);
    let mut ortho: Vec<DVector<f64>> = Vec::with_capacity(needed);
    for alpha in candidates {
        if chosen.len() == needed {
            break;
        }
        if alpha.dim() != dim {
            return Err(Error::DimensionMismatch {
                expected: dim,
                got: alpha.dim(),
            });
        }
        let p = MultivariatePolynomial::monomial(alpha.clone(), 1.0);
        let col = DVector::from_vec(fiber_vector(clusters, &p)?);
        let norm = col.norm();
        if norm == 0.0 {
            continue;
        }
        let mut v = col;
        // two Gram–Schmidt passes
        for _ in 0..2 {
            for q in &ortho {
                let c = q.dot(&v);
                v -= q * c;
            }
        }
        let rest = v.norm();
        if rest > tol.rank * norm {
            ortho.push(v / rest);
            chosen.push(alpha.clone());
        }
    }
    if chosen.len() < needed {
        return Err(Error::SingularFiber {
            condition: f64::INFINITY,
        });
    }
    Ok(chosen)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polycalc::multi_index::below_degree;

    fn mono(e: &[u32]) -> MultivariatePolynomial {
        MultivariatePolynomial::monomial(MultiIndex::new(e.to_vec()), 1.0)
    }

    fn tuples1(points: &[&[f64]]) -> Vec<Vec<Vec<f64>>> {
        points
            .iter()
            .map(|c| c.iter().map(|&x| vec![x]).collect())
            .collect()
    }

    #[test]
    fn kergin_matrix_is_unit_upper_triangular() {
        let tol = Tolerances::default();
        for clusters in [
            tuples1(&[&[0.0, 0.0, 0.0, 0.0]]),
            tuples1(&[&[0.3, -1.0, 2.0, 0.5]]),
        ] {
            let basis: Vec<_> = (0..4).map(|k| mono(&[k])).collect();
            let g = fiber_matrix(&clusters, &basis).unwrap();
            for i in 0..4 {
                assert!((g[(i, i)] - 1.0).abs() < 1e-13);
                for j in 0..i {
                    assert!(g[(i, j)].abs() < 1e-13);
                }
            }
            assert!(InterpolationOperator::from_tuples(clusters, basis, &tol).is_ok());
        }
    }

    #[test]
    fn two_point_affine_interpolant() {
        let y = WeightedConfig::from_points(&[vec![0.0], vec![1.0]]).unwrap();
        let op =
            InterpolationOperator::build(&y, vec![mono(&[0]), mono(&[1])], &Tolerances::default())
                .unwrap();
        let f = &mono(&[3]) + &mono(&[0]); // x³ + 1: values 1, 2
        let a = op.interpolate(&f).unwrap();
        assert!((a.coeff(&MultiIndex::new(vec![0])) - 1.0).abs() < 1e-14);
        assert!((a.coeff(&MultiIndex::new(vec![1])) - 1.0).abs() < 1e-14);
    }

    #[test]
    fn complement_inside_ideal_is_singular() {
        let y = WeightedConfig::new(vec![(vec![0.0], 2)]).unwrap();
        let err =
            InterpolationOperator::build(&y, vec![mono(&[2]), mono(&[3])], &Tolerances::default())
                .unwrap_err();
        assert!(matches!(err, Error::SingularFiber { .. }));
    }

    #[test]
    fn default_complement_is_kergin_for_single_cluster() {
        let clusters = vec![vec![vec![0.2, -0.4]; 3]];
        let chosen =
            default_complement(&clusters, &below_degree(2, 5), &Tolerances::default()).unwrap();
        assert_eq!(chosen, below_degree(2, 3));
    }

    #[test]
    fn single_cluster_reproduces_taylor_polynomial() {
        let y = WeightedConfig::new(vec![(vec![0.0], 2)]).unwrap();
        let op =
            InterpolationOperator::build(&y, vec![mono(&[0]), mono(&[1])], &Tolerances::default())
                .unwrap();
        assert!(op.interpolate(&mono(&[3])).unwrap().is_zero());
        assert!(op.jet_residual(&mono(&[3])).unwrap() < 1e-12);
    }

    #[test]
    fn dump_round_trip_is_bit_exact() {
        let clusters = vec![vec![vec![0.1, 0.7], vec![-0.3, 0.2]], vec![vec![1.0, 1.0]]];
        let op = InterpolationOperator::with_default_complement(
            clusters,
            &below_degree(2, 4),
            &Tolerances::default(),
        )
        .unwrap();
        let s = op.to_json().unwrap();
        let back = InterpolationOperator::from_json(&s).unwrap();
        assert_eq!(back, op);
        assert_eq!(back.to_json().unwrap(), s);
    }
}
