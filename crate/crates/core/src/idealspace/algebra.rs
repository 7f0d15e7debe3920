use super::ideal::IdealPoint;
use super::reducer::{ProductTable, Reducer};
use super::subspace::Subspace;
use crate::config::WeightedConfig;
use crate::error::{Error, Result};
use crate::linalg::Matrix;
use crate::polycalc::{MultiIndex, MultivariatePolynomial, SmoothFunction};
use crate::tolerances::Tolerances;

/// `𝓡 / I ≅ F / L` on the orthogonal complement `B` of `L` in `F`, with
/// products computed as `A(Y, b_a b_b)` reduced along `L`.
#[derive(Clone, Debug)]
pub struct QuotientAlgebra {
    base: IdealPoint,
    basis: Matrix,
    /// `c[(a·d + b)·d + e]` with `b_a b_b = Σ_e c_ab^e b_e`.
    structure: Vec<f64>,
    unit: Vec<f64>,
    reducer: Reducer,
}

impl QuotientAlgebra {
    /// Quotient of a certified ideal point.
    pub fn new(p: &IdealPoint, tol: &Tolerances) -> Result<Self> {
        if !p.certified() {
            return Err(Error::InvalidInput(
                "quotient algebra needs a certified ideal point".into(),
            ));
        }
        let reducer = Reducer::new(p.transversal(), p.config(), tol)?;
        let table = reducer.product_table();
        let mut q = Self::from_parts(p.config().clone(), p.subspace().clone(), &reducer, &table)?;
        q.base = p.clone();
        Ok(q)
    }

    pub(crate) fn from_parts(
        config: WeightedConfig,
        l: Subspace,
        reducer: &Reducer,
        table: &ProductTable,
    ) -> Result<Self> {
        let basis = l.complement();
        let d = basis.ncols();
        let cols: Vec<Vec<f64>> = (0..d)
            .map(|a| basis.column(a).iter().copied().collect())
            .collect();
        let mut structure = vec![0.0; d * d * d];
        for a in 0..d {
            for b in a..d {
                let prod = nalgebra::DVector::from_vec(table.reduce_product(&cols[a], &cols[b]));
                let c = basis.transpose() * prod;
                for e in 0..d {
                    structure[(a * d + b) * d + e] = c[e];
                    structure[(b * d + a) * d + e] = c[e];
                }
            }
        }
        let one = MultivariatePolynomial::constant(l.ambient().m(), 1.0);
        let unit = (basis.transpose() * nalgebra::DVector::from_vec(reducer.apply_poly(&one)))
            .iter()
            .copied()
            .collect();
        Ok(QuotientAlgebra {
            base: IdealPoint::uncertified(config, l)?,
            basis,
            structure,
            unit,
            reducer: reducer.clone(),
        })
    }

    pub fn base(&self) -> &IdealPoint {
        &self.base
    }

    pub fn dim(&self) -> usize {
        self.basis.ncols()
    }

    /// Coefficient frame (`r × d`) of the basis polynomials.
    pub fn basis(&self) -> &Matrix {
        &self.basis
    }

    pub fn basis_polys(&self) -> Vec<MultivariatePolynomial> {
        let f = self.base.transversal();
        (0..self.dim())
            .map(|a| f.poly(self.basis.column(a).as_slice()))
            .collect()
    }

    pub fn structure_constant(&self, a: usize, b: usize, e: usize) -> f64 {
        let d = self.dim();
        self.structure[(a * d + b) * d + e]
    }

    pub fn structure_constants(&self) -> &[f64] {
        &self.structure
    }

    pub fn unit(&self) -> &[f64] {
        &self.unit
    }

    /// Coordinates of `f mod I`.
    pub fn reduce(&self, f: &dyn SmoothFunction) -> Result<Vec<f64>> {
        let v = nalgebra::DVector::from_vec(self.reducer.apply(f)?);
        Ok((self.basis.transpose() * v).iter().copied().collect())
    }

    pub fn multiply(&self, u: &[f64], v: &[f64]) -> Vec<f64> {
        let d = self.dim();
        let mut out = vec![0.0; d];
        for a in 0..d {
            for b in 0..d {
                let w = u[a] * v[b];
                if w == 0.0 {
                    continue;
                }
                for (e, o) in out.iter_mut().enumerate() {
                    *o += w * self.structure[(a * d + b) * d + e];
                }
            }
        }
        out
    }

    /// Matrix of `v ↦ u·v`.
    pub fn multiplication_matrix(&self, u: &[f64]) -> Matrix {
        let d = self.dim();
        Matrix::from_fn(d, d, |e, b| {
            (0..d)
                .map(|a| u[a] * self.structure[(a * d + b) * d + e])
                .sum()
        })
    }

    /// `M_{x_1}, …, M_{x_m}`.
    pub fn coordinate_operators(&self) -> Vec<Matrix> {
        let m = self.base.transversal().m();
        (0..m)
            .map(|j| {
                let xj = MultivariatePolynomial::monomial(MultiIndex::unit(m, j), 1.0);
                let u = self.reduce(&xj).expect("polynomial input");
                self.multiplication_matrix(&u)
            })
            .collect()
    }

    /// Largest `|(b_a b_b) b_c - b_a (b_b b_c)|` over all basis triples.
    pub fn associativity_residual(&self) -> f64 {
        let d = self.dim();
        let e = |a: usize| {
            let mut v = vec![0.0; d];
            v[a] = 1.0;
            v
        };
        let mut worst = 0.0f64;
        for a in 0..d {
            for b in 0..d {
                let ab = self.multiply(&e(a), &e(b));
                for c in 0..d {
                    let left = self.multiply(&ab, &e(c));
                    let right = self.multiply(&e(a), &self.multiply(&e(b), &e(c)));
                    for (l, r) in left.iter().zip(&right) {
                        worst = worst.max((l - r).abs());
                    }
                }
            }
        }
        worst
    }

    /// Largest `|1·b_a - b_a|`.
    pub fn unit_residual(&self) -> f64 {
        let m = self.multiplication_matrix(&self.unit);
        (m - Matrix::identity(self.dim(), self.dim())).amax()
    }

    /// Exact symmetry of the structure tensor.
    pub fn is_commutative(&self) -> bool {
        let d = self.dim();
        (0..d).all(|a| {
            (0..d).all(|b| {
                (0..d).all(|e| self.structure_constant(a, b, e) == self.structure_constant(b, a, e))
            })
        })
    }
}

/// Coordinates of `f mod I` in the basis of `Q`.
pub fn reduce_mod_ideal(q: &QuotientAlgebra, f: &dyn SmoothFunction) -> Result<Vec<f64>> {
    q.reduce(f)
}
