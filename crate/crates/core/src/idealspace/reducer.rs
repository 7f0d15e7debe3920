use super::transversal::Transversal;
use crate::config::WeightedConfig;
use crate::error::{Error, Result};
use crate::linalg::Matrix;
use crate::polycalc::multi_index::below_degree;
use crate::polycalc::{
    monomial_taylor_coeff, Jet, MultiIndex, MultivariatePolynomial, SmoothFunction,
};
use crate::tolerances::Tolerances;

/// `A(Y, ·)` at a weighted configuration with the complement
/// `(F ∩ m_Y)^⊥` of `F ∩ m_Y` in `F`: `A(Y, g)` is the minimum-norm
/// element of `F` with the jets of `g` at `Y`.
#[derive(Clone, Debug)]
pub struct Reducer {
    f: Transversal,
    config: WeightedConfig,
    /// `Jᵀ = Q R` for the jet matrix `J` of `F` at `Y`.
    q: Matrix,
    r: Matrix,
    condition: f64,
}

impl Reducer {
    pub fn new(f: &Transversal, config: &WeightedConfig, tol: &Tolerances) -> Result<Self> {
        if config.dim() != f.m() {
            return Err(Error::DimensionMismatch {
                expected: f.m(),
                got: config.dim(),
            });
        }
        let j = f.jet_matrix(config)?;
        if j.nrows() > j.ncols() {
            return Err(Error::SingularFiber {
                condition: f64::INFINITY,
            });
        }
        let qr = j.transpose().qr();
        let (q, r) = (qr.q(), qr.r());
        let diag: Vec<f64> = r.diagonal().iter().map(|c| c.abs()).collect();
        let big = diag.iter().fold(0.0f64, |a, &b| a.max(b));
        let small = diag.iter().fold(f64::INFINITY, |a, &b| a.min(b));
        let condition = if small > 0.0 {
            big / small
        } else {
            f64::INFINITY
        };
        if !(condition <= tol.max_condition) {
            return Err(Error::SingularFiber { condition });
        }
        Ok(Reducer {
            f: f.clone(),
            config: config.clone(),
            q,
            r,
            condition,
        })
    }

    /// Condition estimate of the jet matrix of `F` at `Y`.
    pub fn condition_number(&self) -> f64 {
        self.condition
    }

    pub fn transversal(&self) -> &Transversal {
        &self.f
    }

    /// Taylor data of a polynomial at the coalesced clusters.
    fn fiber_of_poly(&self, p: &MultivariatePolynomial) -> Vec<f64> {
        let mut out = Vec::new();
        for (y, k) in self.config.clusters() {
            for alpha in below_degree(self.f.m(), *k) {
                out.push(
                    p.terms()
                        .map(|(beta, c)| c * monomial_taylor_coeff(beta, &alpha, y))
                        .sum(),
                );
            }
        }
        out
    }

    /// Minimum-norm `F`-coordinates with the given Taylor data (columns).
    fn solve(&self, data: Matrix) -> Matrix {
        let y = self
            .r
            .transpose()
            .solve_lower_triangular(&data)
            .expect("nonsingular triangular factor");
        &self.q * y
    }

    /// `F`-coordinates of `A(Y, p)` for a polynomial of any degree.
    pub fn apply_poly(&self, p: &MultivariatePolynomial) -> Vec<f64> {
        let g = self.fiber_of_poly(p);
        let n = g.len();
        self.solve(Matrix::from_vec(n, 1, g))
            .iter()
            .copied()
            .collect()
    }

    /// `F`-coordinates of `A(Y, f)`.
    pub fn apply(&self, f: &dyn SmoothFunction) -> Result<Vec<f64>> {
        if let Some(p) = f.as_polynomial() {
            return Ok(self.apply_poly(p));
        }
        let mut g = Vec::new();
        for (y, k) in self.config.clusters() {
            g.extend_from_slice(Jet::of(f, y, k - 1)?.coeffs());
        }
        let n = g.len();
        Ok(self
            .solve(Matrix::from_vec(n, 1, g))
            .iter()
            .copied()
            .collect())
    }

    /// Matrix of `A(Y, ·)` on the given monomials (columns in `F`-coordinates).
    pub fn on_monomials(&self, monomials: &[MultiIndex]) -> Matrix {
        let cols: Vec<Vec<f64>> = monomials
            .iter()
            .map(|a| self.fiber_of_poly(&MultivariatePolynomial::monomial(a.clone(), 1.0)))
            .collect();
        let n = cols.first().map_or(0, Vec::len);
        self.solve(Matrix::from_fn(n, monomials.len(), |i, j| cols[j][i]))
    }

    /// `A(Y, ·)` on all monomials of degree `< 2 D_max - 1`, enough for
    /// every product of two elements of `F`.
    pub fn product_table(&self) -> ProductTable {
        let deg = 2 * self.f.deg() - 1;
        let monomials = below_degree(self.f.m(), deg);
        ProductTable {
            f: self.f.clone(),
            matrix: self.on_monomials(&monomials),
        }
    }
}

/// `A(Y, x^β)` for every `|β| < 2 D_max - 1`, indexed by graded-lex rank.
pub struct ProductTable {
    f: Transversal,
    matrix: Matrix,
}

impl ProductTable {
    /// `F`-coordinates of `A(Y, u·v)` for `u, v ∈ F` given by coordinates.
    pub fn reduce_product(&self, u: &[f64], v: &[f64]) -> Vec<f64> {
        let basis = self.f.basis();
        let mut out = vec![0.0; self.f.dim()];
        for (a, &ua) in basis.iter().zip(u) {
            if ua == 0.0 {
                continue;
            }
            for (b, &vb) in basis.iter().zip(v) {
                if vb == 0.0 {
                    continue;
                }
                let col = self.matrix.column(a.add(b).rank());
                for (o, c) in out.iter_mut().zip(col.iter()) {
                    *o += ua * vb * c;
                }
            }
        }
        out
    }

    /// `F`-coordinates of `A(Y, x^β · v)`.
    pub fn reduce_monomial_times(&self, beta: &MultiIndex, v: &[f64]) -> Vec<f64> {
        let mut out = vec![0.0; self.f.dim()];
        for (b, &vb) in self.f.basis().iter().zip(v) {
            if vb == 0.0 {
                continue;
            }
            let col = self.matrix.column(beta.add(b).rank());
            for (o, c) in out.iter_mut().zip(col.iter()) {
                *o += vb * c;
            }
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::idealspace::monomial_transversal;

    #[test]
    fn taylor_truncation_at_double_point() {
        let f = monomial_transversal(1, 3).unwrap();
        let y = WeightedConfig::new(vec![(vec![0.0], 2)]).unwrap();
        let r = Reducer::new(&f, &y, &Tolerances::default()).unwrap();
        let x3 = MultivariatePolynomial::monomial(MultiIndex::new(vec![3]), 1.0);
        assert_eq!(r.apply_poly(&x3), vec![0.0, 0.0, 0.0]);
        let table = r.product_table();
        // x · x² = x³ reduces to zero, x · x = x² reduces to zero too
        assert_eq!(
            table.reduce_product(&[0.0, 1.0, 0.0], &[0.0, 0.0, 1.0]),
            vec![0.0; 3]
        );
        assert_eq!(
            table.reduce_product(&[1.0, 1.0, 0.0], &[1.0, 1.0, 0.0]),
            vec![1.0, 2.0, 0.0]
        );
    }
}
