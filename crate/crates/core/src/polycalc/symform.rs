use super::multi_index::{count_of_degree, of_degree, MultiIndex};
use crate::error::{Error, Result};

/// A symmetric `r`-linear form on `ℝ^m`, stored by its raw components
/// `t_α` (`|α| = r`, graded-lex order). For the `r`-th derivative of `f`
/// these are the partials `∂^α f`.
#[derive(Clone, Debug, PartialEq)]
pub struct SymmetricForm {
    dim: usize,
    order: usize,
    coeffs: Vec<f64>,
}

impl SymmetricForm {
    pub fn zero(dim: usize, order: usize) -> Self {
        SymmetricForm {
            dim,
            order,
            coeffs: vec![0.0; count_of_degree(dim, order as u32)],
        }
    }

    /// Order-0 form holding a scalar.
    pub fn scalar(dim: usize, value: f64) -> Self {
        SymmetricForm {
            dim,
            order: 0,
            coeffs: vec![value],
        }
    }

    pub fn from_coeffs(dim: usize, order: usize, coeffs: Vec<f64>) -> Result<Self> {
        let expected = count_of_degree(dim, order as u32);
        if coeffs.len() != expected {
            return Err(Error::DimensionMismatch {
                expected,
                got: coeffs.len(),
            });
        }
        Ok(SymmetricForm { dim, order, coeffs })
    }

    pub fn from_fn(
        dim: usize,
        order: usize,
        mut component: impl FnMut(&MultiIndex) -> f64,
    ) -> Self {
        let coeffs = of_degree(dim, order as u32)
            .iter()
            .map(&mut component)
            .collect();
        SymmetricForm { dim, order, coeffs }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn coeffs(&self) -> &[f64] {
        &self.coeffs
    }

    pub fn coeff(&self, alpha: &MultiIndex) -> f64 {
        self.coeffs[alpha.rank_in_degree()]
    }

    /// `T(v_1, …, v_r) = Σ_{j_1..j_r} t_{e_{j_1}+…+e_{j_r}} ∏_k v_{k,j_k}`.
    pub fn eval(&self, vectors: &[&[f64]]) -> Result<f64> {
        if vectors.len() != self.order {
            return Err(Error::DimensionMismatch {
                expected: self.order,
                got: vectors.len(),
            });
        }
        if let Some(v) = vectors.iter().find(|v| v.len() != self.dim) {
            return Err(Error::DimensionMismatch {
                expected: self.dim,
                got: v.len(),
            });
        }
        let mut counts = vec![0u32; self.dim];
        Ok(self.eval_slots(vectors, 0, &mut counts, 1.0))
    }

    fn eval_slots(
        &self,
        vectors: &[&[f64]],
        slot: usize,
        counts: &mut Vec<u32>,
        weight: f64,
    ) -> f64 {
        if slot == vectors.len() {
            let alpha = MultiIndex::new(counts.clone());
            return weight * self.coeffs[alpha.rank_in_degree()];
        }
        let mut acc = 0.0;
        for j in 0..self.dim {
            let vj = vectors[slot][j];
            if vj == 0.0 {
                continue;
            }
            counts[j] += 1;
            acc += self.eval_slots(vectors, slot + 1, counts, weight * vj);
            counts[j] -= 1;
        }
        acc
    }

    /// `T(v, …, v) = Σ_α t_α · multinomial(r; α) · v^α`.
    pub fn eval_diagonal(&self, v: &[f64]) -> Result<f64> {
        if v.len() != self.dim {
            return Err(Error::DimensionMismatch {
                expected: self.dim,
                got: v.len(),
            });
        }
        Ok(of_degree(self.dim, self.order as u32)
            .iter()
            .zip(&self.coeffs)
            .map(|(a, t)| t * a.multinomial() * a.eval_monomial(v))
            .sum())
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_same_shape(other)?;
        Ok(SymmetricForm {
            dim: self.dim,
            order: self.order,
            coeffs: self
                .coeffs
                .iter()
                .zip(&other.coeffs)
                .map(|(a, b)| a + b)
                .collect(),
        })
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.scale(-1.0))
    }

    pub fn scale(&self, s: f64) -> Self {
        SymmetricForm {
            dim: self.dim,
            order: self.order,
            coeffs: self.coeffs.iter().map(|c| c * s).collect(),
        }
    }

    pub fn max_abs(&self) -> f64 {
        self.coeffs.iter().fold(0.0, |m, c| m.max(c.abs()))
    }

    fn check_same_shape(&self, other: &Self) -> Result<()> {
        if self.dim != other.dim || self.order != other.order {
            return Err(Error::DimensionMismatch {
                expected: self.coeffs.len(),
                got: other.coeffs.len(),
            });
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn second_derivative_of_square() {
        let t = SymmetricForm::from_coeffs(1, 2, vec![2.0]).unwrap();
        assert_eq!(t.eval(&[&[2.0], &[1.0]]).unwrap(), 4.0);
    }

    #[test]
    fn zero_argument_gives_zero() {
        let t = SymmetricForm::from_coeffs(2, 2, vec![1.5, -2.0, 3.0]).unwrap();
        assert_eq!(t.eval(&[&[0.0, 0.0], &[0.3, 0.7]]).unwrap(), 0.0);
    }

    #[test]
    fn single_cross_term() {
        // coefficients in order (2,0), (1,1), (0,2)
        let t = SymmetricForm::from_coeffs(2, 2, vec![0.0, 1.0, 0.0]).unwrap();
        assert_eq!(t.eval(&[&[1.0, 0.0], &[0.0, 1.0]]).unwrap(), 1.0);
    }

    #[test]
    fn diagonal_matches_slotwise() {
        let t = SymmetricForm::from_fn(3, 3, |a| a.rank() as f64 * 0.25 - 1.0);
        let v = [0.3, -1.2, 0.8];
        let slot = t.eval(&[&v, &v, &v]).unwrap();
        let diag = t.eval_diagonal(&v).unwrap();
        assert!((slot - diag).abs() < 1e-12);
    }

    #[test]
    fn arity_is_checked() {
        let t = SymmetricForm::zero(2, 2);
        assert!(t.eval(&[&[1.0, 0.0]]).is_err());
        assert!(t.eval(&[&[1.0], &[1.0]]).is_err());
    }
}
