use super::multi_index::MultiIndex;
use super::polynomial::MultivariatePolynomial;
use super::symform::SymmetricForm;
use crate::error::{Error, Result};

/// A smooth function on a chart `ℝ^m`, known through its derivative
/// tensors. Polynomials answer exactly; other implementors are black boxes.
pub trait SmoothFunction: Sync {
    fn dim(&self) -> usize;

    /// `f^{(r)}(x)` with components `∂^α f(x)`, `|α| = r`.
    fn derivative_tensor(&self, x: &[f64], order: usize) -> Result<SymmetricForm>;

    fn value(&self, x: &[f64]) -> Result<f64> {
        Ok(self.derivative_tensor(x, 0)?.coeffs()[0])
    }

    /// Exact representation, if there is one. Integration switches to
    /// closed-form moments when this returns `Some`.
    fn as_polynomial(&self) -> Option<&MultivariatePolynomial> {
        None
    }
}

impl SmoothFunction for MultivariatePolynomial {
    fn dim(&self) -> usize {
        MultivariatePolynomial::dim(self)
    }

    fn derivative_tensor(&self, x: &[f64], order: usize) -> Result<SymmetricForm> {
        if x.len() != self.dim() {
            return Err(Error::DimensionMismatch {
                expected: self.dim(),
                got: x.len(),
            });
        }
        let mut failure = None;
        let form = SymmetricForm::from_fn(self.dim(), order, |alpha| {
            self.derivative(alpha).eval(x).unwrap_or_else(|e| {
                failure = Some(e);
                f64::NAN
            })
        });
        match failure {
            Some(e) => Err(e),
            None => Ok(form),
        }
    }

    fn as_polynomial(&self) -> Option<&MultivariatePolynomial> {
        Some(self)
    }
}

/// Black-box function given by a closure returning `∂^α f(x)`.
pub struct PartialsOracle<F> {
    dim: usize,
    partial: F,
}

impl<F> PartialsOracle<F>
where
    F: Fn(&[f64], &MultiIndex) -> f64 + Sync,
{
    pub fn new(dim: usize, partial: F) -> Self {
        PartialsOracle { dim, partial }
    }
}

impl<F> SmoothFunction for PartialsOracle<F>
where
    F: Fn(&[f64], &MultiIndex) -> f64 + Sync,
{
    fn dim(&self) -> usize {
        self.dim
    }

    fn derivative_tensor(&self, x: &[f64], order: usize) -> Result<SymmetricForm> {
        if x.len() != self.dim {
            return Err(Error::DimensionMismatch {
                expected: self.dim,
                got: x.len(),
            });
        }
        let form = SymmetricForm::from_fn(self.dim, order, |alpha| (self.partial)(x, alpha));
        if form.coeffs().iter().any(|c| !c.is_finite()) {
            return Err(Error::OracleFailure(format!(
                "non-finite derivative of order {order} at {x:?}"
            )));
        }
        Ok(form)
    }
}

/// `f^{(r)}(x)`.
pub fn derivative_tensor(f: &dyn SmoothFunction, x: &[f64], order: usize) -> Result<SymmetricForm> {
    f.derivative_tensor(x, order)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn examples() {
        let x2 = MultivariatePolynomial::monomial(MultiIndex::new(vec![2]), 1.0);
        let t = derivative_tensor(&x2, &[5.0], 2).unwrap();
        assert_eq!(t.coeffs(), &[2.0]);
        assert_eq!(derivative_tensor(&x2, &[5.0], 0).unwrap().coeffs(), &[25.0]);

        let x2y = MultivariatePolynomial::monomial(MultiIndex::new(vec![2, 1]), 1.0);
        let t = derivative_tensor(&x2y, &[1.0, 1.0], 2).unwrap();
        // (2,0), (1,1), (0,2)
        assert_eq!(t.coeffs(), &[2.0, 2.0, 0.0]);
    }

    #[test]
    fn oracle_failure_propagates() {
        let bad = PartialsOracle::new(1, |x: &[f64], _: &MultiIndex| 1.0 / x[0]);
        assert!(bad.derivative_tensor(&[0.0], 1).is_err());
        assert!(matches!(
            bad.derivative_tensor(&[0.0, 1.0], 1),
            Err(Error::DimensionMismatch { .. })
        ));
    }
}
