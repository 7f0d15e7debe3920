use std::collections::BTreeMap;
use std::ops::{Add, Mul, Neg, Sub};

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::multi_index::MultiIndex;
use crate::error::{Error, Result};

/// A real polynomial in `dim` variables, stored as a map from exponent to
/// coefficient in graded-lex order. Exact zeros are never stored.
#[derive(Clone, Debug, PartialEq)]
pub struct MultivariatePolynomial {
    dim: usize,
    coeffs: BTreeMap<MultiIndex, f64>,
}

impl MultivariatePolynomial {
    pub fn zero(dim: usize) -> Self {
        MultivariatePolynomial {
            dim,
            coeffs: BTreeMap::new(),
        }
    }

    pub fn constant(dim: usize, c: f64) -> Self {
        Self::monomial(MultiIndex::zero(dim), c)
    }

    pub fn monomial(alpha: MultiIndex, c: f64) -> Self {
        let mut p = Self::zero(alpha.dim());
        p.add_term(alpha, c);
        p
    }

    /// The coordinate function `x_j`.
    pub fn variable(dim: usize, j: usize) -> Self {
        Self::monomial(MultiIndex::unit(dim, j), 1.0)
    }

    pub fn from_terms<I>(dim: usize, terms: I) -> Result<Self>
    where
        I: IntoIterator<Item = (MultiIndex, f64)>,
    {
        let mut p = Self::zero(dim);
        for (alpha, c) in terms {
            if alpha.dim() != dim {
                return Err(Error::DimensionMismatch {
                    expected: dim,
                    got: alpha.dim(),
                });
            }
            p.add_term(alpha, c);
        }
        Ok(p)
    }

    /// Builds `Σ coords[i] · basis[i]`.
    pub fn from_coords(dim: usize, basis: &[MultiIndex], coords: &[f64]) -> Self {
        debug_assert_eq!(basis.len(), coords.len());
        let mut p = Self::zero(dim);
        for (alpha, &c) in basis.iter().zip(coords) {
            p.add_term(alpha.clone(), c);
        }
        p
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Total degree, `None` for the zero polynomial.
    pub fn degree(&self) -> Option<u32> {
        self.coeffs.keys().map(MultiIndex::degree).max()
    }

    pub fn coeff(&self, alpha: &MultiIndex) -> f64 {
        self.coeffs.get(alpha).copied().unwrap_or(0.0)
    }

    pub fn terms(&self) -> impl Iterator<Item = (&MultiIndex, f64)> {
        self.coeffs.iter().map(|(a, &c)| (a, c))
    }

    pub fn len(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn add_term(&mut self, alpha: MultiIndex, c: f64) {
        if c == 0.0 {
            return;
        }
        let entry = self.coeffs.entry(alpha);
        match entry {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                let s = *o.get() + c;
                if s == 0.0 {
                    o.remove();
                } else {
                    *o.get_mut() = s;
                }
            }
        }
    }

    /// Coefficients against an ordered monomial basis. Terms outside the
    /// basis are reported as an error since they would be silently lost.
    pub fn coords(&self, basis: &[MultiIndex]) -> Result<Vec<f64>> {
        let out: Vec<f64> = basis.iter().map(|a| self.coeff(a)).collect();
        if let Some((alpha, _)) = self
            .coeffs
            .iter()
            .find(|(a, _)| basis.binary_search(a).is_err())
        {
            return Err(Error::InvalidInput(format!(
                "monomial {alpha} lies outside the coordinate basis"
            )));
        }
        Ok(out)
    }

    pub fn eval(&self, x: &[f64]) -> Result<f64> {
        if x.len() != self.dim {
            return Err(Error::DimensionMismatch {
                expected: self.dim,
                got: x.len(),
            });
        }
        Ok(self
            .coeffs
            .iter()
            .map(|(a, c)| c * a.eval_monomial(x))
            .sum())
    }

    pub fn scale(&self, s: f64) -> Self {
        let mut out = Self::zero(self.dim);
        for (a, &c) in &self.coeffs {
            out.add_term(a.clone(), c * s);
        }
        out
    }

    /// `∂/∂x_j`
    pub fn partial(&self, j: usize) -> Self {
        let mut out = Self::zero(self.dim);
        let e = MultiIndex::unit(self.dim, j);
        for (a, &c) in &self.coeffs {
            if let Some(b) = a.checked_sub(&e) {
                out.add_term(b, c * f64::from(a.get(j)));
            }
        }
        out
    }

    /// `∂^α`, computed in one pass with falling factorials.
    pub fn derivative(&self, alpha: &MultiIndex) -> Self {
        let mut out = Self::zero(self.dim);
        for (a, &c) in &self.coeffs {
            if let Some(b) = a.checked_sub(alpha) {
                let factor: f64 = a
                    .entries()
                    .iter()
                    .zip(alpha.entries())
                    .map(|(&ai, &ki)| ((ai - ki + 1)..=ai).map(f64::from).product::<f64>())
                    .product();
                out.add_term(b, c * factor);
            }
        }
        out
    }

    /// Substitutes each variable `x_c` by the affine-free linear form
    /// `Σ_i vertices[i][c] · λ_i`, giving a polynomial in
    /// `vertices.len()` variables (barycentric coordinates on a simplex).
    pub fn pullback_linear(&self, vertices: &[Vec<f64>]) -> Self {
        let n = vertices.len();
        let forms: Vec<Self> = (0..self.dim)
            .map(|c| {
                let mut l = Self::zero(n);
                for (i, v) in vertices.iter().enumerate() {
                    l.add_term(MultiIndex::unit(n, i), v[c]);
                }
                l
            })
            .collect();
        self.substitute(&forms, n)
    }

    /// Substitutes `x_c ↦ images[c]`, all polynomials in `target_dim` variables.
    pub fn substitute(&self, images: &[Self], target_dim: usize) -> Self {
        debug_assert_eq!(images.len(), self.dim);
        let max_pow: Vec<u32> = (0..self.dim)
            .map(|c| self.coeffs.keys().map(|a| a.get(c)).max().unwrap_or(0))
            .collect();
        let powers: Vec<Vec<Self>> = images
            .iter()
            .zip(&max_pow)
            .map(|(img, &top)| {
                let mut pw = vec![Self::constant(target_dim, 1.0)];
                for k in 1..=top as usize {
                    let next = &pw[k - 1] * img;
                    pw.push(next);
                }
                pw
            })
            .collect();
        let mut out = Self::zero(target_dim);
        for (a, &c) in &self.coeffs {
            let mut term = Self::constant(target_dim, c);
            for (comp, &e) in a.entries().iter().enumerate() {
                if e > 0 {
                    term = &term * &powers[comp][e as usize];
                }
            }
            out = &out + &term;
        }
        out
    }

    /// Largest absolute coefficient.
    pub fn max_abs_coeff(&self) -> f64 {
        self.coeffs.values().fold(0.0, |m, c| m.max(c.abs()))
    }

    /// Euclidean norm of the coefficient vector.
    pub fn coeff_norm(&self) -> f64 {
        self.coeffs.values().map(|c| c * c).sum::<f64>().sqrt()
    }
}

impl Add for &MultivariatePolynomial {
    type Output = MultivariatePolynomial;

    fn add(self, rhs: &MultivariatePolynomial) -> MultivariatePolynomial {
        assert_eq!(self.dim, rhs.dim, "polynomial dimension mismatch");
        let mut out = self.clone();
        for (a, &c) in &rhs.coeffs {
            out.add_term(a.clone(), c);
        }
        out
    }
}

impl Sub for &MultivariatePolynomial {
    type Output = MultivariatePolynomial;

    fn sub(self, rhs: &MultivariatePolynomial) -> MultivariatePolynomial {
        assert_eq!(self.dim, rhs.dim, "polynomial dimension mismatch");
        let mut out = self.clone();
        for (a, &c) in &rhs.coeffs {
            out.add_term(a.clone(), -c);
        }
        out
    }
}

impl Mul for &MultivariatePolynomial {
    type Output = MultivariatePolynomial;

    fn mul(self, rhs: &MultivariatePolynomial) -> MultivariatePolynomial {
        assert_eq!(self.dim, rhs.dim, "polynomial dimension mismatch");
        let mut out = MultivariatePolynomial::zero(self.dim);
        for (a, &c) in &self.coeffs {
            for (b, &d) in &rhs.coeffs {
                out.add_term(a.add(b), c * d);
            }
        }
        out
    }
}

impl Neg for &MultivariatePolynomial {
    type Output = MultivariatePolynomial;

    fn neg(self) -> MultivariatePolynomial {
        self.scale(-1.0)
    }
}

#[derive(Serialize, Deserialize)]
struct TermRepr {
    alpha: Vec<u32>,
    c: f64,
}

#[derive(Serialize, Deserialize)]
struct PolyRepr {
    dim: usize,
    terms: Vec<TermRepr>,
}

impl Serialize for MultivariatePolynomial {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        PolyRepr {
            dim: self.dim,
            terms: self
                .coeffs
                .iter()
                .map(|(a, &c)| TermRepr {
                    alpha: a.entries().to_vec(),
                    c,
                })
                .collect(),
        }
        .serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for MultivariatePolynomial {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let repr = PolyRepr::deserialize(deserializer)?;
        MultivariatePolynomial::from_terms(
            repr.dim,
            repr.terms
                .into_iter()
                .map(|t| (MultiIndex::new(t.alpha), t.c)),
        )
        .map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn x2y_plus_y3() -> MultivariatePolynomial {
        MultivariatePolynomial::from_terms(
            2,
            [
                (MultiIndex::new(vec![2, 1]), 1.0),
                (MultiIndex::new(vec![0, 3]), 1.0),
            ],
        )
        .unwrap()
    }

    #[test]
    fn eval_examples() {
        assert_eq!(
            MultivariatePolynomial::constant(2, 1.0)
                .eval(&[3.0, 4.0])
                .unwrap(),
            1.0
        );
        let x2 = MultivariatePolynomial::monomial(MultiIndex::new(vec![2]), 1.0);
        assert_eq!(x2.eval(&[2.0]).unwrap(), 4.0);
        assert_eq!(x2y_plus_y3().eval(&[1.0, 2.0]).unwrap(), 10.0);
    }

    #[test]
    fn eval_dimension_mismatch() {
        let err = x2y_plus_y3().eval(&[1.0]).unwrap_err();
        assert!(matches!(
            err,
            Error::DimensionMismatch {
                expected: 2,
                got: 1
            }
        ));
    }

    #[test]
    fn cancellation_drops_terms() {
        let p = x2y_plus_y3();
        assert!((&p - &p).is_zero());
        assert_eq!((&p - &p).degree(), None);
    }

    #[test]
    fn derivative_matches_repeated_partials() {
        let p = x2y_plus_y3();
        let d = p.derivative(&MultiIndex::new(vec![1, 1]));
        assert_eq!(d, p.partial(0).partial(1));
        assert_eq!(d.eval(&[3.0, 0.0]).unwrap(), 6.0);
    }

    #[test]
    fn json_is_sorted_and_round_trips() {
        let p = x2y_plus_y3();
        let s = serde_json::to_string(&p).unwrap();
        assert_eq!(
            s,
            r#"{"dim":2,"terms":[{"alpha":[2,1],"c":1.0},{"alpha":[0,3],"c":1.0}]}"#
        );
        let back: MultivariatePolynomial = serde_json::from_str(&s).unwrap();
        assert_eq!(back, p);
        let bad = r#"{"dim":2,"terms":[{"alpha":[1],"c":1.0}]}"#;
        assert!(serde_json::from_str::<MultivariatePolynomial>(bad).is_err());
    }
}
