//! Fiber data of polynomials in double-double arithmetic.

use twofloat::TwoFloat;

use super::quadrature::grundmann_moller_dd;
use crate::polycalc::multi_index::of_degree;
use crate::polycalc::MultiIndex;

/// A polynomial as a list of terms with double-double coefficients.
/// Terms may repeat.
pub(crate) type Terms<'a> = Vec<(&'a MultiIndex, TwoFloat)>;

fn derivative_at(terms: &Terms, alpha: &MultiIndex, x: &[TwoFloat]) -> TwoFloat {
    let mut total = TwoFloat::from(0.0);
    for (beta, c) in terms {
        if beta
            .entries()
            .iter()
            .zip(alpha.entries())
            .any(|(b, a)| b < a)
        {
            continue;
        }
        let mut v = *c;
        for (j, xj) in x.iter().enumerate() {
            let (b, a) = (beta.get(j), alpha.get(j));
            for t in 0..a {
                v *= f64::from(b - t);
            }
            // TwoFloat::powi(0) is NaN at zero
            for _ in a..b {
                v *= *xj;
            }
        }
        total += v;
    }
    total
}

/// [`fiber_vector`](super::fiber_vector) of the polynomial `terms`, each
/// simplex integral taken with a rule exact for its degree.
pub(crate) fn fiber_dd(clusters: &[Vec<Vec<f64>>], m: usize, terms: &Terms) -> Vec<TwoFloat> {
    let degree = terms.iter().map(|(b, _)| b.degree()).max().unwrap_or(0) as usize;
    let mut out = Vec::new();
    for tuple in clusters {
        for j in 0..tuple.len() {
            let vertices = &tuple[..=j];
            let coalesced = vertices.iter().all(|v| v == &vertices[0]);
            let nodes: Vec<(Vec<TwoFloat>, TwoFloat)> = if coalesced {
                vec![(
                    vertices[0].iter().map(|&c| TwoFloat::from(c)).collect(),
                    TwoFloat::from(1.0),
                )]
            } else {
                grundmann_moller_dd(j, degree.saturating_sub(j) / 2)
                    .into_iter()
                    .map(|(lambda, w)| {
                        let x = (0..m)
                            .map(|c| {
                                lambda
                                    .iter()
                                    .zip(vertices)
                                    .fold(TwoFloat::from(0.0), |acc, (l, v)| acc + *l * v[c])
                            })
                            .collect();
                        (x, w)
                    })
                    .collect()
            };
            for alpha in of_degree(m, j as u32) {
                let sum = nodes.iter().fold(TwoFloat::from(0.0), |acc, (x, w)| {
                    acc + *w * derivative_at(terms, &alpha, x)
                });
                out.push(sum / alpha.factorial());
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::kergin::fiber_vector;
    use crate::polycalc::MultivariatePolynomial;

    #[test]
    fn agrees_with_double_fiber() {
        let p = MultivariatePolynomial::from_terms(
            2,
            [
                (MultiIndex::new(vec![3, 1]), 0.7),
                (MultiIndex::new(vec![0, 2]), -1.25),
                (MultiIndex::new(vec![1, 0]), 2.0),
            ],
        )
        .unwrap();
        let clusters = vec![
            vec![vec![0.1, 0.2], vec![0.15, 0.18], vec![0.05, 0.3]],
            vec![vec![-0.4, 0.5]; 2],
        ];
        let terms: Terms = p.terms().map(|(a, c)| (a, TwoFloat::from(c))).collect();
        let dd = fiber_dd(&clusters, 2, &terms);
        let plain = fiber_vector(&clusters, &p).unwrap();
        assert_eq!(dd.len(), plain.len());
        for (a, b) in dd.iter().zip(&plain) {
            assert!((f64::from(*a) - b).abs() < 1e-13, "{a:?} {b}");
        }
    }
}
