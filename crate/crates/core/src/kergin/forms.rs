use std::collections::HashMap;

use twofloat::TwoFloat;

use super::quadrature::{grundmann_moller, grundmann_moller_dd};
use crate::config::MERGE_TOLERANCE;
use crate::error::{Error, Result};
use crate::polycalc::{
    barycentric_moment, AffineSimplex, Jet, MultivariatePolynomial, SmoothFunction, SymmetricForm,
};

/// Relative gap between the degree-7 and degree-9 rules above which a
/// black-box integral is reported as unconverged.
pub const QUADRATURE_TOLERANCE: f64 = 1e-7;

/// `ℐ(f, σ) = ∫_{Δ^r} f^{(r)} ∘ σ`, a symmetric `r`-form on `ℝ^m`, with the
/// simplex carrying total measure one.
pub fn simplex_form(f: &dyn SmoothFunction, sigma: &AffineSimplex) -> Result<SymmetricForm> {
    let (form, estimate) = simplex_form_estimated(f, sigma)?;
    let scale = form.max_abs().max(1.0);
    if estimate > QUADRATURE_TOLERANCE * scale {
        return Err(Error::QuadratureNonConvergence { estimate });
    }
    Ok(form)
}

/// Like [`simplex_form`] but never fails on convergence; returns the
/// quadrature error estimate (zero for polynomials and coalesced vertices).
pub fn simplex_form_estimated(
    f: &dyn SmoothFunction,
    sigma: &AffineSimplex,
) -> Result<(SymmetricForm, f64)> {
    if sigma.dim() != f.dim() {
        return Err(Error::DimensionMismatch {
            expected: f.dim(),
            got: sigma.dim(),
        });
    }
    let r = sigma.order();
    if is_coalesced(sigma) {
        return Ok((f.derivative_tensor(&sigma.vertices()[0], r)?, 0.0));
    }
    if let Some(p) = f.as_polynomial() {
        return Ok((polynomial_form(p, sigma), 0.0));
    }
    let coarse = quadrature_form(f, sigma, 3)?;
    let fine = quadrature_form(f, sigma, 4)?;
    let estimate = fine
        .coeffs()
        .iter()
        .zip(coarse.coeffs())
        .fold(0.0f64, |m, (a, b)| m.max((a - b).abs()));
    Ok((fine, estimate))
}

fn is_coalesced(sigma: &AffineSimplex) -> bool {
    let v = sigma.vertices();
    v.iter().all(|x| x == &v[0])
}

/// Exact integration: each component `∂^α f ∘ σ` is a polynomial in the
/// barycentric coordinates and integrates monomial by monomial.
fn polynomial_form(p: &MultivariatePolynomial, sigma: &AffineSimplex) -> SymmetricForm {
    let r = sigma.order();
    let mut moments: HashMap<Vec<u32>, f64> = HashMap::new();
    SymmetricForm::from_fn(p.dim(), r, |alpha| {
        let g = p.derivative(alpha);
        if g.is_zero() {
            return 0.0;
        }
        if g.degree() == Some(0) {
            return g.coeff(&crate::polycalc::MultiIndex::zero(p.dim()));
        }
        let pulled = g.pullback_linear(sigma.vertices());
        pulled
            .terms()
            .map(|(a, c)| {
                let mut key = a.entries().to_vec();
                key.sort_unstable();
                let mu = *moments
                    .entry(key)
                    .or_insert_with_key(|k| barycentric_moment(k));
                c * mu
            })
            .sum()
    })
}

fn quadrature_form(
    f: &dyn SmoothFunction,
    sigma: &AffineSimplex,
    s: usize,
) -> Result<SymmetricForm> {
    let r = sigma.order();
    let mut acc: Vec<TwoFloat> = Vec::new();
    for ((node, _), (_, weight)) in grundmann_moller(r, s)
        .into_iter()
        .zip(grundmann_moller_dd(r, s))
    {
        let x = sigma.point_at(&node);
        let t = f.derivative_tensor(&x, r)?;
        acc.resize(t.coeffs().len(), TwoFloat::from(0.0));
        for (a, &c) in acc.iter_mut().zip(t.coeffs()) {
            *a += weight * c;
        }
    }
    SymmetricForm::from_coeffs(f.dim(), r, acc.into_iter().map(f64::from).collect())
}

/// `|ℐ(f,σ)(v_1..v_{r-1}, x_j - x_i) - r·(ℐ(f,∂_iσ) - ℐ(f,∂_jσ))(v_1..v_{r-1})|`.
pub fn boundary_identity_residual(
    f: &dyn SmoothFunction,
    sigma: &AffineSimplex,
    i: usize,
    j: usize,
    vectors: &[&[f64]],
) -> Result<f64> {
    let r = sigma.order();
    if r == 0 || i > r || j > r || i == j {
        return Err(Error::InvalidInput(format!(
            "vertex indices ({i}, {j}) invalid for a simplex of order {r}"
        )));
    }
    let v = sigma.vertices();
    let direction: Vec<f64> = v[j].iter().zip(&v[i]).map(|(a, b)| a - b).collect();
    let mut args: Vec<&[f64]> = vectors.to_vec();
    args.push(&direction);
    let lhs = simplex_form(f, sigma)?.eval(&args)?;
    let face_i = simplex_form(f, &sigma.face(i))?.eval(vectors)?;
    let face_j = simplex_form(f, &sigma.face(j))?.eval(vectors)?;
    Ok((lhs - r as f64 * (face_i - face_j)).abs())
}

/// Right-hand side of the Newton-type expansion
/// `Σ_i (1/i!)·ℐ(f,[x_0..x_i])(x_r - x_0, …, x_r - x_{i-1})`, which equals
/// `f(x_r)`.
pub fn newton_expansion(f: &dyn SmoothFunction, points: &[Vec<f64>]) -> Result<f64> {
    let sigma = AffineSimplex::new(points.to_vec())?;
    let r = sigma.order();
    let last = &points[r];
    let diffs: Vec<Vec<f64>> = points[..r]
        .iter()
        .map(|x| last.iter().zip(x).map(|(a, b)| a - b).collect())
        .collect();
    let mut total = 0.0;
    let mut fact = 1.0;
    for i in 0..=r {
        if i > 0 {
            fact *= i as f64;
        }
        let form = simplex_form(f, &sigma.prefix(i))?;
        let args: Vec<&[f64]> = diffs[..i].iter().map(Vec::as_slice).collect();
        total += form.eval(&args)? / fact;
    }
    Ok(total)
}

/// `(ℐ(f,[x_1]), ℐ(f,[x_1,x_2]), …, ℐ(f,[x_1,…,x_k]))`.
pub fn g_map(cluster: &[Vec<f64>], f: &dyn SmoothFunction) -> Result<Vec<SymmetricForm>> {
    let sigma = AffineSimplex::new(cluster.to_vec())?;
    (0..cluster.len())
        .map(|j| simplex_form(f, &sigma.prefix(j)))
        .collect()
}

/// Outcome of [`vanishing_certificate`].
#[derive(Clone, Debug)]
pub struct VanishingCertificate {
    /// All prefix integrals vanish within tolerance.
    pub vanishes: bool,
    /// `max |ℐ(f,[x_0..x_j])|` for each prefix.
    pub prefix_residuals: Vec<f64>,
    /// Distinct points of the tuple with multiplicity and the largest
    /// Taylor coefficient of `j^{k-1}_y f`.
    pub jet_residuals: Vec<(Vec<f64>, u32, f64)>,
    /// Whether the jet check agrees with the integral check whenever the
    /// integrals vanish.
    pub jets_confirmed: bool,
}

/// Checks `ℐ(f,[x_0..x_j]) = 0` for every prefix and, when it holds,
/// cross-checks by direct jet computation that `j^{k-1}_y f = 0` for every
/// point `y` repeated `k` times in the tuple.
pub fn vanishing_certificate(
    f: &dyn SmoothFunction,
    tuple: &[Vec<f64>],
    tol: f64,
) -> Result<VanishingCertificate> {
    let forms = g_map(tuple, f)?;
    let prefix_residuals: Vec<f64> = forms.iter().map(SymmetricForm::max_abs).collect();
    let vanishes = prefix_residuals.iter().all(|&r| r <= tol);
    let mut jet_residuals = Vec::new();
    for (y, k) in multiplicities(tuple) {
        let jet = Jet::of(f, &y, k - 1)?;
        jet_residuals.push((y, k, jet.max_abs()));
    }
    let jets_zero = jet_residuals.iter().all(|(_, _, r)| *r <= tol);
    Ok(VanishingCertificate {
        vanishes,
        prefix_residuals,
        jet_residuals,
        jets_confirmed: !vanishes || jets_zero,
    })
}

/// Distinct points of a tuple with their multiplicities, in order of first
/// appearance.
pub fn multiplicities(tuple: &[Vec<f64>]) -> Vec<(Vec<f64>, u32)> {
    let mut out: Vec<(Vec<f64>, u32)> = Vec::new();
    for x in tuple {
        match out
            .iter_mut()
            .find(|(y, _)| crate::config::distance(x, y) <= MERGE_TOLERANCE)
        {
            Some((_, k)) => *k += 1,
            None => out.push((x.clone(), 1)),
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polycalc::{MultiIndex, PartialsOracle};

    fn mono1(k: u32) -> MultivariatePolynomial {
        MultivariatePolynomial::monomial(MultiIndex::new(vec![k]), 1.0)
    }

    fn simplex(points: &[f64]) -> AffineSimplex {
        AffineSimplex::new(points.iter().map(|&x| vec![x]).collect()).unwrap()
    }

    #[test]
    fn zero_simplex_is_evaluation() {
        let f = mono1(3);
        assert_eq!(simplex_form(&f, &simplex(&[2.0])).unwrap().coeffs(), &[8.0]);
    }

    #[test]
    fn one_dimensional_examples() {
        let form = simplex_form(&mono1(2), &simplex(&[0.0, 1.0])).unwrap();
        assert!(
            (form.coeffs()[0] - 1.0).abs() < 1e-15,
            "∫ f' = f(1) - f(0) = 1"
        );
        let form = simplex_form(&mono1(2), &simplex(&[0.0, 0.5, 1.0])).unwrap();
        assert!((form.coeffs()[0] - 2.0).abs() < 1e-15);
        let form = simplex_form(&mono1(3), &simplex(&[0.0, 0.0, 1.0])).unwrap();
        assert!((form.coeffs()[0] - 2.0).abs() < 1e-14, "∫ 6λ_2 = 2");
        // 6(λ_1 + λ_2) averages to 6·2/3
        let form = simplex_form(&mono1(3), &simplex(&[0.0, 1.0, 1.0])).unwrap();
        assert!((form.coeffs()[0] - 4.0).abs() < 1e-14);
    }

    #[test]
    fn boundary_identity_small_example() {
        let sigma = simplex(&[0.0, 1.0, 2.0]);
        let res = boundary_identity_residual(&mono1(2), &sigma, 0, 2, &[&[1.0]]).unwrap();
        assert!(res < 1e-12);
        let lin = MultivariatePolynomial::from_terms(
            2,
            [
                (MultiIndex::new(vec![1, 0]), 2.0),
                (MultiIndex::new(vec![0, 1]), -1.0),
            ],
        )
        .unwrap();
        let tri = AffineSimplex::new(vec![vec![0.0, 0.0], vec![1.0, 0.3], vec![0.2, 0.9]]).unwrap();
        assert!(boundary_identity_residual(&lin, &tri, 1, 2, &[&[0.5, 0.5]]).unwrap() < 1e-14);
        assert!(boundary_identity_residual(&lin, &tri, 1, 1, &[&[0.5, 0.5]]).is_err());
    }

    #[test]
    fn newton_expansion_example() {
        let pts = vec![vec![0.0], vec![1.0], vec![2.0]];
        assert!((newton_expansion(&mono1(2), &pts).unwrap() - 4.0).abs() < 1e-14);
        assert_eq!(newton_expansion(&mono1(2), &[vec![3.0]]).unwrap(), 9.0);
    }

    #[test]
    fn vanishing_certificates() {
        // x²(x - 1) = x³ - x²
        let f = &mono1(3) - &mono1(2);
        let tuple = vec![vec![0.0], vec![0.0], vec![1.0]];
        let cert = vanishing_certificate(&f, &tuple, 1e-12).unwrap();
        assert!(cert.vanishes && cert.jets_confirmed);
        assert_eq!(cert.jet_residuals.len(), 2);

        let cert = vanishing_certificate(&mono1(1), &[vec![0.0], vec![0.0]], 1e-12).unwrap();
        assert!(!cert.vanishes);
        assert_eq!(cert.prefix_residuals[1], 1.0);

        let zero = MultivariatePolynomial::zero(1);
        let cert = vanishing_certificate(&zero, &tuple, 0.0).unwrap();
        assert!(cert.vanishes && cert.prefix_residuals.iter().all(|&r| r == 0.0));
    }

    #[test]
    fn black_box_matches_polynomial_path() {
        // f = sin(x) + x y in two variables, via explicit partials
        let oracle = PartialsOracle::new(2, |x: &[f64], a: &MultiIndex| {
            let (i, j) = (a.get(0), a.get(1));
            let s = match i % 4 {
                0 => x[0].sin(),
                1 => x[0].cos(),
                2 => -x[0].sin(),
                _ => -x[0].cos(),
            };
            let sin_part = if j == 0 { s } else { 0.0 };
            let xy = match (i, j) {
                (0, 0) => x[0] * x[1],
                (1, 0) => x[1],
                (0, 1) => x[0],
                (1, 1) => 1.0,
                _ => 0.0,
            };
            sin_part + xy
        });
        let sigma =
            AffineSimplex::new(vec![vec![0.1, 0.0], vec![0.3, 0.2], vec![0.0, 0.4]]).unwrap();
        let (form, est) = simplex_form_estimated(&oracle, &sigma).unwrap();
        assert!(est < 1e-9);
        // Boundary identity holds for the black box too, up to quadrature error.
        let res = boundary_identity_residual(&oracle, &sigma, 0, 1, &[&[1.0, -1.0]]).unwrap();
        assert!(res < 1e-9, "{res}");
        assert_eq!(form.order(), 2);
    }
}
