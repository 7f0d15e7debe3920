//! Randomized invariant suites, one per acceptance criterion. Every suite
//! is deterministic for a given seed.

use std::f64::consts::PI;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::config::WeightedConfig;
use crate::error::Result;
use crate::idealspace::{
    change_transversal_restrict, change_transversal_section, ideal_from_clusters,
    ideal_from_points, injectivity_probe, membership_oracle, monomial_transversal,
    primary_decomposition, random_config, random_ideal_point, random_weights, subspace_distance,
    vanishing_subspace, wspec_from_algebra, IdealPoint, QuotientAlgebra, Subspace, Transversal,
};
use crate::kergin::{boundary_identity_residual, newton_expansion, InterpolationOperator};
use crate::limits::{
    default_schedule, kernel_projector, limit_ideal, presets, subspace_at, DEFAULT_ORDER,
};
use crate::linalg::{null_space, Matrix};
use crate::oracles::{
    exact_derivative, hermite_divided_differences, hermite_divided_differences_exact,
    taylor_truncation,
};
use crate::polycalc::multi_index::below_degree;
use crate::polycalc::{
    AffineSimplex, MultiIndex, MultivariatePolynomial, PartialsOracle, SmoothFunction,
};
use crate::tolerances::Tolerances;

pub const DEFAULT_SEED: u64 = 20240517;

/// One measured quantity of a suite.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Check {
    pub label: String,
    pub worst: f64,
    pub threshold: f64,
    pub passed: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SuiteResult {
    pub criterion: u8,
    pub name: String,
    pub cases: usize,
    pub passed: bool,
    pub checks: Vec<Check>,
    /// First failure encountered, if any.
    pub failure: Option<String>,
}

impl SuiteResult {
    fn new(criterion: u8, name: &str) -> Self {
        SuiteResult {
            criterion,
            name: name.into(),
            cases: 0,
            passed: true,
            checks: Vec::new(),
            failure: None,
        }
    }

    /// Records `value` under `label`; a check passes when `value < threshold`
    /// (or `value > threshold` when `above` is set).
    fn record(&mut self, label: &str, value: f64, threshold: f64, above: bool) {
        let ok = if above {
            value > threshold
        } else {
            value < threshold
        };
        match self.checks.iter_mut().find(|c| c.label == label) {
            Some(c) => {
                let worse = if above {
                    value < c.worst
                } else {
                    value > c.worst
                };
                if worse || value.is_nan() {
                    c.worst = value;
                }
                c.passed &= ok;
            }
            None => self.checks.push(Check {
                label: label.into(),
                worst: value,
                threshold,
                passed: ok,
            }),
        }
        if !ok {
            self.passed = false;
            if self.failure.is_none() {
                self.failure = Some(format!("{label} = {value:.3e} (case {})", self.cases));
            }
        }
    }

    fn fail(&mut self, message: String) {
        self.passed = false;
        if self.failure.is_none() {
            self.failure = Some(format!("case {}: {message}", self.cases));
        }
    }

    /// One line: `[PASS] 4 oracle soundness ... worst values`.
    pub fn summary_line(&self) -> String {
        let status = if self.passed { "PASS" } else { "FAIL" };
        let checks: Vec<String> = self
            .checks
            .iter()
            .map(|c| format!("{}={:.3e} (tol {:.0e})", c.label, c.worst, c.threshold))
            .collect();
        let mut line = format!(
            "[{status}] criterion {}: {} ({} cases) {}",
            self.criterion,
            self.name,
            self.cases,
            checks.join(", ")
        );
        if let Some(f) = &self.failure {
            line.push_str(&format!(" -- {f}"));
        }
        line
    }
}

/// Case counts for each suite.
#[derive(Clone, Copy, Debug)]
pub struct SuiteSizes {
    pub identities: usize,
    pub interpolation: usize,
    pub classical: usize,
    pub oracle: usize,
    pub algebra: usize,
    pub transversal_change: usize,
    pub injectivity: usize,
}

impl Default for SuiteSizes {
    fn default() -> Self {
        SuiteSizes {
            identities: 200,
            interpolation: 100,
            classical: 100,
            oracle: 200,
            algebra: 100,
            transversal_change: 100,
            injectivity: 500,
        }
    }
}

fn rng_for(seed: u64, criterion: u8) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed ^ (u64::from(criterion).wrapping_mul(0x9E37_79B9_7F4A_7C15)))
}

fn random_vector(rng: &mut impl Rng, m: usize) -> Vec<f64> {
    (0..m).map(|_| rng.gen_range(-1.0..1.0)).collect()
}

pub fn random_polynomial(rng: &mut impl Rng, m: usize, deg: u32) -> MultivariatePolynomial {
    let terms = below_degree(m, deg + 1)
        .into_iter()
        .map(|a| (a, rng.gen_range(-1.0..1.0)));
    MultivariatePolynomial::from_terms(m, terms).expect("matching dimension")
}

/// A polynomial hidden behind its partial derivatives, forcing the
/// quadrature route.
fn black_box(
    p: MultivariatePolynomial,
) -> PartialsOracle<impl Fn(&[f64], &MultiIndex) -> f64 + Sync> {
    let m = p.dim();
    PartialsOracle::new(m, move |x: &[f64], a: &MultiIndex| {
        p.derivative(a).eval(x).expect("dimension")
    })
}

/// `exp(a·x)`, with all partials `a^α exp(a·x)`.
fn exponential(a: Vec<f64>) -> PartialsOracle<impl Fn(&[f64], &MultiIndex) -> f64 + Sync> {
    let m = a.len();
    PartialsOracle::new(m, move |x: &[f64], alpha: &MultiIndex| {
        let dot: f64 = a.iter().zip(x).map(|(u, v)| u * v).sum();
        alpha.eval_monomial(&a) * dot.exp()
    })
}

fn coeff_diff(a: &MultivariatePolynomial, b: &MultivariatePolynomial) -> f64 {
    (a - b).max_abs_coeff()
}

/// Criterion 1: boundary identity and Newton expansion.
pub fn suite_identities(seed: u64, cases: usize) -> SuiteResult {
    let mut out = SuiteResult::new(1, "simplex-integral identities");
    let mut rng = rng_for(seed, 1);
    for _ in 0..cases {
        let m = rng.gen_range(1..=3);
        let deg = rng.gen_range(0..=6);
        let r = rng.gen_range(1..=4);
        let p = random_polynomial(&mut rng, m, deg);
        let vertices: Vec<Vec<f64>> = (0..=r).map(|_| random_vector(&mut rng, m)).collect();
        let vectors: Vec<Vec<f64>> = (0..r - 1).map(|_| random_vector(&mut rng, m)).collect();
        let i = rng.gen_range(0..=r);
        let j = (i + rng.gen_range(1..=r)) % (r + 1);
        let quadrature = rng.gen_bool(0.25);
        let hidden = black_box(p.clone());
        let f: &dyn SmoothFunction = if quadrature { &hidden } else { &p };
        let run = || -> Result<(f64, f64)> {
            let sigma = AffineSimplex::new(vertices.clone())?;
            let args: Vec<&[f64]> = vectors.iter().map(Vec::as_slice).collect();
            let boundary = boundary_identity_residual(f, &sigma, i, j, &args)?;
            let newton = (newton_expansion(f, &vertices)? - p.eval(&vertices[r])?).abs();
            Ok((boundary, newton))
        };
        match run() {
            Ok((b, n)) => {
                out.record("boundary", b, 1e-9, false);
                out.record("newton", n, 1e-9, false);
            }
            Err(e) => out.fail(e.to_string()),
        }
        out.cases += 1;
    }
    out
}

/// Cluster tuples for a configuration: each cluster is either coalesced
/// or spread over distinct nearby points.
fn random_tuples(rng: &mut impl Rng, config: &WeightedConfig) -> Vec<Vec<Vec<f64>>> {
    config
        .clusters()
        .iter()
        .map(|(y, k)| {
            if *k == 1 || rng.gen_bool(0.5) {
                vec![y.clone(); *k as usize]
            } else {
                (0..*k)
                    .map(|_| y.iter().map(|c| c + rng.gen_range(-0.05..0.05)).collect())
                    .collect()
            }
        })
        .collect()
}

/// Largest Taylor coefficient of `j^{k-1}_x (f - A f)` over the points of
/// the tuples, relative to the matching jets of `f`.
fn jet_mismatch(op: &InterpolationOperator, f: &dyn SmoothFunction) -> Result<f64> {
    let a = op.interpolate(f)?;
    let mut worst = 0.0f64;
    let mut scale = 1.0f64;
    for tuple in op.clusters() {
        for (y, k) in crate::kergin::multiplicities(tuple) {
            let jf = crate::polycalc::Jet::of(f, &y, k - 1)?;
            let ja = crate::polycalc::Jet::of(&a, &y, k - 1)?;
            scale = scale.max(jf.max_abs());
            for (u, v) in jf.coeffs().iter().zip(ja.coeffs()) {
                worst = worst.max((u - v).abs());
            }
        }
    }
    Ok(worst / scale)
}

/// Criterion 2: interpolation contract.
pub fn suite_interpolation(seed: u64, cases: usize, tol: &Tolerances) -> SuiteResult {
    let mut out = SuiteResult::new(2, "interpolation contract");
    let mut rng = rng_for(seed, 2);
    for _ in 0..cases {
        let m = rng.gen_range(1..=2);
        let d = rng.gen_range(1..=6);
        let weights = random_weights(&mut rng, d);
        let config = random_config(&mut rng, m, &weights);
        let tuples = random_tuples(&mut rng, &config);
        let candidates = below_degree(m, d as u32);
        let poly = random_polynomial(&mut rng, m, d as u32 + 2);
        let exp = exponential(random_vector(&mut rng, m));
        let use_exp = rng.gen_bool(0.3);
        let f: &dyn SmoothFunction = if use_exp { &exp } else { &poly };
        let mut permuted: Vec<Vec<Vec<f64>>> = tuples.iter().rev().cloned().collect();
        for t in &mut permuted {
            t.reverse();
        }
        let run = || -> Result<(f64, f64, f64)> {
            let op =
                InterpolationOperator::with_default_complement(tuples.clone(), &candidates, tol)?;
            let jets = jet_mismatch(&op, f)?;
            let a = op.interpolate(f)?;
            let scale = a.max_abs_coeff().max(1.0);
            let projector = coeff_diff(&op.interpolate(&a)?, &a) / scale;
            let other =
                InterpolationOperator::from_tuples(permuted.clone(), op.basis().to_vec(), tol)?;
            let order = coeff_diff(&other.interpolate(f)?, &a) / scale;
            Ok((jets, projector, order))
        };
        match run() {
            Ok((jets, projector, order)) => {
                out.record("jet residual", jets, 1e-8, false);
                out.record("projector", projector, 1e-9, false);
                out.record("order invariance", order, 1e-9, false);
            }
            Err(e) => out.fail(e.to_string()),
        }
        out.cases += 1;
    }
    out
}

/// Criterion 3: agreement with divided differences and Taylor truncation.
pub fn suite_classical(seed: u64, cases: usize, tol: &Tolerances) -> SuiteResult {
    let mut out = SuiteResult::new(3, "classical interpolation oracles");
    let mut rng = rng_for(seed, 3);
    for _ in 0..cases {
        let d = rng.gen_range(1..=6);
        let weights = random_weights(&mut rng, d);
        let config = random_config(&mut rng, 1, &weights);
        let nodes: Vec<(f64, u32)> = config.clusters().iter().map(|(p, k)| (p[0], *k)).collect();
        let kind = rng.gen_range(0..3);
        let a: f64 = rng.gen_range(-1.5..1.5);
        let b: f64 = rng.gen_range(0.0..PI);
        let pdeg = rng.gen_range(0..=8);
        let poly = random_polynomial(&mut rng, 1, pdeg);
        let derivative = |x: f64, n: u32| -> f64 {
            match kind {
                0 => poly
                    .derivative(&MultiIndex::new(vec![n]))
                    .eval(&[x])
                    .expect("one variable"),
                1 => a.powi(n as i32) * (a * x).exp(),
                _ => a.powi(n as i32) * (a * x + b + f64::from(n) * PI / 2.0).sin(),
            }
        };
        let oracle = PartialsOracle::new(1, |x: &[f64], alpha: &MultiIndex| {
            derivative(x[0], alpha.get(0))
        });
        let run = || -> Result<f64> {
            let op = InterpolationOperator::with_default_complement(
                config.coalesced_tuples(),
                &below_degree(1, d as u32),
                tol,
            )?;
            let mine = if kind == 0 {
                op.interpolate(&poly)?
            } else {
                op.interpolate(&oracle)?
            };
            let reference = if kind == 0 {
                hermite_divided_differences_exact(&nodes, |x, n| exact_derivative(&poly, x, n))
            } else {
                hermite_divided_differences(&nodes, derivative)
            };
            let reference =
                MultivariatePolynomial::from_coords(1, &below_degree(1, d as u32), &reference);
            Ok(coeff_diff(&mine, &reference) / reference.max_abs_coeff().max(1.0))
        };
        match run() {
            Ok(v) => out.record("vs divided differences", v, 1e-9, false),
            Err(e) => out.fail(e.to_string()),
        }

        // single cluster against Taylor truncation, m ≤ 2
        let m = rng.gen_range(1..=2);
        let k = rng.gen_range(1..=6);
        let y = random_vector(&mut rng, m);
        let fdeg = rng.gen_range(0..=8);
        let f = random_polynomial(&mut rng, m, fdeg);
        let run = || -> Result<f64> {
            let config = WeightedConfig::new(vec![(y.clone(), k)])?;
            let op = InterpolationOperator::with_default_complement(
                config.coalesced_tuples(),
                &below_degree(m, k),
                tol,
            )?;
            let mine = op.interpolate(&f)?;
            let reference = taylor_truncation(&f, &y, k);
            Ok(coeff_diff(&mine, &reference) / reference.max_abs_coeff().max(1.0))
        };
        match run() {
            Ok(v) => out.record("vs Taylor truncation", v, 1e-12, false),
            Err(e) => out.fail(e.to_string()),
        }
        out.cases += 1;
    }
    out
}

/// How a sweep case was constructed.
fn constructed_point(
    rng: &mut impl Rng,
    tol: &Tolerances,
) -> Result<(Transversal, IdealPoint, &'static str)> {
    let m = rng.gen_range(1..=3);
    let d = if m == 3 {
        rng.gen_range(1..=3)
    } else {
        rng.gen_range(1..=4)
    };
    let f = monomial_transversal(m, d as u32 + 1)?;
    if rng.gen_bool(0.4) {
        let config = random_config(rng, m, &vec![1; d]);
        let points: Vec<Vec<f64>> = config.clusters().iter().map(|(p, _)| p.clone()).collect();
        Ok((f.clone(), ideal_from_points(&f, &points, tol)?, "points"))
    } else {
        let sample = random_ideal_point(&f, d, rng, tol)?;
        let kind = if sample.point.config().len() > 1 {
            "intersection"
        } else {
            "cluster"
        };
        Ok((f, sample.point, kind))
    }
}

/// `L` with one direction rotated by `θ` towards `L^⊥`, keeping
/// `F ∩ m_Y ⊆ L` when `L` is larger than it.
fn perturb(rng: &mut impl Rng, p: &IdealPoint, theta: f64, tol: &Tolerances) -> Result<Subspace> {
    let f = p.transversal();
    let l = p.subspace().frame();
    let k = vanishing_subspace(f, p.config(), tol)?;
    // directions of L orthogonal to F ∩ m_Y
    let (w, _) = null_space(&(k.frame().transpose() * l), 1e-10);
    let inside = if w.ncols() > 0 { l * &w } else { l.clone() };
    let pick = |rng: &mut dyn rand::RngCore, basis: &Matrix| -> nalgebra::DVector<f64> {
        let c = nalgebra::DVector::from_fn(basis.ncols(), |_, _| rng.gen_range(-1.0..1.0));
        let v = basis * c;
        let n = v.norm();
        v / n
    };
    let u = pick(rng, &inside);
    let w_out = pick(rng, &p.subspace().complement());
    let rotated = &u * theta.cos() + &w_out * theta.sin();
    // L with u replaced by the rotated vector
    let rest = l - &u * (u.transpose() * l);
    let mut cols = Matrix::zeros(f.dim(), l.ncols() + 1);
    cols.view_mut((0, 0), (f.dim(), l.ncols())).copy_from(&rest);
    cols.set_column(l.ncols(), &rotated);
    Subspace::from_spanning(f.clone(), &cols, 1e-8)
}

/// Criterion 4: the oracle certifies constructed points and rejects
/// perturbations.
pub fn suite_oracle(seed: u64, cases: usize, tol: &Tolerances) -> SuiteResult {
    let mut out = SuiteResult::new(4, "oracle soundness and completeness");
    let mut rng = rng_for(seed, 4);
    let mut rejected = 0usize;
    let mut certified = 0usize;
    for _ in 0..cases {
        let run = |rng: &mut ChaCha8Rng| -> Result<(bool, bool, f64, f64)> {
            let (f, p, _) = constructed_point(rng, tol)?;
            let report = membership_oracle(&f, p.config(), p.subspace(), tol)?;
            let theta = 10f64.powf(rng.gen_range(-3.0..-0.5));
            let l = perturb(rng, &p, theta, tol)?;
            let bad = membership_oracle(&f, p.config(), &l, tol)?;
            Ok((
                report.is_certified(),
                !bad.is_certified(),
                report.closure_residual,
                theta,
            ))
        };
        match run(&mut rng) {
            Ok((ok, rej, resid, _)) => {
                certified += usize::from(ok);
                rejected += usize::from(rej);
                out.record("closure residual (certified)", resid, tol.membership, false);
                if !ok {
                    out.fail("constructed point rejected".into());
                }
                if !rej {
                    out.fail("perturbed subspace certified".into());
                }
            }
            Err(e) => out.fail(e.to_string()),
        }
        out.cases += 1;
    }
    out.record(
        "uncertified constructions",
        (cases - certified) as f64,
        0.5,
        false,
    );
    out.record(
        "accepted perturbations",
        (cases - rejected) as f64,
        0.5,
        false,
    );
    out
}

/// Criterion 5: quotient algebras, weighted spectrum and decomposition.
pub fn suite_algebra(seed: u64, cases: usize, tol: &Tolerances) -> SuiteResult {
    let mut out = SuiteResult::new(5, "quotient algebra consistency");
    let mut rng = rng_for(seed, 5);
    for _ in 0..cases {
        let mut run = |rng: &mut ChaCha8Rng| -> Result<()> {
            let (f, p, _) = constructed_point(rng, tol)?;
            let q = QuotientAlgebra::new(&p, tol)?;
            out.record(
                "non-commutative",
                f64::from(u8::from(!q.is_commutative())),
                0.5,
                false,
            );
            out.record("associativity", q.associativity_residual(), 1e-8, false);
            out.record("unit", q.unit_residual(), 1e-10, false);
            let y = wspec_from_algebra(&q, tol)?;
            let dist = y.distance_to(p.config()).unwrap_or(f64::INFINITY);
            out.record("wspec", dist, 1e-7, false);
            let parts = primary_decomposition(&f, &p, tol)?;
            let weight: u32 = parts.iter().map(|c| c.config().total_weight()).sum();
            out.record(
                "weight defect",
                f64::from(weight.abs_diff(p.config().total_weight())),
                0.5,
                false,
            );
            let clusters: Vec<(Vec<f64>, Subspace)> = parts
                .iter()
                .map(|c| (c.config().clusters()[0].0.clone(), c.subspace().clone()))
                .collect();
            let back = ideal_from_clusters(&f, &clusters, tol)?;
            out.record(
                "decomposition round trip",
                subspace_distance(back.subspace(), p.subspace())?,
                1e-8,
                false,
            );
            Ok(())
        };
        if let Err(e) = run(&mut rng) {
            out.fail(e.to_string());
        }
        out.cases += 1;
    }
    out
}

/// Criterion 6: restrict∘section and section∘restrict are identities.
pub fn suite_transversal_change(seed: u64, cases: usize, tol: &Tolerances) -> SuiteResult {
    let mut out = SuiteResult::new(6, "transversal change round trips");
    let mut rng = rng_for(seed, 6);
    for _ in 0..cases {
        let run = |rng: &mut ChaCha8Rng| -> Result<(f64, f64)> {
            let m = rng.gen_range(1..=2);
            let d = rng.gen_range(1..=4);
            let f = monomial_transversal(m, d as u32 + 1)?;
            let f_big = monomial_transversal(m, d as u32 + 2)?;
            let p = random_ideal_point(&f, d, rng, tol)?.point;
            let there = change_transversal_section(&f_big, &p, tol)?;
            let back = change_transversal_restrict(&f, &there, tol)?;
            let first = subspace_distance(back.subspace(), p.subspace())?;
            let p_big = random_ideal_point(&f_big, d, rng, tol)?.point;
            let down = change_transversal_restrict(&f, &p_big, tol)?;
            let up = change_transversal_section(&f_big, &down, tol)?;
            let second = subspace_distance(up.subspace(), p_big.subspace())?;
            Ok((first, second))
        };
        match run(&mut rng) {
            Ok((a, b)) => {
                out.record("restrict∘section", a, 1e-9, false);
                out.record("section∘restrict", b, 1e-9, false);
            }
            Err(e) => out.fail(e.to_string()),
        }
        out.cases += 1;
    }
    out
}

/// Criterion 7: gallery limits certify, agree with direct evaluation and
/// with the analytic fat point and curvilinear ideals.
pub fn suite_limits(tol: &Tolerances) -> SuiteResult {
    let mut out = SuiteResult::new(7, "collision limits");
    for preset in presets() {
        let f = preset.transversal();
        let run = || -> Result<(bool, f64, f64, Subspace)> {
            let report = limit_ideal(&f, &preset.curve, &default_schedule(), DEFAULT_ORDER, tol)?;
            let direct = subspace_at(&f, &preset.curve, 1e-6)?;
            let dist = subspace_distance(&direct, report.limit.subspace())?;
            let order: Vec<usize> = (0..preset.curve.len()).rev().collect();
            let swapped = limit_ideal(
                &f,
                &preset.curve.permuted(&order),
                &default_schedule(),
                DEFAULT_ORDER,
                tol,
            )?;
            let perm = subspace_distance(swapped.limit.subspace(), report.limit.subspace())?;
            Ok((
                report.certified,
                dist,
                perm,
                report.limit.subspace().clone(),
            ))
        };
        match run() {
            Ok((certified, dist, perm, limit)) => {
                out.record(
                    "uncertified limits",
                    f64::from(u8::from(!certified)),
                    0.5,
                    false,
                );
                out.record("extrapolated vs t=1e-6", dist, 1e-5, false);
                out.record("branch permutation", perm, 1e-9, false);
                let analytic = match preset.name {
                    // F ∩ m_0²: monomials of degree ≥ 2
                    "non-collinear-triple" => Some(coordinate_subspace(&f, |a| a.degree() >= 2)),
                    // f(0) = ∂_x f(0) = ∂_x² f(0) = 0: drop 1, x, x²
                    "collinear-triple" => {
                        Some(coordinate_subspace(&f, |a| a.get(1) > 0 || a.get(0) > 2))
                    }
                    _ => None,
                };
                if let Some(reference) = analytic {
                    match subspace_distance(&reference, &limit) {
                        Ok(v) => out.record("analytic limit", v, 1e-6, false),
                        Err(e) => out.fail(e.to_string()),
                    }
                }
            }
            Err(e) => out.fail(format!("{}: {e}", preset.name)),
        }
        out.cases += 1;
    }
    out
}

fn coordinate_subspace(f: &Transversal, keep: impl Fn(&MultiIndex) -> bool) -> Subspace {
    let cols: Vec<usize> = (0..f.dim()).filter(|&i| keep(&f.basis()[i])).collect();
    let frame = Matrix::from_fn(
        f.dim(),
        cols.len(),
        |i, j| if i == cols[j] { 1.0 } else { 0.0 },
    );
    Subspace::new(f.clone(), frame).expect("matching dimension")
}

/// Criterion 8: sampled pairs of distinct ideal points stay apart.
pub fn suite_injectivity(seed: u64, pairs: usize, tol: &Tolerances) -> SuiteResult {
    let mut out = SuiteResult::new(8, "injectivity probe");
    let mut rng = rng_for(seed, 8);
    for m in [1usize, 2] {
        let f = monomial_transversal(m, 3).expect("valid");
        match injectivity_probe(&f, 2, pairs, &mut rng, tol) {
            Ok(r) => {
                out.cases += r.pairs;
                if let Some(t) = r.transversality_failure {
                    out.fail(t);
                }
                if let Some(sep) = r.min_separation {
                    out.record("min separation", sep, 1e-8, true);
                }
            }
            Err(e) => out.fail(format!("m = {m}: {e}")),
        }
    }
    out
}

/// All suites in criterion order.
pub fn run_all(seed: u64, sizes: &SuiteSizes, tol: &Tolerances) -> Vec<SuiteResult> {
    vec![
        suite_identities(seed, sizes.identities),
        suite_interpolation(seed, sizes.interpolation, tol),
        suite_classical(seed, sizes.classical, tol),
        suite_oracle(seed, sizes.oracle, tol),
        suite_algebra(seed, sizes.algebra, tol),
        suite_transversal_change(seed, sizes.transversal_change, tol),
        suite_limits(tol),
        suite_injectivity(seed, sizes.injectivity, tol),
    ]
}

/// Direct projector of `F ∩ m_Y` for distinct points, used to cross-check
/// the SVD route.
pub fn projector_gap(f: &Transversal, points: &[Vec<f64>], tol: &Tolerances) -> Result<f64> {
    let exact = kernel_projector(f, points)?;
    let config = WeightedConfig::from_points(points)?;
    let svd = vanishing_subspace(f, &config, tol)?;
    Ok((exact - svd.projector()).amax())
}
