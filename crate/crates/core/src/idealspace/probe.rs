use rand::seq::SliceRandom;
use rand::Rng;
use serde::Serialize;

use super::ideal::{
    curvilinear_ideal, ideal_from_clusters, power_of_maximal, vanishing_subspace, IdealPoint,
};
use super::subspace::{subspace_distance, Subspace};
use super::transversal::{
    partitions, random_config, random_point, transversality_check, Transversal,
};
use crate::config::WeightedConfig;
use crate::error::{Error, Result};
use crate::polycalc::multi_index::count_below_degree;
use crate::tolerances::Tolerances;

/// How the punctual component at one spectrum point was built.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub enum LocalShape {
    /// `m_y^k` in one variable, or a reduced point.
    Jet,
    /// `m_y^j` in several variables.
    Fat(u32),
    /// Curvilinear along the given germ.
    Curvilinear(Vec<Vec<f64>>),
}

/// A sampled ideal point with the recipe that produced it.
#[derive(Clone, Debug)]
pub struct Sample {
    pub point: IdealPoint,
    pub shapes: Vec<LocalShape>,
}

fn fat_exponent(m: usize, k: u32) -> Option<u32> {
    (2..=k).find(|&j| count_below_degree(m, j) as u32 == k)
}

fn random_shape(rng: &mut impl Rng, m: usize, k: u32) -> LocalShape {
    if k == 1 || m == 1 {
        return LocalShape::Jet;
    }
    if let Some(j) = fat_exponent(m, k) {
        if rng.gen_bool(0.3) {
            return LocalShape::Fat(j);
        }
    }
    let germ = (1..k)
        .map(|n| {
            let mut u = random_point(rng, m);
            if n == 1 {
                let norm = u.iter().map(|c| c * c).sum::<f64>().sqrt().max(1e-3);
                u.iter_mut().for_each(|c| *c /= norm);
            }
            u
        })
        .collect();
    LocalShape::Curvilinear(germ)
}

fn local_subspace(
    f: &Transversal,
    y: &[f64],
    k: u32,
    shape: &LocalShape,
    tol: &Tolerances,
) -> Result<Subspace> {
    match shape {
        LocalShape::Jet => {
            let c = WeightedConfig::new(vec![(y.to_vec(), k)])?;
            vanishing_subspace(f, &c, tol)
        }
        LocalShape::Fat(j) => Ok(power_of_maximal(f, y, *j, tol)?.subspace().clone()),
        LocalShape::Curvilinear(germ) => {
            Ok(curvilinear_ideal(f, y, germ, k, tol)?.subspace().clone())
        }
    }
}

/// Builds the ideal point with the given configuration and local shapes.
pub fn build_sample(
    f: &Transversal,
    config: &WeightedConfig,
    shapes: Vec<LocalShape>,
    tol: &Tolerances,
) -> Result<Sample> {
    let parts = config
        .clusters()
        .iter()
        .zip(&shapes)
        .map(|((y, k), s)| Ok((y.clone(), local_subspace(f, y, *k, s, tol)?)))
        .collect::<Result<Vec<_>>>()?;
    let point = ideal_from_clusters(f, &parts, tol)?;
    Ok(Sample { point, shapes })
}

/// A random weight pattern of total `d`.
pub fn random_weights(rng: &mut impl Rng, d: usize) -> Vec<u32> {
    partitions(d as u32).choose(rng).expect("d ≥ 1").clone()
}

/// Random ideal point of codimension `d` mixing reduced points, fat
/// points and curvilinear components.
pub fn random_ideal_point(
    f: &Transversal,
    d: usize,
    rng: &mut impl Rng,
    tol: &Tolerances,
) -> Result<Sample> {
    let weights = random_weights(rng, d);
    let config = random_config(rng, f.m(), &weights);
    let shapes = config
        .clusters()
        .iter()
        .map(|(_, k)| random_shape(rng, f.m(), *k))
        .collect();
    build_sample(f, &config, shapes, tol)
}

#[derive(Clone, Debug, Serialize)]
pub struct InjectivityReport {
    pub pairs: usize,
    pub equal_config_pairs: usize,
    /// Smallest subspace distance among pairs sharing a configuration.
    pub min_separation: Option<f64>,
    /// `None` when `F` passed the transversality check for `d + 1`,
    /// otherwise the failure message.
    pub transversality_failure: Option<String>,
}

/// Samples pairs of distinct ideal points and checks that equal
/// configurations come with subspaces at least `1e-8` apart.
pub fn injectivity_probe(
    f: &Transversal,
    d: usize,
    pairs: usize,
    rng: &mut impl Rng,
    tol: &Tolerances,
) -> Result<InjectivityReport> {
    let transversality_failure = match transversality_check(f, d, 5, tol.rank, rng) {
        Ok(_) => None,
        Err(e @ Error::TransversalityFail { .. }) => Some(e.to_string()),
        Err(e) => return Err(e),
    };
    let mut report = InjectivityReport {
        pairs: 0,
        equal_config_pairs: 0,
        min_separation: None,
        transversality_failure,
    };
    let can_share = f.m() >= 2 && d >= 2;
    while report.pairs < pairs {
        let share = can_share && rng.gen_bool(0.5);
        let (a, b) = if share {
            let mut weights = random_weights(rng, d);
            while weights[0] < 2 {
                weights = random_weights(rng, d);
            }
            let config = random_config(rng, f.m(), &weights);
            let sa: Vec<_> = weights
                .iter()
                .map(|&k| random_shape(rng, f.m(), k))
                .collect();
            let sb: Vec<_> = weights
                .iter()
                .map(|&k| random_shape(rng, f.m(), k))
                .collect();
            if sa == sb {
                continue;
            }
            (
                build_sample(f, &config, sa, tol)?,
                build_sample(f, &config, sb, tol)?,
            )
        } else {
            let a = random_ideal_point(f, d, rng, tol)?;
            let b = random_ideal_point(f, d, rng, tol)?;
            (a, b)
        };
        report.pairs += 1;
        for s in [&a, &b] {
            if !s.point.certified() {
                return Err(Error::InjectivityWitnessFail(format!(
                    "sampled ideal point at {} is not certified",
                    s.point.config()
                )));
            }
        }
        let same_config = a.point.config().distance_to(b.point.config()) == Some(0.0);
        if !same_config {
            continue;
        }
        report.equal_config_pairs += 1;
        let sep = subspace_distance(a.point.subspace(), b.point.subspace())?;
        report.min_separation = Some(report.min_separation.map_or(sep, |m: f64| m.min(sep)));
        if !(sep > 1e-8) {
            return Err(Error::InjectivityWitnessFail(format!(
                "{} with shapes {:?} and {:?} share L (distance {sep:.3e})",
                a.point.config(),
                a.shapes,
                b.shapes
            )));
        }
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::idealspace::monomial_transversal;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn probe_passes_on_transverse_spaces() {
        let tol = Tolerances::default();
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let f = monomial_transversal(1, 3).unwrap();
        let r = injectivity_probe(&f, 2, 50, &mut rng, &tol).unwrap();
        assert!(r.transversality_failure.is_none());
        let f = monomial_transversal(2, 3).unwrap();
        let r = injectivity_probe(&f, 2, 50, &mut rng, &tol).unwrap();
        assert!(r.equal_config_pairs > 0);
        assert!(r.min_separation.unwrap() > 1e-8);
    }

    #[test]
    fn degenerate_space_passes_on_configurations() {
        let tol = Tolerances::default();
        let mut rng = ChaCha8Rng::seed_from_u64(8);
        let f = monomial_transversal(1, 2).unwrap();
        let r = injectivity_probe(&f, 2, 20, &mut rng, &tol).unwrap();
        assert!(r.transversality_failure.is_some());
        assert_eq!(r.equal_config_pairs, 0);
    }
}
