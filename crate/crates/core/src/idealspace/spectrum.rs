use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use super::algebra::QuotientAlgebra;
use crate::config::WeightedConfig;
use crate::error::{Error, Result};
use crate::linalg::{range_basis, Matrix};
use crate::tolerances::Tolerances;

const ATTEMPTS: u64 = 3;
const SEED: u64 = 0x005e_ed0f_5bec;

/// Spectral splitting of a quotient algebra: recovered configuration and
/// the multiplication operators of its primitive idempotents.
#[derive(Clone, Debug)]
pub struct SpectralSplit {
    pub config: WeightedConfig,
    /// `E_i`, in the order of `config.clusters()`.
    pub idempotents: Vec<Matrix>,
}

/// Local type of a spectrum point: `dims[n] = dim m_i^n / m_i^{n+1}`
/// and the nilpotency index of `m_i`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct LocalType {
    pub point: Vec<f64>,
    pub weight: u32,
    pub hilbert_function: Vec<usize>,
    pub nilpotency_index: usize,
}

/// Weighted spectrum of `Q` from the joint eigenvalues of `M_{x_j}`.
pub fn wspec_from_algebra(q: &QuotientAlgebra, tol: &Tolerances) -> Result<WeightedConfig> {
    Ok(spectral_split(q, tol)?.config)
}

pub fn spectral_split(q: &QuotientAlgebra, tol: &Tolerances) -> Result<SpectralSplit> {
    let ops = q.coordinate_operators();
    let mut last = None;
    for attempt in 0..ATTEMPTS {
        match split_once(&ops, tol, SEED + attempt) {
            Err(e @ Error::ClusterAmbiguity(_)) => last = Some(e),
            other => return other,
        }
    }
    Err(last.expect("at least one attempt"))
}

/// `p_i(z)` for the polynomial with `p_i ≡ 1 mod (t - c_i)^{k_i}` and
/// `p_i ≡ 0 mod (t - c_j)^{k_j}`, `j ≠ i`.
fn hermite_idempotent(z: &Matrix, centers: &[f64], sizes: &[usize], i: usize) -> Matrix {
    let d = z.nrows();
    let id = Matrix::identity(d, d);
    let ki = sizes[i];
    // Taylor coefficients at c_i of Π_j ((c_i - c_j) / (t - c_j))^{k_j}
    let mut series = vec![0.0; ki];
    series[0] = 1.0;
    let mut e = id.clone();
    for (j, (&cj, &kj)) in centers.iter().zip(sizes).enumerate() {
        if j == i {
            continue;
        }
        let delta = centers[i] - cj;
        // (1 + s/δ)^{-k} = Σ_n binom(-k, n) (s/δ)^n
        let mut factor = vec![0.0; ki];
        let mut c = 1.0;
        for (n, f) in factor.iter_mut().enumerate() {
            *f = c;
            c *= -((kj + n) as f64) / ((n + 1) as f64) / delta;
        }
        let mut next = vec![0.0; ki];
        for a in 0..ki {
            for b in 0..ki - a {
                next[a + b] += series[a] * factor[b];
            }
        }
        series = next;
        let step = (z - &id * cj) / delta;
        for _ in 0..kj {
            e = &e * &step;
        }
    }
    let shift = z - &id * centers[i];
    let mut q = &id * series[ki - 1];
    for n in (0..ki - 1).rev() {
        q = &q * &shift + &id * series[n];
    }
    e * q
}

/// Newton steps `E ← 3E² - 2E³`, kept only while they reduce `‖E² - E‖`.
fn refine(mut e: Matrix) -> Matrix {
    let mut e2 = &e * &e;
    let mut resid = (&e2 - &e).amax();
    for _ in 0..60 {
        if resid == 0.0 {
            break;
        }
        let next = &e2 * 3.0 - &e2 * &e * 2.0;
        let next2 = &next * &next;
        let next_resid = (&next2 - &next).amax();
        if !(next_resid < resid) {
            break;
        }
        e = next;
        e2 = next2;
        resid = next_resid;
    }
    e
}

/// Eigenvalue perturbation bound for a block of size `k` of an operator
/// with norm `scale` whose spectral projectors have norm up to `kappa`.
fn spread_bound(scale: f64, kappa: f64, k: usize) -> f64 {
    4.0 * scale * (1e-14 * kappa).powf(1.0 / k.max(1) as f64)
}

/// Projector norms beyond this make a grouping meaningless.
const MAX_PROJECTOR_NORM: f64 = 1e10;

/// Candidate groupings of `eig`: the components of the single-linkage
/// tree cut below each of its edge lengths, finest first, with the
/// longest tree edge inside each group.
fn linkage_cuts(eig: &[nalgebra::Complex<f64>]) -> Vec<(Vec<Vec<usize>>, Vec<f64>)> {
    let n = eig.len();
    // Prim's minimum spanning tree
    let mut in_tree = vec![false; n];
    let mut best = vec![(f64::INFINITY, 0usize); n];
    let mut edges: Vec<(f64, usize, usize)> = Vec::with_capacity(n.saturating_sub(1));
    if n > 0 {
        in_tree[0] = true;
        for j in 1..n {
            best[j] = ((eig[j] - eig[0]).norm(), 0);
        }
    }
    for _ in 1..n {
        let (j, &(w, from)) = best
            .iter()
            .enumerate()
            .filter(|(j, _)| !in_tree[*j])
            .min_by(|a, b| a.1 .0.total_cmp(&b.1 .0))
            .expect("vertices left");
        in_tree[j] = true;
        edges.push((w, from, j));
        for k in 0..n {
            if !in_tree[k] {
                let dist = (eig[k] - eig[j]).norm();
                if dist < best[k].0 {
                    best[k] = (dist, j);
                }
            }
        }
    }
    edges.sort_by(|a, b| a.0.total_cmp(&b.0));
    let mut cuts = Vec::with_capacity(n);
    for used in 0..=edges.len() {
        if used < edges.len() && used > 0 && edges[used].0 == edges[used - 1].0 {
            continue;
        }
        let mut parent: Vec<usize> = (0..n).collect();
        fn root(p: &mut [usize], mut i: usize) -> usize {
            while p[i] != i {
                p[i] = p[p[i]];
                i = p[i];
            }
            i
        }
        for &(_, a, b) in &edges[..used] {
            let (ra, rb) = (root(&mut parent, a), root(&mut parent, b));
            parent[ra] = rb;
        }
        let mut groups: Vec<Vec<usize>> = Vec::new();
        let mut slot = vec![usize::MAX; n];
        for i in 0..n {
            let r = root(&mut parent, i);
            if slot[r] == usize::MAX {
                slot[r] = groups.len();
                groups.push(Vec::new());
            }
            groups[slot[r]].push(i);
        }
        // longest tree edge inside each group
        let mut internal = vec![0.0f64; groups.len()];
        for &(w, a, _) in &edges[..used] {
            let g = slot[root(&mut parent, a)];
            internal[g] = internal[g].max(w);
        }
        cuts.push((groups, internal));
    }
    cuts
}

fn split_once(ops: &[Matrix], tol: &Tolerances, seed: u64) -> Result<SpectralSplit> {
    let d = ops[0].nrows();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut w: Vec<f64> = ops.iter().map(|_| rng.gen_range(-1.0..1.0)).collect();
    let norm = w.iter().map(|x| x * x).sum::<f64>().sqrt();
    w.iter_mut().for_each(|x| *x /= norm);
    let mut z = Matrix::zeros(d, d);
    for (wj, m) in w.iter().zip(ops) {
        z += m * *wj;
    }
    let scale = z.norm().max(1e-300);
    let eig: Vec<nalgebra::Complex<f64>> =
        z.clone().complex_eigenvalues().iter().copied().collect();
    let radius = |k: usize, kappa: f64| tol.cluster_radius.max(spread_bound(scale, kappa, k));

    // The coarsest cut whose groups are tight at the perturbation scale
    // implied by their own spectral projectors.
    let mut chosen = None;
    for (groups, internal) in linkage_cuts(&eig).into_iter().rev() {
        let centers: Vec<nalgebra::Complex<f64>> = groups
            .iter()
            .map(|g| g.iter().map(|&i| eig[i]).sum::<nalgebra::Complex<f64>>() / g.len() as f64)
            .collect();
        let re: Vec<f64> = centers.iter().map(|c| c.re).collect();
        if (0..re.len()).any(|i| (i + 1..re.len()).any(|j| re[i] == re[j])) {
            continue;
        }
        let sizes: Vec<usize> = groups.iter().map(Vec::len).collect();
        let raw: Vec<Matrix> = (0..groups.len())
            .map(|i| hermite_idempotent(&z, &re, &sizes, i))
            .collect();
        let kappa = raw.iter().fold(1.0f64, |s, e| s.max(e.norm()));
        if !(kappa <= MAX_PROJECTOR_NORM) {
            continue;
        }
        let tight = groups
            .iter()
            .zip(&internal)
            .all(|(g, &w)| w <= radius(g.len(), kappa));
        if tight {
            chosen = Some((groups, centers, sizes, raw, kappa));
            break;
        }
    }
    let (groups, centers, sizes, raw, kappa) = chosen
        .ok_or_else(|| Error::ClusterAmbiguity("no stable grouping of the eigenvalues".into()))?;
    for (g, c) in groups.iter().zip(&centers) {
        if c.im.abs() > radius(g.len(), kappa) {
            return Err(Error::ComplexSpectrum { imag: c.im.abs() });
        }
    }

    let id = Matrix::identity(d, d);
    let idempotents: Vec<Matrix> = raw.into_iter().map(refine).collect();
    let total = idempotents
        .iter()
        .fold(Matrix::zeros(d, d), |acc, e| acc + e);
    let size = idempotents.iter().fold(1.0f64, |s, e| s.max(e.amax()));
    if (total - &id).amax() > 1e-8 * size {
        return Err(Error::ClusterAmbiguity(
            "idempotents do not sum to the unit".into(),
        ));
    }
    let mut clusters = Vec::with_capacity(groups.len());
    for (i, e) in idempotents.iter().enumerate() {
        let trace = e.trace();
        let k = trace.round();
        if (trace - k).abs() > 1e-6 || k as usize != sizes[i] {
            return Err(Error::ClusterAmbiguity(format!(
                "idempotent trace {trace} does not match cluster size {}",
                sizes[i]
            )));
        }
        let k = k as usize;
        let point: Vec<f64> = ops.iter().map(|m| (e * m).trace() / k as f64).collect();
        // every coordinate must act by a single eigenvalue on E_i Q
        for (m, &yj) in ops.iter().zip(&point) {
            let local = e * (m - &id * yj);
            let eig = local.clone().complex_eigenvalues();
            let spread = eig.iter().fold(0.0f64, |s, c| s.max(c.norm()));
            let bound = tol
                .cluster_radius
                .max(spread_bound(m.norm().max(1e-300), kappa, k));
            if spread > bound {
                return Err(Error::ClusterAmbiguity(format!(
                    "coordinate spread {spread:.3e} on a cluster of weight {k} exceeds {bound:.3e}"
                )));
            }
        }
        clusters.push((point, k as u32));
    }
    let config = WeightedConfig::with_merge_tolerance(clusters.clone(), tol.cluster_radius)
        .map_err(|e| Error::ClusterAmbiguity(e.to_string()))?;
    // align idempotents with the canonical cluster order
    let ordered = config
        .clusters()
        .iter()
        .map(|(p, _)| {
            let i = clusters
                .iter()
                .position(|(q, _)| q == p)
                .expect("same points");
            idempotents[i].clone()
        })
        .collect();
    Ok(SpectralSplit {
        config,
        idempotents: ordered,
    })
}

/// Hilbert function and nilpotency index of every local factor.
pub fn local_types(q: &QuotientAlgebra, tol: &Tolerances) -> Result<Vec<LocalType>> {
    let split = spectral_split(q, tol)?;
    let ops = q.coordinate_operators();
    let d = q.dim();
    let id = Matrix::identity(d, d);
    let mut out = Vec::new();
    for ((point, weight), e) in split.config.clusters().iter().zip(&split.idempotents) {
        let shifts: Vec<Matrix> = ops
            .iter()
            .zip(point)
            .map(|(m, &y)| e * (m - &id * y))
            .collect();
        let mut dims = Vec::new();
        let mut current = range_basis(e, 1e-8);
        while current.ncols() > 0 && dims.len() <= d {
            dims.push(current.ncols());
            let blocks: Vec<Matrix> = shifts.iter().map(|t| t * &current).collect();
            let cols: usize = blocks.iter().map(Matrix::ncols).sum();
            let mut stacked = Matrix::zeros(d, cols);
            let mut at = 0;
            for b in blocks {
                stacked.view_mut((0, at), (d, b.ncols())).copy_from(&b);
                at += b.ncols();
            }
            current = if stacked.amax() < 1e-8 {
                Matrix::zeros(d, 0)
            } else {
                range_basis(&stacked, 1e-7)
            };
        }
        let hilbert_function = dims
            .windows(2)
            .map(|w| w[0] - w[1])
            .chain(dims.last().copied())
            .collect();
        out.push(LocalType {
            point: point.clone(),
            weight: *weight,
            hilbert_function,
            nilpotency_index: dims.len(),
        });
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::idealspace::{
        curvilinear_ideal, ideal_from_points, monomial_transversal, power_of_maximal,
    };

    #[test]
    fn distinct_points_on_line() {
        let tol = Tolerances::default();
        let f = monomial_transversal(1, 3).unwrap();
        let p = ideal_from_points(&f, &[vec![1.0], vec![2.0]], &tol).unwrap();
        let q = QuotientAlgebra::new(&p, &tol).unwrap();
        let y = wspec_from_algebra(&q, &tol).unwrap();
        assert!(y.distance_to(p.config()).unwrap() < 1e-12);
    }

    #[test]
    fn nilpotent_cases() {
        let tol = Tolerances::default();
        let f = monomial_transversal(2, 3).unwrap();
        let curv = curvilinear_ideal(&f, &[0.0, 0.0], &[vec![1.0, 0.0]], 2, &tol).unwrap();
        let q = QuotientAlgebra::new(&curv, &tol).unwrap();
        for m in q.coordinate_operators() {
            assert!((&m * &m).amax() < 1e-12);
        }
        let y = wspec_from_algebra(&q, &tol).unwrap();
        assert_eq!(y.clusters(), &[(vec![0.0, 0.0], 2)]);

        let f4 = monomial_transversal(2, 4).unwrap();
        let fat = power_of_maximal(&f4, &[0.0, 0.0], 2, &tol).unwrap();
        let types = local_types(&QuotientAlgebra::new(&fat, &tol).unwrap(), &tol).unwrap();
        assert_eq!(types[0].nilpotency_index, 2);
        assert_eq!(types[0].hilbert_function, vec![1, 2]);
        let t = local_types(&q, &tol).unwrap();
        assert_eq!(t[0].hilbert_function, vec![1, 1]);
    }
}
