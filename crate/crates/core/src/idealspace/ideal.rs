use serde::{Deserialize, Serialize};

use super::oracle::{membership_oracle, OracleReport};
use super::subspace::Subspace;
use super::transversal::Transversal;
use crate::config::WeightedConfig;
use crate::error::{Error, Result};
use crate::linalg::{from_rows, full_svd, rank_of, Matrix};
use crate::polycalc::multi_index::count_below_degree;
use crate::tolerances::Tolerances;

/// An ideal of codimension `d` in a chart: its weighted spectrum and
/// `L = F ∩ I`.
#[derive(Clone, Debug, PartialEq)]
pub struct IdealPoint {
    config: WeightedConfig,
    subspace: Subspace,
    certified: bool,
}

impl IdealPoint {
    /// Pairs a configuration with a subspace without running the oracle.
    pub fn uncertified(config: WeightedConfig, subspace: Subspace) -> Result<Self> {
        if subspace.codim() != config.total_weight() as usize {
            return Err(Error::CodimMismatch {
                expected: config.total_weight() as usize,
                got: subspace.codim(),
            });
        }
        Ok(IdealPoint {
            config,
            subspace,
            certified: false,
        })
    }

    /// Runs the membership oracle and records its verdict.
    pub fn certify(
        config: WeightedConfig,
        subspace: Subspace,
        tol: &Tolerances,
    ) -> Result<(Self, OracleReport)> {
        let mut p = Self::uncertified(config, subspace)?;
        let report = membership_oracle(p.subspace.ambient(), &p.config, &p.subspace, tol)?;
        p.certified = report.is_certified();
        Ok((p, report))
    }

    pub fn config(&self) -> &WeightedConfig {
        &self.config
    }

    pub fn subspace(&self) -> &Subspace {
        &self.subspace
    }

    pub fn transversal(&self) -> &Transversal {
        self.subspace.ambient()
    }

    pub fn certified(&self) -> bool {
        self.certified
    }

    /// Codimension `d`.
    pub fn codim(&self) -> usize {
        self.subspace.codim()
    }

    pub fn to_json(&self) -> Result<String> {
        Ok(serde_json::to_string(&IdealPointDump::from(self))?)
    }

    pub fn from_json(s: &str) -> Result<Self> {
        let dump: IdealPointDump = serde_json::from_str(s)?;
        dump.try_into()
    }
}

#[derive(Serialize, Deserialize)]
pub struct IdealPointDump {
    pub config: WeightedConfig,
    pub frame: Vec<Vec<f64>>,
    pub transversal: Transversal,
    pub certified: bool,
}

impl From<&IdealPoint> for IdealPointDump {
    fn from(p: &IdealPoint) -> Self {
        IdealPointDump {
            config: p.config.clone(),
            frame: p.subspace.frame_rows(),
            transversal: p.transversal().clone(),
            certified: p.certified,
        }
    }
}

impl TryFrom<IdealPointDump> for IdealPoint {
    type Error = Error;

    fn try_from(d: IdealPointDump) -> Result<Self> {
        let r = d.transversal.dim();
        if d.frame.len() != r {
            return Err(Error::DimensionMismatch {
                expected: r,
                got: d.frame.len(),
            });
        }
        let s = d.frame.first().map_or(0, Vec::len);
        if d.frame.iter().any(|row| row.len() != s) {
            return Err(Error::InvalidInput("ragged frame rows".into()));
        }
        let subspace = Subspace::from_frame(d.transversal, from_rows(&d.frame, s))?;
        let mut p = IdealPoint::uncertified(d.config, subspace)?;
        p.certified = d.certified;
        Ok(p)
    }
}

impl Serialize for IdealPoint {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        IdealPointDump::from(self).serialize(s)
    }
}

impl<'de> Deserialize<'de> for IdealPoint {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        IdealPointDump::deserialize(d)?
            .try_into()
            .map_err(serde::de::Error::custom)
    }
}

/// `F ∩ m_Y`: kernel of the jet-evaluation matrix.
pub fn vanishing_subspace(
    f: &Transversal,
    y: &WeightedConfig,
    tol: &Tolerances,
) -> Result<Subspace> {
    let j = f.jet_matrix(y)?;
    require_full_row_rank(&j, tol, || y.to_string())?;
    Subspace::kernel_of(f.clone(), &j, tol.rank)
}

fn require_full_row_rank(j: &Matrix, tol: &Tolerances, witness: impl Fn() -> String) -> Result<()> {
    let rows = j.nrows();
    if rows > j.ncols() {
        return Err(Error::TransversalityFail {
            witness: witness(),
            sigma_min: 0.0,
        });
    }
    let s = full_svd(&j.transpose()).singular;
    if rank_of(&s, tol.rank) < rows {
        return Err(Error::TransversalityFail {
            witness: witness(),
            sigma_min: s[rows - 1] / s[0],
        });
    }
    Ok(())
}

/// `(Y, F ∩ m_Y)` for distinct points with weight one each.
pub fn ideal_from_points(
    f: &Transversal,
    points: &[Vec<f64>],
    tol: &Tolerances,
) -> Result<IdealPoint> {
    let y = WeightedConfig::with_merge_tolerance(
        points.iter().map(|p| (p.clone(), 1)).collect(),
        tol.merge,
    )?;
    let l = vanishing_subspace(f, &y, tol)?;
    let mut p = IdealPoint::uncertified(y, l)?;
    p.certified = true;
    Ok(p)
}

/// `∩ L_i` over clusters `(x_i, L_i)` supported at distinct points, each
/// checked by the oracle at `{x_i^{k_i}}` with `k_i = codim L_i`.
pub fn ideal_from_clusters(
    f: &Transversal,
    clusters: &[(Vec<f64>, Subspace)],
    tol: &Tolerances,
) -> Result<IdealPoint> {
    if clusters.is_empty() {
        return Err(Error::InvalidInput("no clusters".into()));
    }
    let mut weighted = Vec::with_capacity(clusters.len());
    for (index, (x, l)) in clusters.iter().enumerate() {
        if l.ambient() != f {
            return Err(Error::InvalidInput(format!(
                "cluster {index} lives in a different transversal"
            )));
        }
        let k = l.codim() as u32;
        if k == 0 {
            return Err(Error::CodimMismatch {
                expected: 1,
                got: 0,
            });
        }
        let local = WeightedConfig::new(vec![(x.clone(), k)])?;
        let report = membership_oracle(f, &local, l, tol)?;
        if !report.is_certified() {
            return Err(Error::ClusterOracleFail {
                index,
                reason: report.reason(),
            });
        }
        weighted.push((x.clone(), k));
    }
    let config = WeightedConfig::with_merge_tolerance(weighted, tol.merge)?;
    let parts: Vec<Subspace> = clusters.iter().map(|(_, l)| l.clone()).collect();
    let l = Subspace::intersect(&parts, tol.rank)?;
    let d = config.total_weight() as usize;
    if l.codim() != d {
        return Err(Error::CodimMismatch {
            expected: d,
            got: l.codim(),
        });
    }
    let (p, _) = IdealPoint::certify(config, l, tol)?;
    Ok(p)
}

/// Curvilinear ideal `{f : f(γ(s)) = O(s^k)}` along the germ
/// `γ(s) = y + s u_1 + s² u_2 + …`.
pub fn curvilinear_ideal(
    f: &Transversal,
    y: &[f64],
    germ: &[Vec<f64>],
    k: u32,
    tol: &Tolerances,
) -> Result<IdealPoint> {
    let m = f.m();
    if y.len() != m || germ.iter().any(|u| u.len() != m) {
        return Err(Error::DimensionMismatch {
            expected: m,
            got: y.len(),
        });
    }
    let k = k as usize;
    // γ_j(s) truncated to degree k - 1
    let gamma: Vec<Vec<f64>> = (0..m)
        .map(|j| {
            let mut c = vec![0.0; k];
            c[0] = y[j];
            for (n, u) in germ.iter().enumerate().take(k.saturating_sub(1)) {
                c[n + 1] = u[j];
            }
            c
        })
        .collect();
    let mul = |a: &[f64], b: &[f64]| {
        let mut out = vec![0.0; k];
        for (i, &ai) in a.iter().enumerate() {
            for (j, &bj) in b.iter().enumerate().take(k - i) {
                out[i + j] += ai * bj;
            }
        }
        out
    };
    let mut rows = Matrix::zeros(k, f.dim());
    for (col, beta) in f.basis().iter().enumerate() {
        let mut value = vec![0.0; k];
        value[0] = 1.0;
        for (j, &e) in beta.entries().iter().enumerate() {
            for _ in 0..e {
                value = mul(&value, &gamma[j]);
            }
        }
        for (row, v) in value.into_iter().enumerate() {
            rows[(row, col)] = v;
        }
    }
    require_full_row_rank(&rows, tol, || {
        format!("curvilinear germ at {y:?} of length {k}")
    })?;
    let l = Subspace::kernel_of(f.clone(), &rows, tol.rank)?;
    let config = WeightedConfig::new(vec![(y.to_vec(), k as u32)])?;
    let (p, _) = IdealPoint::certify(config, l, tol)?;
    Ok(p)
}

/// `m_y^j`, of codimension `binom(m + j - 1, m)`.
pub fn power_of_maximal(
    f: &Transversal,
    y: &[f64],
    j: u32,
    tol: &Tolerances,
) -> Result<IdealPoint> {
    let jets = WeightedConfig::new(vec![(y.to_vec(), j)])?;
    let l = vanishing_subspace(f, &jets, tol)?;
    let codim = count_below_degree(f.m(), j) as u32;
    let config = WeightedConfig::new(vec![(y.to_vec(), codim)])?;
    let (p, _) = IdealPoint::certify(config, l, tol)?;
    Ok(p)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::idealspace::{monomial_transversal, subspace_distance};

    fn line(f: &Transversal, coords: &[f64]) -> Subspace {
        Subspace::from_spanning(
            f.clone(),
            &Matrix::from_column_slice(f.dim(), 1, coords),
            1e-12,
        )
        .unwrap()
    }

    #[test]
    fn vanishing_subspace_examples() {
        let tol = Tolerances::default();
        let f = monomial_transversal(1, 3).unwrap();
        let y = WeightedConfig::new(vec![(vec![0.0], 1), (vec![1.0], 1)]).unwrap();
        let l = vanishing_subspace(&f, &y, &tol).unwrap();
        assert!(subspace_distance(&l, &line(&f, &[0.0, -1.0, 1.0])).unwrap() < 1e-14);
        let y = WeightedConfig::new(vec![(vec![0.0], 2)]).unwrap();
        let l = vanishing_subspace(&f, &y, &tol).unwrap();
        assert!(subspace_distance(&l, &line(&f, &[0.0, 0.0, 1.0])).unwrap() < 1e-14);
        let f2 = monomial_transversal(2, 2).unwrap();
        let y = WeightedConfig::new(vec![(vec![0.0, 0.0], 1)]).unwrap();
        assert_eq!(vanishing_subspace(&f2, &y, &tol).unwrap().dim(), 2);
    }

    #[test]
    fn points_constructor() {
        let tol = Tolerances::default();
        let f = monomial_transversal(1, 3).unwrap();
        let p = ideal_from_points(&f, &[vec![1.0], vec![2.0]], &tol).unwrap();
        assert!(subspace_distance(p.subspace(), &line(&f, &[2.0, -3.0, 1.0])).unwrap() < 1e-14);
        assert!(matches!(
            ideal_from_points(&f, &[vec![1.0], vec![1.0]], &tol),
            Err(Error::MergeToleranceViolation(_))
        ));
    }

    #[test]
    fn cluster_constructor_examples() {
        let tol = Tolerances::default();
        let f = monomial_transversal(2, 3).unwrap();
        let curv = curvilinear_ideal(&f, &[0.0, 0.0], &[vec![1.0, 0.0]], 2, &tol).unwrap();
        assert!(curv.certified());
        let p =
            ideal_from_clusters(&f, &[(vec![0.0, 0.0], curv.subspace().clone())], &tol).unwrap();
        assert!(p.certified());
        assert_eq!(p.codim(), 2);

        let a = ideal_from_points(&f, &[vec![0.0, 0.0]], &tol).unwrap();
        let b = ideal_from_points(&f, &[vec![1.0, 0.5]], &tol).unwrap();
        let both = ideal_from_clusters(
            &f,
            &[
                (vec![0.0, 0.0], a.subspace().clone()),
                (vec![1.0, 0.5], b.subspace().clone()),
            ],
            &tol,
        )
        .unwrap();
        let direct = ideal_from_points(&f, &[vec![0.0, 0.0], vec![1.0, 0.5]], &tol).unwrap();
        assert!(subspace_distance(both.subspace(), direct.subspace()).unwrap() < 1e-12);

        let f4 = monomial_transversal(2, 4).unwrap();
        let fat = power_of_maximal(&f4, &[0.0, 0.0], 2, &tol).unwrap();
        assert!(fat.certified());
        let p =
            ideal_from_clusters(&f4, &[(vec![0.0, 0.0], fat.subspace().clone())], &tol).unwrap();
        assert_eq!(p.codim(), 3);
    }

    #[test]
    fn json_round_trip() {
        let tol = Tolerances::default();
        let f = monomial_transversal(2, 3).unwrap();
        let p = ideal_from_points(&f, &[vec![0.25, -0.5], vec![0.75, 0.125]], &tol).unwrap();
        let back = IdealPoint::from_json(&p.to_json().unwrap()).unwrap();
        assert_eq!(back, p);
    }
}
