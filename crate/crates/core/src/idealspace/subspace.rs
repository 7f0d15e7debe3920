use super::transversal::Transversal;
use crate::error::{Error, Result};
use crate::linalg::{self, full_svd, null_space, orth_complement, range_basis, Matrix};
use crate::polycalc::MultivariatePolynomial;

/// A subspace of a transversal `F`, held as an orthonormal frame of
/// coefficient columns (`r × s`).
#[derive(Clone, Debug, PartialEq)]
pub struct Subspace {
    ambient: Transversal,
    frame: Matrix,
}

impl Subspace {
    /// Wraps a frame after re-orthonormalizing it.
    pub fn new(ambient: Transversal, frame: Matrix) -> Result<Self> {
        if frame.nrows() != ambient.dim() {
            return Err(Error::DimensionMismatch {
                expected: ambient.dim(),
                got: frame.nrows(),
            });
        }
        Ok(Subspace {
            frame: linalg::orthonormalize(&frame),
            ambient,
        })
    }

    /// Keeps a frame bit for bit when it is orthonormal within `1e-12`,
    /// otherwise re-orthonormalizes it.
    pub fn from_frame(ambient: Transversal, frame: Matrix) -> Result<Self> {
        let gram = frame.transpose() * &frame;
        let n = frame.ncols();
        if (gram - Matrix::identity(n, n)).amax() <= 1e-12 && frame.nrows() == ambient.dim() {
            return Ok(Subspace { ambient, frame });
        }
        Self::new(ambient, frame)
    }

    /// Span of arbitrary coefficient columns, rank decided by `tol`.
    pub fn from_spanning(ambient: Transversal, columns: &Matrix, tol: f64) -> Result<Self> {
        if columns.nrows() != ambient.dim() {
            return Err(Error::DimensionMismatch {
                expected: ambient.dim(),
                got: columns.nrows(),
            });
        }
        Ok(Subspace {
            frame: range_basis(columns, tol),
            ambient,
        })
    }

    pub fn from_polys(
        ambient: Transversal,
        polys: &[MultivariatePolynomial],
        tol: f64,
    ) -> Result<Self> {
        let cols = polys
            .iter()
            .map(|p| ambient.coords(p))
            .collect::<Result<Vec<_>>>()?;
        let m = Matrix::from_fn(ambient.dim(), cols.len(), |i, j| cols[j][i]);
        Self::from_spanning(ambient, &m, tol)
    }

    /// Kernel of a matrix of functionals on `F`.
    pub fn kernel_of(ambient: Transversal, functionals: &Matrix, tol: f64) -> Result<Self> {
        if functionals.ncols() != ambient.dim() {
            return Err(Error::DimensionMismatch {
                expected: ambient.dim(),
                got: functionals.ncols(),
            });
        }
        let (frame, _) = null_space(functionals, tol);
        Ok(Subspace { ambient, frame })
    }

    pub fn ambient(&self) -> &Transversal {
        &self.ambient
    }

    pub fn frame(&self) -> &Matrix {
        &self.frame
    }

    pub fn dim(&self) -> usize {
        self.frame.ncols()
    }

    pub fn codim(&self) -> usize {
        self.ambient.dim() - self.dim()
    }

    pub fn projector(&self) -> Matrix {
        linalg::projector(&self.frame)
    }

    /// Orthonormal frame of the orthogonal complement in `F`.
    pub fn complement(&self) -> Matrix {
        orth_complement(&self.frame)
    }

    pub fn polys(&self) -> Vec<MultivariatePolynomial> {
        (0..self.dim())
            .map(|j| self.ambient.poly(self.frame.column(j).as_slice()))
            .collect()
    }

    /// Intersection of subspaces of the same ambient: the null space of
    /// the stacked complement frames.
    pub fn intersect(parts: &[Subspace], tol: f64) -> Result<Subspace> {
        let first = parts
            .first()
            .ok_or_else(|| Error::InvalidInput("nothing to intersect".into()))?;
        let r = first.ambient.dim();
        let mut rows: Vec<Matrix> = Vec::new();
        for p in parts {
            if p.ambient != first.ambient {
                return Err(Error::InvalidInput(
                    "subspaces live in different transversals".into(),
                ));
            }
            rows.push(p.complement().transpose());
        }
        let total: usize = rows.iter().map(Matrix::nrows).sum();
        let mut stacked = Matrix::zeros(total, r);
        let mut at = 0;
        for block in rows {
            stacked
                .view_mut((at, 0), (block.nrows(), r))
                .copy_from(&block);
            at += block.nrows();
        }
        Subspace::kernel_of(first.ambient.clone(), &stacked, tol)
    }

    /// `span(self) ⊆ span(other)` up to the largest principal angle.
    pub fn containment_angle_in(&self, other: &Subspace) -> f64 {
        linalg::containment_angle(&self.frame, &other.frame)
    }

    /// Plücker coordinates: the `s × s` minors of the frame, indexed by
    /// ascending row sets. Only offered for `s ≤ 6`.
    pub fn plucker(&self) -> Result<Vec<(Vec<usize>, f64)>> {
        let s = self.dim();
        if s > 6 {
            return Err(Error::InvalidInput(format!(
                "Plücker display needs dim ≤ 6, got {s}"
            )));
        }
        let r = self.ambient.dim();
        let mut out = Vec::new();
        let mut rows: Vec<usize> = (0..s).collect();
        loop {
            let minor = Matrix::from_fn(s, s, |i, j| self.frame[(rows[i], j)]);
            out.push((rows.clone(), minor.determinant()));
            // next combination
            let mut i = s;
            loop {
                if i == 0 {
                    return Ok(out);
                }
                i -= 1;
                if rows[i] < r - s + i {
                    rows[i] += 1;
                    for j in i + 1..s {
                        rows[j] = rows[j - 1] + 1;
                    }
                    break;
                }
            }
        }
    }

    /// Frame rows for serialization.
    pub fn frame_rows(&self) -> Vec<Vec<f64>> {
        linalg::to_rows(&self.frame)
    }
}

/// Largest principal angle in radians between equal-dimensional subspaces.
pub fn subspace_distance(a: &Subspace, b: &Subspace) -> Result<f64> {
    if a.ambient != b.ambient {
        return Err(Error::InvalidInput(
            "subspaces live in different transversals".into(),
        ));
    }
    if a.dim() != b.dim() {
        return Err(Error::DimensionMismatch {
            expected: a.dim(),
            got: b.dim(),
        });
    }
    Ok(linalg::largest_principal_angle(&a.frame, &b.frame))
}

/// Singular values of the product of two frames (cosines of the
/// principal angles), largest first.
pub fn principal_cosines(a: &Subspace, b: &Subspace) -> Vec<f64> {
    full_svd(&(a.frame.transpose() * &b.frame)).singular
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::idealspace::monomial_transversal;

    fn span(f: &Transversal, cols: &[&[f64]]) -> Subspace {
        let m = Matrix::from_fn(f.dim(), cols.len(), |i, j| cols[j][i]);
        Subspace::from_spanning(f.clone(), &m, 1e-12).unwrap()
    }

    #[test]
    fn distance_examples() {
        let f = monomial_transversal(1, 3).unwrap();
        let x = span(&f, &[&[0.0, 1.0, 0.0]]);
        let x2 = span(&f, &[&[0.0, 0.0, 1.0]]);
        assert_eq!(subspace_distance(&x, &x).unwrap(), 0.0);
        assert!((subspace_distance(&x, &x2).unwrap() - std::f64::consts::FRAC_PI_2).abs() < 1e-15);
        let eps = 1e-3;
        let tilted = span(&f, &[&[0.0, 1.0, eps]]);
        assert!((subspace_distance(&x, &tilted).unwrap() - eps.atan()).abs() < 1e-9);
    }

    #[test]
    fn intersection_of_planes() {
        let f = monomial_transversal(1, 3).unwrap();
        let a = span(&f, &[&[1.0, 0.0, 0.0], &[0.0, 1.0, 0.0]]);
        let b = span(&f, &[&[0.0, 1.0, 0.0], &[0.0, 0.0, 1.0]]);
        let c = Subspace::intersect(&[a, b], 1e-9).unwrap();
        assert_eq!(c.dim(), 1);
        assert!((c.frame()[(1, 0)].abs() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn plucker_of_line() {
        let f = monomial_transversal(1, 3).unwrap();
        let x = span(&f, &[&[0.0, 1.0, 0.0]]);
        let p = x.plucker().unwrap();
        assert_eq!(p.len(), 3);
        assert!((p[1].1.abs() - 1.0).abs() < 1e-15);
    }
}
