//! Dense helpers on top of nalgebra: full SVD with sorted singular values,
//! null spaces, orthogonal complements and principal angles.

use nalgebra::DMatrix;

pub type Matrix = DMatrix<f64>;

/// SVD with singular values sorted in decreasing order and a complete
/// right factor (`v` is `n × n` even for wide matrices).
pub struct FullSvd {
    pub singular: Vec<f64>,
    pub u: Matrix,
    pub v: Matrix,
}

pub fn full_svd(a: &Matrix) -> FullSvd {
    let (rows, cols) = a.shape();
    let padded;
    let work = if rows < cols {
        padded = {
            let mut p = Matrix::zeros(cols, cols);
            p.view_mut((0, 0), (rows, cols)).copy_from(a);
            p
        };
        &padded
    } else {
        a
    };
    let svd = work.clone().svd(true, true);
    let u = svd.u.expect("requested U");
    let vt = svd.v_t.expect("requested V^T");
    let mut order: Vec<usize> = (0..svd.singular_values.len()).collect();
    order.sort_by(|&i, &j| svd.singular_values[j].total_cmp(&svd.singular_values[i]));
    let singular: Vec<f64> = order.iter().map(|&i| svd.singular_values[i]).collect();
    let v = Matrix::from_fn(cols, order.len(), |r, c| vt[(order[c], r)]);
    let u = Matrix::from_fn(u.nrows().min(rows), order.len(), |r, c| u[(r, order[c])]);
    FullSvd { singular, u, v }
}

/// Numerical rank: singular values above `tol * σ_max`.
pub fn rank_of(singular: &[f64], tol: f64) -> usize {
    let top = singular.first().copied().unwrap_or(0.0);
    if top == 0.0 {
        return 0;
    }
    singular.iter().filter(|&&s| s > tol * top).count()
}

/// Orthonormal basis of `ker a` and the numerical rank of `a`.
pub fn null_space(a: &Matrix, tol: f64) -> (Matrix, usize) {
    let n = a.ncols();
    if a.nrows() == 0 {
        return (Matrix::identity(n, n), 0);
    }
    let svd = full_svd(a);
    let rank = rank_of(&svd.singular, tol);
    (svd.v.columns(rank, n - rank).into_owned(), rank)
}

/// Orthonormal basis of the column space.
pub fn range_basis(a: &Matrix, tol: f64) -> Matrix {
    if a.ncols() == 0 {
        return Matrix::zeros(a.nrows(), 0);
    }
    let svd = full_svd(&a.transpose());
    let rank = rank_of(&svd.singular, tol);
    svd.v.columns(0, rank).into_owned()
}

/// Orthonormal basis of the orthogonal complement of an orthonormal frame.
pub fn orth_complement(frame: &Matrix) -> Matrix {
    let r = frame.nrows();
    if frame.ncols() == 0 {
        return Matrix::identity(r, r);
    }
    let (basis, _) = null_space(&frame.transpose(), 1e-12);
    basis
}

pub fn projector(frame: &Matrix) -> Matrix {
    frame * frame.transpose()
}

pub fn spectral_norm(a: &Matrix) -> f64 {
    if a.nrows() == 0 || a.ncols() == 0 {
        return 0.0;
    }
    a.clone().singular_values().max()
}

/// Largest principal angle of `span(inner)` away from `span(outer)`,
/// i.e. `asin ‖(I - P_outer) Q_inner‖`. Zero iff `inner ⊆ outer`.
pub fn containment_angle(inner: &Matrix, outer: &Matrix) -> f64 {
    if inner.ncols() == 0 {
        return 0.0;
    }
    let residual = inner - outer * (outer.transpose() * inner);
    spectral_norm(&residual).min(1.0).asin()
}

/// Largest principal angle between two equal-dimensional subspaces given
/// by orthonormal frames, combining the sine and cosine routes so that
/// both tiny and near-right angles are accurate.
pub fn largest_principal_angle(a: &Matrix, b: &Matrix) -> f64 {
    if a.ncols() == 0 {
        return 0.0;
    }
    let sin = spectral_norm(&(b - a * (a.transpose() * b))).min(1.0);
    let cos = (a.transpose() * b).singular_values().min().clamp(0.0, 1.0);
    sin.atan2(cos)
}

/// Condition number `σ_max / σ_min` of a square matrix.
pub fn condition_number(a: &Matrix) -> f64 {
    let s = a.clone().singular_values();
    let min = s.min();
    if min == 0.0 {
        f64::INFINITY
    } else {
        s.max() / min
    }
}

/// Re-orthonormalizes an almost-orthonormal frame.
pub fn orthonormalize(frame: &Matrix) -> Matrix {
    if frame.ncols() == 0 {
        return frame.clone();
    }
    frame.clone().qr().q()
}

/// Flattens a matrix row by row.
pub fn to_rows(a: &Matrix) -> Vec<Vec<f64>> {
    (0..a.nrows())
        .map(|i| a.row(i).iter().copied().collect())
        .collect()
}

pub fn from_rows(rows: &[Vec<f64>], ncols: usize) -> Matrix {
    Matrix::from_fn(rows.len(), ncols, |i, j| rows[i][j])
}
