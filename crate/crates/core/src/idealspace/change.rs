use super::ideal::IdealPoint;
use super::reducer::Reducer;
use super::subspace::Subspace;
use super::transversal::Transversal;
use crate::error::{Error, Result};
use crate::linalg::{null_space, Matrix};
use crate::tolerances::Tolerances;

fn check_nested(f: &Transversal, f_big: &Transversal) -> Result<()> {
    if !f.is_sub_of(f_big) {
        return Err(Error::InvalidInput(format!(
            "transversal deg<{} in {} variables is not inside deg<{} in {}",
            f.deg(),
            f.m(),
            f_big.deg(),
            f_big.m()
        )));
    }
    Ok(())
}

/// `(Y, F ∩ L')` for `F ⊂ F'`.
pub fn change_transversal_restrict(
    f: &Transversal,
    p_big: &IdealPoint,
    tol: &Tolerances,
) -> Result<IdealPoint> {
    let f_big = p_big.transversal();
    check_nested(f, f_big)?;
    let r = f.dim();
    let extra = f_big.dim() - r;
    let frame = p_big.subspace().frame();
    // F ∩ L' = {L' c : the coordinates outside F vanish}
    let tail = frame.rows(r, extra).into_owned();
    let (kernel, rank) = null_space(&tail, tol.rank);
    if rank != extra {
        return Err(Error::NotTransverse {
            rank,
            expected: extra,
        });
    }
    let head = frame.rows(0, r) * kernel;
    let l = Subspace::new(f.clone(), head)?;
    let (p, _) = IdealPoint::certify(p_big.config().clone(), l, tol)?;
    Ok(p)
}

/// `(Y, L + (id - A(Y, ·))(F^⊥))` over `F' ⊃ F`, where `F^⊥` is spanned by
/// the monomials of `F'` outside `F`.
pub fn change_transversal_section(
    f_big: &Transversal,
    p: &IdealPoint,
    tol: &Tolerances,
) -> Result<IdealPoint> {
    let f = p.transversal();
    check_nested(f, f_big)?;
    let r = f.dim();
    let r_big = f_big.dim();
    let reducer = Reducer::new(f, p.config(), tol)?;
    let extra = &f_big.basis()[r..];
    let reduced = reducer.on_monomials(extra);
    let l = p.subspace().frame();
    let mut columns = Matrix::zeros(r_big, l.ncols() + extra.len());
    columns.view_mut((0, 0), (r, l.ncols())).copy_from(l);
    for (j, _) in extra.iter().enumerate() {
        let col = l.ncols() + j;
        for i in 0..r {
            columns[(i, col)] = -reduced[(i, j)];
        }
        columns[(r + j, col)] = 1.0;
    }
    // the added vectors lie in F' ∩ m_Y
    let jets = f_big.jet_matrix(p.config())?;
    let added = columns.columns(l.ncols(), extra.len());
    let residual = (&jets * added).amax();
    let scale = reduced.amax().max(1.0);
    if residual > 1e-8 * scale * jets.amax().max(1.0) {
        return Err(Error::OracleFailure(format!(
            "(id - A)(F^⊥) leaves F' ∩ m_Y by {residual:.3e}"
        )));
    }
    let l_big = Subspace::new(f_big.clone(), columns)?;
    let (out, _) = IdealPoint::certify(p.config().clone(), l_big, tol)?;
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::idealspace::{
        curvilinear_ideal, ideal_from_points, monomial_transversal, subspace_distance,
    };

    #[test]
    fn points_commute_with_transversal_change() {
        let tol = Tolerances::default();
        let f = monomial_transversal(2, 3).unwrap();
        let f_big = monomial_transversal(2, 4).unwrap();
        let pts = [vec![0.1, 0.2], vec![-0.4, 0.6]];
        let small = ideal_from_points(&f, &pts, &tol).unwrap();
        let big = ideal_from_points(&f_big, &pts, &tol).unwrap();
        let restricted = change_transversal_restrict(&f, &big, &tol).unwrap();
        assert!(subspace_distance(restricted.subspace(), small.subspace()).unwrap() < 1e-12);
        let lifted = change_transversal_section(&f_big, &small, &tol).unwrap();
        assert!(lifted.certified());
        assert!(subspace_distance(lifted.subspace(), big.subspace()).unwrap() < 1e-12);
        let same = change_transversal_restrict(&f, &small, &tol).unwrap();
        assert!(subspace_distance(same.subspace(), small.subspace()).unwrap() < 1e-14);
    }

    #[test]
    fn round_trips_on_curvilinear() {
        let tol = Tolerances::default();
        let f = monomial_transversal(2, 3).unwrap();
        let f_big = monomial_transversal(2, 4).unwrap();
        let p = curvilinear_ideal(
            &f,
            &[0.2, -0.1],
            &[vec![0.6, 0.8], vec![0.3, -0.2]],
            2,
            &tol,
        )
        .unwrap();
        let there = change_transversal_section(&f_big, &p, &tol).unwrap();
        let back = change_transversal_restrict(&f, &there, &tol).unwrap();
        assert!(subspace_distance(back.subspace(), p.subspace()).unwrap() < 1e-9);
        let again = change_transversal_section(&f_big, &back, &tol).unwrap();
        assert!(subspace_distance(again.subspace(), there.subspace()).unwrap() < 1e-9);
    }
}
