//! Orthogonal projector onto `F ∩ m_Y` for distinct points, computed in
//! exact rational arithmetic from the binary values of the inputs.

use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::idealspace::Transversal;
use crate::linalg::Matrix;

fn rational(x: f64) -> Result<BigRational> {
    BigRational::from_float(x)
        .ok_or_else(|| Error::InvalidInput(format!("non-finite coordinate {x}")))
}

/// `I - Eᵀ (E Eᵀ)^{-1} E` where `E` evaluates the basis of `F` at the
/// points. Errors with `TransversalityFail` if `E` loses rank.
pub fn kernel_projector(f: &Transversal, points: &[Vec<f64>]) -> Result<Matrix> {
    let r = f.dim();
    let d = points.len();
    let mut e: Vec<Vec<BigRational>> = Vec::with_capacity(d);
    for p in points {
        let coords = p.iter().map(|&x| rational(x)).collect::<Result<Vec<_>>>()?;
        let row = f
            .basis()
            .iter()
            .map(|beta| {
                beta.entries()
                    .iter()
                    .zip(&coords)
                    .fold(BigRational::one(), |acc, (&a, c)| {
                        acc * num_traits::pow(c.clone(), a as usize)
                    })
            })
            .collect();
        e.push(row);
    }
    // Gauss–Jordan on [E Eᵀ | E]
    let mut aug: Vec<Vec<BigRational>> = (0..d)
        .map(|i| {
            let mut row: Vec<BigRational> = (0..d)
                .map(|j| {
                    e[i].iter()
                        .zip(&e[j])
                        .fold(BigRational::zero(), |acc, (a, b)| acc + a * b)
                })
                .collect();
            row.extend(e[i].iter().cloned());
            row
        })
        .collect();
    for col in 0..d {
        let pivot = (col..d).find(|&i| !aug[i][col].is_zero()).ok_or_else(|| {
            Error::TransversalityFail {
                witness: format!("{points:?}"),
                sigma_min: 0.0,
            }
        })?;
        aug.swap(col, pivot);
        let inv = aug[col][col].recip();
        for v in aug[col].iter_mut() {
            *v = &*v * &inv;
        }
        let pivot_row = aug[col].clone();
        for (i, row) in aug.iter_mut().enumerate() {
            if i == col || row[col].is_zero() {
                continue;
            }
            let factor = row[col].clone();
            for (v, p) in row.iter_mut().zip(&pivot_row) {
                *v -= &factor * p;
            }
        }
    }
    // X = (E Eᵀ)^{-1} E sits in the right block; P_row = Eᵀ X
    let mut out = Matrix::zeros(r, r);
    for a in 0..r {
        for b in 0..r {
            let mut s = BigRational::zero();
            for k in 0..d {
                s += &e[k][a] * &aug[k][d + b];
            }
            let delta = if a == b {
                BigRational::one()
            } else {
                BigRational::zero()
            };
            out[(a, b)] = to_f64(&(delta - s));
        }
    }
    Ok(out)
}

fn to_f64(x: &BigRational) -> f64 {
    x.to_f64().expect("finite rational")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::idealspace::monomial_transversal;

    #[test]
    fn projector_onto_x_squared_minus_t_squared() {
        let f = monomial_transversal(1, 3).unwrap();
        let p = kernel_projector(&f, &[vec![-0.1], vec![0.1]]).unwrap();
        let t2 = 0.1f64 * 0.1;
        let v = [-t2, 0.0, 1.0];
        let n2 = t2 * t2 + 1.0;
        for a in 0..3 {
            for b in 0..3 {
                assert!((p[(a, b)] - v[a] * v[b] / n2).abs() < 1e-16);
            }
        }
    }
}
