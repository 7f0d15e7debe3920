use crate::error::{Error, Result};

/// The affine map `[x_0, …, x_r]` from the standard `r`-simplex into `ℝ^m`.
/// Vertices may coincide.
#[derive(Clone, Debug, PartialEq)]
pub struct AffineSimplex {
    vertices: Vec<Vec<f64>>,
}

impl AffineSimplex {
    pub fn new(vertices: Vec<Vec<f64>>) -> Result<Self> {
        let Some(first) = vertices.first() else {
            return Err(Error::InvalidInput(
                "a simplex needs at least one vertex".into(),
            ));
        };
        let m = first.len();
        if let Some(v) = vertices.iter().find(|v| v.len() != m) {
            return Err(Error::DimensionMismatch {
                expected: m,
                got: v.len(),
            });
        }
        Ok(AffineSimplex { vertices })
    }

    pub fn vertices(&self) -> &[Vec<f64>] {
        &self.vertices
    }

    pub fn order(&self) -> usize {
        self.vertices.len() - 1
    }

    pub fn dim(&self) -> usize {
        self.vertices[0].len()
    }

    /// `∂_i σ`: drop vertex `i`.
    pub fn face(&self, i: usize) -> Self {
        assert!(self.order() >= 1 && i <= self.order());
        let mut vertices = self.vertices.clone();
        vertices.remove(i);
        AffineSimplex { vertices }
    }

    /// Prefix `[x_0, …, x_j]`.
    pub fn prefix(&self, j: usize) -> Self {
        AffineSimplex {
            vertices: self.vertices[..=j].to_vec(),
        }
    }

    /// Image of barycentric coordinates `λ` (length `r + 1`).
    pub fn point_at(&self, lambda: &[f64]) -> Vec<f64> {
        let mut p = vec![0.0; self.dim()];
        for (v, &l) in self.vertices.iter().zip(lambda) {
            for (pc, vc) in p.iter_mut().zip(v) {
                *pc += l * vc;
            }
        }
        p
    }
}
