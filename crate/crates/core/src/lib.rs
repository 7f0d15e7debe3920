//! Finite-codimension ideals of smooth functions, computed in a chart.
//!
//! An ideal `I` of codimension `d` is represented by its weighted spectrum
//! `Y` and the subspace `L = F ∩ I` of a finite-dimensional transversal
//! `F` of polynomials. The crate provides Kergin-type interpolation
//! operators built from simplex integrals, a membership oracle for such
//! pairs, quotient algebras with their spectra and primary decomposition,
//! changes of transversal, and certified limits of colliding points.

pub mod cli;
pub mod config;
pub mod error;
pub mod idealspace;
pub mod kergin;
pub mod limits;
pub mod linalg;
pub mod oracles;
pub mod polycalc;
pub mod selftest;
pub mod tolerances;

pub use config::WeightedConfig;
pub use error::{Error, Result};
pub use tolerances::Tolerances;
