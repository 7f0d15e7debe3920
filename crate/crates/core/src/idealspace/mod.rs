//! Ideals of finite codimension in a chart.
//!
//! An ideal `I` with weighted spectrum `Y` is stored as the pair
//! `(Y, L = F ∩ I)` for a transversal `F` of polynomials of bounded degree.
//! The membership oracle decides whether a pair comes from an ideal; the
//! quotient `F / L` carries the algebra structure of `𝓡 / I`.

mod algebra;
mod change;
mod decompose;
mod ideal;
mod oracle;
mod probe;
mod reducer;
mod spectrum;
mod subspace;
mod transversal;

pub use algebra::{reduce_mod_ideal, QuotientAlgebra};
pub use change::{change_transversal_restrict, change_transversal_section};
pub use decompose::primary_decomposition;
pub use ideal::{
    curvilinear_ideal, ideal_from_clusters, ideal_from_points, power_of_maximal,
    vanishing_subspace, IdealPoint, IdealPointDump,
};
pub use oracle::{membership_oracle, Condition, OracleReport, Verdict, SPECTRUM_MATCH};
pub use probe::{
    build_sample, injectivity_probe, random_ideal_point, random_weights, InjectivityReport,
    LocalShape, Sample,
};
pub use reducer::{ProductTable, Reducer};
pub use spectrum::{local_types, spectral_split, wspec_from_algebra, LocalType, SpectralSplit};
pub use subspace::{principal_cosines, subspace_distance, Subspace};
pub use transversal::{
    monomial_transversal, partitions, transversality_check, Transversal, TransversalityReport,
};

pub(crate) use transversal::random_config;

/// Quotient algebra of a certified ideal point.
pub fn quotient_algebra(p: &IdealPoint, tol: &crate::Tolerances) -> crate::Result<QuotientAlgebra> {
    QuotientAlgebra::new(p, tol)
}
