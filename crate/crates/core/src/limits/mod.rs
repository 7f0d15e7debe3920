//! Limits of colliding point configurations.
//!
//! Along a polynomial curve of configurations `Y(t)` the subspaces
//! `F ∩ m_{Y(t)}` are computed through their orthogonal projectors,
//! extrapolated to `t = 0`, and the limit pair `(Y(0), L(0))` is handed to
//! the membership oracle.

mod curve;
mod exact;
mod gallery;
mod limit;
mod witness;

pub use curve::{ConfigCurve, LIMIT_MERGE_RADIUS};
pub use exact::kernel_projector;
pub use gallery::{collision_gallery, presets, GalleryEntry, Preset};
pub use limit::{
    default_schedule, limit_ideal, projector_at, subspace_at, LimitReport, CAUCHY_TOLERANCE,
    DEFAULT_ORDER,
};
pub use witness::{approximation_witness, WitnessStep};
