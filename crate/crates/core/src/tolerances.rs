use serde::{Deserialize, Serialize};

/// Numerical thresholds shared by every module. All of them can be
/// overridden from the command line.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Tolerances {
    /// Singular values below `rank * largest` count as zero.
    pub rank: f64,
    /// Largest principal angle (radians) still treated as containment.
    pub angle: f64,
    /// Minimum separation of recovered spectrum points.
    pub cluster_radius: f64,
    /// Points closer than this are considered collided.
    pub merge: f64,
    /// Fiber maps with a larger condition number are singular.
    pub max_condition: f64,
    /// Relative residual allowed for `A(Y, p·l)` outside `L`.
    pub membership: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Tolerances {
            rank: 1e-9,
            angle: 1e-8,
            cluster_radius: 1e-6,
            merge: 1e-10,
            max_condition: 1e12,
            membership: 1e-8,
        }
    }
}
