//! Volume maximization over angle structures, co-volume minimization over
//! metrics, the duality gap between the two, and multi-start rigidity checks.

mod dual;
mod primal;
mod rigidity;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::complex::{AngleAssignment, GeneralizedMetric};
use crate::structures::{FeasibilityStatus, StructureError};

pub use dual::{dual_objective, solve_cone_angles, solve_cone_angles_from, DualOptions};
pub use primal::{maximize_volume, maximize_volume_from};
pub use rigidity::{duality_gap, rigidity_check, rigidity_check_seeded, DualityGap, DEFAULT_SEED};

/// Distance (max-norm) to a `B_II` pattern below which a tetrahedron is flagged.
pub const BOUNDARY_FLAG_TOL: f64 = 1e-6;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum OptimizeError {
    #[error(transparent)]
    Structure(#[from] StructureError),
    #[error("no strictly interior starting point: feasibility status {0:?}")]
    NoInteriorStart(FeasibilityStatus),
    #[error("iteration limit reached after {iterations} iterations with residual {residual}")]
    MaxIterations { iterations: usize, residual: f64 },
    #[error("co-volume descent diverged (|l| reached {norm})")]
    Diverged { norm: f64 },
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PrimalReport {
    pub maximizer: AngleAssignment,
    pub volume: f64,
    pub kkt_residual: f64,
    pub boundary_flags: Vec<bool>,
    pub iterations: usize,
    /// Total volume after each barrier stage.
    #[serde(skip)]
    pub stage_volumes: Vec<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DualReport {
    pub metric: GeneralizedMetric,
    pub residual: f64,
    pub diverged: bool,
    pub objective: f64,
    pub iterations: usize,
    /// Objective after each accepted step.
    #[serde(skip)]
    pub objective_trace: Vec<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RigidityReport {
    pub n_starts: usize,
    pub pairwise_distance: f64,
    pub all_agree: bool,
    pub seed: u64,
    /// Starts whose solve failed, with the reason; they are excluded from the distance.
    pub excluded: Vec<(usize, String)>,
    pub solutions: Vec<GeneralizedMetric>,
}
