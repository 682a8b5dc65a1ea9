use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use super::dual::{dual_objective, solve_cone_angles, solve_cone_angles_from, DualOptions};
use super::primal::maximize_volume;
use super::{OptimizeError, RigidityReport};
use crate::complex::{gauge_project, ConeTarget, GeneralizedMetric, Triangulation};
use crate::structures::assemble;

/// Seed used for random starts when none is given.
pub const DEFAULT_SEED: u64 = 0x5eed_1313;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct DualityGap {
    /// `cov_k(l*) - 2·vol(α*)`, signed.
    pub gap: f64,
    /// `|gap| / (1 + 2·vol(α*))`.
    pub relative: f64,
    pub twice_volume: f64,
    pub dual_objective: f64,
    pub primal_kkt_residual: f64,
    pub dual_residual: f64,
}

/// Compares the maximal volume with the minimal co-volume of `k`. At the dual
/// minimizer `cov_k(l*) = 2·vol(α(l*))`, so the two optima agree exactly when
/// `α(l*)` is the volume maximizer.
pub fn duality_gap(
    t: &Triangulation,
    k: &ConeTarget,
    tol: f64,
) -> Result<DualityGap, OptimizeError> {
    let primal = maximize_volume(t, k, tol)?;
    let dual = solve_cone_angles(t, k, tol)?;
    if dual.diverged {
        let norm = dual
            .metric
            .lengths
            .iter()
            .fold(0.0f64, |m, x| m.max(x.abs()));
        return Err(OptimizeError::Diverged { norm });
    }
    let twice_volume = 2.0 * primal.volume;
    let objective = dual_objective(t, k, &dual.metric);
    let gap = objective - twice_volume;
    Ok(DualityGap {
        gap,
        relative: gap.abs() / (1.0 + twice_volume.abs()),
        twice_volume,
        dual_objective: objective,
        primal_kkt_residual: primal.kkt_residual,
        dual_residual: dual.residual,
    })
}

fn distance(a: &GeneralizedMetric, b: &GeneralizedMetric) -> f64 {
    a.lengths
        .iter()
        .zip(&b.lengths)
        .map(|(x, y)| (x - y).powi(2))
        .sum::<f64>()
        .sqrt()
}

/// `rigidity_check_seeded` with `DEFAULT_SEED`.
pub fn rigidity_check(
    t: &Triangulation,
    k: &ConeTarget,
    n_starts: usize,
    tol: f64,
) -> Result<RigidityReport, OptimizeError> {
    rigidity_check_seeded(t, k, n_starts, tol, DEFAULT_SEED)
}

/// Solves for `k` from `n_starts` random metrics (entries uniform in `[-1, 1]`)
/// and reports the largest Euclidean distance between the gauge-projected
/// solutions.
pub fn rigidity_check_seeded(
    t: &Triangulation,
    k: &ConeTarget,
    n_starts: usize,
    tol: f64,
    seed: u64,
) -> Result<RigidityReport, OptimizeError> {
    if n_starts < 2 {
        return Err(OptimizeError::InvalidArgument(format!(
            "need at least 2 starts, got {n_starts}"
        )));
    }
    if tol.is_nan() || tol <= 0.0 {
        return Err(OptimizeError::InvalidArgument(format!(
            "tolerance {tol} must be positive"
        )));
    }
    assemble(t, k)?;
    let solver_tol = (1e-3 * tol).min(1e-10);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut solutions = Vec::new();
    let mut excluded = Vec::new();
    for start in 0..n_starts {
        let l0 = GeneralizedMetric {
            lengths: (0..t.n_edges())
                .map(|_| rng.gen_range(-1.0..=1.0))
                .collect(),
        };
        let l0 = gauge_project(t, &l0);
        match solve_cone_angles_from(t, k, &l0, solver_tol, DualOptions::default()) {
            Ok(r) if !r.diverged => solutions.push(gauge_project(t, &r.metric)),
            Ok(_) => excluded.push((start, "diverged".to_string())),
            Err(e) => excluded.push((start, e.to_string())),
        }
    }
    let mut pairwise_distance: f64 = 0.0;
    for i in 0..solutions.len() {
        for j in (i + 1)..solutions.len() {
            pairwise_distance = pairwise_distance.max(distance(&solutions[i], &solutions[j]));
        }
    }
    if solutions.len() < 2 {
        pairwise_distance = f64::INFINITY;
    }
    Ok(RigidityReport {
        n_starts,
        pairwise_distance,
        all_agree: pairwise_distance <= tol,
        seed,
        excluded,
        solutions,
    })
}
