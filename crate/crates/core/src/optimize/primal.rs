use nalgebra::{DMatrix, DVector};

use super::{OptimizeError, PrimalReport, BOUNDARY_FLAG_TOL};
use crate::complex::{AngleAssignment, ConeTarget, Triangulation};
use crate::structures::{
    assemble, find_interior, ConstraintSystem, FeasibilityStatus, EQ_TOL, LP_SLACK_TOL,
};
use crate::tetra::{VolumeChart, B_II};

const MU_START: f64 = 1.0;
const MU_SHRINK: f64 = 0.1;
const MAX_STAGES: usize = 40;
const MAX_NEWTON: usize = 200;
const ARMIJO: f64 = 1e-4;

/// Basis of the null space of `A`, from the eigenvectors of `AᵀA`.
fn null_space(a: &DMatrix<f64>) -> DMatrix<f64> {
    let n = a.ncols();
    if a.nrows() == 0 {
        return DMatrix::identity(n, n);
    }
    let eig = (a.transpose() * a).symmetric_eigen();
    let max = eig.eigenvalues.iter().fold(0.0f64, |m, &x| m.max(x.abs()));
    let cols: Vec<usize> = (0..n)
        .filter(|&i| eig.eigenvalues[i].abs() <= 1e-10 * max.max(1.0))
        .collect();
    DMatrix::from_fn(n, cols.len(), |r, c| eig.eigenvectors[(r, cols[c])])
}

struct Barrier<'a> {
    sys: &'a ConstraintSystem,
}

impl Barrier<'_> {
    fn volume(&self, u: &DVector<f64>) -> f64 {
        u.as_slice()
            .chunks(3)
            .map(|c| 0.5 * VolumeChart::twice_volume([c[0], c[1], c[2]]))
            .sum()
    }

    fn value(&self, u: &DVector<f64>, mu: f64) -> f64 {
        let log_sum: f64 = self.sys.slacks(u.as_slice()).iter().map(|g| g.ln()).sum();
        -self.volume(u) - mu * log_sum
    }

    /// Gradient of the total volume in `u`.
    fn volume_gradient(&self, u: &DVector<f64>) -> DVector<f64> {
        let mut g = DVector::zeros(u.len());
        for (tet, c) in u.as_slice().chunks(3).enumerate() {
            let gt = VolumeChart::twice_volume_gradient([c[0], c[1], c[2]]);
            for m in 0..3 {
                g[3 * tet + m] = 0.5 * gt[m];
            }
        }
        g
    }

    /// Gradient and Hessian of the barrier objective in `u`.
    fn derivatives(&self, u: &DVector<f64>, mu: f64) -> (DVector<f64>, DMatrix<f64>) {
        let n = u.len();
        let mut grad = -self.volume_gradient(u);
        let mut hess = DMatrix::zeros(n, n);
        for (tet, c) in u.as_slice().chunks(3).enumerate() {
            let ht = VolumeChart::twice_volume_hessian([c[0], c[1], c[2]]);
            let cap = std::f64::consts::PI - c[0] - c[1] - c[2];
            for p in 0..3 {
                let (ip, gp) = (3 * tet + p, c[p]);
                grad[ip] += -mu / gp + mu / cap;
                hess[(ip, ip)] += mu / (gp * gp);
                for q in 0..3 {
                    hess[(ip, 3 * tet + q)] += -0.5 * ht[p][q] + mu / (cap * cap);
                }
            }
        }
        (grad, hess)
    }

    /// Stationarity part of the KKT residual: the reduced gradient of
    /// `vol + Σ λ_j g_j` with multipliers `λ_j = μ / g_j`.
    fn stationarity(&self, u: &DVector<f64>, mu: f64, basis: &DMatrix<f64>) -> f64 {
        let (grad, _) = self.derivatives(u, mu);
        (basis.transpose() * grad).amax()
    }
}

fn boundary_flags(a: &AngleAssignment) -> Vec<bool> {
    a.tets
        .iter()
        .map(|t| {
            let x = t.to_array();
            B_II.iter().any(|b| {
                b.to_array()
                    .iter()
                    .zip(&x)
                    .all(|(p, q)| (p - q).abs() <= BOUNDARY_FLAG_TOL)
            })
        })
        .collect()
}

/// Maximizes the total volume over `D_k*`, starting from the interior point
/// found by the feasibility linear program.
pub fn maximize_volume(
    t: &Triangulation,
    k: &ConeTarget,
    tol: f64,
) -> Result<PrimalReport, OptimizeError> {
    let feas = find_interior(t, k, LP_SLACK_TOL)?;
    if feas.status != FeasibilityStatus::InteriorFound {
        return Err(OptimizeError::NoInteriorStart(feas.status));
    }
    let start = feas.witness.expect("interior report carries a witness");
    maximize_volume_from(t, k, &start, tol)
}

/// Log-barrier Newton iteration in the null-space chart of the edge equations.
pub fn maximize_volume_from(
    t: &Triangulation,
    k: &ConeTarget,
    start: &AngleAssignment,
    tol: f64,
) -> Result<PrimalReport, OptimizeError> {
    if tol.is_nan() || tol <= 0.0 {
        return Err(OptimizeError::InvalidArgument(format!(
            "tolerance {tol} must be positive"
        )));
    }
    let sys = assemble(t, k)?;
    if start.tets.len() != sys.n_tets() {
        return Err(OptimizeError::InvalidArgument(
            "start has the wrong number of tetrahedra".into(),
        ));
    }
    let u0 = sys.project_onto_equalities(&ConstraintSystem::free_vars(start));
    if sys.equality_residual(&u0) > EQ_TOL || sys.min_slack(&u0) <= 0.0 {
        return Err(OptimizeError::NoInteriorStart(
            FeasibilityStatus::BoundaryOnly,
        ));
    }
    let basis = null_space(sys.equality_matrix());
    let barrier = Barrier { sys: &sys };
    let mut u = DVector::from_vec(u0);
    let mut mu = MU_START;
    let mut iterations = 0;
    let mut stage_volumes = Vec::new();
    let mut residual = f64::INFINITY;

    for _stage in 0..MAX_STAGES {
        if basis.ncols() > 0 {
            for _ in 0..MAX_NEWTON {
                let (grad, hess) = barrier.derivatives(&u, mu);
                let gz = basis.transpose() * &grad;
                if gz.amax() <= 0.1 * tol {
                    break;
                }
                let hz = basis.transpose() * &hess * &basis;
                let dz = match hz.clone().cholesky() {
                    Some(ch) => ch.solve(&(-&gz)),
                    None => -gz.clone(),
                };
                let slope = gz.dot(&dz);
                if slope >= 0.0 {
                    break;
                }
                let du = &basis * dz;
                let f0 = barrier.value(&u, mu);
                let noise = 1e-14 * (1.0 + f0.abs());
                let mut step = 1.0;
                let mut accepted = false;
                for _ in 0..60 {
                    let trial = &u + step * &du;
                    if sys.min_slack(trial.as_slice()) > 0.0 {
                        let f1 = barrier.value(&trial, mu);
                        if f1 <= f0 + ARMIJO * step * slope + noise {
                            u = trial;
                            accepted = true;
                            break;
                        }
                    }
                    step *= 0.5;
                }
                iterations += 1;
                // Newton decrement below rounding: the stage is converged as far
                // as floating point allows.
                if !accepted || -slope < 1e-28 {
                    break;
                }
            }
        }
        stage_volumes.push(barrier.volume(&u));
        let stationarity = if basis.ncols() > 0 {
            barrier.stationarity(&u, mu, &basis)
        } else {
            0.0
        };
        residual = stationarity.max(mu);
        if residual <= tol {
            let maximizer = sys.expand(u.as_slice());
            let flags = boundary_flags(&maximizer);
            return Ok(PrimalReport {
                volume: barrier.volume(&u),
                maximizer,
                kkt_residual: residual,
                boundary_flags: flags,
                iterations,
                stage_volumes,
            });
        }
        mu = (mu * MU_SHRINK).max(0.5 * tol);
    }
    Err(OptimizeError::MaxIterations {
        iterations,
        residual,
    })
}
