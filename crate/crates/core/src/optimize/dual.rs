use super::{DualReport, OptimizeError};
use crate::complex::{
    assignment_from_metric, cone_angles, gauge_project, ConeTarget, GeneralizedMetric,
    Triangulation,
};
use crate::structures::assemble;
use crate::tetra::covolume;

/// Tunables of the co-volume descent.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DualOptions {
    pub max_iterations: usize,
    /// Cap on `‖l‖∞` beyond which the descent is stopped.
    pub length_cap: f64,
    /// Window, in iterations, of the gradient-stagnation test.
    pub stagnation_window: usize,
}

impl Default for DualOptions {
    fn default() -> Self {
        Self {
            max_iterations: 20_000,
            length_cap: 1e3,
            stagnation_window: 100,
        }
    }
}

/// `cov_k(l) = Σ_σ cov(l_σ) - k·l`.
pub fn dual_objective(t: &Triangulation, k: &ConeTarget, l: &GeneralizedMetric) -> f64 {
    let cov: f64 = (0..t.n_tetrahedra())
        .map(|tet| covolume(&t.tet_lengths(l, tet)))
        .sum();
    cov - k.k.iter().zip(&l.lengths).map(|(a, b)| a * b).sum::<f64>()
}

struct Point {
    l: Vec<f64>,
    f: f64,
    /// Raw gradient `k_α(l) - k`.
    raw: Vec<f64>,
    /// Gauge-projected gradient.
    g: Vec<f64>,
}

fn evaluate(t: &Triangulation, k: &ConeTarget, l: Vec<f64>) -> Point {
    let metric = GeneralizedMetric { lengths: l };
    let f = dual_objective(t, k, &metric);
    let cone = cone_angles(t, &assignment_from_metric(t, &metric));
    let raw: Vec<f64> = cone.k.iter().zip(&k.k).map(|(a, b)| a - b).collect();
    let g = gauge_project(
        t,
        &GeneralizedMetric {
            lengths: raw.clone(),
        },
    )
    .lengths;
    Point {
        l: metric.lengths,
        f,
        raw,
        g,
    }
}

fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

fn max_abs(a: &[f64]) -> f64 {
    a.iter().fold(0.0f64, |m, x| m.max(x.abs()))
}

/// Finds a metric whose cone angles are `k`, starting from the zero metric.
pub fn solve_cone_angles(
    t: &Triangulation,
    k: &ConeTarget,
    tol: f64,
) -> Result<DualReport, OptimizeError> {
    let zero = GeneralizedMetric {
        lengths: vec![0.0; t.n_edges()],
    };
    solve_cone_angles_from(t, k, &zero, tol, DualOptions::default())
}

/// Barzilai-Borwein gradient descent on `cov_k` with Armijo backtracking and
/// gauge projection of iterates and gradients.
pub fn solve_cone_angles_from(
    t: &Triangulation,
    k: &ConeTarget,
    start: &GeneralizedMetric,
    tol: f64,
    opts: DualOptions,
) -> Result<DualReport, OptimizeError> {
    if tol.is_nan() || tol <= 0.0 {
        return Err(OptimizeError::InvalidArgument(format!(
            "tolerance {tol} must be positive"
        )));
    }
    if start.lengths.len() != t.n_edges() || start.lengths.iter().any(|x| !x.is_finite()) {
        return Err(OptimizeError::InvalidArgument(
            "start metric has the wrong shape".into(),
        ));
    }
    assemble(t, k)?;
    let mut p = evaluate(t, k, gauge_project(t, start).lengths);
    let mut trace = vec![p.f];
    let mut step = 1.0;
    let mut grad_history = vec![max_abs(&p.g)];
    let report = |p: &Point, diverged: bool, iterations: usize, trace: Vec<f64>| DualReport {
        metric: GeneralizedMetric {
            lengths: p.l.clone(),
        },
        residual: max_abs(&p.raw),
        diverged,
        objective: p.f,
        iterations,
        objective_trace: trace,
    };

    for it in 0..opts.max_iterations {
        if max_abs(&p.raw) <= tol {
            return Ok(report(&p, false, it, trace));
        }
        let norm = max_abs(&p.l);
        if norm > opts.length_cap {
            let w = opts.stagnation_window.min(grad_history.len() - 1);
            let then = grad_history[grad_history.len() - 1 - w];
            let now = max_abs(&p.g);
            if now >= 0.5 * then {
                return Ok(report(&p, true, it, trace));
            }
            return Err(OptimizeError::Diverged { norm });
        }
        let gg = dot(&p.g, &p.g);
        let noise = 1e-14 * (1.0 + p.f.abs());
        let mut trial_step = step;
        let mut next = None;
        for _ in 0..80 {
            let l: Vec<f64> =
                p.l.iter()
                    .zip(&p.g)
                    .map(|(x, g)| x - trial_step * g)
                    .collect();
            let l = gauge_project(t, &GeneralizedMetric { lengths: l }).lengths;
            let q = evaluate(t, k, l);
            if q.f <= p.f - 1e-4 * trial_step * gg + noise {
                next = Some(q);
                break;
            }
            trial_step *= 0.5;
        }
        let Some(q) = next else {
            return Err(OptimizeError::MaxIterations {
                iterations: it,
                residual: max_abs(&p.raw),
            });
        };
        let s: Vec<f64> = q.l.iter().zip(&p.l).map(|(a, b)| a - b).collect();
        let y: Vec<f64> = q.g.iter().zip(&p.g).map(|(a, b)| a - b).collect();
        let sy = dot(&s, &y);
        step = if sy > 0.0 {
            (dot(&s, &s) / sy).clamp(1e-10, 1e10)
        } else {
            2.0 * trial_step
        };
        p = q;
        trace.push(p.f);
        grad_history.push(max_abs(&p.g));
    }
    Err(OptimizeError::MaxIterations {
        iterations: opts.max_iterations,
        residual: max_abs(&p.raw),
    })
}
