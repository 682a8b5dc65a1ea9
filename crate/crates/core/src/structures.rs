//! The angle-structure polytope `D_k*` as a linear system in three free
//! variables per tetrahedron, with membership tests and an interior-point
//! feasibility search.

use std::f64::consts::PI;

use microlp::{ComparisonOp, OptimizationDirection, Problem};
use nalgebra::{DMatrix, DVector};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::complex::{
    admissibility_defects, cone_angles, AngleAssignment, ConeTarget, Triangulation,
};
use crate::tetra::{DihedralAngles, VolumeChart};

/// Tolerance on edge equations.
pub const EQ_TOL: f64 = 1e-9;
/// Default slack threshold for declaring an interior point.
pub const LP_SLACK_TOL: f64 = 1e-7;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum StructureError {
    #[error("cone target is inadmissible: {0}")]
    InadmissibleTarget(String),
    #[error("linear program failed: {0}")]
    LpFailure(String),
}

/// Edge equations `A u = b` over `u ∈ ℝ^{3n}`, where `u` holds `(a12, a13, a14)`
/// of each tetrahedron, and the inequalities `u ≥ 0`, `π - Σ u_σ ≥ 0`.
#[derive(Debug, Clone)]
pub struct ConstraintSystem {
    n_tets: usize,
    eq_matrix: DMatrix<f64>,
    eq_rhs: DVector<f64>,
    eq_pinv: DMatrix<f64>,
}

impl ConstraintSystem {
    pub fn n_tets(&self) -> usize {
        self.n_tets
    }

    pub fn n_vars(&self) -> usize {
        3 * self.n_tets
    }

    pub fn equality_matrix(&self) -> &DMatrix<f64> {
        &self.eq_matrix
    }

    pub fn equality_rhs(&self) -> &DVector<f64> {
        &self.eq_rhs
    }

    /// Full angle assignment encoded by `u`.
    pub fn expand(&self, u: &[f64]) -> AngleAssignment {
        AngleAssignment {
            tets: u
                .chunks(3)
                .map(|c| DihedralAngles::from_hyperideal([c[0], c[1], c[2]]))
                .collect(),
        }
    }

    /// Inverse of `expand` on the free variables.
    pub fn free_vars(a: &AngleAssignment) -> Vec<f64> {
        a.tets.iter().flat_map(|t| t.hyperideal()).collect()
    }

    /// The `4n` inequality values: `u_j` for every variable, then `π - Σ u_σ`
    /// for every tetrahedron.
    pub fn slacks(&self, u: &[f64]) -> Vec<f64> {
        let mut out: Vec<f64> = u.to_vec();
        out.extend(u.chunks(3).map(|c| PI - c[0] - c[1] - c[2]));
        out
    }

    pub fn min_slack(&self, u: &[f64]) -> f64 {
        self.slacks(u).into_iter().fold(f64::INFINITY, f64::min)
    }

    /// Max-norm of `A u - b`.
    pub fn equality_residual(&self, u: &[f64]) -> f64 {
        let r = &self.eq_matrix * DVector::from_column_slice(u) - &self.eq_rhs;
        r.amax()
    }

    /// Least-squares correction of `u` onto the affine space `A u = b`.
    pub fn project_onto_equalities(&self, u: &[f64]) -> Vec<f64> {
        let v = DVector::from_column_slice(u);
        let r = &self.eq_matrix * &v - &self.eq_rhs;
        (v - &self.eq_pinv * r).iter().copied().collect()
    }
}

fn check_admissible(t: &Triangulation, k: &ConeTarget) -> Result<(), StructureError> {
    if k.k.len() != t.n_edges() {
        return Err(StructureError::InadmissibleTarget(format!(
            "{} values for {} edge classes",
            k.k.len(),
            t.n_edges()
        )));
    }
    if let Some((e, x)) =
        k.k.iter()
            .enumerate()
            .find(|(_, x)| !x.is_finite() || **x < 0.0)
    {
        return Err(StructureError::InadmissibleTarget(format!(
            "k at edge {e} is {x}"
        )));
    }
    for (v, defect) in admissibility_defects(t, k) {
        let corners = t.vertex_classes()[v].corners.len() as f64;
        if defect.abs() > EQ_TOL * (1.0 + PI * corners) {
            return Err(StructureError::InadmissibleTarget(format!(
                "angle sum at ideal vertex class {v} misses pi times its corner count by {defect}"
            )));
        }
    }
    Ok(())
}

/// Encodes `D_k*` for the target `k`.
pub fn assemble(t: &Triangulation, k: &ConeTarget) -> Result<ConstraintSystem, StructureError> {
    check_admissible(t, k)?;
    let n = t.n_tetrahedra();
    let ne = t.n_edges();
    let mut a = DMatrix::zeros(ne, 3 * n);
    let mut b = DVector::from_column_slice(&k.k);
    // Slot s of a tetrahedron is argument s + 1 of the volume chart.
    for tet in 0..n {
        for slot in 0..6 {
            let e = t.edge_of(tet, slot);
            let (c0, c) = VolumeChart::ARGS[slot + 1];
            for m in 0..3 {
                a[(e, 3 * tet + m)] += c[m];
            }
            b[e] -= c0;
        }
    }
    let eq_pinv = a
        .clone()
        .pseudo_inverse(1e-12)
        .map_err(|e| StructureError::LpFailure(e.to_string()))?;
    Ok(ConstraintSystem {
        n_tets: n,
        eq_matrix: a,
        eq_rhs: b,
        eq_pinv,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum MemberVerdict {
    InteriorDk,
    BoundaryDkStar,
    Outside,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub enum Violation {
    Shape {
        expected: usize,
        found: usize,
    },
    Bound {
        tet: usize,
        slot: usize,
        value: f64,
    },
    IdealSum {
        tet: usize,
        vertex: u8,
        value: f64,
    },
    HyperidealSum {
        tet: usize,
        value: f64,
    },
    EdgeSum {
        edge: usize,
        key: String,
        value: f64,
        target: f64,
    },
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Membership {
    pub verdict: MemberVerdict,
    pub violations: Vec<Violation>,
}

/// Decides whether `a` lies in `D_k`, on the rest of `D_k*`, or outside.
pub fn is_member(t: &Triangulation, a: &AngleAssignment, k: &ConeTarget, tol: f64) -> Membership {
    let mut violations = Vec::new();
    if a.tets.len() != t.n_tetrahedra() || k.k.len() != t.n_edges() {
        violations.push(Violation::Shape {
            expected: t.n_tetrahedra(),
            found: a.tets.len(),
        });
        return Membership {
            verdict: MemberVerdict::Outside,
            violations,
        };
    }
    let mut strict = true;
    for (tet, angles) in a.tets.iter().enumerate() {
        for (slot, &value) in angles.to_array().iter().enumerate() {
            if !(value >= -tol && value <= PI + tol) {
                violations.push(Violation::Bound { tet, slot, value });
            }
            strict &= value > tol && value < PI - tol;
        }
        for (i, &value) in angles.ideal_sums().iter().enumerate() {
            if value.is_nan() || (value - PI).abs() > tol {
                violations.push(Violation::IdealSum {
                    tet,
                    vertex: i as u8 + 2,
                    value,
                });
            }
        }
        let h = angles.hyperideal_sum();
        if h.is_nan() || h > PI + tol {
            violations.push(Violation::HyperidealSum { tet, value: h });
        }
        strict &= h < PI - tol;
    }
    let cone = cone_angles(t, a);
    for (edge, (&value, &target)) in cone.k.iter().zip(&k.k).enumerate() {
        if value.is_nan() || (value - target).abs() > tol {
            let key = t.edge_classes()[edge].key();
            violations.push(Violation::EdgeSum {
                edge,
                key,
                value,
                target,
            });
        }
    }
    let verdict = if !violations.is_empty() {
        MemberVerdict::Outside
    } else if strict {
        MemberVerdict::InteriorDk
    } else {
        MemberVerdict::BoundaryDkStar
    };
    Membership {
        verdict,
        violations,
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum FeasibilityStatus {
    InteriorFound,
    BoundaryOnly,
    Infeasible,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FeasibilityReport {
    pub status: FeasibilityStatus,
    pub witness: Option<AngleAssignment>,
    /// Free variables of the witness, three per tetrahedron.
    pub free_vars: Option<Vec<f64>>,
    /// Smallest inequality slack of the witness, recomputed by substitution;
    /// `-inf` when the linear program has no solution at all.
    pub min_slack: f64,
    pub equality_residual: f64,
}

impl FeasibilityReport {
    fn infeasible() -> Self {
        Self {
            status: FeasibilityStatus::Infeasible,
            witness: None,
            free_vars: None,
            min_slack: f64::NEG_INFINITY,
            equality_residual: f64::NAN,
        }
    }
}

/// Maximizes the common slack `t` of all inequalities over `A u = b` and
/// certifies the verdict by substituting the optimizer back into the system.
pub fn find_interior(
    t: &Triangulation,
    k: &ConeTarget,
    tol: f64,
) -> Result<FeasibilityReport, StructureError> {
    if tol.is_nan() || tol <= 0.0 {
        return Err(StructureError::LpFailure(format!(
            "tolerance {tol} must be positive"
        )));
    }
    let sys = match assemble(t, k) {
        Ok(sys) => sys,
        Err(StructureError::InadmissibleTarget(_)) => return Ok(FeasibilityReport::infeasible()),
        Err(e) => return Err(e),
    };
    let n = sys.n_vars();
    let mut lp = Problem::new(OptimizationDirection::Maximize);
    // With t ≥ -1 every feasible u lies in [-1, π + 3].
    let u: Vec<_> = (0..n).map(|_| lp.add_var(0.0, (-2.0, PI + 4.0))).collect();
    let slack = lp.add_var(1.0, (-1.0, PI));
    for r in 0..sys.eq_matrix.nrows() {
        let row: Vec<_> = (0..n)
            .filter(|&j| sys.eq_matrix[(r, j)] != 0.0)
            .map(|j| (u[j], sys.eq_matrix[(r, j)]))
            .collect();
        if row.is_empty() {
            if sys.eq_rhs[r].abs() > EQ_TOL {
                return Ok(FeasibilityReport::infeasible());
            }
            continue;
        }
        lp.add_constraint(&row, ComparisonOp::Eq, sys.eq_rhs[r]);
    }
    for &var in &u {
        lp.add_constraint([(var, 1.0), (slack, -1.0)], ComparisonOp::Ge, 0.0);
    }
    for tet in 0..sys.n_tets() {
        let row = [
            (u[3 * tet], 1.0),
            (u[3 * tet + 1], 1.0),
            (u[3 * tet + 2], 1.0),
            (slack, 1.0),
        ];
        lp.add_constraint(row, ComparisonOp::Le, PI);
    }
    let outcome = match lp.solve() {
        Ok(s) => s,
        Err(microlp::Error::Infeasible) => return Ok(FeasibilityReport::infeasible()),
        Err(e) => return Err(StructureError::LpFailure(e.to_string())),
    };
    let optimal = outcome.is_optimal();
    let solution = outcome
        .solution()
        .ok_or_else(|| StructureError::LpFailure("solver stopped without a solution".into()))?;
    let raw: Vec<f64> = u.iter().map(|&v| solution.var_value(v)).collect();
    let polished = sys.project_onto_equalities(&raw);
    let residual = sys.equality_residual(&polished);
    if residual > EQ_TOL {
        return Err(StructureError::LpFailure(format!(
            "solution misses the edge equations by {residual}"
        )));
    }
    let min_slack = sys.min_slack(&polished);
    let status = if min_slack > tol {
        FeasibilityStatus::InteriorFound
    } else if !optimal {
        // Without optimality a small slack says nothing about the polytope.
        return Err(StructureError::LpFailure(
            "solver stopped before optimality".into(),
        ));
    } else if min_slack >= -tol {
        FeasibilityStatus::BoundaryOnly
    } else {
        FeasibilityStatus::Infeasible
    };
    Ok(FeasibilityReport {
        status,
        witness: Some(sys.expand(&polished)),
        free_vars: Some(polished),
        min_slack,
        equality_residual: residual,
    })
}
