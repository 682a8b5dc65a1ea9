//! Single decorated 1-3 type tetrahedra.
//!
//! Vertex 1 is hyperideal, vertices 2, 3, 4 are ideal. All six-vectors use
//! the slot order `(12, 13, 14, 23, 24, 34)`.

mod lengths;
mod volume;

use std::f64::consts::PI;

use serde::{Deserialize, Serialize};
use thiserror::Error;

pub use lengths::{
    angles_to_lengths, apply_decoration, classify, classify_angles, extended_angles,
    gauge_invariants, phi, theta_table, AngleRegionLabel, RegionLabel, ThetaTable,
    DEFAULT_CLASSIFY_TOL,
};
pub use volume::{
    boundary_face_hessian, covolume, covolume_gradient, covolume_hessian,
    hyperbolic_triangle_sides, volume_from_angles, volume_gradient, VolumeChart,
};

/// Slot labels in storage order.
pub const SLOTS: [(u8, u8); 6] = [(1, 2), (1, 3), (1, 4), (2, 3), (2, 4), (3, 4)];

/// Tolerance used when checking membership of angle vectors in the closure of `B`.
pub const ANGLE_TOL: f64 = 1e-9;

/// Storage index of the edge `{p, q}` (vertex labels 1..=4, in either order).
pub fn slot_index(p: u8, q: u8) -> Option<usize> {
    let (a, b) = if p < q { (p, q) } else { (q, p) };
    SLOTS.iter().position(|&s| s == (a, b))
}

/// The two ideal vertices other than `i`, in increasing order.
pub(crate) fn others(i: u8) -> (u8, u8) {
    match i {
        2 => (3, 4),
        3 => (2, 4),
        4 => (2, 3),
        _ => unreachable!("ideal vertex label out of range"),
    }
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum TetraError {
    #[error("angles are not in the closed angle polytope: {0}")]
    InvalidAngles(String),
    #[error("angles are not in the open angle polytope: {0}")]
    NotInteriorAngle(String),
    #[error("gradient undefined on the boundary: {0}")]
    BoundaryGradient(String),
    #[error("classification is ambiguous at tolerance {tol}: phi = {phi:?}")]
    AmbiguousClassification { tol: f64, phi: [f64; 6] },
    #[error("lengths are not in the interior region L: {0}")]
    NotInterior(String),
    #[error("point is not on the open boundary face: {0}")]
    OutOfFace(String),
    #[error("angles do not form a hyperbolic triangle: {0}")]
    NotHyperbolic(String),
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}

/// Dihedral angles at the six edges, in radians.
#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
pub struct DihedralAngles {
    pub a12: f64,
    pub a13: f64,
    pub a14: f64,
    pub a23: f64,
    pub a24: f64,
    pub a34: f64,
}

impl DihedralAngles {
    pub const fn from_array(a: [f64; 6]) -> Self {
        Self {
            a12: a[0],
            a13: a[1],
            a14: a[2],
            a23: a[3],
            a24: a[4],
            a34: a[5],
        }
    }

    pub const fn to_array(&self) -> [f64; 6] {
        [self.a12, self.a13, self.a14, self.a23, self.a24, self.a34]
    }

    /// Angle at edge `{p, q}`.
    pub fn get(&self, p: u8, q: u8) -> f64 {
        self.to_array()[slot_index(p, q).expect("invalid edge")]
    }

    /// Completes the angles at the hyperideal edges `(a12, a13, a14)` so that
    /// all three ideal vertex sums equal π.
    pub fn from_hyperideal(u: [f64; 3]) -> Self {
        let [u2, u3, u4] = u;
        Self {
            a12: u2,
            a13: u3,
            a14: u4,
            a23: 0.5 * PI - 0.5 * (u2 + u3 - u4),
            a24: 0.5 * PI - 0.5 * (u2 + u4 - u3),
            a34: 0.5 * PI - 0.5 * (u3 + u4 - u2),
        }
    }

    /// The angles at the edges incident to vertex 1.
    pub fn hyperideal(&self) -> [f64; 3] {
        [self.a12, self.a13, self.a14]
    }

    /// Sum of the angles at the three edges incident to vertex 1.
    pub fn hyperideal_sum(&self) -> f64 {
        self.a12 + self.a13 + self.a14
    }

    /// Angle sums at the ideal vertices 2, 3, 4.
    pub fn ideal_sums(&self) -> [f64; 3] {
        [
            self.a12 + self.a23 + self.a24,
            self.a13 + self.a23 + self.a34,
            self.a14 + self.a24 + self.a34,
        ]
    }

    /// Checks membership in the closure of `B` up to `tol`. Returns a description
    /// of the first violated condition.
    pub fn check_closure(&self, tol: f64) -> Result<(), TetraError> {
        let a = self.to_array();
        if a.iter().any(|x| !x.is_finite()) {
            return Err(TetraError::InvalidAngles(format!(
                "non-finite entry in {a:?}"
            )));
        }
        for (idx, &x) in a.iter().enumerate() {
            if x < -tol || x > PI + tol {
                let (p, q) = SLOTS[idx];
                return Err(TetraError::InvalidAngles(format!(
                    "angle at {p}{q} = {x} outside [0, pi]"
                )));
            }
        }
        for (idx, s) in self.ideal_sums().iter().enumerate() {
            if (s - PI).abs() > tol {
                return Err(TetraError::InvalidAngles(format!(
                    "angle sum at vertex {} is {s}, expected pi",
                    idx + 2
                )));
            }
        }
        let h = self.hyperideal_sum();
        if h > PI + tol {
            return Err(TetraError::InvalidAngles(format!(
                "hyperideal angle sum {h} exceeds pi"
            )));
        }
        Ok(())
    }

    /// Checks membership in the open set `B`: all angles in `(0, π)`, hyperideal
    /// sum below π, ideal sums equal to π up to `tol`.
    pub fn check_open(&self, tol: f64) -> Result<(), TetraError> {
        self.check_closure(tol)
            .map_err(|e| TetraError::NotInteriorAngle(e.to_string()))?;
        let a = self.to_array();
        if let Some(idx) = a.iter().position(|&x| x <= 0.0 || x >= PI) {
            let (p, q) = SLOTS[idx];
            return Err(TetraError::NotInteriorAngle(format!(
                "angle at {p}{q} = {} not in (0, pi)",
                a[idx]
            )));
        }
        if self.hyperideal_sum() >= PI {
            return Err(TetraError::NotInteriorAngle(
                "hyperideal angle sum is not below pi".into(),
            ));
        }
        Ok(())
    }
}

/// The three boundary points `B_II` where the hyperideal vertex collapses onto an
/// ideal face. Index `k` pairs with region `Ω_{k+1}`.
pub const B_II: [DihedralAngles; 3] = [
    DihedralAngles::from_array([PI, 0.0, 0.0, 0.0, 0.0, PI]),
    DihedralAngles::from_array([0.0, PI, 0.0, 0.0, PI, 0.0]),
    DihedralAngles::from_array([0.0, 0.0, PI, PI, 0.0, 0.0]),
];

/// Signed decorated edge lengths, one per slot.
#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
pub struct DecoratedLengths {
    pub l12: f64,
    pub l13: f64,
    pub l14: f64,
    pub l23: f64,
    pub l24: f64,
    pub l34: f64,
}

impl DecoratedLengths {
    pub const fn from_array(l: [f64; 6]) -> Self {
        Self {
            l12: l[0],
            l13: l[1],
            l14: l[2],
            l23: l[3],
            l24: l[4],
            l34: l[5],
        }
    }

    pub const fn to_array(&self) -> [f64; 6] {
        [self.l12, self.l13, self.l14, self.l23, self.l24, self.l34]
    }

    /// Length at edge `{p, q}`.
    pub fn get(&self, p: u8, q: u8) -> f64 {
        self.to_array()[slot_index(p, q).expect("invalid edge")]
    }
}

/// A change of horosphere at the ideal vertices 2, 3, 4.
#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
pub struct Decoration {
    pub w2: f64,
    pub w3: f64,
    pub w4: f64,
}

/// Directions along which lengths change under a decoration change at vertex
/// 2, 3, 4 respectively.
pub const GAUGE_BASIS: [[f64; 6]; 3] = [
    [1.0, 0.0, 0.0, 1.0, 1.0, 0.0],
    [0.0, 1.0, 0.0, 1.0, 0.0, 1.0],
    [0.0, 0.0, 1.0, 0.0, 1.0, 1.0],
];

pub(crate) fn dot6(a: &[f64; 6], b: &[f64; 6]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}
