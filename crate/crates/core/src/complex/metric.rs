use std::f64::consts::PI;

use nalgebra::DVector;

use super::{AngleAssignment, ConeTarget, GeneralizedMetric, Triangulation};
use crate::tetra::extended_angles;

/// Cone angle at each edge class: the sum of the dihedral angles over its slots.
pub fn cone_angles(t: &Triangulation, a: &AngleAssignment) -> ConeTarget {
    let mut k = vec![0.0; t.n_edges()];
    for (tet, angles) in a.tets.iter().enumerate() {
        for (slot, value) in angles.to_array().iter().enumerate() {
            k[t.edge_of(tet, slot)] += value;
        }
    }
    ConeTarget { k }
}

/// Extended dihedral angles of every tetrahedron under the metric `l`.
pub fn assignment_from_metric(t: &Triangulation, l: &GeneralizedMetric) -> AngleAssignment {
    AngleAssignment {
        tets: (0..t.n_tetrahedra())
            .map(|tet| extended_angles(&t.tet_lengths(l, tet)))
            .collect(),
    }
}

/// Discrete curvature `2π - cone angle` at each edge class.
pub fn curvature(t: &Triangulation, l: &GeneralizedMetric) -> Vec<f64> {
    cone_angles(t, &assignment_from_metric(t, l))
        .k
        .iter()
        .map(|k| 2.0 * PI - k)
        .collect()
}

/// Orthogonal projection of `l` onto the complement of the decoration gauge.
pub fn gauge_project(t: &Triangulation, l: &GeneralizedMetric) -> GeneralizedMetric {
    let v = DVector::from_column_slice(&l.lengths);
    let p = t.gauge_projector() * v;
    GeneralizedMetric {
        lengths: p.iter().copied().collect(),
    }
}

/// `Σ_e mult_v(e)·k(e) - π·corners(v)` for each ideal vertex class `v`, paired
/// with the class id. A target is admissible when all defects vanish.
pub fn admissibility_defects(t: &Triangulation, k: &ConeTarget) -> Vec<(usize, f64)> {
    t.ideal_vertex_classes()
        .into_iter()
        .map(|v| {
            let total: f64 = t
                .edge_classes()
                .iter()
                .zip(&k.k)
                .map(|(e, ke)| e.multiplicity(v) as f64 * ke)
                .sum();
            (v, total - PI * t.vertex_classes()[v].corners.len() as f64)
        })
        .collect()
}
