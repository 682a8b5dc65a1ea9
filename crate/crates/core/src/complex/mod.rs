//! Closed 1-3 type triangulations: gluing validation, edge and vertex classes,
//! metrics, angle assignments and the decoration gauge.
//!
//! Tetrahedra are indexed from 0. Vertex labels are 1..=4 with vertex 1
//! hyperideal; face `f` is the face opposite vertex `f`.

mod fixture;
mod metric;

use std::collections::BTreeMap;

use nalgebra::{DMatrix, DVector};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::tetra::{DecoratedLengths, DihedralAngles, SLOTS};

pub use fixture::{doubled_fixture, random_closed_triangulation, DoubledFixture};
pub use metric::{
    admissibility_defects, assignment_from_metric, cone_angles, curvature, gauge_project,
};

pub const TRI_FORMAT: &str = "hyptet-tri-v1";

/// Relative eigenvalue cutoff for the Gram pseudo-inverse of the gauge vectors.
pub const GAUGE_PINV_TOL: f64 = 1e-10;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum ComplexError {
    #[error("gluing {gluing}: index out of range: {detail}")]
    IndexOutOfRange { gluing: usize, detail: String },
    #[error("gluing {gluing}: bad permutation: {detail}")]
    BadPermutation { gluing: usize, detail: String },
    #[error("gluing {gluing}: vertex type violation: {detail}")]
    TypeViolation { gluing: usize, detail: String },
    #[error("face {face} of tetrahedron {tet} is unpaired: {detail}")]
    UnpairedFace {
        tet: usize,
        face: u8,
        detail: String,
    },
    #[error("malformed document: {0}")]
    Format(String),
    #[error("edge values do not match the triangulation: {0}")]
    EdgeMismatch(String),
    #[error("lengths are not in the interior region L: {0}")]
    NotInterior(String),
}

/// One face identification as it appears in a triangulation document.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Gluing {
    pub tet: usize,
    pub face: u8,
    pub to_tet: usize,
    pub to_face: u8,
    pub vertex_map: [u8; 4],
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TriangulationDoc {
    pub format: String,
    pub tetrahedra: usize,
    pub gluings: Vec<Gluing>,
}

/// A `(tetrahedron, edge slot)` pair; `slot` indexes `tetra::SLOTS`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct EdgeSlot {
    pub tet: usize,
    pub slot: usize,
}

impl EdgeSlot {
    pub fn vertices(&self) -> (u8, u8) {
        SLOTS[self.slot]
    }

    /// Canonical text key such as `"0:12"`.
    pub fn key(&self) -> String {
        let (p, q) = self.vertices();
        format!("{}:{}{}", self.tet, p, q)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Corner {
    pub tet: usize,
    pub vertex: u8,
}

#[derive(Debug, Clone, PartialEq)]
pub struct EdgeClass {
    /// All slots in the class, sorted; the first is the canonical representative.
    pub slots: Vec<EdgeSlot>,
    /// Vertex classes of the two endpoints of the representative slot.
    pub endpoints: [usize; 2],
}

impl EdgeClass {
    pub fn key(&self) -> String {
        self.slots[0].key()
    }

    /// Number of endpoints lying in vertex class `v` (0, 1 or 2).
    pub fn multiplicity(&self, v: usize) -> usize {
        self.endpoints.iter().filter(|&&e| e == v).count()
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct VertexClass {
    pub ideal: bool,
    pub corners: Vec<Corner>,
}

/// Where a face is glued: target tetrahedron, target face and vertex map.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct FacePartner {
    pub tet: usize,
    pub face: u8,
    pub vertex_map: [u8; 4],
}

/// A validated closed triangulation with its derived combinatorics.
#[derive(Debug, Clone)]
pub struct Triangulation {
    n_tetrahedra: usize,
    gluings: Vec<Gluing>,
    partners: Vec<[FacePartner; 4]>,
    edge_of_slot: Vec<[usize; 6]>,
    edge_classes: Vec<EdgeClass>,
    vertex_of_corner: Vec<[usize; 4]>,
    vertex_classes: Vec<VertexClass>,
    gauge_projector: DMatrix<f64>,
}

/// Signed decorated lengths, one per edge class.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GeneralizedMetric {
    pub lengths: Vec<f64>,
}

/// Prescribed cone angles, one per edge class.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ConeTarget {
    pub k: Vec<f64>,
}

/// Dihedral angles of every tetrahedron.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AngleAssignment {
    pub tets: Vec<DihedralAngles>,
}

/// Document form of per-edge-class values (metrics, cone targets, curvatures).
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EdgeValuesDoc {
    pub edges: Vec<String>,
    pub values: Vec<f64>,
}

/// Document form of an angle assignment: six angles per tetrahedron in slot order.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AssignmentDoc {
    pub angles: Vec<[f64; 6]>,
}

impl From<&AngleAssignment> for AssignmentDoc {
    fn from(a: &AngleAssignment) -> Self {
        Self {
            angles: a.tets.iter().map(|t| t.to_array()).collect(),
        }
    }
}

impl From<&AssignmentDoc> for AngleAssignment {
    fn from(d: &AssignmentDoc) -> Self {
        Self {
            tets: d
                .angles
                .iter()
                .map(|&a| DihedralAngles::from_array(a))
                .collect(),
        }
    }
}

struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    fn new(n: usize) -> Self {
        Self {
            parent: (0..n).collect(),
        }
    }

    fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            // Keep the smaller index as root so roots are class minima.
            let (lo, hi) = if ra < rb { (ra, rb) } else { (rb, ra) };
            self.parent[hi] = lo;
        }
    }

    /// Dense class ids numbered by first appearance, which is by least member.
    fn labels(&mut self) -> (Vec<usize>, usize) {
        let n = self.parent.len();
        let mut id_of_root = vec![usize::MAX; n];
        let mut out = vec![0; n];
        let mut next = 0;
        for (x, slot) in out.iter_mut().enumerate() {
            let r = self.find(x);
            if id_of_root[r] == usize::MAX {
                id_of_root[r] = next;
                next += 1;
            }
            *slot = id_of_root[r];
        }
        (out, next)
    }
}

fn check_gluing(idx: usize, g: &Gluing, n: usize) -> Result<(), ComplexError> {
    let range = |detail: String| ComplexError::IndexOutOfRange {
        gluing: idx,
        detail,
    };
    if g.tet >= n {
        return Err(range(format!("tet {} with {} tetrahedra", g.tet, n)));
    }
    if g.to_tet >= n {
        return Err(range(format!("to_tet {} with {} tetrahedra", g.to_tet, n)));
    }
    for (name, f) in [("face", g.face), ("to_face", g.to_face)] {
        if !(1..=4).contains(&f) {
            return Err(range(format!("{name} {f} not in 1..=4")));
        }
    }
    if let Some(v) = g.vertex_map.iter().find(|v| !(1..=4).contains(*v)) {
        return Err(range(format!("vertex_map entry {v} not in 1..=4")));
    }
    let mut seen = [false; 5];
    for &v in &g.vertex_map {
        if seen[v as usize] {
            return Err(ComplexError::BadPermutation {
                gluing: idx,
                detail: format!("vertex_map {:?} repeats {v}", g.vertex_map),
            });
        }
        seen[v as usize] = true;
    }
    for v in (1..=4u8).filter(|&v| v != g.face) {
        let image = g.vertex_map[(v - 1) as usize];
        if (v == 1) != (image == 1) {
            return Err(ComplexError::TypeViolation {
                gluing: idx,
                detail: format!("vertex {v} of face {} maps to vertex {image}", g.face),
            });
        }
    }
    let opposite = g.vertex_map[(g.face - 1) as usize];
    if opposite != g.to_face {
        return Err(ComplexError::BadPermutation {
            gluing: idx,
            detail: format!(
                "vertex_map sends face {} to face {opposite}, expected to_face {}",
                g.face, g.to_face
            ),
        });
    }
    Ok(())
}

fn invert(map: [u8; 4]) -> [u8; 4] {
    let mut inv = [0u8; 4];
    for (v, &image) in map.iter().enumerate() {
        inv[(image - 1) as usize] = v as u8 + 1;
    }
    inv
}

/// Validates a triangulation document and derives its edge and vertex classes.
pub fn validate(doc: &TriangulationDoc) -> Result<Triangulation, ComplexError> {
    if doc.format != TRI_FORMAT {
        return Err(ComplexError::Format(format!(
            "format tag {:?}, expected {TRI_FORMAT:?}",
            doc.format
        )));
    }
    let n = doc.tetrahedra;
    if n == 0 {
        return Err(ComplexError::Format(
            "triangulation has no tetrahedra".into(),
        ));
    }
    let mut partners: Vec<[Option<FacePartner>; 4]> = vec![[None; 4]; n];
    for (idx, g) in doc.gluings.iter().enumerate() {
        check_gluing(idx, g, n)?;
        if g.tet == g.to_tet && g.face == g.to_face {
            return Err(ComplexError::UnpairedFace {
                tet: g.tet,
                face: g.face,
                detail: format!("gluing {idx} glues the face to itself"),
            });
        }
        let forward = FacePartner {
            tet: g.to_tet,
            face: g.to_face,
            vertex_map: g.vertex_map,
        };
        let backward = FacePartner {
            tet: g.tet,
            face: g.face,
            vertex_map: invert(g.vertex_map),
        };
        for (tet, face, partner) in [(g.tet, g.face, forward), (g.to_tet, g.to_face, backward)] {
            let cell = &mut partners[tet][(face - 1) as usize];
            if cell.is_some() {
                return Err(ComplexError::UnpairedFace {
                    tet,
                    face,
                    detail: format!("glued more than once (again by gluing {idx})"),
                });
            }
            *cell = Some(partner);
        }
    }
    let mut full = Vec::with_capacity(n);
    for (tet, faces) in partners.iter().enumerate() {
        let mut row = [FacePartner {
            tet: 0,
            face: 0,
            vertex_map: [0; 4],
        }; 4];
        for (f, p) in faces.iter().enumerate() {
            row[f] = p.ok_or_else(|| ComplexError::UnpairedFace {
                tet,
                face: f as u8 + 1,
                detail: "not glued to any face".into(),
            })?;
        }
        full.push(row);
    }

    let mut edges = UnionFind::new(6 * n);
    let mut corners = UnionFind::new(4 * n);
    let slot_id = |tet: usize, p: u8, q: u8| 6 * tet + crate::tetra::slot_index(p, q).unwrap();
    let corner_id = |tet: usize, v: u8| 4 * tet + (v - 1) as usize;
    for g in &doc.gluings {
        let image = |v: u8| g.vertex_map[(v - 1) as usize];
        let on_face: Vec<u8> = (1..=4u8).filter(|&v| v != g.face).collect();
        for &v in &on_face {
            corners.union(corner_id(g.tet, v), corner_id(g.to_tet, image(v)));
        }
        for a in 0..3 {
            for b in (a + 1)..3 {
                let (p, q) = (on_face[a], on_face[b]);
                edges.union(slot_id(g.tet, p, q), slot_id(g.to_tet, image(p), image(q)));
            }
        }
    }

    let (corner_labels, n_vertex_classes) = corners.labels();
    let mut vertex_classes: Vec<VertexClass> = Vec::with_capacity(n_vertex_classes);
    let mut vertex_of_corner = vec![[0usize; 4]; n];
    for (cid, &label) in corner_labels.iter().enumerate() {
        let corner = Corner {
            tet: cid / 4,
            vertex: (cid % 4) as u8 + 1,
        };
        vertex_of_corner[corner.tet][(corner.vertex - 1) as usize] = label;
        let ideal = corner.vertex != 1;
        if label == vertex_classes.len() {
            vertex_classes.push(VertexClass {
                ideal,
                corners: vec![corner],
            });
        } else {
            let class = &mut vertex_classes[label];
            if class.ideal != ideal {
                return Err(ComplexError::TypeViolation {
                    gluing: 0,
                    detail: format!("vertex class {label} mixes ideal and hyperideal corners"),
                });
            }
            class.corners.push(corner);
        }
    }

    let (slot_labels, _) = edges.labels();
    let mut edge_classes: Vec<EdgeClass> = Vec::new();
    let mut edge_of_slot = vec![[0usize; 6]; n];
    for (sid, &label) in slot_labels.iter().enumerate() {
        let slot = EdgeSlot {
            tet: sid / 6,
            slot: sid % 6,
        };
        edge_of_slot[slot.tet][slot.slot] = label;
        if label == edge_classes.len() {
            let (p, q) = slot.vertices();
            let endpoints = [
                vertex_of_corner[slot.tet][(p - 1) as usize],
                vertex_of_corner[slot.tet][(q - 1) as usize],
            ];
            edge_classes.push(EdgeClass {
                slots: vec![slot],
                endpoints,
            });
        } else {
            edge_classes[label].slots.push(slot);
        }
    }

    let gauge_projector = build_gauge_projector(&edge_classes, &vertex_classes);
    Ok(Triangulation {
        n_tetrahedra: n,
        gluings: doc.gluings.clone(),
        partners: full,
        edge_of_slot,
        edge_classes,
        vertex_of_corner,
        vertex_classes,
        gauge_projector,
    })
}

/// `I - W (WᵀW)⁺ Wᵀ` where the columns of `W` are the gauge vectors `w_v`.
fn build_gauge_projector(edges: &[EdgeClass], vertices: &[VertexClass]) -> DMatrix<f64> {
    let ideal: Vec<usize> = (0..vertices.len()).filter(|&v| vertices[v].ideal).collect();
    let ne = edges.len();
    let w = DMatrix::from_fn(ne, ideal.len(), |e, c| {
        edges[e].multiplicity(ideal[c]) as f64
    });
    let gram = w.transpose() * &w;
    let eig = gram.symmetric_eigen();
    let max = eig.eigenvalues.iter().fold(0.0f64, |m, &x| m.max(x.abs()));
    let mut inv_diag = DVector::zeros(eig.eigenvalues.len());
    for (i, &lam) in eig.eigenvalues.iter().enumerate() {
        if lam.abs() > GAUGE_PINV_TOL * max {
            inv_diag[i] = 1.0 / lam;
        }
    }
    let pinv = &eig.eigenvectors * DMatrix::from_diagonal(&inv_diag) * eig.eigenvectors.transpose();
    DMatrix::identity(ne, ne) - &w * pinv * w.transpose()
}

impl Triangulation {
    pub fn from_json(text: &str) -> Result<Self, ComplexError> {
        let doc: TriangulationDoc =
            serde_json::from_str(text).map_err(|e| ComplexError::Format(e.to_string()))?;
        validate(&doc)
    }

    pub fn to_doc(&self) -> TriangulationDoc {
        TriangulationDoc {
            format: TRI_FORMAT.to_string(),
            tetrahedra: self.n_tetrahedra,
            gluings: self.gluings.clone(),
        }
    }

    pub fn n_tetrahedra(&self) -> usize {
        self.n_tetrahedra
    }

    pub fn gluings(&self) -> &[Gluing] {
        &self.gluings
    }

    pub fn face_partner(&self, tet: usize, face: u8) -> FacePartner {
        self.partners[tet][(face - 1) as usize]
    }

    pub fn n_edges(&self) -> usize {
        self.edge_classes.len()
    }

    pub fn edge_classes(&self) -> &[EdgeClass] {
        &self.edge_classes
    }

    pub fn vertex_classes(&self) -> &[VertexClass] {
        &self.vertex_classes
    }

    /// Ids of the ideal vertex classes, increasing.
    pub fn ideal_vertex_classes(&self) -> Vec<usize> {
        (0..self.vertex_classes.len())
            .filter(|&v| self.vertex_classes[v].ideal)
            .collect()
    }

    /// Edge class containing slot `slot` of tetrahedron `tet`.
    pub fn edge_of(&self, tet: usize, slot: usize) -> usize {
        self.edge_of_slot[tet][slot]
    }

    /// Vertex class of corner `vertex` (1..=4) of tetrahedron `tet`.
    pub fn vertex_of(&self, tet: usize, vertex: u8) -> usize {
        self.vertex_of_corner[tet][(vertex - 1) as usize]
    }

    pub fn edge_keys(&self) -> Vec<String> {
        self.edge_classes.iter().map(EdgeClass::key).collect()
    }

    /// Gauge vector `w_v(e) = mult_v(e)` of vertex class `v`.
    pub fn gauge_vector(&self, v: usize) -> Vec<f64> {
        self.edge_classes
            .iter()
            .map(|e| e.multiplicity(v) as f64)
            .collect()
    }

    pub fn gauge_projector(&self) -> &DMatrix<f64> {
        &self.gauge_projector
    }

    /// Per-tetrahedron lengths induced by an edge metric.
    pub fn tet_lengths(&self, l: &GeneralizedMetric, tet: usize) -> DecoratedLengths {
        let row = &self.edge_of_slot[tet];
        DecoratedLengths::from_array(std::array::from_fn(|s| l.lengths[row[s]]))
    }

    /// Encodes per-edge-class values with canonical keys.
    pub fn edge_values_doc(&self, values: &[f64]) -> EdgeValuesDoc {
        EdgeValuesDoc {
            edges: self.edge_keys(),
            values: values.to_vec(),
        }
    }

    /// Decodes per-edge-class values; every class must appear exactly once.
    pub fn read_edge_values(&self, doc: &EdgeValuesDoc) -> Result<Vec<f64>, ComplexError> {
        if doc.edges.len() != doc.values.len() {
            return Err(ComplexError::EdgeMismatch(format!(
                "{} keys but {} values",
                doc.edges.len(),
                doc.values.len()
            )));
        }
        let index: BTreeMap<String, usize> = self
            .edge_keys()
            .into_iter()
            .enumerate()
            .map(|(i, k)| (k, i))
            .collect();
        let mut out = vec![None; self.n_edges()];
        for (key, &value) in doc.edges.iter().zip(&doc.values) {
            let &e = index
                .get(key)
                .ok_or_else(|| ComplexError::EdgeMismatch(format!("unknown edge key {key:?}")))?;
            if !value.is_finite() {
                return Err(ComplexError::EdgeMismatch(format!(
                    "non-finite value at {key}"
                )));
            }
            if out[e].replace(value).is_some() {
                return Err(ComplexError::EdgeMismatch(format!(
                    "edge key {key:?} repeated"
                )));
            }
        }
        out.into_iter()
            .enumerate()
            .map(|(e, v)| {
                v.ok_or_else(|| {
                    ComplexError::EdgeMismatch(format!(
                        "missing edge {}",
                        self.edge_classes[e].key()
                    ))
                })
            })
            .collect()
    }
}
