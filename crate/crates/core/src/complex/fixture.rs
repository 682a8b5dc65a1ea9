use rand::seq::SliceRandom;
use rand::Rng;

use super::{
    assignment_from_metric, cone_angles, validate, AngleAssignment, ComplexError, ConeTarget,
    GeneralizedMetric, Gluing, Triangulation, TriangulationDoc, TRI_FORMAT,
};
use crate::tetra::{classify, DecoratedLengths, RegionLabel, DEFAULT_CLASSIFY_TOL};

/// The double of a single tetrahedron together with the metric it carries and
/// the cone angles that metric induces.
#[derive(Debug, Clone)]
pub struct DoubledFixture {
    pub triangulation: Triangulation,
    pub metric: GeneralizedMetric,
    pub target: ConeTarget,
    pub assignment: AngleAssignment,
}

/// Glues two copies of a tetrahedron along the identity on all four faces and
/// gives both copies the lengths `l0`.
pub fn doubled_fixture(l0: &DecoratedLengths) -> Result<DoubledFixture, ComplexError> {
    match classify(l0, DEFAULT_CLASSIFY_TOL) {
        Ok(RegionLabel::InteriorL) => {}
        Ok(label) => return Err(ComplexError::NotInterior(format!("classified as {label}"))),
        Err(e) => return Err(ComplexError::NotInterior(e.to_string())),
    }
    let doc = TriangulationDoc {
        format: TRI_FORMAT.into(),
        tetrahedra: 2,
        gluings: (1..=4)
            .map(|f| Gluing {
                tet: 0,
                face: f,
                to_tet: 1,
                to_face: f,
                vertex_map: [1, 2, 3, 4],
            })
            .collect(),
    };
    let triangulation = validate(&doc)?;
    // Identity gluings make edge class ids coincide with slot indices.
    let metric = GeneralizedMetric {
        lengths: l0.to_array().to_vec(),
    };
    let assignment = assignment_from_metric(&triangulation, &metric);
    let target = cone_angles(&triangulation, &assignment);
    Ok(DoubledFixture {
        triangulation,
        metric,
        target,
        assignment,
    })
}

/// Vertex map gluing quadrilateral face `f` onto quadrilateral face `g`: fixes
/// vertex 1 and matches the two remaining ideal vertices in order or reversed.
fn quad_face_map(f: u8, g: u8, swap: bool) -> [u8; 4] {
    let mut map = [1u8, 0, 0, 0];
    map[(f - 1) as usize] = g;
    let src = (2..=4u8).filter(|&v| v != f);
    let mut dst: Vec<u8> = (2..=4u8).filter(|&v| v != g).collect();
    if swap {
        dst.reverse();
    }
    for (v, img) in src.zip(dst) {
        map[(v - 1) as usize] = img;
    }
    map
}

/// A random closed 1-3 type triangulation with `n` tetrahedra (`n` even, ≥ 2).
/// Faces with the same type are paired uniformly at random and glued with a
/// random type-preserving vertex map.
pub fn random_closed_triangulation<R: Rng>(
    n: usize,
    rng: &mut R,
) -> Result<Triangulation, ComplexError> {
    if n < 2 || !n.is_multiple_of(2) {
        return Err(ComplexError::Format(format!(
            "need an even number of tetrahedra, got {n}"
        )));
    }
    let mut ideal: Vec<(usize, u8)> = (0..n).map(|t| (t, 1)).collect();
    let mut quads: Vec<(usize, u8)> = (0..n)
        .flat_map(|t| (2..=4u8).map(move |f| (t, f)))
        .collect();
    ideal.shuffle(rng);
    quads.shuffle(rng);
    let mut gluings = Vec::with_capacity(2 * n);
    for pair in ideal.chunks(2).chain(quads.chunks(2)) {
        let (a, b) = (pair[0], pair[1]);
        let map = if a.1 == 1 {
            let mut perm = [2u8, 3, 4];
            perm.shuffle(rng);
            [1, perm[0], perm[1], perm[2]]
        } else {
            quad_face_map(a.1, b.1, rng.gen())
        };
        gluings.push(Gluing {
            tet: a.0,
            face: a.1,
            to_tet: b.0,
            to_face: b.1,
            vertex_map: map,
        });
    }
    validate(&TriangulationDoc {
        format: TRI_FORMAT.into(),
        tetrahedra: n,
        gluings,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn fixture_target_is_twice_the_angles() {
        let fx = doubled_fixture(&DecoratedLengths::from_array([
            1.0, 1.0, 1.0, 2.0, 2.0, 2.0,
        ]))
        .unwrap();
        let a = 0.75f64.acos();
        for e in 0..3 {
            assert!((fx.target.k[e] - 2.0 * a).abs() < 1e-15);
        }
        assert!(doubled_fixture(&DecoratedLengths::from_array([
            0.0, 0.0, 0.0, 10.0, 0.0, 0.0
        ]))
        .is_err());
    }

    #[test]
    fn random_triangulations_validate() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for n in [2, 4, 6] {
            for _ in 0..20 {
                let t = random_closed_triangulation(n, &mut rng).unwrap();
                let slots: usize = t.edge_classes().iter().map(|e| e.slots.len()).sum();
                assert_eq!(slots, 6 * n);
            }
        }
        assert!(random_closed_triangulation(3, &mut rng).is_err());
    }
}
