use std::f64::consts::{LN_2, PI};

use serde::{Deserialize, Serialize};

use super::{others, slot_index, DecoratedLengths, Decoration, DihedralAngles, TetraError, B_II};

pub const DEFAULT_CLASSIFY_TOL: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum RegionLabel {
    InteriorL,
    Omega1,
    Omega2,
    Omega3,
    X1,
    X2,
    X3,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum AngleRegionLabel {
    B,
    BIBoundary,
    BII,
    BIII,
    Outside,
}

impl std::fmt::Display for RegionLabel {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        std::fmt::Debug::fmt(self, f)
    }
}

impl std::fmt::Display for AngleRegionLabel {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let s = match self {
            AngleRegionLabel::B => "B",
            AngleRegionLabel::BIBoundary => "B_I_boundary",
            AngleRegionLabel::BII => "B_II",
            AngleRegionLabel::BIII => "B_III",
            AngleRegionLabel::Outside => "Outside",
        };
        f.write_str(s)
    }
}

/// Side lengths of the three cross-section triangles: the hyperbolic truncation
/// triangle at vertex 1 and the Euclidean horosphere sections at 2, 3, 4.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ThetaTable {
    pub t1_23: f64,
    pub t1_24: f64,
    pub t1_34: f64,
    pub t2_13: f64,
    pub t2_14: f64,
    pub t2_34: f64,
    pub t3_12: f64,
    pub t3_14: f64,
    pub t3_24: f64,
    pub t4_12: f64,
    pub t4_13: f64,
    pub t4_23: f64,
}

impl ThetaTable {
    /// Hyperbolic side `θ¹_{jk}` for ideal `j ≠ k`.
    pub fn hyperbolic(&self, j: u8, k: u8) -> f64 {
        match (j.min(k), j.max(k)) {
            (2, 3) => self.t1_23,
            (2, 4) => self.t1_24,
            (3, 4) => self.t1_34,
            _ => panic!("invalid ideal pair {j}{k}"),
        }
    }

    /// Euclidean side `θ^i_{pq}` of the horosphere section at ideal vertex `i`.
    pub fn euclidean(&self, i: u8, p: u8, q: u8) -> f64 {
        match (i, p.min(q), p.max(q)) {
            (2, 1, 3) => self.t2_13,
            (2, 1, 4) => self.t2_14,
            (2, 3, 4) => self.t2_34,
            (3, 1, 2) => self.t3_12,
            (3, 1, 4) => self.t3_14,
            (3, 2, 4) => self.t3_24,
            (4, 1, 2) => self.t4_12,
            (4, 1, 3) => self.t4_13,
            (4, 2, 3) => self.t4_23,
            _ => panic!("invalid section side {i}:{p}{q}"),
        }
    }
}

pub(crate) fn softplus(x: f64) -> f64 {
    if x > 0.0 {
        x + (-x).exp().ln_1p()
    } else {
        x.exp().ln_1p()
    }
}

/// `Σ e^{pos} - Σ e^{neg}`, shifted by the largest exponent so that finite
/// results never pass through `inf - inf`.
fn signed_exp_sum(pos: &[f64], neg: &[f64]) -> f64 {
    let m = pos
        .iter()
        .chain(neg)
        .copied()
        .fold(f64::NEG_INFINITY, f64::max);
    let inner: f64 = pos.iter().map(|x| (x - m).exp()).sum::<f64>()
        - neg.iter().map(|x| (x - m).exp()).sum::<f64>();
    if inner == 0.0 {
        0.0
    } else {
        inner * m.exp()
    }
}

/// `E_{jk} = l_jk - l_1j - l_1k` for ideal `j ≠ k`.
fn exponent(l: &[f64; 6], j: u8, k: u8) -> f64 {
    let idx = |p, q| slot_index(p, q).unwrap();
    l[idx(j, k)] - l[idx(1, j)] - l[idx(1, k)]
}

/// The decoration-invariant combinations `(E23, E24, E34)`, with
/// `E_jk = l_jk - l_1j - l_1k`. Every φ depends on `l` only through these.
pub fn gauge_invariants(l: &DecoratedLengths) -> [f64; 3] {
    let a = l.to_array();
    [exponent(&a, 2, 3), exponent(&a, 2, 4), exponent(&a, 3, 4)]
}

/// `φ_1i` with `a = e^A`, `b = e^B`, `c = e^C`:
/// `(2ab + a + b - c) / (2 √(a(1+a) b(1+b)))`.
fn phi_hyperideal(a: f64, b: f64, c: f64) -> f64 {
    let log_den = LN_2 + 0.5 * (a + softplus(a) + b + softplus(b));
    signed_exp_sum(
        &[LN_2 + a + b - log_den, a - log_den, b - log_den],
        &[c - log_den],
    )
}

/// `φ_jk` with `P = E_ij`, `Q = E_ik`, `R = E_jk`:
/// `(e^P + e^Q - e^R) / (2 √(e^{P+Q} (1 + e^R)))`.
fn phi_ideal(p: f64, q: f64, r: f64) -> f64 {
    let log_den = LN_2 + 0.5 * (p + q + softplus(r));
    signed_exp_sum(&[p - log_den, q - log_den], &[r - log_den])
}

/// The six functions `φ_pq(l) = cos α_pq(l)` in slot order. Defined on all of
/// `ℝ⁶`; values outside `[-1, 1]` mark lengths outside the region `L`.
pub fn phi(l: &DecoratedLengths) -> [f64; 6] {
    let arr = l.to_array();
    let mut out = [0.0; 6];
    for i in 2..=4u8 {
        let (j, k) = others(i);
        let a = exponent(&arr, i, j);
        let b = exponent(&arr, i, k);
        let c = exponent(&arr, j, k);
        out[slot_index(1, i).unwrap()] = phi_hyperideal(a, b, c);
        out[slot_index(j, k).unwrap()] = phi_ideal(a, b, c);
    }
    out
}

/// Side lengths of the cross-section triangles.
pub fn theta_table(l: &DecoratedLengths) -> ThetaTable {
    let a = l.to_array();
    let idx = |p, q| slot_index(p, q).unwrap();
    let hyp = |j, k| 2.0 * (0.5 * exponent(&a, j, k)).exp().asinh();
    // θ^i_{1j} = 2 √(e^{-l_1i} (e^{l_1j - l_ij} + e^{-l_1i}))
    let e1 = |i, j| {
        let li = a[idx(1, i)];
        2.0 * (-li + 0.5 * softplus(li + a[idx(1, j)] - a[idx(i, j)])).exp()
    };
    let ee = |i, j, k| 2.0 * (0.5 * (a[idx(j, k)] - a[idx(i, j)] - a[idx(i, k)])).exp();
    ThetaTable {
        t1_23: hyp(2, 3),
        t1_24: hyp(2, 4),
        t1_34: hyp(3, 4),
        t2_13: e1(2, 3),
        t2_14: e1(2, 4),
        t2_34: ee(2, 3, 4),
        t3_12: e1(3, 2),
        t3_14: e1(3, 4),
        t3_24: ee(3, 2, 4),
        t4_12: e1(4, 2),
        t4_13: e1(4, 3),
        t4_23: ee(4, 2, 3),
    }
}

/// Region of `ℝ⁶` containing `l`, deciding threshold comparisons with `tol`.
pub fn classify(l: &DecoratedLengths, tol: f64) -> Result<RegionLabel, TetraError> {
    if !(tol > 0.0 && tol <= 1e-6) {
        return Err(TetraError::InvalidArgument(format!(
            "tol {tol} not in (0, 1e-6]"
        )));
    }
    let p = phi(l);
    if p.iter().any(|x| x.is_nan()) {
        return Err(TetraError::InvalidArgument("non-finite lengths".into()));
    }
    let hyper = [p[0], p[1], p[2]];
    let omega: Vec<usize> = (0..3).filter(|&k| hyper[k] <= -1.0 - tol).collect();
    let near: Vec<usize> = (0..3).filter(|&k| (hyper[k] + 1.0).abs() <= tol).collect();
    let ambiguous = TetraError::AmbiguousClassification { tol, phi: p };
    match (omega.len(), near.len()) {
        (1, 0) => Ok([
            RegionLabel::Omega1,
            RegionLabel::Omega2,
            RegionLabel::Omega3,
        ][omega[0]]),
        (0, 1) => Ok([RegionLabel::X1, RegionLabel::X2, RegionLabel::X3][near[0]]),
        (0, 0) => {
            if p.iter().all(|&x| x > -1.0 + tol && x < 1.0 - tol) {
                Ok(RegionLabel::InteriorL)
            } else {
                Err(ambiguous)
            }
        }
        _ => Err(ambiguous),
    }
}

/// Dihedral angles of `l`, extended continuously to all of `ℝ⁶`.
///
/// On a region `Ω_k` the result is the exact constant `B_II[k-1]`. Elsewhere
/// the hyperideal angles are `arccos φ_1i` (clamped) and the remaining three
/// follow from the ideal vertex sums, which keeps the ideal sums equal to π.
pub fn extended_angles(l: &DecoratedLengths) -> DihedralAngles {
    let p = phi(l);
    let mut worst: Option<usize> = None;
    for k in 0..3 {
        if p[k] <= -1.0 && worst.is_none_or(|w| p[k] < p[w]) {
            worst = Some(k);
        }
    }
    if let Some(k) = worst {
        return B_II[k];
    }
    let psi = |x: f64| x.clamp(-1.0, 1.0).acos();
    DihedralAngles::from_hyperideal([psi(p[0]), psi(p[1]), psi(p[2])])
}

/// Inverse of `extended_angles` on the open polytope `B`, normalized so that
/// `l12 = l13 = l14 = 0`.
pub fn angles_to_lengths(alpha: &DihedralAngles) -> Result<DecoratedLengths, TetraError> {
    alpha.check_open(super::ANGLE_TOL)?;
    let u = alpha.hyperideal();
    let half_defect = 0.5 * (PI - alpha.hyperideal_sum());
    let mut l = [0.0; 6];
    for i in 2..=4u8 {
        let (j, k) = others(i);
        // cosh θ¹_{jk} - 1 = 2 cos(S/2) cos((u_j + u_k - u_i)/2) / (sin u_j sin u_k),
        // and the second cosine is the sine of the opposite ideal-ideal angle.
        let (uj, uk) = (u[(j - 2) as usize], u[(k - 2) as usize]);
        let ajk = alpha.get(j, k);
        let val = half_defect.sin() * ajk.sin() / (uj.sin() * uk.sin());
        l[slot_index(j, k).unwrap()] = val.ln();
    }
    Ok(DecoratedLengths::from_array(l))
}

/// Moves the horospheres at the ideal vertices by `w`.
pub fn apply_decoration(l: &DecoratedLengths, w: &Decoration) -> DecoratedLengths {
    let ws = [w.w2, w.w3, w.w4];
    let mut a = l.to_array();
    for i in 2..=4u8 {
        a[slot_index(1, i).unwrap()] += ws[(i - 2) as usize];
    }
    for (j, k) in [(2u8, 3u8), (2, 4), (3, 4)] {
        a[slot_index(j, k).unwrap()] += ws[(j - 2) as usize] + ws[(k - 2) as usize];
    }
    DecoratedLengths::from_array(a)
}

/// Locates `alpha` in the stratification of the closed angle polytope.
pub fn classify_angles(alpha: &DihedralAngles, tol: f64) -> AngleRegionLabel {
    if alpha.check_closure(tol).is_err() {
        return AngleRegionLabel::Outside;
    }
    let a = alpha.to_array();
    let near_bii = B_II.iter().any(|b| {
        b.to_array()
            .iter()
            .zip(&a)
            .all(|(x, y)| (x - y).abs() <= tol)
    });
    if near_bii {
        return AngleRegionLabel::BII;
    }
    let h = alpha.hyperideal_sum();
    if h >= PI - tol {
        return AngleRegionLabel::BIII;
    }
    if a.iter().all(|&x| x > tol && x < PI - tol) {
        AngleRegionLabel::B
    } else {
        AngleRegionLabel::BIBoundary
    }
}
