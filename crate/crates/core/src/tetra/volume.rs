use std::f64::consts::{FRAC_PI_2, PI};

use nalgebra::{Matrix2, Matrix6};

use super::lengths::{classify, extended_angles, RegionLabel};
use super::{dot6, DecoratedLengths, DihedralAngles, TetraError, ANGLE_TOL};
use crate::lobachevsky::{distance_to_pi_multiple, lobachevsky, lobachevsky_derivative_unchecked};

/// Distance to `πℤ` at which the volume gradient is considered undefined.
pub const GRADIENT_BOUNDARY_TOL: f64 = 1e-9;

/// `2·vol` written in the free variables `u = (a12, a13, a14)`: a sum of `Λ`
/// over seven affine functions `c0 + c·u`.
pub struct VolumeChart;

impl VolumeChart {
    pub const ARGS: [(f64, [f64; 3]); 7] = [
        (FRAC_PI_2, [-0.5, -0.5, -0.5]),
        (0.0, [1.0, 0.0, 0.0]),
        (0.0, [0.0, 1.0, 0.0]),
        (0.0, [0.0, 0.0, 1.0]),
        (FRAC_PI_2, [-0.5, -0.5, 0.5]),
        (FRAC_PI_2, [-0.5, 0.5, -0.5]),
        (FRAC_PI_2, [0.5, -0.5, -0.5]),
    ];

    pub fn arguments(u: [f64; 3]) -> [f64; 7] {
        Self::ARGS.map(|(c0, c)| c0 + c[0] * u[0] + c[1] * u[1] + c[2] * u[2])
    }

    /// The `Λ` arguments read directly off a full angle vector.
    fn arguments_of(alpha: &DihedralAngles) -> [f64; 7] {
        let a = alpha.to_array();
        [
            0.5 * (PI - alpha.hyperideal_sum()),
            a[0],
            a[1],
            a[2],
            a[3],
            a[4],
            a[5],
        ]
    }

    pub fn twice_volume(u: [f64; 3]) -> f64 {
        Self::arguments(u).iter().map(|&x| lobachevsky(x)).sum()
    }

    /// Gradient of `2·vol` in `u`. Infinite where an argument hits `πℤ`.
    pub fn twice_volume_gradient(u: [f64; 3]) -> [f64; 3] {
        Self::gradient_from_args(&Self::arguments(u))
    }

    fn gradient_from_args(args: &[f64; 7]) -> [f64; 3] {
        let mut g = [0.0; 3];
        for ((_, c), &x) in Self::ARGS.iter().zip(args) {
            let d = lobachevsky_derivative_unchecked(x);
            for m in 0..3 {
                g[m] += c[m] * d;
            }
        }
        g
    }

    /// Hessian of `2·vol` in `u`, using `Λ''(x) = -cot x`.
    pub fn twice_volume_hessian(u: [f64; 3]) -> [[f64; 3]; 3] {
        let mut h = [[0.0; 3]; 3];
        for ((_, c), x) in Self::ARGS.iter().zip(Self::arguments(u)) {
            let w = -1.0 / x.tan();
            for p in 0..3 {
                for q in 0..3 {
                    h[p][q] += w * c[p] * c[q];
                }
            }
        }
        h
    }
}

/// `2·vol` of a full angle vector, without membership checks.
pub(crate) fn twice_volume_unchecked(alpha: &DihedralAngles) -> f64 {
    VolumeChart::arguments_of(alpha)
        .iter()
        .map(|&x| lobachevsky(x))
        .sum()
}

/// Hyperbolic volume of the truncated tetrahedron with dihedral angles `alpha`,
/// extended continuously to the closed polytope.
pub fn volume_from_angles(alpha: &DihedralAngles) -> Result<f64, TetraError> {
    alpha.check_closure(ANGLE_TOL)?;
    Ok((0.5 * twice_volume_unchecked(alpha)).max(0.0))
}

/// `(∂vol/∂a12, ∂vol/∂a13, ∂vol/∂a14)` with `a23, a24, a34` eliminated.
pub fn volume_gradient(alpha: &DihedralAngles) -> Result<[f64; 3], TetraError> {
    alpha.check_closure(ANGLE_TOL)?;
    let args = VolumeChart::arguments_of(alpha);
    if let Some(x) = args
        .iter()
        .find(|&&x| distance_to_pi_multiple(x) < GRADIENT_BOUNDARY_TOL)
    {
        return Err(TetraError::BoundaryGradient(format!(
            "Lobachevsky argument {x} is a multiple of pi"
        )));
    }
    Ok(VolumeChart::gradient_from_args(&args).map(|g| 0.5 * g))
}

/// Co-volume `cov(l) = 2·vol(α(l)) + α(l)·l`, a C¹ convex function on `ℝ⁶`.
pub fn covolume(l: &DecoratedLengths) -> f64 {
    let alpha = extended_angles(l);
    twice_volume_unchecked(&alpha) + dot6(&alpha.to_array(), &l.to_array())
}

/// Gradient of the co-volume, which is the extended angle vector.
pub fn covolume_gradient(l: &DecoratedLengths) -> [f64; 6] {
    extended_angles(l).to_array()
}

/// Central-difference Hessian of the co-volume with step `h`, symmetrized.
pub fn covolume_hessian(l: &DecoratedLengths, h: f64) -> Result<Matrix6<f64>, TetraError> {
    if !(1e-6..=1e-3).contains(&h) {
        return Err(TetraError::InvalidArgument(format!(
            "step {h} not in [1e-6, 1e-3]"
        )));
    }
    match classify(l, super::DEFAULT_CLASSIFY_TOL) {
        Ok(RegionLabel::InteriorL) => {}
        Ok(other) => return Err(TetraError::NotInterior(format!("classified as {other}"))),
        Err(e) => return Err(TetraError::NotInterior(e.to_string())),
    }
    let base = l.to_array();
    let mut m = Matrix6::zeros();
    for j in 0..6 {
        let mut plus = base;
        let mut minus = base;
        plus[j] += h;
        minus[j] -= h;
        let gp = covolume_gradient(&DecoratedLengths::from_array(plus));
        let gm = covolume_gradient(&DecoratedLengths::from_array(minus));
        for i in 0..6 {
            m[(i, j)] = (gp[i] - gm[i]) / (2.0 * h);
        }
    }
    Ok(0.5 * (m + m.transpose()))
}

/// Hessian of `2·vol` in `(a13, a14)` on the boundary face where `a12 = 0`.
pub fn boundary_face_hessian(a13: f64, a14: f64) -> Result<Matrix2<f64>, TetraError> {
    let inside = |x: f64| x > 0.0 && x < PI;
    if !(inside(a13) && inside(a14) && a13 + a14 < PI) {
        return Err(TetraError::OutOfFace(format!(
            "(a13, a14) = ({a13}, {a14})"
        )));
    }
    let t = (0.5 * (a13 + a14)).tan();
    let c13 = 2.0 / a13.tan();
    let c14 = 2.0 / a14.tan();
    Ok(-0.5 * Matrix2::new(c13 + t, t, t, c14 + t))
}

/// Side lengths `(a, b, c)` opposite the angles `A, B, C` of a hyperbolic triangle.
pub fn hyperbolic_triangle_sides(a: f64, b: f64, c: f64) -> Result<(f64, f64, f64), TetraError> {
    if !(a > 0.0 && b > 0.0 && c > 0.0) || a + b + c >= PI {
        return Err(TetraError::NotHyperbolic(format!("angles ({a}, {b}, {c})")));
    }
    let half_sum = 0.5 * (a + b + c);
    // cosh x - 1 = 2 cos(S/2) cos((Y + Z - X)/2) / (sin Y sin Z), x = 2 asinh √((cosh x - 1)/2)
    let side = |x: f64, y: f64, z: f64| {
        let m = half_sum.cos() * (0.5 * (y + z - x)).cos() / (y.sin() * z.sin());
        2.0 * m.sqrt().asinh()
    };
    Ok((side(a, b, c), side(b, a, c), side(c, a, b)))
}
