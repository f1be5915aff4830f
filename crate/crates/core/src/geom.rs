//! Small 3D helpers shared by the skeleton and stitcher modules.
//!
//! Points are stored as plain `[f64; 3]` so that frames serialize naturally;
//! nalgebra types are used internally where rotations or SVD are needed.

use nalgebra::{Matrix3, Rotation3, Vector3};

use crate::error::{Error, Result};

/// One joint position in 3D, canonical units.
pub type Point3 = [f64; 3];

pub fn add(a: Point3, b: Point3) -> Point3 {
    [a[0] + b[0], a[1] + b[1], a[2] + b[2]]
}

pub fn sub(a: Point3, b: Point3) -> Point3 {
    [a[0] - b[0], a[1] - b[1], a[2] - b[2]]
}

pub fn scale(a: Point3, s: f64) -> Point3 {
    [a[0] * s, a[1] * s, a[2] * s]
}

pub fn norm(a: Point3) -> f64 {
    (a[0] * a[0] + a[1] * a[1] + a[2] * a[2]).sqrt()
}

pub fn dist(a: Point3, b: Point3) -> f64 {
    norm(sub(a, b))
}

pub fn midpoint(a: Point3, b: Point3) -> Point3 {
    [
        0.5 * (a[0] + b[0]),
        0.5 * (a[1] + b[1]),
        0.5 * (a[2] + b[2]),
    ]
}

/// Linear interpolation between two points at fraction `t`.
pub fn lerp(a: Point3, b: Point3, t: f64) -> Point3 {
    [
        a[0] + (b[0] - a[0]) * t,
        a[1] + (b[1] - a[1]) * t,
        a[2] + (b[2] - a[2]) * t,
    ]
}

pub fn is_finite(p: Point3) -> bool {
    p.iter().all(|c| c.is_finite())
}

pub fn to_vec(p: Point3) -> Vector3<f64> {
    Vector3::new(p[0], p[1], p[2])
}

pub fn from_vec(v: Vector3<f64>) -> Point3 {
    [v.x, v.y, v.z]
}

/// A rigid transform `x -> R x + t`.
#[derive(Debug, Clone)]
pub struct RigidTransform {
    pub rotation: Rotation3<f64>,
    pub translation: Vector3<f64>,
}

impl RigidTransform {
    pub fn identity() -> Self {
        RigidTransform {
            rotation: Rotation3::identity(),
            translation: Vector3::zeros(),
        }
    }

    pub fn apply(&self, p: Point3) -> Point3 {
        from_vec(self.rotation * to_vec(p) + self.translation)
    }
}

/// Least-squares rigid fit mapping `source` points onto `target` points
/// (Kabsch). Both slices must have the same, nonzero length.
///
/// Fails when either point set is degenerate (collinear or coincident), in
/// which case the rotation is not fully determined.
pub fn rigid_fit(source: &[Point3], target: &[Point3], frame: usize) -> Result<RigidTransform> {
    if source.len() != target.len() || source.is_empty() {
        return Err(Error::Dimension(format!(
            "rigid fit needs equally many source and target points, got {} and {}",
            source.len(),
            target.len()
        )));
    }
    let n = source.len() as f64;
    let mut cs = Vector3::zeros();
    let mut ct = Vector3::zeros();
    for (s, t) in source.iter().zip(target) {
        cs += to_vec(*s);
        ct += to_vec(*t);
    }
    cs /= n;
    ct /= n;

    // Cross-covariance of centered point sets.
    let mut h = Matrix3::zeros();
    for (s, t) in source.iter().zip(target) {
        h += (to_vec(*t) - ct) * (to_vec(*s) - cs).transpose();
    }

    let svd = h.svd(true, true);
    let sv = svd.singular_values;
    // Collinear anchors leave one rotation axis unconstrained: the covariance
    // then has rank < 2.
    let tol = 1e-9 * sv[0].max(1e-12) + 1e-12;
    if sv[1] <= tol {
        return Err(Error::Geometry {
            frame,
            msg: "anchor points are collinear or coincident; rigid fit is underdetermined"
                .to_string(),
        });
    }
    let u = svd.u.expect("svd with u");
    let v_t = svd.v_t.expect("svd with v_t");
    let d = (u * v_t).determinant();
    let correction = Matrix3::from_diagonal(&Vector3::new(1.0, 1.0, d.signum()));
    let r = u * correction * v_t;
    let rotation = Rotation3::from_matrix_unchecked(r);
    let translation = ct - r * cs;
    Ok(RigidTransform {
        rotation,
        translation,
    })
}
