//! Points, unit directions, rigid transforms and the normal-mismatch angle.
//!
//! Lengths are meters, internal angles radians. [`angle_between`] reports
//! degrees.

use std::fmt;
use std::ops::{Add, Neg, Sub};

use nalgebra::{Matrix3, Vector3};

use crate::error::{Error, Result};

const ORTHONORMAL_TOL: f64 = 1e-9;

/// A position in meters. In the camera frame x runs along the image width,
/// y along the image height and z along the optical axis.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct Point3 {
    pub x: f64,
    pub y: f64,
    pub z: f64,
}

impl Point3 {
    pub const fn new(x: f64, y: f64, z: f64) -> Self {
        Point3 { x, y, z }
    }

    pub fn is_finite(&self) -> bool {
        self.x.is_finite() && self.y.is_finite() && self.z.is_finite()
    }

    pub fn norm(&self) -> f64 {
        (self.x * self.x + self.y * self.y + self.z * self.z).sqrt()
    }

    pub fn distance(&self, other: &Point3) -> f64 {
        (*self - *other).norm()
    }

    pub(crate) fn to_vector(self) -> Vector3<f64> {
        Vector3::new(self.x, self.y, self.z)
    }

    pub(crate) fn from_vector(v: &Vector3<f64>) -> Self {
        Point3::new(v.x, v.y, v.z)
    }
}

impl Add for Point3 {
    type Output = Point3;
    fn add(self, rhs: Point3) -> Point3 {
        Point3::new(self.x + rhs.x, self.y + rhs.y, self.z + rhs.z)
    }
}

impl Sub for Point3 {
    type Output = Point3;
    fn sub(self, rhs: Point3) -> Point3 {
        Point3::new(self.x - rhs.x, self.y - rhs.y, self.z - rhs.z)
    }
}

impl fmt::Display for Point3 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {}, {})", self.x, self.y, self.z)
    }
}

/// A direction of unit Euclidean length.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct UnitVec3 {
    x: f64,
    y: f64,
    z: f64,
}

impl UnitVec3 {
    pub const X: UnitVec3 = UnitVec3 { x: 1.0, y: 0.0, z: 0.0 };
    pub const Y: UnitVec3 = UnitVec3 { x: 0.0, y: 1.0, z: 0.0 };
    pub const Z: UnitVec3 = UnitVec3 { x: 0.0, y: 0.0, z: 1.0 };

    /// Normalizes `(x, y, z)`. Fails on non-finite or zero-length input.
    pub fn new(x: f64, y: f64, z: f64) -> Result<Self> {
        if !(x.is_finite() && y.is_finite() && z.is_finite()) {
            return Err(Error::InvalidInput(format!(
                "non-finite direction ({x}, {y}, {z})"
            )));
        }
        // scale first so tiny or huge inputs don't under/overflow the norm
        let scale = x.abs().max(y.abs()).max(z.abs());
        if scale == 0.0 {
            return Err(Error::InvalidInput("zero-length direction".into()));
        }
        let (sx, sy, sz) = (x / scale, y / scale, z / scale);
        let n = (sx * sx + sy * sy + sz * sz).sqrt();
        Ok(UnitVec3 {
            x: sx / n,
            y: sy / n,
            z: sz / n,
        })
    }

    /// Accepts components that are already unit length within 1e-9 and
    /// keeps them verbatim (no renormalization), so stored directions
    /// reload bit-for-bit.
    pub fn from_unit(x: f64, y: f64, z: f64) -> Result<Self> {
        let n2 = x * x + y * y + z * z;
        if !n2.is_finite() || (n2.sqrt() - 1.0).abs() > ORTHONORMAL_TOL {
            return Err(Error::InvalidInput(format!(
                "({x}, {y}, {z}) is not a unit vector"
            )));
        }
        Ok(UnitVec3 { x, y, z })
    }

    pub fn x(&self) -> f64 {
        self.x
    }

    pub fn y(&self) -> f64 {
        self.y
    }

    pub fn z(&self) -> f64 {
        self.z
    }

    pub fn dot(&self, other: &UnitVec3) -> f64 {
        self.x * other.x + self.y * other.y + self.z * other.z
    }

    pub fn to_array(self) -> [f64; 3] {
        [self.x, self.y, self.z]
    }

    pub(crate) fn to_vector(self) -> Vector3<f64> {
        Vector3::new(self.x, self.y, self.z)
    }
}

impl Neg for UnitVec3 {
    type Output = UnitVec3;
    fn neg(self) -> UnitVec3 {
        UnitVec3 {
            x: -self.x,
            y: -self.y,
            z: -self.z,
        }
    }
}

impl fmt::Display for UnitVec3 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {}, {})", self.x, self.y, self.z)
    }
}

/// Angle between two directions in degrees, in `[0, 180]`.
///
/// Evaluated as `2·atan2(|a−b|, |a+b|)`, which equals `acos(a·b)` for unit
/// vectors but stays accurate near 0° and 180° where `acos` loses about
/// half the significant digits.
pub fn angle_between(a: &UnitVec3, b: &UnitVec3) -> f64 {
    let d = [a.x - b.x, a.y - b.y, a.z - b.z];
    let s = [a.x + b.x, a.y + b.y, a.z + b.z];
    let dn = (d[0] * d[0] + d[1] * d[1] + d[2] * d[2]).sqrt();
    let sn = (s[0] * s[0] + s[1] * s[1] + s[2] * s[2]).sqrt();
    (2.0 * dn.atan2(sn)).to_degrees().clamp(0.0, 180.0)
}

/// Rotation followed by translation: `p ↦ R·p + t`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RigidTransform {
    rotation: Matrix3<f64>,
    translation: Vector3<f64>,
}

impl RigidTransform {
    pub fn identity() -> Self {
        RigidTransform {
            rotation: Matrix3::identity(),
            translation: Vector3::zeros(),
        }
    }

    /// Builds a transform from a rotation matrix and a translation,
    /// rejecting anything that is not a proper rotation within 1e-9.
    pub fn new(rotation: Matrix3<f64>, translation: Point3) -> Result<Self> {
        if !rotation.iter().all(|v| v.is_finite()) || !translation.is_finite() {
            return Err(Error::InvalidInput("non-finite transform".into()));
        }
        let gram = rotation.transpose() * rotation;
        let off = (gram - Matrix3::identity()).amax();
        if off > ORTHONORMAL_TOL {
            return Err(Error::InvalidInput(format!(
                "rotation is not orthonormal (max |RᵀR − I| = {off:e})"
            )));
        }
        let det = rotation.determinant();
        if (det - 1.0).abs() > ORTHONORMAL_TOL {
            return Err(Error::InvalidInput(format!(
                "rotation determinant is {det}, expected +1"
            )));
        }
        Ok(RigidTransform {
            rotation,
            translation: translation.to_vector(),
        })
    }

    pub fn from_translation(t: Point3) -> Result<Self> {
        RigidTransform::new(Matrix3::identity(), t)
    }

    /// Rotation by `angle` radians about the x axis (right-handed).
    pub fn rotation_x(angle: f64) -> Self {
        let (s, c) = angle.sin_cos();
        RigidTransform {
            rotation: Matrix3::new(1.0, 0.0, 0.0, 0.0, c, -s, 0.0, s, c),
            translation: Vector3::zeros(),
        }
    }

    /// Rotation by `angle` radians about the z axis (right-handed).
    pub fn rotation_z(angle: f64) -> Self {
        let (s, c) = angle.sin_cos();
        RigidTransform {
            rotation: Matrix3::new(c, -s, 0.0, s, c, 0.0, 0.0, 0.0, 1.0),
            translation: Vector3::zeros(),
        }
    }

    /// Row-major rotation followed by the translation, 12 numbers.
    pub fn from_row_major(values: &[f64]) -> Result<Self> {
        if values.len() != 12 {
            return Err(Error::InvalidInput(format!(
                "transform needs 12 numbers, got {}",
                values.len()
            )));
        }
        let r = Matrix3::from_row_slice(&values[..9]);
        RigidTransform::new(r, Point3::new(values[9], values[10], values[11]))
    }

    pub fn to_row_major(&self) -> [f64; 12] {
        let r = &self.rotation;
        let t = &self.translation;
        [
            r[(0, 0)], r[(0, 1)], r[(0, 2)],
            r[(1, 0)], r[(1, 1)], r[(1, 2)],
            r[(2, 0)], r[(2, 1)], r[(2, 2)],
            t.x, t.y, t.z,
        ]
    }

    pub fn rotation(&self) -> &Matrix3<f64> {
        &self.rotation
    }

    pub fn translation(&self) -> Point3 {
        Point3::from_vector(&self.translation)
    }

    /// `self` applied after `first`.
    pub fn compose(&self, first: &RigidTransform) -> RigidTransform {
        RigidTransform {
            rotation: self.rotation * first.rotation,
            translation: self.rotation * first.translation + self.translation,
        }
    }

    pub fn inverse(&self) -> RigidTransform {
        let rt = self.rotation.transpose();
        RigidTransform {
            rotation: rt,
            translation: -(rt * self.translation),
        }
    }

    /// `R·p + t`.
    pub fn apply(&self, p: &Point3) -> Result<Point3> {
        if !p.is_finite() {
            return Err(Error::InvalidInput(format!("non-finite point {p}")));
        }
        Ok(Point3::from_vector(
            &(self.rotation * p.to_vector() + self.translation),
        ))
    }

    /// Rotation only; the result is renormalized.
    pub fn rotate(&self, v: &UnitVec3) -> UnitVec3 {
        let r = self.rotation * v.to_vector();
        UnitVec3::new(r.x, r.y, r.z).expect("rotation of a unit vector is finite and non-zero")
    }
}

/// Free-function form of [`RigidTransform::apply`].
pub fn apply_transform(t: &RigidTransform, p: &Point3) -> Result<Point3> {
    t.apply(p)
}

/// Free-function form of [`RigidTransform::rotate`].
pub fn rotate_direction(t: &RigidTransform, v: &UnitVec3) -> UnitVec3 {
    t.rotate(v)
}

#[cfg(test)]
mod tests {
    use super::*;
    use nalgebra::{Rotation3, Unit};
    use proptest::prelude::*;

    fn acos_oracle(a: &UnitVec3, b: &UnitVec3) -> f64 {
        a.dot(b).clamp(-1.0, 1.0).acos().to_degrees()
    }

    #[test]
    fn angle_examples() {
        assert_eq!(angle_between(&UnitVec3::Z, &UnitVec3::Z), 0.0);
        assert!((angle_between(&UnitVec3::Z, &UnitVec3::Y) - 90.0).abs() < 1e-12);

        // (0, sin10°, cos10°) built by rotating +z about x by -10°
        let r = RigidTransform::rotation_x(-10f64.to_radians());
        let v = r.rotate(&UnitVec3::Z);
        assert!((v.y() - 10f64.to_radians().sin()).abs() < 1e-15);
        let got = angle_between(&UnitVec3::Z, &v);
        assert!((got - 10.0).abs() < 1e-9);
        assert!((got - acos_oracle(&UnitVec3::Z, &v)).abs() < 1e-9);
    }

    #[test]
    fn antiparallel_is_180() {
        let a = UnitVec3::new(0.3, -0.2, 0.9).unwrap();
        assert!((angle_between(&a, &-a) - 180.0).abs() < 1e-9);
        assert_eq!(angle_between(&a, &a), 0.0);
    }

    #[test]
    fn from_unit_keeps_components() {
        let v = UnitVec3::new(0.3, -0.2, 0.9).unwrap();
        assert_eq!(UnitVec3::from_unit(v.x(), v.y(), v.z()).unwrap(), v);
        assert!(UnitVec3::from_unit(0.0, 0.0, 1.1).is_err());
        assert!(UnitVec3::from_unit(f64::NAN, 0.0, 1.0).is_err());
    }

    #[test]
    fn unit_rejects_bad_input() {
        assert!(UnitVec3::new(f64::NAN, 0.0, 1.0).is_err());
        assert!(UnitVec3::new(0.0, 0.0, 0.0).is_err());
        let tiny = UnitVec3::new(1e-300, 0.0, 1e-300).unwrap();
        assert!((tiny.dot(&tiny) - 1.0).abs() < 1e-15);
    }

    #[test]
    fn transform_examples() {
        let id = RigidTransform::identity();
        assert_eq!(id.apply(&Point3::new(1.0, 2.0, 3.0)).unwrap(), Point3::new(1.0, 2.0, 3.0));

        let t = RigidTransform::from_translation(Point3::new(0.1, 0.0, 0.0)).unwrap();
        assert_eq!(t.apply(&Point3::default()).unwrap(), Point3::new(0.1, 0.0, 0.0));

        let rz = RigidTransform::rotation_z(std::f64::consts::FRAC_PI_2);
        let p = rz.apply(&Point3::new(1.0, 0.0, 0.0)).unwrap();
        assert!(p.distance(&Point3::new(0.0, 1.0, 0.0)) < 1e-12);

        assert_eq!(id.rotate(&UnitVec3::Z), UnitVec3::Z);

        let rx = RigidTransform::rotation_x(std::f64::consts::PI);
        let v = rx.rotate(&UnitVec3::Z);
        assert!(angle_between(&v, &-UnitVec3::Z) < 1e-9);
        assert!(v.z() + 1.0 < 1e-15);
    }

    #[test]
    fn rejects_improper_rotation() {
        let reflect = Matrix3::new(1.0, 0.0, 0.0, 0.0, 1.0, 0.0, 0.0, 0.0, -1.0);
        assert!(RigidTransform::new(reflect, Point3::default()).is_err());
        let skew = Matrix3::new(1.0, 0.1, 0.0, 0.0, 1.0, 0.0, 0.0, 0.0, 1.0);
        assert!(RigidTransform::new(skew, Point3::default()).is_err());
        assert!(RigidTransform::identity().apply(&Point3::new(f64::NAN, 0.0, 0.0)).is_err());
    }

    #[test]
    fn row_major_round_trip_and_inverse() {
        let r = Rotation3::from_euler_angles(0.3, -0.2, 1.1);
        let t = RigidTransform::new(*r.matrix(), Point3::new(0.1, -0.4, 0.25)).unwrap();
        let back = RigidTransform::from_row_major(&t.to_row_major()).unwrap();
        assert_eq!(t, back);
        let p = Point3::new(0.2, 0.3, 0.5);
        let q = t.inverse().apply(&t.apply(&p).unwrap()).unwrap();
        assert!(p.distance(&q) < 1e-15);
        assert!(RigidTransform::from_row_major(&[1.0; 5]).is_err());
    }

    fn unit_strategy() -> impl Strategy<Value = UnitVec3> {
        (-1.0f64..1.0, -1.0f64..1.0, -1.0f64..1.0)
            .prop_filter("non-degenerate", |(x, y, z)| x * x + y * y + z * z > 1e-3)
            .prop_map(|(x, y, z)| UnitVec3::new(x, y, z).unwrap())
    }

    fn transform_strategy() -> impl Strategy<Value = RigidTransform> {
        (unit_strategy(), -3.2f64..3.2, -1.0f64..1.0, -1.0f64..1.0, -1.0f64..1.0).prop_map(
            |(axis, angle, tx, ty, tz)| {
                let r = Rotation3::from_axis_angle(&Unit::new_normalize(axis.to_vector()), angle);
                RigidTransform::new(*r.matrix(), Point3::new(tx, ty, tz)).unwrap()
            },
        )
    }

    proptest! {
        #[test]
        fn angle_symmetric_and_bounded(a in unit_strategy(), b in unit_strategy()) {
            let ab = angle_between(&a, &b);
            prop_assert_eq!(ab, angle_between(&b, &a));
            prop_assert!((0.0..=180.0).contains(&ab));
            prop_assert!(angle_between(&a, &a) < 1e-9);
            prop_assert!((angle_between(&a, &-a) - 180.0).abs() < 1e-9);
        }

        #[test]
        fn angle_rotation_invariant(a in unit_strategy(), b in unit_strategy(), t in transform_strategy()) {
            let before = angle_between(&a, &b);
            let after = angle_between(&t.rotate(&a), &t.rotate(&b));
            prop_assert!((before - after).abs() < 1e-9);
            prop_assert!((t.rotate(&a).dot(&t.rotate(&a)) - 1.0).abs() < 1e-12);
        }

        #[test]
        fn transform_preserves_distance(
            t in transform_strategy(),
            p in (-1.0f64..1.0, -1.0f64..1.0, -1.0f64..1.0),
            q in (-1.0f64..1.0, -1.0f64..1.0, -1.0f64..1.0),
        ) {
            let p = Point3::new(p.0, p.1, p.2);
            let q = Point3::new(q.0, q.1, q.2);
            let d0 = p.distance(&q);
            let d1 = t.apply(&p).unwrap().distance(&t.apply(&q).unwrap());
            prop_assert!((d0 - d1).abs() <= 1e-12 * d0.max(1e-3));
        }
    }
}
