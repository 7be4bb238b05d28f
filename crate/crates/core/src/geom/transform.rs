/*
  Copyright 2026 The demoguide Authors

  Licensed under the Apache License, Version 2.0 (the "License");
  you may not use this file except in compliance with the License.
  You may obtain a copy of the License at

      http://www.apache.org/licenses/LICENSE-2.0

  Unless required by applicable law or agreed to in writing, software
  distributed under the License is distributed on an "AS IS" BASIS,
  WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
  See the License for the specific language governing permissions and
  limitations under the License.
*/

//! Rigid transforms in SE(3) and the roll-pitch-yaw pose vector used at interfaces.

use nalgebra::{Matrix3, Matrix4, Point3, Quaternion, Unit, UnitQuaternion, Vector3};
use serde::{Deserialize, Serialize};
use std::f64::consts::FRAC_PI_2;
use std::ops::Mul;

/// A rigid transform: rotation (unit quaternion) followed by translation in meters.
///
/// `a * b` (or [`RigidTransform::compose`]) maps a point first through `b`, then `a`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct RigidTransform {
    rotation: UnitQuaternion<f64>,
    translation: Vector3<f64>,
}

impl Default for RigidTransform {
    fn default() -> Self {
        Self::identity()
    }
}

impl RigidTransform {
    pub fn identity() -> Self {
        Self {
            rotation: UnitQuaternion::identity(),
            translation: Vector3::zeros(),
        }
    }

    pub fn new(rotation: UnitQuaternion<f64>, translation: Vector3<f64>) -> Self {
        Self {
            rotation: renormalize(rotation),
            translation,
        }
    }

    /// Builds a transform from raw quaternion components; the quaternion is normalized.
    ///
    /// Returns `None` when the quaternion is zero or non-finite.
    pub fn from_components(translation: [f64; 3], quat_wxyz: [f64; 4]) -> Option<Self> {
        let [w, x, y, z] = quat_wxyz;
        let q = Quaternion::new(w, x, y, z);
        let norm = q.norm();
        if !norm.is_finite() || norm < 1e-12 || translation.iter().any(|v| !v.is_finite()) {
            return None;
        }
        Some(Self {
            rotation: UnitQuaternion::new_normalize(q),
            translation: Vector3::from(translation),
        })
    }

    pub fn from_translation(x: f64, y: f64, z: f64) -> Self {
        Self {
            rotation: UnitQuaternion::identity(),
            translation: Vector3::new(x, y, z),
        }
    }

    pub fn from_axis_angle(axis: &Unit<Vector3<f64>>, angle: f64) -> Self {
        Self {
            rotation: UnitQuaternion::from_axis_angle(axis, angle),
            translation: Vector3::zeros(),
        }
    }

    pub fn rotation(&self) -> &UnitQuaternion<f64> {
        &self.rotation
    }

    pub fn translation(&self) -> &Vector3<f64> {
        &self.translation
    }

    /// `[qw, qx, qy, qz]`
    pub fn quaternion_wxyz(&self) -> [f64; 4] {
        let q = self.rotation.quaternion();
        [q.w, q.i, q.j, q.k]
    }

    /// `[x, y, z, qw, qx, qy, qz]`
    pub fn to_array(&self) -> [f64; 7] {
        let t = &self.translation;
        let [w, x, y, z] = self.quaternion_wxyz();
        [t.x, t.y, t.z, w, x, y, z]
    }

    pub fn from_array(v: [f64; 7]) -> Option<Self> {
        Self::from_components([v[0], v[1], v[2]], [v[3], v[4], v[5], v[6]])
    }

    pub fn compose(&self, other: &RigidTransform) -> RigidTransform {
        RigidTransform {
            rotation: renormalize(self.rotation * other.rotation),
            translation: self.rotation * other.translation + self.translation,
        }
    }

    pub fn inverse(&self) -> RigidTransform {
        let inv = self.rotation.inverse();
        RigidTransform {
            rotation: inv,
            translation: -(inv * self.translation),
        }
    }

    pub fn transform_point(&self, p: &Point3<f64>) -> Point3<f64> {
        Point3::from(self.rotation * p.coords + self.translation)
    }

    pub fn transform_vector(&self, v: &Vector3<f64>) -> Vector3<f64> {
        self.rotation * v
    }

    pub fn rotation_matrix(&self) -> Matrix3<f64> {
        self.rotation.to_rotation_matrix().into_inner()
    }

    /// Homogeneous 4x4 matrix.
    pub fn to_matrix(&self) -> Matrix4<f64> {
        let mut m = Matrix4::identity();
        m.fixed_view_mut::<3, 3>(0, 0).copy_from(&self.rotation_matrix());
        m.fixed_view_mut::<3, 1>(0, 3).copy_from(&self.translation);
        m
    }

    /// Geodesic angle (radians, in `[0, π]`) between the two rotations.
    pub fn rotation_angle_to(&self, other: &RigidTransform) -> f64 {
        rotation_angle_between(&self.rotation, &other.rotation)
    }

    pub fn translation_distance_to(&self, other: &RigidTransform) -> f64 {
        (self.translation - other.translation).norm()
    }

    /// Linear translation blend and shortest-arc slerp of the rotation.
    ///
    /// `s = 0` returns `self` and `s = 1` returns `other` exactly.
    pub fn interpolate(&self, other: &RigidTransform, s: f64) -> RigidTransform {
        if s <= 0.0 {
            return *self;
        }
        if s >= 1.0 {
            return *other;
        }
        RigidTransform {
            rotation: slerp_shortest(&self.rotation, &other.rotation, s),
            translation: self.translation.lerp(&other.translation, s),
        }
    }

    /// Maximum deviation from `other` in translation and rotation angle.
    pub fn approx_eq(&self, other: &RigidTransform, tol: f64) -> bool {
        self.translation_distance_to(other) <= tol && self.rotation_angle_to(other) <= tol
    }
}

impl Mul for RigidTransform {
    type Output = RigidTransform;

    fn mul(self, rhs: RigidTransform) -> RigidTransform {
        self.compose(&rhs)
    }
}

impl<'a> Mul<&'a RigidTransform> for &'a RigidTransform {
    type Output = RigidTransform;

    fn mul(self, rhs: &'a RigidTransform) -> RigidTransform {
        self.compose(rhs)
    }
}

fn renormalize(q: UnitQuaternion<f64>) -> UnitQuaternion<f64> {
    UnitQuaternion::new_normalize(q.into_inner())
}

/// Geodesic angle between two rotations, stable near zero and near π.
pub fn rotation_angle_between(a: &UnitQuaternion<f64>, b: &UnitQuaternion<f64>) -> f64 {
    let d = a.inverse() * b;
    let q = d.quaternion();
    2.0 * q.vector().norm().atan2(q.w.abs())
}

fn slerp_shortest(a: &UnitQuaternion<f64>, b: &UnitQuaternion<f64>, s: f64) -> UnitQuaternion<f64> {
    let qa = a.quaternion();
    let mut qb = *b.quaternion();
    let mut dot = qa.dot(&qb);
    if dot < 0.0 {
        qb = -qb;
        dot = -dot;
    }
    if dot > 1.0 - 1e-12 {
        return UnitQuaternion::new_normalize(qa.lerp(&qb, s));
    }
    let theta = dot.min(1.0).acos();
    let sin_theta = theta.sin();
    let wa = ((1.0 - s) * theta).sin() / sin_theta;
    let wb = (s * theta).sin() / sin_theta;
    UnitQuaternion::new_normalize(qa * wa + qb * wb)
}

/// Position plus fixed-axis roll/pitch/yaw; rotation = Rz(yaw)·Ry(pitch)·Rx(roll).
/// Missing fields deserialize as zero.
#[derive(Clone, Copy, Debug, Default, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct PoseVector {
    pub x: f64,
    pub y: f64,
    pub z: f64,
    pub roll: f64,
    pub pitch: f64,
    pub yaw: f64,
}

/// Result of converting a rotation back to roll/pitch/yaw.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct PoseVectorDecomposition {
    pub pose: PoseVector,
    /// Set when |pitch| is at π/2; roll was forced to zero.
    pub gimbal_degenerate: bool,
}

impl PoseVector {
    pub fn new(x: f64, y: f64, z: f64, roll: f64, pitch: f64, yaw: f64) -> Self {
        Self {
            x,
            y,
            z,
            roll,
            pitch,
            yaw,
        }
    }

    pub fn to_array(&self) -> [f64; 6] {
        [self.x, self.y, self.z, self.roll, self.pitch, self.yaw]
    }

    pub fn from_array(v: [f64; 6]) -> Self {
        Self::new(v[0], v[1], v[2], v[3], v[4], v[5])
    }

    pub fn to_transform(&self) -> RigidTransform {
        let (hr, hp, hy) = (self.roll * 0.5, self.pitch * 0.5, self.yaw * 0.5);
        let (sr, cr) = hr.sin_cos();
        let (sp, cp) = hp.sin_cos();
        let (sy, cy) = hy.sin_cos();
        // qz(yaw) * qy(pitch) * qx(roll)
        let q = Quaternion::new(
            cr * cp * cy + sr * sp * sy,
            sr * cp * cy - cr * sp * sy,
            cr * sp * cy + sr * cp * sy,
            cr * cp * sy - sr * sp * cy,
        );
        RigidTransform {
            rotation: UnitQuaternion::new_normalize(q),
            translation: Vector3::new(self.x, self.y, self.z),
        }
    }

    pub fn from_transform(t: &RigidTransform) -> PoseVectorDecomposition {
        let m = t.rotation_matrix();
        let tr = t.translation();
        let sin_pitch = (-m[(2, 0)]).clamp(-1.0, 1.0);
        let cos_pitch = (m[(0, 0)] * m[(0, 0)] + m[(1, 0)] * m[(1, 0)]).sqrt();
        let degenerate = cos_pitch < 1e-12;
        let (roll, pitch, yaw) = if degenerate {
            // Only yaw - roll (pitch = +π/2) or yaw + roll (pitch = -π/2) is observable.
            let pitch = FRAC_PI_2.copysign(sin_pitch);
            let yaw = if sin_pitch > 0.0 {
                m[(1, 2)].atan2(m[(0, 2)])
            } else {
                (-m[(1, 2)]).atan2(-m[(0, 2)])
            };
            (0.0, pitch, yaw)
        } else {
            (
                m[(2, 1)].atan2(m[(2, 2)]),
                sin_pitch.atan2(cos_pitch),
                m[(1, 0)].atan2(m[(0, 0)]),
            )
        };
        PoseVectorDecomposition {
            pose: PoseVector::new(tr.x, tr.y, tr.z, roll, pitch, yaw),
            gimbal_degenerate: degenerate,
        }
    }
}

impl From<PoseVector> for RigidTransform {
    fn from(p: PoseVector) -> Self {
        p.to_transform()
    }
}
