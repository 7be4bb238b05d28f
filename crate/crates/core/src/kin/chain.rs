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

//! Serial chains of revolute joints and their forward kinematics.

use crate::error::KinError;
use crate::geom::{PoseVector, RigidTransform};
use nalgebra::{Matrix6xX, Unit, Vector3};
use serde::{Deserialize, Serialize};

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct JointLimits {
    pub lo: f64,
    pub hi: f64,
}

impl JointLimits {
    pub fn contains(&self, angle: f64) -> bool {
        self.lo <= angle && angle <= self.hi
    }

    pub fn clamp(&self, angle: f64) -> f64 {
        angle.clamp(self.lo, self.hi)
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Joint {
    pub name: String,
    pub axis: Unit<Vector3<f64>>,
    /// Placement of this joint's frame in the previous frame, applied before the rotation.
    pub origin: RigidTransform,
    pub limits: JointLimits,
}

/// Joint angles in radians, one per chain joint.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct JointConfig(pub Vec<f64>);

impl JointConfig {
    pub fn angles(&self) -> &[f64] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Largest absolute per-joint difference.
    pub fn max_step_to(&self, other: &JointConfig) -> f64 {
        self.0
            .iter()
            .zip(&other.0)
            .map(|(a, b)| (a - b).abs())
            .fold(0.0, f64::max)
    }
}

/// Base pose, revolute joints (the first is the waist) and a fixed tip offset after the
/// last joint.
#[derive(Clone, Debug, PartialEq)]
pub struct KinematicChain {
    base: RigidTransform,
    joints: Vec<Joint>,
    tip: RigidTransform,
}

/// File form of a chain; poses are written as position plus roll/pitch/yaw.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ChainSpec {
    #[serde(default)]
    pub base: PoseVector,
    pub joints: Vec<JointSpec>,
    #[serde(default)]
    pub tip: PoseVector,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct JointSpec {
    pub name: String,
    pub axis: [f64; 3],
    #[serde(default)]
    pub origin: PoseVector,
    /// `[lo, hi]` in radians.
    pub limits: [f64; 2],
}

/// Per-joint frames produced by [`KinematicChain::frames`].
#[derive(Clone, Debug)]
pub struct ChainFrames {
    /// World pose of each joint frame after its origin offset, before its rotation.
    pub joints: Vec<RigidTransform>,
    pub tip: RigidTransform,
}

impl KinematicChain {
    pub fn new(base: RigidTransform, joints: Vec<Joint>, tip: RigidTransform) -> Result<Self, KinError> {
        if joints.is_empty() {
            return Err(KinError::Chain("chain needs at least one joint".into()));
        }
        for (i, j) in joints.iter().enumerate() {
            if !(j.limits.lo < j.limits.hi) {
                return Err(KinError::Chain(format!(
                    "joint {i} ({}) limits [{}, {}] are not increasing",
                    j.name, j.limits.lo, j.limits.hi
                )));
            }
        }
        Ok(Self { base, joints, tip })
    }

    pub fn from_spec(spec: &ChainSpec) -> Result<Self, KinError> {
        let joints = spec
            .joints
            .iter()
            .map(|j| {
                let axis = Vector3::from(j.axis);
                if !(axis.norm() > 1e-9) || !axis.iter().all(|v| v.is_finite()) {
                    return Err(KinError::Chain(format!("joint {} has a degenerate axis", j.name)));
                }
                Ok(Joint {
                    name: j.name.clone(),
                    axis: Unit::new_normalize(axis),
                    origin: j.origin.to_transform(),
                    limits: JointLimits {
                        lo: j.limits[0],
                        hi: j.limits[1],
                    },
                })
            })
            .collect::<Result<Vec<_>, _>>()?;
        Self::new(spec.base.to_transform(), joints, spec.tip.to_transform())
    }

    pub fn base(&self) -> &RigidTransform {
        &self.base
    }

    pub fn joints(&self) -> &[Joint] {
        &self.joints
    }

    pub fn tip_offset(&self) -> &RigidTransform {
        &self.tip
    }

    pub fn dof(&self) -> usize {
        self.joints.len()
    }

    /// All-zero angles clamped into the limits.
    pub fn home(&self) -> JointConfig {
        JointConfig(self.joints.iter().map(|j| j.limits.clamp(0.0)).collect())
    }

    pub fn check_dimension(&self, q: &JointConfig) -> Result<(), KinError> {
        if q.len() != self.dof() {
            return Err(KinError::Dimension {
                expected: self.dof(),
                got: q.len(),
            });
        }
        Ok(())
    }

    /// Dimension and exact componentwise limit check.
    pub fn check_config(&self, q: &JointConfig) -> Result<(), KinError> {
        self.check_dimension(q)?;
        for (i, (j, &a)) in self.joints.iter().zip(q.angles()).enumerate() {
            if !j.limits.contains(a) {
                return Err(KinError::Limits {
                    joint: i,
                    angle: a,
                    lo: j.limits.lo,
                    hi: j.limits.hi,
                });
            }
        }
        Ok(())
    }

    /// Clamps every angle into its joint's limits.
    pub fn clamp(&self, q: &mut JointConfig) {
        for (a, j) in q.0.iter_mut().zip(&self.joints) {
            *a = j.limits.clamp(*a);
        }
    }

    /// World poses of every joint frame and of the tip.
    ///
    /// # Panics
    /// If `q` does not have one angle per joint.
    pub fn frames(&self, q: &JointConfig) -> ChainFrames {
        assert_eq!(q.len(), self.dof(), "joint config dimension");
        let mut current = self.base;
        let mut joints = Vec::with_capacity(self.dof());
        for (j, &angle) in self.joints.iter().zip(q.angles()) {
            current = current.compose(&j.origin);
            joints.push(current);
            current = current.compose(&RigidTransform::from_axis_angle(&j.axis, angle));
        }
        ChainFrames {
            joints,
            tip: current.compose(&self.tip),
        }
    }

    /// Tip pose: base ∘ Π(origin_i ∘ Rot(axis_i, q_i)) ∘ tip offset.
    pub fn forward_kinematics(&self, q: &JointConfig) -> RigidTransform {
        self.frames(q).tip
    }

    /// Geometric Jacobian in the world frame: rows 0..3 linear tip velocity,
    /// rows 3..6 angular velocity.
    pub fn jacobian(&self, q: &JointConfig) -> Matrix6xX<f64> {
        let frames = self.frames(q);
        let tip = frames.tip.translation();
        let mut jac = Matrix6xX::zeros(self.dof());
        for (i, (frame, joint)) in frames.joints.iter().zip(&self.joints).enumerate() {
            let axis = frame.transform_vector(joint.axis.as_ref());
            let lever = tip - frame.translation();
            let linear = axis.cross(&lever);
            jac.fixed_view_mut::<3, 1>(0, i).copy_from(&linear);
            jac.fixed_view_mut::<3, 1>(3, i).copy_from(&axis);
        }
        jac
    }
}
