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

//! Object paths to joint paths through a fixed grasp, plus an optional arm collision audit.

use super::chain::{JointConfig, KinematicChain};
use super::ik::{inverse_kinematics, IkConfig};
use crate::error::KinError;
use crate::geom::{CollisionIndex, RigidTransform, Scene, TriMesh};
use crate::planner::ObjectPath;
use nalgebra::{Point3, UnitQuaternion, Vector3};

/// Joint configurations aligned one-to-one with the densified object path they realize.
#[derive(Clone, Debug, PartialEq)]
pub struct JointPath {
    pub object_path: ObjectPath,
    pub configs: Vec<JointConfig>,
}

impl JointPath {
    pub fn len(&self) -> usize {
        self.configs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.configs.is_empty()
    }

    /// Largest single-joint change between consecutive configs.
    pub fn max_joint_step(&self) -> f64 {
        self.configs
            .windows(2)
            .map(|w| w[0].max_step_to(&w[1]))
            .fold(0.0, f64::max)
    }
}

/// Tip pose that holds the object at `object_pose`, where `grasp` is the object's pose in
/// the tip frame.
pub fn tip_target(object_pose: &RigidTransform, grasp: &RigidTransform) -> RigidTransform {
    object_pose.compose(&grasp.inverse())
}

/// Densifies `path`, then solves IK waypoint by waypoint, each seeded with the previous
/// solution (the first with `seed`).
pub fn object_path_to_joint_path(
    path: &ObjectPath,
    grasp: &RigidTransform,
    chain: &KinematicChain,
    seed: &JointConfig,
    config: &IkConfig,
) -> Result<JointPath, KinError> {
    let dense = path.densified(config.densify_translation, config.densify_rotation);
    let mut configs: Vec<JointConfig> = Vec::with_capacity(dense.waypoints.len());
    for (index, w) in dense.waypoints.iter().enumerate() {
        let previous = configs.last().unwrap_or(seed);
        let solution = inverse_kinematics(chain, &tip_target(&w.pose, grasp), previous, config).map_err(|cause| {
            KinError::Waypoint {
                index,
                cause: Box::new(cause),
            }
        })?;
        if let Some(prev) = configs.last() {
            for (joint, (a, b)) in prev.angles().iter().zip(solution.config.angles()).enumerate() {
                let step = (a - b).abs();
                if step > config.joint_step_bound {
                    return Err(KinError::Discontinuity {
                        index: index - 1,
                        joint,
                        step,
                        bound: config.joint_step_bound,
                    });
                }
            }
        }
        configs.push(solution.config);
    }
    Ok(JointPath {
        object_path: dense,
        configs,
    })
}

/// A link box touching an obstacle.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ArmContact {
    pub waypoint: usize,
    /// Index of the link; link i runs from joint i to joint i+1, the last one to the tip.
    pub link: usize,
}

/// Square-section box of half-width `radius` around each link segment, checked against
/// the scene's obstacles at every config. Returns the first contact.
///
/// The planner assumes the arm is clear of obstacles, so this audit is optional.
pub fn audit_arm_clearance(
    chain: &KinematicChain,
    configs: &[JointConfig],
    scene: &Scene,
    radius: f64,
) -> Result<Option<ArmContact>, KinError> {
    for (waypoint, q) in configs.iter().enumerate() {
        chain.check_dimension(q)?;
        let frames = chain.frames(q);
        let mut points: Vec<Vector3<f64>> = frames.joints.iter().map(|f| *f.translation()).collect();
        points.push(*frames.tip.translation());
        for (link, seg) in points.windows(2).enumerate() {
            let Some((mesh, pose)) = link_box(&seg[0], &seg[1], radius) else {
                continue;
            };
            let index = CollisionIndex::build(mesh).map_err(|e| KinError::Chain(e.to_string()))?;
            if scene.index_in_collision(&index, &pose) {
                return Ok(Some(ArmContact { waypoint, link }));
            }
        }
    }
    Ok(None)
}

fn link_box(a: &Vector3<f64>, b: &Vector3<f64>, radius: f64) -> Option<(TriMesh, RigidTransform)> {
    let d = b - a;
    let len = d.norm();
    if len < 1e-9 {
        return None;
    }
    let rotation = UnitQuaternion::rotation_between(&Vector3::z(), &d)
        .unwrap_or_else(|| UnitQuaternion::from_axis_angle(&Vector3::x_axis(), std::f64::consts::PI));
    let mesh = TriMesh::cuboid(Point3::new(-radius, -radius, 0.0), Point3::new(radius, radius, len)).ok()?;
    Some((mesh, RigidTransform::new(rotation, *a)))
}
