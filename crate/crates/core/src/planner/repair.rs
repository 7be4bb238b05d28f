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

//! Replacement of in-collision demonstration poses by nearby collision-free samples.

use super::config::PlannerConfig;
use super::path::composite_distance;
use super::rrt::random_rotation;
use crate::geom::{RigidTransform, Scene};
use nalgebra::{Unit, UnitQuaternion, Vector3};
use rand::Rng;
use rand_chacha::ChaCha8Rng;

#[derive(Clone, Copy, Debug, PartialEq)]
pub enum RepairOutcome {
    /// The input was already collision-free; no samples were drawn.
    Unchanged(RigidTransform),
    Repaired {
        pose: RigidTransform,
        samples_drawn: usize,
        /// Outer radius of the shell the pose was found in (composite units).
        shell_radius: f64,
    },
    Failed {
        samples_drawn: usize,
    },
}

impl RepairOutcome {
    pub fn pose(&self) -> Option<RigidTransform> {
        match self {
            RepairOutcome::Unchanged(p) | RepairOutcome::Repaired { pose: p, .. } => Some(*p),
            RepairOutcome::Failed { .. } => None,
        }
    }
}

/// A pose at exactly composite distance `radius` from `center`, direction uniform.
///
/// The radius is split at a uniform fraction between translation and rotation so both
/// kinds of displacement are explored.
fn perturb(center: &RigidTransform, radius: f64, rotation_weight: f64, rng: &mut ChaCha8Rng) -> RigidTransform {
    let split: f64 = rng.gen();
    let dir = loop {
        let v = Vector3::new(
            rng.gen_range(-1.0..1.0),
            rng.gen_range(-1.0..1.0),
            rng.gen_range(-1.0..1.0),
        );
        let n = v.norm();
        if n > 1e-3 && n <= 1.0 {
            break v / n;
        }
    };
    let axis = Unit::new_normalize(random_rotation(rng).quaternion().vector().into_owned());
    let angle = ((1.0 - split) * radius / rotation_weight).min(std::f64::consts::PI);
    let translation = center.translation() + dir * (split * radius);
    let rotation = UnitQuaternion::from_axis_angle(&axis, angle) * *center.rotation();
    RigidTransform::new(rotation, translation)
}

/// Searches shells of growing radius around `pose` for the nearest collision-free pose.
///
/// The sample budget is split evenly over the shells in `repair_radius_schedule`; the
/// first shell containing any free sample decides, and its closest free sample wins.
pub fn repair_key_pose(
    pose: &RigidTransform,
    scene: &Scene,
    config: &PlannerConfig,
    rng: &mut ChaCha8Rng,
) -> RepairOutcome {
    if !scene.pose_in_collision(pose) {
        return RepairOutcome::Unchanged(*pose);
    }
    let schedule = &config.repair_radius_schedule;
    let per_shell = (config.repair_samples_max / schedule.len()).max(1);
    let mut drawn = 0;
    let mut inner = 0.0;
    for &outer in schedule {
        let mut best: Option<(f64, RigidTransform)> = None;
        for _ in 0..per_shell {
            if drawn >= config.repair_samples_max {
                break;
            }
            drawn += 1;
            let radius = rng.gen_range(inner..=outer);
            let candidate = perturb(pose, radius, config.rotation_weight, rng);
            if scene.pose_in_collision(&candidate) {
                continue;
            }
            let d = composite_distance(pose, &candidate, config.rotation_weight);
            if best.map_or(true, |(bd, _)| d < bd) {
                best = Some((d, candidate));
            }
        }
        if let Some((_, found)) = best {
            return RepairOutcome::Repaired {
                pose: found,
                samples_drawn: drawn,
                shell_radius: outer,
            };
        }
        inner = outer;
    }
    RepairOutcome::Failed { samples_drawn: drawn }
}
