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

//! Object paths, the composite metric, and edge/path validation.

use crate::geom::{RigidTransform, Scene};
use serde::{Deserialize, Serialize};
use std::fmt;

/// Translation distance plus `rotation_weight` times the geodesic rotation angle.
pub fn composite_distance(a: &RigidTransform, b: &RigidTransform, rotation_weight: f64) -> f64 {
    a.translation_distance_to(b) + rotation_weight * a.rotation_angle_to(b)
}

/// Moves from `from` toward `to` by at most one step in translation and in rotation.
///
/// Returns the new pose and whether it is `to` itself.
pub fn steer(
    from: &RigidTransform,
    to: &RigidTransform,
    step_translation: f64,
    step_rotation: f64,
) -> (RigidTransform, bool) {
    let dt = from.translation_distance_to(to);
    let dr = from.rotation_angle_to(to);
    let mut s: f64 = 1.0;
    if dt > step_translation {
        s = s.min(step_translation / dt);
    }
    if dr > step_rotation {
        s = s.min(step_rotation / dr);
    }
    if s >= 1.0 {
        (*to, true)
    } else {
        (from.interpolate(to, s), false)
    }
}

/// Interpolation parameters covering `[0, 1]` so that consecutive samples are at most
/// `resolution` apart in the composite metric. Always includes both endpoints.
pub fn edge_parameters(a: &RigidTransform, b: &RigidTransform, rotation_weight: f64, resolution: f64) -> Vec<f64> {
    let d = composite_distance(a, b, rotation_weight);
    let n = (d / resolution).ceil().max(1.0) as usize;
    (0..=n).map(|i| i as f64 / n as f64).collect()
}

/// Which collision routine a validation pass uses.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CollisionChecker {
    Bvh,
    /// Exhaustive triangle pairs, independent of the hierarchy.
    BruteForce,
}

impl CollisionChecker {
    pub fn in_collision(self, scene: &Scene, pose: &RigidTransform) -> bool {
        match self {
            CollisionChecker::Bvh => scene.pose_in_collision(pose),
            CollisionChecker::BruteForce => scene.pose_in_collision_brute_force(pose),
        }
    }
}

/// True when every densified pose of the straight edge `a → b` is collision-free.
/// The start pose `a` itself is not re-checked.
pub fn edge_is_free(
    scene: &Scene,
    a: &RigidTransform,
    b: &RigidTransform,
    rotation_weight: f64,
    resolution: f64,
) -> bool {
    edge_parameters(a, b, rotation_weight, resolution)
        .into_iter()
        .skip(1)
        .all(|s| !scene.pose_in_collision(&a.interpolate(b, s)))
}

/// Where a waypoint came from.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Provenance {
    Start,
    Goal,
    /// Demonstrated key pose of the given rank.
    KeyPose(usize),
    /// Collision-free stand-in for the key pose of the given rank.
    Repaired(usize),
    Sampled,
}

impl fmt::Display for Provenance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Provenance::Start => write!(f, "start"),
            Provenance::Goal => write!(f, "goal"),
            Provenance::KeyPose(n) => write!(f, "key_pose({n})"),
            Provenance::Repaired(n) => write!(f, "repaired({n})"),
            Provenance::Sampled => write!(f, "sampled"),
        }
    }
}

impl std::str::FromStr for Provenance {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let ranked = |prefix: &str| -> Option<usize> {
            s.strip_prefix(prefix)?
                .strip_prefix('(')?
                .strip_suffix(')')?
                .parse()
                .ok()
        };
        match s {
            "start" => Ok(Provenance::Start),
            "goal" => Ok(Provenance::Goal),
            "sampled" => Ok(Provenance::Sampled),
            _ => ranked("key_pose")
                .map(Provenance::KeyPose)
                .or_else(|| ranked("repaired").map(Provenance::Repaired))
                .ok_or_else(|| format!("unknown provenance tag {s:?}")),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Waypoint {
    pub pose: RigidTransform,
    pub tag: Provenance,
}

/// Ordered waypoints; consecutive waypoints are joined by straight (interpolated) edges.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct ObjectPath {
    pub waypoints: Vec<Waypoint>,
}

impl ObjectPath {
    pub fn poses(&self) -> Vec<RigidTransform> {
        self.waypoints.iter().map(|w| w.pose).collect()
    }

    /// Inserts intermediate `Sampled` waypoints so no edge exceeds either step bound.
    pub fn densified(&self, step_translation: f64, step_rotation: f64) -> ObjectPath {
        let mut out = Vec::new();
        for (i, w) in self.waypoints.iter().enumerate() {
            if i > 0 {
                let prev = &self.waypoints[i - 1].pose;
                let dt = prev.translation_distance_to(&w.pose) / step_translation;
                let dr = prev.rotation_angle_to(&w.pose) / step_rotation;
                let n = dt.max(dr).ceil().max(1.0) as usize;
                for k in 1..n {
                    out.push(Waypoint {
                        pose: prev.interpolate(&w.pose, k as f64 / n as f64),
                        tag: Provenance::Sampled,
                    });
                }
            }
            out.push(*w);
        }
        ObjectPath { waypoints: out }
    }

    /// Sum of composite edge lengths.
    pub fn length(&self, rotation_weight: f64) -> f64 {
        self.waypoints
            .windows(2)
            .map(|w| composite_distance(&w[0].pose, &w[1].pose, rotation_weight))
            .sum()
    }
}

/// First colliding pose found along a path.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Violation {
    /// Index of the edge's first waypoint (for a colliding waypoint, its own index
    /// with `s = 0`).
    pub waypoint: usize,
    /// Interpolation parameter along the edge.
    pub s: f64,
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct PathValidation {
    pub valid: bool,
    pub first_violation: Option<Violation>,
}

/// Densifies every edge at `resolution` and checks each pose, waypoints included.
pub fn validate_path(
    path: &ObjectPath,
    scene: &Scene,
    rotation_weight: f64,
    resolution: f64,
    checker: CollisionChecker,
) -> PathValidation {
    let mut violation = None;
    'outer: for (i, w) in path.waypoints.iter().enumerate() {
        if checker.in_collision(scene, &w.pose) {
            violation = Some(Violation { waypoint: i, s: 0.0 });
            break;
        }
        if let Some(next) = path.waypoints.get(i + 1) {
            let params = edge_parameters(&w.pose, &next.pose, rotation_weight, resolution);
            // Interior samples only; the next waypoint is checked on its own turn.
            for &s in &params[1..params.len() - 1] {
                if checker.in_collision(scene, &w.pose.interpolate(&next.pose, s)) {
                    violation = Some(Violation { waypoint: i, s });
                    break 'outer;
                }
            }
        }
    }
    PathValidation {
        valid: violation.is_none(),
        first_violation: violation,
    }
}
