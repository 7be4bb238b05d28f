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

//! Fixed obstacles plus one moving object.

use super::bvh::{brute_force_collision, check_collision, CollisionIndex};
use super::intersect::point_in_closed_mesh;
use super::mesh::{Aabb, TriMesh};
use super::transform::RigidTransform;
use crate::error::GeomError;
use nalgebra::Point3;

#[derive(Clone, Debug)]
pub struct Obstacle {
    index: CollisionIndex,
    pose: RigidTransform,
    world_aabb: Aabb,
}

impl Obstacle {
    pub fn index(&self) -> &CollisionIndex {
        &self.index
    }

    pub fn pose(&self) -> &RigidTransform {
        &self.pose
    }

    pub fn world_aabb(&self) -> &Aabb {
        &self.world_aabb
    }
}

/// Immutable once built; share it by reference across planning workers.
#[derive(Clone, Debug)]
pub struct Scene {
    obstacles: Vec<Obstacle>,
    object: CollisionIndex,
    frame: String,
}

impl Scene {
    pub fn new(
        obstacles: Vec<(TriMesh, RigidTransform)>,
        object: TriMesh,
        frame: impl Into<String>,
    ) -> Result<Self, GeomError> {
        let obstacles = obstacles
            .into_iter()
            .map(|(mesh, pose)| {
                let world_aabb = Aabb::from_points(
                    mesh.vertices()
                        .iter()
                        .map(|p| pose.transform_point(p))
                        .collect::<Vec<_>>()
                        .iter(),
                );
                Ok(Obstacle {
                    index: CollisionIndex::build(mesh)?,
                    pose,
                    world_aabb,
                })
            })
            .collect::<Result<Vec<_>, GeomError>>()?;
        Ok(Self {
            obstacles,
            object: CollisionIndex::build(object)?,
            frame: frame.into(),
        })
    }

    pub fn obstacles(&self) -> &[Obstacle] {
        &self.obstacles
    }

    pub fn object(&self) -> &CollisionIndex {
        &self.object
    }

    /// Name of the world frame convention the poses are expressed in.
    pub fn frame(&self) -> &str {
        &self.frame
    }

    /// Diagonal of the moving object's bounding box (m).
    pub fn object_diameter(&self) -> f64 {
        self.object.root_aabb().diagonal()
    }

    /// Bounding box of all obstacles in the world frame, `None` for an empty scene.
    pub fn obstacles_aabb(&self) -> Option<Aabb> {
        self.obstacles.iter().map(|o| o.world_aabb).reduce(|a, b| a.merge(&b))
    }

    /// True iff the object at `object_pose` intersects (or touches, or is buried in) an obstacle.
    pub fn pose_in_collision(&self, object_pose: &RigidTransform) -> bool {
        self.index_in_collision(&self.object, object_pose)
    }

    /// Same test as [`Scene::pose_in_collision`] for any other rigid body, e.g. a robot link.
    pub fn index_in_collision(&self, body: &CollisionIndex, pose: &RigidTransform) -> bool {
        let corners = body.root_aabb().corners().map(|p| pose.transform_point(&p));
        let body_box = Aabb::from_points(corners.iter()).inflated(1e-9);
        self.obstacles.iter().any(|o| {
            o.world_aabb.overlaps(&body_box)
                && (check_collision(&o.index, &o.pose, body, pose).intersecting()
                    || nested(o.index.mesh(), &o.pose, body.mesh(), pose))
        })
    }

    /// Same verdict as [`Scene::pose_in_collision`], computed by exhaustive triangle pairs.
    pub fn pose_in_collision_brute_force(&self, object_pose: &RigidTransform) -> bool {
        self.obstacles.iter().any(|o| {
            brute_force_collision(o.index.mesh(), &o.pose, self.object.mesh(), object_pose).intersecting()
                || nested(o.index.mesh(), &o.pose, self.object.mesh(), object_pose)
        })
    }
}

/// With no surface crossing, one mesh lies wholly inside the other or they are apart;
/// a single vertex decides which.
fn nested(a: &TriMesh, pose_a: &RigidTransform, b: &TriMesh, pose_b: &RigidTransform) -> bool {
    let b_in_a = pose_a.inverse() * *pose_b;
    let probe_b: Point3<f64> = b_in_a.transform_point(&b.vertices()[b.triangles()[0][0] as usize]);
    if point_in_closed_mesh(a, &probe_b) {
        return true;
    }
    let a_in_b = b_in_a.inverse();
    let probe_a = a_in_b.transform_point(&a.vertices()[a.triangles()[0][0] as usize]);
    point_in_closed_mesh(b, &probe_a)
}
