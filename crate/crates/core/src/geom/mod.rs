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

//! Pose algebra, triangle meshes, and collision queries between posed meshes.

mod bvh;
mod intersect;
mod mesh;
mod scene;
mod transform;

pub use bvh::{brute_force_collision, check_collision, CollisionIndex, CollisionReport};
pub use intersect::{point_in_closed_mesh, triangles_intersect, Triangle};
pub use mesh::{Aabb, TriMesh, DEGENERATE_AREA};
pub use scene::{Obstacle, Scene};
pub use transform::{rotation_angle_between, PoseVector, PoseVectorDecomposition, RigidTransform};
