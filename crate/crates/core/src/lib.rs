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

//! Demonstration-guided motion planning for narrow-space insertion.
//!
//! Human-demonstrated object poses are ranked by how fast the trajectory changes and
//! fed, most decisive first, into a bidirectional sampling planner until a
//! collision-free object path is found. The object path is then mapped to joint space
//! through a fixed grasp.

pub mod demo;
pub mod error;
pub mod geom;
pub mod kin;
pub mod planner;

pub use error::{DemoError, GeomError, KinError, PlanError};
pub use geom::{PoseVector, RigidTransform, Scene, TriMesh};
