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

//! Demonstration-guided sampling-based planning of object poses.

mod config;
mod guided;
mod path;
mod repair;
mod rrt;

pub use config::PlannerConfig;
pub use guided::{plan_with_demonstration, AttemptLog, PlanResult, PlanStatus, PlanningProblem, SegmentLog};
pub use path::{
    composite_distance, edge_is_free, steer, validate_path, CollisionChecker, ObjectPath, PathValidation, Provenance,
    Violation, Waypoint,
};
pub use repair::{repair_key_pose, RepairOutcome};
pub use rrt::{plan_segment, random_rotation, sampling_box, SegmentOutcome, SegmentStats};
