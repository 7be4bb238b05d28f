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

//! Re-validation of persisted paths against the scene, using the exhaustive checker.

use crate::artifacts::PathFile;
use crate::config::ScenarioConfig;
use crate::error::CliError;
use crate::run::load_scene;
use demoguide_core::planner::{validate_path, CollisionChecker, Violation};
use std::path::Path;

#[derive(Clone, Debug, PartialEq)]
pub struct Verdict {
    /// True iff the path is non-empty and collision-free under brute-force checking.
    pub valid: bool,
    pub first_violation: Option<Violation>,
    pub waypoint_count: usize,
    /// Whether the first and last waypoints are the scenario's start and goal.
    pub endpoints_match: bool,
}

/// Loads `path_file` and validates it in the scenario's scene. A file that cannot be
/// read or parsed is an error, never an invalid verdict.
pub fn check_artifacts(path_file: &Path, scenario: &ScenarioConfig) -> Result<Verdict, CliError> {
    let file = PathFile::read(path_file)?;
    let path = file.object_path().map_err(|message| CliError::Parse {
        path: path_file.display().to_string(),
        message,
    })?;
    let scene = load_scene(scenario)?;
    if path.waypoints.is_empty() {
        return Ok(Verdict {
            valid: false,
            first_violation: None,
            waypoint_count: 0,
            endpoints_match: false,
        });
    }
    let planner = &scenario.planner;
    let validation = validate_path(
        &path,
        &scene,
        planner.rotation_weight,
        planner.validation_resolution,
        CollisionChecker::BruteForce,
    );
    let first = &path.waypoints[0].pose;
    let last = &path.waypoints[path.waypoints.len() - 1].pose;
    let endpoints_match =
        first.approx_eq(&scenario.start.to_transform(), 1e-9) && last.approx_eq(&scenario.goal.to_transform(), 1e-9);
    Ok(Verdict {
        valid: validation.valid,
        first_violation: validation.first_violation,
        waypoint_count: path.waypoints.len(),
        endpoints_match,
    })
}
