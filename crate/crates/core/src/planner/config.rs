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

use crate::error::PlanError;
use crate::geom::Aabb;
use serde::{Deserialize, Serialize};

/// Knobs of the guided planner. Distances in "composite" units are meters plus
/// `rotation_weight` times radians.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct PlannerConfig {
    /// Per-segment planning deadline (s).
    pub t_e: f64,
    /// Largest translation per tree extension (m).
    pub step_translation: f64,
    /// Largest rotation per tree extension (rad).
    pub step_rotation: f64,
    /// Meters per radian in the composite metric.
    pub rotation_weight: f64,
    /// Probability of steering toward the other tree's root instead of a random pose.
    pub goal_bias: f64,
    pub max_key_poses: usize,
    /// Samples farther than this from the extended tree are rejected; 0 disables.
    /// `None` means ten composite step lengths.
    pub dynamic_domain_radius: Option<f64>,
    /// Spacing of collision checks along every edge (composite units).
    pub validation_resolution: f64,
    pub rng_seed: u64,
    pub repair_samples_max: usize,
    /// Outer radii of the repair shells, ascending (composite units).
    pub repair_radius_schedule: Vec<f64>,
    /// Tree extensions per segment before the segment is declared failed; 0 means
    /// only the deadline applies.
    pub max_iterations: usize,
    pub smoothing_attempts: usize,
    /// Position sampling box; derived from the scene when absent.
    #[serde(skip)]
    pub sampling_box: Option<Aabb>,
}

impl Default for PlannerConfig {
    fn default() -> Self {
        Self {
            t_e: 5.0,
            step_translation: 0.01,
            step_rotation: 0.1,
            rotation_weight: 0.1,
            goal_bias: 0.1,
            max_key_poses: 16,
            dynamic_domain_radius: None,
            validation_resolution: 0.004,
            rng_seed: 1,
            repair_samples_max: 2000,
            repair_radius_schedule: vec![0.005, 0.01, 0.02, 0.04],
            max_iterations: 0,
            smoothing_attempts: 200,
            sampling_box: None,
        }
    }
}

impl PlannerConfig {
    /// Composite length of one full extension step.
    pub fn composite_step(&self) -> f64 {
        self.step_translation + self.rotation_weight * self.step_rotation
    }

    pub fn effective_dynamic_domain_radius(&self) -> f64 {
        self.dynamic_domain_radius.unwrap_or(10.0 * self.composite_step())
    }

    pub fn validate(&self) -> Result<(), PlanError> {
        let fail = |m: String| Err(PlanError::Config(m));
        if !(self.t_e > 0.0) {
            return fail(format!("t_e must be positive, got {}", self.t_e));
        }
        if !(0.0..=1.0).contains(&self.goal_bias) {
            return fail(format!("goal_bias must be in [0, 1], got {}", self.goal_bias));
        }
        if !(self.step_translation > 0.0 && self.step_rotation > 0.0) {
            return fail("step sizes must be positive".into());
        }
        if !(self.rotation_weight > 0.0) {
            return fail("rotation_weight must be positive".into());
        }
        if !(self.validation_resolution > 0.0)
            || self.validation_resolution > self.step_translation.min(self.step_rotation)
        {
            return fail(format!(
                "validation_resolution {} must be positive and no larger than the smallest step",
                self.validation_resolution
            ));
        }
        if self.effective_dynamic_domain_radius() < 0.0 {
            return fail("dynamic_domain_radius must be >= 0".into());
        }
        if self.repair_radius_schedule.is_empty()
            || self.repair_radius_schedule.iter().any(|r| !(*r > 0.0))
            || self.repair_radius_schedule.windows(2).any(|w| w[1] <= w[0])
        {
            return fail("repair_radius_schedule must be positive and strictly increasing".into());
        }
        Ok(())
    }
}
