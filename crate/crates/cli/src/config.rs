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

//! Scenario files.
//!
//! A scenario is a TOML document holding everything one planning run needs. Relative
//! paths inside it are resolved against the directory of the file itself, so a scenario
//! directory can be moved as a unit.

use crate::error::CliError;
use demoguide_core::demo::{FitConfig, ScoredDof};
use demoguide_core::geom::PoseVector;
use demoguide_core::kin::IkConfig;
use demoguide_core::planner::PlannerConfig;
use serde::{Deserialize, Serialize};
use std::path::{Path, PathBuf};

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ScenarioConfig {
    pub name: String,
    /// Allows identical start and goal poses.
    #[serde(default)]
    pub trivial: bool,
    pub scene: SceneConfig,
    /// Pose of the fixed part G in the planner world; demonstrated poses are relative to it.
    #[serde(default)]
    pub world_t_g: PoseVector,
    /// Initial object pose P^I, planner world.
    pub start: PoseVector,
    /// Final object pose P^F, planner world.
    pub goal: PoseVector,
    #[serde(default)]
    pub demo: Option<DemoConfig>,
    #[serde(default)]
    pub planner: PlannerConfig,
    #[serde(default)]
    pub kinematics: Option<KinematicsConfig>,
    #[serde(default)]
    pub bench: BenchConfig,
    /// Directory relative paths are resolved against; set by [`ScenarioConfig::load`].
    #[serde(skip)]
    pub base_dir: PathBuf,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SceneConfig {
    /// Name of the planner world frame, reported in outputs.
    #[serde(default = "default_frame")]
    pub frame: String,
    /// Moving object mesh (OBJ), in the object frame.
    pub object: PathBuf,
    /// Gripper mesh (OBJ) expressed in the object frame and merged into the moving body.
    #[serde(default)]
    pub gripper: Option<PathBuf>,
    #[serde(default)]
    pub obstacles: Vec<ObstacleConfig>,
}

fn default_frame() -> String {
    "world".to_string()
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ObstacleConfig {
    pub mesh: PathBuf,
    /// Fixed pose in the planner world.
    #[serde(default)]
    pub pose: PoseVector,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DemoConfig {
    /// Pose log (CSV), relative or world-pair schema.
    pub log: PathBuf,
    /// Scored DoF: `x`, `y`, `z`, `roll`, `pitch`, `yaw` or `all`.
    #[serde(default = "default_dof")]
    pub dof: String,
    #[serde(default = "default_degree")]
    pub degree: usize,
    /// Candidates come only from samples with `t` in `[lo, hi]`.
    #[serde(default)]
    pub region: Option<[f64; 2]>,
}

fn default_dof() -> String {
    "pitch".to_string()
}

fn default_degree() -> usize {
    7
}

impl DemoConfig {
    pub fn fit_config(&self) -> Result<FitConfig, CliError> {
        let dof: ScoredDof = self
            .dof
            .parse()
            .map_err(|e| CliError::config(format!("demo.dof: {e}")))?;
        if let Some([lo, hi]) = self.region {
            if !(lo <= hi) {
                return Err(CliError::config(format!("demo.region [{lo}, {hi}] is empty")));
            }
        }
        Ok(FitConfig {
            dof,
            degree: self.degree,
            region: self.region.map(|[lo, hi]| (lo, hi)),
        })
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct KinematicsConfig {
    /// Chain description (TOML).
    pub chain: PathBuf,
    /// Object pose in the tool-tip frame; the tip target is `object ∘ grasp⁻¹`.
    pub grasp: PoseVector,
    /// Joint angles seeding the first waypoint; defaults to the chain's home config.
    #[serde(default)]
    pub seed: Option<Vec<f64>>,
    #[serde(default)]
    pub ik: IkConfig,
    /// Radius of the link capsules used by the optional arm-clearance audit; off when unset.
    #[serde(default)]
    pub audit_link_radius: Option<f64>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct BenchConfig {
    pub trials: usize,
    /// Seeds for trials 1, 2, …; trial k without an entry uses seed k.
    pub seeds: Vec<u64>,
    /// Minimum number of successful trials for a zero exit status.
    pub success_floor: usize,
    /// Worker threads for parallel trials.
    pub jobs: usize,
}

impl Default for BenchConfig {
    fn default() -> Self {
        Self {
            trials: 5,
            seeds: Vec::new(),
            success_floor: 0,
            jobs: 1,
        }
    }
}

impl BenchConfig {
    /// Seed of 1-based trial `trial`.
    pub fn seed_for(&self, trial: usize) -> u64 {
        self.seeds.get(trial - 1).copied().unwrap_or(trial as u64)
    }
}

impl ScenarioConfig {
    /// Reads a scenario file, applies `key.path=value` overrides and validates the result.
    pub fn load(path: impl AsRef<Path>, overrides: &[String]) -> Result<Self, CliError> {
        let path = path.as_ref();
        let text = std::fs::read_to_string(path).map_err(|e| CliError::Config {
            path: path.display().to_string(),
            message: e.to_string(),
        })?;
        let base_dir = path.parent().map(Path::to_path_buf).unwrap_or_default();
        Self::from_toml_str(&text, base_dir, overrides).map_err(|e| match e {
            CliError::Config { message, .. } => CliError::Config {
                path: path.display().to_string(),
                message,
            },
            other => other,
        })
    }

    pub fn from_toml_str(text: &str, base_dir: PathBuf, overrides: &[String]) -> Result<Self, CliError> {
        let mut doc: toml::Table = toml::from_str(text).map_err(|e| CliError::config(e.to_string()))?;
        for o in overrides {
            apply_override(&mut doc, o)?;
        }
        let mut config: ScenarioConfig = toml::Value::Table(doc)
            .try_into()
            .map_err(|e: toml::de::Error| CliError::config(e.to_string()))?;
        config.base_dir = base_dir;
        config.validate()?;
        Ok(config)
    }

    /// Resolves a path from the scenario file against its directory.
    pub fn resolve(&self, p: &Path) -> PathBuf {
        if p.is_absolute() {
            p.to_path_buf()
        } else {
            self.base_dir.join(p)
        }
    }

    /// Checks referenced files exist, poses are finite and start ≠ goal unless trivial.
    pub fn validate(&self) -> Result<(), CliError> {
        let mut files: Vec<(&str, &Path)> = vec![("scene.object", &self.scene.object)];
        if let Some(g) = &self.scene.gripper {
            files.push(("scene.gripper", g));
        }
        for o in &self.scene.obstacles {
            files.push(("scene.obstacles.mesh", &o.mesh));
        }
        if let Some(d) = &self.demo {
            files.push(("demo.log", &d.log));
            d.fit_config()?;
        }
        if let Some(k) = &self.kinematics {
            files.push(("kinematics.chain", &k.chain));
        }
        for (field, p) in files {
            let full = self.resolve(p);
            if !full.is_file() {
                return Err(CliError::config(format!("{field}: file {} not found", full.display())));
            }
        }
        for (field, pose) in [
            ("world_t_g", &self.world_t_g),
            ("start", &self.start),
            ("goal", &self.goal),
        ] {
            if !pose.to_array().iter().all(|v| v.is_finite()) {
                return Err(CliError::config(format!("{field} has non-finite values")));
            }
        }
        if !self.trivial && self.start == self.goal {
            return Err(CliError::config(
                "start equals goal; set `trivial = true` to allow it".to_string(),
            ));
        }
        self.planner
            .validate()
            .map_err(|e| CliError::config(format!("planner: {e}")))?;
        if self.bench.trials == 0 {
            return Err(CliError::config("bench.trials must be at least 1".to_string()));
        }
        Ok(())
    }
}

/// Sets `a.b.c = value` in a TOML table. The value is read as a TOML literal when it
/// parses as one and as a bare string otherwise.
pub fn apply_override(doc: &mut toml::Table, assignment: &str) -> Result<(), CliError> {
    let (key, raw) = assignment
        .split_once('=')
        .ok_or_else(|| CliError::config(format!("override `{assignment}` is not key=value")))?;
    let keys: Vec<&str> = key.trim().split('.').map(str::trim).collect();
    if keys.iter().any(|k| k.is_empty()) {
        return Err(CliError::config(format!("override `{assignment}` has an empty key")));
    }
    let raw = raw.trim();
    let value = toml::from_str::<toml::Table>(&format!("v = {raw}"))
        .ok()
        .and_then(|mut t| t.remove("v"))
        .unwrap_or_else(|| toml::Value::String(raw.to_string()));
    let (last, parents) = keys.split_last().expect("split yields at least one key");
    let mut table = doc;
    for k in parents {
        let entry = table
            .entry(k.to_string())
            .or_insert_with(|| toml::Value::Table(toml::Table::new()));
        table = entry
            .as_table_mut()
            .ok_or_else(|| CliError::config(format!("override `{assignment}`: `{k}` is not a table")))?;
    }
    table.insert(last.to_string(), value);
    Ok(())
}
