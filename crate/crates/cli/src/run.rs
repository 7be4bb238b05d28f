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

//! End-to-end orchestration: ingest → rank → plan → joint map → artifacts.

use crate::artifacts::{self, ArtifactWriter, PathFile};
use crate::config::ScenarioConfig;
use crate::error::{CliError, Stage};
use demoguide_core::demo::{
    fit_dof_curve, fit_trace, rank_key_poses, read_pose_log, DemoTrajectory, Dof, KeyPose, Ranking, TraceRow,
};
use demoguide_core::geom::{RigidTransform, Scene, TriMesh};
use demoguide_core::kin::{
    audit_arm_clearance, object_path_to_joint_path, ArmContact, ChainSpec, JointConfig, JointPath, KinematicChain,
};
use demoguide_core::planner::{plan_with_demonstration, PlanResult, PlanStatus, PlanningProblem};
use demoguide_core::{GeomError, KinError};
use std::path::{Path, PathBuf};

/// Everything about a scenario that does not depend on the seed: scene, demonstration,
/// ranking and chain. Built once and shared by every trial.
#[derive(Debug)]
pub struct PreparedScenario {
    pub config: ScenarioConfig,
    pub scene: Scene,
    pub trajectory: Option<DemoTrajectory>,
    pub ranking: Option<Ranking>,
    pub chain: Option<KinematicChain>,
}

/// Outcome of one seeded run.
#[derive(Clone, Debug)]
pub struct ScenarioRun {
    pub seed: u64,
    pub result: PlanResult,
    /// Present when planning succeeded and the scenario has a chain.
    pub joint_path: Option<JointPath>,
    /// First arm-link contact found by the optional clearance audit.
    pub arm_contact: Option<ArmContact>,
}

impl ScenarioRun {
    pub fn succeeded(&self) -> bool {
        self.result.status == PlanStatus::Success
    }
}

/// A run together with the files it produced.
#[derive(Clone, Debug)]
pub struct ScenarioOutput {
    pub run: ScenarioRun,
    pub artifacts: Vec<PathBuf>,
}

fn load_mesh(config: &ScenarioConfig, p: &Path) -> Result<TriMesh, CliError> {
    TriMesh::from_obj_file(config.resolve(p)).map_err(|e| CliError::stage(Stage::Scene, e))
}

/// Builds the collision scene described by a scenario.
pub fn load_scene(config: &ScenarioConfig) -> Result<Scene, CliError> {
    let mut object = load_mesh(config, &config.scene.object)?;
    if let Some(g) = &config.scene.gripper {
        let gripper = load_mesh(config, g)?;
        object = TriMesh::merge(&[object, gripper]).map_err(|e| CliError::stage(Stage::Scene, e))?;
    }
    let obstacles = config
        .scene
        .obstacles
        .iter()
        .map(|o| Ok((load_mesh(config, &o.mesh)?, o.pose.to_transform())))
        .collect::<Result<Vec<_>, CliError>>()?;
    Scene::new(obstacles, object, &config.scene.frame).map_err(|e: GeomError| CliError::stage(Stage::Scene, e))
}

fn load_chain(config: &ScenarioConfig, p: &Path) -> Result<KinematicChain, CliError> {
    let path = config.resolve(p);
    let text = std::fs::read_to_string(&path)
        .map_err(|e| CliError::stage(Stage::Kinematics, KinError::Chain(format!("{}: {e}", path.display()))))?;
    let spec: ChainSpec = toml::from_str(&text)
        .map_err(|e| CliError::stage(Stage::Kinematics, KinError::Chain(format!("{}: {e}", path.display()))))?;
    KinematicChain::from_spec(&spec).map_err(|e| CliError::stage(Stage::Kinematics, e))
}

impl PreparedScenario {
    pub fn prepare(config: ScenarioConfig) -> Result<Self, CliError> {
        let scene = load_scene(&config)?;
        let (trajectory, ranking) = match &config.demo {
            Some(demo) => {
                let traj = read_pose_log(config.resolve(&demo.log)).map_err(|e| CliError::stage(Stage::Demo, e))?;
                let fit = demo.fit_config()?;
                let ranking = rank_key_poses(&traj, &config.world_t_g.to_transform(), &fit)
                    .map_err(|e| CliError::stage(Stage::Demo, e))?;
                (Some(traj), Some(ranking))
            }
            None => (None, None),
        };
        let chain = match &config.kinematics {
            Some(k) => {
                let chain = load_chain(&config, &k.chain)?;
                if let Some(seed) = &k.seed {
                    chain
                        .check_config(&JointConfig(seed.clone()))
                        .map_err(|e| CliError::stage(Stage::Kinematics, e))?;
                }
                Some(chain)
            }
            None => None,
        };
        Ok(Self {
            config,
            scene,
            trajectory,
            ranking,
            chain,
        })
    }

    pub fn key_poses(&self) -> &[KeyPose] {
        self.ranking.as_ref().map(|r| r.key_poses.as_slice()).unwrap_or(&[])
    }

    /// Number of candidate key poses offered to the planner.
    pub fn candidate_count(&self) -> usize {
        self.key_poses().len()
    }

    pub fn start(&self) -> RigidTransform {
        self.config.start.to_transform()
    }

    pub fn goal(&self) -> RigidTransform {
        self.config.goal.to_transform()
    }

    /// Fitted-curve traces of all six DoFs at the configured degree.
    pub fn traces(&self) -> Result<Vec<(Dof, Vec<TraceRow>)>, CliError> {
        let (Some(traj), Some(demo)) = (&self.trajectory, &self.config.demo) else {
            return Ok(Vec::new());
        };
        Dof::ALL
            .iter()
            .map(|&dof| {
                let fit = fit_dof_curve(traj, dof, demo.degree).map_err(|e| CliError::stage(Stage::Demo, e))?;
                Ok((dof, fit_trace(traj, &fit)))
            })
            .collect()
    }

    /// Plans with `seed` and, on success, maps the path to joint space.
    pub fn execute(&self, seed: u64) -> Result<ScenarioRun, CliError> {
        let mut planner = self.config.planner.clone();
        planner.rng_seed = seed;
        let problem = PlanningProblem::new(
            &self.scene,
            self.start(),
            self.goal(),
            self.key_poses().to_vec(),
            planner,
        )
        .map_err(|e| CliError::stage(Stage::Plan, e))?;
        let result = plan_with_demonstration(&problem);
        let mut run = ScenarioRun {
            seed,
            result,
            joint_path: None,
            arm_contact: None,
        };
        if let (Some(path), Some(chain), Some(k)) = (&run.result.path, &self.chain, &self.config.kinematics) {
            let seed_config = k.seed.clone().map(JointConfig).unwrap_or_else(|| chain.home());
            let joint_path = object_path_to_joint_path(path, &k.grasp.to_transform(), chain, &seed_config, &k.ik)
                .map_err(|e| CliError::stage(Stage::Kinematics, e))?;
            if let Some(radius) = k.audit_link_radius {
                run.arm_contact = audit_arm_clearance(chain, &joint_path.configs, &self.scene, radius)
                    .map_err(|e| CliError::stage(Stage::Kinematics, e))?;
                if let Some(c) = &run.arm_contact {
                    log::warn!("arm link {} touches the scene at waypoint {}", c.link, c.waypoint);
                }
            }
            run.joint_path = Some(joint_path);
        }
        Ok(run)
    }

    /// Writes the path file, attempt log, fit trace and (when present) joint path into
    /// `dir`. On failure nothing written by this call is left behind.
    pub fn write_artifacts(&self, run: &ScenarioRun, trial: usize, dir: &Path) -> Result<Vec<PathBuf>, CliError> {
        let mut writer = ArtifactWriter::new(dir)?;
        match self.write_into(&mut writer, run, trial) {
            Ok(()) => Ok(writer.finish()),
            Err(e) => {
                writer.discard();
                Err(e)
            }
        }
    }

    fn write_into(&self, writer: &mut ArtifactWriter, run: &ScenarioRun, trial: usize) -> Result<(), CliError> {
        let name = &self.config.name;
        let file = PathFile::from_result(
            name,
            self.scene.frame(),
            run.seed,
            trial,
            self.candidate_count(),
            &run.result,
        );
        writer.write(artifacts::PATH_FILE, &file.to_json())?;
        writer.write(
            artifacts::ATTEMPT_LOG_FILE,
            &artifacts::attempt_log_json(name, run.seed, &run.result),
        )?;
        let traces = self.traces()?;
        if !traces.is_empty() {
            writer.write(artifacts::TRACE_FILE, &artifacts::trace_csv(&traces))?;
            writer.write(artifacts::RANKING_FILE, &artifacts::ranking_csv(self.key_poses()))?;
        }
        if let (Some(jp), Some(chain)) = (&run.joint_path, &self.chain) {
            let names: Vec<String> = chain.joints().iter().map(|j| j.name.clone()).collect();
            writer.write(artifacts::JOINT_PATH_FILE, &artifacts::joint_path_csv(&names, jp))?;
        }
        Ok(())
    }
}

/// Runs the full pipeline once and writes its artifacts into `out_dir`.
pub fn run_scenario(config: ScenarioConfig, seed: u64, out_dir: &Path) -> Result<ScenarioOutput, CliError> {
    let prepared = PreparedScenario::prepare(config)?;
    let run = prepared.execute(seed)?;
    let artifacts = prepared.write_artifacts(&run, 1, out_dir)?;
    Ok(ScenarioOutput { run, artifacts })
}
