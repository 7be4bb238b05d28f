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

//! End-to-end behaviour of the scenario runner, the artifact checker and the binary.

use demoguide::artifacts::{self, PathFile, PathFileWaypoint, PathStats};
use demoguide::{check_artifacts, run_bench, run_scenario, CliError, PreparedScenario, ScenarioConfig, Stage};
use demoguide_core::geom::PoseVector;
use demoguide_core::planner::PlanStatus;
use std::path::{Path, PathBuf};
use std::process::Command;

fn scenario_path(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR"))
        .join("scenarios")
        .join(name)
        .join("scenario.toml")
}

fn load(name: &str, overrides: &[&str]) -> ScenarioConfig {
    let overrides: Vec<String> = overrides.iter().map(|s| s.to_string()).collect();
    ScenarioConfig::load(scenario_path(name), &overrides).unwrap()
}

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_demoguide"))
}

/// A hand-built path file: start, one interior waypoint, goal.
fn three_point_file(config: &ScenarioConfig, middle: [f64; 7]) -> PathFile {
    let waypoint = |pose: [f64; 7], tag: &str| PathFileWaypoint {
        pose,
        tag: tag.to_string(),
    };
    PathFile {
        scenario: config.name.clone(),
        frame: config.scene.frame.clone(),
        seed: 0,
        status: PlanStatus::Success,
        waypoints: vec![
            waypoint(config.start.to_transform().to_array(), "start"),
            waypoint(middle, "sampled"),
            waypoint(config.goal.to_transform().to_array(), "goal"),
        ],
        stats: PathStats {
            candidates: 0,
            trial: 1,
            used: 0,
            repaired: Vec::new(),
            discarded: Vec::new(),
            attempts: 1,
            time_s: 0.0,
        },
    }
}

#[test]
fn trivial_scenario_runs_end_to_end() {
    let dir = tempfile::tempdir().unwrap();
    let config = load("empty", &[]);
    let out = run_scenario(config.clone(), 3, dir.path()).unwrap();
    assert!(out.run.succeeded());
    assert_eq!(out.run.result.used_key_pose_count, 0);
    for name in [
        artifacts::PATH_FILE,
        artifacts::ATTEMPT_LOG_FILE,
        artifacts::JOINT_PATH_FILE,
    ] {
        assert!(dir.path().join(name).is_file(), "{name} missing");
    }
    // No demonstration, so no ranking or trace.
    assert!(!dir.path().join(artifacts::TRACE_FILE).exists());

    let verdict = check_artifacts(&dir.path().join(artifacts::PATH_FILE), &config).unwrap();
    assert!(verdict.valid && verdict.endpoints_match, "{verdict:?}");

    let joints = std::fs::read_to_string(dir.path().join(artifacts::JOINT_PATH_FILE)).unwrap();
    let header = joints.lines().next().unwrap();
    assert!(header.starts_with("index,waist_yaw,"));
    let jp = out.run.joint_path.as_ref().unwrap();
    assert_eq!(joints.lines().count(), jp.len() + 1);
    // 10 cm straight move: densified, small steps.
    assert!(jp.len() >= 11);
    assert!(jp.max_joint_step() < 0.15);
    for row in joints.lines().skip(1) {
        for v in row.split(',').skip(1) {
            assert_eq!(v.split('.').nth(1).map(str::len), Some(6), "{v} is not 6-decimal");
        }
    }
}

#[test]
fn corrupted_waypoint_is_reported_with_its_index() {
    let dir = tempfile::tempdir().unwrap();
    let config = load("tenon", &[]);
    // Centre of the first mortise block's solid lower part, placed in the world.
    let inside = config.world_t_g.to_transform() * PoseVector::new(-0.045, 0.025, 0.03, 0.0, 0.0, 0.0).to_transform();
    let file = three_point_file(&config, inside.to_array());
    let path = dir.path().join("corrupt.json");
    std::fs::write(&path, file.to_json()).unwrap();
    let verdict = check_artifacts(&path, &config).unwrap();
    assert!(!verdict.valid);
    assert_eq!(verdict.waypoint_count, 3);
    assert!(verdict.endpoints_match);
    let violation = verdict.first_violation.expect("violation located");
    // The first segment runs into the buried waypoint; the violation is on it or at it.
    assert!(violation.waypoint <= 1, "{violation:?}");
}

#[test]
fn unreadable_artifacts_are_parse_errors_not_verdicts() {
    let dir = tempfile::tempdir().unwrap();
    let config = load("empty", &[]);

    let garbage = dir.path().join("garbage.json");
    std::fs::write(&garbage, "{ not json").unwrap();
    assert!(matches!(
        check_artifacts(&garbage, &config),
        Err(CliError::Parse { .. })
    ));

    let missing = dir.path().join("missing.json");
    assert!(matches!(
        check_artifacts(&missing, &config),
        Err(CliError::Parse { .. })
    ));

    let mut bad_quaternion = three_point_file(&config, [0.4, 0.05, 0.15, 0.0, 0.0, 0.0, 0.0]);
    let bad = dir.path().join("bad_quaternion.json");
    std::fs::write(&bad, bad_quaternion.to_json()).unwrap();
    assert!(matches!(check_artifacts(&bad, &config), Err(CliError::Parse { .. })));

    bad_quaternion.waypoints[1] = PathFileWaypoint {
        pose: config.start.to_transform().to_array(),
        tag: "teleported".to_string(),
    };
    std::fs::write(&bad, bad_quaternion.to_json()).unwrap();
    assert!(matches!(check_artifacts(&bad, &config), Err(CliError::Parse { .. })));
}

#[test]
fn failed_plan_writes_an_empty_path_that_checks_invalid() {
    let dir = tempfile::tempdir().unwrap();
    // One iteration cannot get through the tenon's holes.
    let config = load(
        "tenon",
        &["planner.max_iterations=1", "planner.max_key_poses=0", "planner.t_e=0.5"],
    );
    let out = run_scenario(config.clone(), 1, dir.path()).unwrap();
    assert!(!out.run.succeeded());
    assert!(out.run.joint_path.is_none());
    assert!(!dir.path().join(artifacts::JOINT_PATH_FILE).exists());
    let verdict = check_artifacts(&dir.path().join(artifacts::PATH_FILE), &config).unwrap();
    assert!(!verdict.valid);
    assert_eq!(verdict.waypoint_count, 0);
}

#[test]
fn a_failing_write_removes_the_partial_artifacts() {
    let dir = tempfile::tempdir().unwrap();
    let prepared = PreparedScenario::prepare(load("empty", &[])).unwrap();
    let run = prepared.execute(1).unwrap();
    // The joint path is written last; a directory in its place makes that write fail.
    std::fs::create_dir(dir.path().join(artifacts::JOINT_PATH_FILE)).unwrap();
    let err = prepared.write_artifacts(&run, 1, dir.path()).unwrap_err();
    assert_eq!(err.stage_name(), Some(Stage::Artifacts));
    assert!(!dir.path().join(artifacts::PATH_FILE).exists());
    assert!(!dir.path().join(artifacts::ATTEMPT_LOG_FILE).exists());
    let leftovers: Vec<_> = std::fs::read_dir(dir.path())
        .unwrap()
        .map(|e| e.unwrap().file_name())
        .filter(|n| n != artifacts::JOINT_PATH_FILE)
        .collect();
    assert!(leftovers.is_empty(), "left behind: {leftovers:?}");
}

#[test]
fn stage_errors_are_named() {
    // A chain seed outside the joint limits fails in the kinematics stage.
    let config = load("empty", &["kinematics.seed=[9.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0]"]);
    let err = PreparedScenario::prepare(config).unwrap_err();
    assert_eq!(err.stage_name(), Some(Stage::Kinematics));
    assert!(err.to_string().starts_with("kinematics stage failed"));

    // A start pose inside an obstacle fails in the planning stage.
    let mut config = load("tenon", &[]);
    config.start = PoseVector::from_transform(
        &(config.world_t_g.to_transform() * PoseVector::new(-0.045, 0.025, 0.03, 0.0, 0.0, 0.0).to_transform()),
    )
    .pose;
    let err = PreparedScenario::prepare(config).unwrap().execute(1).unwrap_err();
    assert_eq!(err.stage_name(), Some(Stage::Plan));
}

#[test]
fn bad_configs_are_rejected_before_running() {
    let text = std::fs::read_to_string(scenario_path("empty")).unwrap();
    let base = scenario_path("empty").parent().unwrap().to_path_buf();
    let reject = |text: &str, overrides: &[&str], needle: &str| {
        let overrides: Vec<String> = overrides.iter().map(|s| s.to_string()).collect();
        match ScenarioConfig::from_toml_str(text, base.clone(), &overrides) {
            Err(CliError::Config { message, .. }) => assert!(message.contains(needle), "{message}"),
            other => panic!("expected a config error mentioning {needle}, got {other:?}"),
        }
    };
    reject(&text, &["planner.no_such_knob=1"], "no_such_knob");
    reject(&text, &["scene.object=\"nowhere.obj\""], "nowhere.obj");
    reject(&text, &["planner.t_e=-1.0"], "t_e");
    reject(&text, &["bench.trials=0"], "trials");
    reject(&text, &["goal.y=0.0"], "start equals goal");
    reject(&text, &["planner"], "key=value");
    // The same pose with `trivial = true` is accepted.
    let overrides = ["goal.y=0.0".to_string(), "trivial=true".to_string()];
    let config = ScenarioConfig::from_toml_str(&text, base.clone(), &overrides).unwrap();
    let out = run_scenario(config, 1, tempfile::tempdir().unwrap().path()).unwrap();
    assert!(out.run.succeeded());
}

#[test]
fn bench_reports_every_trial() {
    let prepared = PreparedScenario::prepare(load("empty", &["bench.trials=3", "bench.success_floor=3"])).unwrap();
    let dir = tempfile::tempdir().unwrap();
    let report = run_bench(&prepared, 3, Some(dir.path())).unwrap();
    assert_eq!(report.rows.len(), 3);
    assert!(report.passed_floor());
    let csv = report.to_csv();
    let mut lines = csv.lines();
    assert_eq!(lines.next(), Some("scenario,candidates,trial,seed,status,used,time_s"));
    assert_eq!(lines.count(), 3);
    for trial in 1..=3 {
        assert!(dir
            .path()
            .join(format!("trial_{trial}"))
            .join(artifacts::PATH_FILE)
            .is_file());
    }
    assert!(report.to_table().contains("successes: 3/3"));
}

#[test]
fn binary_exit_codes_follow_outcomes() {
    let dir = tempfile::tempdir().unwrap();
    let out_dir = dir.path().join("plan");
    let scenario = scenario_path("empty");

    let status = bin()
        .args([
            "plan",
            scenario.to_str().unwrap(),
            "--seed",
            "2",
            "--out-dir",
            out_dir.to_str().unwrap(),
        ])
        .output()
        .unwrap();
    assert!(status.status.success(), "{}", String::from_utf8_lossy(&status.stderr));
    let path_file = out_dir.join(artifacts::PATH_FILE);
    let stored = PathFile::read(&path_file).unwrap();
    assert_eq!(stored.seed, 2);

    let check = |file: &Path| {
        bin()
            .args([
                "check",
                file.to_str().unwrap(),
                scenario_path("tenon").to_str().unwrap(),
            ])
            .output()
            .unwrap()
    };
    let config = load("tenon", &[]);
    let inside = config.world_t_g.to_transform() * PoseVector::new(-0.045, 0.025, 0.03, 0.0, 0.0, 0.0).to_transform();
    let corrupt = dir.path().join("corrupt.json");
    std::fs::write(&corrupt, three_point_file(&config, inside.to_array()).to_json()).unwrap();
    let out = check(&corrupt);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stdout).contains("invalid: collision at waypoint"));

    let garbage = dir.path().join("garbage.json");
    std::fs::write(&garbage, "[]").unwrap();
    let out = check(&garbage);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("cannot parse"));

    let out = bin()
        .args([
            "ingest",
            scenario_path("l_insertion")
                .with_file_name("demo.csv")
                .to_str()
                .unwrap(),
        ])
        .output()
        .unwrap();
    assert!(out.status.success());
    let text = String::from_utf8_lossy(&out.stdout);
    assert!(text.contains("samples:    60"), "{text}");
    assert!(text.contains("rejected:   1"), "{text}");

    let rank_dir = dir.path().join("rank");
    let out = bin()
        .args([
            "rank",
            scenario_path("l_insertion").to_str().unwrap(),
            "--out-dir",
            rank_dir.to_str().unwrap(),
        ])
        .output()
        .unwrap();
    assert!(out.status.success());
    let ranking = std::fs::read_to_string(rank_dir.join(artifacts::RANKING_FILE)).unwrap();
    assert_eq!(ranking.lines().count(), 7);
    let trace = std::fs::read_to_string(rank_dir.join(artifacts::TRACE_FILE)).unwrap();
    assert_eq!(trace.lines().count(), 1 + 6 * 60);

    let out = bin()
        .args(["plan", scenario.to_str().unwrap(), "--set", "planner.t_e=oops"])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
}
