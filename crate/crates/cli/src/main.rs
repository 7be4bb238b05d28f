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

use clap::{Args, Parser, Subcommand};
use demoguide::artifacts::{self, ArtifactWriter};
use demoguide::{check_artifacts, run_bench, CliError, PreparedScenario, ScenarioConfig};
use demoguide_core::demo::read_pose_log;
use demoguide_core::geom::PoseVector;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

/// Demonstration-guided motion planning for narrow-space insertion.
#[derive(Parser)]
#[command(version, about)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Read a pose log and print a summary of the trajectory.
    Ingest {
        /// Pose log (CSV).
        log: PathBuf,
    },
    /// Rank demonstration key poses and write the ranking and fit trace.
    Rank(ScenarioArgs),
    /// Plan once and write the path, joint path, attempt log and fit trace.
    Plan(ScenarioArgs),
    /// Run seeded trials and report them as a table and CSV rows.
    Bench(ScenarioArgs),
    /// Re-validate a persisted path with exhaustive collision checking.
    Check {
        /// Path file written by `plan` or `bench`.
        path_file: PathBuf,
        /// Scenario the path belongs to.
        scenario: PathBuf,
        /// Scenario overrides, `key.path=value`.
        #[arg(long = "set", value_name = "KEY=VALUE")]
        overrides: Vec<String>,
    },
}

#[derive(Args)]
struct ScenarioArgs {
    /// Scenario file (TOML).
    scenario: PathBuf,
    /// Planner seed; for `bench`, the seed of trial 1 with later trials counting up.
    #[arg(long)]
    seed: Option<u64>,
    /// Per-segment planning deadline t_e in seconds.
    #[arg(long)]
    te: Option<f64>,
    /// Number of benchmark trials.
    #[arg(long)]
    trials: Option<usize>,
    /// Parallel benchmark workers.
    #[arg(long)]
    jobs: Option<usize>,
    /// Output directory; defaults to `demoguide-out/<scenario name>`.
    #[arg(long)]
    out_dir: Option<PathBuf>,
    /// Any scenario field, `key.path=value`, e.g. `planner.max_key_poses=4`.
    #[arg(long = "set", value_name = "KEY=VALUE")]
    overrides: Vec<String>,
}

impl ScenarioArgs {
    fn load(&self) -> Result<ScenarioConfig, CliError> {
        let mut overrides = self.overrides.clone();
        if let Some(te) = self.te {
            overrides.push(format!("planner.t_e={te:?}"));
        }
        if let Some(t) = self.trials {
            overrides.push(format!("bench.trials={t}"));
        }
        if let Some(j) = self.jobs {
            overrides.push(format!("bench.jobs={j}"));
        }
        let mut config = ScenarioConfig::load(&self.scenario, &overrides)?;
        if let Some(seed) = self.seed {
            config.planner.rng_seed = seed;
            config.bench.seeds = (0..config.bench.trials as u64).map(|k| seed + k).collect();
        }
        Ok(config)
    }

    fn out_dir(&self, config: &ScenarioConfig) -> PathBuf {
        self.out_dir
            .clone()
            .unwrap_or_else(|| Path::new("demoguide-out").join(&config.name))
    }
}

fn ingest(log: &Path) -> Result<ExitCode, CliError> {
    let traj = read_pose_log(log).map_err(|e| CliError::Parse {
        path: log.display().to_string(),
        message: e.to_string(),
    })?;
    let meta = traj.metadata();
    let times = traj.times();
    println!("recording:  {}", meta.recording_id);
    println!("units:      {}", meta.units);
    println!("samples:    {}", traj.len());
    println!("rejected:   {}", meta.rejected_records);
    println!("duplicates: {}", meta.collapsed_duplicates);
    println!("time span:  {} .. {} s", times[0], times[times.len() - 1]);
    let samples = traj.samples();
    for (label, s) in [("first", &samples[0]), ("last", &samples[samples.len() - 1])] {
        let p = PoseVector::from_transform(&s.relative_pose).pose;
        println!(
            "{label:<6} pose: x {:.4} y {:.4} z {:.4} roll {:.4} pitch {:.4} yaw {:.4}",
            p.x, p.y, p.z, p.roll, p.pitch, p.yaw
        );
    }
    Ok(ExitCode::SUCCESS)
}

fn rank(args: &ScenarioArgs) -> Result<ExitCode, CliError> {
    let config = args.load()?;
    let out_dir = args.out_dir(&config);
    let prepared = PreparedScenario::prepare(config)?;
    println!("{:>4} {:>8} {:>12} {:>6}", "rank", "t", "score", "sample");
    for k in prepared.key_poses() {
        println!("{:>4} {:>8.3} {:>12.6} {:>6}", k.rank, k.t, k.score, k.sample_index);
    }
    let traces = prepared.traces()?;
    let mut writer = ArtifactWriter::new(&out_dir)?;
    writer.write(artifacts::RANKING_FILE, &artifacts::ranking_csv(prepared.key_poses()))?;
    if !traces.is_empty() {
        writer.write(artifacts::TRACE_FILE, &artifacts::trace_csv(&traces))?;
    }
    for p in writer.finish() {
        println!("wrote {}", p.display());
    }
    Ok(ExitCode::SUCCESS)
}

fn plan(args: &ScenarioArgs) -> Result<ExitCode, CliError> {
    let config = args.load()?;
    let out_dir = args.out_dir(&config);
    let seed = config.planner.rng_seed;
    let prepared = PreparedScenario::prepare(config)?;
    let run = prepared.execute(seed)?;
    let written = prepared.write_artifacts(&run, 1, &out_dir)?;
    let r = &run.result;
    println!(
        "{}: {} with {} of {} candidate key poses in {:.3} s ({} attempts)",
        prepared.config.name,
        r.status,
        r.used_key_pose_count,
        prepared.candidate_count(),
        r.elapsed.as_secs_f64(),
        r.attempts.len()
    );
    if let Some(jp) = &run.joint_path {
        println!(
            "joint path: {} waypoints, max joint step {:.4} rad",
            jp.len(),
            jp.max_joint_step()
        );
    }
    for p in written {
        println!("wrote {}", p.display());
    }
    Ok(if run.succeeded() {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    })
}

fn bench(args: &ScenarioArgs) -> Result<ExitCode, CliError> {
    let config = args.load()?;
    let out_dir = args.out_dir(&config);
    let trials = config.bench.trials;
    let prepared = PreparedScenario::prepare(config)?;
    let report = run_bench(&prepared, trials, Some(&out_dir))?;
    print!("{}", report.to_table());
    let csv_path = out_dir.join("bench.csv");
    artifacts::write_atomic(&csv_path, report.to_csv().as_bytes())?;
    println!("wrote {}", csv_path.display());
    Ok(if report.passed_floor() {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    })
}

fn check(path_file: &Path, scenario: &Path, overrides: &[String]) -> Result<ExitCode, CliError> {
    let config = ScenarioConfig::load(scenario, overrides)?;
    let verdict = check_artifacts(path_file, &config)?;
    if verdict.valid {
        println!("valid: {} waypoints collision-free", verdict.waypoint_count);
    } else {
        match &verdict.first_violation {
            Some(v) => println!(
                "invalid: collision at waypoint {} (segment fraction {:.3})",
                v.waypoint, v.s
            ),
            None => println!("invalid: the file holds no path"),
        }
    }
    if !verdict.endpoints_match {
        println!("note: path endpoints differ from the scenario's start/goal");
    }
    Ok(if verdict.valid {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    })
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    let cli = Cli::parse();
    let outcome = match &cli.command {
        Command::Ingest { log } => ingest(log),
        Command::Rank(a) => rank(a),
        Command::Plan(a) => plan(a),
        Command::Bench(a) => bench(a),
        Command::Check {
            path_file,
            scenario,
            overrides,
        } => check(path_file, scenario, overrides),
    };
    match outcome {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            let mut source = std::error::Error::source(&e);
            while let Some(s) = source {
                eprintln!("  caused by: {s}");
                source = s.source();
            }
            ExitCode::from(2)
        }
    }
}
