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

//! Multi-trial benchmark: one row per seeded trial with candidates, status, key poses used
//! and planning time.

use crate::artifacts::round_millis;
use crate::error::CliError;
use crate::run::{PreparedScenario, ScenarioRun};
use rayon::prelude::*;
use serde::Serialize;
use std::fmt::Write as _;
use std::path::{Path, PathBuf};
use std::time::Instant;

/// One trial of a benchmark.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct BenchRow {
    pub scenario: String,
    /// Candidate key poses offered to the planner.
    pub candidates: usize,
    /// 1-based.
    pub trial: usize,
    pub seed: u64,
    /// Plan status, or `error(<stage>)` when a pipeline stage failed.
    pub status: String,
    /// Key poses in the final path.
    pub used: usize,
    /// Wall-clock seconds, millisecond resolution.
    pub time_s: f64,
}

impl BenchRow {
    pub fn succeeded(&self) -> bool {
        self.status == "success"
    }
}

#[derive(Clone, Debug)]
pub struct BenchReport {
    pub scenario: String,
    pub rows: Vec<BenchRow>,
    pub success_floor: usize,
    /// Per-trial artifact directory, when artifacts were written.
    pub trial_dirs: Vec<Option<PathBuf>>,
    /// Per-trial runs; `None` where a stage failed.
    pub runs: Vec<Option<ScenarioRun>>,
}

impl BenchReport {
    pub fn successes(&self) -> usize {
        self.rows.iter().filter(|r| r.succeeded()).count()
    }

    pub fn passed_floor(&self) -> bool {
        self.successes() >= self.success_floor
    }

    /// Machine-readable rows; only `time_s` varies between identical runs.
    pub fn to_csv(&self) -> String {
        let mut w = csv::Writer::from_writer(Vec::new());
        for r in &self.rows {
            w.serialize(r).expect("bench row serializes");
        }
        String::from_utf8(w.into_inner().expect("in-memory writer")).expect("csv is utf-8")
    }

    /// Human-readable table with a success summary.
    pub fn to_table(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(
            out,
            "{:<16} {:>10} {:>5} {:>6} {:<18} {:>4} {:>8}",
            "scenario", "candidates", "trial", "seed", "status", "used", "time_s"
        );
        for r in &self.rows {
            let _ = writeln!(
                out,
                "{:<16} {:>10} {:>5} {:>6} {:<18} {:>4} {:>8.3}",
                r.scenario, r.candidates, r.trial, r.seed, r.status, r.used, r.time_s
            );
        }
        let _ = writeln!(
            out,
            "successes: {}/{} (floor {}) — {}",
            self.successes(),
            self.rows.len(),
            self.success_floor,
            if self.passed_floor() { "PASS" } else { "FAIL" }
        );
        out
    }
}

fn trial_row(
    prepared: &PreparedScenario,
    trial: usize,
    out_dir: Option<&Path>,
) -> (BenchRow, Option<PathBuf>, Option<ScenarioRun>) {
    let seed = prepared.config.bench.seed_for(trial);
    let started = Instant::now();
    let outcome = prepared.execute(seed).and_then(|run| {
        let dir = match out_dir {
            Some(d) => {
                let dir = d.join(format!("trial_{trial}"));
                prepared.write_artifacts(&run, trial, &dir)?;
                Some(dir)
            }
            None => None,
        };
        Ok((run, dir))
    });
    let mut row = BenchRow {
        scenario: prepared.config.name.clone(),
        candidates: prepared.candidate_count(),
        trial,
        seed,
        status: String::new(),
        used: 0,
        time_s: 0.0,
    };
    match outcome {
        Ok((run, dir)) => {
            row.status = run.result.status.to_string();
            row.used = run.result.used_key_pose_count;
            row.time_s = round_millis(run.result.elapsed.as_secs_f64());
            (row, dir, Some(run))
        }
        Err(e) => {
            log::warn!("trial {trial} (seed {seed}) failed: {e}");
            row.status = match e.stage_name() {
                Some(stage) => format!("error({stage})"),
                None => "error".to_string(),
            };
            row.time_s = round_millis(started.elapsed().as_secs_f64());
            (row, None, None)
        }
    }
}

/// Runs `trials` seeded trials (seeds from the scenario's bench section). Stage failures
/// become rows with an error status instead of aborting the benchmark.
pub fn run_bench(prepared: &PreparedScenario, trials: usize, out_dir: Option<&Path>) -> Result<BenchReport, CliError> {
    if trials == 0 {
        return Err(CliError::Config {
            path: prepared.config.name.clone(),
            message: "a benchmark needs at least one trial".to_string(),
        });
    }
    let jobs = prepared.config.bench.jobs.max(1);
    let results: Vec<_> = if jobs == 1 {
        (1..=trials).map(|t| trial_row(prepared, t, out_dir)).collect()
    } else {
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(jobs)
            .build()
            .map_err(|e| CliError::Config {
                path: prepared.config.name.clone(),
                message: format!("cannot start {jobs} workers: {e}"),
            })?;
        pool.install(|| {
            (1..=trials)
                .into_par_iter()
                .map(|t| trial_row(prepared, t, out_dir))
                .collect()
        })
    };
    let mut report = BenchReport {
        scenario: prepared.config.name.clone(),
        rows: Vec::with_capacity(trials),
        success_floor: prepared.config.bench.success_floor,
        trial_dirs: Vec::with_capacity(trials),
        runs: Vec::with_capacity(trials),
    };
    for (row, dir, run) in results {
        report.rows.push(row);
        report.trial_dirs.push(dir);
        report.runs.push(run);
    }
    Ok(report)
}
