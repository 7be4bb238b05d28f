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

//! Files emitted by a run and the readers that load them back.
//!
//! Every file is written to a temporary sibling and renamed into place, so a reader never
//! sees a half-written artifact.

use crate::error::CliError;
use demoguide_core::demo::{Dof, KeyPose, TraceRow};
use demoguide_core::geom::RigidTransform;
use demoguide_core::kin::JointPath;
use demoguide_core::planner::{AttemptLog, ObjectPath, PlanResult, PlanStatus, Provenance, Waypoint};
use serde::{Deserialize, Serialize};
use std::io::Write;
use std::path::{Path, PathBuf};

pub const PATH_FILE: &str = "path.json";
pub const JOINT_PATH_FILE: &str = "joint_path.csv";
pub const ATTEMPT_LOG_FILE: &str = "attempts.json";
pub const TRACE_FILE: &str = "trace.csv";
pub const RANKING_FILE: &str = "ranking.csv";

/// Persisted object path.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PathFile {
    pub scenario: String,
    pub frame: String,
    pub seed: u64,
    pub status: PlanStatus,
    pub waypoints: Vec<PathFileWaypoint>,
    pub stats: PathStats,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PathFileWaypoint {
    /// `[x, y, z, qw, qx, qy, qz]`.
    pub pose: [f64; 7],
    /// `start`, `goal`, `key_pose(r)`, `repaired(r)` or `sampled`.
    pub tag: String,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PathStats {
    pub candidates: usize,
    pub trial: usize,
    pub used: usize,
    pub repaired: Vec<usize>,
    pub discarded: Vec<usize>,
    pub attempts: usize,
    /// Wall-clock planning time, rounded to milliseconds. The only non-deterministic field.
    pub time_s: f64,
}

pub fn round_millis(seconds: f64) -> f64 {
    (seconds * 1000.0).round() / 1000.0
}

impl PathFile {
    pub fn from_result(
        scenario: &str,
        frame: &str,
        seed: u64,
        trial: usize,
        candidates: usize,
        result: &PlanResult,
    ) -> Self {
        let waypoints = result
            .path
            .as_ref()
            .map(|p| {
                p.waypoints
                    .iter()
                    .map(|w| PathFileWaypoint {
                        pose: w.pose.to_array(),
                        tag: w.tag.to_string(),
                    })
                    .collect()
            })
            .unwrap_or_default();
        PathFile {
            scenario: scenario.to_string(),
            frame: frame.to_string(),
            seed,
            status: result.status,
            waypoints,
            stats: PathStats {
                candidates,
                trial,
                used: result.used_key_pose_count,
                repaired: result.repaired_key_pose_ranks.clone(),
                discarded: result.discarded_key_pose_ranks.clone(),
                attempts: result.attempts.len(),
                time_s: round_millis(result.elapsed.as_secs_f64()),
            },
        }
    }

    /// The waypoints as an object path; fails on a malformed pose or tag.
    pub fn object_path(&self) -> Result<ObjectPath, String> {
        let waypoints = self
            .waypoints
            .iter()
            .enumerate()
            .map(|(i, w)| {
                let pose = RigidTransform::from_array(w.pose)
                    .ok_or_else(|| format!("waypoint {i}: pose {:?} is not a rigid transform", w.pose))?;
                let tag: Provenance = w.tag.parse().map_err(|e| format!("waypoint {i}: {e}"))?;
                Ok(Waypoint { pose, tag })
            })
            .collect::<Result<Vec<_>, String>>()?;
        Ok(ObjectPath { waypoints })
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("path file serializes");
        s.push('\n');
        s
    }

    pub fn read(path: &Path) -> Result<Self, CliError> {
        let parse_error = |message: String| CliError::Parse {
            path: path.display().to_string(),
            message,
        };
        let text = std::fs::read_to_string(path).map_err(|e| parse_error(e.to_string()))?;
        let file: PathFile = serde_json::from_str(&text).map_err(|e| parse_error(e.to_string()))?;
        file.object_path().map_err(parse_error)?;
        Ok(file)
    }
}

#[derive(Serialize)]
struct AttemptLogFile<'a> {
    scenario: &'a str,
    seed: u64,
    status: PlanStatus,
    attempts: &'a [AttemptLog],
}

pub fn attempt_log_json(scenario: &str, seed: u64, result: &PlanResult) -> String {
    let mut s = serde_json::to_string_pretty(&AttemptLogFile {
        scenario,
        seed,
        status: result.status,
        attempts: &result.attempts,
    })
    .expect("attempt log serializes");
    s.push('\n');
    s
}

/// One row per densified waypoint: index then every joint angle in radians, 6 decimals.
pub fn joint_path_csv(joint_names: &[String], path: &JointPath) -> String {
    let mut out = String::from("index");
    for n in joint_names {
        out.push(',');
        out.push_str(n);
    }
    out.push('\n');
    for (i, q) in path.configs.iter().enumerate() {
        out.push_str(&i.to_string());
        for a in q.angles() {
            out.push_str(&format!(",{a:.6}"));
        }
        out.push('\n');
    }
    out
}

/// Long-format fitted-curve trace: `dof,t,raw,fitted,derivative`.
pub fn trace_csv(traces: &[(Dof, Vec<TraceRow>)]) -> String {
    let mut out = String::from("dof,t,raw,fitted,derivative\n");
    for (dof, rows) in traces {
        for r in rows {
            out.push_str(&format!("{dof},{},{},{},{}\n", r.t, r.raw, r.fitted, r.derivative));
        }
    }
    out
}

/// Ranked candidates with their planner-world poses.
pub fn ranking_csv(key_poses: &[KeyPose]) -> String {
    let mut out = String::from("rank,t,score,sample_index,x,y,z,qw,qx,qy,qz\n");
    for k in key_poses {
        let p = k.pose_in_world.to_array();
        out.push_str(&format!(
            "{},{},{},{},{},{},{},{},{},{},{}\n",
            k.rank, k.t, k.score, k.sample_index, p[0], p[1], p[2], p[3], p[4], p[5], p[6]
        ));
    }
    out
}

/// Writes `bytes` to a temporary file next to `path` and renames it into place.
pub fn write_atomic(path: &Path, bytes: &[u8]) -> Result<(), CliError> {
    let write_error = |source: std::io::Error| CliError::Write {
        path: path.display().to_string(),
        source,
    };
    let dir = match path.parent() {
        Some(d) if !d.as_os_str().is_empty() => d,
        _ => Path::new("."),
    };
    let mut tmp = tempfile::NamedTempFile::new_in(dir).map_err(write_error)?;
    tmp.write_all(bytes).map_err(write_error)?;
    tmp.flush().map_err(write_error)?;
    tmp.persist(path).map_err(|e| write_error(e.error))?;
    Ok(())
}

/// Writes a set of artifacts into one directory; [`ArtifactWriter::discard`] removes
/// whatever was written so far.
#[derive(Debug)]
pub struct ArtifactWriter {
    dir: PathBuf,
    written: Vec<PathBuf>,
}

impl ArtifactWriter {
    pub fn new(dir: &Path) -> Result<Self, CliError> {
        std::fs::create_dir_all(dir).map_err(|source| CliError::Write {
            path: dir.display().to_string(),
            source,
        })?;
        Ok(Self {
            dir: dir.to_path_buf(),
            written: Vec::new(),
        })
    }

    pub fn write(&mut self, name: &str, contents: &str) -> Result<PathBuf, CliError> {
        let path = self.dir.join(name);
        write_atomic(&path, contents.as_bytes())?;
        self.written.push(path.clone());
        Ok(path)
    }

    pub fn discard(self) {
        for p in self.written {
            if let Err(e) = std::fs::remove_file(&p) {
                log::warn!("could not remove partial artifact {}: {e}", p.display());
            }
        }
    }

    pub fn finish(self) -> Vec<PathBuf> {
        self.written
    }
}
