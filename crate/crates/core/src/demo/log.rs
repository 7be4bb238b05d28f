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

//! Pose-log ingestion.
//!
//! A log is UTF-8 CSV with a mandatory `# units: m,s` comment and a header naming one of
//! two schemas:
//!
//! * relative: `t,x,y,z,qw,qx,qy,qz` — the object pose in the fixed part's frame;
//! * world pair: `t` then `x_G..qz_G` and `x_L..qz_L` — both parts observed in a
//!   camera/world frame, from which the relative pose is derived.

use crate::error::DemoError;
use crate::geom::RigidTransform;
use std::path::Path;

const POSE_FIELDS: [&str; 7] = ["x", "y", "z", "qw", "qx", "qy", "qz"];

/// One parsed log row, before validation.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum RawRecord {
    /// `(t, [x, y, z, qw, qx, qy, qz])` of the object relative to the fixed part.
    Relative { t: f64, pose: [f64; 7] },
    /// World-frame observations of the fixed part (`g`) and the moving object (`l`).
    WorldPair { t: f64, g: [f64; 7], l: [f64; 7] },
}

impl RawRecord {
    fn t(&self) -> f64 {
        match self {
            RawRecord::Relative { t, .. } | RawRecord::WorldPair { t, .. } => *t,
        }
    }

    fn is_world(&self) -> bool {
        matches!(self, RawRecord::WorldPair { .. })
    }

    /// Relative pose of the object in the fixed part's frame, if the values are usable.
    fn relative_pose(&self) -> Option<RigidTransform> {
        if !self.t().is_finite() {
            return None;
        }
        match self {
            RawRecord::Relative { pose, .. } => RigidTransform::from_array(*pose),
            RawRecord::WorldPair { g, l, .. } => {
                let world_g = RigidTransform::from_array(*g)?;
                let world_l = RigidTransform::from_array(*l)?;
                Some(world_g.inverse() * world_l)
            }
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct PoseSample {
    /// Seconds.
    pub t: f64,
    /// Object frame expressed in the fixed part's frame.
    pub relative_pose: RigidTransform,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct LogMetadata {
    pub recording_id: String,
    pub units: String,
    /// Records dropped for non-finite values or unusable quaternions.
    pub rejected_records: usize,
    /// Records dropped because a later record carried the same timestamp.
    pub collapsed_duplicates: usize,
}

/// Time-ordered demonstration: at least two samples, strictly increasing timestamps.
#[derive(Clone, Debug, PartialEq)]
pub struct DemoTrajectory {
    samples: Vec<PoseSample>,
    metadata: LogMetadata,
}

impl DemoTrajectory {
    /// Builds a trajectory from already-relative samples (sorted, duplicates collapsed).
    pub fn from_samples(samples: Vec<PoseSample>, recording_id: &str) -> Result<Self, DemoError> {
        let records: Vec<RawRecord> = samples
            .iter()
            .map(|s| RawRecord::Relative {
                t: s.t,
                pose: s.relative_pose.to_array(),
            })
            .collect();
        ingest_pose_log(&records, "m,s", recording_id)
    }

    pub fn samples(&self) -> &[PoseSample] {
        &self.samples
    }

    pub fn metadata(&self) -> &LogMetadata {
        &self.metadata
    }

    pub fn len(&self) -> usize {
        self.samples.len()
    }

    pub fn is_empty(&self) -> bool {
        self.samples.is_empty()
    }

    pub fn times(&self) -> Vec<f64> {
        self.samples.iter().map(|s| s.t).collect()
    }
}

fn check_units(units: &str) -> Result<(), DemoError> {
    let normalized: String = units.chars().filter(|c| !c.is_whitespace()).collect();
    if normalized == "m,s" {
        Ok(())
    } else {
        Err(DemoError::Units(Some(units.trim().to_string())))
    }
}

/// Validates raw records into a trajectory.
///
/// Non-finite rows are dropped and counted; equal timestamps collapse to the last
/// record carrying them; mixing the two record shapes is an error.
pub fn ingest_pose_log(records: &[RawRecord], units: &str, recording_id: &str) -> Result<DemoTrajectory, DemoError> {
    check_units(units)?;
    if let Some(first) = records.first() {
        if records.iter().any(|r| r.is_world() != first.is_world()) {
            return Err(DemoError::MixedRecords);
        }
    }
    let mut rejected = 0;
    let mut samples: Vec<PoseSample> = Vec::with_capacity(records.len());
    for r in records {
        match r.relative_pose() {
            Some(relative_pose) => samples.push(PoseSample {
                t: r.t(),
                relative_pose,
            }),
            None => rejected += 1,
        }
    }
    // Stable sort keeps file order among equal timestamps, so "last" means last in file.
    samples.sort_by(|a, b| a.t.total_cmp(&b.t));
    let before = samples.len();
    let mut collapsed: Vec<PoseSample> = Vec::with_capacity(before);
    for s in samples {
        match collapsed.last_mut() {
            Some(prev) if prev.t == s.t => *prev = s,
            _ => collapsed.push(s),
        }
    }
    if collapsed.len() < 2 {
        return Err(DemoError::TooFewRecords {
            valid: collapsed.len(),
            rejected,
        });
    }
    Ok(DemoTrajectory {
        metadata: LogMetadata {
            recording_id: recording_id.to_string(),
            units: "m,s".to_string(),
            rejected_records: rejected,
            collapsed_duplicates: before - collapsed.len(),
        },
        samples: collapsed,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Schema {
    Relative,
    WorldPair,
}

fn detect_schema(header: &csv::StringRecord) -> Result<Schema, DemoError> {
    let cols: Vec<&str> = header.iter().map(str::trim).collect();
    let relative: Vec<String> = std::iter::once("t".to_string())
        .chain(POSE_FIELDS.iter().map(|s| s.to_string()))
        .collect();
    let world: Vec<String> = std::iter::once("t".to_string())
        .chain(POSE_FIELDS.iter().map(|s| format!("{s}_G")))
        .chain(POSE_FIELDS.iter().map(|s| format!("{s}_L")))
        .collect();
    if cols == relative {
        Ok(Schema::Relative)
    } else if cols == world {
        Ok(Schema::WorldPair)
    } else {
        Err(DemoError::Parse(format!("unrecognized header {cols:?}")))
    }
}

/// Parses pose-log text. Field values that fail to parse as numbers are an error; values
/// that parse to NaN or infinity are counted as rejected by [`ingest_pose_log`].
pub fn parse_pose_log(text: &str, recording_id: &str) -> Result<DemoTrajectory, DemoError> {
    let units = text
        .lines()
        .map(str::trim)
        .filter_map(|l| l.strip_prefix('#'))
        .find_map(|c| c.trim().strip_prefix("units:").map(|u| u.trim().to_string()));
    let Some(units) = units else {
        return Err(DemoError::Units(None));
    };
    check_units(&units)?;

    let mut reader = csv::ReaderBuilder::new()
        .comment(Some(b'#'))
        .flexible(true)
        .trim(csv::Trim::All)
        .from_reader(text.as_bytes());
    let header = reader.headers().map_err(|e| DemoError::Parse(e.to_string()))?.clone();
    let schema = detect_schema(&header)?;
    let mut records = Vec::new();
    for (i, row) in reader.records().enumerate() {
        let row = row.map_err(|e| DemoError::Parse(e.to_string()))?;
        let values: Vec<f64> = row
            .iter()
            .map(|f| f.parse::<f64>())
            .collect::<Result<_, _>>()
            .map_err(|e| DemoError::Parse(format!("row {}: {e}", i + 1)))?;
        let record = match (schema, values.len()) {
            (Schema::Relative, 8) => RawRecord::Relative {
                t: values[0],
                pose: values[1..8].try_into().expect("7 fields"),
            },
            (Schema::WorldPair, 15) => RawRecord::WorldPair {
                t: values[0],
                g: values[1..8].try_into().expect("7 fields"),
                l: values[8..15].try_into().expect("7 fields"),
            },
            (Schema::Relative, 15) | (Schema::WorldPair, 8) => return Err(DemoError::MixedRecords),
            (_, n) => {
                return Err(DemoError::Parse(format!("row {}: {n} fields", i + 1)));
            }
        };
        records.push(record);
    }
    ingest_pose_log(&records, &units, recording_id)
}

pub fn read_pose_log(path: impl AsRef<Path>) -> Result<DemoTrajectory, DemoError> {
    let path = path.as_ref();
    let text = std::fs::read_to_string(path).map_err(|e| DemoError::Io {
        path: path.display().to_string(),
        source: e,
    })?;
    let id = path
        .file_stem()
        .map(|s| s.to_string_lossy().into_owned())
        .unwrap_or_default();
    parse_pose_log(&text, &id)
}

/// Renders a relative-schema log, the inverse of [`parse_pose_log`].
pub fn write_relative_log(samples: &[PoseSample]) -> String {
    let mut out = String::from("# units: m,s\nt,x,y,z,qw,qx,qy,qz\n");
    for s in samples {
        let v = s.relative_pose.to_array();
        out.push_str(&format!(
            "{},{},{},{},{},{},{},{}\n",
            s.t, v[0], v[1], v[2], v[3], v[4], v[5], v[6]
        ));
    }
    out
}

/// Maps each relative sample into the planner world: `world_T_L = world_T_G ∘ G_T_L`.
pub fn to_world_keyposes(traj: &DemoTrajectory, world_t_g: &RigidTransform) -> Vec<PoseSample> {
    traj.samples
        .iter()
        .map(|s| PoseSample {
            t: s.t,
            relative_pose: world_t_g.compose(&s.relative_pose),
        })
        .collect()
}
