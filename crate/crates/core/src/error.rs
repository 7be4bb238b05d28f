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

use thiserror::Error;

#[derive(Debug, Error)]
pub enum GeomError {
    #[error("invalid mesh: {0}")]
    InvalidMesh(String),
    #[error("mesh has no triangles to index")]
    EmptyMesh,
    #[error("obj line {line}: {message}")]
    Obj { line: usize, message: String },
    #[error("failed to read {path}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
}

#[derive(Debug, Error)]
pub enum DemoError {
    #[error("pose log: {0}")]
    Parse(String),
    #[error("pose log units must be declared as `# units: m,s` (found {0:?})")]
    Units(Option<String>),
    #[error("pose log mixes relative and world-frame record shapes")]
    MixedRecords,
    #[error("need at least 2 valid records, got {valid} ({rejected} rejected as non-finite)")]
    TooFewRecords { valid: usize, rejected: usize },
    #[error("polynomial fit of {dof} is rank deficient")]
    RankDeficient { dof: String },
    #[error("invalid fit configuration: {0}")]
    Config(String),
    #[error("failed to read pose log {path}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
}

#[derive(Debug, Error)]
pub enum PlanError {
    #[error("invalid planner configuration: {0}")]
    Config(String),
    #[error("{which} pose is in collision")]
    EndpointInCollision { which: &'static str },
}

#[derive(Debug, Error)]
pub enum KinError {
    #[error("invalid chain: {0}")]
    Chain(String),
    #[error("joint config has {got} angles, chain has {expected} joints")]
    Dimension { expected: usize, got: usize },
    #[error("joint {joint} angle {angle} outside [{lo}, {hi}]")]
    Limits { joint: usize, angle: f64, lo: f64, hi: f64 },
    #[error("ik did not converge after {iterations} iterations (error {error:.3e})")]
    NotConverged { iterations: usize, error: f64 },
    #[error("ik stalled at error {error:.3e}; target likely unreachable")]
    Unreachable { error: f64 },
    #[error("ik failed at waypoint {index}: {cause}")]
    Waypoint {
        index: usize,
        #[source]
        cause: Box<KinError>,
    },
    #[error("joint {joint} jumps {step:.4} rad between waypoints {index} and {next} (bound {bound})", next = index + 1)]
    Discontinuity {
        index: usize,
        joint: usize,
        step: f64,
        bound: f64,
    },
}
