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

//! Demonstration logs: ingestion, world-frame mapping, curve fitting and key-pose ranking.

mod fit;
mod log;
mod rank;

pub use fit::{
    dof_series, fit_dof_curve, fit_polynomial, unwrap_angles, Dof, PolynomialFit, DEFAULT_DEGREE, MAX_DEGREE,
};
pub use log::{
    ingest_pose_log, parse_pose_log, read_pose_log, to_world_keyposes, write_relative_log, DemoTrajectory, LogMetadata,
    PoseSample, RawRecord,
};
pub use rank::{fit_trace, rank_key_poses, FitConfig, KeyPose, Ranking, ScoredDof, TraceRow};
