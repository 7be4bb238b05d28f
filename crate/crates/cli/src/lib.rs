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

//! Scenario runner and benchmark harness for demonstration-guided insertion planning.
//!
//! A scenario file names the meshes, the start and goal poses, a demonstration log and
//! the planner settings. [`run::run_scenario`] executes the whole pipeline once,
//! [`bench::run_bench`] repeats it over seeds, and [`check::check_artifacts`] re-validates
//! persisted paths.

pub mod artifacts;
pub mod bench;
pub mod check;
pub mod config;
pub mod error;
pub mod run;

pub use bench::{run_bench, BenchReport, BenchRow};
pub use check::{check_artifacts, Verdict};
pub use config::ScenarioConfig;
pub use error::{CliError, Stage};
pub use run::{run_scenario, PreparedScenario, ScenarioOutput, ScenarioRun};
