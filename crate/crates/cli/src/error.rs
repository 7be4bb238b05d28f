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

use std::fmt;

/// Pipeline stage an error came from.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Stage {
    Scene,
    Demo,
    Plan,
    Kinematics,
    Artifacts,
}

impl fmt::Display for Stage {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Stage::Scene => "scene",
            Stage::Demo => "demo",
            Stage::Plan => "plan",
            Stage::Kinematics => "kinematics",
            Stage::Artifacts => "artifacts",
        })
    }
}

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("config {path}: {message}")]
    Config { path: String, message: String },
    #[error("{stage} stage failed: {source}")]
    Stage {
        stage: Stage,
        #[source]
        source: Box<dyn std::error::Error + Send + Sync>,
    },
    #[error("cannot write {path}: {source}")]
    Write {
        path: String,
        #[source]
        source: std::io::Error,
    },
    /// An artifact could not be read back; distinct from a validation failure.
    #[error("cannot parse {path}: {message}")]
    Parse { path: String, message: String },
}

impl CliError {
    pub(crate) fn config(message: String) -> Self {
        CliError::Config {
            path: "<scenario>".to_string(),
            message,
        }
    }

    pub(crate) fn stage(stage: Stage, source: impl std::error::Error + Send + Sync + 'static) -> Self {
        CliError::Stage {
            stage,
            source: Box::new(source),
        }
    }

    /// The failing stage, if the error came from the pipeline.
    pub fn stage_name(&self) -> Option<Stage> {
        match self {
            CliError::Stage { stage, .. } => Some(*stage),
            CliError::Write { .. } => Some(Stage::Artifacts),
            _ => None,
        }
    }
}
