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

//! Key-pose ranking by fitted-curve derivative magnitude.

use super::fit::{dof_series, fit_dof_curve, Dof, PolynomialFit, DEFAULT_DEGREE};
use super::log::DemoTrajectory;
use crate::error::DemoError;
use crate::geom::RigidTransform;
use serde::{Deserialize, Serialize};

/// Which DoF drives the score.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ScoredDof {
    One(Dof),
    /// Max over DoFs of |derivative| / sample standard deviation of that DoF.
    All,
}

impl Default for ScoredDof {
    fn default() -> Self {
        ScoredDof::One(Dof::Pitch)
    }
}

impl std::str::FromStr for ScoredDof {
    type Err = DemoError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        if s.eq_ignore_ascii_case("all") {
            Ok(ScoredDof::All)
        } else {
            s.parse().map(ScoredDof::One)
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct FitConfig {
    pub dof: ScoredDof,
    pub degree: usize,
    /// Candidates are taken only from samples with `t` inside this closed interval.
    /// The curve itself is always fitted to the whole trajectory.
    pub region: Option<(f64, f64)>,
}

impl Default for FitConfig {
    fn default() -> Self {
        Self {
            dof: ScoredDof::default(),
            degree: DEFAULT_DEGREE,
            region: None,
        }
    }
}

/// A demonstrated pose offered to the planner as a waypoint candidate.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct KeyPose {
    pub pose_in_world: RigidTransform,
    /// Demonstration timestamp (s).
    pub t: f64,
    /// |D_n|, non-negative.
    pub score: f64,
    /// 1-based.
    pub rank: usize,
    /// Index of the sample in the source trajectory.
    pub sample_index: usize,
}

#[derive(Clone, Debug)]
pub struct Ranking {
    pub key_poses: Vec<KeyPose>,
    /// Fits used for scoring, one per scored DoF.
    pub fits: Vec<PolynomialFit>,
}

impl Ranking {
    /// The best `n` key poses, ranks unchanged.
    pub fn top(&self, n: usize) -> Vec<KeyPose> {
        self.key_poses.iter().take(n).copied().collect()
    }
}

// Scores closer than this (relative to the largest score) are treated as ties so that
// rounding noise in the fit cannot override the time tie-break.
const TIE_TOLERANCE: f64 = 1e-9;
// Derivatives below this are fit noise on a flat curve.
const ABSOLUTE_TIE: f64 = 1e-12;

fn sample_std(values: &[f64]) -> f64 {
    let n = values.len() as f64;
    let mean = values.iter().sum::<f64>() / n;
    let var = values.iter().map(|v| (v - mean).powi(2)).sum::<f64>() / (n - 1.0).max(1.0);
    var.sqrt()
}

/// Fits the configured DoF(s) and orders samples by descending |derivative|.
///
/// Ties (within 1e-9 of the top score) fall back to ascending time. Each key pose is
/// placed in the planner world as `world_t_g ∘ relative_pose`.
pub fn rank_key_poses(
    traj: &DemoTrajectory,
    world_t_g: &RigidTransform,
    config: &FitConfig,
) -> Result<Ranking, DemoError> {
    let times = traj.times();
    let (fits, scores): (Vec<PolynomialFit>, Vec<f64>) = match config.dof {
        ScoredDof::One(dof) => {
            let fit = fit_dof_curve(traj, dof, config.degree)?;
            let scores = times.iter().map(|&t| fit.derivative(t).abs()).collect();
            (vec![fit], scores)
        }
        ScoredDof::All => {
            let mut scores = vec![0.0_f64; times.len()];
            let mut fits = Vec::with_capacity(6);
            for dof in Dof::ALL {
                let fit = fit_dof_curve(traj, dof, config.degree)?;
                let std = sample_std(&dof_series(traj, dof));
                if std > 0.0 {
                    for (s, &t) in scores.iter_mut().zip(&times) {
                        *s = s.max(fit.derivative(t).abs() / std);
                    }
                }
                fits.push(fit);
            }
            (fits, scores)
        }
    };

    let mut candidates: Vec<usize> = (0..times.len())
        .filter(|&i| match config.region {
            Some((lo, hi)) => lo <= times[i] && times[i] <= hi,
            None => true,
        })
        .collect();
    let top = candidates.iter().map(|&i| scores[i]).fold(0.0, f64::max);
    let quantum = (top * TIE_TOLERANCE).max(ABSOLUTE_TIE);
    let bucket = |s: f64| -> i64 { (s / quantum).round() as i64 };
    candidates.sort_by(|&a, &b| {
        bucket(scores[b])
            .cmp(&bucket(scores[a]))
            .then(times[a].total_cmp(&times[b]))
    });
    let samples = traj.samples();
    let key_poses = candidates
        .into_iter()
        .enumerate()
        .map(|(r, i)| KeyPose {
            pose_in_world: world_t_g.compose(&samples[i].relative_pose),
            t: times[i],
            score: scores[i],
            rank: r + 1,
            sample_index: i,
        })
        .collect();
    Ok(Ranking { key_poses, fits })
}

/// One row of the fitted-curve trace table.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct TraceRow {
    pub t: f64,
    pub raw: f64,
    pub fitted: f64,
    pub derivative: f64,
}

/// Raw value, fitted value and derivative at every sample, for plotting.
pub fn fit_trace(traj: &DemoTrajectory, fit: &PolynomialFit) -> Vec<TraceRow> {
    traj.times()
        .into_iter()
        .zip(dof_series(traj, fit.dof))
        .map(|(t, raw)| TraceRow {
            t,
            raw,
            fitted: fit.eval(t),
            derivative: fit.derivative(t),
        })
        .collect()
}
