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

//! Per-DoF least-squares polynomial fits over normalized time.

use super::log::DemoTrajectory;
use crate::error::DemoError;
use crate::geom::PoseVector;
use nalgebra::{DMatrix, DVector};
use serde::{Deserialize, Serialize};
use std::f64::consts::PI;
use std::fmt;

pub const MAX_DEGREE: usize = 12;
pub const DEFAULT_DEGREE: usize = 7;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Dof {
    X,
    Y,
    Z,
    Roll,
    Pitch,
    Yaw,
}

impl Dof {
    pub const ALL: [Dof; 6] = [Dof::X, Dof::Y, Dof::Z, Dof::Roll, Dof::Pitch, Dof::Yaw];

    pub fn is_angular(self) -> bool {
        matches!(self, Dof::Roll | Dof::Pitch | Dof::Yaw)
    }

    fn pick(self, p: &PoseVector) -> f64 {
        match self {
            Dof::X => p.x,
            Dof::Y => p.y,
            Dof::Z => p.z,
            Dof::Roll => p.roll,
            Dof::Pitch => p.pitch,
            Dof::Yaw => p.yaw,
        }
    }
}

impl fmt::Display for Dof {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Dof::X => "x",
            Dof::Y => "y",
            Dof::Z => "z",
            Dof::Roll => "roll",
            Dof::Pitch => "pitch",
            Dof::Yaw => "yaw",
        };
        f.write_str(s)
    }
}

impl std::str::FromStr for Dof {
    type Err = DemoError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Dof::ALL
            .into_iter()
            .find(|d| d.to_string() == s.to_ascii_lowercase())
            .ok_or_else(|| DemoError::Config(format!("unknown dof {s:?}")))
    }
}

/// Removes ±2π jumps between consecutive angles.
pub fn unwrap_angles(values: &[f64]) -> Vec<f64> {
    let mut out = Vec::with_capacity(values.len());
    let mut offset = 0.0;
    for (i, &v) in values.iter().enumerate() {
        if i > 0 {
            let delta = v - values[i - 1];
            offset -= 2.0 * PI * (delta / (2.0 * PI)).round();
        }
        out.push(v + offset);
    }
    out
}

/// Per-sample values of one DoF, angles unwrapped.
pub fn dof_series(traj: &DemoTrajectory, dof: Dof) -> Vec<f64> {
    let raw: Vec<f64> = traj
        .samples()
        .iter()
        .map(|s| dof.pick(&PoseVector::from_transform(&s.relative_pose).pose))
        .collect();
    if dof.is_angular() {
        unwrap_angles(&raw)
    } else {
        raw
    }
}

/// Polynomial in normalized time `u = (2t - t_min - t_max) / (t_max - t_min)`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PolynomialFit {
    pub dof: Dof,
    pub degree: usize,
    /// Ascending powers of `u`.
    pub coefficients: Vec<f64>,
    /// `[t_min, t_max]` in seconds, mapped to `[-1, 1]`.
    pub domain: (f64, f64),
    /// Same unit as the DoF.
    pub rms_residual: f64,
}

impl PolynomialFit {
    pub fn normalize(&self, t: f64) -> f64 {
        let (lo, hi) = self.domain;
        (2.0 * t - lo - hi) / (hi - lo)
    }

    /// `du/dt`
    pub fn time_scale(&self) -> f64 {
        2.0 / (self.domain.1 - self.domain.0)
    }

    pub fn eval_normalized(&self, u: f64) -> f64 {
        self.coefficients.iter().rev().fold(0.0, |acc, c| acc * u + c)
    }

    pub fn derivative_normalized(&self, u: f64) -> f64 {
        self.coefficients
            .iter()
            .enumerate()
            .skip(1)
            .rev()
            .fold(0.0, |acc, (k, c)| acc * u + k as f64 * c)
    }

    pub fn eval(&self, t: f64) -> f64 {
        self.eval_normalized(self.normalize(t))
    }

    /// Derivative with respect to time (DoF unit per second).
    pub fn derivative(&self, t: f64) -> f64 {
        self.derivative_normalized(self.normalize(t)) * self.time_scale()
    }
}

/// Least-squares fit of `values` sampled at `times`.
///
/// Solved by SVD of the Vandermonde matrix; a condition number beyond 1e12 (for
/// example, all timestamps equal) is reported as rank deficiency.
pub fn fit_polynomial(times: &[f64], values: &[f64], dof: Dof, degree: usize) -> Result<PolynomialFit, DemoError> {
    if degree < 1 || degree > MAX_DEGREE {
        return Err(DemoError::Config(format!("degree {degree} outside 1..={MAX_DEGREE}")));
    }
    if times.len() != values.len() {
        return Err(DemoError::Config("times and values differ in length".into()));
    }
    let n = times.len();
    let degree = degree.min(n.saturating_sub(1));
    let rank_deficient = || DemoError::RankDeficient { dof: dof.to_string() };
    if degree == 0 {
        return Err(rank_deficient());
    }
    let lo = times.iter().cloned().fold(f64::INFINITY, f64::min);
    let hi = times.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
    if !(hi > lo) {
        return Err(rank_deficient());
    }
    let mut fit = PolynomialFit {
        dof,
        degree,
        coefficients: vec![0.0; degree + 1],
        domain: (lo, hi),
        rms_residual: 0.0,
    };
    let a = DMatrix::from_fn(n, degree + 1, |r, c| fit.normalize(times[r]).powi(c as i32));
    let b = DVector::from_column_slice(values);
    let svd = a.svd(true, true);
    let smax = svd.singular_values.max();
    let smin = svd.singular_values.min();
    if !(smin > smax * 1e-12) {
        return Err(rank_deficient());
    }
    let x = svd.solve(&b, 0.0).map_err(|_| rank_deficient())?;
    fit.coefficients = x.iter().copied().collect();
    let sq: f64 = times.iter().zip(values).map(|(&t, &v)| (fit.eval(t) - v).powi(2)).sum();
    fit.rms_residual = (sq / n as f64).sqrt();
    Ok(fit)
}

/// Fits one DoF of a trajectory; degree is clamped to `len - 1`.
pub fn fit_dof_curve(traj: &DemoTrajectory, dof: Dof, degree: usize) -> Result<PolynomialFit, DemoError> {
    fit_polynomial(&traj.times(), &dof_series(traj, dof), dof, degree)
}
