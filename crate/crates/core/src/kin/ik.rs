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

//! Damped least-squares inverse kinematics on the full 6-D tip pose.

use super::chain::{JointConfig, KinematicChain};
use crate::error::KinError;
use crate::geom::RigidTransform;
use nalgebra::{DVector, Matrix6, Vector6};
use serde::{Deserialize, Serialize};

/// Step halvings tried before an iteration is declared stuck.
const MAX_HALVINGS: usize = 12;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct IkConfig {
    /// Damping factor λ of the least-squares step.
    pub damping: f64,
    /// Success threshold on translation error + rotation_weight × rotation error.
    pub tolerance: f64,
    pub max_iterations: usize,
    /// Meters per radian in the error metric.
    pub rotation_weight: f64,
    /// Largest change of any joint in one iteration (rad).
    pub max_iteration_step: f64,
    /// Iterations without a 0.1% error improvement before the target is declared unreachable.
    pub plateau_iterations: usize,
    /// Largest allowed change of any joint between consecutive path waypoints (rad).
    pub joint_step_bound: f64,
    /// Object-path densification bounds applied before solving, (m, rad).
    pub densify_translation: f64,
    pub densify_rotation: f64,
}

impl Default for IkConfig {
    fn default() -> Self {
        Self {
            damping: 0.01,
            tolerance: 1e-4,
            max_iterations: 500,
            rotation_weight: 0.1,
            max_iteration_step: 0.2,
            plateau_iterations: 50,
            joint_step_bound: 0.15,
            densify_translation: 0.01,
            densify_rotation: 0.1,
        }
    }
}

/// Translation error and rotation-vector error taking `current` to `target`, world frame.
pub fn pose_error(current: &RigidTransform, target: &RigidTransform) -> Vector6<f64> {
    let dp = target.translation() - current.translation();
    let dr = (target.rotation() * current.rotation().inverse()).scaled_axis();
    Vector6::new(dp.x, dp.y, dp.z, dr.x, dr.y, dr.z)
}

/// Composite size of a [`pose_error`] vector.
pub fn error_norm(e: &Vector6<f64>, rotation_weight: f64) -> f64 {
    e.fixed_rows::<3>(0).norm() + rotation_weight * e.fixed_rows::<3>(3).norm()
}

#[derive(Clone, Debug, PartialEq)]
pub struct IkSolution {
    pub config: JointConfig,
    pub iterations: usize,
    /// Composite pose error of the returned config.
    pub error: f64,
}

/// Iterates q ← clamp(q + Jᵀ(JJᵀ + λ²I)⁻¹e) from `seed` until the composite error drops
/// below the tolerance. Steps that increase the error are halved; a target whose error
/// stops shrinking is reported unreachable.
pub fn inverse_kinematics(
    chain: &KinematicChain,
    target: &RigidTransform,
    seed: &JointConfig,
    config: &IkConfig,
) -> Result<IkSolution, KinError> {
    chain.check_config(seed)?;
    let mut q = seed.clone();
    let mut e = pose_error(&chain.forward_kinematics(&q), target);
    let mut err = error_norm(&e, config.rotation_weight);
    let mut best = err;
    let mut since_improvement = 0;
    let damping_sq = config.damping * config.damping;
    for iteration in 0..=config.max_iterations {
        if err < config.tolerance {
            return Ok(IkSolution {
                config: q,
                iterations: iteration,
                error: err,
            });
        }
        if iteration == config.max_iterations {
            return Err(KinError::NotConverged {
                iterations: iteration,
                error: err,
            });
        }
        // Rotation rows are scaled by the metric weight so the least-squares step
        // minimizes the same trade-off the convergence test measures.
        let mut jac = chain.jacobian(&q);
        jac.rows_mut(3, 3).scale_mut(config.rotation_weight);
        let mut task = e;
        task.fixed_rows_mut::<3>(3).scale_mut(config.rotation_weight);
        let jjt: Matrix6<f64> = &jac * jac.transpose() + Matrix6::identity() * damping_sq;
        let Some(chol) = jjt.cholesky() else {
            return Err(KinError::NotConverged {
                iterations: iteration,
                error: err,
            });
        };
        let mut dq: DVector<f64> = jac.transpose() * chol.solve(&task);
        let largest = dq.amax();
        if largest > config.max_iteration_step {
            dq *= config.max_iteration_step / largest;
        }
        // Halve the step while it makes things worse; near singular configurations the
        // full step overshoots and would oscillate. Descent is judged on the weighted
        // squared error the step minimizes.
        let current = task.norm();
        let mut accepted = None;
        for _ in 0..MAX_HALVINGS {
            let mut trial = q.clone();
            for (a, d) in trial.0.iter_mut().zip(dq.iter()) {
                *a += d;
            }
            chain.clamp(&mut trial);
            let trial_e = pose_error(&chain.forward_kinematics(&trial), target);
            let mut trial_task = trial_e;
            trial_task.fixed_rows_mut::<3>(3).scale_mut(config.rotation_weight);
            if trial_task.norm() < current {
                accepted = Some((trial, trial_e));
                break;
            }
            dq *= 0.5;
        }
        let Some((next, next_e)) = accepted else {
            return Err(KinError::Unreachable { error: err });
        };
        q = next;
        e = next_e;
        err = error_norm(&e, config.rotation_weight);
        if err < best * (1.0 - 1e-3) {
            best = err;
            since_improvement = 0;
        } else {
            since_improvement += 1;
            if since_improvement >= config.plateau_iterations {
                return Err(KinError::Unreachable { error: err });
            }
        }
    }
    unreachable!("loop returns on its last iteration")
}
