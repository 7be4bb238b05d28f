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

//! Joint-space realization of object paths for a waist-plus-arm serial chain.

mod chain;
mod ik;
mod path;

pub use chain::{ChainFrames, ChainSpec, Joint, JointConfig, JointLimits, JointSpec, KinematicChain};
pub use ik::{error_norm, inverse_kinematics, pose_error, IkConfig, IkSolution};
pub use path::{audit_arm_clearance, object_path_to_joint_path, tip_target, ArmContact, JointPath};
