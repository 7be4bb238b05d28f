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

//! Bidirectional RRT-Connect over object poses with optional dynamic-domain sampling.

use super::config::PlannerConfig;
use super::path::{edge_is_free, steer};
use crate::geom::{Aabb, RigidTransform, Scene};
use log::debug;
use nalgebra::{Quaternion, UnitQuaternion, Vector3};
use rand::Rng;
use rand_chacha::ChaCha8Rng;
use std::f64::consts::TAU;
use std::time::Instant;

/// Deadline checks happen once per this many iterations.
const DEADLINE_CHECK_PERIOD: usize = 64;
/// Dynamic-domain resamples allowed per iteration before the last sample is kept anyway.
const MAX_DOMAIN_REJECTIONS: usize = 256;
/// Absolute slack (rad) on the cheap angle bound used by nearest-neighbour pruning.
const ANGLE_BOUND_SLACK: f64 = 1e-7;

#[derive(Clone, Debug, PartialEq)]
pub enum SegmentOutcome {
    /// Collision-free waypoints from start to goal, both included.
    Solved(Vec<RigidTransform>),
    Timeout,
    /// The configured extension budget ran out before the trees met.
    IterationLimit,
    /// The named endpoint is in collision.
    Infeasible(&'static str),
}

impl SegmentOutcome {
    pub fn label(&self) -> &'static str {
        match self {
            SegmentOutcome::Solved(_) => "solved",
            SegmentOutcome::Timeout => "timeout",
            SegmentOutcome::IterationLimit => "iteration_limit",
            SegmentOutcome::Infeasible(_) => "infeasible_input",
        }
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct SegmentStats {
    pub iterations: usize,
    pub tree_nodes: usize,
    pub rejected_samples: usize,
    pub shortcuts: usize,
}

#[derive(Clone, Copy, Debug)]
struct TreeNode {
    pose: RigidTransform,
    parent: Option<usize>,
}

struct Tree {
    nodes: Vec<TreeNode>,
    is_start: bool,
}

enum Extend {
    Reached(usize),
    Advanced(usize),
    Trapped,
}

struct Search<'a> {
    scene: &'a Scene,
    config: &'a PlannerConfig,
}

impl Tree {
    fn new(root: RigidTransform, is_start: bool) -> Self {
        Self {
            nodes: vec![TreeNode {
                pose: root,
                parent: None,
            }],
            is_start,
        }
    }

    fn root(&self) -> RigidTransform {
        self.nodes[0].pose
    }

    fn nearest(&self, q: &RigidTransform, w: f64) -> (usize, f64) {
        let mut best = (0, f64::INFINITY);
        let q_rot = q.rotation().coords;
        for (i, n) in self.nodes.iter().enumerate() {
            // The translation part alone is a lower bound; skip the angle when it loses.
            let dt = n.pose.translation_distance_to(q);
            if dt >= best.1 {
                continue;
            }
            // θ ≥ 2·sin(θ/2) = 2·√(1 − cos²(θ/2)) with cos(θ/2) = |⟨qa, qb⟩|: a cheap
            // bound that avoids the exact angle for most nodes. The slack covers rounding.
            let c = n.pose.rotation().coords.dot(&q_rot).abs().min(1.0);
            let angle_bound = 2.0 * (1.0 - c * c).max(0.0).sqrt() - ANGLE_BOUND_SLACK;
            if dt + w * angle_bound >= best.1 {
                continue;
            }
            let d = dt + w * n.pose.rotation_angle_to(q);
            if d < best.1 {
                best = (i, d);
            }
        }
        best
    }

    /// Poses from the root to `idx`, root first.
    fn branch(&self, idx: usize) -> Vec<RigidTransform> {
        let mut out = vec![self.nodes[idx].pose];
        let mut cur = idx;
        while let Some(p) = self.nodes[cur].parent {
            out.push(self.nodes[p].pose);
            cur = p;
        }
        out.reverse();
        out
    }
}

impl Search<'_> {
    fn extend_from(&self, tree: &mut Tree, near: usize, target: &RigidTransform) -> Extend {
        let c = self.config;
        let from = tree.nodes[near].pose;
        let (q_new, reached) = steer(&from, target, c.step_translation, c.step_rotation);
        if !edge_is_free(self.scene, &from, &q_new, c.rotation_weight, c.validation_resolution) {
            return Extend::Trapped;
        }
        tree.nodes.push(TreeNode {
            pose: q_new,
            parent: Some(near),
        });
        let idx = tree.nodes.len() - 1;
        if reached {
            Extend::Reached(idx)
        } else {
            Extend::Advanced(idx)
        }
    }

    fn extend(&self, tree: &mut Tree, target: &RigidTransform) -> Extend {
        let (near, _) = tree.nearest(target, self.config.rotation_weight);
        self.extend_from(tree, near, target)
    }

    /// Repeated extension toward `target`; after the first step each extension continues
    /// from the node just added, which is the tree's closest point along that line.
    fn connect(&self, tree: &mut Tree, target: &RigidTransform) -> Extend {
        let mut step = self.extend(tree, target);
        while let Extend::Advanced(last) = step {
            step = self.extend_from(tree, last, target);
        }
        step
    }
}

/// Uniformly distributed rotation (Shoemake's subgroup method).
pub fn random_rotation(rng: &mut impl Rng) -> UnitQuaternion<f64> {
    let (u1, u2, u3): (f64, f64, f64) = (rng.gen(), rng.gen(), rng.gen());
    let a = (1.0 - u1).sqrt();
    let b = u1.sqrt();
    UnitQuaternion::new_normalize(Quaternion::new(
        b * (TAU * u3).cos(),
        a * (TAU * u2).sin(),
        a * (TAU * u2).cos(),
        b * (TAU * u3).sin(),
    ))
}

/// Position box for uniform sampling: the obstacles' box inflated by two object
/// diameters, grown to contain both endpoints.
pub fn sampling_box(scene: &Scene, start: &RigidTransform, goal: &RigidTransform) -> Aabb {
    let margin = 2.0 * scene.object_diameter();
    let mut b = scene.obstacles_aabb().unwrap_or_else(Aabb::empty);
    b.grow(&(*start.translation()).into());
    b.grow(&(*goal.translation()).into());
    b.inflated(margin)
}

fn random_pose(rng: &mut impl Rng, bounds: &Aabb) -> RigidTransform {
    let t = Vector3::new(
        rng.gen_range(bounds.min.x..=bounds.max.x),
        rng.gen_range(bounds.min.y..=bounds.max.y),
        rng.gen_range(bounds.min.z..=bounds.max.z),
    );
    RigidTransform::new(random_rotation(rng), t)
}

/// Plans one collision-free segment from `start` to `goal` before `deadline`.
///
/// Trees grow from both ends and alternate roles each iteration: one extends toward a
/// sample, the other then tries to connect to the new node. The very first sample is the
/// other root, so an unobstructed straight edge is found immediately. A solved segment is
/// shortcut-smoothed with whatever time remains (at most `smoothing_attempts` tries).
pub fn plan_segment(
    start: &RigidTransform,
    goal: &RigidTransform,
    scene: &Scene,
    config: &PlannerConfig,
    deadline: Instant,
    rng: &mut ChaCha8Rng,
) -> (SegmentOutcome, SegmentStats) {
    let mut stats = SegmentStats::default();
    if scene.pose_in_collision(start) {
        return (SegmentOutcome::Infeasible("start"), stats);
    }
    if scene.pose_in_collision(goal) {
        return (SegmentOutcome::Infeasible("goal"), stats);
    }
    if start == goal {
        return (SegmentOutcome::Solved(vec![*start]), stats);
    }
    let search = Search { scene, config };
    let bounds = config.sampling_box.unwrap_or_else(|| sampling_box(scene, start, goal));
    let domain = config.effective_dynamic_domain_radius();
    let w = config.rotation_weight;

    let mut a = Tree::new(*start, true);
    let mut b = Tree::new(*goal, false);
    let mut first = true;
    let raw_path = loop {
        if stats.iterations % DEADLINE_CHECK_PERIOD == 0 && Instant::now() >= deadline {
            stats.tree_nodes = a.nodes.len() + b.nodes.len();
            return (SegmentOutcome::Timeout, stats);
        }
        if config.max_iterations > 0 && stats.iterations >= config.max_iterations {
            stats.tree_nodes = a.nodes.len() + b.nodes.len();
            return (SegmentOutcome::IterationLimit, stats);
        }
        stats.iterations += 1;

        let goal_directed = first || rng.gen::<f64>() < config.goal_bias;
        first = false;
        let (target, near) = if goal_directed {
            let t = b.root();
            (t, a.nearest(&t, w).0)
        } else {
            let mut sample = random_pose(rng, &bounds);
            let mut near = a.nearest(&sample, w);
            let mut rejections = 0;
            while domain > 0.0 && near.1 > domain && rejections < MAX_DOMAIN_REJECTIONS {
                rejections += 1;
                sample = random_pose(rng, &bounds);
                near = a.nearest(&sample, w);
            }
            stats.rejected_samples += rejections;
            (sample, near.0)
        };

        let new_idx = match search.extend_from(&mut a, near, &target) {
            Extend::Trapped => None,
            Extend::Advanced(i) | Extend::Reached(i) => Some(i),
        };
        if let Some(new_idx) = new_idx {
            let q_new = a.nodes[new_idx].pose;
            if let Extend::Reached(meet) = search.connect(&mut b, &q_new) {
                let mut path = a.branch(new_idx);
                let mut other = b.branch(meet);
                other.reverse();
                // `meet` duplicates `q_new`.
                path.extend(other.into_iter().skip(1));
                if !a.is_start {
                    path.reverse();
                }
                break path;
            }
        }
        std::mem::swap(&mut a, &mut b);
    };
    stats.tree_nodes = a.nodes.len() + b.nodes.len();
    let mut path = raw_path;
    stats.shortcuts = shortcut(&mut path, scene, config, deadline, rng);
    debug!(
        "segment solved: {} iterations, {} nodes, {} waypoints after {} shortcuts",
        stats.iterations,
        stats.tree_nodes,
        path.len(),
        stats.shortcuts
    );
    (SegmentOutcome::Solved(path), stats)
}

/// Random pairwise shortcutting. Returns the number of successful shortcuts.
fn shortcut(
    path: &mut Vec<RigidTransform>,
    scene: &Scene,
    config: &PlannerConfig,
    deadline: Instant,
    rng: &mut ChaCha8Rng,
) -> usize {
    let mut done = 0;
    for _ in 0..config.smoothing_attempts {
        if path.len() < 3 || Instant::now() >= deadline {
            break;
        }
        let i = rng.gen_range(0..path.len() - 2);
        let j = rng.gen_range(i + 2..path.len());
        if edge_is_free(
            scene,
            &path[i],
            &path[j],
            config.rotation_weight,
            config.validation_resolution,
        ) {
            path.drain(i + 1..j);
            done += 1;
        }
    }
    done
}
