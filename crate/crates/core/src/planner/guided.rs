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

//! The demonstration-guided attempt loop: plan directly, and on failure insert the
//! next-ranked key pose as an intermediate waypoint and replan the unsolved segments.

use super::config::PlannerConfig;
use super::path::{validate_path, CollisionChecker, ObjectPath, Provenance, Waypoint};
use super::repair::{repair_key_pose, RepairOutcome};
use super::rrt::{plan_segment, SegmentOutcome};
use crate::demo::KeyPose;
use crate::error::PlanError;
use crate::geom::{RigidTransform, Scene};
use log::{debug, info};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use std::collections::HashMap;
use std::time::{Duration, Instant};

/// Everything one planning run needs. Start and goal are checked at construction.
#[derive(Clone, Debug)]
pub struct PlanningProblem<'a> {
    scene: &'a Scene,
    start: RigidTransform,
    goal: RigidTransform,
    ranked_key_poses: Vec<KeyPose>,
    config: PlannerConfig,
}

impl<'a> PlanningProblem<'a> {
    /// `ranked_key_poses` must be in rank order (best first), as produced by ranking.
    pub fn new(
        scene: &'a Scene,
        start: RigidTransform,
        goal: RigidTransform,
        ranked_key_poses: Vec<KeyPose>,
        config: PlannerConfig,
    ) -> Result<Self, PlanError> {
        config.validate()?;
        if scene.pose_in_collision(&start) {
            return Err(PlanError::EndpointInCollision { which: "start" });
        }
        if scene.pose_in_collision(&goal) {
            return Err(PlanError::EndpointInCollision { which: "goal" });
        }
        if ranked_key_poses.windows(2).any(|w| w[1].rank <= w[0].rank) {
            return Err(PlanError::Config("key poses must be sorted by ascending rank".into()));
        }
        Ok(Self {
            scene,
            start,
            goal,
            ranked_key_poses,
            config,
        })
    }

    pub fn scene(&self) -> &Scene {
        self.scene
    }

    pub fn start(&self) -> &RigidTransform {
        &self.start
    }

    pub fn goal(&self) -> &RigidTransform {
        &self.goal
    }

    pub fn ranked_key_poses(&self) -> &[KeyPose] {
        &self.ranked_key_poses
    }

    pub fn config(&self) -> &PlannerConfig {
        &self.config
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum PlanStatus {
    Success,
    Timeout,
    InfeasibleInput,
}

impl std::fmt::Display for PlanStatus {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            PlanStatus::Success => "success",
            PlanStatus::Timeout => "timeout",
            PlanStatus::InfeasibleInput => "infeasible_input",
        })
    }
}

/// One segment-planning run inside an attempt.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SegmentLog {
    pub from: Provenance,
    pub to: Provenance,
    pub seconds: f64,
    pub outcome: &'static str,
    pub iterations: usize,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct AttemptLog {
    /// 0 for the direct attempt.
    pub attempt: usize,
    /// Rank of the key pose inserted just before this attempt.
    pub inserted_rank: Option<usize>,
    /// Segments planned in this attempt; cached segments are not replanned or listed.
    pub segments: Vec<SegmentLog>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct PlanResult {
    pub status: PlanStatus,
    /// Present on success; starts at the start pose and ends at the goal pose exactly.
    pub path: Option<ObjectPath>,
    pub used_key_pose_count: usize,
    /// Ranks of key poses that were in collision and replaced by a repaired pose.
    pub repaired_key_pose_ranks: Vec<usize>,
    /// Ranks of key poses dropped because repair failed; these do not count as used.
    pub discarded_key_pose_ranks: Vec<usize>,
    pub candidate_count: usize,
    pub elapsed: Duration,
    pub attempts: Vec<AttemptLog>,
}

impl PlanResult {
    /// Segment-planning runs over all attempts.
    pub fn segment_runs(&self) -> usize {
        self.attempts.iter().map(|a| a.segments.len()).sum()
    }

    /// Key-pose waypoints (demonstrated or repaired) in path order.
    pub fn key_pose_waypoints(&self) -> Vec<Waypoint> {
        self.path
            .iter()
            .flat_map(|p| p.waypoints.iter())
            .filter(|w| matches!(w.tag, Provenance::KeyPose(_) | Provenance::Repaired(_)))
            .copied()
            .collect()
    }
}

/// Sequence entry: demonstration time orders key poses between the endpoints.
#[derive(Clone, Copy, Debug)]
struct Stop {
    t: f64,
    waypoint: Waypoint,
}

fn splitmix(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9e37_79b9_7f4a_7c15);
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}

fn tag_code(tag: Provenance) -> u64 {
    match tag {
        Provenance::Start => 1,
        Provenance::Goal => 2,
        Provenance::Sampled => 3,
        Provenance::KeyPose(r) => 4 + 2 * r as u64,
        Provenance::Repaired(r) => 5 + 2 * r as u64,
    }
}

/// Independent, reproducible stream per (seed, purpose, parameters).
fn stream(seed: u64, parts: &[u64]) -> ChaCha8Rng {
    let mixed = parts.iter().fold(splitmix(seed), |acc, &p| splitmix(acc ^ p));
    ChaCha8Rng::seed_from_u64(mixed)
}

/// Runs the attempt loop until a full path is found or the key-pose budget is spent.
///
/// Every segment gets its own deadline of `t_e` and its own random stream derived from
/// the seed, the attempt number and the segment endpoints, so results do not depend on
/// which segments happened to be cached.
pub fn plan_with_demonstration(problem: &PlanningProblem<'_>) -> PlanResult {
    let clock = Instant::now();
    let config = &problem.config;
    let scene = problem.scene;
    let budget = Duration::from_secs_f64(config.t_e);

    let mut sequence = vec![
        Stop {
            t: f64::NEG_INFINITY,
            waypoint: Waypoint {
                pose: problem.start,
                tag: Provenance::Start,
            },
        },
        Stop {
            t: f64::INFINITY,
            waypoint: Waypoint {
                pose: problem.goal,
                tag: Provenance::Goal,
            },
        },
    ];
    let mut cache: HashMap<(Provenance, Provenance), Vec<RigidTransform>> = HashMap::new();
    let mut attempts = Vec::new();
    let mut repaired = Vec::new();
    let mut discarded = Vec::new();
    let mut used = 0;
    let mut next_candidate = 0;
    let mut inserted_rank = None;

    let finish = |status, path, used, repaired, discarded, attempts| PlanResult {
        status,
        path,
        used_key_pose_count: used,
        repaired_key_pose_ranks: repaired,
        discarded_key_pose_ranks: discarded,
        candidate_count: problem.ranked_key_poses.len(),
        elapsed: clock.elapsed(),
        attempts,
    };

    loop {
        let attempt = attempts.len();
        let mut log = AttemptLog {
            attempt,
            inserted_rank,
            segments: Vec::new(),
        };
        let mut all_solved = true;
        for pair in sequence.windows(2) {
            let (a, b) = (pair[0].waypoint, pair[1].waypoint);
            if cache.contains_key(&(a.tag, b.tag)) {
                continue;
            }
            let seg_clock = Instant::now();
            let mut rng = stream(config.rng_seed, &[0, attempt as u64, tag_code(a.tag), tag_code(b.tag)]);
            let (outcome, stats) = plan_segment(&a.pose, &b.pose, scene, config, seg_clock + budget, &mut rng);
            debug!(
                "attempt {attempt}: {} -> {}: {} after {} iterations",
                a.tag,
                b.tag,
                outcome.label(),
                stats.iterations
            );
            log.segments.push(SegmentLog {
                from: a.tag,
                to: b.tag,
                seconds: seg_clock.elapsed().as_secs_f64(),
                outcome: outcome.label(),
                iterations: stats.iterations,
            });
            match outcome {
                SegmentOutcome::Solved(poses) => {
                    cache.insert((a.tag, b.tag), poses);
                }
                SegmentOutcome::Infeasible(_) => {
                    attempts.push(log);
                    return finish(PlanStatus::InfeasibleInput, None, used, repaired, discarded, attempts);
                }
                SegmentOutcome::Timeout | SegmentOutcome::IterationLimit => all_solved = false,
            }
        }
        attempts.push(log);

        if all_solved {
            let path = assemble(&sequence, &cache);
            let check = validate_path(
                &path,
                scene,
                config.rotation_weight,
                config.validation_resolution,
                CollisionChecker::Bvh,
            );
            assert!(
                check.valid,
                "assembled path failed validation at {:?}",
                check.first_violation
            );
            info!("solved after {} attempts with {used} key poses", attempts.len());
            return finish(PlanStatus::Success, Some(path), used, repaired, discarded, attempts);
        }

        if used >= config.max_key_poses {
            return finish(PlanStatus::Timeout, None, used, repaired, discarded, attempts);
        }
        // Take the next candidate that is usable, repairing it if needed.
        let mut inserted = None;
        while let Some(candidate) = problem.ranked_key_poses.get(next_candidate) {
            next_candidate += 1;
            let mut rng = stream(config.rng_seed, &[1, candidate.rank as u64]);
            match repair_key_pose(&candidate.pose_in_world, scene, config, &mut rng) {
                RepairOutcome::Unchanged(pose) => {
                    inserted = Some((candidate, pose, Provenance::KeyPose(candidate.rank)));
                }
                RepairOutcome::Repaired { pose, .. } => {
                    repaired.push(candidate.rank);
                    inserted = Some((candidate, pose, Provenance::Repaired(candidate.rank)));
                }
                RepairOutcome::Failed { samples_drawn } => {
                    debug!(
                        "key pose {} discarded after {samples_drawn} repair samples",
                        candidate.rank
                    );
                    discarded.push(candidate.rank);
                    continue;
                }
            }
            break;
        }
        let Some((candidate, pose, tag)) = inserted else {
            return finish(PlanStatus::Timeout, None, used, repaired, discarded, attempts);
        };
        used += 1;
        inserted_rank = Some(candidate.rank);
        let at = sequence
            .iter()
            .position(|s| s.t > candidate.t)
            .unwrap_or(sequence.len() - 1);
        sequence.insert(
            at,
            Stop {
                t: candidate.t,
                waypoint: Waypoint { pose, tag },
            },
        );
    }
}

/// Concatenates cached segments; interior tree poses are tagged `Sampled`.
fn assemble(sequence: &[Stop], cache: &HashMap<(Provenance, Provenance), Vec<RigidTransform>>) -> ObjectPath {
    let mut waypoints = vec![sequence[0].waypoint];
    for pair in sequence.windows(2) {
        let poses = &cache[&(pair[0].waypoint.tag, pair[1].waypoint.tag)];
        let interior = poses.len().saturating_sub(2);
        waypoints.extend(poses.iter().skip(1).take(interior).map(|&pose| Waypoint {
            pose,
            tag: Provenance::Sampled,
        }));
        waypoints.push(pair[1].waypoint);
    }
    ObjectPath { waypoints }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geom::TriMesh;
    use nalgebra::Point3;

    fn cube(h: f64) -> TriMesh {
        TriMesh::cuboid(Point3::new(-h, -h, -h), Point3::new(h, h, h)).unwrap()
    }

    fn key(rank: usize, t: f64, x: f64, y: f64) -> KeyPose {
        KeyPose {
            pose_in_world: RigidTransform::from_translation(x, y, 0.0),
            t,
            score: 1.0 / rank as f64,
            rank,
            sample_index: rank,
        }
    }

    #[test]
    fn direct_attempt_uses_no_key_poses() {
        let scene = Scene::new(
            vec![(cube(0.05), RigidTransform::from_translation(0.0, 0.5, 0.0))],
            cube(0.01),
            "w",
        )
        .unwrap();
        let start = RigidTransform::from_translation(-0.2, 0.0, 0.0);
        let goal = RigidTransform::from_translation(0.2, 0.0, 0.0);
        let problem = PlanningProblem::new(
            &scene,
            start,
            goal,
            vec![key(1, 0.5, 0.0, 0.0)],
            PlannerConfig::default(),
        )
        .unwrap();
        let r = plan_with_demonstration(&problem);
        assert_eq!(r.status, PlanStatus::Success);
        assert_eq!(r.used_key_pose_count, 0);
        assert_eq!(r.attempts.len(), 1);
        let path = r.path.unwrap();
        assert_eq!(path.waypoints.first().unwrap().pose, start);
        assert_eq!(path.waypoints.last().unwrap().pose, goal);
    }

    #[test]
    fn colliding_endpoint_is_rejected() {
        let scene = Scene::new(vec![(cube(0.05), RigidTransform::identity())], cube(0.01), "w").unwrap();
        let err = PlanningProblem::new(
            &scene,
            RigidTransform::identity(),
            RigidTransform::from_translation(1.0, 0.0, 0.0),
            vec![],
            PlannerConfig::default(),
        )
        .unwrap_err();
        assert!(matches!(err, PlanError::EndpointInCollision { which: "start" }));
    }

    #[test]
    fn key_poses_follow_time_order_and_rank_priority() {
        // A wall with no opening: every attempt fails quickly, consuming candidates.
        let wall = TriMesh::cuboid(Point3::new(-0.01, -2.0, -2.0), Point3::new(0.01, 2.0, 2.0)).unwrap();
        let scene = Scene::new(vec![(wall, RigidTransform::identity())], cube(0.01), "w").unwrap();
        let config = PlannerConfig {
            max_iterations: 30,
            max_key_poses: 3,
            ..Default::default()
        };
        let keys = vec![
            key(1, 2.0, -0.1, 0.0),
            key(2, 1.0, -0.15, 0.0),
            key(3, 3.0, -0.05, 0.0),
            key(4, 0.5, -0.2, 0.0),
        ];
        let problem = PlanningProblem::new(
            &scene,
            RigidTransform::from_translation(-0.3, 0.0, 0.0),
            RigidTransform::from_translation(0.3, 0.0, 0.0),
            keys,
            config,
        )
        .unwrap();
        let r = plan_with_demonstration(&problem);
        assert_eq!(r.status, PlanStatus::Timeout);
        assert_eq!(r.used_key_pose_count, 3);
        let inserted: Vec<_> = r.attempts.iter().map(|a| a.inserted_rank).collect();
        assert_eq!(inserted, vec![None, Some(1), Some(2), Some(3)]);
        // Only segments touching the new pose are replanned once their neighbours are cached.
        let last = r.attempts.last().unwrap();
        assert!(last
            .segments
            .iter()
            .all(|s| s.from == Provenance::KeyPose(3) || s.to == Provenance::KeyPose(3) || s.to == Provenance::Goal));
        assert!(r.path.is_none());
    }

    #[test]
    fn identical_inputs_give_identical_results() {
        let wall = TriMesh::cuboid(Point3::new(-0.01, -0.2, -0.2), Point3::new(0.01, 0.2, 0.2)).unwrap();
        let scene = Scene::new(vec![(wall, RigidTransform::identity())], cube(0.01), "w").unwrap();
        let config = PlannerConfig {
            max_iterations: 1500,
            ..Default::default()
        };
        let run = || {
            let problem = PlanningProblem::new(
                &scene,
                RigidTransform::from_translation(-0.1, 0.0, 0.0),
                RigidTransform::from_translation(0.1, 0.0, 0.0),
                vec![key(1, 1.0, 0.0, 0.25)],
                config.clone(),
            )
            .unwrap();
            plan_with_demonstration(&problem)
        };
        let (a, b) = (run(), run());
        assert_eq!(a.status, b.status);
        assert_eq!(a.path, b.path);
        assert_eq!(a.used_key_pose_count, b.used_key_pose_count);
        let outcomes = |r: &PlanResult| -> Vec<_> {
            r.attempts
                .iter()
                .map(|at| {
                    (
                        at.inserted_rank,
                        at.segments
                            .iter()
                            .map(|s| (s.from, s.to, s.outcome, s.iterations))
                            .collect::<Vec<_>>(),
                    )
                })
                .collect()
        };
        assert_eq!(outcomes(&a), outcomes(&b));
    }
}
