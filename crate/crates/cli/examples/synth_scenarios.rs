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

//! Generates the bundled scenarios under `crates/cli/scenarios/`.
//!
//! Every scene is built from boxes, so the meshes are closed. The demonstration logs are
//! synthetic: smooth tilt/pivot/insert motions with a little measurement noise, sampled at
//! 10 Hz. Each demonstration and each start/goal pose is checked against its scene with
//! the exhaustive collision checker before anything is written.
//!
//! Run with `cargo run -p demoguide --example synth_scenarios [-- <output dir>]`.

use demoguide::config::{BenchConfig, DemoConfig, KinematicsConfig, ObstacleConfig, SceneConfig};
use demoguide::ScenarioConfig;
use demoguide_core::geom::{PoseVector, RigidTransform, Scene, TriMesh};
use demoguide_core::kin::{
    inverse_kinematics, tip_target, ChainSpec, IkConfig, JointConfig, JointSpec, KinematicChain,
};
use demoguide_core::planner::PlannerConfig;
use nalgebra::Point3;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::f64::consts::FRAC_PI_2;
use std::fmt::Write as _;
use std::path::{Path, PathBuf};

/// Demonstration sample period (s).
const PERIOD: f64 = 0.1;

fn cuboid(min: [f64; 3], max: [f64; 3]) -> TriMesh {
    TriMesh::cuboid(Point3::from(min), Point3::from(max)).expect("cuboid")
}

fn merged(parts: &[TriMesh]) -> TriMesh {
    TriMesh::merge(parts).expect("merge")
}

fn pose(x: f64, y: f64, z: f64, roll: f64, pitch: f64, yaw: f64) -> RigidTransform {
    PoseVector::new(x, y, z, roll, pitch, yaw).to_transform()
}

fn pose_vector(t: &RigidTransform) -> PoseVector {
    PoseVector::from_transform(t).pose
}

fn smoothstep(u: f64) -> f64 {
    let u = u.clamp(0.0, 1.0);
    u * u * (3.0 - 2.0 * u)
}

/// Piecewise-linear interpolation of `(a, b, c)` knots at parameter `s ∈ [0, 1]`.
fn along(knots: &[(f64, f64, f64)], s: f64) -> (f64, f64, f64) {
    let n = knots.len() - 1;
    let f = (s.clamp(0.0, 1.0) * n as f64).min(n as f64 - 1e-12);
    let i = f.floor() as usize;
    let u = f - i as f64;
    let (a, b) = (knots[i], knots[i + 1]);
    (a.0 + u * (b.0 - a.0), a.1 + u * (b.1 - a.1), a.2 + u * (b.2 - a.2))
}

/// Timed knots `(t, x, z, pitch°)` with smoothstep easing between neighbours.
fn timed(knots: &[(f64, f64, f64, f64)], t: f64) -> (f64, f64, f64) {
    let i = knots.iter().rposition(|k| k.0 <= t).unwrap_or(0).min(knots.len() - 2);
    let (a, b) = (knots[i], knots[i + 1]);
    let u = smoothstep((t - a.0) / (b.0 - a.0));
    (a.1 + u * (b.1 - a.1), a.2 + u * (b.2 - a.2), a.3 + u * (b.3 - a.3))
}

/// Adds tracking noise: uniform ±0.1 mm per axis and a rotation below 0.03°.
fn jitter(rng: &mut ChaCha8Rng, p: &RigidTransform) -> RigidTransform {
    let d = 1e-4;
    let a = 0.03_f64.to_radians();
    let noise = pose(
        rng.gen_range(-d..d),
        rng.gen_range(-d..d),
        rng.gen_range(-d..d),
        rng.gen_range(-a..a),
        rng.gen_range(-a..a),
        rng.gen_range(-a..a),
    );
    *p * noise
}

/// Fails loudly if `f(t)` collides anywhere on a fine time grid, or if any sample does.
fn assert_collision_free(
    label: &str,
    scene: &Scene,
    duration: f64,
    f: impl Fn(f64) -> RigidTransform,
    samples: &[RigidTransform],
) {
    let steps = (duration * 2000.0).ceil() as usize;
    for i in 0..=steps {
        let t = duration * i as f64 / steps as f64;
        assert!(
            !scene.pose_in_collision_brute_force(&f(t)),
            "{label}: demonstration collides at t = {t:.4}"
        );
    }
    for (i, s) in samples.iter().enumerate() {
        assert!(
            !scene.pose_in_collision_brute_force(s),
            "{label}: recorded sample {i} collides"
        );
    }
}

fn relative_log(samples: &[(f64, RigidTransform)]) -> String {
    let mut out = String::from(
        "# synthetic demonstration, object pose in the fixed part's frame\n# units: m,s\nt,x,y,z,qw,qx,qy,qz\n",
    );
    for (t, p) in samples {
        let v = p.to_array();
        let _ = writeln!(
            out,
            "{t:.3},{},{},{},{},{},{},{}",
            v[0], v[1], v[2], v[3], v[4], v[5], v[6]
        );
    }
    out
}

/// World-pair log as a fixed camera would record it; one row is a dropped frame.
fn camera_log(samples: &[(f64, RigidTransform)], camera_t_g: &RigidTransform, dropped_after: usize) -> String {
    let mut out = String::from(
        "# synthetic demonstration, marker poses of G and L in the camera frame\n# units: m,s\nt,x_G,y_G,z_G,qw_G,qx_G,qy_G,qz_G,x_L,y_L,z_L,qw_L,qx_L,qy_L,qz_L\n",
    );
    let g = camera_t_g.to_array();
    for (i, (t, p)) in samples.iter().enumerate() {
        let l = (*camera_t_g * *p).to_array();
        let _ = write!(out, "{t:.3}");
        for v in g.iter().chain(&l) {
            let _ = write!(out, ",{v}");
        }
        out.push('\n');
        if i == dropped_after {
            let _ = write!(out, "{:.3}", t + PERIOD / 2.0);
            for _ in 0..14 {
                out.push_str(",nan");
            }
            out.push('\n');
        }
    }
    out
}

fn arm_spec() -> ChainSpec {
    let joint = |name: &str, axis: [f64; 3], origin: PoseVector, lim: f64| JointSpec {
        name: name.to_string(),
        axis,
        origin,
        limits: [-lim, lim],
    };
    let at = |x: f64, y: f64, z: f64| PoseVector::new(x, y, z, 0.0, 0.0, 0.0);
    ChainSpec {
        base: PoseVector::default(),
        joints: vec![
            joint("waist_yaw", [0.0, 0.0, 1.0], at(0.0, 0.0, 0.3), 2.8),
            joint("shoulder_yaw", [0.0, 0.0, 1.0], at(0.0, 0.1, 0.1), 2.8),
            joint("shoulder_pitch", [0.0, 1.0, 0.0], at(0.0, 0.0, 0.0), 2.5),
            joint("elbow_pitch", [0.0, 1.0, 0.0], at(0.3, 0.0, 0.0), 2.7),
            joint("wrist_roll", [1.0, 0.0, 0.0], at(0.25, 0.0, 0.0), 3.0),
            joint("wrist_pitch", [0.0, 1.0, 0.0], at(0.0, 0.0, 0.0), 2.0),
            joint("wrist_yaw", [0.0, 0.0, 1.0], at(0.0, 0.0, 0.0), 3.0),
        ],
        tip: at(0.08, 0.0, 0.0),
    }
}

/// Grasp transform for a tool tip at `tip_in_object` pointing along the object's −z.
fn top_grasp(x: f64, y: f64, z: f64) -> PoseVector {
    let tip_in_object = pose(x, y, z, 0.0, FRAC_PI_2, 0.0);
    pose_vector(&tip_in_object.inverse())
}

/// IK seed for the first waypoint, solved from a bent "ready" posture.
fn first_seed(chain: &KinematicChain, grasp: &PoseVector, start: &RigidTransform) -> Vec<f64> {
    let ready = JointConfig(vec![0.0, -0.3, -0.3, 1.6, 0.0, 0.3, 0.0]);
    let target = tip_target(start, &grasp.to_transform());
    let sol = inverse_kinematics(chain, &target, &ready, &IkConfig::default()).expect("start pose is reachable");
    sol.config.0.iter().map(|a| (a * 1e6).round() / 1e6).collect()
}

struct Bundle {
    dir: PathBuf,
    files: Vec<(String, String)>,
}

impl Bundle {
    fn new(root: &Path, name: &str) -> Self {
        Self {
            dir: root.join(name),
            files: Vec::new(),
        }
    }

    fn add(&mut self, name: &str, contents: String) {
        self.files.push((name.to_string(), contents));
    }

    fn write(self) {
        std::fs::create_dir_all(&self.dir).expect("create scenario dir");
        for (name, contents) in self.files {
            let path = self.dir.join(&name);
            std::fs::write(&path, contents).expect("write scenario file");
            println!("wrote {}", path.display());
        }
    }
}

fn scenario_toml(config: &ScenarioConfig, comment: &str) -> String {
    let mut out = String::new();
    for line in comment.lines() {
        let _ = writeln!(out, "# {line}");
    }
    out.push_str("# Generated by `cargo run -p demoguide --example synth_scenarios`.\n\n");
    out.push_str(&toml::to_string_pretty(config).expect("scenario serializes"));
    out
}

fn kinematics(chain: &KinematicChain, grasp: PoseVector, start: &RigidTransform) -> KinematicsConfig {
    KinematicsConfig {
        chain: PathBuf::from("../chains/arm7.toml"),
        seed: Some(first_seed(chain, &grasp, start)),
        grasp,
        ik: IkConfig::default(),
        audit_link_radius: None,
    }
}

fn l_insertion(root: &Path, chain: &KinematicChain) {
    // G: a closed tunnel (interior 0.16 × 0.024 × 0.024) whose roof has a slot 0.097
    // long, shorter than L's 0.10 bottom limb.
    let (tx, ty, th, roof, slot) = (0.08, 0.012, 0.024, 0.01, 0.0485);
    let g = merged(&[
        cuboid([-0.12, -0.04, -0.01], [0.12, 0.04, 0.0]),
        cuboid([-0.12, ty, 0.0], [0.12, 0.04, th + roof]),
        cuboid([-0.12, -0.04, 0.0], [0.12, -ty, th + roof]),
        cuboid([-0.12, -ty, 0.0], [-tx, ty, th + roof]),
        cuboid([tx, -ty, 0.0], [0.12, ty, th + roof]),
        cuboid([-tx, -ty, th], [-slot, ty, th + roof]),
        cuboid([slot, -ty, th], [tx, ty, th + roof]),
    ]);
    // L: bottom limb 0.10 × 0.02 × 0.02 with a 0.05 handle rising from its +x end.
    let l = merged(&[
        cuboid([-0.05, -0.01, 0.0], [0.05, 0.01, 0.02]),
        cuboid([0.03, -0.01, 0.02], [0.05, 0.01, 0.07]),
    ]);
    // Gripper jaws around the top of the handle.
    let gripper = cuboid([0.028, -0.015, 0.07], [0.052, 0.015, 0.095]);

    let world_t_g = pose(0.40, 0.02, 0.10, 0.0, 0.0, 0.25);
    let scene = Scene::new(
        vec![(g.clone(), world_t_g)],
        merged(&[l.clone(), gripper.clone()]),
        "world",
    )
    .expect("scene");
    let local = Scene::new(
        vec![(g.clone(), RigidTransform::identity())],
        merged(&[l.clone(), gripper.clone()]),
        "G",
    )
    .expect("scene");

    // Tilt: lower the −x end through the slot at 35°. Pivot: swing level while the end
    // slides under the roof, the bottom corner kept 1.9 mm off the floor. Insert: slide
    // deeper along the tunnel.
    let lift = 0.0019;
    let pivot: Vec<(f64, f64, f64)> = [
        (-35.0, 0.012),
        (-30.0, 0.004),
        (-25.0, -0.001),
        (-20.0, -0.0015),
        (-16.0, -0.0022),
        (-12.0, -0.003),
        (-8.0, -0.005),
        (-4.0, -0.009),
        (0.0, -0.014),
    ]
    .iter()
    .map(|&(p, x): &(f64, f64)| (p, x, 0.05 * p.to_radians().sin().abs() + lift))
    .collect();
    let top = 0.075;
    let relative = |t: f64| -> RigidTransform {
        let (p, x, z) = if t < 2.0 {
            let u = smoothstep(t / 2.0);
            (-35.0, 0.012, top + u * (pivot[0].2 - top))
        } else if t < 4.0 {
            along(&pivot, smoothstep((t - 2.0) / 2.0))
        } else {
            let u = smoothstep((t - 4.0) / 1.9);
            (0.0, -0.014 + u * (-0.025 + 0.014), 0.002)
        };
        pose(x, 0.0, z, 0.0, p.to_radians(), 0.0)
    };
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let samples: Vec<(f64, RigidTransform)> = (0..60)
        .map(|k| {
            let t = k as f64 * PERIOD;
            let p = relative(t);
            (t, if k == 0 || k == 59 { p } else { jitter(&mut rng, &p) })
        })
        .collect();
    assert_collision_free(
        "l_insertion",
        &local,
        5.9,
        relative,
        &samples.iter().map(|s| s.1).collect::<Vec<_>>(),
    );
    let start = world_t_g * relative(0.0);
    let goal = world_t_g * relative(5.9);
    assert!(!scene.pose_in_collision_brute_force(&start) && !scene.pose_in_collision_brute_force(&goal));

    let camera_t_g = pose(0.06, -0.11, 0.62, 3.1, 0.05, -0.4);
    let grasp = top_grasp(0.04, 0.0, 0.085);
    let config = ScenarioConfig {
        name: "l_insertion".to_string(),
        trivial: false,
        scene: SceneConfig {
            frame: "world".to_string(),
            object: "l.obj".into(),
            gripper: Some("gripper.obj".into()),
            obstacles: vec![ObstacleConfig {
                mesh: "g.obj".into(),
                pose: pose_vector(&world_t_g),
            }],
        },
        world_t_g: pose_vector(&world_t_g),
        start: pose_vector(&start),
        goal: pose_vector(&goal),
        demo: Some(DemoConfig {
            log: "demo.csv".into(),
            dof: "pitch".to_string(),
            degree: 7,
            region: Some([2.65, 3.25]),
        }),
        planner: PlannerConfig {
            t_e: 5.0,
            max_iterations: 3000,
            max_key_poses: 6,
            ..PlannerConfig::default()
        },
        kinematics: Some(kinematics(chain, grasp, &start)),
        bench: BenchConfig {
            trials: 5,
            seeds: vec![1, 2, 3, 4, 5],
            success_floor: 4,
            jobs: 1,
        },
        base_dir: PathBuf::new(),
    };
    let mut b = Bundle::new(root, "l_insertion");
    b.add(
        "scenario.toml",
        scenario_toml(
            &config,
            "L-shaped object insertion into a closed grooved block.\nThe roof slot is shorter than L's bottom limb, so L must be tilted in, pivoted level\nunder the roof and slid along the tunnel. 2 mm clearance around the limb in the tunnel.",
        ),
    );
    b.add("g.obj", g.to_obj_string());
    b.add("l.obj", l.to_obj_string());
    b.add("gripper.obj", gripper.to_obj_string());
    b.add("demo.csv", camera_log(&samples, &camera_t_g, 10));
    b.write();
}

fn mortise(x0: f64, x1: f64) -> Vec<TriMesh> {
    // Block 0.03 thick along x with a 0.024 square through-hole centred at z = 0.03.
    let (hy, lo, hi, top) = (0.012, 0.018, 0.042, 0.06);
    vec![
        cuboid([x0, -0.04, 0.0], [x1, -hy, top]),
        cuboid([x0, hy, 0.0], [x1, 0.04, top]),
        cuboid([x0, -hy, 0.0], [x1, hy, lo]),
        cuboid([x0, -hy, hi], [x1, hy, top]),
    ]
}

fn tenon(root: &Path, chain: &KinematicChain) {
    // Two mortise blocks with coaxial holes, a low wall on the approach side and a tall
    // wall behind the second block. The tenon must be carried in slightly tilted over
    // the low wall, threaded into the first hole, levelled and pushed through the second.
    let mut parts = vec![
        cuboid([-0.25, -0.04, -0.01], [0.16, 0.04, 0.0]),
        cuboid([-0.16, -0.04, 0.0], [-0.15, 0.04, 0.025]),
        cuboid([0.09, -0.04, 0.0], [0.1, 0.04, 0.08]),
    ];
    parts.extend(mortise(-0.06, -0.03));
    parts.extend(mortise(0.03, 0.06));
    let fixture = merged(&parts);
    let bar = cuboid([-0.06, -0.01, -0.01], [0.06, 0.01, 0.01]);

    let world_t_g = pose(0.42, -0.03, 0.08, 0.0, 0.0, -0.2);
    let scene = Scene::new(vec![(fixture.clone(), world_t_g)], bar.clone(), "world").expect("scene");
    let local = Scene::new(vec![(fixture.clone(), RigidTransform::identity())], bar.clone(), "M").expect("scene");

    let knots = [
        (0.0, -0.13, 0.10, 4.0),
        (1.5, -0.125, 0.034, 4.0),
        (2.5, -0.085, 0.0325, 3.0),
        (3.3, -0.075, 0.0303, 0.0),
        (4.0, -0.06, 0.030, 0.0),
        (5.9, 0.0, 0.03, 0.0),
    ];
    let relative = |t: f64| {
        let (x, z, p) = timed(&knots, t);
        pose(x, 0.0, z, 0.0, p.to_radians(), 0.0)
    };
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let samples: Vec<(f64, RigidTransform)> = (0..60)
        .map(|k| {
            let t = k as f64 * PERIOD;
            let p = relative(t);
            (t, if k == 0 || k == 59 { p } else { jitter(&mut rng, &p) })
        })
        .collect();
    assert_collision_free(
        "tenon",
        &local,
        5.9,
        relative,
        &samples.iter().map(|s| s.1).collect::<Vec<_>>(),
    );
    let start = world_t_g * relative(0.0);
    let goal = world_t_g * relative(5.9);
    assert!(!scene.pose_in_collision_brute_force(&start) && !scene.pose_in_collision_brute_force(&goal));

    let grasp = top_grasp(0.0, 0.0, 0.01);
    let config = ScenarioConfig {
        name: "tenon".to_string(),
        trivial: false,
        scene: SceneConfig {
            frame: "world".to_string(),
            object: "tenon.obj".into(),
            gripper: None,
            obstacles: vec![ObstacleConfig {
                mesh: "mortises.obj".into(),
                pose: pose_vector(&world_t_g),
            }],
        },
        world_t_g: pose_vector(&world_t_g),
        start: pose_vector(&start),
        goal: pose_vector(&goal),
        demo: Some(DemoConfig {
            log: "demo.csv".into(),
            dof: "pitch".to_string(),
            degree: 7,
            region: Some([1.95, 3.05]),
        }),
        planner: PlannerConfig {
            t_e: 5.0,
            max_iterations: 2000,
            max_key_poses: 11,
            ..PlannerConfig::default()
        },
        kinematics: Some(kinematics(chain, grasp, &start)),
        bench: BenchConfig {
            trials: 5,
            seeds: vec![1, 2, 3, 4, 5],
            success_floor: 3,
            jobs: 1,
        },
        base_dir: PathBuf::new(),
    };
    let mut b = Bundle::new(root, "tenon");
    b.add(
        "scenario.toml",
        scenario_toml(
            &config,
            "Tenon insertion through the holes of two mortise blocks.\nA low wall blocks a level approach and a tall wall closes the far side, so the tenon\nis threaded into the first hole slightly tilted, levelled, then pushed through both.\n2 mm clearance in both holes.",
        ),
    );
    b.add("mortises.obj", fixture.to_obj_string());
    b.add("tenon.obj", bar.to_obj_string());
    b.add("demo.csv", relative_log(&samples));
    b.write();
}

fn narrow_slot(root: &Path) {
    // A closed box split into two rooms by a 0.04 thick wall with a 0.024 square
    // corridor; the moving part is a 0.02 cube.
    let (ox, oy, oz, w, wt, hole) = (0.2, 0.1, 0.1, 0.01, 0.02, 0.012);
    let walls = merged(&[
        cuboid([-ox - w, -oy - w, -oz - w], [ox + w, oy + w, -oz]),
        cuboid([-ox - w, -oy - w, oz], [ox + w, oy + w, oz + w]),
        cuboid([-ox - w, -oy - w, -oz], [ox + w, -oy, oz]),
        cuboid([-ox - w, oy, -oz], [ox + w, oy + w, oz]),
        cuboid([-ox - w, -oy, -oz], [-ox, oy, oz]),
        cuboid([ox, -oy, -oz], [ox + w, oy, oz]),
        cuboid([-wt, -oy, -oz], [wt, -hole, oz]),
        cuboid([-wt, hole, -oz], [wt, oy, oz]),
        cuboid([-wt, -hole, -oz], [wt, hole, -hole]),
        cuboid([-wt, -hole, hole], [wt, hole, oz]),
    ]);
    let cube = cuboid([-0.01, -0.01, -0.01], [0.01, 0.01, 0.01]);
    let scene = Scene::new(vec![(walls.clone(), RigidTransform::identity())], cube.clone(), "box").expect("scene");

    let start = pose(-0.14, 0.05, 0.05, 0.5, 0.3, 0.7);
    let goal = pose(0.14, -0.05, -0.05, -0.6, 0.2, -0.4);
    let entry = pose(-0.06, 0.0, 0.0, 0.0, 0.0, 0.0);
    let exit = pose(0.06, 0.0, 0.0, 0.0, 0.0, 0.0);
    // Slow approach and retreat, quick straight pass through the corridor.
    let demo = |t: f64| -> RigidTransform {
        if t < 1.5 {
            start.interpolate(&entry, smoothstep(t / 1.5))
        } else if t < 2.5 {
            entry.interpolate(&exit, smoothstep(t - 1.5))
        } else {
            exit.interpolate(&goal, smoothstep((t - 2.5) / 1.4))
        }
    };
    let samples: Vec<(f64, RigidTransform)> = (0..40).map(|k| (k as f64 * PERIOD, demo(k as f64 * PERIOD))).collect();
    assert_collision_free(
        "narrow_slot",
        &scene,
        3.9,
        demo,
        &samples.iter().map(|s| s.1).collect::<Vec<_>>(),
    );

    let config = ScenarioConfig {
        name: "narrow_slot".to_string(),
        trivial: false,
        scene: SceneConfig {
            frame: "box".to_string(),
            object: "cube.obj".into(),
            gripper: None,
            obstacles: vec![ObstacleConfig {
                mesh: "two_rooms.obj".into(),
                pose: PoseVector::default(),
            }],
        },
        world_t_g: PoseVector::default(),
        start: pose_vector(&start),
        goal: pose_vector(&goal),
        demo: Some(DemoConfig {
            log: "demo.csv".into(),
            dof: "x".to_string(),
            degree: 7,
            region: Some([1.45, 2.55]),
        }),
        planner: PlannerConfig {
            t_e: 2.0,
            ..PlannerConfig::default()
        },
        kinematics: None,
        bench: BenchConfig {
            trials: 5,
            seeds: vec![1, 2, 3, 4, 5],
            success_floor: 5,
            jobs: 1,
        },
        base_dir: PathBuf::new(),
    };
    let mut b = Bundle::new(root, "narrow_slot");
    b.add(
        "scenario.toml",
        scenario_toml(
            &config,
            "Two closed rooms joined by a 0.024 square corridor through a 0.04 thick wall.\nThe 0.02 cube starts and ends rotated away from the corridor axis. Planning without\nthe demonstration (`--set planner.max_key_poses=0`) is the baseline.",
        ),
    );
    b.add("two_rooms.obj", walls.to_obj_string());
    b.add("cube.obj", cube.to_obj_string());
    b.add("demo.csv", relative_log(&samples));
    b.write();
}

fn trivial(root: &Path, chain: &KinematicChain) {
    let bar = cuboid([-0.06, -0.01, -0.01], [0.06, 0.01, 0.01]);
    let start = pose(0.40, 0.0, 0.15, 0.0, 0.0, 0.0);
    let goal = pose(0.40, 0.10, 0.15, 0.0, 0.0, 0.0);
    let grasp = top_grasp(0.0, 0.0, 0.01);
    let config = ScenarioConfig {
        name: "empty".to_string(),
        trivial: false,
        scene: SceneConfig {
            frame: "world".to_string(),
            object: "bar.obj".into(),
            gripper: None,
            obstacles: Vec::new(),
        },
        world_t_g: PoseVector::default(),
        start: pose_vector(&start),
        goal: pose_vector(&goal),
        demo: None,
        planner: PlannerConfig::default(),
        kinematics: Some(kinematics(chain, grasp, &start)),
        bench: BenchConfig {
            trials: 5,
            seeds: Vec::new(),
            success_floor: 5,
            jobs: 1,
        },
        base_dir: PathBuf::new(),
    };
    let mut b = Bundle::new(root, "empty");
    b.add(
        "scenario.toml",
        scenario_toml(
            &config,
            "No obstacles: a 10 cm sideways move of a bar, solved by the direct attempt.",
        ),
    );
    b.add("bar.obj", bar.to_obj_string());
    b.write();
}

fn main() {
    let root = std::env::args()
        .nth(1)
        .map(PathBuf::from)
        .unwrap_or_else(|| Path::new(env!("CARGO_MANIFEST_DIR")).join("scenarios"));
    let spec = arm_spec();
    let chain = KinematicChain::from_spec(&spec).expect("chain");
    let mut chains = Bundle::new(&root, "chains");
    chains.add(
        "arm7.toml",
        format!(
            "# Illustrative 7-joint arm: waist yaw plus a 6-joint arm with a roll-pitch-yaw\n# wrist, loosely modelled on one arm of a dual-arm torso.\n# Lengths in meters, angles in radians.\n# Generated by `cargo run -p demoguide --example synth_scenarios`.\n\n{}",
            toml::to_string_pretty(&spec).expect("chain serializes")
        ),
    );
    chains.write();
    l_insertion(&root, &chain);
    tenon(&root, &chain);
    narrow_slot(&root);
    trivial(&root, &chain);
}
