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

#![allow(dead_code)]

use demoguide_core::geom::{PoseVector, RigidTransform, TriMesh};
use nalgebra::{Matrix3, Matrix4, Point3, Vector3};
use rand::Rng;
use std::f64::consts::PI;

pub fn random_pose(rng: &mut impl Rng, reach: f64) -> RigidTransform {
    PoseVector::new(
        rng.gen_range(-reach..reach),
        rng.gen_range(-reach..reach),
        rng.gen_range(-reach..reach),
        rng.gen_range(-PI..PI),
        rng.gen_range(-1.5..1.5),
        rng.gen_range(-PI..PI),
    )
    .to_transform()
}

/// Rz(yaw)·Ry(pitch)·Rx(roll) written out element by element.
pub fn rpy_matrix(roll: f64, pitch: f64, yaw: f64) -> Matrix3<f64> {
    let (sr, cr) = roll.sin_cos();
    let (sp, cp) = pitch.sin_cos();
    let (sy, cy) = yaw.sin_cos();
    Matrix3::new(
        cy * cp,
        cy * sp * sr - sy * cr,
        cy * sp * cr + sy * sr,
        sy * cp,
        sy * sp * sr + cy * cr,
        sy * sp * cr - cy * sr,
        -sp,
        cp * sr,
        cp * cr,
    )
}

pub fn homogeneous(p: &PoseVector) -> Matrix4<f64> {
    let mut m = Matrix4::identity();
    m.fixed_view_mut::<3, 3>(0, 0)
        .copy_from(&rpy_matrix(p.roll, p.pitch, p.yaw));
    m[(0, 3)] = p.x;
    m[(1, 3)] = p.y;
    m[(2, 3)] = p.z;
    m
}

pub fn cube(half: f64) -> TriMesh {
    TriMesh::cuboid(Point3::new(-half, -half, -half), Point3::new(half, half, half)).unwrap()
}

/// Closed latitude/longitude sphere with `2 * segments * (rings - 1)` triangles.
pub fn uv_sphere(radius: f64, rings: usize, segments: usize) -> TriMesh {
    let mut vertices = vec![Point3::new(0.0, 0.0, radius)];
    for i in 1..rings {
        let theta = PI * i as f64 / rings as f64;
        for j in 0..segments {
            let phi = 2.0 * PI * j as f64 / segments as f64;
            vertices.push(Point3::new(
                radius * theta.sin() * phi.cos(),
                radius * theta.sin() * phi.sin(),
                radius * theta.cos(),
            ));
        }
    }
    vertices.push(Point3::new(0.0, 0.0, -radius));
    let bottom = (vertices.len() - 1) as u32;
    let ring = |i: usize, j: usize| (1 + (i - 1) * segments + j % segments) as u32;
    let mut triangles = Vec::new();
    for j in 0..segments {
        triangles.push([0, ring(1, j), ring(1, j + 1)]);
        triangles.push([bottom, ring(rings - 1, j + 1), ring(rings - 1, j)]);
    }
    for i in 1..rings - 1 {
        for j in 0..segments {
            triangles.push([ring(i, j), ring(i + 1, j), ring(i + 1, j + 1)]);
            triangles.push([ring(i, j), ring(i + 1, j + 1), ring(i, j + 1)]);
        }
    }
    TriMesh::new(vertices, triangles).unwrap()
}

/// Open soup of small random triangles inside a cube of half-size `extent`.
pub fn triangle_soup(rng: &mut impl Rng, count: usize, extent: f64, size: f64) -> TriMesh {
    let mut vertices = Vec::new();
    let mut triangles = Vec::new();
    for i in 0..count {
        let c = Vector3::new(
            rng.gen_range(-extent..extent),
            rng.gen_range(-extent..extent),
            rng.gen_range(-extent..extent),
        );
        for _ in 0..3 {
            let d = Vector3::new(
                rng.gen_range(-size..size),
                rng.gen_range(-size..size),
                rng.gen_range(-size..size),
            );
            vertices.push(Point3::from(c + d));
        }
        let b = 3 * i as u32;
        triangles.push([b, b + 1, b + 2]);
    }
    TriMesh::new(vertices, triangles).unwrap()
}
