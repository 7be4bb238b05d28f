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

//! Exact-predicate primitives: triangle/triangle overlap and point containment.

use super::mesh::TriMesh;
use nalgebra::{Point3, Vector3};

pub type Triangle = [Point3<f64>; 3];

/// Closed triangle/triangle intersection test; triangles that merely touch intersect.
///
/// Separating-axis test over both face normals, the nine edge/edge cross products, and
/// the six in-plane edge normals that separate coplanar pairs. Any axis yielding a strict
/// gap proves the triangles disjoint; otherwise they share at least one point.
pub fn triangles_intersect(a: &Triangle, b: &Triangle) -> bool {
    let ea = edges(a);
    let eb = edges(b);
    let na = ea[0].cross(&ea[1]);
    let nb = eb[0].cross(&eb[1]);

    if separated_on(&na, a, b) || separated_on(&nb, a, b) {
        return false;
    }
    for e1 in &ea {
        for e2 in &eb {
            if separated_on(&e1.cross(e2), a, b) {
                return false;
            }
        }
    }
    for e in &ea {
        if separated_on(&na.cross(e), a, b) {
            return false;
        }
    }
    for e in &eb {
        if separated_on(&nb.cross(e), a, b) {
            return false;
        }
    }
    true
}

fn edges(t: &Triangle) -> [Vector3<f64>; 3] {
    [t[1] - t[0], t[2] - t[1], t[0] - t[2]]
}

fn separated_on(axis: &Vector3<f64>, a: &Triangle, b: &Triangle) -> bool {
    if axis.norm_squared() == 0.0 {
        return false;
    }
    let (amin, amax) = project(axis, a);
    let (bmin, bmax) = project(axis, b);
    amax < bmin || bmax < amin
}

fn project(axis: &Vector3<f64>, t: &Triangle) -> (f64, f64) {
    let p0 = axis.dot(&t[0].coords);
    let p1 = axis.dot(&t[1].coords);
    let p2 = axis.dot(&t[2].coords);
    (p0.min(p1).min(p2), p0.max(p1).max(p2))
}

/// Fixed, deliberately irrational ray direction for parity tests.
const RAY_DIR: [f64; 3] = [0.577_215_664_901_532_9, 0.414_213_562_373_095, 0.707_106_781_186_547_6];

/// Parity test: is `p` inside the volume bounded by a closed mesh?
///
/// Open meshes bound no volume and always answer `false`.
pub fn point_in_closed_mesh(mesh: &TriMesh, p: &Point3<f64>) -> bool {
    if !mesh.is_closed() || !mesh.aabb().contains_point(p) {
        return false;
    }
    let dir = Vector3::from(RAY_DIR);
    let mut crossings = 0usize;
    for i in 0..mesh.len() {
        if ray_hits_triangle(p, &dir, &mesh.triangle(i)) {
            crossings += 1;
        }
    }
    crossings % 2 == 1
}

// Möller-Trumbore, counting only hits strictly in front of the origin.
fn ray_hits_triangle(origin: &Point3<f64>, dir: &Vector3<f64>, t: &Triangle) -> bool {
    let e1 = t[1] - t[0];
    let e2 = t[2] - t[0];
    let pvec = dir.cross(&e2);
    let det = e1.dot(&pvec);
    if det.abs() < 1e-300 {
        return false;
    }
    let inv = 1.0 / det;
    let tvec = origin - t[0];
    let u = tvec.dot(&pvec) * inv;
    if !(0.0..=1.0).contains(&u) {
        return false;
    }
    let qvec = tvec.cross(&e1);
    let v = dir.dot(&qvec) * inv;
    if v < 0.0 || u + v > 1.0 {
        return false;
    }
    e2.dot(&qvec) * inv > 0.0
}
