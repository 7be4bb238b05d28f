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

//! Triangle meshes and the Wavefront OBJ subset they load from.

use crate::error::GeomError;
use nalgebra::{Point3, Vector3};
use std::collections::HashMap;
use std::io::BufRead;
use std::path::Path;

/// Triangles with area at or below this are dropped at load time (m²).
pub const DEGENERATE_AREA: f64 = 1e-12;

/// Axis-aligned bounding box.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Aabb {
    pub min: Point3<f64>,
    pub max: Point3<f64>,
}

impl Aabb {
    pub fn empty() -> Self {
        Self {
            min: Point3::from([f64::INFINITY; 3]),
            max: Point3::from([f64::NEG_INFINITY; 3]),
        }
    }

    pub fn from_points<'a>(points: impl IntoIterator<Item = &'a Point3<f64>>) -> Self {
        let mut b = Self::empty();
        for p in points {
            b.grow(p);
        }
        b
    }

    pub fn grow(&mut self, p: &Point3<f64>) {
        self.min = self.min.inf(p);
        self.max = self.max.sup(p);
    }

    pub fn merge(&self, other: &Aabb) -> Aabb {
        Aabb {
            min: self.min.inf(&other.min),
            max: self.max.sup(&other.max),
        }
    }

    pub fn contains(&self, other: &Aabb) -> bool {
        (0..3).all(|i| self.min[i] <= other.min[i] && other.max[i] <= self.max[i])
    }

    pub fn contains_point(&self, p: &Point3<f64>) -> bool {
        (0..3).all(|i| self.min[i] <= p[i] && p[i] <= self.max[i])
    }

    /// Closed-interval overlap: boxes that share a face overlap.
    pub fn overlaps(&self, other: &Aabb) -> bool {
        (0..3).all(|i| self.min[i] <= other.max[i] && other.min[i] <= self.max[i])
    }

    pub fn center(&self) -> Point3<f64> {
        nalgebra::center(&self.min, &self.max)
    }

    pub fn extent(&self) -> Vector3<f64> {
        self.max - self.min
    }

    pub fn diagonal(&self) -> f64 {
        self.extent().norm()
    }

    pub fn inflated(&self, margin: f64) -> Aabb {
        let m = Vector3::repeat(margin);
        Aabb {
            min: self.min - m,
            max: self.max + m,
        }
    }

    pub fn corners(&self) -> [Point3<f64>; 8] {
        let (a, b) = (&self.min, &self.max);
        [
            Point3::new(a.x, a.y, a.z),
            Point3::new(b.x, a.y, a.z),
            Point3::new(a.x, b.y, a.z),
            Point3::new(b.x, b.y, a.z),
            Point3::new(a.x, a.y, b.z),
            Point3::new(b.x, a.y, b.z),
            Point3::new(a.x, b.y, b.z),
            Point3::new(b.x, b.y, b.z),
        ]
    }
}

/// An indexed triangle mesh in meters.
///
/// Construction drops degenerate triangles and rejects out-of-range indices, so
/// every `TriMesh` in circulation satisfies both invariants.
#[derive(Clone, Debug)]
pub struct TriMesh {
    vertices: Vec<Point3<f64>>,
    triangles: Vec<[u32; 3]>,
    closed: bool,
}

impl TriMesh {
    pub fn new(vertices: Vec<Point3<f64>>, triangles: Vec<[u32; 3]>) -> Result<Self, GeomError> {
        if let Some(p) = vertices.iter().find(|p| p.iter().any(|c| !c.is_finite())) {
            return Err(GeomError::InvalidMesh(format!("non-finite vertex {p:?}")));
        }
        let n = vertices.len();
        for (i, t) in triangles.iter().enumerate() {
            if t.iter().any(|&v| v as usize >= n) {
                return Err(GeomError::InvalidMesh(format!(
                    "triangle {i} references vertex out of range ({t:?}, {n} vertices)"
                )));
            }
        }
        let triangles: Vec<[u32; 3]> = triangles
            .into_iter()
            .filter(|t| {
                let [a, b, c] = t.map(|i| vertices[i as usize]);
                0.5 * (b - a).cross(&(c - a)).norm() > DEGENERATE_AREA
            })
            .collect();
        let closed = edges_are_manifold(&triangles);
        Ok(Self {
            vertices,
            triangles,
            closed,
        })
    }

    pub fn vertices(&self) -> &[Point3<f64>] {
        &self.vertices
    }

    pub fn triangles(&self) -> &[[u32; 3]] {
        &self.triangles
    }

    pub fn triangle(&self, i: usize) -> [Point3<f64>; 3] {
        self.triangles[i].map(|v| self.vertices[v as usize])
    }

    pub fn len(&self) -> usize {
        self.triangles.len()
    }

    pub fn is_empty(&self) -> bool {
        self.triangles.is_empty()
    }

    /// Every edge is shared by exactly two triangles, so the mesh bounds a volume.
    pub fn is_closed(&self) -> bool {
        self.closed
    }

    pub fn aabb(&self) -> Aabb {
        Aabb::from_points(self.vertices.iter())
    }

    /// Axis-aligned box between two corners, outward-facing triangles.
    pub fn cuboid(min: Point3<f64>, max: Point3<f64>) -> Result<Self, GeomError> {
        let b = Aabb { min, max };
        if (0..3).any(|i| !(max[i] > min[i])) {
            return Err(GeomError::InvalidMesh(format!("empty box {min:?}..{max:?}")));
        }
        let vertices = b.corners().to_vec();
        let triangles = vec![
            [0, 2, 1],
            [1, 2, 3],
            [4, 5, 6],
            [5, 7, 6],
            [0, 1, 4],
            [1, 5, 4],
            [2, 6, 3],
            [3, 6, 7],
            [0, 4, 2],
            [2, 4, 6],
            [1, 3, 5],
            [3, 7, 5],
        ];
        Self::new(vertices, triangles)
    }

    /// Concatenates meshes into one (no welding).
    pub fn merge(parts: &[TriMesh]) -> Result<Self, GeomError> {
        let mut vertices = Vec::new();
        let mut triangles = Vec::new();
        for part in parts {
            let offset = vertices.len() as u32;
            vertices.extend_from_slice(&part.vertices);
            triangles.extend(part.triangles.iter().map(|t| t.map(|v| v + offset)));
        }
        Self::new(vertices, triangles)
    }

    pub fn from_obj_file(path: impl AsRef<Path>) -> Result<Self, GeomError> {
        let path = path.as_ref();
        let file = std::fs::File::open(path).map_err(|e| GeomError::Io {
            path: path.display().to_string(),
            source: e,
        })?;
        Self::from_obj_reader(std::io::BufReader::new(file))
    }

    /// Reads `v` and `f` lines; polygons are fan-triangulated, everything else ignored.
    pub fn from_obj_reader(reader: impl BufRead) -> Result<Self, GeomError> {
        let mut vertices = Vec::new();
        let mut triangles = Vec::new();
        for (lineno, line) in reader.lines().enumerate() {
            let line = line.map_err(|e| GeomError::Io {
                path: "<obj>".into(),
                source: e,
            })?;
            let mut it = line.split_whitespace();
            let parse_err = |msg: &str| GeomError::Obj {
                line: lineno + 1,
                message: msg.to_string(),
            };
            match it.next() {
                Some("v") => {
                    let coords: Vec<f64> = it
                        .take(3)
                        .map(|s| s.parse::<f64>())
                        .collect::<Result<_, _>>()
                        .map_err(|_| parse_err("bad vertex coordinate"))?;
                    if coords.len() != 3 {
                        return Err(parse_err("vertex needs 3 coordinates"));
                    }
                    vertices.push(Point3::new(coords[0], coords[1], coords[2]));
                }
                Some("f") => {
                    let mut idx = Vec::new();
                    for tok in it {
                        // "v", "v/vt", "v//vn", "v/vt/vn"
                        let head = tok.split('/').next().unwrap_or("");
                        let i: i64 = head.parse().map_err(|_| parse_err("bad face index"))?;
                        let resolved = match i {
                            0 => return Err(parse_err("face index 0")),
                            i if i > 0 => i - 1,
                            i => vertices.len() as i64 + i,
                        };
                        if resolved < 0 {
                            return Err(parse_err("relative face index out of range"));
                        }
                        idx.push(resolved as u32);
                    }
                    if idx.len() < 3 {
                        return Err(parse_err("face needs at least 3 vertices"));
                    }
                    for k in 1..idx.len() - 1 {
                        triangles.push([idx[0], idx[k], idx[k + 1]]);
                    }
                }
                _ => {}
            }
        }
        Self::new(vertices, triangles)
    }

    pub fn to_obj_string(&self) -> String {
        let mut s = String::new();
        for v in &self.vertices {
            s.push_str(&format!("v {} {} {}\n", v.x, v.y, v.z));
        }
        for t in &self.triangles {
            s.push_str(&format!("f {} {} {}\n", t[0] + 1, t[1] + 1, t[2] + 1));
        }
        s
    }
}

fn edges_are_manifold(triangles: &[[u32; 3]]) -> bool {
    if triangles.is_empty() {
        return false;
    }
    let mut count: HashMap<(u32, u32), u32> = HashMap::new();
    for t in triangles {
        for k in 0..3 {
            let (a, b) = (t[k], t[(k + 1) % 3]);
            *count.entry((a.min(b), a.max(b))).or_default() += 1;
        }
    }
    count.values().all(|&c| c == 2)
}
