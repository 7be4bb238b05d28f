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

//! Bounding-volume hierarchy over a mesh's triangles and posed mesh/mesh queries.

use super::intersect::{triangles_intersect, Triangle};
use super::mesh::{Aabb, TriMesh};
use super::transform::RigidTransform;
use crate::error::GeomError;
use nalgebra::Point3;
use std::sync::Arc;

const MAX_LEAF_TRIANGLES: usize = 4;

#[derive(Clone, Debug)]
enum NodeKind {
    Leaf { start: usize, count: usize },
    Internal { left: usize, right: usize },
}

#[derive(Clone, Debug)]
struct Node {
    aabb: Aabb,
    kind: NodeKind,
}

/// Immutable AABB tree over a shared mesh. Node 0 is the root.
#[derive(Clone, Debug)]
pub struct CollisionIndex {
    mesh: Arc<TriMesh>,
    nodes: Vec<Node>,
    /// Triangle indices, permuted so every leaf owns a contiguous run.
    order: Vec<usize>,
    tri_boxes: Vec<Aabb>,
}

/// Outcome of a posed mesh/mesh query.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct CollisionReport {
    /// First intersecting (triangle of a, triangle of b) pair found, if any.
    pub witness: Option<(usize, usize)>,
}

impl CollisionReport {
    pub fn intersecting(&self) -> bool {
        self.witness.is_some()
    }
}

impl CollisionIndex {
    pub fn build(mesh: impl Into<Arc<TriMesh>>) -> Result<Self, GeomError> {
        let mesh = mesh.into();
        if mesh.is_empty() {
            return Err(GeomError::EmptyMesh);
        }
        let tri_boxes: Vec<Aabb> = (0..mesh.len())
            .map(|i| Aabb::from_points(mesh.triangle(i).iter()))
            .collect();
        let centroids: Vec<Point3<f64>> = tri_boxes.iter().map(Aabb::center).collect();
        let mut order: Vec<usize> = (0..mesh.len()).collect();
        let mut nodes = Vec::with_capacity(2 * mesh.len() / MAX_LEAF_TRIANGLES + 1);
        build_node(&mut nodes, &mut order, 0, mesh.len(), &tri_boxes, &centroids);
        Ok(Self {
            mesh,
            nodes,
            order,
            tri_boxes,
        })
    }

    pub fn mesh(&self) -> &TriMesh {
        &self.mesh
    }

    pub fn shared_mesh(&self) -> Arc<TriMesh> {
        Arc::clone(&self.mesh)
    }

    pub fn root_aabb(&self) -> &Aabb {
        &self.nodes[0].aabb
    }

    pub fn node_count(&self) -> usize {
        self.nodes.len()
    }

    /// Triangle sets of the leaves, in tree order.
    pub fn leaves(&self) -> Vec<Vec<usize>> {
        self.nodes
            .iter()
            .filter_map(|n| match n.kind {
                NodeKind::Leaf { start, count } => Some(self.order[start..start + count].to_vec()),
                NodeKind::Internal { .. } => None,
            })
            .collect()
    }

    /// Checks the containment invariant: each triangle box sits inside every ancestor box.
    pub fn boxes_nest(&self) -> bool {
        fn walk(idx: &CollisionIndex, node: usize, ancestors: &mut Vec<Aabb>) -> bool {
            let n = &idx.nodes[node];
            ancestors.push(n.aabb);
            let ok = match n.kind {
                NodeKind::Leaf { start, count } => idx.order[start..start + count]
                    .iter()
                    .all(|&t| ancestors.iter().all(|a| a.contains(&idx.tri_boxes[t]))),
                NodeKind::Internal { left, right } => walk(idx, left, ancestors) && walk(idx, right, ancestors),
            };
            ancestors.pop();
            ok
        }
        walk(self, 0, &mut Vec::new())
    }
}

fn build_node(
    nodes: &mut Vec<Node>,
    order: &mut [usize],
    start: usize,
    end: usize,
    tri_boxes: &[Aabb],
    centroids: &[Point3<f64>],
) -> usize {
    let aabb = order[start..end]
        .iter()
        .fold(Aabb::empty(), |acc, &t| acc.merge(&tri_boxes[t]));
    let id = nodes.len();
    nodes.push(Node {
        aabb,
        kind: NodeKind::Leaf {
            start,
            count: end - start,
        },
    });
    if end - start <= MAX_LEAF_TRIANGLES {
        return id;
    }
    let cbox = Aabb::from_points(order[start..end].iter().map(|&t| &centroids[t]));
    let ext = cbox.extent();
    let axis = if ext.x >= ext.y && ext.x >= ext.z {
        0
    } else if ext.y >= ext.z {
        1
    } else {
        2
    };
    let mid = start + (end - start) / 2;
    order[start..end].select_nth_unstable_by(mid - start, |&a, &b| centroids[a][axis].total_cmp(&centroids[b][axis]));
    let left = build_node(nodes, order, start, mid, tri_boxes, centroids);
    let right = build_node(nodes, order, mid, end, tri_boxes, centroids);
    nodes[id].kind = NodeKind::Internal { left, right };
    id
}

/// Pose of `b` expressed in the frame of `a`; both query paths use this frame.
fn relative_pose(pose_a: &RigidTransform, pose_b: &RigidTransform) -> RigidTransform {
    pose_a.inverse().compose(pose_b)
}

fn transformed_triangle(mesh: &TriMesh, i: usize, pose: &RigidTransform) -> Triangle {
    mesh.triangle(i).map(|p| pose.transform_point(&p))
}

fn transformed_aabb(b: &Aabb, pose: &RigidTransform) -> Aabb {
    Aabb::from_points(
        b.corners()
            .iter()
            .map(|p| pose.transform_point(p))
            .collect::<Vec<_>>()
            .iter(),
    )
}

// Slack on box tests so rounding in the box transform never prunes a pair the exact
// triangle predicate would report.
const BOX_SLACK: f64 = 1e-9;

/// BVH-accelerated test between two posed meshes.
pub fn check_collision(
    a: &CollisionIndex,
    pose_a: &RigidTransform,
    b: &CollisionIndex,
    pose_b: &RigidTransform,
) -> CollisionReport {
    let rel = relative_pose(pose_a, pose_b);
    let mut cache: Vec<Option<Triangle>> = vec![None; b.mesh.len()];
    let mut stack = vec![(0usize, 0usize)];
    while let Some((na, nb)) = stack.pop() {
        let node_a = &a.nodes[na];
        let node_b = &b.nodes[nb];
        let box_b = transformed_aabb(&node_b.aabb, &rel).inflated(BOX_SLACK);
        if !node_a.aabb.overlaps(&box_b) {
            continue;
        }
        match (&node_a.kind, &node_b.kind) {
            (NodeKind::Leaf { start: sa, count: ca }, NodeKind::Leaf { start: sb, count: cb }) => {
                for &ta in &a.order[*sa..sa + ca] {
                    let tri_a = a.mesh.triangle(ta);
                    let box_ta = a.tri_boxes[ta];
                    if !box_ta.overlaps(&box_b) {
                        continue;
                    }
                    for &tb in &b.order[*sb..sb + cb] {
                        let tri_b = *cache[tb].get_or_insert_with(|| transformed_triangle(&b.mesh, tb, &rel));
                        if !box_ta.overlaps(&Aabb::from_points(tri_b.iter()).inflated(BOX_SLACK)) {
                            continue;
                        }
                        if triangles_intersect(&tri_a, &tri_b) {
                            return CollisionReport {
                                witness: Some((ta, tb)),
                            };
                        }
                    }
                }
            }
            (NodeKind::Leaf { .. }, NodeKind::Internal { left, right }) => {
                stack.push((na, *right));
                stack.push((na, *left));
            }
            (NodeKind::Internal { left, right }, NodeKind::Leaf { .. }) => {
                stack.push((*right, nb));
                stack.push((*left, nb));
            }
            (NodeKind::Internal { left: la, right: ra }, NodeKind::Internal { left: lb, right: rb }) => {
                // Descend the larger box first.
                if node_a.aabb.diagonal() >= node_b.aabb.diagonal() {
                    stack.push((*ra, nb));
                    stack.push((*la, nb));
                } else {
                    stack.push((na, *rb));
                    stack.push((na, *lb));
                }
            }
        }
    }
    CollisionReport { witness: None }
}

/// Exhaustive all-pairs reference for [`check_collision`]; no acceleration structure.
pub fn brute_force_collision(
    mesh_a: &TriMesh,
    pose_a: &RigidTransform,
    mesh_b: &TriMesh,
    pose_b: &RigidTransform,
) -> CollisionReport {
    let rel = relative_pose(pose_a, pose_b);
    let tris_b: Vec<Triangle> = (0..mesh_b.len())
        .map(|i| transformed_triangle(mesh_b, i, &rel))
        .collect();
    for ta in 0..mesh_a.len() {
        let tri_a = mesh_a.triangle(ta);
        for (tb, tri_b) in tris_b.iter().enumerate() {
            if triangles_intersect(&tri_a, tri_b) {
                return CollisionReport {
                    witness: Some((ta, tb)),
                };
            }
        }
    }
    CollisionReport { witness: None }
}
