//! Structured triangulations of the unit square.
//!
//! Every grid cell `[i/n, (i+1)/n] x [j/n, (j+1)/n]` is split along the
//! diagonal running from its lower-left to its upper-right corner. Edges are
//! numbered eagerly so that quadratic (P2) nodes can be addressed as
//! `num_vertices + edge_id`.

use std::collections::HashMap;

use crate::error::{BiotError, Result};

pub type Point = [f64; 2];

/// Element space tag for the scalar/vector spaces living on a [`Mesh`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Space {
    /// Continuous piecewise-linear scalar functions.
    P1,
    /// Continuous piecewise-quadratic scalar functions.
    P2,
    /// Continuous piecewise-quadratic 2-vector fields.
    P2Vec,
}

#[derive(Debug, Clone)]
pub struct Mesh {
    subdivisions: usize,
    vertices: Vec<Point>,
    triangles: Vec<[usize; 3]>,
    /// Edge `(a, b)` with `a < b`.
    edges: Vec<[usize; 2]>,
    /// Per triangle: edge ids of local edges (0,1), (1,2), (2,0).
    triangle_edges: Vec<[usize; 3]>,
    boundary_vertex: Vec<bool>,
    boundary_edge: Vec<bool>,
    edge_triangle_count: Vec<u8>,
}

impl Mesh {
    /// Builds the structured mesh with `n` cells per side (mesh size `1/n`).
    pub fn unit_square(n: usize) -> Result<Self> {
        if n == 0 {
            return Err(BiotError::InvalidInput(
                "mesh needs at least one subdivision per side".into(),
            ));
        }
        let nf = n as f64;
        let stride = n + 1;
        let mut vertices = Vec::with_capacity(stride * stride);
        let mut boundary_vertex = Vec::with_capacity(stride * stride);
        for j in 0..=n {
            for i in 0..=n {
                vertices.push([i as f64 / nf, j as f64 / nf]);
                boundary_vertex.push(i == 0 || j == 0 || i == n || j == n);
            }
        }
        let vid = |i: usize, j: usize| j * stride + i;

        let mut triangles = Vec::with_capacity(2 * n * n);
        for j in 0..n {
            for i in 0..n {
                let v00 = vid(i, j);
                let v10 = vid(i + 1, j);
                let v01 = vid(i, j + 1);
                let v11 = vid(i + 1, j + 1);
                triangles.push([v00, v10, v11]);
                triangles.push([v00, v11, v01]);
            }
        }

        let mut edge_ids: HashMap<[usize; 2], usize> = HashMap::new();
        let mut edges = Vec::with_capacity(3 * n * n + 2 * n);
        let mut edge_triangle_count = Vec::with_capacity(3 * n * n + 2 * n);
        let mut triangle_edges = Vec::with_capacity(triangles.len());
        for tri in &triangles {
            let mut local = [0usize; 3];
            for (k, slot) in local.iter_mut().enumerate() {
                let a = tri[k];
                let b = tri[(k + 1) % 3];
                let key = [a.min(b), a.max(b)];
                let id = *edge_ids.entry(key).or_insert_with(|| {
                    edges.push(key);
                    edge_triangle_count.push(0);
                    edges.len() - 1
                });
                edge_triangle_count[id] += 1;
                *slot = id;
            }
            triangle_edges.push(local);
        }
        let boundary_edge = edge_triangle_count.iter().map(|&c| c == 1).collect();

        Ok(Self {
            subdivisions: n,
            vertices,
            triangles,
            edges,
            triangle_edges,
            boundary_vertex,
            boundary_edge,
            edge_triangle_count,
        })
    }

    pub fn subdivisions(&self) -> usize {
        self.subdivisions
    }

    /// Side length of the structured cells.
    pub fn h(&self) -> f64 {
        1.0 / self.subdivisions as f64
    }

    pub fn dimension(&self) -> usize {
        2
    }

    pub fn vertices(&self) -> &[Point] {
        &self.vertices
    }

    pub fn triangles(&self) -> &[[usize; 3]] {
        &self.triangles
    }

    pub fn edges(&self) -> &[[usize; 2]] {
        &self.edges
    }

    pub fn triangle_edges(&self) -> &[[usize; 3]] {
        &self.triangle_edges
    }

    pub fn num_vertices(&self) -> usize {
        self.vertices.len()
    }

    pub fn num_triangles(&self) -> usize {
        self.triangles.len()
    }

    pub fn num_edges(&self) -> usize {
        self.edges.len()
    }

    pub fn is_boundary_vertex(&self, v: usize) -> bool {
        self.boundary_vertex[v]
    }

    pub fn is_boundary_edge(&self, e: usize) -> bool {
        self.boundary_edge[e]
    }

    pub fn num_boundary_edges(&self) -> usize {
        self.boundary_edge.iter().filter(|&&b| b).count()
    }

    /// Number of triangles sharing edge `e` (1 on the boundary, 2 inside).
    pub fn edge_triangle_count(&self, e: usize) -> usize {
        self.edge_triangle_count[e] as usize
    }

    pub fn edge_midpoint(&self, e: usize) -> Point {
        let [a, b] = self.edges[e];
        let (pa, pb) = (self.vertices[a], self.vertices[b]);
        [0.5 * (pa[0] + pb[0]), 0.5 * (pa[1] + pb[1])]
    }

    pub fn triangle_points(&self, t: usize) -> [Point; 3] {
        let [a, b, c] = self.triangles[t];
        [self.vertices[a], self.vertices[b], self.vertices[c]]
    }

    /// Signed area of triangle `t` (positive for counter-clockwise ordering).
    pub fn signed_area(&self, t: usize) -> f64 {
        let [p0, p1, p2] = self.triangle_points(t);
        0.5 * ((p1[0] - p0[0]) * (p2[1] - p0[1]) - (p2[0] - p0[0]) * (p1[1] - p0[1]))
    }

    /// Coordinates of every node of a scalar space, in global node order.
    /// For [`Space::P2Vec`] this is the node set of one component.
    pub fn node_coordinates(&self, space: Space) -> Vec<Point> {
        match space {
            Space::P1 => self.vertices.clone(),
            Space::P2 | Space::P2Vec => {
                let mut pts = self.vertices.clone();
                pts.extend((0..self.num_edges()).map(|e| self.edge_midpoint(e)));
                pts
            }
        }
    }

    /// Marks the nodes of `space` lying on the boundary of the unit square.
    /// For the vector space both components of a boundary node are marked.
    pub fn boundary_dof_mask(&self, space: Space) -> Vec<bool> {
        let mut scalar = self.boundary_vertex.clone();
        if space != Space::P1 {
            scalar.extend_from_slice(&self.boundary_edge);
        }
        if space == Space::P2Vec {
            let copy = scalar.clone();
            scalar.extend(copy);
        }
        scalar
    }
}
