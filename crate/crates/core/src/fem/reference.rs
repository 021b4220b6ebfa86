//! Lagrange bases on the reference triangle with vertices (0,0), (1,0), (0,1).
//!
//! P2 local node order: the three vertices, then the midpoints of the local
//! edges (0,1), (1,2), (2,0).

use crate::mesh::Point;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ElementKind {
    P1,
    P2,
    /// Quadratic 2-vector; local functions 0..6 are x-components, 6..12
    /// y-components.
    P2Vec,
}

pub fn p1_values([x, y]: Point) -> [f64; 3] {
    [1.0 - x - y, x, y]
}

pub fn p1_gradients() -> [[f64; 2]; 3] {
    [[-1.0, -1.0], [1.0, 0.0], [0.0, 1.0]]
}

pub fn p2_values(p: Point) -> [f64; 6] {
    let [l0, l1, l2] = p1_values(p);
    [
        l0 * (2.0 * l0 - 1.0),
        l1 * (2.0 * l1 - 1.0),
        l2 * (2.0 * l2 - 1.0),
        4.0 * l0 * l1,
        4.0 * l1 * l2,
        4.0 * l2 * l0,
    ]
}

pub fn p2_gradients(p: Point) -> [[f64; 2]; 6] {
    let l = p1_values(p);
    let g = p1_gradients();
    let vertex = |i: usize| {
        let s = 4.0 * l[i] - 1.0;
        [s * g[i][0], s * g[i][1]]
    };
    let edge = |i: usize, j: usize| {
        [
            4.0 * (l[i] * g[j][0] + l[j] * g[i][0]),
            4.0 * (l[i] * g[j][1] + l[j] * g[i][1]),
        ]
    };
    [
        vertex(0),
        vertex(1),
        vertex(2),
        edge(0, 1),
        edge(1, 2),
        edge(2, 0),
    ]
}

/// Reference element description for one of the supported spaces.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ReferenceElement {
    kind: ElementKind,
}

impl ReferenceElement {
    pub fn new(kind: ElementKind) -> Self {
        Self { kind }
    }

    pub fn kind(&self) -> ElementKind {
        self.kind
    }

    pub fn num_nodes(&self) -> usize {
        match self.kind {
            ElementKind::P1 => 3,
            ElementKind::P2 => 6,
            ElementKind::P2Vec => 12,
        }
    }

    /// Reference coordinates of the scalar nodes.
    pub fn nodes(&self) -> Vec<Point> {
        let verts = [[0.0, 0.0], [1.0, 0.0], [0.0, 1.0]];
        match self.kind {
            ElementKind::P1 => verts.to_vec(),
            ElementKind::P2 | ElementKind::P2Vec => {
                let mut v = verts.to_vec();
                v.extend([[0.5, 0.0], [0.5, 0.5], [0.0, 0.5]]);
                v
            }
        }
    }

    /// Values of the local basis. Vector elements return `[φ_x, φ_y]` pairs.
    pub fn values(&self, p: Point) -> Vec<[f64; 2]> {
        match self.kind {
            ElementKind::P1 => p1_values(p).iter().map(|&v| [v, 0.0]).collect(),
            ElementKind::P2 => p2_values(p).iter().map(|&v| [v, 0.0]).collect(),
            ElementKind::P2Vec => {
                let s = p2_values(p);
                s.iter()
                    .map(|&v| [v, 0.0])
                    .chain(s.iter().map(|&v| [0.0, v]))
                    .collect()
            }
        }
    }

    /// Scalar basis values (component 0 for the vector element).
    pub fn scalar_values(&self, p: Point) -> Vec<f64> {
        self.values(p).iter().map(|v| v[0] + v[1]).collect()
    }

    /// Reference gradients of the scalar shape functions underlying the space.
    pub fn scalar_gradients(&self, p: Point) -> Vec<[f64; 2]> {
        match self.kind {
            ElementKind::P1 => p1_gradients().to_vec(),
            ElementKind::P2 | ElementKind::P2Vec => p2_gradients(p).to_vec(),
        }
    }
}
