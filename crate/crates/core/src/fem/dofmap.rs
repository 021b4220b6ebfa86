use crate::mesh::{Mesh, Space};

/// Local-to-global numbering of one element space on a mesh.
///
/// Vector P2 fields use component-major blocks: all x-components first, then
/// all y-components, each block following the scalar P2 numbering
/// (vertices, then edge midpoints).
#[derive(Debug, Clone)]
pub struct DofMap {
    space: Space,
    num_dofs: usize,
    local_size: usize,
    cells: Vec<usize>,
    boundary: Vec<bool>,
}

impl DofMap {
    pub fn new(mesh: &Mesh, space: Space) -> Self {
        let nv = mesh.num_vertices();
        let ne = mesh.num_edges();
        let scalar_p2 = nv + ne;
        let (num_dofs, local_size) = match space {
            Space::P1 => (nv, 3),
            Space::P2 => (scalar_p2, 6),
            Space::P2Vec => (2 * scalar_p2, 12),
        };
        let mut cells = Vec::with_capacity(mesh.num_triangles() * local_size);
        for (tri, edges) in mesh.triangles().iter().zip(mesh.triangle_edges()) {
            match space {
                Space::P1 => cells.extend_from_slice(tri),
                Space::P2 => {
                    cells.extend_from_slice(tri);
                    cells.extend(edges.iter().map(|e| nv + e));
                }
                Space::P2Vec => {
                    for offset in [0, scalar_p2] {
                        cells.extend(tri.iter().map(|v| offset + v));
                        cells.extend(edges.iter().map(|e| offset + nv + e));
                    }
                }
            }
        }
        Self {
            space,
            num_dofs,
            local_size,
            cells,
            boundary: mesh.boundary_dof_mask(space),
        }
    }

    pub fn space(&self) -> Space {
        self.space
    }

    pub fn num_dofs(&self) -> usize {
        self.num_dofs
    }

    pub fn local_size(&self) -> usize {
        self.local_size
    }

    pub fn num_cells(&self) -> usize {
        self.cells.len() / self.local_size
    }

    /// Global indices of the local functions of triangle `t`.
    pub fn cell(&self, t: usize) -> &[usize] {
        &self.cells[t * self.local_size..(t + 1) * self.local_size]
    }

    pub fn boundary_mask(&self) -> &[bool] {
        &self.boundary
    }

    /// Number of scalar nodes per component.
    pub fn nodes_per_component(&self) -> usize {
        match self.space {
            Space::P2Vec => self.num_dofs / 2,
            _ => self.num_dofs,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sizes_and_ranges() {
        for n in [1, 2, 5] {
            let mesh = Mesh::unit_square(n).unwrap();
            let nv = mesh.num_vertices();
            let ne = mesh.num_edges();
            for (space, count) in [
                (Space::P1, nv),
                (Space::P2, nv + ne),
                (Space::P2Vec, 2 * (nv + ne)),
            ] {
                let dm = DofMap::new(&mesh, space);
                assert_eq!(dm.num_dofs(), count);
                assert_eq!(dm.boundary_mask().len(), count);
                assert_eq!(dm.num_cells(), mesh.num_triangles());
                for t in 0..dm.num_cells() {
                    assert!(dm.cell(t).iter().all(|&g| g < count));
                }
            }
        }
    }

    #[test]
    fn every_dof_is_used() {
        let mesh = Mesh::unit_square(3).unwrap();
        for space in [Space::P1, Space::P2, Space::P2Vec] {
            let dm = DofMap::new(&mesh, space);
            let mut seen = vec![false; dm.num_dofs()];
            for t in 0..dm.num_cells() {
                for &g in dm.cell(t) {
                    seen[g] = true;
                }
            }
            assert!(seen.iter().all(|&s| s));
        }
    }
}
