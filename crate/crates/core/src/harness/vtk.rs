//! Legacy ASCII VTK snapshots.

use std::fs::File;
use std::io::{BufWriter, Write};
use std::path::Path;

use crate::error::{BiotError, Result};
use crate::mesh::Mesh;

/// Writes vertex pressure and vertex displacement (the P2 field restricted
/// to mesh vertices) as an unstructured triangle grid.
pub fn write_vtk<W: Write>(out: &mut W, mesh: &Mesh, u: &[f64], p: &[f64]) -> Result<()> {
    let nv = mesh.num_vertices();
    let p2_nodes = nv + mesh.num_edges();
    if p.len() != nv {
        return Err(BiotError::DimensionMismatch {
            expected: nv,
            got: p.len(),
        });
    }
    if u.len() != 2 * p2_nodes {
        return Err(BiotError::DimensionMismatch {
            expected: 2 * p2_nodes,
            got: u.len(),
        });
    }
    writeln!(out, "# vtk DataFile Version 3.0")?;
    writeln!(out, "biot snapshot")?;
    writeln!(out, "ASCII")?;
    writeln!(out, "DATASET UNSTRUCTURED_GRID")?;
    writeln!(out, "POINTS {nv} double")?;
    for v in mesh.vertices() {
        writeln!(out, "{} {} 0", v[0], v[1])?;
    }
    let nt = mesh.num_triangles();
    writeln!(out, "CELLS {nt} {}", 4 * nt)?;
    for t in mesh.triangles() {
        writeln!(out, "3 {} {} {}", t[0], t[1], t[2])?;
    }
    writeln!(out, "CELL_TYPES {nt}")?;
    for _ in 0..nt {
        writeln!(out, "5")?;
    }
    writeln!(out, "POINT_DATA {nv}")?;
    writeln!(out, "SCALARS pressure double 1")?;
    writeln!(out, "LOOKUP_TABLE default")?;
    for v in p {
        writeln!(out, "{v}")?;
    }
    writeln!(out, "VECTORS displacement double")?;
    for i in 0..nv {
        writeln!(out, "{} {} 0", u[i], u[p2_nodes + i])?;
    }
    writeln!(out, "SCALARS displacement_magnitude double 1")?;
    writeln!(out, "LOOKUP_TABLE default")?;
    for i in 0..nv {
        writeln!(out, "{}", u[i].hypot(u[p2_nodes + i]))?;
    }
    Ok(())
}

pub fn export_vtk(mesh: &Mesh, u: &[f64], p: &[f64], path: &Path) -> Result<()> {
    let mut out = BufWriter::new(File::create(path)?);
    write_vtk(&mut out, mesh, u, p)?;
    out.flush()?;
    Ok(())
}
