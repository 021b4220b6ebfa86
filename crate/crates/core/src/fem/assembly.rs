//! Assembly of the bilinear and linear forms of the Taylor-Hood (P2/P1)
//! discretization.

use crate::error::{BiotError, Result};
use crate::mesh::{Mesh, Point, Space};
use crate::sparse::{CsrMatrix, TripletBuilder};
use crate::tensor::{self, Tensor2};

use super::dofmap::DofMap;
use super::quadrature::QuadratureRule;
use super::reference::{p1_gradients, p1_values, p2_gradients, p2_values};

/// Exactness degree used for matrix assembly.
pub const MATRIX_QUAD_DEGREE: usize = 4;
/// Exactness degree used for load vectors and error norms.
pub const LOAD_QUAD_DEGREE: usize = 6;

/// Affine map from the reference triangle.
#[derive(Debug, Clone, Copy)]
pub(crate) struct CellGeometry {
    origin: Point,
    jac: [[f64; 2]; 2],
    det: f64,
}

impl CellGeometry {
    pub(crate) fn new(mesh: &Mesh, t: usize) -> Self {
        let [p0, p1, p2] = mesh.triangle_points(t);
        let jac = [[p1[0] - p0[0], p2[0] - p0[0]], [p1[1] - p0[1], p2[1] - p0[1]]];
        let det = jac[0][0] * jac[1][1] - jac[0][1] * jac[1][0];
        Self {
            origin: p0,
            jac,
            det,
        }
    }

    pub(crate) fn det(&self) -> f64 {
        self.det
    }

    pub(crate) fn map_point(&self, [x, y]: Point) -> Point {
        [
            self.origin[0] + self.jac[0][0] * x + self.jac[0][1] * y,
            self.origin[1] + self.jac[1][0] * x + self.jac[1][1] * y,
        ]
    }

    /// Physical gradient from a reference gradient (`J^{-T} ĝ`).
    pub(crate) fn map_grad(&self, g: [f64; 2]) -> [f64; 2] {
        let j = &self.jac;
        [
            (j[1][1] * g[0] - j[1][0] * g[1]) / self.det,
            (-j[0][1] * g[0] + j[0][0] * g[1]) / self.det,
        ]
    }
}

/// Basis values tabulated at the points of a rule.
struct Tabulation {
    weights: Vec<f64>,
    points: Vec<Point>,
    p1: Vec<[f64; 3]>,
    p2: Vec<[f64; 6]>,
    p2_grad: Vec<[[f64; 2]; 6]>,
}

impl Tabulation {
    fn new(rule: &QuadratureRule) -> Self {
        Self {
            weights: rule.weights().to_vec(),
            points: rule.points().to_vec(),
            p1: rule.points().iter().map(|&p| p1_values(p)).collect(),
            p2: rule.points().iter().map(|&p| p2_values(p)).collect(),
            p2_grad: rule.points().iter().map(|&p| p2_gradients(p)).collect(),
        }
    }

    fn scalar_values(&self, space: Space, q: usize) -> &[f64] {
        match space {
            Space::P1 => &self.p1[q],
            Space::P2 | Space::P2Vec => &self.p2[q],
        }
    }
}

fn mapped_p1_grads(geo: &CellGeometry) -> [[f64; 2]; 3] {
    p1_gradients().map(|g| geo.map_grad(g))
}

fn mapped_p2_grads(geo: &CellGeometry, ref_grads: &[[f64; 2]; 6]) -> [[f64; 2]; 6] {
    ref_grads.map(|g| geo.map_grad(g))
}

fn scatter(builder: &mut TripletBuilder, rows: &[usize], cols: &[usize], local: &[f64]) {
    let nc = cols.len();
    for (i, &r) in rows.iter().enumerate() {
        for (j, &c) in cols.iter().enumerate() {
            builder.push(r, c, local[i * nc + j]);
        }
    }
}

/// `∫ c φ_i φ_j`; block diagonal over components for [`Space::P2Vec`].
pub fn assemble_mass(mesh: &Mesh, space: Space, coefficient: f64) -> CsrMatrix {
    let dofs = DofMap::new(mesh, space);
    let tab = Tabulation::new(&QuadratureRule::for_degree(MATRIX_QUAD_DEGREE));
    let ns = if space == Space::P1 { 3 } else { 6 };
    let mut builder = TripletBuilder::with_capacity(
        dofs.num_dofs(),
        dofs.num_dofs(),
        mesh.num_triangles() * dofs.local_size() * dofs.local_size(),
    );
    let mut local = vec![0.0; ns * ns];
    for t in 0..mesh.num_triangles() {
        let geo = CellGeometry::new(mesh, t);
        local.iter_mut().for_each(|v| *v = 0.0);
        for q in 0..tab.weights.len() {
            let w = tab.weights[q] * geo.det() * coefficient;
            let phi = tab.scalar_values(space, q);
            for i in 0..ns {
                for j in 0..ns {
                    local[i * ns + j] += w * phi[i] * phi[j];
                }
            }
        }
        let cell = dofs.cell(t);
        if space == Space::P2Vec {
            scatter(&mut builder, &cell[..6], &cell[..6], &local);
            scatter(&mut builder, &cell[6..], &cell[6..], &local);
        } else {
            scatter(&mut builder, cell, cell, &local);
        }
    }
    builder.build()
}

/// P1 component stiffness matrices `K[a][b]_{ij} = ∫ ∂_a q_i ∂_b q_j`, so
/// that `Σ_ab A_ab K[a][b]` is the matrix of `⟨A ∇p, ∇q⟩`.
pub fn assemble_stiffness_components(mesh: &Mesh) -> [[CsrMatrix; 2]; 2] {
    let dofs = DofMap::new(mesh, Space::P1);
    let n = dofs.num_dofs();
    let mut builders: Vec<TripletBuilder> = (0..4).map(|_| TripletBuilder::new(n, n)).collect();
    for t in 0..mesh.num_triangles() {
        let geo = CellGeometry::new(mesh, t);
        let grads = mapped_p1_grads(&geo);
        let area = 0.5 * geo.det();
        let cell = dofs.cell(t);
        for a in 0..2 {
            for b in 0..2 {
                let builder = &mut builders[2 * a + b];
                for i in 0..3 {
                    for j in 0..3 {
                        builder.push(cell[i], cell[j], area * grads[i][a] * grads[j][b]);
                    }
                }
            }
        }
    }
    let mut it = builders.into_iter().map(TripletBuilder::build);
    let mut next = || it.next().unwrap();
    [[next(), next()], [next(), next()]]
}

/// `⟨A ∇p, ∇q⟩` on P1 for a constant SPD tensor `A`.
pub fn assemble_weighted_stiffness(mesh: &Mesh, tensor: &Tensor2) -> Result<CsrMatrix> {
    if !tensor::is_spd(tensor) {
        return Err(BiotError::InvalidInput(format!(
            "stiffness tensor {tensor:?} is not symmetric positive definite"
        )));
    }
    let k = assemble_stiffness_components(mesh);
    combine_components(&k, tensor)
}

/// `Σ_ab A_ab C[a][b]`.
pub fn combine_components(components: &[[CsrMatrix; 2]; 2], tensor: &Tensor2) -> Result<CsrMatrix> {
    CsrMatrix::linear_combination(&[
        (tensor[0][0], &components[0][0]),
        (tensor[0][1], &components[0][1]),
        (tensor[1][0], &components[1][0]),
        (tensor[1][1], &components[1][1]),
    ])
}

/// `2μ ∫ ε(u):ε(v) + λ ∫ (∇·u)(∇·v)` on the P2 vector space.
pub fn assemble_elasticity(mesh: &Mesh, mu: f64, lambda: f64) -> CsrMatrix {
    let dofs = DofMap::new(mesh, Space::P2Vec);
    let tab = Tabulation::new(&QuadratureRule::for_degree(MATRIX_QUAD_DEGREE));
    let n = dofs.num_dofs();
    let mut builder = TripletBuilder::with_capacity(n, n, mesh.num_triangles() * 144);
    let mut local = [0.0; 144];
    for t in 0..mesh.num_triangles() {
        let geo = CellGeometry::new(mesh, t);
        local.iter_mut().for_each(|v| *v = 0.0);
        for q in 0..tab.weights.len() {
            let w = tab.weights[q] * geo.det();
            let g = mapped_p2_grads(&geo, &tab.p2_grad[q]);
            // row (c, s) tests with φ_s e_c, column (d, r) is the trial φ_r e_d
            for c in 0..2 {
                for s in 0..6 {
                    for d in 0..2 {
                        for r in 0..6 {
                            let mut v = mu * g[s][d] * g[r][c] + lambda * g[s][c] * g[r][d];
                            if c == d {
                                v += mu * (g[s][0] * g[r][0] + g[s][1] * g[r][1]);
                            }
                            local[(6 * c + s) * 12 + 6 * d + r] += w * v;
                        }
                    }
                }
            }
        }
        let cell = dofs.cell(t);
        scatter(&mut builder, cell, cell, &local);
    }
    builder.build()
}

/// `B_ij = ∫ q_i ∇·Φ_j` (P1 rows, P2-vector columns).
pub fn assemble_div_coupling(mesh: &Mesh) -> CsrMatrix {
    let p1 = DofMap::new(mesh, Space::P1);
    let p2 = DofMap::new(mesh, Space::P2Vec);
    let tab = Tabulation::new(&QuadratureRule::for_degree(MATRIX_QUAD_DEGREE));
    let mut builder = TripletBuilder::new(p1.num_dofs(), p2.num_dofs());
    let mut local = [0.0; 36];
    for t in 0..mesh.num_triangles() {
        let geo = CellGeometry::new(mesh, t);
        local.iter_mut().for_each(|v| *v = 0.0);
        for q in 0..tab.weights.len() {
            let w = tab.weights[q] * geo.det();
            let g = mapped_p2_grads(&geo, &tab.p2_grad[q]);
            let psi = &tab.p1[q];
            for i in 0..3 {
                for c in 0..2 {
                    for s in 0..6 {
                        local[i * 12 + 6 * c + s] += w * psi[i] * g[s][c];
                    }
                }
            }
        }
        scatter(&mut builder, p1.cell(t), p2.cell(t), &local);
    }
    builder.build()
}

/// Component coupling matrices `G[a][b]_{ij} = ∫ (Φ_i)_a ∂_b q_j`, so that
/// `Σ_ab A_ab G[a][b]` is the matrix of `⟨A ∇p, v⟩`.
pub fn assemble_grad_components(mesh: &Mesh) -> [[CsrMatrix; 2]; 2] {
    let p1 = DofMap::new(mesh, Space::P1);
    let p2 = DofMap::new(mesh, Space::P2Vec);
    let tab = Tabulation::new(&QuadratureRule::for_degree(MATRIX_QUAD_DEGREE));
    let (nr, nc) = (p2.num_dofs(), p1.num_dofs());
    let mut builders: Vec<TripletBuilder> = (0..4).map(|_| TripletBuilder::new(nr, nc)).collect();
    for t in 0..mesh.num_triangles() {
        let geo = CellGeometry::new(mesh, t);
        let grads = mapped_p1_grads(&geo);
        // ∫ φ_s over the cell for each scalar P2 function (grad q is constant)
        let mut phi_int = [0.0; 6];
        for q in 0..tab.weights.len() {
            let w = tab.weights[q] * geo.det();
            for (acc, v) in phi_int.iter_mut().zip(&tab.p2[q]) {
                *acc += w * v;
            }
        }
        let rows = p2.cell(t);
        let cols = p1.cell(t);
        for a in 0..2 {
            for b in 0..2 {
                let builder = &mut builders[2 * a + b];
                for s in 0..6 {
                    for j in 0..3 {
                        builder.push(rows[6 * a + s], cols[j], phi_int[s] * grads[j][b]);
                    }
                }
            }
        }
    }
    let mut it = builders.into_iter().map(TripletBuilder::build);
    let mut next = || it.next().unwrap();
    [[next(), next()], [next(), next()]]
}

/// `G_ij = ∫ Φ_i · (A ∇q_j)` for any constant 2×2 tensor.
pub fn assemble_grad_coupling(mesh: &Mesh, tensor: &Tensor2) -> Result<CsrMatrix> {
    combine_components(&assemble_grad_components(mesh), tensor)
}

/// `∫ f φ_i` for a scalar space.
pub fn assemble_load_scalar(
    mesh: &Mesh,
    space: Space,
    f: impl Fn(Point) -> f64,
    quad_degree: usize,
) -> Vec<f64> {
    assert!(space != Space::P2Vec, "use assemble_load_vector for vector fields");
    let dofs = DofMap::new(mesh, space);
    let tab = Tabulation::new(&QuadratureRule::for_degree(quad_degree));
    let mut out = vec![0.0; dofs.num_dofs()];
    for t in 0..mesh.num_triangles() {
        let geo = CellGeometry::new(mesh, t);
        let cell = dofs.cell(t);
        for q in 0..tab.weights.len() {
            let fx = f(geo.map_point(tab.points[q]));
            let w = tab.weights[q] * geo.det() * fx;
            for (&g, phi) in cell.iter().zip(tab.scalar_values(space, q)) {
                out[g] += w * phi;
            }
        }
    }
    out
}

/// `∫ f · Φ_i` on the P2 vector space.
pub fn assemble_load_vector(
    mesh: &Mesh,
    f: impl Fn(Point) -> [f64; 2],
    quad_degree: usize,
) -> Vec<f64> {
    let dofs = DofMap::new(mesh, Space::P2Vec);
    let tab = Tabulation::new(&QuadratureRule::for_degree(quad_degree));
    let mut out = vec![0.0; dofs.num_dofs()];
    for t in 0..mesh.num_triangles() {
        let geo = CellGeometry::new(mesh, t);
        let cell = dofs.cell(t);
        for q in 0..tab.weights.len() {
            let fx = f(geo.map_point(tab.points[q]));
            let w = tab.weights[q] * geo.det();
            for (s, phi) in tab.p2[q].iter().enumerate() {
                out[cell[s]] += w * fx[0] * phi;
                out[cell[6 + s]] += w * fx[1] * phi;
            }
        }
    }
    out
}

/// Symmetric elimination of homogeneous Dirichlet conditions: constrained
/// rows and columns are zeroed, a unit diagonal is inserted and the matching
/// right-hand side entries are zeroed.
pub fn apply_dirichlet(matrix: &CsrMatrix, rhs: &mut [f64], mask: &[bool]) -> Result<CsrMatrix> {
    let n = matrix.nrows();
    if matrix.ncols() != n || mask.len() != n || rhs.len() != n {
        return Err(BiotError::DimensionMismatch {
            expected: n,
            got: mask.len().min(rhs.len()),
        });
    }
    let mut builder = TripletBuilder::with_capacity(n, n, matrix.nnz());
    for r in 0..n {
        if mask[r] {
            builder.push(r, r, 1.0);
            rhs[r] = 0.0;
            continue;
        }
        let (cols, vals) = matrix.row(r);
        for (&c, &v) in cols.iter().zip(vals) {
            if !mask[c] {
                builder.push(r, c, v);
            }
        }
    }
    Ok(builder.build())
}

/// Zeroes the constrained entries of a vector.
pub fn zero_masked(v: &mut [f64], mask: &[bool]) {
    for (x, &m) in v.iter_mut().zip(mask) {
        if m {
            *x = 0.0;
        }
    }
}

/// Nodal interpolant of a scalar function.
pub fn interpolate_scalar(mesh: &Mesh, space: Space, f: impl Fn(Point) -> f64) -> Vec<f64> {
    mesh.node_coordinates(space).into_iter().map(f).collect()
}

/// Nodal interpolant of a vector function on the P2 vector space.
pub fn interpolate_vector(mesh: &Mesh, f: impl Fn(Point) -> [f64; 2]) -> Vec<f64> {
    let values: Vec<[f64; 2]> = mesh
        .node_coordinates(Space::P2Vec)
        .into_iter()
        .map(f)
        .collect();
    values
        .iter()
        .map(|v| v[0])
        .chain(values.iter().map(|v| v[1]))
        .collect()
}

/// Evaluates a scalar finite element field at reference point `xi` of cell `t`.
fn eval_scalar(dofs: &DofMap, field: &[f64], t: usize, phi: &[f64]) -> f64 {
    dofs.cell(t).iter().zip(phi).map(|(&g, p)| field[g] * p).sum()
}

/// `‖u_h − u‖_{L²}` for a scalar P1 or P2 field.
pub fn l2_error_scalar(
    mesh: &Mesh,
    space: Space,
    field: &[f64],
    exact: impl Fn(Point) -> f64,
    quad_degree: usize,
) -> Result<f64> {
    let dofs = DofMap::new(mesh, space);
    if field.len() != dofs.num_dofs() || space == Space::P2Vec {
        return Err(BiotError::DimensionMismatch {
            expected: dofs.num_dofs(),
            got: field.len(),
        });
    }
    let tab = Tabulation::new(&QuadratureRule::for_degree(quad_degree));
    let mut sum = 0.0;
    for t in 0..mesh.num_triangles() {
        let geo = CellGeometry::new(mesh, t);
        for q in 0..tab.weights.len() {
            let uh = eval_scalar(&dofs, field, t, tab.scalar_values(space, q));
            let e = uh - exact(geo.map_point(tab.points[q]));
            sum += tab.weights[q] * geo.det() * e * e;
        }
    }
    Ok(sum.sqrt())
}

/// `‖u_h − u‖_{L²}` for a P2 vector field.
pub fn l2_error_vector(
    mesh: &Mesh,
    field: &[f64],
    exact: impl Fn(Point) -> [f64; 2],
    quad_degree: usize,
) -> Result<f64> {
    let dofs = DofMap::new(mesh, Space::P2Vec);
    if field.len() != dofs.num_dofs() {
        return Err(BiotError::DimensionMismatch {
            expected: dofs.num_dofs(),
            got: field.len(),
        });
    }
    let tab = Tabulation::new(&QuadratureRule::for_degree(quad_degree));
    let mut sum = 0.0;
    for t in 0..mesh.num_triangles() {
        let geo = CellGeometry::new(mesh, t);
        let cell = dofs.cell(t);
        for q in 0..tab.weights.len() {
            let phi = &tab.p2[q];
            let ux: f64 = (0..6).map(|s| field[cell[s]] * phi[s]).sum();
            let uy: f64 = (0..6).map(|s| field[cell[6 + s]] * phi[s]).sum();
            let u = exact(geo.map_point(tab.points[q]));
            let (ex, ey) = (ux - u[0], uy - u[1]);
            sum += tab.weights[q] * geo.det() * (ex * ex + ey * ey);
        }
    }
    Ok(sum.sqrt())
}
