//! Independent reference implementations used as test oracles: dense
//! assembly on physical triangles with barycentric bases and collapsed
//! Gauss quadrature, dense Gaussian elimination and finite differences.

#![allow(dead_code, clippy::needless_range_loop)]

pub mod mms;

use biot_core::Mesh;

pub type Dense = Vec<Vec<f64>>;

pub fn zeros(r: usize, c: usize) -> Dense {
    vec![vec![0.0; c]; r]
}

/// Gauss-Legendre nodes and weights on [0, 1] by Newton on `P_m`.
pub fn gauss_01(m: usize) -> Vec<(f64, f64)> {
    let mut out = Vec::with_capacity(m);
    for i in 0..m {
        let mut x = (std::f64::consts::PI * (i as f64 + 0.75) / (m as f64 + 0.5)).cos();
        let mut dp = 0.0;
        for _ in 0..100 {
            let (mut p0, mut p1) = (1.0, x);
            for k in 2..=m {
                let p2 = ((2 * k - 1) as f64 * x * p1 - (k - 1) as f64 * p0) / k as f64;
                p0 = p1;
                p1 = p2;
            }
            dp = m as f64 * (x * p1 - p0) / (x * x - 1.0);
            let dx = p1 / dp;
            x -= dx;
            if dx.abs() < 1e-16 {
                break;
            }
        }
        let w = 2.0 / ((1.0 - x * x) * dp * dp);
        out.push((0.5 * (x + 1.0), 0.5 * w));
    }
    out
}

/// Points `(λ0, λ1, λ2)` and weights (summing to 1) of a collapsed tensor
/// Gauss rule on a triangle.
pub fn triangle_rule(m: usize) -> Vec<([f64; 3], f64)> {
    let g = gauss_01(m);
    let mut out = Vec::new();
    for &(u, wu) in &g {
        for &(v, wv) in &g {
            let (l1, l2) = (u, v * (1.0 - u));
            out.push(([1.0 - l1 - l2, l1, l2], 2.0 * wu * wv * (1.0 - u)));
        }
    }
    out
}

/// Geometry of one physical triangle.
pub struct Cell {
    pub pts: [[f64; 2]; 3],
    pub area: f64,
    /// Gradients of the barycentric coordinates.
    pub grad_l: [[f64; 2]; 3],
}

impl Cell {
    pub fn new(pts: [[f64; 2]; 3]) -> Self {
        let [a, b, c] = pts;
        let det = (b[0] - a[0]) * (c[1] - a[1]) - (c[0] - a[0]) * (b[1] - a[1]);
        let area = 0.5 * det.abs();
        // λ_i vanishes on the opposite edge (j, k)
        let mut grad_l = [[0.0; 2]; 3];
        for i in 0..3 {
            let (pj, pk) = (pts[(i + 1) % 3], pts[(i + 2) % 3]);
            grad_l[i] = [(pj[1] - pk[1]) / det, (pk[0] - pj[0]) / det];
        }
        Self { pts, area, grad_l }
    }

    pub fn point(&self, l: [f64; 3]) -> [f64; 2] {
        let mut x = [0.0; 2];
        for i in 0..3 {
            x[0] += l[i] * self.pts[i][0];
            x[1] += l[i] * self.pts[i][1];
        }
        x
    }

    pub fn p1(&self, l: [f64; 3]) -> [f64; 3] {
        l
    }

    pub fn p1_grad(&self) -> [[f64; 2]; 3] {
        self.grad_l
    }

    /// Vertices, then edges (0,1), (1,2), (2,0).
    pub fn p2(&self, l: [f64; 3]) -> [f64; 6] {
        [
            l[0] * (2.0 * l[0] - 1.0),
            l[1] * (2.0 * l[1] - 1.0),
            l[2] * (2.0 * l[2] - 1.0),
            4.0 * l[0] * l[1],
            4.0 * l[1] * l[2],
            4.0 * l[2] * l[0],
        ]
    }

    pub fn p2_grad(&self, l: [f64; 3]) -> [[f64; 2]; 6] {
        let g = self.grad_l;
        let mut out = [[0.0; 2]; 6];
        for i in 0..3 {
            for d in 0..2 {
                out[i][d] = (4.0 * l[i] - 1.0) * g[i][d];
            }
        }
        for (k, (a, b)) in [(0, 1), (1, 2), (2, 0)].into_iter().enumerate() {
            for d in 0..2 {
                out[3 + k][d] = 4.0 * (l[a] * g[b][d] + l[b] * g[a][d]);
            }
        }
        out
    }
}

pub fn cells(mesh: &Mesh) -> Vec<Cell> {
    (0..mesh.num_triangles())
        .map(|t| {
            let tri = mesh.triangles()[t];
            Cell::new(tri.map(|v| mesh.vertices()[v]))
        })
        .collect()
}

/// Global scalar P2 indices of triangle `t`, found by searching the edge list.
pub fn p2_indices(mesh: &Mesh, t: usize) -> [usize; 6] {
    let tri = mesh.triangles()[t];
    let nv = mesh.num_vertices();
    let find = |a: usize, b: usize| {
        mesh.edges()
            .iter()
            .position(|e| (e[0] == a && e[1] == b) || (e[0] == b && e[1] == a))
            .expect("edge present")
    };
    [
        tri[0],
        tri[1],
        tri[2],
        nv + find(tri[0], tri[1]),
        nv + find(tri[1], tri[2]),
        nv + find(tri[2], tri[0]),
    ]
}

pub fn p2_scalar_count(mesh: &Mesh) -> usize {
    mesh.num_vertices() + mesh.num_edges()
}

const RULE: usize = 6;

pub struct DenseOperators {
    pub mass_p: Dense,
    pub mass_u: Dense,
    pub stiffness: [[Dense; 2]; 2],
    pub elasticity: Dense,
    pub div: Dense,
    pub grad: [[Dense; 2]; 2],
}

pub fn dense_operators(mesh: &Mesh, mu: f64, lambda: f64) -> DenseOperators {
    let np = mesh.num_vertices();
    let ns = p2_scalar_count(mesh);
    let nu = 2 * ns;
    let rule = triangle_rule(RULE);
    let mut ops = DenseOperators {
        mass_p: zeros(np, np),
        mass_u: zeros(nu, nu),
        stiffness: std::array::from_fn(|_| std::array::from_fn(|_| zeros(np, np))),
        elasticity: zeros(nu, nu),
        div: zeros(np, nu),
        grad: std::array::from_fn(|_| std::array::from_fn(|_| zeros(nu, np))),
    };
    for (t, cell) in cells(mesh).iter().enumerate() {
        let pv = mesh.triangles()[t];
        let sv = p2_indices(mesh, t);
        let gq = cell.p1_grad();
        for &(l, w) in &rule {
            let w = w * cell.area;
            let q = cell.p1(l);
            let phi = cell.p2(l);
            let gphi = cell.p2_grad(l);
            for i in 0..3 {
                for j in 0..3 {
                    ops.mass_p[pv[i]][pv[j]] += w * q[i] * q[j];
                    for a in 0..2 {
                        for b in 0..2 {
                            ops.stiffness[a][b][pv[i]][pv[j]] += w * gq[i][a] * gq[j][b];
                        }
                    }
                }
            }
            // vector basis k = (c, s): φ_s e_c, gradient row c equals ∇φ_s
            let vec_grad = |c: usize, s: usize| {
                let mut g = [[0.0; 2]; 2];
                g[c] = gphi[s];
                g
            };
            for c in 0..2 {
                for s in 0..6 {
                    let row = c * ns + sv[s];
                    let gi = vec_grad(c, s);
                    let eps_i = sym(gi);
                    let div_i = gi[0][0] + gi[1][1];
                    for d in 0..2 {
                        for r in 0..6 {
                            let col = d * ns + sv[r];
                            if c == d {
                                ops.mass_u[row][col] += w * phi[s] * phi[r];
                            }
                            let gj = vec_grad(d, r);
                            let eps_j = sym(gj);
                            let div_j = gj[0][0] + gj[1][1];
                            let mut e = 0.0;
                            for a in 0..2 {
                                for b in 0..2 {
                                    e += eps_i[a][b] * eps_j[a][b];
                                }
                            }
                            ops.elasticity[row][col] += w * (2.0 * mu * e + lambda * div_i * div_j);
                        }
                    }
                    for j in 0..3 {
                        ops.div[pv[j]][row] += w * q[j] * div_i;
                        for b in 0..2 {
                            ops.grad[c][b][row][pv[j]] += w * phi[s] * gq[j][b];
                        }
                    }
                }
            }
        }
    }
    ops
}

fn sym(g: [[f64; 2]; 2]) -> [[f64; 2]; 2] {
    [
        [g[0][0], 0.5 * (g[0][1] + g[1][0])],
        [0.5 * (g[0][1] + g[1][0]), g[1][1]],
    ]
}

pub fn max_abs_diff(a: &Dense, b: &Dense) -> f64 {
    assert_eq!(a.len(), b.len());
    a.iter()
        .zip(b)
        .flat_map(|(ra, rb)| {
            assert_eq!(ra.len(), rb.len());
            ra.iter().zip(rb).map(|(x, y)| (x - y).abs())
        })
        .fold(0.0, f64::max)
}

pub fn combine(components: &[[Dense; 2]; 2], a: [[f64; 2]; 2]) -> Dense {
    let (r, c) = (components[0][0].len(), components[0][0][0].len());
    let mut out = zeros(r, c);
    for i in 0..2 {
        for j in 0..2 {
            for (orow, crow) in out.iter_mut().zip(&components[i][j]) {
                for (o, v) in orow.iter_mut().zip(crow) {
                    *o += a[i][j] * v;
                }
            }
        }
    }
    out
}

pub fn matvec(a: &Dense, x: &[f64]) -> Vec<f64> {
    a.iter().map(|row| row.iter().zip(x).map(|(a, b)| a * b).sum()).collect()
}

/// Gaussian elimination with partial pivoting.
pub fn dense_solve(mut a: Dense, mut b: Vec<f64>) -> Vec<f64> {
    let n = b.len();
    for k in 0..n {
        let piv = (k..n)
            .max_by(|&i, &j| a[i][k].abs().total_cmp(&a[j][k].abs()))
            .unwrap();
        a.swap(k, piv);
        b.swap(k, piv);
        for i in k + 1..n {
            let f = a[i][k] / a[k][k];
            if f != 0.0 {
                for j in k..n {
                    a[i][j] -= f * a[k][j];
                }
                b[i] -= f * b[k];
            }
        }
    }
    let mut x = vec![0.0; n];
    for k in (0..n).rev() {
        let s: f64 = (k + 1..n).map(|j| a[k][j] * x[j]).sum();
        x[k] = (b[k] - s) / a[k][k];
    }
    x
}

/// Fourth-order central first derivative.
pub fn d1(f: impl Fn(f64) -> f64, x: f64, h: f64) -> f64 {
    (f(x - 2.0 * h) - 8.0 * f(x - h) + 8.0 * f(x + h) - f(x + 2.0 * h)) / (12.0 * h)
}

/// Fourth-order central second derivative.
pub fn d2(f: impl Fn(f64) -> f64, x: f64, h: f64) -> f64 {
    (-f(x - 2.0 * h) + 16.0 * f(x - h) - 30.0 * f(x) + 16.0 * f(x + h) - f(x + 2.0 * h))
        / (12.0 * h * h)
}

pub fn rel_diff(a: &[f64], b: &[f64]) -> f64 {
    let num: f64 = a.iter().zip(b).map(|(x, y)| (x - y) * (x - y)).sum::<f64>().sqrt();
    let den: f64 = b.iter().map(|y| y * y).sum::<f64>().sqrt();
    if den == 0.0 {
        num
    } else {
        num / den
    }
}

/// Sixth-order central first derivative.
pub fn d1_6(f: impl Fn(f64) -> f64, x: f64, h: f64) -> f64 {
    (-f(x - 3.0 * h) + 9.0 * f(x - 2.0 * h) - 45.0 * f(x - h) + 45.0 * f(x + h)
        - 9.0 * f(x + 2.0 * h)
        + f(x + 3.0 * h))
        / (60.0 * h)
}

/// Sixth-order central second derivative.
pub fn d2_6(f: impl Fn(f64) -> f64, x: f64, h: f64) -> f64 {
    (2.0 * f(x - 3.0 * h) - 27.0 * f(x - 2.0 * h) + 270.0 * f(x - h) - 490.0 * f(x)
        + 270.0 * f(x + h)
        - 27.0 * f(x + 2.0 * h)
        + 2.0 * f(x + 3.0 * h))
        / (180.0 * h * h)
}

/// Levels `0..=steps` of the dynamic Biot scheme with the constant
/// permeability `k0 I`, assembled directly: no kernel evaluations, the flow
/// memory is `k0 K Σ ω_i p^i` and the mechanics memory reduces to `k0 G pⁿ`.
pub fn memoryless_run(
    disc: &biot_core::Discretization,
    k0: f64,
    initial: &biot_core::InitialData,
    sources: &dyn biot_core::schemes::SourceTerms,
    steps: usize,
) -> (Vec<Vec<f64>>, Vec<Vec<f64>>) {
    use biot_core::fem::{
        apply_dirichlet, assemble_div_coupling, assemble_elasticity, assemble_grad_coupling,
        assemble_mass, assemble_weighted_stiffness,
    };
    use biot_core::sparse::{solve_general, BlockSystem, CsrMatrix, SolverOptions};
    use biot_core::Space;

    let mesh = disc.mesh();
    let prm = *disc.params();
    let tau = disc.tau();
    let tau2 = tau * tau;
    let iso = [[k0, 0.0], [0.0, k0]];
    let mp = assemble_mass(mesh, Space::P1, 1.0);
    let mu = assemble_mass(mesh, Space::P2Vec, 1.0);
    let e = assemble_elasticity(mesh, prm.mu, prm.lambda);
    let b = assemble_div_coupling(mesh);
    let k = assemble_weighted_stiffness(mesh, &iso).unwrap();
    let g = assemble_grad_coupling(mesh, &iso).unwrap();
    let (nu, np) = (mu.nrows(), mp.nrows());
    let blocks = BlockSystem::new(nu, np);
    let a00 = CsrMatrix::linear_combination(&[(prm.rho, &mu), (tau2, &e)]).unwrap();
    let a01 = CsrMatrix::linear_combination(&[(-tau2 * prm.alpha, &b.transpose()), (-tau2, &g)]).unwrap();
    let a10 = b.scaled(prm.alpha);
    let a11 = CsrMatrix::linear_combination(&[(1.0 / prm.biot_modulus, &mp), (0.5 * tau2 / prm.rho_f, &k)]).unwrap();
    let system = blocks
        .flatten([[Some(&a00), Some(&a01)], [Some(&a10), Some(&a11)]])
        .unwrap();
    let mask = blocks.join_masks(disc.displacement_mask(), disc.pressure_mask());

    let (u1, p1) = initial.first_level(tau);
    let mut us = vec![initial.displacement.clone(), u1];
    let mut ps = vec![initial.pressure.clone(), p1];
    for n in 2..=steps {
        let forcing = disc.forcing(sources, n as f64 * tau);
        // Σ_{i<n} ω_i p^i with ω_0 = 1/2
        let mut sum = vec![0.0; np];
        for (i, p) in ps.iter().enumerate() {
            let w = if i == 0 { 0.5 } else { 1.0 };
            for (s, v) in sum.iter_mut().zip(p) {
                *s += w * v;
            }
        }
        let ksum = k.matvec(&sum).unwrap();
        let inertia: Vec<f64> = us[n - 1].iter().zip(&us[n - 2]).map(|(a, b)| 2.0 * a - b).collect();
        let mi = mu.matvec(&inertia).unwrap();
        let ru: Vec<f64> = (0..nu).map(|i| prm.rho * mi[i] + tau2 * forcing.body[i]).collect();
        let mpp = mp.matvec(&ps[n - 1]).unwrap();
        let bu = b.matvec(&us[n - 1]).unwrap();
        let rp: Vec<f64> = (0..np)
            .map(|i| {
                mpp[i] / prm.biot_modulus + prm.alpha * bu[i] - tau2 / prm.rho_f * ksum[i]
                    + tau * forcing.fluid[i]
            })
            .collect();
        let mut rhs = blocks.join(&ru, &rp);
        let a = apply_dirichlet(&system, &mut rhs, &mask).unwrap();
        let x = solve_general(&a, &rhs, SolverOptions::default()).unwrap();
        let (u, p) = blocks.split(&x);
        us.push(u);
        ps.push(p);
    }
    (us, ps)
}
