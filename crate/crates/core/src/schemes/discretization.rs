use crate::error::{BiotError, Result};
use crate::fem::{
    assemble_div_coupling, assemble_elasticity, assemble_grad_components, assemble_load_scalar,
    assemble_load_vector, assemble_mass, assemble_stiffness_components, combine_components,
    LOAD_QUAD_DEGREE,
};
use crate::mesh::{Mesh, Space};
use crate::model::{kernel_difference, trapezoid_weights, BiotParameters, PermeabilityKernel};
use crate::sparse::{BlockSystem, CsrMatrix};
use crate::tensor::{self, Tensor2};

use super::SourceTerms;

/// Load vectors of one level.
#[derive(Debug, Clone, PartialEq)]
pub struct StepForcing {
    /// `∫ f₁ · Φ_i`
    pub body: Vec<f64>,
    /// `∫ f₂ q_i`
    pub fluid: Vec<f64>,
}

/// Everything that stays fixed over a run: mesh, material data, kernel, step
/// size and the assembled matrices.
#[derive(Debug, Clone)]
pub struct Discretization {
    mesh: Mesh,
    params: BiotParameters,
    kernel: PermeabilityKernel,
    tau: f64,
    pub(crate) mass_p: CsrMatrix,
    pub(crate) mass_u: CsrMatrix,
    pub(crate) elasticity: CsrMatrix,
    /// `B`, pressure rows and displacement columns.
    pub(crate) div: CsrMatrix,
    pub(crate) div_t: CsrMatrix,
    pub(crate) stiffness: [[CsrMatrix; 2]; 2],
    pub(crate) grad: [[CsrMatrix; 2]; 2],
    /// `K(A(0))`
    pub(crate) stiffness_now: CsrMatrix,
    /// `G(A(0) + ω_n ΔAⁿ)`
    pub(crate) grad_implicit: CsrMatrix,
    pub(crate) mask_u: Vec<bool>,
    pub(crate) mask_p: Vec<bool>,
}

impl Discretization {
    pub fn new(
        mesh: &Mesh,
        params: BiotParameters,
        kernel: PermeabilityKernel,
        tau: f64,
    ) -> Result<Self> {
        params.validate()?;
        if !(tau > 0.0) {
            return Err(BiotError::InvalidInput("time step must be positive".into()));
        }
        let stiffness = assemble_stiffness_components(mesh);
        let grad = assemble_grad_components(mesh);
        let div = assemble_div_coupling(mesh);
        let a0 = kernel.eval(0.0)?;
        let stiffness_now = combine_components(&stiffness, &a0)?;
        let grad_implicit = combine_components(&grad, &implicit_tensor(&kernel, tau)?)?;
        Ok(Self {
            mass_p: assemble_mass(mesh, Space::P1, 1.0),
            mass_u: assemble_mass(mesh, Space::P2Vec, 1.0),
            elasticity: assemble_elasticity(mesh, params.mu, params.lambda),
            div_t: div.transpose(),
            div,
            stiffness,
            grad,
            stiffness_now,
            grad_implicit,
            mask_u: mesh.boundary_dof_mask(Space::P2Vec),
            mask_p: mesh.boundary_dof_mask(Space::P1),
            mesh: mesh.clone(),
            params,
            kernel,
            tau,
        })
    }

    pub fn mesh(&self) -> &Mesh {
        &self.mesh
    }

    pub fn params(&self) -> &BiotParameters {
        &self.params
    }

    pub fn kernel(&self) -> &PermeabilityKernel {
        &self.kernel
    }

    pub fn tau(&self) -> f64 {
        self.tau
    }

    pub fn displacement_dofs(&self) -> usize {
        self.mass_u.nrows()
    }

    pub fn pressure_dofs(&self) -> usize {
        self.mass_p.nrows()
    }

    /// Layout `[u; p]` of the monolithic system.
    pub fn blocks(&self) -> BlockSystem {
        BlockSystem::new(self.displacement_dofs(), self.pressure_dofs())
    }

    pub fn pressure_mass(&self) -> &CsrMatrix {
        &self.mass_p
    }

    pub fn displacement_mass(&self) -> &CsrMatrix {
        &self.mass_u
    }

    pub fn displacement_mask(&self) -> &[bool] {
        &self.mask_u
    }

    pub fn pressure_mask(&self) -> &[bool] {
        &self.mask_p
    }

    /// Discrete L² norm `sqrt(pᵀ M_p p)` of a pressure vector.
    pub fn pressure_norm(&self, p: &[f64]) -> Result<f64> {
        let mp = self.mass_p.matvec(p)?;
        Ok(crate::sparse::dot(p, &mp).max(0.0).sqrt())
    }

    /// Load vectors at time `t`.
    pub fn forcing(&self, sources: &dyn SourceTerms, t: f64) -> StepForcing {
        if sources.is_zero() {
            return StepForcing {
                body: vec![0.0; self.displacement_dofs()],
                fluid: vec![0.0; self.pressure_dofs()],
            };
        }
        StepForcing {
            body: assemble_load_vector(&self.mesh, |x| sources.body_force(x, t), LOAD_QUAD_DEGREE),
            fluid: assemble_load_scalar(
                &self.mesh,
                Space::P1,
                |x| sources.fluid_source(x, t),
                LOAD_QUAD_DEGREE,
            ),
        }
    }
}

/// Tensor multiplying `pⁿ` in the mechanics memory term. The trapezoid
/// end weight is 1/2 at every level `n ≥ 1`, so it never changes.
fn implicit_tensor(kernel: &PermeabilityKernel, tau: f64) -> Result<Tensor2> {
    let a0 = kernel.eval(0.0)?;
    let end_weight = trapezoid_weights(1)[1];
    let delta = kernel_difference(kernel, 0, tau)?;
    Ok(tensor::add(&a0, &tensor::scaled(&delta, end_weight)))
}
