//! Reference elements, quadrature, degree-of-freedom maps and assembly.

mod assembly;
mod dofmap;
mod quadrature;
mod reference;

pub use assembly::{
    apply_dirichlet, assemble_div_coupling, assemble_elasticity, assemble_grad_components,
    assemble_grad_coupling, assemble_load_scalar, assemble_load_vector, assemble_mass,
    assemble_stiffness_components, assemble_weighted_stiffness, combine_components,
    interpolate_scalar, interpolate_vector, l2_error_scalar, l2_error_vector, zero_masked,
    LOAD_QUAD_DEGREE, MATRIX_QUAD_DEGREE,
};
pub use dofmap::DofMap;
pub use quadrature::{gauss_legendre_unit, QuadratureRule};
pub use reference::{p1_gradients, p1_values, p2_gradients, p2_values, ElementKind, ReferenceElement};
