//! Closed-form side: macroscopic laws, exact determinant solutions,
//! residual checks and characteristics.

mod burgers;
mod heat;
mod laws;
mod residual;

pub use burgers::{burgers_characteristics, zero_start_profile};
pub use heat::{
    acp_from_initial, acp_from_initial_with_viscosity, characteristic_polynomial, heat_evolve_acp, heat_evolve_qdet,
    lamperti_map, lamperti_time, qdet_from_initial, qdet_from_initial_with_viscosity, radial_polynomial,
    LampertiImage, LampertiVariant, PolynomialInZ, RadialPolynomial,
};
pub use laws::{
    erfc_edge, erfc_edge_bin_average, free_ginibre_laws, ginibre_finite_n_bin_average, ginibre_finite_n_density,
    ginibre_macroscopic, green_with_constant, regulated_g11, regulated_overlap_density, wigner_density, wigner_green,
};
pub use residual::{
    pde_residual_acp, pde_residual_qdet, stationary_burgers_residual, stationary_burgers_residual_with_constant,
};
