//! Analytic/numerical treatment of the backbone master equations: transfer
//! matrices, tracked determinant roots, self-consistent vertex weights, and
//! the exact return-probability iterations.

mod cpoly;
mod drift;
mod honeycomb;
mod transfer;

pub use cpoly::CPoly;
pub use drift::{
    backbone_drift_finite_difference, backbone_drift_of_system, graph_drift_from,
    h3_gaussian_profile, hecke_drift, sigma_bar_drift_exact, sigma_bar_root_closed_form,
    smallest_root, smallest_root_series, solve_rho_fixed_point, solve_rho_fixed_point_with,
    DriftResult,
};
pub use honeycomb::{
    fit_geometric_decay, honeycomb_c_paper, honeycomb_lambda_exact, honeycomb_return_profile,
    honeycomb_return_profile_rational, sigma_return_probability_exact,
};
pub use transfer::{build_transfer_matrix, transfer_dimension, TransferMatrixSpec, TransferSystem};
