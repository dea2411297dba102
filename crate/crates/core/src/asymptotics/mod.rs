//! Asymptotic zero distribution of `H_{n,n,n}` for the symmetric shifts
//! `(-c, 0, c)` with `c = chat sqrt(n)`, in the scaled variable `x / sqrt(n)`.

mod curve;
mod measure;
mod model;
mod support;

pub use curve::{s_xi_identity_residual, solve_branches, solve_s_branches, solve_xi_branches, BranchValues, Curve};
pub use measure::SampledMeasure;
pub use model::{
    density_nu, density_v, discrete_potential, ks_distance, log_potential, variational_report, DensitySample,
    SymmetricModel, VariationalReport, BOUNDARY_EPS,
};
pub use support::{
    critical_c, discriminant_at, discriminant_cubic, support_intervals, transition_residual, Phase, SupportModel,
};
