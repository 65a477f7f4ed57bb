//! Steady states: bifurcation branches, the pull-in voltage, bounds and the
//! principal eigenpair.

pub mod bounds;
pub mod branch;
pub mod eigen;
pub mod pohozaev;
pub mod radial;

pub use bounds::{
    bounds_report, local_fold, mu_star_lower_bound, pohozaev_lower_bound, q_alpha, quench_threshold_lambda,
    upper_bound_lambda_star, BoundsReport, QuenchThreshold,
};
pub use branch::{
    branch_m_grid, dirichlet_limit_fold, dirichlet_limit_lambda, local_branch_point, local_residuals,
    lower_branch_at_lambda, nonlocal_residuals,
    nonlocal_branch_point, reconstruct_profile, trace_branch, trace_default_branch, Branch, BranchPoint,
    SteadyProfile,
};
pub use eigen::{principal_eigenpair, EigenPair};
pub use pohozaev::{pohozaev_residual, pohozaev_sides, PohozaevSides};
pub use radial::{
    radial_branch_point, radial_fold, radial_point_at_lambda, radial_point_at_mu, radial_profile,
    trace_radial_branch, RadialBranch, RadialPoint,
};
