//! Numerical laboratory for the nonlocal MEMS equation with Robin support
//!
//! ```text
//! u_t = Δu + λ / ((1-u)^2 (1 + α ∫_Ω dx/(1-u))^2),   ∂u/∂ν + βu = 0 on ∂Ω
//! ```
//!
//! on the interval (-1, 1) or the ball B_R. The crate covers
//!
//! * steady bifurcation branches and the pull-in voltage ([`steady`]),
//! * closed-form bounds on the pull-in voltage and the Robin principal eigenpair,
//! * the moving-mesh time integrator with sundial time rescaling ([`evolve`]),
//! * quench-time extrapolation, rate and profile fits ([`quench`]),
//! * a config-driven batch runner that writes CSV data ([`cli`]).

pub mod cli;
pub mod error;
pub mod evolve;
pub mod numerics;
pub mod params;
pub mod quadrature;
pub mod quench;
pub mod steady;

pub use error::{Error, Result};
pub use params::{
    geometry_facts, initial_state, FieldState, Geometry, GeometryFacts, InitialProfile, MeshState,
    ProblemParams,
};
