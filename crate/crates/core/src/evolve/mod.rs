//! Moving-mesh integration of the time-dependent problem.
//!
//! The unknowns are physical time t, the solution u and the node positions X,
//! all functions of a computational time τ. Time is dilated by
//! g(u) = 1/max M(u) with the monitor M(u) = (1-u)^{-2} + floor, and the mesh
//! follows a relaxed equidistribution law
//!
//! ```text
//! -X_τξξ = (g/ε) (M X_ξ)_ξ
//! ```
//!
//! so nodes gather where the solution approaches 1.

pub mod assemble;
pub mod integrate;
pub mod monitor;
pub mod stencils;

pub use assemble::{assemble, robin_edge_value, BlockOperator, DaeVector};
pub use integrate::{integrate, step, LedgerRow, Snapshot, StepOutcome, Stepper, Trajectory, TrajectoryStatus};
pub use monitor::{monitor, smooth_monitor, time_dilation};
pub use stencils::{stencils, Stencils};

use crate::{Error, Result};

#[derive(Debug, Clone, PartialEq)]
pub struct SchemeConfig {
    /// Mesh relaxation time ε.
    pub epsilon: f64,
    /// Initial computational step.
    pub dtau: f64,
    /// Largest computational step the controller may reach.
    pub dtau_max: f64,
    pub monitor_floor: f64,
    /// One pass of three-point averaging of the monitor inside the mesh flux.
    pub smoothing: bool,
    /// δ_q: a run counts as quenched once max u ≥ 1 - δ_q.
    pub quench_guard: f64,
    /// Threshold on ‖Δu/Δt‖∞ for the steady stop.
    pub steady_tol: f64,
    pub t_final: f64,
    pub max_steps: usize,
    /// Keep a mesh snapshot every this many accepted steps; 0 keeps none.
    pub snapshot_every: usize,
    /// Pin the mesh to its initial positions.
    pub frozen_mesh: bool,
    /// Per-step bound on the change of u in absolute terms.
    pub du_abs: f64,
    /// Per-step bound on the change of u relative to the gap 1 - max u.
    pub du_rel: f64,
}

impl Default for SchemeConfig {
    fn default() -> Self {
        Self {
            epsilon: 1e-2,
            dtau: 1e-3,
            dtau_max: 5e-2,
            monitor_floor: 1.0,
            smoothing: true,
            quench_guard: 1e-3,
            steady_tol: 1e-6,
            t_final: 40.0,
            max_steps: 200_000,
            snapshot_every: 0,
            frozen_mesh: false,
            du_abs: 1e-2,
            du_rel: 5e-2,
        }
    }
}

impl SchemeConfig {
    pub fn validate(&self) -> Result<()> {
        let positive = [
            ("epsilon", self.epsilon),
            ("dtau", self.dtau),
            ("dtau_max", self.dtau_max),
            ("steady_tol", self.steady_tol),
            ("t_final", self.t_final),
            ("du_abs", self.du_abs),
            ("du_rel", self.du_rel),
        ];
        for (name, v) in positive {
            if !(v > 0.0) || !v.is_finite() {
                return Err(Error::InvalidParameter(format!("{name} must be positive")));
            }
        }
        if !(self.monitor_floor >= 0.0) {
            return Err(Error::InvalidParameter("monitor_floor must be nonnegative".into()));
        }
        if !(self.quench_guard > 0.0 && self.quench_guard < 1.0) {
            return Err(Error::InvalidParameter("quench_guard must lie in (0, 1)".into()));
        }
        if self.max_steps == 0 {
            return Err(Error::InvalidParameter("max_steps must be positive".into()));
        }
        Ok(())
    }
}
