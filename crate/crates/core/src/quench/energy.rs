//! The Lyapunov functional along a trajectory.

use crate::params::{unit_sphere_area, FieldState, Geometry, MeshState, ProblemParams};
use crate::quadrature::{check_unquenched, gain_unchecked, integrate_nodes};
use crate::Result;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EnergyRecord {
    pub t: f64,
    /// ½∫|∇u|².
    pub dirichlet_part: f64,
    /// (β/2)∮u².
    pub boundary_part: f64,
    /// (λ/α)/(1 + α∫1/(1-u)) for α > 0; -λ∫1/(1-u) for the local problem.
    pub nonlocal_part: f64,
    pub total: f64,
}

/// Nodal gradient: centred differences inside, zero at the centre and the
/// Robin value -βu at the edge.
pub(crate) fn nodal_gradient(u: &[f64], x: &[f64], beta: f64) -> Vec<f64> {
    let n = u.len() - 1;
    let mut d = vec![0.0; n + 1];
    for i in 1..n {
        d[i] = (u[i + 1] - u[i - 1]) / (x[i + 1] - x[i - 1]);
    }
    d[n] = -beta * u[n];
    d
}

/// (½∫|∇u|², (β/2)∮u²) over the full domain.
pub fn energy_parts(u: &[f64], x: &[f64], params: &ProblemParams) -> Result<(f64, f64)> {
    check_unquenched(u)?;
    crate::params::check_monotone(x)?;
    let grad = nodal_gradient(u, x, params.beta);
    let p = params.weight_power() as i32;
    let dirichlet = 0.5 * params.domain_factor() * integrate_nodes(x, |i| x[i].powi(p) * grad[i] * grad[i]);
    let ub = u[u.len() - 1];
    let boundary = match params.geometry {
        Geometry::Interval => params.beta * ub * ub,
        Geometry::Ball { radius } => {
            0.5 * params.beta * unit_sphere_area(params.dim) * radius.powi(params.dim as i32 - 1) * ub * ub
        }
    };
    Ok((dirichlet, boundary))
}

pub fn energy(field: &FieldState, mesh: &MeshState, params: &ProblemParams) -> Result<EnergyRecord> {
    energy_at(field.t, &field.u, &mesh.x, params)
}

pub fn energy_at(t: f64, u: &[f64], x: &[f64], params: &ProblemParams) -> Result<EnergyRecord> {
    let (dirichlet_part, boundary_part) = energy_parts(u, x, params)?;
    let gain = gain_unchecked(u, x, params);
    let nonlocal_part = if params.alpha > 0.0 {
        params.lambda / params.alpha / gain.h
    } else {
        -params.lambda * gain.integral
    };
    Ok(EnergyRecord {
        t,
        dirichlet_part,
        boundary_part,
        nonlocal_part,
        total: dirichlet_part + boundary_part + nonlocal_part,
    })
}
