//! The semi-explicit system A(y) dy/dτ = b(y).

use super::monitor::{monitor, smooth_monitor, time_dilation};
use super::stencils::stencils;
use super::SchemeConfig;
use crate::params::ProblemParams;
use crate::quadrature::{check_unquenched, gain_unchecked};
use crate::Result;

/// y = (t, u_0..u_M, X_0..X_M).
#[derive(Debug, Clone, PartialEq)]
pub struct DaeVector {
    pub t: f64,
    pub u: Vec<f64>,
    pub x: Vec<f64>,
}

impl DaeVector {
    pub fn len(&self) -> usize {
        1 + self.u.len() + self.x.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn to_vec(&self) -> Vec<f64> {
        let mut v = Vec::with_capacity(self.len());
        v.push(self.t);
        v.extend_from_slice(&self.u);
        v.extend_from_slice(&self.x);
        v
    }

    pub fn from_slice(y: &[f64]) -> Self {
        let n = (y.len() - 1) / 2;
        Self {
            t: y[0],
            u: y[1..=n].to_vec(),
            x: y[n + 1..].to_vec(),
        }
    }

    /// Unknowns left after pinning X_0, X_M and eliminating u_M:
    /// (t, u_0..u_{M-1}, X_1..X_{M-1}).
    pub(crate) fn reduced(&self) -> Vec<f64> {
        let n = self.u.len() - 1;
        let mut v = Vec::with_capacity(2 * n);
        v.push(self.t);
        v.extend_from_slice(&self.u[..n]);
        v.extend_from_slice(&self.x[1..n]);
        v
    }

    /// Inverse of [`reduced`](Self::reduced) given the pinned ends and β.
    pub(crate) fn from_reduced(z: &[f64], x0: f64, xn: f64, beta: f64) -> Self {
        let n = z.len() / 2;
        let mut x = Vec::with_capacity(n + 1);
        x.push(x0);
        x.extend_from_slice(&z[n + 1..]);
        x.push(xn);
        let mut u = z[1..=n].to_vec();
        u.push(robin_edge_value(u[n - 1], x[n] - x[n - 1], beta));
        Self { t: z[0], u, x }
    }
}

/// u_M from the discrete Robin relation u_M - u_{M-1} = -β u_M (X_M - X_{M-1}).
pub fn robin_edge_value(u_prev: f64, h: f64, beta: f64) -> f64 {
    u_prev / (1.0 + beta * h)
}

/// A = [[1, 0, 0], [0, I, -diag(Δ_x u)], [0, 0, -Δ_ξ²]].
///
/// Rows belonging to the pinned nodes X_0, X_M and to the eliminated value
/// u_M are zero; those entries are fixed by constraints, not evolved.
#[derive(Debug, Clone, PartialEq)]
pub struct BlockOperator {
    pub ux: Vec<f64>,
    pub dxi: f64,
    pub frozen_mesh: bool,
}

impl BlockOperator {
    pub fn apply(&self, dy: &DaeVector) -> DaeVector {
        let n = self.ux.len() - 1;
        let mut u = vec![0.0; n + 1];
        let mut x = vec![0.0; n + 1];
        for i in 0..n {
            u[i] = dy.u[i] - self.ux[i] * dy.x[i];
        }
        for i in 1..n {
            x[i] = if self.frozen_mesh {
                dy.x[i]
            } else {
                -(dy.x[i + 1] - 2.0 * dy.x[i] + dy.x[i - 1]) / (self.dxi * self.dxi)
            };
        }
        DaeVector { t: dy.t, u, x }
    }
}

/// Builds A(y) and b(y) = g(u)[1; Δ_x²u + radial + f; flux/ε].
pub fn assemble(y: &DaeVector, params: &ProblemParams, config: &SchemeConfig) -> Result<(BlockOperator, DaeVector)> {
    check_unquenched(&y.u)?;
    let n = y.u.len() - 1;
    let dxi = 1.0 / n as f64;
    let m = monitor(&y.u, config.monitor_floor);
    let m_flux = if config.smoothing { smooth_monitor(&m) } else { m };
    let st = stencils(&y.u, &y.x, &m_flux, dxi)?;
    let g = time_dilation(&y.u, config.monitor_floor);
    let gain = gain_unchecked(&y.u, &y.x, params);
    let radial = params.dim as f64 - 1.0;
    let mut bu = vec![0.0; n + 1];
    for i in 0..n {
        let curvature = if i == 0 {
            radial * st.uxx[0]
        } else {
            radial / y.x[i] * st.ux[i]
        };
        let f = params.lambda / ((1.0 - y.u[i]) * (1.0 - y.u[i]) * gain.k);
        bu[i] = g * (st.uxx[i] + curvature + f);
    }
    let mut bx = vec![0.0; n + 1];
    if !config.frozen_mesh {
        for i in 1..n {
            bx[i] = g / config.epsilon * st.flux[i];
        }
    }
    Ok((
        BlockOperator {
            ux: st.ux,
            dxi,
            frozen_mesh: config.frozen_mesh,
        },
        DaeVector { t: g, u: bu, x: bx },
    ))
}

/// Backward-Euler residual A(y')(y' - y) - dτ b(y') on the reduced unknowns.
/// Mesh rows are scaled by Δξ² so every row is O(1).
pub(crate) fn residual(
    z: &[f64],
    old: &DaeVector,
    dtau: f64,
    params: &ProblemParams,
    config: &SchemeConfig,
) -> Result<Vec<f64>> {
    let n = old.u.len() - 1;
    let new = DaeVector::from_reduced(z, old.x[0], old.x[n], params.beta);
    let (a, b) = assemble(&new, params, config)?;
    let dy = DaeVector {
        t: new.t - old.t,
        u: new.u.iter().zip(&old.u).map(|(p, q)| p - q).collect(),
        x: new.x.iter().zip(&old.x).map(|(p, q)| p - q).collect(),
    };
    let ady = a.apply(&dy);
    let scale = if config.frozen_mesh { 1.0 } else { a.dxi * a.dxi };
    let mut r = Vec::with_capacity(2 * n);
    r.push(ady.t - dtau * b.t);
    for i in 0..n {
        r.push(ady.u[i] - dtau * b.u[i]);
    }
    for i in 1..n {
        r.push(scale * (ady.x[i] - dtau * b.x[i]));
    }
    Ok(r)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn flat(n: usize) -> DaeVector {
        DaeVector {
            t: 0.0,
            u: vec![0.0; n + 1],
            x: (0..=n).map(|i| i as f64 / n as f64).collect(),
        }
    }

    #[test]
    fn flat_state_is_pure_reaction() {
        let y = flat(16);
        let p = ProblemParams::interval(0.05, 0.0, 1.0);
        let c = SchemeConfig::default();
        let (_, b) = assemble(&y, &p, &c).unwrap();
        let g = 1.0 / (1.0 + c.monitor_floor);
        assert_eq!(b.t, g);
        for i in 0..16 {
            assert!((b.u[i] - g * 0.05).abs() < 1e-15);
        }
        assert!(b.x.iter().all(|v| v.abs() < 1e-12));
    }

    #[test]
    fn radial_centre_uses_symmetric_limit() {
        let n = 20;
        let mut y = flat(n);
        y.u = y.x.iter().map(|r| 0.1 * (1.0 - r * r)).collect();
        let p = ProblemParams::ball(1e-12, 0.0, 1.0, 2, 1.0);
        let c = SchemeConfig {
            monitor_floor: 0.0,
            ..SchemeConfig::default()
        };
        let (_, b) = assemble(&y, &p, &c).unwrap();
        let g = time_dilation(&y.u, 0.0);
        // Δu = u_rr + u_r/r = -0.4 for u = 0.1(1 - r²) in two dimensions
        for i in 0..n {
            assert!((b.u[i] / g + 0.4).abs() < 1e-9, "{i}: {}", b.u[i] / g);
        }
    }

    #[test]
    fn reduced_roundtrip_enforces_constraints() {
        let mut y = flat(10);
        y.u = (0..=10).map(|i| 0.01 * i as f64).collect();
        let z = y.reduced();
        assert_eq!(z.len(), 20);
        let back = DaeVector::from_reduced(&z, 0.0, 1.0, 2.0);
        assert_eq!(back.u[..10], y.u[..10]);
        assert_eq!(back.u[10] * (1.0 + 2.0 * 0.1), y.u[9]);
        assert_eq!(DaeVector::from_slice(&back.to_vec()), back);
    }

    #[test]
    fn zero_step_residual_is_minus_dtau_b() {
        let y = flat(12);
        let p = ProblemParams::interval(1.0, 1.0, 1.0);
        let c = SchemeConfig::default();
        let r = residual(&y.reduced(), &y, 0.1, &p, &c).unwrap();
        assert!((r[0] + 0.1 * 0.5).abs() < 1e-15);
        assert!((r[1] + 0.1 * 0.5 / 9.0).abs() < 1e-15);
    }
}
