//! Backward-Euler stepping in computational time and the run driver.

use nalgebra::{DMatrix, DVector, Dyn, LU};

use super::assemble::{residual, DaeVector};
use super::monitor::time_dilation;
use super::stencils::check_cells;
use super::SchemeConfig;
use crate::params::{initial_state, InitialProfile, ProblemParams};
use crate::quadrature::gain_unchecked;
use crate::quench::energy::energy_at;
use crate::{Error, Result};

const NEWTON_MAX_ITER: usize = 12;
const NEWTON_TOL: f64 = 1e-11;
const MAX_HALVINGS: usize = 20;
const STEADY_STREAK: usize = 10;

/// One accepted step of the run.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LedgerRow {
    pub t: f64,
    pub umax: f64,
    pub u_boundary: f64,
    pub energy: f64,
    pub k: f64,
    pub g: f64,
    pub dtau: f64,
    /// Position of the largest u.
    pub x_star: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Snapshot {
    pub step: usize,
    pub t: f64,
    pub x: Vec<f64>,
    pub u: Vec<f64>,
}

#[derive(Debug, Clone, PartialEq)]
pub enum TrajectoryStatus {
    Steady,
    Quenched,
    Horizon,
    Failed(String),
}

impl TrajectoryStatus {
    pub fn label(&self) -> &'static str {
        match self {
            TrajectoryStatus::Steady => "steady",
            TrajectoryStatus::Quenched => "quenched",
            TrajectoryStatus::Horizon => "horizon",
            TrajectoryStatus::Failed(_) => "failed",
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Trajectory {
    pub params: ProblemParams,
    pub config: SchemeConfig,
    pub rows: Vec<LedgerRow>,
    pub snapshots: Vec<Snapshot>,
    pub status: TrajectoryStatus,
    pub final_state: DaeVector,
    pub tau: f64,
}

impl Trajectory {
    pub fn steps(&self) -> usize {
        self.rows.len() - 1
    }

    pub fn last(&self) -> &LedgerRow {
        self.rows.last().expect("trajectory has an initial row")
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct StepOutcome {
    pub y: DaeVector,
    /// Step actually taken after any halving.
    pub dtau: f64,
    pub newton_iterations: usize,
}

/// Implicit stepper holding a reusable Jacobian factorization.
pub struct Stepper {
    params: ProblemParams,
    config: SchemeConfig,
    lu: Option<LU<f64, Dyn, Dyn>>,
    lu_dtau: f64,
    refresh: bool,
}

impl Stepper {
    pub fn new(params: ProblemParams, config: SchemeConfig) -> Self {
        Self {
            params,
            config,
            lu: None,
            lu_dtau: 0.0,
            refresh: true,
        }
    }

    /// Advances `y` by `dtau`, halving the step on Newton failure.
    pub fn step(&mut self, y: &DaeVector, dtau: f64) -> Result<StepOutcome> {
        let mut h = dtau;
        let mut last = String::new();
        for _ in 0..=MAX_HALVINGS {
            match self.solve(y, h) {
                Ok((z, iters)) => {
                    let new = DaeVector::from_reduced(&z, y.x[0], y.x[y.x.len() - 1], self.params.beta);
                    check_cells(&new.x)?;
                    return Ok(StepOutcome {
                        y: new,
                        dtau: h,
                        newton_iterations: iters,
                    });
                }
                Err(e) => {
                    last = e.to_string();
                    self.refresh = true;
                    h *= 0.5;
                }
            }
        }
        Err(Error::StepFailure { t: y.t, reason: last })
    }

    fn residual(&self, z: &[f64], old: &DaeVector, dtau: f64) -> Result<Vec<f64>> {
        residual(z, old, dtau, &self.params, &self.config)
    }

    fn factorize(&mut self, z: &[f64], r0: &[f64], old: &DaeVector, dtau: f64) -> Result<()> {
        let n = z.len();
        let mut jac = DMatrix::<f64>::zeros(n, n);
        let mut zp = z.to_vec();
        for j in 0..n {
            let h = 1.5e-8 * z[j].abs().max(1e-2);
            zp[j] = z[j] + h;
            let (rp, hh) = match self.residual(&zp, old, dtau) {
                Ok(r) => (r, h),
                Err(_) => {
                    zp[j] = z[j] - h;
                    (self.residual(&zp, old, dtau)?, -h)
                }
            };
            zp[j] = z[j];
            for i in 0..n {
                jac[(i, j)] = (rp[i] - r0[i]) / hh;
            }
        }
        self.lu = Some(jac.lu());
        self.lu_dtau = dtau;
        self.refresh = false;
        Ok(())
    }

    fn solve(&mut self, old: &DaeVector, dtau: f64) -> Result<(Vec<f64>, usize)> {
        let mut z = old.reduced();
        let mut r = self.residual(&z, old, dtau)?;
        let stale_dtau = self.lu.is_none() || (dtau / self.lu_dtau - 1.0).abs() > 0.3;
        let mut fresh = false;
        if self.refresh || stale_dtau {
            self.factorize(&z, &r, old, dtau)?;
            fresh = true;
        }
        let norm = |v: &[f64]| v.iter().fold(0.0f64, |a, b| a.max(b.abs()));
        for it in 0..NEWTON_MAX_ITER {
            if norm(&r) <= NEWTON_TOL {
                if it > 4 {
                    self.refresh = true;
                }
                return Ok((z, it));
            }
            let lu = self.lu.as_ref().expect("factorization present");
            let delta = lu
                .solve(&DVector::from_iterator(r.len(), r.iter().map(|v| -v)))
                .ok_or_else(|| Error::NoConvergence("singular Jacobian".into()))?;
            let mut damping = 1.0;
            let mut accepted = None;
            for _ in 0..8 {
                let trial: Vec<f64> = z.iter().zip(delta.iter()).map(|(a, d)| a + damping * d).collect();
                if let Ok(rt) = self.residual(&trial, old, dtau) {
                    if norm(&rt) < norm(&r) {
                        accepted = Some((trial, rt));
                        break;
                    }
                }
                damping *= 0.5;
            }
            match accepted {
                Some((zt, rt)) => {
                    let small_update = damping * norm(delta.as_slice()) <= 1e-14;
                    z = zt;
                    r = rt;
                    if small_update && norm(&r) <= 1e3 * NEWTON_TOL {
                        return Ok((z, it + 1));
                    }
                }
                None if !fresh => {
                    self.factorize(&z, &r, old, dtau)?;
                    fresh = true;
                }
                None => return Err(Error::NoConvergence("damped Newton stalled".into())),
            }
        }
        if norm(&r) <= NEWTON_TOL {
            self.refresh = true;
            return Ok((z, NEWTON_MAX_ITER));
        }
        Err(Error::NoConvergence(format!(
            "Newton residual {:e} after {NEWTON_MAX_ITER} iterations",
            norm(&r)
        )))
    }
}

/// A single backward-Euler step from `y` with a fresh Jacobian.
pub fn step(y: &DaeVector, dtau: f64, params: &ProblemParams, config: &SchemeConfig) -> Result<DaeVector> {
    Ok(Stepper::new(*params, config.clone()).step(y, dtau)?.y)
}

fn ledger_row(y: &DaeVector, dtau: f64, params: &ProblemParams, config: &SchemeConfig) -> Result<LedgerRow> {
    let (imax, umax) = y
        .u
        .iter()
        .enumerate()
        .fold((0, f64::NEG_INFINITY), |acc, (i, &v)| if v > acc.1 { (i, v) } else { acc });
    let e = energy_at(y.t, &y.u, &y.x, params)?;
    Ok(LedgerRow {
        t: y.t,
        umax,
        u_boundary: y.u[y.u.len() - 1],
        energy: e.total,
        k: gain_unchecked(&y.u, &y.x, params).k,
        g: time_dilation(&y.u, config.monitor_floor),
        dtau,
        x_star: y.x[imax],
    })
}

/// Runs from the initial profile on `cells` cells until steady, quenched, the
/// horizon, or failure.
pub fn integrate(
    params: &ProblemParams,
    config: &SchemeConfig,
    cells: usize,
    u0: &InitialProfile,
) -> Result<Trajectory> {
    let params = params.validate()?;
    config.validate()?;
    let (mesh, field) = initial_state(&params, cells, u0)?;
    let mut y = DaeVector {
        t: 0.0,
        u: field.u,
        x: mesh.x,
    };
    // the discrete Robin relation replaces whatever edge value was supplied
    let n = cells;
    y.u[n] = super::assemble::robin_edge_value(y.u[n - 1], y.x[n] - y.x[n - 1], params.beta);

    let mut stepper = Stepper::new(params, config.clone());
    let mut rows = vec![ledger_row(&y, 0.0, &params, config)?];
    let mut snapshots = Vec::new();
    let snap = |step: usize, y: &DaeVector| Snapshot {
        step,
        t: y.t,
        x: y.x.clone(),
        u: y.u.clone(),
    };
    if config.snapshot_every > 0 {
        snapshots.push(snap(0, &y));
    }
    let mut dtau = config.dtau.min(config.dtau_max);
    let mut tau = 0.0;
    let mut streak = 0;
    let mut steps = 0;
    let status = loop {
        if y.t >= config.t_final {
            break TrajectoryStatus::Horizon;
        }
        if steps >= config.max_steps {
            break TrajectoryStatus::Failed(format!("step limit {} reached", config.max_steps));
        }
        let out = match stepper.step(&y, dtau) {
            Ok(o) => o,
            Err(e) => break TrajectoryStatus::Failed(e.to_string()),
        };
        let gap = 1.0 - out.y.u.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
        let allowed = config.du_abs.min(config.du_rel * gap.max(0.0));
        let du = out
            .y
            .u
            .iter()
            .zip(&y.u)
            .fold(0.0f64, |a, (p, q)| a.max((p - q).abs()));
        if du > 1.5 * allowed && out.dtau > 1e-14 {
            dtau = out.dtau * (0.9 * allowed / du).max(0.1);
            continue;
        }
        let dt = out.y.t - y.t;
        let rate = if dt > 0.0 { du / dt } else { f64::INFINITY };
        steps += 1;
        tau += out.dtau;
        y = out.y;
        rows.push(ledger_row(&y, out.dtau, &params, config)?);
        if config.snapshot_every > 0 && steps % config.snapshot_every == 0 {
            snapshots.push(snap(steps, &y));
        }
        if gap <= config.quench_guard {
            break TrajectoryStatus::Quenched;
        }
        streak = if rate < config.steady_tol { streak + 1 } else { 0 };
        if streak >= STEADY_STREAK {
            break TrajectoryStatus::Steady;
        }
        let factor = if du > 0.0 { (0.9 * allowed / du).clamp(0.5, 1.5) } else { 1.5 };
        dtau = (out.dtau * factor).min(config.dtau_max);
    };
    if config.snapshot_every > 0 && snapshots.last().map(|s| s.step) != Some(steps) {
        snapshots.push(snap(steps, &y));
    }
    Ok(Trajectory {
        params,
        config: config.clone(),
        rows,
        snapshots,
        status,
        final_state: y,
        tau,
    })
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
    fn first_step_matches_explicit_rate() {
        let p = ProblemParams::interval(0.05, 0.0, 1.0);
        let c = SchemeConfig::default();
        let y = flat(20);
        let dtau = 1e-6;
        let next = step(&y, dtau, &p, &c).unwrap();
        let g = 0.5;
        assert!((next.t - g * dtau).abs() < 1e-6 * g * dtau);
        assert!((next.u[0] - g * dtau * 0.05).abs() < 1e-6 * g * dtau * 0.05);
    }

    #[test]
    fn tiny_step_is_nearly_identity() {
        let p = ProblemParams::interval(1.0, 1.0, 1.0);
        let c = SchemeConfig::default();
        let y = flat(16);
        let next = step(&y, 1e-12, &p, &c).unwrap();
        let d = next.u.iter().zip(&y.u).fold(0.0f64, |a, (p, q)| a.max((p - q).abs()));
        assert!(d < 1e-12);
    }

    #[test]
    fn robin_relation_exact_after_steps() {
        let p = ProblemParams::interval(0.3, 0.0, 2.0);
        let c = SchemeConfig {
            t_final: 0.5,
            ..SchemeConfig::default()
        };
        let tr = integrate(&p, &c, 16, &InitialProfile::Zero).unwrap();
        let y = &tr.final_state;
        let n = 16;
        assert_eq!(y.u[n] * (1.0 + 2.0 * (y.x[n] - y.x[n - 1])), y.u[n - 1]);
        assert_eq!(tr.status, TrajectoryStatus::Horizon);
        assert!(tr.rows.windows(2).all(|w| w[1].t > w[0].t));
    }

    #[test]
    fn mesh_moves_toward_the_peak() {
        let p = ProblemParams::interval(1.0, 0.0, 1.0);
        let c = SchemeConfig::default();
        let tr = integrate(&p, &c, 40, &InitialProfile::Zero).unwrap();
        assert_eq!(tr.status, TrajectoryStatus::Quenched);
        let x = &tr.final_state.x;
        assert!(x[1] < 0.25 / 40.0, "first cell {}", x[1]);
    }
}
