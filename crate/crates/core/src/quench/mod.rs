//! Quench detection, touchdown-time extrapolation and rate fits.
//!
//! Near touchdown 1 - max u behaves like C(T_q - t)^{1/3}. The cube of the gap
//! is then linear in t, which turns locating T_q into a least-squares line fit.

pub mod energy;

pub use energy::{energy, energy_at, energy_parts, EnergyRecord};

use crate::evolve::{Trajectory, TrajectoryStatus};
use crate::numerics::linear_fit;
use crate::{Error, Result};

/// Points closest to touchdown left out of every fit.
pub const TAIL_EXCLUDED: usize = 3;
/// Fewest ledger points a fit window may hold.
pub const MIN_WINDOW: usize = 20;
/// R² below which the cube-law line is reported as a poor fit.
pub const POOR_FIT_R2: f64 = 0.999;

/// Window of ledger indices used by the fits: the trailing run of points whose
/// gap is within a decade of the smallest, minus the final points.
pub fn fit_window(umax: &[f64]) -> Result<std::ops::Range<usize>> {
    let n = umax.len();
    if n <= TAIL_EXCLUDED {
        return Err(Error::InsufficientPoints {
            need: MIN_WINDOW,
            have: 0,
        });
    }
    let v_min = 1.0 - umax[n - 1];
    let mut start = n - 1;
    while start > 0 && 1.0 - umax[start - 1] <= 10.0 * v_min {
        start -= 1;
    }
    let end = n - TAIL_EXCLUDED;
    let have = end.saturating_sub(start);
    if have < MIN_WINDOW {
        return Err(Error::InsufficientPoints { need: MIN_WINDOW, have });
    }
    Ok(start..end)
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuenchTimeFit {
    pub tq: f64,
    pub r_squared: f64,
    pub poor_fit: bool,
    pub window: (f64, f64),
    pub points: usize,
}

/// T_q from the line through (t, (1 - max u)³) over the fit window.
pub fn extrapolate_quench_time(t: &[f64], umax: &[f64]) -> Result<QuenchTimeFit> {
    let w = fit_window(umax)?;
    let ts = &t[w.clone()];
    let cubes: Vec<f64> = umax[w.clone()].iter().map(|u| (1.0 - u).powi(3)).collect();
    let (a, b, r2) = linear_fit(ts, &cubes);
    let root = if b < 0.0 { -a / b } else { f64::INFINITY };
    Ok(QuenchTimeFit {
        tq: root.max(t[t.len() - 1]),
        r_squared: r2,
        poor_fit: r2 < POOR_FIT_R2,
        window: (ts[0], ts[ts.len() - 1]),
        points: ts.len(),
    })
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RateFit {
    pub gamma: f64,
    pub constant: f64,
    pub r_squared: f64,
}

/// Slope and intercept of log(1 - max u) against log(T_q - t) over the window.
pub fn fit_rate_series(t: &[f64], umax: &[f64], tq: f64) -> Result<RateFit> {
    let w = fit_window(umax)?;
    let (mut lx, mut ly) = (Vec::new(), Vec::new());
    for i in w {
        if tq - t[i] > 0.0 {
            lx.push((tq - t[i]).ln());
            ly.push((1.0 - umax[i]).ln());
        }
    }
    if lx.len() < MIN_WINDOW {
        return Err(Error::InsufficientPoints {
            need: MIN_WINDOW,
            have: lx.len(),
        });
    }
    let (a, b, r2) = linear_fit(&lx, &ly);
    Ok(RateFit {
        gamma: b,
        constant: a.exp(),
        r_squared: r2,
    })
}

/// Rate fit on a quenched trajectory's ledger.
pub fn fit_rate(traj: &Trajectory, tq: f64) -> Result<RateFit> {
    require_quenched(traj)?;
    let (t, u) = ledger_series(traj);
    fit_rate_series(&t, &u, tq)
}

fn ledger_series(traj: &Trajectory) -> (Vec<f64>, Vec<f64>) {
    traj.rows.iter().map(|r| (r.t, r.umax)).unzip()
}

fn require_quenched(traj: &Trajectory) -> Result<()> {
    if traj.status != TrajectoryStatus::Quenched {
        return Err(Error::NotQuenched(format!(
            "trajectory ended {}",
            traj.status.label()
        )));
    }
    Ok(())
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ProfileFit {
    pub c_star: f64,
    /// Root-mean-square misfit relative to the root-mean-square gap.
    pub residual: f64,
    pub points: usize,
}

/// Least-squares C* in 1 - u ≈ C*[r²/|ln r|]^{1/3} over r ∈ [r_min, r_max].
///
/// `r_min` defaults to twice the innermost cell width.
pub fn profile_fit(x: &[f64], u: &[f64], r_min: Option<f64>, r_max: f64) -> Result<ProfileFit> {
    let lo = r_min.unwrap_or(2.0 * (x[1] - x[0]));
    let (mut num, mut den, mut count) = (0.0, 0.0, 0);
    let mut samples = Vec::new();
    for (&r, &ui) in x.iter().zip(u) {
        if r >= lo && r <= r_max && r > 0.0 && r < 1.0 {
            let phi = (r * r / r.ln().abs()).cbrt();
            let v = 1.0 - ui;
            num += v * phi;
            den += phi * phi;
            count += 1;
            samples.push((v, phi));
        }
    }
    if count == 0 {
        return Err(Error::EmptyWindow(format!("no nodes in [{lo}, {r_max}]")));
    }
    let c = num / den;
    let (mut e2, mut v2) = (0.0, 0.0);
    for (v, phi) in samples {
        e2 += (v - c * phi).powi(2);
        v2 += v * v;
    }
    Ok(ProfileFit {
        c_star: c,
        residual: (e2 / v2).sqrt(),
        points: count,
    })
}

/// Outcome of comparing the gap with C_k r^k away from the origin.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SinglePointCheck {
    pub pass: bool,
    /// min over r ≥ 2Δr of (1 - u) - C_k r^k.
    pub margin: f64,
}

fn check_exponent(k: f64) -> Result<()> {
    if !(k > 2.0 / 3.0) {
        return Err(Error::InvalidParameter(format!(
            "exponent k = {k} must exceed 2/3"
        )));
    }
    Ok(())
}

/// Largest C_k with 1 - u ≥ C_k r^k for r ≥ 2Δr.
pub fn admissible_ck(x: &[f64], u: &[f64], k: f64) -> Result<f64> {
    check_exponent(k)?;
    let lo = 2.0 * (x[1] - x[0]);
    Ok(x
        .iter()
        .zip(u)
        .filter(|(&r, _)| r >= lo && r > 0.0)
        .map(|(&r, &ui)| (1.0 - ui) / r.powf(k))
        .fold(f64::INFINITY, f64::min))
}

pub fn single_point_check(x: &[f64], u: &[f64], k: f64, ck: f64) -> Result<SinglePointCheck> {
    check_exponent(k)?;
    let lo = 2.0 * (x[1] - x[0]);
    let margin = x
        .iter()
        .zip(u)
        .filter(|(&r, _)| r >= lo)
        .map(|(&r, &ui)| (1.0 - ui) - ck * r.powf(k))
        .fold(f64::INFINITY, f64::min);
    Ok(SinglePointCheck {
        pass: margin >= 0.0,
        margin,
    })
}

#[derive(Debug, Clone, PartialEq)]
pub struct QuenchReport {
    pub quenched: bool,
    pub tq: f64,
    pub x_star: f64,
    pub rate_exponent: f64,
    pub rate_constant: f64,
    pub profile_constant: f64,
    pub profile_residual: f64,
    pub fit_window: (f64, f64),
    pub r_squared: f64,
    pub poor_fit: bool,
    /// Nonlocal gain K at the final step.
    pub terminal_k: f64,
}

/// Default outer radius of the profile fit.
pub const PROFILE_R_MAX: f64 = 0.1;

pub fn detect_and_extrapolate(traj: &Trajectory) -> Result<QuenchReport> {
    require_quenched(traj)?;
    let (t, u) = ledger_series(traj);
    let fit = extrapolate_quench_time(&t, &u)?;
    let rate = fit_rate_series(&t, &u, fit.tq)?;
    let last = traj.last();
    let profile = profile_fit(&traj.final_state.x, &traj.final_state.u, None, PROFILE_R_MAX)?;
    Ok(QuenchReport {
        quenched: true,
        tq: fit.tq,
        x_star: last.x_star,
        rate_exponent: rate.gamma,
        rate_constant: rate.constant,
        profile_constant: profile.c_star,
        profile_residual: profile.residual,
        fit_window: fit.window,
        r_squared: fit.r_squared,
        poor_fit: fit.poor_fit,
        terminal_k: last.k,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn exact_law(gamma: f64, n: usize) -> (Vec<f64>, Vec<f64>) {
        // geometric approach to t = 1 with a 5% gap reduction per point
        let mut t = Vec::new();
        let mut u = Vec::new();
        let mut v: f64 = 0.5;
        while t.len() < n {
            let s = v.powf(1.0 / gamma);
            t.push(1.0 - s);
            u.push(1.0 - v);
            v *= 0.95;
        }
        (t, u)
    }

    #[test]
    fn exact_cube_law_recovered() {
        let (t, u) = exact_law(1.0 / 3.0, 120);
        let fit = extrapolate_quench_time(&t, &u).unwrap();
        assert!((fit.tq - 1.0).abs() < 1e-8);
        assert!(!fit.poor_fit);
        let rate = fit_rate_series(&t, &u, fit.tq).unwrap();
        assert!((rate.gamma - 1.0 / 3.0).abs() < 1e-6);
        assert!((rate.constant - 1.0).abs() < 1e-5);
    }

    #[test]
    fn half_law_flagged() {
        let (t, u) = exact_law(0.5, 200);
        let fit = extrapolate_quench_time(&t, &u).unwrap();
        assert!(fit.poor_fit, "R² = {}", fit.r_squared);
    }

    #[test]
    fn short_ledgers_rejected() {
        let (t, u) = exact_law(1.0 / 3.0, 15);
        assert!(matches!(
            extrapolate_quench_time(&t, &u),
            Err(Error::InsufficientPoints { .. })
        ));
    }

    #[test]
    fn profile_constant_recovered() {
        let x: Vec<f64> = (0..=400).map(|i| i as f64 / 400.0).collect();
        let u: Vec<f64> = x
            .iter()
            .map(|&r| if r > 0.0 { 1.0 - 2.0 * (r * r / r.ln().abs()).cbrt() } else { 1.0 })
            .collect();
        let f = profile_fit(&x, &u, None, 0.1).unwrap();
        assert!((f.c_star - 2.0).abs() < 1e-6);
        assert!(f.residual < 1e-12);
        assert!(matches!(profile_fit(&x, &u, Some(0.2), 0.1), Err(Error::EmptyWindow(_))));
    }

    #[test]
    fn single_point_rules() {
        let x: Vec<f64> = (0..=50).map(|i| i as f64 / 50.0).collect();
        let u: Vec<f64> = x.iter().map(|r| 0.05 * (1.0 - r * r)).collect();
        let ck = admissible_ck(&x, &u, 0.8).unwrap();
        let c = single_point_check(&x, &u, 0.8, ck).unwrap();
        assert!(c.pass && c.margin.abs() < 1e-12);
        let c = single_point_check(&x, &u, 0.8, 0.5).unwrap();
        assert!(c.pass && c.margin > 0.4);
        assert!(single_point_check(&x, &u, 0.1, 0.5).is_err());
    }
}
