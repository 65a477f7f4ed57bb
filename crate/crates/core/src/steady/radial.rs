//! Radial steady states on a ball by scaling-symmetric shooting.
//!
//! The gap W = 1 - u of a radial steady state solves ΔW = μ/W². Writing
//! W(r) = m V(kr) reduces every solution to the single profile
//!
//! ```text
//! V'' + (N-1)/ρ V' = 1/V²,   V(0) = 1,  V'(0) = 0,
//! ```
//!
//! with μ = m³k². For a shooting value s = kR the Robin condition fixes m, so
//! the whole branch is parameterized by s.

use crate::numerics::{brent, golden_max, rk4_step};
use crate::params::unit_sphere_area;
use crate::{Error, Result};

const MAX_STEP: f64 = 1e-3;

/// Scaled profile data at one ρ: V, V' and ∫_0^ρ t^{N-1}/V(t) dt.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ScaledSample {
    pub rho: f64,
    pub v: f64,
    pub dv: f64,
    pub weighted_inverse: f64,
}

/// Integrates the scaled profile and samples it at the increasing `rho` values.
pub fn scaled_profile(dim: usize, rho: &[f64]) -> Vec<ScaledSample> {
    let n = dim as f64;
    let rhs = |r: f64, y: &[f64; 3]| {
        let curv = if r > 0.0 { (n - 1.0) / r * y[1] } else { 0.0 };
        [y[1], 1.0 / (y[0] * y[0]) - curv, r.powi(dim as i32 - 1) / y[0]]
    };
    let series = |r: f64| {
        let a = 1.0 / (2.0 * n);
        let b = -1.0 / (4.0 * n * (n + 2.0));
        [
            1.0 + a * r * r + b * r.powi(4),
            2.0 * a * r + 4.0 * b * r.powi(3),
            r.powi(dim as i32) / n - a * r.powi(dim as i32 + 2) / (n + 2.0),
        ]
    };
    march(rho, 1e-3, series, rhs)
        .into_iter()
        .zip(rho)
        .map(|(y, &r)| ScaledSample {
            rho: r,
            v: y[0],
            dv: y[1],
            weighted_inverse: y[2],
        })
        .collect()
}

/// Marches a three-component radial ODE from the origin through the sample
/// points, using `series` below `start` and RK4 beyond it.
pub(crate) fn march<S, F>(rho: &[f64], start: f64, series: S, rhs: F) -> Vec<[f64; 3]>
where
    S: Fn(f64) -> [f64; 3],
    F: Fn(f64, &[f64; 3]) -> [f64; 3],
{
    let mut out = Vec::with_capacity(rho.len());
    let mut r = 0.0;
    let mut y = series(0.0);
    for &target in rho {
        if target <= start {
            out.push(series(target));
            continue;
        }
        if r < start {
            r = start;
            y = series(start);
        }
        let span = target - r;
        if span > 0.0 {
            let steps = (span / MAX_STEP).ceil() as usize;
            let h = span / steps as f64;
            for j in 0..steps {
                y = rk4_step(&rhs, r + j as f64 * h, y, h);
            }
            r = target;
        }
        out.push(y);
    }
    out
}

/// A point on the radial branch.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RadialPoint {
    /// Shooting value s = kR.
    pub shoot: f64,
    /// Centre gap m = W(0).
    pub gap_min: f64,
    /// Edge gap W(R).
    pub gap_max: f64,
    pub mu: f64,
    pub lambda: f64,
    /// ∫_{B_R} dx/W.
    pub inverse_integral: f64,
}

/// Radial branch point for shooting value `s` on the ball of radius `radius`.
pub fn radial_branch_point(s: f64, alpha: f64, beta: f64, dim: usize, radius: f64) -> Result<RadialPoint> {
    if !(s > 0.0) || !(beta > 0.0) || !(radius > 0.0) || dim == 0 || !(alpha >= 0.0) {
        return Err(Error::InvalidParameter(format!(
            "radial point needs s, beta, R > 0, alpha >= 0, N >= 1 (s={s}, beta={beta}, R={radius}, N={dim})"
        )));
    }
    let end = scaled_profile(dim, &[s])[0];
    let k = s / radius;
    let m = beta / (k * end.dv + beta * end.v);
    let mu = m * m * m * k * k;
    let inverse_integral = unit_sphere_area(dim) / (m * k.powi(dim as i32)) * end.weighted_inverse;
    let gain = 1.0 + alpha * inverse_integral;
    Ok(RadialPoint {
        shoot: s,
        gap_min: m,
        gap_max: m * end.v,
        mu,
        lambda: mu * gain * gain,
        inverse_integral,
    })
}

/// Radial branch sampled over shooting values and its refined fold.
#[derive(Debug, Clone, PartialEq)]
pub struct RadialBranch {
    pub points: Vec<RadialPoint>,
    pub fold: RadialPoint,
}

/// Continues the radial branch over s ∈ (0, s_max] on `n` points and refines
/// the fold by golden section.
pub fn trace_radial_branch(
    alpha: f64,
    beta: f64,
    dim: usize,
    radius: f64,
    s_max: f64,
    n: usize,
) -> Result<RadialBranch> {
    if n < 50 {
        return Err(Error::InvalidParameter(format!("need at least 50 points, got {n}")));
    }
    let points = (1..=n)
        .map(|i| radial_branch_point(s_max * i as f64 / n as f64, alpha, beta, dim, radius))
        .collect::<Result<Vec<_>>>()?;
    let imax = points
        .iter()
        .enumerate()
        .max_by(|a, b| a.1.lambda.total_cmp(&b.1.lambda))
        .map(|(i, _)| i)
        .unwrap();
    if imax == points.len() - 1 {
        return Err(Error::NoConvergence(format!(
            "radial fold lies beyond s = {s_max}"
        )));
    }
    let lo = if imax == 0 { 0.5 * points[0].shoot } else { points[imax - 1].shoot };
    let hi = points[imax + 1].shoot;
    let lam = |s: f64| {
        radial_branch_point(s, alpha, beta, dim, radius)
            .map(|p| p.lambda)
            .unwrap_or(f64::NEG_INFINITY)
    };
    let (s_star, _) = golden_max(lam, lo, hi, 1e-10);
    let fold = radial_branch_point(s_star, alpha, beta, dim, radius)?;
    Ok(RadialBranch { points, fold })
}

/// Radial fold with default continuation settings.
pub fn radial_fold(alpha: f64, beta: f64, dim: usize, radius: f64) -> Result<RadialPoint> {
    Ok(trace_radial_branch(alpha, beta, dim, radius, 8.0, 400)?.fold)
}

/// Stable radial point (below the fold) with the given μ, local problem.
pub fn radial_point_at_mu(mu: f64, beta: f64, dim: usize, radius: f64) -> Result<RadialPoint> {
    let fold = radial_fold(0.0, beta, dim, radius)?;
    if !(mu > 0.0 && mu < fold.mu) {
        return Err(Error::NoBranchPoint(mu));
    }
    let s = brent(
        |s| radial_branch_point(s, 0.0, beta, dim, radius).map(|p| p.mu - mu).unwrap_or(-mu),
        1e-9 * fold.shoot,
        fold.shoot,
        1e-15,
        300,
    )?;
    radial_branch_point(s, 0.0, beta, dim, radius)
}

/// Stable radial point with the given λ for the nonlocal problem.
pub fn radial_point_at_lambda(lambda: f64, alpha: f64, beta: f64, dim: usize, radius: f64) -> Result<RadialPoint> {
    let fold = radial_fold(alpha, beta, dim, radius)?;
    if !(lambda > 0.0 && lambda < fold.lambda) {
        return Err(Error::NoBranchPoint(lambda));
    }
    let s = brent(
        |s| {
            radial_branch_point(s, alpha, beta, dim, radius)
                .map(|p| p.lambda - lambda)
                .unwrap_or(-lambda)
        },
        1e-9 * fold.shoot,
        fold.shoot,
        1e-15,
        300,
    )?;
    radial_branch_point(s, alpha, beta, dim, radius)
}

/// Deflection u = 1 - W of the point sampled at radii `r` (increasing, in [0, R]).
pub fn radial_profile(point: &RadialPoint, dim: usize, radius: f64, r: &[f64]) -> Vec<f64> {
    let k = point.shoot / radius;
    let rho: Vec<f64> = r.iter().map(|&ri| k * ri).collect();
    scaled_profile(dim, &rho)
        .into_iter()
        .map(|smp| 1.0 - point.gap_min * smp.v)
        .collect()
}
