//! Analytic estimates of the pull-in voltage and the quenching threshold.

use super::branch::trace_default_branch;
use super::eigen::principal_eigenpair;
use super::radial::radial_fold;
use crate::params::{geometry_facts, unit_ball_volume, unit_sphere_area, Geometry, ProblemParams};
use crate::quench::energy::energy_parts;
use crate::quadrature::nonlocal_gain;
use crate::{Error, Result};

/// λ_* = βA(∂B_R)(N-2)/[N-2(1+βR)] · (1+α|B_R|)²/|B_R| when N > 2(1+βR).
///
/// Returns `Ok(None)` when the dimension condition fails.
pub fn pohozaev_lower_bound(params: &ProblemParams) -> Result<Option<f64>> {
    let radius = match params.geometry {
        Geometry::Ball { radius } => radius,
        Geometry::Interval => {
            return Err(Error::NotApplicable("Pohozaev estimate needs a ball".into()))
        }
    };
    let n = params.dim as f64;
    let beta = params.beta;
    let denom = n - 2.0 * (1.0 + beta * radius);
    if denom <= 0.0 {
        return Ok(None);
    }
    let area = unit_sphere_area(params.dim) * radius.powi(params.dim as i32 - 1);
    let vol = unit_ball_volume(params.dim) * radius.powi(params.dim as i32);
    let gain = 1.0 + params.alpha * vol;
    Ok(Some(beta * area * (n - 2.0) / denom * gain * gain / vol))
}

/// 2λ₁(1 + α²|Ω|²)/(m₁|Ω|) from the principal Robin eigenpair.
pub fn upper_bound_lambda_star(params: &ProblemParams) -> Result<f64> {
    let e = principal_eigenpair(params.geometry, params.beta, params.dim)?;
    let vol = geometry_facts(params).volume;
    let a = params.alpha;
    Ok(2.0 * e.lambda1 * (1.0 + a * a * vol * vol) / (e.m1 * vol))
}

/// Pull-in voltage μ* of the local problem on the same geometry.
pub fn local_fold(params: &ProblemParams) -> Result<f64> {
    match params.geometry {
        Geometry::Interval => Ok(trace_default_branch(0.0, params.beta, 400)?.fold.lambda),
        Geometry::Ball { radius } => Ok(radial_fold(0.0, params.beta, params.dim, radius)?.lambda),
    }
}

/// (1 + α|Ω|)² μ*.
pub fn mu_star_lower_bound(params: &ProblemParams) -> Result<f64> {
    let vol = geometry_facts(params).volume;
    let gain = 1.0 + params.alpha * vol;
    Ok(gain * gain * local_fold(params)?)
}

/// Energy-method quenching threshold for an initial profile.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuenchThreshold {
    /// λ̃, or `None` when A_α ≤ 0 and the estimate is vacuous.
    pub lambda_tilde: Option<f64>,
    pub q_alpha: f64,
    pub a_alpha: f64,
}

/// q_α(|Ω|): 1 when |Ω| ≤ 1/(3α), else 1/(3α|Ω|).
pub fn q_alpha(alpha: f64, volume: f64) -> f64 {
    if volume <= 1.0 / (3.0 * alpha) {
        1.0
    } else {
        1.0 / (3.0 * alpha * volume)
    }
}

/// λ̃ = 2α(½∫|∇u₀|² + β/2∮u₀²)/(q_α - 2α/(1 + α∫1/(1-u₀))) for samples `u0`
/// on the half-domain nodes `x`.
pub fn quench_threshold_lambda(u0: &[f64], x: &[f64], params: &ProblemParams) -> Result<QuenchThreshold> {
    if !(params.alpha > 0.0) {
        return Err(Error::InvalidParameter(
            "quench threshold needs alpha > 0".into(),
        ));
    }
    let alpha = params.alpha;
    let (dirichlet, boundary) = energy_parts(u0, x, params)?;
    let gain = nonlocal_gain(u0, x, params)?;
    let q = q_alpha(alpha, geometry_facts(params).volume);
    let a = q - 2.0 * alpha / gain.h;
    let lambda_tilde = (a > 0.0).then(|| 2.0 * alpha * (dirichlet + boundary) / a);
    Ok(QuenchThreshold {
        lambda_tilde,
        q_alpha: q,
        a_alpha: a,
    })
}

/// All estimates available for a parameter set.
#[derive(Debug, Clone, PartialEq)]
pub struct BoundsReport {
    pub pohozaev_lower: Option<f64>,
    pub upper: f64,
    pub mu_star_lower: f64,
    /// Quench threshold for zero initial data; absent for the local problem.
    pub lambda_tilde: Option<QuenchThreshold>,
    pub lambda1: f64,
    pub m1: f64,
}

pub fn bounds_report(params: &ProblemParams) -> Result<BoundsReport> {
    let e = principal_eigenpair(params.geometry, params.beta, params.dim)?;
    let pohozaev_lower = match params.geometry {
        Geometry::Ball { .. } => pohozaev_lower_bound(params)?,
        Geometry::Interval => None,
    };
    let lambda_tilde = if params.alpha > 0.0 {
        let x: Vec<f64> = (0..=64).map(|i| params.half_length() * i as f64 / 64.0).collect();
        Some(quench_threshold_lambda(&vec![0.0; x.len()], &x, params)?)
    } else {
        None
    };
    Ok(BoundsReport {
        pohozaev_lower,
        upper: upper_bound_lambda_star(params)?,
        mu_star_lower: mu_star_lower_bound(params)?,
        lambda_tilde,
        lambda1: e.lambda1,
        m1: e.m1,
    })
}
