//! Pohožaev identity for radial steady states with Robin data.

use crate::params::{unit_sphere_area, Geometry, ProblemParams};
use crate::quadrature::{composite_integral, Weight};
use crate::{Error, Result};

/// Both sides of the identity for deflection samples `v` at radii `r` on [0, R].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PohozaevSides {
    /// μ(N-2)/2 ∫ v f(v) - μN ∫ F(v).
    pub interior: f64,
    /// Boundary terms expressed through v(R) and v'(R).
    pub boundary: f64,
}

pub fn pohozaev_sides(v: &[f64], r: &[f64], mu: f64, params: &ProblemParams) -> Result<PohozaevSides> {
    let radius = match params.geometry {
        Geometry::Ball { radius } => radius,
        Geometry::Interval => {
            return Err(Error::NotApplicable("Pohozaev identity needs radial input".into()))
        }
    };
    if v.len() != r.len() || v.len() < 3 {
        return Err(Error::InvalidParameter("need matching samples, at least three".into()));
    }
    if r[0] != 0.0 || (r[r.len() - 1] - radius).abs() > 1e-12 * radius {
        return Err(Error::NotApplicable("samples must span [0, R]".into()));
    }
    crate::quadrature::nonlocal_gain(v, r, params)?;
    let n = params.dim as f64;
    let area = unit_sphere_area(params.dim);
    let w = Weight::Radial(params.dim - 1);
    let vf: Vec<f64> = v.iter().map(|&s| s / ((1.0 - s) * (1.0 - s))).collect();
    let big_f: Vec<f64> = v.iter().map(|&s| s / (1.0 - s)).collect();
    let interior = mu * (n - 2.0) / 2.0 * area * composite_integral(&vf, r, w)?
        - mu * n * area * composite_integral(&big_f, r, w)?;

    let k = r.len() - 1;
    let (h1, h2) = (r[k] - r[k - 1], r[k] - r[k - 2]);
    // three-point one-sided derivative at the last node
    let dv = v[k] * (1.0 / h1 + 1.0 / h2) - v[k - 1] * h2 / (h1 * (h2 - h1)) + v[k - 2] * h1 / (h2 * (h2 - h1));
    let surface = area * radius.powi(params.dim as i32 - 1);
    let vr = v[k];
    let boundary = surface
        * ((n - 2.0) / (2.0 * params.beta) * dv * dv - 0.5 * radius * dv * dv - mu * radius * vr / (1.0 - vr));
    Ok(PohozaevSides { interior, boundary })
}

/// Relative mismatch |LHS - RHS| / max(|LHS|, |RHS|); zero when both vanish.
pub fn pohozaev_residual(v: &[f64], r: &[f64], mu: f64, params: &ProblemParams) -> Result<f64> {
    let s = pohozaev_sides(v, r, mu, params)?;
    let scale = s.interior.abs().max(s.boundary.abs());
    if scale == 0.0 {
        return Ok(0.0);
    }
    Ok((s.interior - s.boundary).abs() / scale)
}
