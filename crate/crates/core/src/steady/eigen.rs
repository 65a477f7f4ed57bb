//! Principal Robin eigenpair of -Δ on the interval or a ball.

use super::radial::march;
use crate::numerics::brent;
use crate::params::{unit_sphere_area, Geometry};
use crate::{Error, Result};

const SAMPLES: usize = 201;

/// Principal eigenpair normalized to unit integral over the full domain.
#[derive(Debug, Clone, PartialEq)]
pub struct EigenPair {
    pub lambda1: f64,
    /// Root s of the secular equation; λ₁ = (s/R)².
    pub root: f64,
    /// Sample positions on [0, R] (half interval for the 1-D case).
    pub x: Vec<f64>,
    pub phi: Vec<f64>,
    /// Minimum of φ₁ over the closed domain (its boundary value).
    pub m1: f64,
}

/// Computes (λ₁, φ₁, m₁) for the Robin coefficient `beta`.
///
/// The interval is (-1, 1); for a ball `dim` is the space dimension.
pub fn principal_eigenpair(geometry: Geometry, beta: f64, dim: usize) -> Result<EigenPair> {
    if !(beta > 0.0) {
        return Err(Error::InvalidParameter("beta must be positive".into()));
    }
    match geometry {
        Geometry::Interval => interval_pair(beta),
        Geometry::Ball { radius } => {
            if dim == 0 || !(radius > 0.0) {
                return Err(Error::InvalidParameter("ball needs N >= 1 and R > 0".into()));
            }
            ball_pair(beta, dim, radius)
        }
    }
}

fn interval_pair(beta: f64) -> Result<EigenPair> {
    let half_pi = std::f64::consts::FRAC_PI_2;
    let s = brent(|s| s * s.sin() - beta * s.cos(), 0.0, half_pi, 1e-16, 200)?;
    let c = s / (2.0 * s.sin());
    let x: Vec<f64> = (0..SAMPLES).map(|i| i as f64 / (SAMPLES - 1) as f64).collect();
    let phi = x.iter().map(|&xi| c * (s * xi).cos()).collect();
    Ok(EigenPair {
        lambda1: s * s,
        root: s,
        x,
        phi,
        m1: c * s.cos(),
    })
}

/// Φ'' + (N-1)/ρ Φ' = -Φ with Φ(0) = 1, carrying ∫ ρ^{N-1} Φ.
fn bessel_like(dim: usize, rho: &[f64]) -> Vec<[f64; 3]> {
    let n = dim as f64;
    let p = dim as i32 - 1;
    let series = |r: f64| {
        let a = -1.0 / (2.0 * n);
        let b = 1.0 / (8.0 * n * (n + 2.0));
        [
            1.0 + a * r * r + b * r.powi(4),
            2.0 * a * r + 4.0 * b * r.powi(3),
            r.powi(dim as i32) / n + a * r.powi(dim as i32 + 2) / (n + 2.0),
        ]
    };
    let rhs = |r: f64, y: &[f64; 3]| {
        let curv = if r > 0.0 { (n - 1.0) / r * y[1] } else { 0.0 };
        [y[1], -y[0] - curv, r.powi(p) * y[0]]
    };
    march(rho, 1e-3, series, rhs)
}

fn ball_pair(beta: f64, dim: usize, radius: f64) -> Result<EigenPair> {
    let residual = |s: f64| {
        let y = bessel_like(dim, &[s])[0];
        s * y[1] + beta * radius * y[0]
    };
    // Φ decreases from 1 to its first zero; the residual changes sign before it
    let mut lo = 0.01;
    let mut hi = lo;
    let mut found = false;
    while hi < 20.0 {
        hi = lo + 0.01;
        if residual(hi) <= 0.0 {
            found = true;
            break;
        }
        lo = hi;
    }
    if !found {
        return Err(Error::Bracketing("no sign change of the Robin residual".into()));
    }
    let s = brent(residual, lo, hi, 1e-15, 300)?;
    let k = s / radius;
    let x: Vec<f64> = (0..SAMPLES)
        .map(|i| radius * i as f64 / (SAMPLES - 1) as f64)
        .collect();
    let rho: Vec<f64> = x.iter().map(|&r| k * r).collect();
    let ys = bessel_like(dim, &rho);
    let total = unit_sphere_area(dim) / k.powi(dim as i32) * ys[SAMPLES - 1][2];
    let phi: Vec<f64> = ys.iter().map(|y| y[0] / total).collect();
    Ok(EigenPair {
        lambda1: k * k,
        root: s,
        m1: phi[SAMPLES - 1],
        x,
        phi,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quadrature::{composite_integral, Weight};

    #[test]
    fn interval_normalized_and_positive() {
        let e = principal_eigenpair(Geometry::Interval, 1.0, 1).unwrap();
        let half = composite_integral(&e.phi, &e.x, Weight::None).unwrap();
        assert!((2.0 * half - 1.0).abs() < 1e-9);
        assert!(e.phi.iter().all(|&p| p > 0.0));
        assert_eq!(e.m1, *e.phi.last().unwrap());
        assert!((e.root * e.root.tan() - 1.0).abs() < 1e-13);
    }

    #[test]
    fn interval_dirichlet_limit() {
        let e = principal_eigenpair(Geometry::Interval, 1e8, 1).unwrap();
        assert!((e.lambda1 - std::f64::consts::PI.powi(2) / 4.0).abs() < 1e-6);
    }

    #[test]
    fn ball_dimension_one_matches_interval() {
        let a = principal_eigenpair(Geometry::Interval, 2.0, 1).unwrap();
        let b = principal_eigenpair(Geometry::Ball { radius: 1.0 }, 2.0, 1).unwrap();
        assert!((a.lambda1 - b.lambda1).abs() < 1e-10);
        assert!((a.m1 - b.m1).abs() < 1e-9);
    }

    #[test]
    fn ball_normalized() {
        let e = principal_eigenpair(Geometry::Ball { radius: 1.5 }, 1.0, 3).unwrap();
        let i = composite_integral(&e.phi, &e.x, Weight::Radial(2)).unwrap();
        assert!((unit_sphere_area(3) * i - 1.0).abs() < 1e-7);
        assert!(e.phi.windows(2).all(|w| w[1] < w[0]));
    }
}
