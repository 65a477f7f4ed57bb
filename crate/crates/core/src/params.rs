//! Model parameters, geometry descriptors and initial states.
//!
//! The one-dimensional problem is posed on (-1, 1) but solved on the half
//! interval [0, 1] with a symmetry condition at x = 0. Every integral over the
//! full domain is therefore twice the half-domain value. The ball B_R is
//! handled in the radial variable r ∈ [0, R].

use crate::numerics::gamma_half;
use crate::{Error, Result};
use std::f64::consts::PI;

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Geometry {
    /// The interval (-1, 1); requires `dim == 1`.
    Interval,
    /// The N-dimensional ball of the given radius.
    Ball { radius: f64 },
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ProblemParams {
    /// Applied-voltage parameter λ.
    pub lambda: f64,
    /// Capacitance ratio α = C₀/C_f; zero selects the local problem.
    pub alpha: f64,
    /// Robin (spring) coefficient β.
    pub beta: f64,
    /// Spatial dimension N.
    pub dim: usize,
    pub geometry: Geometry,
}

impl ProblemParams {
    pub fn interval(lambda: f64, alpha: f64, beta: f64) -> Self {
        Self {
            lambda,
            alpha,
            beta,
            dim: 1,
            geometry: Geometry::Interval,
        }
    }

    pub fn ball(lambda: f64, alpha: f64, beta: f64, dim: usize, radius: f64) -> Self {
        Self {
            lambda,
            alpha,
            beta,
            dim,
            geometry: Geometry::Ball { radius },
        }
    }

    /// Returns the parameters unchanged when every invariant holds.
    pub fn validate(self) -> Result<Self> {
        if !(self.lambda > 0.0) || !self.lambda.is_finite() {
            return Err(Error::InvalidParameter("lambda must be positive".into()));
        }
        if !(self.beta > 0.0) || !self.beta.is_finite() {
            return Err(Error::InvalidParameter("beta must be positive".into()));
        }
        if !(self.alpha >= 0.0) || !self.alpha.is_finite() {
            return Err(Error::InvalidParameter("alpha must be nonnegative".into()));
        }
        if self.dim == 0 {
            return Err(Error::InvalidParameter("dim must be at least 1".into()));
        }
        match self.geometry {
            Geometry::Interval if self.dim != 1 => Err(Error::InvalidParameter(
                "interval geometry requires dim = 1".into(),
            )),
            Geometry::Ball { radius } if !(radius > 0.0) || !radius.is_finite() => Err(
                Error::InvalidParameter("ball radius must be positive".into()),
            ),
            _ => Ok(self),
        }
    }

    /// True for α = 0, the problem without series capacitor.
    pub fn is_local(&self) -> bool {
        self.alpha == 0.0
    }

    /// Right end of the computational half-domain: 1 for the interval, R for the ball.
    pub fn half_length(&self) -> f64 {
        match self.geometry {
            Geometry::Interval => 1.0,
            Geometry::Ball { radius } => radius,
        }
    }

    /// True when the Laplacian carries the (N-1)/r term.
    pub fn is_radial(&self) -> bool {
        matches!(self.geometry, Geometry::Ball { .. })
    }

    /// Factor turning a half-line integral `∫_0^L g(r) r^{N-1} dr` into `∫_Ω g dx`.
    ///
    /// Interval: 2 (two symmetric halves). Ball: the area of the unit sphere N ω_N.
    pub fn domain_factor(&self) -> f64 {
        match self.geometry {
            Geometry::Interval => 2.0,
            Geometry::Ball { .. } => unit_sphere_area(self.dim),
        }
    }

    /// Exponent of the radial weight r^{N-1} used in domain integrals.
    pub fn weight_power(&self) -> usize {
        match self.geometry {
            Geometry::Interval => 0,
            Geometry::Ball { .. } => self.dim - 1,
        }
    }
}

/// Volume of the unit ball in R^N, π^{N/2}/Γ(N/2+1).
pub fn unit_ball_volume(dim: usize) -> f64 {
    PI.powf(dim as f64 / 2.0) / gamma_half(dim + 2)
}

/// Area of the unit sphere ∂B_1 ⊂ R^N, 2π^{N/2}/Γ(N/2).
pub fn unit_sphere_area(dim: usize) -> f64 {
    2.0 * PI.powf(dim as f64 / 2.0) / gamma_half(dim)
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GeometryFacts {
    /// |Ω|.
    pub volume: f64,
    /// Area of ∂B_R; `None` for the interval.
    pub surface: Option<f64>,
}

pub fn geometry_facts(params: &ProblemParams) -> GeometryFacts {
    match params.geometry {
        Geometry::Interval => GeometryFacts {
            volume: 2.0,
            surface: None,
        },
        Geometry::Ball { radius } => {
            let n = params.dim;
            GeometryFacts {
                volume: unit_ball_volume(n) * radius.powi(n as i32),
                surface: Some(unit_sphere_area(n) * radius.powi(n as i32 - 1)),
            }
        }
    }
}

/// Computational grid ξ_i = i/M and the physical nodes X_i it maps to.
#[derive(Debug, Clone, PartialEq)]
pub struct MeshState {
    pub xi: Vec<f64>,
    pub x: Vec<f64>,
}

impl MeshState {
    /// Uniform mesh with M cells on [0, length].
    pub fn uniform(cells: usize, length: f64) -> Self {
        let xi: Vec<f64> = (0..=cells).map(|i| i as f64 / cells as f64).collect();
        let x = xi.iter().map(|s| s * length).collect();
        Self { xi, x }
    }

    pub fn npoints(&self) -> usize {
        self.x.len()
    }

    pub fn cells(&self) -> usize {
        self.x.len() - 1
    }

    pub fn check_monotone(&self) -> Result<()> {
        check_monotone(&self.x)
    }
}

pub(crate) fn check_monotone(x: &[f64]) -> Result<()> {
    match x.windows(2).position(|w| !(w[1] > w[0])) {
        Some(i) => Err(Error::MeshTangled(i + 1)),
        None => Ok(()),
    }
}

/// Solution samples on the mesh nodes together with physical and computational time.
#[derive(Debug, Clone, PartialEq)]
pub struct FieldState {
    pub u: Vec<f64>,
    pub t: f64,
    pub tau: f64,
}

impl FieldState {
    pub fn max(&self) -> f64 {
        self.u.iter().cloned().fold(f64::NEG_INFINITY, f64::max)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum InitialProfile {
    /// The undeflected membrane u ≡ 0.
    Zero,
    /// Samples on the uniform initial mesh, one per node.
    Samples(Vec<f64>),
}

/// Uniform initial mesh and the initial field on it.
///
/// Supplied samples must lie in [0, 1) and satisfy the Robin condition at the
/// right end. The derivative there is taken from the one-sided second-order
/// difference; the tolerance is 1e-8 plus the truncation error of that formula
/// estimated from the third difference of the samples.
pub fn initial_state(
    params: &ProblemParams,
    cells: usize,
    u0: &InitialProfile,
) -> Result<(MeshState, FieldState)> {
    let params = params.validate()?;
    if cells < 8 {
        return Err(Error::InvalidParameter(format!(
            "grid needs at least 8 cells, got {cells}"
        )));
    }
    let mesh = MeshState::uniform(cells, params.half_length());
    let u = match u0 {
        InitialProfile::Zero => vec![0.0; cells + 1],
        InitialProfile::Samples(s) => {
            if s.len() != cells + 1 {
                return Err(Error::InvalidInitialData(format!(
                    "expected {} samples, got {}",
                    cells + 1,
                    s.len()
                )));
            }
            if let Some(i) = s.iter().position(|&v| !(0.0..1.0).contains(&v)) {
                return Err(Error::InvalidInitialData(format!(
                    "u0[{i}] = {} outside [0, 1)",
                    s[i]
                )));
            }
            let residual = robin_residual(s, &mesh.x, params.beta);
            let tol = 1e-8 + robin_truncation_bound(s, &mesh.x);
            if residual.abs() > tol {
                return Err(Error::InvalidInitialData(format!(
                    "Robin condition violated: u_x + beta u = {residual:e}"
                )));
            }
            s.clone()
        }
    };
    Ok((mesh, FieldState { u, t: 0.0, tau: 0.0 }))
}

/// u_x(L) + β u(L) with the one-sided second-order difference on a uniform mesh.
pub(crate) fn robin_residual(u: &[f64], x: &[f64], beta: f64) -> f64 {
    let n = u.len() - 1;
    let h = x[n] - x[n - 1];
    let ux = (3.0 * u[n] - 4.0 * u[n - 1] + u[n - 2]) / (2.0 * h);
    ux + beta * u[n]
}

fn robin_truncation_bound(u: &[f64], x: &[f64]) -> f64 {
    let n = u.len() - 1;
    let h = x[n] - x[n - 1];
    let third = (u[n] - 3.0 * u[n - 1] + 3.0 * u[n - 2] - u[n - 3]) / h.powi(3);
    2.0 * h * h / 3.0 * third.abs()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn accepts_valid_and_flags_local() {
        let p = ProblemParams::interval(1.0, 1.0, 1.0).validate().unwrap();
        assert!(!p.is_local());
        let p = ProblemParams::interval(0.05, 0.0, 1.0).validate().unwrap();
        assert!(p.is_local());
    }

    #[test]
    fn rejects_bad_parameters() {
        let e = ProblemParams::interval(-1.0, 1.0, 1.0).validate().unwrap_err();
        assert_eq!(e.to_string(), "invalid parameter: lambda must be positive");
        assert!(ProblemParams::interval(1.0, 1.0, 0.0).validate().is_err());
        assert!(ProblemParams::interval(1.0, -0.1, 1.0).validate().is_err());
        assert!(ProblemParams::ball(1.0, 0.0, 1.0, 2, 0.0).validate().is_err());
        let mut p = ProblemParams::interval(1.0, 0.0, 1.0);
        p.dim = 2;
        assert!(p.validate().is_err());
    }

    #[test]
    fn geometry_volumes() {
        let f = geometry_facts(&ProblemParams::interval(1.0, 0.0, 1.0));
        assert_eq!(f.volume, 2.0);
        assert!(f.surface.is_none());
        let f = geometry_facts(&ProblemParams::ball(1.0, 0.0, 1.0, 2, 1.0));
        assert!((f.volume - PI).abs() < 1e-15);
        assert!((f.surface.unwrap() - 2.0 * PI).abs() < 1e-14);
        let f = geometry_facts(&ProblemParams::ball(1.0, 0.0, 1.0, 3, 2.0));
        assert!((f.volume - 4.0 / 3.0 * PI * 8.0).abs() < 1e-12);
        assert!((f.surface.unwrap() - 4.0 * PI * 4.0).abs() < 1e-12);
    }

    #[test]
    fn zero_initial_state() {
        let p = ProblemParams::interval(0.05, 0.0, 1.0);
        let (mesh, field) = initial_state(&p, 141, &InitialProfile::Zero).unwrap();
        assert_eq!(mesh.npoints(), 142);
        assert!(field.u.iter().all(|&v| v == 0.0));
        assert_eq!(mesh.x[141], 1.0);
        for (i, xi) in mesh.xi.iter().enumerate() {
            assert_eq!(*xi, i as f64 / 141.0);
        }
    }

    #[test]
    fn constant_profile_violates_robin() {
        let p = ProblemParams::interval(0.05, 0.0, 1.0);
        let u0 = InitialProfile::Samples(vec![0.5; 33]);
        assert!(matches!(
            initial_state(&p, 32, &u0),
            Err(Error::InvalidInitialData(_))
        ));
    }

    #[test]
    fn out_of_range_profile_rejected() {
        let p = ProblemParams::interval(0.05, 0.0, 1.0);
        let mut s = vec![0.0; 17];
        s[3] = 1.0;
        assert!(initial_state(&p, 16, &InitialProfile::Samples(s.clone())).is_err());
        s[3] = -0.1;
        assert!(initial_state(&p, 16, &InitialProfile::Samples(s)).is_err());
        assert!(initial_state(&p, 4, &InitialProfile::Zero).is_err());
    }

    #[test]
    fn quadratic_robin_profile_accepted() {
        // u = c (1 + 2/β - x^2)/... satisfies u_x(1) + β u(1) = 0 exactly:
        // u = a - b x^2 with -2b + β(a - b) = 0  ->  a = b (2 + β)/β
        let beta = 1.0;
        let b = 0.1;
        let a = b * (2.0 + beta) / beta;
        let s: Vec<f64> = (0..=40).map(|i| a - b * (i as f64 / 40.0).powi(2)).collect();
        let p = ProblemParams::interval(0.05, 0.0, beta);
        assert!(initial_state(&p, 40, &InitialProfile::Samples(s)).is_ok());
    }
}
