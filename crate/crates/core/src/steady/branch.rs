//! One-dimensional steady branches in closed form.
//!
//! With the gap W = 1 - w, a symmetric steady state on (-1, 1) is fixed by its
//! centre value m = W(0) and edge value M = W(1). The first integral of
//! W'' = μ/W² gives the profile map
//!
//! ```text
//! x(W) = sqrt(m/2μ) B(m, W),   B(m, W) = sqrt(W(W-m)) - m/2 ln m + m ln(sqrt W + sqrt(W-m))
//! ```
//!
//! and the Robin condition at x = 1 closes the system. For the nonlocal problem
//! the integral ∫ dx/W is available in closed form as 2 L(m, M)/B(m, M), so the
//! nonlocal branch is the local one rescaled by K = (1 + 2αL/B)².

use crate::numerics::{brent, golden_max};
use crate::{Error, Result};

/// Points closer than this to the degenerate limit m = M are rejected.
pub const DEGENERACY_CUTOFF: f64 = 1e-10;

const NEWTON_TOL: f64 = 1e-12;
const NEWTON_MAX_ITER: usize = 50;

/// A point (λ, M, m, μ) on the steady bifurcation curve.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BranchPoint {
    /// M: the largest gap, attained at the support x = ±1.
    pub gap_max: f64,
    /// m: the smallest gap, attained at the centre x = 0.
    pub gap_min: f64,
    /// Local parameter μ = λ/K.
    pub mu: f64,
    pub lambda: f64,
}

impl BranchPoint {
    /// Largest deflection, 1 - m.
    pub fn max_deflection(&self) -> f64 {
        1.0 - self.gap_min
    }
}

/// The bracket B(m, M) of the profile map.
pub fn profile_bracket(m: f64, w: f64) -> f64 {
    let d = (w - m).max(0.0);
    (w * d).sqrt() - 0.5 * m * m.ln() + m * (w.sqrt() + d.sqrt()).ln()
}

/// ∂B/∂m = ln((√M + √(M-m))/√m) - √(M/(M-m)).
fn bracket_dm(m: f64, big: f64) -> f64 {
    let d = big - m;
    ((big.sqrt() + d.sqrt()) / m.sqrt()).ln() - (big / d).sqrt()
}

/// L(m, M) = ∫_m^M dW/sqrt(W(W-m)) = ln((2M - m + 2 sqrt(M(M-m)))/m).
pub fn log_integral(m: f64, big: f64) -> f64 {
    ((2.0 * big - m + 2.0 * (big * (big - m)).sqrt()) / m).ln()
}

/// Residuals of the local system at (λ, m) for fixed M and β:
/// the Robin relation cleared of denominators and the arclength relation.
pub fn local_residuals(lambda: f64, m: f64, big: f64, beta: f64) -> [f64; 2] {
    let s = beta * beta * (1.0 - big) * (1.0 - big);
    [
        m * (2.0 * lambda + big * s) - 2.0 * lambda * big,
        (m / (2.0 * lambda)).sqrt() * profile_bracket(m, big) - 1.0,
    ]
}

/// Residuals of the nonlocal system (arclength relation with μ, and the
/// Robin/gain relation) at (λ, m, μ).
pub fn nonlocal_residuals(lambda: f64, m: f64, mu: f64, big: f64, alpha: f64, beta: f64) -> [f64; 2] {
    let b = profile_bracket(m, big);
    let gain = 1.0 + alpha * 2.0 * log_integral(m, big) / b;
    let lhs = beta * beta * (big - 1.0) * (big - 1.0) / 2.0 * m * big / (big - m);
    [(m / (2.0 * mu)).sqrt() * b - 1.0, lhs - lambda / (gain * gain)]
}

/// β/(1+β): the edge gap at which the far end of the branch reaches m → 0.
///
/// The solver follows the root m of larger value, which exists slightly to the
/// left of this value as well, down to a turning point of the branch in M.
pub fn branch_m_lower(beta: f64) -> f64 {
    beta / (1.0 + beta)
}

/// `n` strictly increasing M values spread uniformly over (β/(1+β), 1), a
/// range holding the whole stable part of the branch and its fold.
pub fn branch_m_grid(beta: f64, n: usize) -> Vec<f64> {
    let lo = branch_m_lower(beta);
    (1..=n)
        .map(|i| lo + (1.0 - lo) * i as f64 / (n + 1) as f64)
        .collect()
}

/// Solves the local branch system at edge gap `big` = M.
pub fn local_branch_point(big: f64, beta: f64) -> Result<BranchPoint> {
    local_branch_point_from(big, beta, None)
}

/// As [`local_branch_point`], warm-started from `(λ, m)` when given.
pub fn local_branch_point_from(big: f64, beta: f64, guess: Option<(f64, f64)>) -> Result<BranchPoint> {
    if !(big > 0.0 && big < 1.0) {
        return Err(Error::InvalidParameter(format!("M = {big} outside (0, 1)")));
    }
    if !(beta > 0.0) {
        return Err(Error::InvalidParameter("beta must be positive".into()));
    }
    let warm = guess.and_then(|g| newton(big, beta, g).ok());
    let (lambda, m) = match warm {
        Some(sol) => sol,
        None => {
            let start = reduced_solve(big, beta)?;
            newton(big, beta, start).unwrap_or(start)
        }
    };
    if big - m < DEGENERACY_CUTOFF {
        return Err(Error::Degenerate(big - m));
    }
    Ok(BranchPoint {
        gap_max: big,
        gap_min: m,
        mu: lambda,
        lambda,
    })
}

/// Damped Newton on (λ, m) with the analytic Jacobian.
fn newton(big: f64, beta: f64, start: (f64, f64)) -> Result<(f64, f64)> {
    let s = beta * beta * (1.0 - big) * (1.0 - big);
    let (mut lambda, mut m) = start;
    let norm = |r: [f64; 2]| r[0].abs().max(r[1].abs());
    let admissible = |lambda: f64, m: f64| lambda > 0.0 && m > 0.0 && big - m > 0.0;
    if !admissible(lambda, m) {
        return Err(Error::NoConvergence("infeasible starting point".into()));
    }
    let mut r = local_residuals(lambda, m, big, beta);
    for _ in 0..NEWTON_MAX_ITER {
        if norm(r) <= NEWTON_TOL {
            return Ok((lambda, m));
        }
        let b = profile_bracket(m, big);
        let root = (m / (2.0 * lambda)).sqrt();
        let j11 = 2.0 * m - 2.0 * big;
        let j12 = 2.0 * lambda + big * s;
        let j21 = -0.5 * root * b / lambda;
        let j22 = (1.0 / (2.0 * lambda)).sqrt() * (b / (2.0 * m.sqrt()) + m.sqrt() * bracket_dm(m, big));
        let det = j11 * j22 - j12 * j21;
        if !det.is_finite() || det == 0.0 {
            return Err(Error::NoConvergence("singular Jacobian".into()));
        }
        let dl = -(j22 * r[0] - j12 * r[1]) / det;
        let dm = -(-j21 * r[0] + j11 * r[1]) / det;
        let mut step = 1.0;
        loop {
            let (l1, m1) = (lambda + step * dl, m + step * dm);
            if admissible(l1, m1) {
                let r1 = local_residuals(l1, m1, big, beta);
                if norm(r1).is_finite() && (norm(r1) < norm(r) || norm(r1) <= NEWTON_TOL) {
                    lambda = l1;
                    m = m1;
                    r = r1;
                    break;
                }
            }
            step *= 0.5;
            if step < 1e-12 {
                return Err(Error::NoConvergence("line search stalled".into()));
            }
        }
    }
    if norm(r) <= NEWTON_TOL {
        Ok((lambda, m))
    } else {
        Err(Error::NoConvergence(format!(
            "Newton residual {:e} after {NEWTON_MAX_ITER} iterations",
            norm(r)
        )))
    }
}

/// Eliminates λ and solves the scalar equation B(m,M)²(M-m) = β²(1-M)²M for
/// the largest root m ∈ (0, M) by bracketing.
fn reduced_solve(big: f64, beta: f64) -> Result<(f64, f64)> {
    let target = beta * beta * (1.0 - big) * (1.0 - big) * big;
    let g = |m: f64| {
        let b = profile_bracket(m, big);
        b * b * (big - m)
    };
    // g rises from M³ near m = 0 to a peak and then falls to 0 at m = M
    let (m_peak, g_peak) = golden_max(g, 1e-300f64.max(big * 1e-14), big, 1e-14 * big);
    if g_peak < target {
        return Err(Error::NoBranchPoint(big));
    }
    let m = brent(|m| g(m) - target, m_peak, big, 1e-16 * big, 500)?;
    let b = profile_bracket(m, big);
    Ok((0.5 * m * b * b, m))
}

/// Nonlocal branch point at edge gap M: the local solution rescaled by K.
pub fn nonlocal_branch_point(big: f64, alpha: f64, beta: f64) -> Result<BranchPoint> {
    nonlocal_branch_point_from(big, alpha, beta, None)
}

pub fn nonlocal_branch_point_from(
    big: f64,
    alpha: f64,
    beta: f64,
    guess: Option<(f64, f64)>,
) -> Result<BranchPoint> {
    if !(alpha >= 0.0) {
        return Err(Error::InvalidParameter("alpha must be nonnegative".into()));
    }
    let local = local_branch_point_from(big, beta, guess)?;
    let m = local.gap_min;
    if !(m < big) {
        return Err(Error::Degenerate(big - m));
    }
    let gain = 1.0 + alpha * 2.0 * log_integral(m, big) / profile_bracket(m, big);
    Ok(BranchPoint {
        lambda: local.mu * gain * gain,
        ..local
    })
}

/// Branch points over an M grid together with the refined fold.
#[derive(Debug, Clone, PartialEq)]
pub struct Branch {
    pub alpha: f64,
    pub beta: f64,
    pub points: Vec<BranchPoint>,
    /// The point maximising λ: the pull-in voltage λ*.
    pub fold: BranchPoint,
    /// Largest λ among the grid points, before refinement.
    pub grid_fold: BranchPoint,
    /// Set when the discrete maximum sits at the grid edge; the fold is then
    /// that edge point and not an interior maximum.
    pub fold_on_boundary: bool,
}

/// Traces the branch over `m_grid` (strictly increasing, in (0, 1), at least 50
/// points) and refines the fold by golden section.
pub fn trace_branch(alpha: f64, beta: f64, m_grid: &[f64]) -> Result<Branch> {
    if m_grid.len() < 50 {
        return Err(Error::InvalidParameter(format!(
            "M grid needs at least 50 points, got {}",
            m_grid.len()
        )));
    }
    if m_grid.windows(2).any(|w| !(w[1] > w[0])) || !(m_grid[0] > 0.0) || !(m_grid[m_grid.len() - 1] < 1.0) {
        return Err(Error::InvalidParameter(
            "M grid must be strictly increasing in (0, 1)".into(),
        ));
    }
    let mut points = Vec::with_capacity(m_grid.len());
    let mut guess = None;
    for &big in m_grid {
        // grid values left of the turning point in M carry no point
        let p = match nonlocal_branch_point_from(big, alpha, beta, guess) {
            Err(Error::NoBranchPoint(_)) if points.is_empty() => continue,
            other => other?,
        };
        guess = Some((p.mu, p.gap_min));
        points.push(p);
    }
    if points.len() < 3 {
        return Err(Error::InvalidParameter(format!(
            "only {} grid values lie on the branch",
            points.len()
        )));
    }
    let m_grid: Vec<f64> = points.iter().map(|p| p.gap_max).collect();
    let imax = points
        .iter()
        .enumerate()
        .max_by(|a, b| a.1.lambda.total_cmp(&b.1.lambda))
        .map(|(i, _)| i)
        .unwrap();
    let grid_fold = points[imax];
    if imax == 0 || imax == points.len() - 1 {
        return Ok(Branch {
            alpha,
            beta,
            points,
            fold: grid_fold,
            grid_fold,
            fold_on_boundary: true,
        });
    }
    let (lo, hi) = (m_grid[imax - 1], m_grid[imax + 1]);
    let seed = Some((grid_fold.mu, grid_fold.gap_min));
    let lam = |big: f64| {
        nonlocal_branch_point_from(big, alpha, beta, seed)
            .map(|p| p.lambda)
            .unwrap_or(f64::NEG_INFINITY)
    };
    let (m_star, _) = golden_max(lam, lo, hi, 1e-10);
    let fold = nonlocal_branch_point_from(m_star, alpha, beta, seed)?;
    let fold = if fold.lambda >= grid_fold.lambda { fold } else { grid_fold };
    Ok(Branch {
        alpha,
        beta,
        points,
        fold,
        grid_fold,
        fold_on_boundary: false,
    })
}

/// The branch on the default grid of `n` points over (β/(1+β), 1).
pub fn trace_default_branch(alpha: f64, beta: f64, n: usize) -> Result<Branch> {
    trace_branch(alpha, beta, &branch_m_grid(beta, n))
}

/// Steady point on the stable (lower-deflection) part of the branch at a given λ.
///
/// The stable part is M between the fold and 1, where λ decreases from λ* to 0.
pub fn lower_branch_at_lambda(lambda: f64, alpha: f64, beta: f64) -> Result<BranchPoint> {
    let branch = trace_default_branch(alpha, beta, 200)?;
    if lambda >= branch.fold.lambda {
        return Err(Error::NoBranchPoint(lambda));
    }
    let lo = branch.fold.gap_max;
    let f = |big: f64| {
        nonlocal_branch_point(big, alpha, beta)
            .map(|p| p.lambda - lambda)
            .unwrap_or(-lambda)
    };
    // near M = 1 the point degenerates; λ → 0 there
    let mut hi = 1.0 - 1e-3 * (1.0 - lo);
    while f(hi) > 0.0 {
        hi = 1.0 - 0.1 * (1.0 - hi);
        if 1.0 - hi < 1e-12 {
            return Err(Error::NoBranchPoint(lambda));
        }
    }
    let big = brent(f, lo, hi, 1e-15, 300)?;
    nonlocal_branch_point(big, alpha, beta)
}

/// λ along the Dirichlet limit β → ∞ as a function of the centre gap m.
pub fn dirichlet_limit_lambda(m: f64) -> f64 {
    if m >= 1.0 {
        return 0.0;
    }
    let b = (1.0 - m).sqrt() - 0.5 * m * m.ln() + m * (1.0 + (1.0 - m).sqrt()).ln();
    0.5 * m * b * b
}

/// Maximum of [`dirichlet_limit_lambda`] over m ∈ (0, 1): `(m, λ)`.
pub fn dirichlet_limit_fold() -> (f64, f64) {
    let n = 1000;
    let imax = (1..n)
        .max_by(|&a, &b| {
            dirichlet_limit_lambda(a as f64 / n as f64).total_cmp(&dirichlet_limit_lambda(b as f64 / n as f64))
        })
        .unwrap();
    golden_max(
        dirichlet_limit_lambda,
        (imax - 1) as f64 / n as f64,
        (imax + 1) as f64 / n as f64,
        1e-12,
    )
}

/// Sampled steady profile on the half interval [0, 1].
#[derive(Debug, Clone, PartialEq)]
pub struct SteadyProfile {
    pub x: Vec<f64>,
    /// Gap W = 1 - w.
    pub gap: Vec<f64>,
}

impl SteadyProfile {
    /// Deflection w = 1 - W.
    pub fn deflection(&self) -> Vec<f64> {
        self.gap.iter().map(|g| 1.0 - g).collect()
    }
}

/// x(W) for the point's profile map.
pub fn profile_position(point: &BranchPoint, w: f64) -> f64 {
    (point.gap_min / (2.0 * point.mu)).sqrt() * profile_bracket(point.gap_min, w)
}

/// Evaluates the monotone map x(W) on [m, M] and inverts it onto `nsamples`
/// uniform x positions in [0, 1].
pub fn reconstruct_profile(point: &BranchPoint, nsamples: usize) -> Result<SteadyProfile> {
    if nsamples < 2 {
        return Err(Error::InvalidParameter("need at least two samples".into()));
    }
    let (m, big) = (point.gap_min, point.gap_max);
    if !(m > 0.0 && m < big && point.mu > 0.0) {
        return Err(Error::InconsistentPoint(format!("m = {m}, M = {big}, mu = {}", point.mu)));
    }
    let x_end = profile_position(point, big);
    if (x_end - 1.0).abs() > 1e-8 {
        return Err(Error::InconsistentPoint(format!("x(M) = {x_end} instead of 1")));
    }
    let probe: Vec<f64> = (0..=64)
        .map(|k| profile_position(point, m + (big - m) * k as f64 / 64.0))
        .collect();
    if probe.windows(2).any(|w| !(w[1] > w[0])) {
        return Err(Error::InconsistentPoint("profile map is not monotone".into()));
    }
    let mut x = Vec::with_capacity(nsamples);
    let mut gap = Vec::with_capacity(nsamples);
    for i in 0..nsamples {
        let xi = i as f64 / (nsamples - 1) as f64;
        let w = if i == 0 {
            m
        } else if i == nsamples - 1 {
            big
        } else {
            brent(|w| profile_position(point, w) - xi, m, big, 1e-16, 300)?
        };
        x.push(xi);
        gap.push(w);
    }
    Ok(SteadyProfile { x, gap })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn bracket_derivative_matches_finite_difference() {
        let (m, big) = (0.4, 0.8);
        let h = 1e-6;
        let fd = (profile_bracket(m + h, big) - profile_bracket(m - h, big)) / (2.0 * h);
        assert!((fd - bracket_dm(m, big)).abs() < 1e-8);
    }

    #[test]
    fn local_point_residuals_small() {
        for &big in &[0.55, 0.7, 0.761, 0.9, 0.99] {
            let p = local_branch_point(big, 1.0).unwrap();
            let r = local_residuals(p.lambda, p.gap_min, big, 1.0);
            assert!(r[0].abs() <= 1e-10 && r[1].abs() <= 1e-10, "{big}: {r:?}");
            assert!(p.gap_min > 0.0 && p.gap_min < big);
            assert_eq!(p.mu, p.lambda);
        }
    }

    #[test]
    fn grid_point_value() {
        // the tabulated pull-in value is λ at M = 0.761
        let p = local_branch_point(0.761, 1.0).unwrap();
        assert!((p.lambda - 0.108711900526435).abs() < 1e-11);
    }

    #[test]
    fn branch_ends() {
        // the larger root survives slightly left of β/(1+β) and then turns
        let p = local_branch_point(0.483, 1.0).unwrap();
        assert!((p.gap_min - 0.07569).abs() < 1e-4 && (p.lambda - 0.011996).abs() < 1e-5);
        assert!(matches!(local_branch_point(0.48, 1.0), Err(Error::NoBranchPoint(_))));
        let near_one = local_branch_point(1.0 - 1e-4, 1.0).unwrap();
        assert!(near_one.lambda < 1e-3);
        assert!(near_one.gap_max - near_one.gap_min < 1e-3);
    }

    #[test]
    fn warm_start_agrees_with_cold() {
        let cold = local_branch_point(0.8, 1.0).unwrap();
        let near = local_branch_point(0.79, 1.0).unwrap();
        let warm = local_branch_point_from(0.8, 1.0, Some((near.lambda, near.gap_min))).unwrap();
        assert!((cold.lambda - warm.lambda).abs() < 1e-13);
        assert!((cold.gap_min - warm.gap_min).abs() < 1e-13);
    }

    #[test]
    fn nonlocal_reduces_to_local() {
        for &big in &[0.6, 0.75, 0.95] {
            let l = local_branch_point(big, 1.0).unwrap();
            let n = nonlocal_branch_point(big, 0.0, 1.0).unwrap();
            assert!((l.lambda - n.lambda).abs() <= 1e-12);
            assert!((l.gap_min - n.gap_min).abs() <= 1e-12);
        }
    }

    #[test]
    fn nonlocal_residuals_small() {
        let p = nonlocal_branch_point(0.6, 1.0, 1.0).unwrap();
        let r = nonlocal_residuals(p.lambda, p.gap_min, p.mu, 0.6, 1.0, 1.0);
        assert!(r[0].abs() < 1e-10 && r[1].abs() < 1e-10, "{r:?}");
    }

    #[test]
    fn trace_rejects_short_or_unsorted_grids() {
        assert!(trace_branch(0.0, 1.0, &branch_m_grid(1.0, 10)).is_err());
        let mut g = branch_m_grid(1.0, 60);
        g.swap(3, 4);
        assert!(trace_branch(0.0, 1.0, &g).is_err());
    }

    #[test]
    fn fold_on_boundary_flagged() {
        let grid: Vec<f64> = (0..60).map(|i| 0.8 + 0.15 * i as f64 / 59.0).collect();
        let b = trace_branch(0.0, 1.0, &grid).unwrap();
        assert!(b.fold_on_boundary);
        assert_eq!(b.fold.gap_max, 0.8);
    }

    #[test]
    fn grid_below_branch_is_skipped() {
        let grid: Vec<f64> = (0..99).map(|i| 0.01 * (i + 1) as f64).collect();
        let b = trace_branch(0.0, 1.0, &grid).unwrap();
        assert_eq!(b.points[0].gap_max, grid[48]);
        assert!(!b.fold_on_boundary);
    }

    #[test]
    fn straddling_points_below_fold() {
        let b = trace_default_branch(0.0, 1.0, 100).unwrap();
        let a = local_branch_point(b.fold.gap_max - 0.01, 1.0).unwrap();
        let c = local_branch_point(b.fold.gap_max + 0.01, 1.0).unwrap();
        assert!(a.lambda < b.fold.lambda && c.lambda < b.fold.lambda);
    }

    #[test]
    fn dirichlet_endpoints() {
        assert_eq!(dirichlet_limit_lambda(1.0), 0.0);
        assert!(dirichlet_limit_lambda(1e-12) < 1e-10);
    }

    #[test]
    fn profile_endpoints_and_monotone() {
        let p = local_branch_point(0.8, 1.0).unwrap();
        assert!(profile_position(&p, p.gap_min).abs() < 1e-15);
        assert!((profile_position(&p, p.gap_max) - 1.0).abs() < 1e-8);
        let prof = reconstruct_profile(&p, 101).unwrap();
        assert!(prof.gap.windows(2).all(|w| w[1] > w[0]));
        assert_eq!(prof.gap[0], p.gap_min);
        assert_eq!(prof.gap[100], 0.8);
    }

    #[test]
    fn inconsistent_point_rejected() {
        let mut p = local_branch_point(0.8, 1.0).unwrap();
        p.mu *= 1.1;
        assert!(matches!(reconstruct_profile(&p, 11), Err(Error::InconsistentPoint(_))));
    }

    #[test]
    fn lower_branch_lookup() {
        let p = lower_branch_at_lambda(0.05, 0.0, 1.0).unwrap();
        assert!((p.lambda - 0.05).abs() < 1e-12);
        assert!(p.gap_max > 0.7606);
    }
}
