//! Steady-state, eigen and geometry results checked against independent
//! computations written out here.

use memsq::params::{geometry_facts, Geometry, ProblemParams};
use memsq::quadrature::{composite_integral, Weight};
use memsq::steady::{
    local_branch_point, nonlocal_branch_point, principal_eigenpair, radial_branch_point, reconstruct_profile,
};
use statrs::function::gamma::gamma;

/// RK4 for y'' = f(x, y, y') from (x0, y0, p0) to x1 in n steps.
fn shoot<F: Fn(f64, f64, f64) -> f64>(f: F, x0: f64, y0: f64, p0: f64, x1: f64, n: usize) -> (f64, f64) {
    let h = (x1 - x0) / n as f64;
    let (mut x, mut y, mut p) = (x0, y0, p0);
    for _ in 0..n {
        let (k1y, k1p) = (p, f(x, y, p));
        let (k2y, k2p) = (p + 0.5 * h * k1p, f(x + 0.5 * h, y + 0.5 * h * k1y, p + 0.5 * h * k1p));
        let (k3y, k3p) = (p + 0.5 * h * k2p, f(x + 0.5 * h, y + 0.5 * h * k2y, p + 0.5 * h * k2p));
        let (k4y, k4p) = (p + h * k3p, f(x + h, y + h * k3y, p + h * k3p));
        y += h / 6.0 * (k1y + 2.0 * k2y + 2.0 * k3y + k4y);
        p += h / 6.0 * (k1p + 2.0 * k2p + 2.0 * k3p + k4p);
        x += h;
    }
    (y, p)
}

#[test]
fn local_point_solves_the_boundary_value_problem() {
    let beta = 1.0;
    for big in [0.5, 0.761, 0.9] {
        let p = local_branch_point(big, beta).unwrap();
        // gap W = 1 - w: W'' = λ/W², W(0) = m, W'(0) = 0, W'(1) = β(1 - W(1))
        let (w1, dw1) = shoot(|_, w, _| p.lambda / (w * w), 0.0, p.gap_min, 0.0, 1.0, 20_000);
        assert!((w1 - big).abs() < 1e-9, "M = {big}: W(1) = {w1}");
        assert!((dw1 - beta * (1.0 - w1)).abs() < 1e-9, "M = {big}: W'(1) = {dw1}");
    }
}

#[test]
fn nonlocal_point_is_self_consistent() {
    let (alpha, beta) = (1.0, 1.0);
    let p = nonlocal_branch_point(0.5, alpha, beta).unwrap();
    let prof = reconstruct_profile(&p, 2001).unwrap();
    let inv: Vec<f64> = prof.gap.iter().map(|w| 1.0 / w).collect();
    let half = composite_integral(&inv, &prof.x, Weight::None).unwrap();
    let gain = 1.0 + alpha * 2.0 * half;
    assert!((p.lambda - p.mu * gain * gain).abs() < 1e-6 * p.lambda);
    let (w1, _) = shoot(|_, w, _| p.mu / (w * w), 0.0, p.gap_min, 0.0, 1.0, 20_000);
    assert!((w1 - 0.5).abs() < 1e-9);
}

#[test]
fn radial_point_solves_the_boundary_value_problem() {
    let beta = 1.0;
    for (dim, s) in [(2, 1.0), (3, 1.5), (5, 2.0)] {
        let p = radial_branch_point(s, 0.0, beta, dim, 1.0).unwrap();
        let n = dim as f64;
        // start off the origin with the two-term series W = m + μ r²/(2N m²)
        let r0 = 1e-4;
        let c = p.mu / (2.0 * n * p.gap_min * p.gap_min);
        let (w1, dw1) = shoot(
            |r, w, dw| p.mu / (w * w) - (n - 1.0) / r * dw,
            r0,
            p.gap_min + c * r0 * r0,
            2.0 * c * r0,
            1.0,
            20_000,
        );
        assert!((w1 - p.gap_max).abs() < 1e-7, "N = {dim}: W(1) = {w1} vs {}", p.gap_max);
        assert!((dw1 - beta * (1.0 - w1)).abs() < 1e-7, "N = {dim}: W'(1) = {dw1}");
    }
}

#[test]
fn ball_eigenvalue_in_three_dimensions() {
    // φ = sin(kr)/(kr) with Robin data gives k cot k = 1 - β; β = 1 puts k at π/2
    let e = principal_eigenpair(Geometry::Ball { radius: 1.0 }, 1.0, 3).unwrap();
    let k = std::f64::consts::FRAC_PI_2;
    assert!((e.lambda1 - k * k).abs() < 1e-8, "{}", e.lambda1);
    let e = principal_eigenpair(Geometry::Ball { radius: 1.0 }, 1e8, 3).unwrap();
    let pi2 = std::f64::consts::PI.powi(2);
    assert!((e.lambda1 - pi2).abs() < 1e-4, "{}", e.lambda1);
}

#[test]
fn ball_volume_and_area_match_gamma() {
    for dim in 1..=8 {
        for radius in [0.5, 1.0, 2.0] {
            let f = geometry_facts(&ProblemParams::ball(1.0, 0.0, 1.0, dim, radius));
            let n = dim as f64;
            let vol = std::f64::consts::PI.powf(n / 2.0) * radius.powf(n) / gamma(n / 2.0 + 1.0);
            let area = 2.0 * std::f64::consts::PI.powf(n / 2.0) * radius.powf(n - 1.0) / gamma(n / 2.0);
            assert!((f.volume - vol).abs() <= 1e-12 * vol, "N = {dim}");
            let s = f.surface.expect("ball has a surface");
            assert!((s - area).abs() <= 1e-12 * area, "N = {dim}");
        }
    }
    let f = geometry_facts(&ProblemParams::ball(1.0, 0.0, 1.0, 5, 1.0));
    let g72 = 15.0 * std::f64::consts::PI.sqrt() / 8.0;
    assert!((f.volume - std::f64::consts::PI.powf(2.5) / g72).abs() < 1e-12);
}
