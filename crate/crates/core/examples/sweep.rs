//! Quench time against λ and α, one integration per thread.

use memsq::evolve::{integrate, SchemeConfig, TrajectoryStatus};
use memsq::params::{InitialProfile, ProblemParams};
use memsq::quench::detect_and_extrapolate;
use rayon::prelude::*;

fn quench_time(p: ProblemParams) -> f64 {
    let traj = integrate(&p, &SchemeConfig::default(), 141, &InitialProfile::Zero).expect("valid run");
    match traj.status {
        TrajectoryStatus::Quenched => detect_and_extrapolate(&traj).map_or(f64::NAN, |r| r.tq),
        _ => f64::INFINITY,
    }
}

fn main() {
    let lambdas = [2.5, 3.0, 3.5, 4.0];
    let tq: Vec<f64> = lambdas
        .par_iter()
        .map(|&l| quench_time(ProblemParams::interval(l, 1.0, 1.0)))
        .collect();
    for (l, t) in lambdas.iter().zip(&tq) {
        println!("alpha = 1, lambda = {l}: Tq = {t:.5}");
    }
    let alphas = [1.0, 0.5, 0.25, 0.0];
    let tq: Vec<f64> = alphas
        .par_iter()
        .map(|&a| quench_time(ProblemParams::interval(2.0, a, 1.0)))
        .collect();
    for (a, t) in alphas.iter().zip(&tq) {
        println!("lambda = 2, alpha = {a}: Tq = {t:.5}");
    }
}
