//! Radial problems: shooting folds per dimension and two disk simulations.

use memsq::evolve::{integrate, SchemeConfig};
use memsq::params::{InitialProfile, ProblemParams};
use memsq::steady::radial_fold;

fn main() -> memsq::Result<()> {
    for dim in 1..=5 {
        let f = radial_fold(0.0, 1.0, dim, 1.0)?;
        println!("N = {dim}: local fold {:.6} (centre gap {:.4})", f.lambda, f.gap_min);
    }
    let f = radial_fold(1.0, 1.0, 2, 1.0)?;
    println!("N = 2, alpha = 1: nonlocal fold {:.5}", f.lambda);

    for (lambda, alpha) in [(0.05, 0.0), (0.2, 1.0), (1.0, 0.0)] {
        let p = ProblemParams::ball(lambda, alpha, 1.0, 2, 1.0);
        let traj = integrate(&p, &SchemeConfig::default(), 100, &InitialProfile::Zero)?;
        let last = traj.last();
        println!(
            "disk lambda = {lambda}, alpha = {alpha}: {} at t = {:.4}, max u = {:.5} at r = {}",
            traj.status.label(),
            last.t,
            last.umax,
            last.x_star
        );
    }
    Ok(())
}
