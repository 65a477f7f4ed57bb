//! Below the pull-in voltage the membrane settles on the stable steady state.

use memsq::evolve::{integrate, SchemeConfig};
use memsq::params::{InitialProfile, ProblemParams};
use memsq::steady::{lower_branch_at_lambda, reconstruct_profile};

fn main() -> memsq::Result<()> {
    let lambda = 0.05;
    let params = ProblemParams::interval(lambda, 0.0, 1.0);
    let traj = integrate(&params, &SchemeConfig::default(), 141, &InitialProfile::Zero)?;
    let last = traj.last();
    println!("{} after {} steps at t = {:.3}, max u = {:.6}", traj.status.label(), traj.steps(), last.t, last.umax);

    let exact = reconstruct_profile(&lower_branch_at_lambda(lambda, 0.0, 1.0)?, 3)?;
    let w = exact.deflection();
    println!("steady solution: u(0) = {:.6}, u(1) = {:.6}", w[0], w[2]);
    let s = &traj.final_state;
    println!("simulation:      u(0) = {:.6}, u(1) = {:.6}", s.u[0], s.u[s.u.len() - 1]);

    for r in traj.rows.iter().step_by(100) {
        println!("t = {:8.4}  max u = {:.6}  E = {:+.6}", r.t, r.umax, r.energy);
    }
    Ok(())
}
