//! Touchdown above the pull-in voltage: quench time, rate and profile.
//!
//! `cargo run --example quench_rate [lambda] [alpha]`

use memsq::evolve::{integrate, SchemeConfig};
use memsq::params::{InitialProfile, ProblemParams};
use memsq::quench::detect_and_extrapolate;

fn main() -> memsq::Result<()> {
    let mut args = std::env::args().skip(1).map(|s| s.parse::<f64>().expect("number"));
    let lambda = args.next().unwrap_or(3.0);
    let alpha = args.next().unwrap_or(1.0);
    let params = ProblemParams::interval(lambda, alpha, 1.0);
    let traj = integrate(&params, &SchemeConfig::default(), 141, &InitialProfile::Zero)?;
    println!("{} after {} steps", traj.status.label(), traj.steps());
    let r = detect_and_extrapolate(&traj)?;
    println!("Tq      = {:.8}", r.tq);
    println!("x*      = {}", r.x_star);
    println!("gamma   = {:.4}  (C = {:.4})", r.rate_exponent, r.rate_constant);
    println!("C*      = {:.4}  (residual {:.3})", r.profile_constant, r.profile_residual);
    println!("R^2     = {:.7}{}", r.r_squared, if r.poor_fit { "  poor fit" } else { "" });
    println!("final K = {:.3}", r.terminal_k);
    Ok(())
}
