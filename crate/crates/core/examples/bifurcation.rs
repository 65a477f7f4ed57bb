//! Steady branches of the interval problem and their pull-in voltages.
//!
//! `cargo run --example bifurcation [beta]`

use memsq::steady::{dirichlet_limit_fold, trace_default_branch};

fn main() -> memsq::Result<()> {
    let beta: f64 = std::env::args().nth(1).map_or(1.0, |s| s.parse().expect("beta"));
    for alpha in [0.0, 0.5, 1.0] {
        let b = trace_default_branch(alpha, beta, 400)?;
        let f = b.fold;
        println!(
            "alpha = {alpha:<4} lambda* = {:.12}  at M = {:.5}, m = {:.5} ({} points)",
            f.lambda,
            f.gap_max,
            f.gap_min,
            b.points.len()
        );
    }
    let (m, lambda) = dirichlet_limit_fold();
    println!("clamped edge limit: lambda* = {lambda:.7} at m = {m:.5}");

    // a coarse look at the local branch
    let b = trace_default_branch(0.0, beta, 60)?;
    println!("\n     M          m       lambda");
    for p in b.points.iter().step_by(5) {
        println!("{:8.4} {:10.6} {:12.8}", p.gap_max, p.gap_min, p.lambda);
    }
    Ok(())
}
