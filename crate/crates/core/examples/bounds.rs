//! Pull-in voltage estimates next to the computed folds.

use memsq::params::ProblemParams;
use memsq::steady::{bounds_report, radial_fold, trace_default_branch};

fn main() -> memsq::Result<()> {
    println!("interval, beta = 1");
    for alpha in [0.0, 0.5, 1.0] {
        let p = ProblemParams::interval(1.0, alpha, 1.0);
        let r = bounds_report(&p)?;
        let fold = trace_default_branch(alpha, 1.0, 400)?.fold.lambda;
        println!(
            "  alpha = {alpha}: {:.5} <= lambda* = {fold:.5} <= {:.5}",
            r.mu_star_lower, r.upper
        );
        if let Some(t) = r.lambda_tilde {
            println!("    quench threshold from zero data: {:?}", t.lambda_tilde);
        }
    }

    println!("ball N = 5, R = 1, beta = 1");
    let p = ProblemParams::ball(1.0, 0.0, 1.0, 5, 1.0);
    let r = bounds_report(&p)?;
    let fold = radial_fold(0.0, 1.0, 5, 1.0)?.lambda;
    println!("  radial fold {fold:.6}, Pohozaev value {:?}", r.pohozaev_lower);
    println!("  principal eigenvalue {:.6}, boundary value of phi {:.6}", r.lambda1, r.m1);
    Ok(())
}
