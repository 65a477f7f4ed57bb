//! The Pohozaev identity on shooting profiles in five dimensions.

use memsq::params::ProblemParams;
use memsq::steady::{pohozaev_sides, radial_fold, radial_point_at_mu, radial_profile};

fn main() -> memsq::Result<()> {
    let (dim, beta) = (5, 1.0);
    let fold = radial_fold(0.0, beta, dim, 1.0)?;
    let r: Vec<f64> = (0..=2000).map(|i| i as f64 / 2000.0).collect();
    for frac in [0.25, 0.5, 0.9] {
        let mu = frac * fold.mu;
        let point = radial_point_at_mu(mu, beta, dim, 1.0)?;
        let v = radial_profile(&point, dim, 1.0, &r);
        let p = ProblemParams::ball(mu, 0.0, beta, dim, 1.0);
        let s = pohozaev_sides(&v, &r, mu, &p)?;
        println!(
            "mu = {mu:.5}: interior {:+.10e}  boundary {:+.10e}  rel. gap {:.2e}",
            s.interior,
            s.boundary,
            (s.interior - s.boundary).abs() / s.interior.abs().max(s.boundary.abs())
        );
    }
    Ok(())
}
