//! Principal Robin eigenpairs as β moves from soft to clamped support.

use memsq::params::Geometry;
use memsq::steady::principal_eigenpair;

fn main() -> memsq::Result<()> {
    println!("    beta   interval     disk (N=2)   ball (N=3)");
    for beta in [0.1, 1.0, 10.0, 1e3, 1e8] {
        let i = principal_eigenpair(Geometry::Interval, beta, 1)?;
        let d = principal_eigenpair(Geometry::Ball { radius: 1.0 }, beta, 2)?;
        let b = principal_eigenpair(Geometry::Ball { radius: 1.0 }, beta, 3)?;
        println!("{beta:8.0e} {:12.8} {:12.8} {:12.8}", i.lambda1, d.lambda1, b.lambda1);
    }
    println!("clamped limits: (pi/2)^2 = {:.8}, j0^2 = 5.78318596, pi^2 = {:.8}",
        std::f64::consts::FRAC_PI_2.powi(2),
        std::f64::consts::PI.powi(2));
    Ok(())
}
