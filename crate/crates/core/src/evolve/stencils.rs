//! Finite-difference stencils on the moving mesh.

use crate::{Error, Result};

#[derive(Debug, Clone, PartialEq)]
pub struct Stencils {
    /// Δ_x u; zero at the symmetry node by ghost reflection.
    pub ux: Vec<f64>,
    /// Δ_x² u; 2(u_1 - u_0)/X_1² at the symmetry node.
    pub uxx: Vec<f64>,
    /// Δ_ξ² X.
    pub xxi2: Vec<f64>,
    /// Δ_ξ(M Δ_ξ X) with half-node monitor averages.
    pub flux: Vec<f64>,
}

/// Checks X strictly increasing, distinguishing touching from crossing nodes.
pub fn check_cells(x: &[f64]) -> Result<()> {
    for i in 1..x.len() {
        let h = x[i] - x[i - 1];
        if h == 0.0 {
            return Err(Error::ZeroCellWidth(i));
        }
        if !(h > 0.0) {
            return Err(Error::MeshTangled(i));
        }
    }
    Ok(())
}

/// The four stencils at every node. End nodes carry zeros in the mesh
/// stencils; the last node's u stencils are one-sided and unused by the scheme.
pub fn stencils(u: &[f64], x: &[f64], monitor: &[f64], dxi: f64) -> Result<Stencils> {
    check_cells(x)?;
    let n = x.len() - 1;
    let mut s = Stencils {
        ux: vec![0.0; n + 1],
        uxx: vec![0.0; n + 1],
        xxi2: vec![0.0; n + 1],
        flux: vec![0.0; n + 1],
    };
    s.uxx[0] = 2.0 * (u[1] - u[0]) / (x[1] - x[0]).powi(2);
    for i in 1..n {
        let (hm, hp) = (x[i] - x[i - 1], x[i + 1] - x[i]);
        s.ux[i] = (u[i + 1] - u[i - 1]) / (hm + hp);
        s.uxx[i] = 2.0 / (hm + hp) * ((u[i + 1] - u[i]) / hp - (u[i] - u[i - 1]) / hm);
        s.xxi2[i] = (x[i + 1] - 2.0 * x[i] + x[i - 1]) / (dxi * dxi);
        s.flux[i] = (0.5 * (monitor[i + 1] + monitor[i]) * hp - 0.5 * (monitor[i] + monitor[i - 1]) * hm) / (dxi * dxi);
    }
    s.ux[n] = (u[n] - u[n - 1]) / (x[n] - x[n - 1]);
    Ok(s)
}
