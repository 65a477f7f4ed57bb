//! Small scalar numerics shared by the steady and eigen solvers.

use crate::{Error, Result};

/// Brent's method on a sign-changing bracket `[a, b]`.
pub fn brent<F>(mut f: F, a: f64, b: f64, xtol: f64, max_iter: usize) -> Result<f64>
where
    F: FnMut(f64) -> f64,
{
    let (mut a, mut b) = (a, b);
    let mut fa = f(a);
    let mut fb = f(b);
    if fa == 0.0 {
        return Ok(a);
    }
    if fb == 0.0 {
        return Ok(b);
    }
    if !(fa.is_finite() && fb.is_finite()) || fa.signum() == fb.signum() {
        return Err(Error::Bracketing(format!(
            "f({a}) = {fa}, f({b}) = {fb} do not bracket a root"
        )));
    }
    let (mut c, mut fc) = (a, fa);
    let mut d = b - a;
    let mut e = d;
    for _ in 0..max_iter {
        if fb.signum() == fc.signum() {
            c = a;
            fc = fa;
            d = b - a;
            e = d;
        }
        if fc.abs() < fb.abs() {
            a = b;
            b = c;
            c = a;
            fa = fb;
            fb = fc;
            fc = fa;
        }
        let tol = 2.0 * f64::EPSILON * b.abs() + 0.5 * xtol;
        let m = 0.5 * (c - b);
        if m.abs() <= tol || fb == 0.0 {
            return Ok(b);
        }
        if e.abs() >= tol && fa.abs() > fb.abs() {
            let s = fb / fa;
            let (mut p, mut q);
            if a == c {
                p = 2.0 * m * s;
                q = 1.0 - s;
            } else {
                let qa = fa / fc;
                let r = fb / fc;
                p = s * (2.0 * m * qa * (qa - r) - (b - a) * (r - 1.0));
                q = (qa - 1.0) * (r - 1.0) * (s - 1.0);
            }
            if p > 0.0 {
                q = -q;
            } else {
                p = -p;
            }
            if 2.0 * p < (3.0 * m * q - (tol * q).abs()).min((e * q).abs()) {
                e = d;
                d = p / q;
            } else {
                d = m;
                e = m;
            }
        } else {
            d = m;
            e = m;
        }
        a = b;
        fa = fb;
        b += if d.abs() > tol { d } else { tol.copysign(m) };
        fb = f(b);
    }
    Err(Error::NoConvergence(format!(
        "brent did not converge in {max_iter} iterations"
    )))
}

/// Golden-section search for the maximum of a unimodal `f` on `[a, b]`.
///
/// Returns `(argmax, max)` once the bracket is narrower than `xtol`.
pub fn golden_max<F>(mut f: F, a: f64, b: f64, xtol: f64) -> (f64, f64)
where
    F: FnMut(f64) -> f64,
{
    let inv_phi = (5f64.sqrt() - 1.0) / 2.0;
    let (mut a, mut b) = (a, b);
    let mut x1 = b - inv_phi * (b - a);
    let mut x2 = a + inv_phi * (b - a);
    let mut f1 = f(x1);
    let mut f2 = f(x2);
    while (b - a).abs() > xtol {
        if f1 < f2 {
            a = x1;
            x1 = x2;
            f1 = f2;
            x2 = a + inv_phi * (b - a);
            f2 = f(x2);
        } else {
            b = x2;
            x2 = x1;
            f2 = f1;
            x1 = b - inv_phi * (b - a);
            f1 = f(x1);
        }
        // bracket can no longer shrink in floating point
        if x1 >= x2 {
            break;
        }
    }
    if f1 >= f2 {
        (x1, f1)
    } else {
        (x2, f2)
    }
}

/// One classical RK4 step for an autonomous-in-shape system `y' = f(s, y)`.
pub fn rk4_step<const K: usize, F>(f: &F, s: f64, y: [f64; K], h: f64) -> [f64; K]
where
    F: Fn(f64, &[f64; K]) -> [f64; K],
{
    let k1 = f(s, &y);
    let mut tmp = [0.0; K];
    for i in 0..K {
        tmp[i] = y[i] + 0.5 * h * k1[i];
    }
    let k2 = f(s + 0.5 * h, &tmp);
    for i in 0..K {
        tmp[i] = y[i] + 0.5 * h * k2[i];
    }
    let k3 = f(s + 0.5 * h, &tmp);
    for i in 0..K {
        tmp[i] = y[i] + h * k3[i];
    }
    let k4 = f(s + h, &tmp);
    let mut out = y;
    for i in 0..K {
        out[i] += h / 6.0 * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
    }
    out
}

/// Ordinary least squares `y ≈ a + b x`. Returns `(a, b, r_squared)`.
pub fn linear_fit(x: &[f64], y: &[f64]) -> (f64, f64, f64) {
    let n = x.len() as f64;
    let mx = x.iter().sum::<f64>() / n;
    let my = y.iter().sum::<f64>() / n;
    let (mut sxx, mut sxy, mut syy) = (0.0, 0.0, 0.0);
    for (&xi, &yi) in x.iter().zip(y) {
        sxx += (xi - mx) * (xi - mx);
        sxy += (xi - mx) * (yi - my);
        syy += (yi - my) * (yi - my);
    }
    let b = sxy / sxx;
    let a = my - b * mx;
    let r2 = if syy > 0.0 { sxy * sxy / (sxx * syy) } else { 1.0 };
    (a, b, r2)
}

/// Γ(n/2) for a positive integer `n`, by exact recurrence from Γ(1) and Γ(1/2).
pub fn gamma_half(n: usize) -> f64 {
    assert!(n > 0, "gamma_half needs n >= 1");
    let mut g = if n % 2 == 0 { 1.0 } else { std::f64::consts::PI.sqrt() };
    let mut k = if n % 2 == 0 { 2 } else { 1 };
    while k < n {
        g *= k as f64 / 2.0;
        k += 2;
    }
    g
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn brent_finds_cubic_root() {
        let r = brent(|x| x * x * x - 2.0, 0.0, 2.0, 1e-15, 200).unwrap();
        assert!((r - 2f64.cbrt()).abs() < 1e-14);
    }

    #[test]
    fn brent_rejects_non_bracket() {
        assert!(matches!(
            brent(|x| x * x + 1.0, -1.0, 1.0, 1e-12, 100),
            Err(Error::Bracketing(_))
        ));
    }

    #[test]
    fn golden_finds_parabola_peak() {
        let (x, f) = golden_max(|x| -(x - 0.3) * (x - 0.3) + 2.0, 0.0, 1.0, 1e-10);
        assert!((x - 0.3).abs() < 1e-7);
        assert!((f - 2.0).abs() < 1e-15);
    }

    #[test]
    fn gamma_half_values() {
        let pi = std::f64::consts::PI;
        assert_eq!(gamma_half(2), 1.0);
        assert!((gamma_half(1) - pi.sqrt()).abs() < 1e-15);
        // Γ(7/2) = 15√π/8
        assert!((gamma_half(7) - 15.0 * pi.sqrt() / 8.0).abs() < 1e-14);
        assert_eq!(gamma_half(6), 2.0);
    }

    #[test]
    fn rk4_exponential() {
        let f = |_s: f64, y: &[f64; 1]| [y[0]];
        let mut y = [1.0];
        let h = 1e-3;
        for i in 0..1000 {
            y = rk4_step(&f, i as f64 * h, y, h);
        }
        assert!((y[0] - 1f64.exp()).abs() < 1e-12);
    }
}
