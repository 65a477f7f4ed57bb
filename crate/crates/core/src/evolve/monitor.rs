//! Monitor function and time dilation.

/// M_i = (1 - u_i)^{-2} + floor.
pub fn monitor(u: &[f64], floor: f64) -> Vec<f64> {
    u.iter().map(|&v| 1.0 / ((1.0 - v) * (1.0 - v)) + floor).collect()
}

/// g = 1/max M_i.
pub fn time_dilation(u: &[f64], floor: f64) -> f64 {
    let umax = u.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
    1.0 / (1.0 / ((1.0 - umax) * (1.0 - umax)) + floor)
}

/// One pass of (M_{i-1} + 2M_i + M_{i+1})/4; end nodes average with their neighbour.
pub fn smooth_monitor(m: &[f64]) -> Vec<f64> {
    let n = m.len() - 1;
    let mut out = vec![0.0; n + 1];
    out[0] = 0.5 * (m[0] + m[1]);
    out[n] = 0.5 * (m[n - 1] + m[n]);
    for i in 1..n {
        out[i] = 0.25 * (m[i - 1] + 2.0 * m[i] + m[i + 1]);
    }
    out
}
