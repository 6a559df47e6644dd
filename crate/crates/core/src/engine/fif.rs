use super::{Grid, RBParams, SamplingMode, ScalarFn};
use crate::error::invalid;
use crate::partition::AffinePartition;
use crate::Result;

/// Operator whose fixed point interpolates `data = [(x_0, y_0), …, (x_N, y_N)]`.
///
/// Uses `L_i : [x_0, x_N] → [x_{i-1}, x_i]`, constant multipliers `s_i` and
/// affine `q_i(x) = c_i x + d_i` fixed by `q_i(x_0) + s_i y_0 = y_{i-1}` and
/// `q_i(x_N) + s_i y_N = y_i`. The fixed point is continuous and passes
/// through every data point.
pub fn fif_from_data(
    data: &[(f64, f64)],
    s: &[f64],
    grid_intervals: usize,
    mode: SamplingMode,
) -> Result<RBParams> {
    if data.len() < 3 {
        return Err(invalid(format!(
            "need at least 3 data points, got {}",
            data.len()
        )));
    }
    if s.len() + 1 != data.len() {
        return Err(invalid(format!(
            "{} data points need {} multipliers, got {}",
            data.len(),
            data.len() - 1,
            s.len()
        )));
    }
    if let Some(i) = s.iter().position(|v| !(v.abs() < 1.0)) {
        return Err(invalid(format!(
            "multiplier s[{i}] = {} must satisfy |s| < 1",
            s[i]
        )));
    }
    if data.iter().any(|(x, y)| !(x.is_finite() && y.is_finite())) {
        return Err(invalid("data points must be finite"));
    }
    let knots: Vec<f64> = data.iter().map(|p| p.0).collect();
    let partition = AffinePartition::from_knots(&knots)?;
    let (x0, y0) = data[0];
    let (xn, yn) = data[data.len() - 1];
    let q = data
        .windows(2)
        .zip(s)
        .map(|(w, &si)| {
            let left = w[0].1 - si * y0;
            let right = w[1].1 - si * yn;
            let c = (right - left) / (xn - x0);
            ScalarFn::Poly(vec![left - c * x0, c])
        })
        .collect();
    let s = s.iter().map(|&v| ScalarFn::Constant(v)).collect();
    RBParams::new(partition, Grid::new(x0, xn, grid_intervals)?, q, s, mode)
}
