use crate::error::{Error, Result};
use crate::gaussian::TwoModeStandardForm;

use super::two_mode::m_theta_terms;

/// Reading of the cross term in the denominator `G`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GReading {
    /// `a^2 + b^2 + 2 c+ c-`, as in `m_theta`.
    CrossPlusMinus,
    /// `a^2 + b^2 + 2 c+ c+`, kept for diagnostics.
    CrossPlusPlus,
}

/// `K = J - F^2 / G - 1`, with
/// `J = a^2 (1 + b)^2 / ((a + ab - c+^2)(a + ab - c-^2))` and `1 + F^2 / G`
/// equal to `m_theta` at `theta = pi`.
///
/// `K >= 0` is equivalent to `J_2 >= E_2` on entangled states, whose
/// conditional state under heterodyne detection has determinant `a^2 / J`.
pub fn k_function(a: f64, b: f64, c_plus: f64, c_minus: f64) -> Result<f64> {
    k_function_with(a, b, c_plus, c_minus, GReading::CrossPlusMinus)
}

pub fn k_function_with(a: f64, b: f64, c_plus: f64, c_minus: f64, reading: GReading) -> Result<f64> {
    let sf = TwoModeStandardForm { a, b, c_plus, c_minus };
    let t = m_theta_terms(&sf)?;
    let cross = match reading {
        GReading::CrossPlusMinus => 2.0 * c_plus * c_minus,
        GReading::CrossPlusPlus => 2.0 * c_plus * c_plus,
    };
    let j = a * a * (1.0 + b).powi(2) / ((a + a * b - c_plus * c_plus) * (a + a * b - c_minus * c_minus));
    let f = t.shift - t.root;
    let g = 2.0 * t.e * (a * a + b * b + cross + t.cos_coeff);
    if g == 0.0 || !g.is_finite() || !j.is_finite() {
        return Err(Error::Domain(format!("degenerate K-function denominator G = {g}")));
    }
    Ok(j - f * f / g - 1.0)
}
