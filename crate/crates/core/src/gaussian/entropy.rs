use crate::error::{Error, Result};

use super::cm::{CovarianceMatrix, PHYSICAL_TOL};

/// `tr rho^2 = (det gamma)^{-1/2}`.
pub fn purity(cm: &CovarianceMatrix) -> Result<f64> {
    Ok((-renyi2_entropy(cm)?).exp())
}

/// `S_2 = 1/2 ln det gamma`.
pub fn renyi2_entropy(cm: &CovarianceMatrix) -> Result<f64> {
    let ln_det = cm.ln_det();
    if ln_det < (1.0 - PHYSICAL_TOL).ln() {
        return Err(Error::Unphysical(ln_det.exp()));
    }
    Ok(0.5 * ln_det.max(0.0))
}

/// Renyi-alpha entropy from the symplectic spectrum.
pub fn renyi_alpha_entropy(cm: &CovarianceMatrix, alpha: f64) -> Result<f64> {
    if !alpha.is_finite() || alpha <= 0.0 || alpha == 1.0 {
        return Err(Error::InvalidArgument(format!(
            "Renyi order must be positive, finite and different from 1 (got {alpha})"
        )));
    }
    let sum: f64 = cm
        .symplectic_spectrum()
        .values
        .iter()
        .map(|&nu| {
            let nu = nu.max(1.0);
            let hi = (nu + 1.0) / 2.0;
            let lo = (nu - 1.0) / 2.0;
            // ln(hi^alpha - lo^alpha), factored to avoid overflow for large nu
            let ratio = (lo / hi).powf(alpha);
            -(alpha * hi.ln() + (-ratio).ln_1p())
        })
        .sum();
    Ok((sum / (1.0 - alpha)).max(0.0))
}

pub fn von_neumann_entropy(cm: &CovarianceMatrix) -> Result<f64> {
    Ok(cm
        .symplectic_spectrum()
        .values
        .iter()
        .map(|&nu| {
            let hi = (nu + 1.0) / 2.0;
            let lo = (nu - 1.0) / 2.0;
            let lo_term = if lo > 0.0 { lo * lo.ln() } else { 0.0 };
            hi * hi.ln() - lo_term
        })
        .sum::<f64>()
        .max(0.0))
}
