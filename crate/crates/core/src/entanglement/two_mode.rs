use std::f64::consts::PI;

use rand::SeedableRng;
use rand_chacha::ChaCha20Rng;

use crate::correlations::{MeasureReport, Method, Witness};
use crate::error::{Error, Result};
use crate::gaussian::{local_invariants, reduce, renyi2_entropy, to_standard_form, CovarianceMatrix, ModePartition, TwoModeStandardForm, PHYSICAL_TOL};
use crate::optimize::golden_section;

use super::oracle::{convex_roof_oracle, DEFAULT_RESTARTS};
use super::{RADICAND_CLAMP, RADICAND_FAIL};

const THETA_GRID: usize = 720;

/// Smallest symplectic eigenvalue of the partially transposed state.
/// Below one means entangled.
pub fn ppt_min_symplectic_eigenvalue(cm: &CovarianceMatrix) -> Result<f64> {
    let inv = local_invariants(cm)?;
    let delta = inv.i1 + inv.i2 - 2.0 * inv.i3;
    let disc = (delta * delta - 4.0 * inv.i4).max(0.0);
    Ok((2.0 * inv.i4 / (delta + disc.sqrt())).sqrt())
}

/// Pieces of `m_theta` that do not depend on `theta`.
pub(crate) struct MThetaTerms {
    pub e: f64,
    /// `sqrt((a - b e)(b - a e))`
    pub root: f64,
    /// `(a^2 - b^2) sqrt(1 - (c+ e + c-)^2 / rad)`
    pub sin_coeff: f64,
    /// `num / sqrt(rad)`
    pub cos_coeff: f64,
    pub base: f64,
    pub shift: f64,
}

pub(crate) fn clamp_radicand(x: f64, what: &str) -> Result<f64> {
    if x < -RADICAND_FAIL {
        return Err(Error::Domain(format!("{what} radicand {x:e} is negative")));
    }
    Ok(if x < RADICAND_CLAMP { x.max(0.0) } else { x })
}

pub(crate) fn m_theta_terms(sf: &TwoModeStandardForm) -> Result<MThetaTerms> {
    let TwoModeStandardForm { a, b, c_plus: cp, c_minus: cm } = *sf;
    let e = a * b - cm * cm;
    let rad = clamp_radicand((a - b * e) * (b - a * e), "m_theta")?;
    let num = 2.0 * a * b * cm.powi(3) + (a * a + b * b) * cp * cm * cm + ((1.0 - 2.0 * b * b) * a * a + b * b) * cm
        - a * b * (a * a + b * b - 2.0) * cp;
    let lin = cp * e + cm;
    let scale = 1.0 + a * a * b * b;
    let root = rad.sqrt();
    let (sin_coeff, cos_coeff) = if rad > RADICAND_CLAMP * scale * scale {
        let inner = clamp_radicand(1.0 - lin * lin / rad, "m_theta")?;
        ((a * a - b * b) * inner.sqrt(), num / root)
    } else if num.abs() <= 1e-7 * scale * scale && lin.abs() <= 1e-7 * scale {
        // pure-state limit: both radical terms vanish with the difference matrix
        (0.0, 0.0)
    } else {
        return Err(Error::Domain("degenerate m_theta radical with non-vanishing numerator".into()));
    };
    Ok(MThetaTerms {
        e,
        root,
        sin_coeff,
        cos_coeff,
        base: a * a + b * b + 2.0 * cp * cm,
        shift: cp * e - cm,
    })
}

impl MThetaTerms {
    pub(crate) fn eval(&self, theta: f64) -> f64 {
        let (s, c) = theta.sin_cos();
        let f = self.shift + c * self.root;
        let g = 2.0 * self.e * (self.base + s * self.sin_coeff - c * self.cos_coeff);
        1.0 + f * f / g
    }
}

/// One-parameter family whose minimum over `theta` gives `exp(2 E_2)` for an
/// entangled two-mode state in standard form.
///
/// The factor `2e` multiplies the whole denominator bracket, sine and cosine
/// terms included.
pub fn m_theta(sf: &TwoModeStandardForm, theta: f64) -> Result<f64> {
    Ok(m_theta_terms(sf)?.eval(theta))
}

/// Variant in which only the first denominator term carries the factor `2e`.
/// Kept for diagnostics; it underestimates the convex roof.
pub fn m_theta_as_printed(sf: &TwoModeStandardForm, theta: f64) -> Result<f64> {
    let t = m_theta_terms(sf)?;
    let (s, c) = theta.sin_cos();
    let f = t.shift + c * t.root;
    let g = 2.0 * t.e * t.base + s * t.sin_coeff - c * t.cos_coeff;
    Ok(1.0 + f * f / g)
}

/// Minimum of `m_theta` over a uniform grid refined by golden-section search.
pub(crate) fn minimize_m_theta(sf: &TwoModeStandardForm) -> Result<(f64, f64, usize)> {
    let terms = m_theta_terms(sf)?;
    let step = 2.0 * PI / THETA_GRID as f64;
    let mut best = (0.0, f64::INFINITY);
    for i in 0..THETA_GRID {
        let th = i as f64 * step;
        let v = terms.eval(th);
        if v < best.1 {
            best = (th, v);
        }
    }
    if !best.1.is_finite() {
        return Err(Error::Domain("m_theta is not finite on the grid".into()));
    }
    let (th, v, iters) = golden_section(|t| terms.eval(t), best.0 - step, best.0 + step, 1e-11);
    let (th, v) = if v < best.1 { (th, v) } else { best };
    Ok((th.rem_euclid(2.0 * PI), v, iters))
}

/// Gaussian Renyi-2 entanglement of a two-mode state.
pub fn e2_two_mode(cm: &CovarianceMatrix) -> Result<MeasureReport> {
    if ppt_min_symplectic_eigenvalue(cm)? >= 1.0 - PHYSICAL_TOL {
        return Ok(MeasureReport::exact(0.0, Witness::None));
    }
    let sf = to_standard_form(cm)?;
    match minimize_m_theta(&sf) {
        Ok((theta, m, iterations)) => Ok(MeasureReport {
            value: 0.5 * m.ln(),
            witness: Witness::Theta(theta),
            method: Method::ClosedForm,
            converged: true,
            iterations,
        }),
        Err(Error::Domain(_)) => {
            let mut rng = ChaCha20Rng::seed_from_u64(0);
            convex_roof_oracle(cm, DEFAULT_RESTARTS, &mut rng)
        }
        Err(e) => Err(e),
    }
}

/// Entanglement of a pure state across a bipartition: the Renyi-2 entropy of
/// either side.
pub fn e2_pure_bipartition(cm: &CovarianceMatrix, partition: &ModePartition) -> Result<f64> {
    partition.require_bipartition(cm.n_modes())?;
    require_pure(cm)?;
    renyi2_entropy(&reduce(cm, partition.group(0))?)
}

pub(crate) fn require_pure(cm: &CovarianceMatrix) -> Result<()> {
    let ln_det = cm.ln_det();
    if ln_det.abs() > 1e-8 {
        return Err(Error::NotPure(ln_det.exp()));
    }
    Ok(())
}
