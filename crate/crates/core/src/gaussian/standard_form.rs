use nalgebra::{DMatrix, Matrix2};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg;

use super::cm::{CovarianceMatrix, PHYSICAL_TOL};

/// Local symplectic invariants of a two-mode state:
/// `det gamma_A`, `det gamma_B`, `det sigma_AB`, `det gamma_AB`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct LocalInvariants {
    pub i1: f64,
    pub i2: f64,
    pub i3: f64,
    pub i4: f64,
}

/// Two-mode standard form
///
/// ```text
/// a   0   c+  0
/// 0   a   0   c-
/// c+  0   b   0
/// 0   c-  0   b
/// ```
///
/// with `c+ >= |c-|`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TwoModeStandardForm {
    pub a: f64,
    pub b: f64,
    pub c_plus: f64,
    pub c_minus: f64,
}

impl TwoModeStandardForm {
    pub fn new(a: f64, b: f64, c_plus: f64, c_minus: f64) -> Result<Self> {
        if !(a >= 1.0 - PHYSICAL_TOL && b >= 1.0 - PHYSICAL_TOL) {
            return Err(Error::InvalidArgument(format!("a = {a}, b = {b} must be at least 1")));
        }
        if c_plus < c_minus.abs() {
            return Err(Error::InvalidArgument(format!(
                "standard form needs c+ >= |c-| (got {c_plus}, {c_minus})"
            )));
        }
        let sf = Self { a, b, c_plus, c_minus };
        let phys = sf.physicality();
        if phys < -PHYSICAL_TOL {
            return Err(Error::Unphysical(phys));
        }
        Ok(sf)
    }

    /// Pure two-mode squeezed state with local determinant `a^2`.
    pub fn tmss(a: f64) -> Self {
        let c = (a * a - 1.0).max(0.0).sqrt();
        Self { a, b: a, c_plus: c, c_minus: -c }
    }

    /// Left-hand side of the uncertainty constraint; non-negative for physical forms.
    pub fn physicality(&self) -> f64 {
        let Self { a, b, c_plus: cp, c_minus: cm } = *self;
        (a * a - 1.0) * (b * b - 1.0) - 2.0 * cm * cp - a * b * cp * cp + cm * cm * (-a * b + cp * cp)
    }

    /// Roles of the two modes exchanged.
    pub fn swapped(&self) -> Self {
        Self { a: self.b, b: self.a, ..*self }
    }

    pub fn det(&self) -> f64 {
        (self.a * self.b - self.c_plus * self.c_plus) * (self.a * self.b - self.c_minus * self.c_minus)
    }

    pub fn matrix(&self) -> DMatrix<f64> {
        let Self { a, b, c_plus: cp, c_minus: cm } = *self;
        DMatrix::from_row_slice(
            4,
            4,
            &[a, 0.0, cp, 0.0, 0.0, a, 0.0, cm, cp, 0.0, b, 0.0, 0.0, cm, 0.0, b],
        )
    }

    pub fn to_cm(&self) -> Result<CovarianceMatrix> {
        CovarianceMatrix::new(self.matrix())
    }
}

fn det2(m: &DMatrix<f64>) -> f64 {
    m[(0, 0)] * m[(1, 1)] - m[(0, 1)] * m[(1, 0)]
}

fn require_two_modes(cm: &CovarianceMatrix) -> Result<()> {
    if cm.n_modes() != 2 {
        return Err(Error::ModeCount { expected: 2, actual: cm.n_modes() });
    }
    Ok(())
}

pub fn local_invariants(cm: &CovarianceMatrix) -> Result<LocalInvariants> {
    require_two_modes(cm)?;
    let m = cm.matrix();
    let (a, b) = ([0, 1], [2, 3]);
    Ok(LocalInvariants {
        i1: det2(&linalg::principal(m, &a)),
        i2: det2(&linalg::principal(m, &b)),
        i3: det2(&linalg::block(m, &a, &b)),
        i4: m.determinant(),
    })
}

pub fn to_standard_form(cm: &CovarianceMatrix) -> Result<TwoModeStandardForm> {
    require_two_modes(cm)?;
    let m = cm.matrix();
    let (ia, ib) = ([0, 1], [2, 3]);
    let block_a = to_matrix2(&linalg::principal(m, &ia));
    let block_b = to_matrix2(&linalg::principal(m, &ib));
    let c = to_matrix2(&linalg::block(m, &ia, &ib));
    let a = block_a.determinant().sqrt();
    let b = block_b.determinant().sqrt();
    // sqrt(a) A^{-1/2} and sqrt(b) B^{-1/2} are local symplectics taking the
    // diagonal blocks to aI and bI; the singular values of the transformed
    // off-diagonal block are |c+| and |c-|.
    let (na, nb) = (inv_sqrt2(&block_a, a)?, inv_sqrt2(&block_b, b)?);
    let normalized = na * c * nb * (a * b).sqrt();
    let sv = normalized.svd(false, false).singular_values;
    let (hi, lo) = (sv[0].max(sv[1]), sv[0].min(sv[1]));
    let sign = if c.determinant() < 0.0 { -1.0 } else { 1.0 };
    Ok(TwoModeStandardForm { a, b, c_plus: hi, c_minus: sign * lo })
}

fn to_matrix2(m: &DMatrix<f64>) -> Matrix2<f64> {
    Matrix2::new(m[(0, 0)], m[(0, 1)], m[(1, 0)], m[(1, 1)])
}

/// `M^{-1/2}` of a 2x2 positive-definite matrix with `sqrt(det M) = root_det`.
fn inv_sqrt2(m: &Matrix2<f64>, root_det: f64) -> Result<Matrix2<f64>> {
    let sqrt_m = (m + Matrix2::identity() * root_det) / (m.trace() + 2.0 * root_det).sqrt();
    sqrt_m
        .try_inverse()
        .ok_or_else(|| Error::Numerical("singular local block".into()))
}

/// Two-mode squeezed vacuum: `a = cosh 2r`, `c+- = +-sinh 2r`.
pub fn tmss_cm(r: f64) -> CovarianceMatrix {
    let (a, c) = ((2.0 * r).cosh(), (2.0 * r).sinh());
    CovarianceMatrix::new_unchecked(TwoModeStandardForm { a, b: a, c_plus: c, c_minus: -c }.matrix())
}
