use nalgebra::DMatrix;
use serde::{Deserialize, Serialize};

use crate::correlations::{discord, two_mode_partition, Direction};
use crate::error::{Error, Result};
use crate::gaussian::{reduce, CovarianceMatrix};

use super::two_mode::clamp_radicand;

const TRIANGLE_TOL: f64 = 1e-12;

/// Local symplectic invariants `a_i = sqrt(det gamma_i)` of a pure three-mode state.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ThreeModeLocalInvariants {
    pub a1: f64,
    pub a2: f64,
    pub a3: f64,
}

impl ThreeModeLocalInvariants {
    /// Checks `|a_j - a_k| + 1 <= a_i <= a_j + a_k - 1` for every permutation.
    pub fn new(a1: f64, a2: f64, a3: f64) -> Result<Self> {
        let inv = Self { a1, a2, a3 };
        let a = inv.as_array();
        if a.iter().any(|x| !x.is_finite() || *x < 1.0 - TRIANGLE_TOL) {
            return Err(Error::InvalidArgument(format!("local invariants must be at least 1: {a:?}")));
        }
        for i in 0..3 {
            let (j, k) = others(i);
            let (ai, aj, ak) = (a[i], a[j], a[k]);
            if ai < (aj - ak).abs() + 1.0 - TRIANGLE_TOL || ai > aj + ak - 1.0 + TRIANGLE_TOL {
                return Err(Error::InvalidArgument(format!(
                    "invariants {a:?} violate the triangle condition for mode {}",
                    i + 1
                )));
            }
        }
        Ok(inv)
    }

    pub fn as_array(&self) -> [f64; 3] {
        [self.a1, self.a2, self.a3]
    }

    /// Invariants of a pure three-mode covariance matrix.
    pub fn from_cm(cm: &CovarianceMatrix) -> Result<Self> {
        if cm.n_modes() != 3 {
            return Err(Error::ModeCount { expected: 3, actual: cm.n_modes() });
        }
        let m = cm.matrix();
        let a = |k: usize| (m[(2 * k, 2 * k)] * m[(2 * k + 1, 2 * k + 1)] - m[(2 * k, 2 * k + 1)].powi(2)).sqrt();
        Self::new(a(0), a(1), a(2))
    }
}

fn others(i: usize) -> (usize, usize) {
    match i {
        0 => (1, 2),
        1 => (0, 2),
        _ => (0, 1),
    }
}

fn check_index(i: usize) -> Result<()> {
    if i > 2 {
        return Err(Error::InvalidArgument(format!("mode index {i} out of range for three modes")));
    }
    Ok(())
}

/// Standard form of the pure three-mode state with the given invariants.
pub fn three_mode_pure_cm(inv: &ThreeModeLocalInvariants) -> Result<CovarianceMatrix> {
    let a = inv.as_array();
    let mut g = DMatrix::zeros(6, 6);
    for i in 0..3 {
        g[(2 * i, 2 * i)] = a[i];
        g[(2 * i + 1, 2 * i + 1)] = a[i];
    }
    for i in 0..3 {
        let (j, k) = others(i);
        let (ai, aj, ak) = (a[i], a[j], a[k]);
        let diff = (aj - ak).powi(2);
        let sum = (aj + ak).powi(2);
        let ra = clamp_radicand(((ai - 1.0).powi(2) - diff) * ((ai + 1.0).powi(2) - diff), "three-mode")?;
        let rb = clamp_radicand(((ai - 1.0).powi(2) - sum) * ((ai + 1.0).powi(2) - sum), "three-mode")?;
        let den = 4.0 * (aj * ak).sqrt();
        let c_plus = (ra.sqrt() + rb.sqrt()) / den;
        let c_minus = (ra.sqrt() - rb.sqrt()) / den;
        g[(2 * j, 2 * k)] = c_plus;
        g[(2 * k, 2 * j)] = c_plus;
        g[(2 * j + 1, 2 * k + 1)] = c_minus;
        g[(2 * k + 1, 2 * j + 1)] = c_minus;
    }
    CovarianceMatrix::new(g)
}

/// `beta(a1, a2, a3)`.
fn beta(a: [f64; 3]) -> f64 {
    let [a1, a2, a3] = a;
    let (s1, s2, s3) = (a1 * a1, a2 * a2, a3 * a3);
    let mut prod = 1.0;
    for (x, y) in [(1.0, 1.0), (1.0, -1.0), (-1.0, 1.0), (-1.0, -1.0)] {
        prod *= (a1 + x * a2 + y * a3).powi(2) - 1.0;
    }
    -1.0 + 2.0 * (s1 + s2 + s3) + 2.0 * (s1 * s2 + s1 * s3 + s2 * s3) - s1 * s1 - s2 * s2 - s3 * s3
        - prod.max(0.0).sqrt()
}

/// Which expression gives the entanglement of a two-mode reduction.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum GBranch {
    /// `a_k >= sqrt(a_i^2 + a_j^2 - 1)`: the reduction is separable.
    Separable,
    /// `alpha_k < a_k < sqrt(a_i^2 + a_j^2 - 1)`: `g = beta / (8 a_k^2)`.
    Symmetric,
    /// `a_k <= alpha_k`: `g = ((a_i^2 - a_j^2) / (a_k^2 - 1))^2`.
    Asymmetric,
}

fn g_and_branch(a: [f64; 3], i: usize, j: usize) -> (f64, GBranch) {
    let k = 3 - i - j;
    let (ai, aj, ak) = (a[i], a[j], a[k]);
    let s = ai * ai + aj * aj;
    let delta = ai * ai - aj * aj;
    let alpha = ((2.0 * s + delta * delta + delta.abs() * (delta * delta + 8.0 * s).sqrt()) / (2.0 * s)).sqrt();
    if ak >= (s - 1.0).sqrt() {
        (1.0, GBranch::Separable)
    } else if ak > alpha || ak - 1.0 <= TRIANGLE_TOL {
        // at a_k = 1 the pair is pure and the symmetric expression reduces to a_i^2
        (beta(a) / (8.0 * ak * ak), GBranch::Symmetric)
    } else {
        ((delta / (ak * ak - 1.0)).powi(2), GBranch::Asymmetric)
    }
}

/// `g_k = exp(2 E_2)` of the reduction on modes `(i, j)`.
pub fn g_reduced(inv: &ThreeModeLocalInvariants, pair: (usize, usize)) -> Result<f64> {
    let (i, j) = pair;
    check_index(i)?;
    check_index(j)?;
    if i == j {
        return Err(Error::InvalidArgument("pair needs two distinct modes".into()));
    }
    Ok(g_and_branch(inv.as_array(), i, j).0)
}

/// Residual entanglement with respect to `focus`:
/// `E_2(i : jk) - E_2(i : j) - E_2(i : k)`.
pub fn residual_e2(inv: &ThreeModeLocalInvariants, focus: usize) -> Result<f64> {
    check_index(focus)?;
    let a = inv.as_array();
    let (j, k) = others(focus);
    let gk = g_and_branch(a, focus, j).0;
    let gj = g_and_branch(a, focus, k).0;
    Ok(0.5 * (a[focus] * a[focus] / (gk * gj)).ln())
}

/// Branch of every pair and membership in the fully inseparable window.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct InseparabilityClass {
    /// Branches for the pairs `(0, 1)`, `(0, 2)`, `(1, 2)`.
    pub branches: [((usize, usize), GBranch); 3],
    pub fully_inseparable: bool,
}

impl InseparabilityClass {
    pub fn of(inv: &ThreeModeLocalInvariants) -> Self {
        let a = inv.as_array();
        let branches = [(0, 1), (0, 2), (1, 2)].map(|(i, j)| ((i, j), g_and_branch(a, i, j).1));
        let fully_inseparable = (0..3).all(|k| {
            let (i, j) = others(k);
            (a[i] - a[j]).abs() + 1.0 < a[k] && a[k] < (a[i] * a[i] + a[j] * a[j] - 1.0).sqrt()
        });
        Self { branches, fully_inseparable }
    }
}

/// Permutation-invariant residual `ln(8 a1 a2 a3 / beta)`, defined strictly
/// inside the fully inseparable window.
pub fn residual_e2_invariant(inv: &ThreeModeLocalInvariants) -> Result<f64> {
    if !InseparabilityClass::of(inv).fully_inseparable {
        return Err(Error::Domain(format!(
            "invariants {:?} are outside the fully inseparable window",
            inv.as_array()
        )));
    }
    let [a1, a2, a3] = inv.as_array();
    Ok(0.5 * (64.0 * (a1 * a2 * a3).powi(2) / beta(inv.as_array()).powi(2)).ln())
}

/// Residual discord `S_2(i) - D_2(i|j) - D_2(i|k)`.
///
/// The global term is `D_2(i | jk)`, which equals `S_2(i)` because the
/// three-mode state is pure.
pub fn residual_d2(inv: &ThreeModeLocalInvariants, focus: usize) -> Result<f64> {
    check_index(focus)?;
    let cm = three_mode_pure_cm(inv)?;
    let a = inv.as_array();
    let (j, k) = others(focus);
    let d = |other: usize| -> Result<f64> {
        let pair = reduce(&cm, &[focus, other])?;
        Ok(discord(&pair, &two_mode_partition(), Direction::AGivenB)?.value)
    };
    Ok(a[focus].ln() - d(j)? - d(k)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::entanglement::e2_two_mode;
    use approx::assert_abs_diff_eq;

    fn ghz2() -> ThreeModeLocalInvariants {
        ThreeModeLocalInvariants::new(2.0, 2.0, 2.0).unwrap()
    }

    fn beta2() -> f64 {
        71.0 - 945.0_f64.sqrt()
    }

    #[test]
    fn vacuum_invariants() {
        let inv = ThreeModeLocalInvariants::new(1.0, 1.0, 1.0).unwrap();
        assert_eq!(three_mode_pure_cm(&inv).unwrap(), CovarianceMatrix::vacuum(3));
        for f in 0..3 {
            assert_abs_diff_eq!(residual_e2(&inv, f).unwrap(), 0.0, epsilon = 1e-14);
            assert_abs_diff_eq!(residual_d2(&inv, f).unwrap(), 0.0, epsilon = 1e-14);
        }
    }

    #[test]
    fn triangle_condition() {
        assert!(ThreeModeLocalInvariants::new(3.0, 1.0, 1.0).is_err());
        assert!(ThreeModeLocalInvariants::new(0.5, 1.0, 1.0).is_err());
        assert!(ThreeModeLocalInvariants::new(3.0, 2.0, 2.0).is_ok());
        assert!(ThreeModeLocalInvariants::new(3.0, 1.5, 1.5).is_err());
        assert!(ThreeModeLocalInvariants::new(2.0, 2.0, 2.8).is_ok());
    }

    #[test]
    fn ghz_like_state_is_pure_with_right_marginals() {
        for inv in [ghz2(), ThreeModeLocalInvariants::new(3.0, 2.0, 2.0).unwrap()] {
            let cm = three_mode_pure_cm(&inv).unwrap();
            assert_abs_diff_eq!(cm.det(), 1.0, epsilon = 1e-8);
            let back = ThreeModeLocalInvariants::from_cm(&cm).unwrap();
            for (x, y) in back.as_array().iter().zip(inv.as_array()) {
                assert_abs_diff_eq!(*x, y, epsilon = 1e-12);
            }
        }
    }

    #[test]
    fn ghz_like_g_value() {
        let g = g_reduced(&ghz2(), (0, 1)).unwrap();
        assert_abs_diff_eq!(g, beta2() / 32.0, epsilon = 1e-12);
        let cm = three_mode_pure_cm(&ghz2()).unwrap();
        let e = e2_two_mode(&reduce(&cm, &[0, 1]).unwrap()).unwrap().value;
        assert_abs_diff_eq!((2.0 * e).exp(), g, epsilon = 1e-8);
    }

    #[test]
    fn ghz_like_residual() {
        let expect = (64.0_f64 / beta2()).ln();
        assert_abs_diff_eq!(expect, 2f64.ln() - (beta2() / 32.0).ln(), epsilon = 1e-12);
        for f in 0..3 {
            assert_abs_diff_eq!(residual_e2(&ghz2(), f).unwrap(), expect, epsilon = 1e-12);
            assert_abs_diff_eq!(residual_d2(&ghz2(), f).unwrap(), expect, epsilon = 1e-9);
        }
        assert_abs_diff_eq!(residual_e2_invariant(&ghz2()).unwrap(), expect, epsilon = 1e-12);
        assert_abs_diff_eq!(expect, 0.46355, epsilon = 1e-4);
    }

    #[test]
    fn separable_branch_breaks_symmetry() {
        let inv = ThreeModeLocalInvariants::new(2.0, 2.0, 2.8).unwrap();
        let class = InseparabilityClass::of(&inv);
        assert!(!class.fully_inseparable);
        assert_eq!(g_reduced(&inv, (0, 1)).unwrap(), 1.0);
        assert!(class.branches.iter().any(|b| b.1 == GBranch::Separable));
        let r: Vec<f64> = (0..3).map(|f| residual_e2(&inv, f).unwrap()).collect();
        assert!((r[0] - r[2]).abs() > 1e-3);
        assert!(residual_e2_invariant(&inv).is_err());
    }

    #[test]
    fn asymmetric_branch_matches_numeric_entanglement() {
        let inv = ThreeModeLocalInvariants::new(3.0, 2.0, 2.02).unwrap();
        let cm = three_mode_pure_cm(&inv).unwrap();
        let mut seen = Vec::new();
        for (i, j) in [(0, 1), (0, 2), (1, 2)] {
            let (g, br) = g_and_branch(inv.as_array(), i, j);
            seen.push(br);
            let e = e2_two_mode(&reduce(&cm, &[i, j]).unwrap()).unwrap().value;
            assert_abs_diff_eq!((2.0 * e).exp(), g, epsilon = 1e-7 * g);
        }
        assert!(seen.contains(&GBranch::Asymmetric), "{seen:?}");
    }

    #[test]
    fn window_boundary_is_continuous() {
        // a3 approaching sqrt(a1^2 + a2^2 - 1) from below
        let edge = (2.0_f64 * 4.0 - 1.0).sqrt();
        let below = ThreeModeLocalInvariants::new(2.0, 2.0, edge - 1e-9).unwrap();
        let at = ThreeModeLocalInvariants::new(2.0, 2.0, edge).unwrap();
        assert_abs_diff_eq!(g_reduced(&below, (0, 1)).unwrap(), 1.0, epsilon = 1e-6);
        assert_abs_diff_eq!(residual_e2(&below, 2).unwrap(), residual_e2(&at, 2).unwrap(), epsilon = 1e-6);
        assert!(residual_e2_invariant(&at).is_err());
    }

    #[test]
    fn bad_focus() {
        assert!(residual_e2(&ghz2(), 3).is_err());
        assert!(g_reduced(&ghz2(), (1, 1)).is_err());
    }
}
