use crate::correlations::{classical_correlations, two_mode_partition, Direction};
use crate::error::{Error, Result};
use crate::gaussian::{reduce, renyi2_entropy, CovarianceMatrix};

use super::two_mode::{e2_two_mode, require_pure};

/// `E_2(focus : rest) - sum_j E_2(focus : j)` for a pure state of 3 or 4 modes.
pub fn monogamy_gap(cm: &CovarianceMatrix, focus: usize) -> Result<f64> {
    let n = cm.n_modes();
    if !(3..=4).contains(&n) {
        return Err(Error::InvalidArgument(format!("monogamy checks support 3 or 4 modes, got {n}")));
    }
    if focus >= n {
        return Err(Error::InvalidArgument(format!("focus {focus} out of range")));
    }
    require_pure(cm)?;
    let mut gap = renyi2_entropy(&reduce(cm, &[focus])?)?;
    for j in (0..n).filter(|&j| j != focus) {
        gap -= e2_two_mode(&reduce(cm, &[focus, j])?)?.value;
    }
    Ok(gap)
}

/// `S_2(A) - J_2(A|B) - E_2(A:C)` for a pure three-mode state, with the modes
/// `(A, B, C)` given by `order`.
pub fn kw_gap(cm: &CovarianceMatrix, order: (usize, usize, usize)) -> Result<f64> {
    if cm.n_modes() != 3 {
        return Err(Error::ModeCount { expected: 3, actual: cm.n_modes() });
    }
    let (a, b, c) = order;
    if a.max(b).max(c) > 2 || a == b || b == c || a == c {
        return Err(Error::InvalidArgument(format!("{order:?} is not an ordering of three modes")));
    }
    require_pure(cm)?;
    let s = renyi2_entropy(&reduce(cm, &[a])?)?;
    let j = classical_correlations(&reduce(cm, &[a, b])?, &two_mode_partition(), Direction::AGivenB)?.value;
    let e = e2_two_mode(&reduce(cm, &[a, c])?)?.value;
    Ok(s - j - e)
}

/// `J_2(A|B) - E_2(A:B)` for a two-mode state.
pub fn je_gap(cm: &CovarianceMatrix) -> Result<f64> {
    let j = classical_correlations(cm, &two_mode_partition(), Direction::AGivenB)?.value;
    Ok(j - e2_two_mode(cm)?.value)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::entanglement::{residual_e2, three_mode_pure_cm, ThreeModeLocalInvariants};
    use crate::gaussian::{random_mixed_cm, random_pure_cm, tmss_cm};
    use approx::assert_abs_diff_eq;
    use rand::SeedableRng;
    use rand_chacha::ChaCha20Rng;

    const ORDERS: [(usize, usize, usize); 6] = [(0, 1, 2), (0, 2, 1), (1, 0, 2), (1, 2, 0), (2, 0, 1), (2, 1, 0)];

    #[test]
    fn monogamy_with_uncorrelated_party() {
        let cm = tmss_cm(0.6).direct_sum(&CovarianceMatrix::vacuum(1));
        assert_abs_diff_eq!(monogamy_gap(&cm, 0).unwrap(), 0.0, epsilon = 1e-10);
    }

    #[test]
    fn monogamy_gap_is_residual() {
        let inv = ThreeModeLocalInvariants::new(2.0, 2.5, 1.8).unwrap();
        let cm = three_mode_pure_cm(&inv).unwrap();
        for f in 0..3 {
            assert_abs_diff_eq!(monogamy_gap(&cm, f).unwrap(), residual_e2(&inv, f).unwrap(), epsilon = 1e-8);
        }
    }

    #[test]
    fn monogamy_on_random_pure_states() {
        let mut rng = ChaCha20Rng::seed_from_u64(17);
        for n in [3, 4] {
            for _ in 0..5 {
                let cm = random_pure_cm(n, 1.0, &mut rng).unwrap();
                assert!(monogamy_gap(&cm, 0).unwrap() >= -1e-9);
            }
        }
        let mixed = random_mixed_cm(3, 1.0, 2.0, &mut rng).unwrap();
        assert!(monogamy_gap(&mixed, 0).is_err());
        assert!(monogamy_gap(&CovarianceMatrix::vacuum(2), 0).is_err());
    }

    #[test]
    fn koashi_winter_for_all_orderings() {
        let cm = three_mode_pure_cm(&ThreeModeLocalInvariants::new(2.0, 2.0, 2.0).unwrap()).unwrap();
        for o in ORDERS {
            assert_abs_diff_eq!(kw_gap(&cm, o).unwrap(), 0.0, epsilon = 1e-8);
        }
        let prod = CovarianceMatrix::vacuum(3);
        assert_abs_diff_eq!(kw_gap(&prod, (0, 1, 2)).unwrap(), 0.0, epsilon = 1e-14);
        assert!(kw_gap(&prod, (0, 0, 2)).is_err());
    }

    #[test]
    fn je_gap_pure_and_random() {
        assert_abs_diff_eq!(je_gap(&tmss_cm(0.8)).unwrap(), 0.0, epsilon = 1e-9);
        let mut rng = ChaCha20Rng::seed_from_u64(18);
        for _ in 0..20 {
            let cm = random_mixed_cm(2, 1.5, 3.0, &mut rng).unwrap();
            assert!(je_gap(&cm).unwrap() >= -1e-9);
        }
    }
}
