use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;
use rand::Rng;
use rand_distr::StandardNormal;

use crate::error::{Error, Result};
use crate::linalg;

use super::cm::CovarianceMatrix;

/// Haar-random unitary `U = X + iY` mapped to the orthogonal symplectic
/// `((X, -Y), (Y, X))`, interleaved into `(q1, p1, ...)` ordering.
pub fn random_orthogonal_symplectic<R: Rng + ?Sized>(n_modes: usize, rng: &mut R) -> DMatrix<f64> {
    let z = DMatrix::from_fn(n_modes, n_modes, |_, _| {
        Complex64::new(rng.sample(StandardNormal), rng.sample(StandardNormal))
    });
    let qr = z.qr();
    let (mut q, r) = (qr.q(), qr.r());
    for j in 0..n_modes {
        let d = r[(j, j)];
        let phase = if d.norm() > 0.0 { d / d.norm() } else { Complex64::new(1.0, 0.0) };
        for i in 0..n_modes {
            q[(i, j)] *= phase;
        }
    }
    let mut k = DMatrix::zeros(2 * n_modes, 2 * n_modes);
    for i in 0..n_modes {
        for j in 0..n_modes {
            let (x, y) = (q[(i, j)].re, q[(i, j)].im);
            k[(2 * i, 2 * j)] = x;
            k[(2 * i, 2 * j + 1)] = -y;
            k[(2 * i + 1, 2 * j)] = y;
            k[(2 * i + 1, 2 * j + 1)] = x;
        }
    }
    k
}

/// `S = K1 Z K2` with single-mode squeezings `r_k ~ U[0, squeeze_cap]`.
pub fn random_symplectic<R: Rng + ?Sized>(n_modes: usize, squeeze_cap: f64, rng: &mut R) -> Result<DMatrix<f64>> {
    check_squeeze(squeeze_cap)?;
    if n_modes == 0 {
        return Err(Error::InvalidArgument("need at least one mode".into()));
    }
    let k1 = random_orthogonal_symplectic(n_modes, rng);
    let z: Vec<f64> = (0..n_modes)
        .flat_map(|_| {
            let r = squeeze_cap * rng.random::<f64>();
            [r.exp(), (-r).exp()]
        })
        .collect();
    let k2 = random_orthogonal_symplectic(n_modes, rng);
    Ok(k1 * DMatrix::from_diagonal(&DVector::from_vec(z)) * k2)
}

/// Direct sum of independent random symplectics, one per group size.
pub fn random_local_symplectic<R: Rng + ?Sized>(
    group_sizes: &[usize],
    squeeze_cap: f64,
    rng: &mut R,
) -> Result<DMatrix<f64>> {
    let mut out = DMatrix::zeros(0, 0);
    for &n in group_sizes {
        out = linalg::direct_sum(&out, &random_symplectic(n, squeeze_cap, rng)?);
    }
    Ok(out)
}

fn check_squeeze(cap: f64) -> Result<()> {
    if !cap.is_finite() || cap < 0.0 {
        return Err(Error::InvalidArgument(format!("squeeze cap must be finite and non-negative (got {cap})")));
    }
    Ok(())
}

/// Pure state `S S^T`.
pub fn random_pure_cm<R: Rng + ?Sized>(n_modes: usize, squeeze_cap: f64, rng: &mut R) -> Result<CovarianceMatrix> {
    let s = random_symplectic(n_modes, squeeze_cap, rng)?;
    Ok(CovarianceMatrix::new_unchecked(&s * s.transpose()))
}

/// Mixed state `S D S^T` with symplectic eigenvalues `nu_k ~ U[1, temp_cap]`.
pub fn random_mixed_cm<R: Rng + ?Sized>(
    n_modes: usize,
    squeeze_cap: f64,
    temp_cap: f64,
    rng: &mut R,
) -> Result<CovarianceMatrix> {
    if !temp_cap.is_finite() || temp_cap < 1.0 {
        return Err(Error::InvalidArgument(format!("temperature cap must be finite and at least 1 (got {temp_cap})")));
    }
    let s = random_symplectic(n_modes, squeeze_cap, rng)?;
    let d: Vec<f64> = (0..n_modes)
        .flat_map(|_| {
            let nu = 1.0 + (temp_cap - 1.0) * rng.random::<f64>();
            [nu, nu]
        })
        .collect();
    let d = DMatrix::from_diagonal(&DVector::from_vec(d));
    Ok(CovarianceMatrix::new_unchecked(&s * d * s.transpose()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gaussian::{cm::omega, renyi2_entropy};
    use approx::assert_abs_diff_eq;
    use rand::SeedableRng;
    use rand_chacha::ChaCha20Rng;

    fn rng(seed: u64) -> ChaCha20Rng {
        ChaCha20Rng::seed_from_u64(seed)
    }

    #[test]
    fn orthogonal_symplectic_is_both() {
        let k = random_orthogonal_symplectic(3, &mut rng(1));
        let w = omega(3);
        assert!(linalg::max_abs(&(&k * k.transpose() - DMatrix::identity(6, 6))) < 1e-12);
        assert!(linalg::max_abs(&(&k * &w * k.transpose() - &w)) < 1e-12);
    }

    #[test]
    fn random_symplectic_preserves_form() {
        let s = random_symplectic(4, 1.5, &mut rng(2)).unwrap();
        let w = omega(4);
        assert!(linalg::max_abs(&(&s * &w * s.transpose() - &w)) < 1e-10);
    }

    #[test]
    fn zero_caps_give_vacuum() {
        let cm = random_mixed_cm(2, 0.0, 1.0, &mut rng(5)).unwrap();
        assert!(linalg::max_abs(&(cm.matrix() - DMatrix::identity(4, 4))) < 1e-12);
    }

    #[test]
    fn pure_draws_have_unit_determinant() {
        let mut r = rng(7);
        for n in 1..=4 {
            let cm = random_pure_cm(n, 1.5, &mut r).unwrap();
            assert_abs_diff_eq!(cm.det(), 1.0, epsilon = 1e-9);
            assert!(cm.symplectic_spectrum().min() >= 1.0 - 1e-9);
        }
    }

    #[test]
    fn mixed_draw_entropy_is_sum_of_log_nu() {
        // replay the draw sequence to recover the nu_k used
        let mut r = rng(11);
        let cm = random_mixed_cm(3, 1.0, 5.0, &mut r).unwrap();
        let nus = cm.symplectic_spectrum().values;
        let expect: f64 = nus.iter().map(|v| v.ln()).sum();
        assert_abs_diff_eq!(renyi2_entropy(&cm).unwrap(), expect, epsilon = 1e-8);
    }

    #[test]
    fn deterministic_per_seed() {
        let a = random_mixed_cm(3, 1.5, 5.0, &mut rng(42)).unwrap();
        let b = random_mixed_cm(3, 1.5, 5.0, &mut rng(42)).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn rejects_bad_caps() {
        assert!(random_pure_cm(2, -0.1, &mut rng(0)).is_err());
        assert!(random_mixed_cm(2, 1.0, 0.5, &mut rng(0)).is_err());
        assert!(random_pure_cm(2, f64::INFINITY, &mut rng(0)).is_err());
    }
}
