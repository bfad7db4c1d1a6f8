use nalgebra::{DMatrix, SymmetricEigen};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg;

/// Physicality tolerance: states with `nu_min >= 1 - PHYSICAL_TOL` are accepted as-is.
pub const PHYSICAL_TOL: f64 = 1e-9;

const SYMMETRY_TOL: f64 = 1e-12;
const PAIRING_TOL: f64 = 1e-8;

/// Block-diagonal symplectic form `omega ⊕ ... ⊕ omega`, `omega = ((0, 1), (-1, 0))`.
#[derive(Debug, Clone, PartialEq)]
pub struct SymplecticForm {
    n_modes: usize,
    matrix: DMatrix<f64>,
}

impl SymplecticForm {
    pub fn n_modes(&self) -> usize {
        self.n_modes
    }

    pub fn matrix(&self) -> &DMatrix<f64> {
        &self.matrix
    }
}

pub fn symplectic_form(n_modes: usize) -> Result<SymplecticForm> {
    if n_modes == 0 {
        return Err(Error::InvalidArgument("symplectic form needs at least one mode".into()));
    }
    Ok(SymplecticForm { n_modes, matrix: omega(n_modes) })
}

pub(crate) fn omega(n: usize) -> DMatrix<f64> {
    let mut m = DMatrix::zeros(2 * n, 2 * n);
    for k in 0..n {
        m[(2 * k, 2 * k + 1)] = 1.0;
        m[(2 * k + 1, 2 * k)] = -1.0;
    }
    m
}

/// Symplectic eigenvalues, sorted in descending order.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SymplecticSpectrum {
    pub values: Vec<f64>,
}

impl SymplecticSpectrum {
    pub fn min(&self) -> f64 {
        self.values.iter().copied().fold(f64::INFINITY, f64::min)
    }

    /// All symplectic eigenvalues equal to one within `1e-8`.
    pub fn is_pure(&self) -> bool {
        self.values.iter().all(|&v| (v - 1.0).abs() <= 1e-8)
    }
}

/// Outcome of [`validate`].
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ValidityReport {
    pub symmetric: bool,
    pub positive_definite: bool,
    pub physical: bool,
    /// Smallest symplectic eigenvalue; `None` when the matrix is not positive definite.
    pub nu_min: Option<f64>,
}

/// Covariance matrix of a zero-mean Gaussian state.
///
/// Construction through [`CovarianceMatrix::new`] enforces symmetry, positive
/// definiteness and the uncertainty relation `nu_min >= 1 - 1e-9`.
#[derive(Debug, Clone, PartialEq)]
pub struct CovarianceMatrix {
    n_modes: usize,
    matrix: DMatrix<f64>,
}

impl CovarianceMatrix {
    pub fn new(matrix: DMatrix<f64>) -> Result<Self> {
        let n_modes = check_dimension(&matrix)?;
        let asym = asymmetry(&matrix);
        if asym > SYMMETRY_TOL * (1.0 + linalg::max_abs(&matrix)) {
            return Err(Error::NotSymmetric(asym));
        }
        let matrix = linalg::symmetrize(&matrix);
        let spectrum = spectrum_of(&matrix)?;
        let nu_min = spectrum.min();
        if nu_min < 1.0 - PHYSICAL_TOL {
            return Err(Error::Unphysical(nu_min));
        }
        Ok(Self { n_modes, matrix })
    }

    /// Row-major constructor.
    pub fn from_row_slice(n_modes: usize, entries: &[f64]) -> Result<Self> {
        let dim = 2 * n_modes;
        if n_modes == 0 || entries.len() != dim * dim {
            return Err(Error::Dimension { rows: entries.len(), cols: dim });
        }
        Self::new(DMatrix::from_row_slice(dim, dim, entries))
    }

    /// Skips the physicality check. Callers guarantee the invariants.
    pub(crate) fn new_unchecked(matrix: DMatrix<f64>) -> Self {
        let n_modes = matrix.nrows() / 2;
        Self { n_modes, matrix: linalg::symmetrize(&matrix) }
    }

    pub fn vacuum(n_modes: usize) -> Self {
        Self::new_unchecked(DMatrix::identity(2 * n_modes, 2 * n_modes))
    }

    /// Product of thermal states with the given symplectic eigenvalues.
    pub fn thermal(nus: &[f64]) -> Result<Self> {
        let diag: Vec<f64> = nus.iter().flat_map(|&v| [v, v]).collect();
        Self::new(DMatrix::from_diagonal(&nalgebra::DVector::from_vec(diag)))
    }

    pub fn n_modes(&self) -> usize {
        self.n_modes
    }

    pub fn matrix(&self) -> &DMatrix<f64> {
        &self.matrix
    }

    pub fn into_matrix(self) -> DMatrix<f64> {
        self.matrix
    }

    pub fn det(&self) -> f64 {
        self.ln_det().exp()
    }

    pub fn ln_det(&self) -> f64 {
        linalg::ln_det_spd(&self.matrix).unwrap_or(f64::NEG_INFINITY)
    }

    pub fn direct_sum(&self, other: &CovarianceMatrix) -> CovarianceMatrix {
        Self::new_unchecked(linalg::direct_sum(&self.matrix, &other.matrix))
    }

    /// Conjugation `S gamma S^T`. Physicality is preserved when `S` is symplectic.
    pub fn transformed(&self, s: &DMatrix<f64>) -> Result<CovarianceMatrix> {
        if s.nrows() != self.matrix.nrows() || s.ncols() != self.matrix.ncols() {
            return Err(Error::Dimension { rows: s.nrows(), cols: s.ncols() });
        }
        Self::new(s * &self.matrix * s.transpose())
    }

    pub fn symplectic_spectrum(&self) -> SymplecticSpectrum {
        spectrum_of(&self.matrix).expect("validated covariance matrix")
    }
}

fn check_dimension(m: &DMatrix<f64>) -> Result<usize> {
    let (rows, cols) = m.shape();
    if rows != cols || rows == 0 || rows % 2 != 0 {
        return Err(Error::Dimension { rows, cols });
    }
    Ok(rows / 2)
}

fn asymmetry(m: &DMatrix<f64>) -> f64 {
    linalg::max_abs(&(m - m.transpose()))
}

/// Symplectic eigenvalues via `M = gamma^{1/2} Omega gamma^{1/2}`, which is
/// similar to `Omega gamma`; the spectrum of the symmetric `M M^T` is `{nu_k^2}`
/// with every value appearing twice.
fn spectrum_of(m: &DMatrix<f64>) -> Result<SymplecticSpectrum> {
    let n = m.nrows() / 2;
    let eig = SymmetricEigen::new(m.clone());
    if eig.eigenvalues.iter().any(|&x| x <= 0.0) {
        return Err(Error::NotPositiveDefinite);
    }
    let root = &eig.eigenvectors
        * DMatrix::from_diagonal(&eig.eigenvalues.map(f64::sqrt))
        * eig.eigenvectors.transpose();
    let k = &root * omega(n) * &root;
    let kkt = linalg::symmetrize(&(&k * k.transpose()));
    let mut sq: Vec<f64> = SymmetricEigen::new(kkt).eigenvalues.iter().copied().collect();
    sq.sort_by(|a, b| b.total_cmp(a));
    let mut values = Vec::with_capacity(n);
    for pair in sq.chunks(2) {
        let (hi, lo) = (pair[0].max(0.0).sqrt(), pair[1].max(0.0).sqrt());
        if hi - lo > PAIRING_TOL * hi.max(1.0) {
            return Err(Error::Numerical(format!(
                "unpaired symplectic eigenvalues {hi} and {lo}"
            )));
        }
        values.push(0.5 * (hi + lo));
    }
    Ok(SymplecticSpectrum { values })
}

pub fn symplectic_spectrum(cm: &CovarianceMatrix) -> SymplecticSpectrum {
    cm.symplectic_spectrum()
}

/// Checks a raw matrix. Only a non-`2n x 2n` shape is an error; everything else
/// is reported through the flags.
pub fn validate(matrix: &DMatrix<f64>) -> Result<ValidityReport> {
    check_dimension(matrix)?;
    let symmetric = asymmetry(matrix) <= SYMMETRY_TOL * (1.0 + linalg::max_abs(matrix));
    let sym = linalg::symmetrize(matrix);
    let positive_definite = sym.clone().cholesky().is_some();
    let nu_min = if positive_definite {
        spectrum_of(&sym).ok().map(|s| s.min())
    } else {
        None
    };
    let physical = symmetric && nu_min.is_some_and(|v| v >= 1.0 - PHYSICAL_TOL);
    Ok(ValidityReport { symmetric, positive_definite, physical, nu_min })
}

/// Reduced state on `modes`, in the order given.
pub fn reduce(cm: &CovarianceMatrix, modes: &[usize]) -> Result<CovarianceMatrix> {
    if modes.is_empty() {
        return Err(Error::Partition("cannot reduce to an empty mode set".into()));
    }
    for (i, &k) in modes.iter().enumerate() {
        if k >= cm.n_modes() {
            return Err(Error::Partition(format!("mode {k} out of range for {} modes", cm.n_modes())));
        }
        if modes[..i].contains(&k) {
            return Err(Error::Partition(format!("mode {k} repeated")));
        }
    }
    let idx = linalg::quadratures(modes);
    Ok(CovarianceMatrix::new_unchecked(linalg::principal(cm.matrix(), &idx)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    #[test]
    fn symplectic_form_single_mode() {
        let w = symplectic_form(1).unwrap();
        assert_eq!(w.matrix(), &DMatrix::from_row_slice(2, 2, &[0.0, 1.0, -1.0, 0.0]));
    }

    #[test]
    fn symplectic_form_squares_to_minus_identity() {
        let w = symplectic_form(2).unwrap();
        let sq = w.matrix() * w.matrix();
        assert_eq!(sq, -DMatrix::<f64>::identity(4, 4));
    }

    #[test]
    fn symplectic_form_is_antisymmetric() {
        let w = symplectic_form(3).unwrap();
        assert_eq!(w.matrix().transpose(), -w.matrix());
        assert!(symplectic_form(0).is_err());
    }

    #[test]
    fn spectrum_of_vacuum_and_thermal() {
        assert_eq!(CovarianceMatrix::vacuum(1).symplectic_spectrum().values, vec![1.0]);
        let th = CovarianceMatrix::thermal(&[2.0]).unwrap();
        assert_abs_diff_eq!(th.symplectic_spectrum().values[0], 2.0, epsilon = 1e-12);
    }

    #[test]
    fn spectrum_of_two_mode_squeezed_state_is_pure() {
        let a = 5.0 / 3.0;
        let c = 4.0 / 3.0;
        let m = DMatrix::from_row_slice(
            4,
            4,
            &[a, 0.0, c, 0.0, 0.0, a, 0.0, -c, c, 0.0, a, 0.0, 0.0, -c, 0.0, a],
        );
        let cm = CovarianceMatrix::new(m).unwrap();
        let s = cm.symplectic_spectrum();
        assert_eq!(s.values.len(), 2);
        for v in &s.values {
            assert_abs_diff_eq!(*v, 1.0, epsilon = 1e-10);
        }
        assert!(s.is_pure());
    }

    #[test]
    fn spectrum_sorted_descending() {
        let cm = CovarianceMatrix::thermal(&[1.5, 4.0, 2.0]).unwrap();
        let v = cm.symplectic_spectrum().values;
        assert!(v.windows(2).all(|w| w[0] >= w[1]));
        assert_abs_diff_eq!(v[0], 4.0, epsilon = 1e-12);
    }

    #[test]
    fn validate_flags() {
        let r = validate(&DMatrix::identity(2, 2)).unwrap();
        assert!(r.symmetric && r.positive_definite && r.physical);
        assert_abs_diff_eq!(r.nu_min.unwrap(), 1.0, epsilon = 1e-12);

        let r = validate(&DMatrix::from_diagonal_element(2, 2, 0.5)).unwrap();
        assert!(r.positive_definite);
        assert!(!r.physical);
        assert_abs_diff_eq!(r.nu_min.unwrap(), 0.5, epsilon = 1e-12);

        let r = validate(&DMatrix::from_row_slice(2, 2, &[1.0, 0.5, 0.0, 1.0])).unwrap();
        assert!(!r.symmetric && !r.physical);

        let r = validate(&DMatrix::from_diagonal_element(2, 2, -1.0)).unwrap();
        assert!(!r.positive_definite && r.nu_min.is_none());

        assert!(matches!(validate(&DMatrix::identity(3, 3)), Err(Error::Dimension { .. })));
    }

    #[test]
    fn constructor_rejects_unphysical() {
        let err = CovarianceMatrix::new(DMatrix::from_diagonal_element(2, 2, 0.5)).unwrap_err();
        assert!(matches!(err, Error::Unphysical(_)));
        let err = CovarianceMatrix::new(DMatrix::from_row_slice(2, 2, &[2.0, 1.0, 0.0, 2.0])).unwrap_err();
        assert!(matches!(err, Error::NotSymmetric(_)));
    }

    #[test]
    fn reduce_direct_sum() {
        let a = CovarianceMatrix::thermal(&[2.0]).unwrap();
        let b = CovarianceMatrix::thermal(&[3.0]).unwrap();
        let ab = a.direct_sum(&b);
        assert_eq!(reduce(&ab, &[0]).unwrap(), a);
        assert_eq!(reduce(&ab, &[1]).unwrap(), b);
        assert!(reduce(&ab, &[]).is_err());
        assert!(reduce(&ab, &[2]).is_err());
        assert!(reduce(&ab, &[0, 0]).is_err());
    }

    #[test]
    fn reduce_composes() {
        let cm = CovarianceMatrix::thermal(&[1.5, 2.0, 3.0, 4.0]).unwrap();
        let outer = reduce(&cm, &[3, 1, 2]).unwrap();
        let twice = reduce(&outer, &[0, 2]).unwrap();
        assert_eq!(twice, reduce(&cm, &[3, 2]).unwrap());
    }
}
