//! Wigner distribution, sampling entropies and their Monte Carlo estimators.
//!
//! The Wigner function of a state with covariance matrix `gamma` is
//! `W(xi) = pi^{-n} det(gamma)^{-1/2} exp(-xi^T gamma^{-1} xi)`, i.e. a normal
//! density with covariance `gamma / 2`. All entropies are in nats.

use std::f64::consts::PI;

use nalgebra::{DMatrix, DVector};
use rand::Rng;
use rand_distr::StandardNormal;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::gaussian::{renyi2_entropy, CovarianceMatrix, ModePartition};
use crate::linalg;

/// Minimum sample count accepted by the Monte Carlo estimators.
pub const MIN_MC_SAMPLES: usize = 1000;

/// A point in phase space, ordered like the covariance matrix.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PhasePoint {
    pub coordinates: Vec<f64>,
}

impl PhasePoint {
    pub fn new(coordinates: Vec<f64>) -> Result<Self> {
        if coordinates.iter().any(|x| !x.is_finite()) {
            return Err(Error::InvalidArgument("phase-space coordinates must be finite".into()));
        }
        Ok(Self { coordinates })
    }

    pub fn origin(n_modes: usize) -> Self {
        Self { coordinates: vec![0.0; 2 * n_modes] }
    }
}

/// Monte Carlo estimate with its standard error.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct EntropyEstimate {
    pub mean: f64,
    pub std_error: f64,
    pub sample_count: usize,
}

impl EntropyEstimate {
    /// `|mean - target| <= k * std_error`.
    pub fn agrees_with(&self, target: f64, k: f64) -> bool {
        (self.mean - target).abs() <= k * self.std_error
    }
}

/// Precomputed pieces of `-ln W`.
struct LogWigner {
    inv: DMatrix<f64>,
    offset: f64,
}

impl LogWigner {
    fn new(cm: &CovarianceMatrix) -> Result<Self> {
        let n = cm.n_modes() as f64;
        Ok(Self {
            inv: linalg::inverse_spd(cm.matrix())?,
            offset: n * PI.ln() + 0.5 * cm.ln_det(),
        })
    }

    fn neg_ln(&self, xi: &DVector<f64>) -> f64 {
        self.offset + xi.dot(&(&self.inv * xi))
    }
}

fn check_len(cm: &CovarianceMatrix, len: usize) -> Result<()> {
    if len != 2 * cm.n_modes() {
        return Err(Error::Dimension { rows: len, cols: 2 * cm.n_modes() });
    }
    Ok(())
}

pub fn wigner_eval(cm: &CovarianceMatrix, xi: &PhasePoint) -> Result<f64> {
    check_len(cm, xi.coordinates.len())?;
    let lw = LogWigner::new(cm)?;
    Ok((-lw.neg_ln(&DVector::from_column_slice(&xi.coordinates))).exp())
}

/// Shannon entropy of the Wigner distribution: `S_2 + n (1 + ln pi)`.
pub fn sampling_entropy(cm: &CovarianceMatrix) -> Result<f64> {
    Ok(renyi2_entropy(cm)? + cm.n_modes() as f64 * (1.0 + PI.ln()))
}

/// Kullback-Leibler divergence between two Wigner distributions.
pub fn relative_sampling_entropy(cm1: &CovarianceMatrix, cm2: &CovarianceMatrix) -> Result<f64> {
    if cm1.n_modes() != cm2.n_modes() {
        return Err(Error::ModeCount { expected: cm1.n_modes(), actual: cm2.n_modes() });
    }
    let inv2 = linalg::inverse_spd(cm2.matrix())?;
    let trace = cm1.matrix().component_mul(&inv2).sum();
    Ok(0.5 * (cm2.ln_det() - cm1.ln_det() + trace) - cm1.n_modes() as f64)
}

/// Mutual information as the divergence between `gamma_AB` and `gamma_A ⊕ gamma_B`.
pub fn mutual_information_via_relent(cm: &CovarianceMatrix, partition: &ModePartition) -> Result<f64> {
    partition.require_bipartition(cm.n_modes())?;
    let (a, b) = (partition.group(0), partition.group(1));
    let order: Vec<usize> = a.iter().chain(b).copied().collect();
    let joint = linalg::principal(cm.matrix(), &linalg::quadratures(&order));
    let ga = linalg::principal(cm.matrix(), &linalg::quadratures(a));
    let gb = linalg::principal(cm.matrix(), &linalg::quadratures(b));
    relative_sampling_entropy(
        &CovarianceMatrix::new_unchecked(joint),
        &CovarianceMatrix::new_unchecked(linalg::direct_sum(&ga, &gb)),
    )
}

/// Lower Cholesky factor of `gamma / 2`.
fn sampling_factor(cm: &CovarianceMatrix) -> Result<DMatrix<f64>> {
    let half = cm.matrix() * 0.5;
    Ok(half.cholesky().ok_or(Error::NotPositiveDefinite)?.unpack())
}

fn draw<R: Rng + ?Sized>(l: &DMatrix<f64>, rng: &mut R) -> DVector<f64> {
    let z = DVector::from_fn(l.nrows(), |_, _| rng.sample::<f64, _>(StandardNormal));
    l * z
}

/// I.i.d. draws from the Wigner distribution.
pub fn sample_phase_space<R: Rng + ?Sized>(
    cm: &CovarianceMatrix,
    count: usize,
    rng: &mut R,
) -> Result<Vec<PhasePoint>> {
    if count == 0 {
        return Err(Error::InvalidArgument("sample count must be at least 1".into()));
    }
    let l = sampling_factor(cm)?;
    Ok((0..count)
        .map(|_| PhasePoint { coordinates: draw(&l, rng).iter().copied().collect() })
        .collect())
}

fn estimate<I: Iterator<Item = f64>>(values: I) -> EntropyEstimate {
    // Welford accumulation
    let (mut n, mut mean, mut m2) = (0usize, 0.0, 0.0);
    for v in values {
        n += 1;
        let d = v - mean;
        mean += d / n as f64;
        m2 += d * (v - mean);
    }
    let var = if n > 1 { m2 / (n - 1) as f64 } else { 0.0 };
    EntropyEstimate { mean, std_error: (var / n as f64).sqrt(), sample_count: n }
}

fn check_count(count: usize) -> Result<()> {
    if count < MIN_MC_SAMPLES {
        return Err(Error::InvalidArgument(format!(
            "Monte Carlo estimators need at least {MIN_MC_SAMPLES} samples (got {count})"
        )));
    }
    Ok(())
}

/// Sample mean of `-ln W` over draws from `W`.
pub fn mc_entropy<R: Rng + ?Sized>(cm: &CovarianceMatrix, count: usize, rng: &mut R) -> Result<EntropyEstimate> {
    check_count(count)?;
    let l = sampling_factor(cm)?;
    let lw = LogWigner::new(cm)?;
    Ok(estimate((0..count).map(|_| lw.neg_ln(&draw(&l, rng)))))
}

/// Sample mean of `ln(W1 / W2)` over draws from `W1`.
pub fn mc_relative_entropy<R: Rng + ?Sized>(
    cm1: &CovarianceMatrix,
    cm2: &CovarianceMatrix,
    count: usize,
    rng: &mut R,
) -> Result<EntropyEstimate> {
    check_count(count)?;
    if cm1.n_modes() != cm2.n_modes() {
        return Err(Error::ModeCount { expected: cm1.n_modes(), actual: cm2.n_modes() });
    }
    let l = sampling_factor(cm1)?;
    let (w1, w2) = (LogWigner::new(cm1)?, LogWigner::new(cm2)?);
    Ok(estimate((0..count).map(|_| {
        let xi = draw(&l, rng);
        w2.neg_ln(&xi) - w1.neg_ln(&xi)
    })))
}
