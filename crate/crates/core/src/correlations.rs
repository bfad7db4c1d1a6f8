//! Mutual information, strong-subadditivity gap, conditional states after
//! Gaussian measurements, one-way classical correlations and discord.
//!
//! Measurements are described by the covariance matrix `Gamma` of their seed;
//! the conditional state of `A` after measuring `B` is the Schur complement
//! `gamma_A - sigma (gamma_B + Gamma)^{-1} sigma^T`. Optimizations run over
//! pure seeds only.

use std::f64::consts::PI;

use nalgebra::{DMatrix, Matrix2, SymmetricEigen};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha20Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::gaussian::{to_standard_form, CovarianceMatrix, ModePartition, TwoModeStandardForm};
use crate::linalg;
use crate::optimize::{coordinate_descent, nelder_mead, CoordinateOptions, NelderMeadOptions};

/// Which side is measured. `AGivenB` conditions `A` on a measurement of `B`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Direction {
    AGivenB,
    BGivenA,
}

impl Direction {
    pub fn reversed(self) -> Self {
        match self {
            Direction::AGivenB => Direction::BGivenA,
            Direction::BGivenA => Direction::AGivenB,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Method {
    ClosedForm,
    Numeric,
}

/// Optimizer witness attached to a [`MeasureReport`].
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Witness {
    None,
    /// Which branch of the closed-form minimum applied.
    Branch { homodyne: bool },
    /// Optimal angle of the `m_theta` family.
    Theta(f64),
    /// Optimal single-mode pure seed.
    Seed { lambda: f64, phi: f64 },
    /// Optimal multimode seed covariance matrix, row-major.
    SeedMatrix(Vec<f64>),
    /// Optimal pure state of the convex roof, row-major.
    PureState(Vec<f64>),
}

/// A named scalar result with the optimizer's witness.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MeasureReport {
    pub value: f64,
    pub witness: Witness,
    pub method: Method,
    pub converged: bool,
    pub iterations: usize,
}

impl MeasureReport {
    pub(crate) fn exact(value: f64, witness: Witness) -> Self {
        Self { value, witness, method: Method::ClosedForm, converged: true, iterations: 0 }
    }
}

/// Covariance matrix of a Gaussian measurement seed.
#[derive(Debug, Clone, PartialEq)]
pub struct MeasurementSeed {
    gamma_seed: CovarianceMatrix,
    pure_params: Option<(f64, f64)>,
}

impl MeasurementSeed {
    pub fn new(gamma_seed: CovarianceMatrix) -> Self {
        Self { gamma_seed, pure_params: None }
    }

    /// `R(phi) diag(lambda, 1/lambda) R(phi)^T`.
    pub fn single_mode(lambda: f64, phi: f64) -> Result<Self> {
        if !lambda.is_finite() || lambda <= 0.0 || !phi.is_finite() {
            return Err(Error::InvalidArgument(format!("bad seed parameters lambda = {lambda}, phi = {phi}")));
        }
        let r = linalg::rotation(phi);
        let g = r * Matrix2::new(lambda, 0.0, 0.0, 1.0 / lambda) * r.transpose();
        let m = DMatrix::from_row_slice(2, 2, &[g[(0, 0)], g[(0, 1)], g[(1, 0)], g[(1, 1)]]);
        Ok(Self { gamma_seed: CovarianceMatrix::new_unchecked(m), pure_params: Some((lambda, phi.rem_euclid(2.0 * PI))) })
    }

    /// Vacuum seed on `n_modes` modes.
    pub fn heterodyne(n_modes: usize) -> Self {
        let pure_params = (n_modes == 1).then_some((1.0, 0.0));
        Self { gamma_seed: CovarianceMatrix::vacuum(n_modes), pure_params }
    }

    pub fn gamma_seed(&self) -> &CovarianceMatrix {
        &self.gamma_seed
    }

    pub fn lambda_phi(&self) -> Option<(f64, f64)> {
        self.pure_params
    }
}

/// Settings for the seed searches.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NumericOptions {
    /// Points per axis of the `(lambda, phi)` grid.
    pub grid_density: usize,
    pub lambda_min: f64,
    pub lambda_max: f64,
    /// Parameter tolerance of the refinement.
    pub refine_tol: f64,
    /// Largest `|ln lambda|` reached by the refinement.
    pub refine_ln_cap: f64,
    /// Random starts of the two-mode seed search.
    pub restarts: usize,
    pub seed: u64,
}

impl Default for NumericOptions {
    fn default() -> Self {
        Self {
            grid_density: 64,
            lambda_min: 1e-3,
            lambda_max: 1e3,
            refine_tol: 1e-10,
            refine_ln_cap: 1e12_f64.ln(),
            restarts: 16,
            seed: 0,
        }
    }
}

fn ln_det_or_empty(m: &DMatrix<f64>) -> Result<f64> {
    if m.nrows() == 0 {
        return Ok(0.0);
    }
    linalg::ln_det_spd(m)
}

fn sub_cm(cm: &CovarianceMatrix, modes: &[usize]) -> DMatrix<f64> {
    linalg::principal(cm.matrix(), &linalg::quadratures(modes))
}

/// `S_2(A) + S_2(B) - S_2(AB)`.
pub fn mutual_information(cm: &CovarianceMatrix, partition: &ModePartition) -> Result<f64> {
    if partition.len() != 2 || partition.groups().iter().any(Vec::is_empty) {
        return Err(Error::Partition("mutual information needs two non-empty groups".into()));
    }
    let (a, b) = (partition.group(0), partition.group(1));
    let ab: Vec<usize> = a.iter().chain(b).copied().collect();
    Ok(0.5 * (ln_det_or_empty(&sub_cm(cm, a))? + ln_det_or_empty(&sub_cm(cm, b))? - ln_det_or_empty(&sub_cm(cm, &ab))?))
}

/// `S_2(AB) + S_2(BC) - S_2(ABC) - S_2(B)` for a partition `A:B:C`.
pub fn ssa_gap(cm: &CovarianceMatrix, partition: &ModePartition) -> Result<f64> {
    if partition.len() != 3 {
        return Err(Error::Partition("strong subadditivity needs three groups A;B;C".into()));
    }
    let (a, b, c) = (partition.group(0), partition.group(1), partition.group(2));
    let join = |xs: &[&[usize]]| -> Vec<usize> { xs.iter().flat_map(|x| x.iter().copied()).collect() };
    let ld = |modes: Vec<usize>| ln_det_or_empty(&sub_cm(cm, &modes));
    Ok(0.5 * (ld(join(&[a, b]))? + ld(join(&[b, c]))? - ld(join(&[a, b, c]))? - ld(b.to_vec())?))
}

/// Kept and measured groups for a direction on a two-group partition.
fn roles(partition: &ModePartition, direction: Direction) -> Result<(&[usize], &[usize])> {
    if partition.len() != 2 || partition.groups().iter().any(Vec::is_empty) {
        return Err(Error::Partition("expected two non-empty groups A;B".into()));
    }
    Ok(match direction {
        Direction::AGivenB => (partition.group(0), partition.group(1)),
        Direction::BGivenA => (partition.group(1), partition.group(0)),
    })
}

/// Conditional covariance matrix of the unmeasured group after measuring the
/// other one with `seed`. With `Direction::AGivenB` the result describes `A`.
pub fn conditional_cm(
    cm: &CovarianceMatrix,
    partition: &ModePartition,
    direction: Direction,
    seed: &MeasurementSeed,
) -> Result<CovarianceMatrix> {
    let (kept, measured) = roles(partition, direction)?;
    if seed.gamma_seed().n_modes() != measured.len() {
        return Err(Error::ModeCount { expected: measured.len(), actual: seed.gamma_seed().n_modes() });
    }
    let ka = linalg::quadratures(kept);
    let kb = linalg::quadratures(measured);
    let ga = linalg::principal(cm.matrix(), &ka);
    let gb = linalg::principal(cm.matrix(), &kb);
    let sigma = linalg::block(cm.matrix(), &ka, &kb);
    let inv = (gb + seed.gamma_seed().matrix())
        .try_inverse()
        .ok_or_else(|| Error::Numerical("gamma_B + Gamma is singular".into()))?;
    let out = linalg::symmetrize(&(ga - &sigma * inv * sigma.transpose()));
    let report = crate::gaussian::validate(&out)?;
    match report.nu_min {
        Some(nu) if nu >= 1.0 - 1e-8 => Ok(CovarianceMatrix::new_unchecked(out)),
        Some(nu) => Err(Error::Unphysical(nu)),
        None => Err(Error::NotPositiveDefinite),
    }
}

/// Minimum of `det gamma~_A` over pure single-mode seeds on `B`, from the
/// two-branch closed formula. The boolean flags the homodyne branch.
pub fn min_conditional_det(sf: &TwoModeStandardForm) -> (f64, bool) {
    let TwoModeStandardForm { a, b, c_plus: cp, c_minus: cm } = *sf;
    let (cp2, cm2) = (cp * cp, cm * cm);
    let bb = b * b - 1.0;
    if cp2 == 0.0 || bb <= 1e-14 {
        return (a * a, false);
    }
    let cond = (a * b * b * cm2 - cp2 * (a + b * cm2)) * (a * b * b * cp2 - cm2 * (a + b * cp2));
    if cond < 0.0 {
        return (a * (a - cp2 / b), true);
    }
    let u = (a * bb - b * cm2) * (a * bb - b * cp2);
    ((2.0 * (cm * cp).abs() * u.max(0.0).sqrt() + u + cm2 * cp2) / (bb * bb), false)
}

fn oriented_standard_form(cm: &CovarianceMatrix, direction: Direction) -> Result<TwoModeStandardForm> {
    let sf = to_standard_form(cm)?;
    Ok(match direction {
        Direction::AGivenB => sf,
        Direction::BGivenA => sf.swapped(),
    })
}

/// Two-mode state with the kept mode first.
fn single_pair(cm: &CovarianceMatrix, kept: usize, measured: usize) -> CovarianceMatrix {
    CovarianceMatrix::new_unchecked(sub_cm(cm, &[kept, measured]))
}

fn is_single_pair(kept: &[usize], measured: &[usize]) -> bool {
    kept.len() == 1 && measured.len() == 1
}

/// One-way classical correlations `J_2`.
///
/// When both groups are single modes the closed formula on the standard form
/// is used; larger groups go through [`classical_correlations_numeric`].
pub fn classical_correlations(
    cm: &CovarianceMatrix,
    partition: &ModePartition,
    direction: Direction,
) -> Result<MeasureReport> {
    let (kept, measured) = roles(partition, direction)?;
    if !is_single_pair(kept, measured) {
        return classical_correlations_numeric(cm, partition, direction, NumericOptions::default());
    }
    let pair = single_pair(cm, kept[0], measured[0]);
    let sf = oriented_standard_form(&pair, Direction::AGivenB)?;
    let (min_det, homodyne) = min_conditional_det(&sf);
    Ok(MeasureReport::exact(sf.a.ln() - 0.5 * min_det.ln(), Witness::Branch { homodyne }))
}

/// Discord `D_2 = I_2 - J_2`.
pub fn discord(cm: &CovarianceMatrix, partition: &ModePartition, direction: Direction) -> Result<MeasureReport> {
    let (kept, measured) = roles(partition, direction)?;
    let mi = mutual_information(cm, partition)?;
    if !is_single_pair(kept, measured) {
        let j = classical_correlations_numeric(cm, partition, direction, NumericOptions::default())?;
        return Ok(MeasureReport { value: mi - j.value, ..j });
    }
    let pair = single_pair(cm, kept[0], measured[0]);
    let sf = oriented_standard_form(&pair, Direction::AGivenB)?;
    let (min_det, homodyne) = min_conditional_det(&sf);
    let value = sf.b.ln() - 0.5 * pair.ln_det() + 0.5 * min_det.ln();
    Ok(MeasureReport::exact(value, Witness::Branch { homodyne }))
}

/// Conditional determinant for a single measured mode, evaluated in the
/// eigenframe of the seed so that strongly squeezed seeds stay accurate.
struct SingleModeConditioner {
    ga: DMatrix<f64>,
    gb: Matrix2<f64>,
    sigma: DMatrix<f64>,
}

impl SingleModeConditioner {
    fn new(cm: &CovarianceMatrix, kept: &[usize], measured: usize) -> Self {
        let ka = linalg::quadratures(kept);
        let kb = linalg::quadratures(&[measured]);
        let gbm = linalg::principal(cm.matrix(), &kb);
        Self {
            ga: linalg::principal(cm.matrix(), &ka),
            gb: Matrix2::new(gbm[(0, 0)], gbm[(0, 1)], gbm[(1, 0)], gbm[(1, 1)]),
            sigma: linalg::block(cm.matrix(), &ka, &kb),
        }
    }

    /// `ln det gamma~` for the seed `exp(s (cos 2phi Z + sin 2phi X))`,
    /// with `(u, v) = s (cos 2phi, sin 2phi)`.
    fn ln_det_uv(&self, u: f64, v: f64) -> f64 {
        let s = u.hypot(v);
        let phi = 0.5 * v.atan2(u);
        self.ln_det(s, phi)
    }

    fn ln_det(&self, ln_lambda: f64, phi: f64) -> f64 {
        let r = linalg::rotation(phi);
        let b = r.transpose() * self.gb * r;
        let (lam, mu) = (ln_lambda.exp(), (-ln_lambda).exp());
        let (n11, n22, n12) = (b[(0, 0)] + lam, b[(1, 1)] + mu, b[(0, 1)]);
        let det = n11 * n22 - n12 * n12;
        let ninv = Matrix2::new(n22, -n12, -n12, n11) / det;
        let rr = DMatrix::from_row_slice(2, 2, &[r[(0, 0)], r[(0, 1)], r[(1, 0)], r[(1, 1)]]);
        let sr = &self.sigma * rr;
        let ni = DMatrix::from_row_slice(2, 2, &[ninv[(0, 0)], ninv[(0, 1)], ninv[(1, 0)], ninv[(1, 1)]]);
        let cond = linalg::symmetrize(&(&self.ga - &sr * ni * sr.transpose()));
        ln_det_general(&cond)
    }
}

fn ln_det_general(m: &DMatrix<f64>) -> f64 {
    if m.nrows() == 2 {
        let d = m[(0, 0)] * m[(1, 1)] - m[(0, 1)] * m[(1, 0)];
        return if d > 0.0 { d.ln() } else { f64::INFINITY };
    }
    linalg::ln_det_spd(m).unwrap_or_else(|_| {
        let d = m.determinant();
        if d > 0.0 { d.ln() } else { f64::INFINITY }
    })
}

/// Grid over `(lambda, phi)` followed by coordinate golden-section refinement.
/// Minimizes `f(u, v)` with `(u, v) = ln(lambda) (cos 2phi, sin 2phi)`.
///
/// Each start is refined twice: in `(u, v)`, which is smooth through the
/// heterodyne point, and in polar form `(ln lambda, phi)`, which follows a
/// homodyne valley out to the cap along a fixed angle.
fn single_mode_search<F: Fn(f64, f64) -> f64>(f: F, opts: &NumericOptions) -> (f64, f64, f64, usize, bool) {
    let g = opts.grid_density.max(2);
    let (l0, l1) = (opts.lambda_min.ln(), opts.lambda_max.ln());
    let mut grid: Vec<(f64, f64, f64)> = Vec::with_capacity(g * g);
    for i in 0..g {
        let s = l0 + (l1 - l0) * i as f64 / (g - 1) as f64;
        for j in 0..g {
            let phi = PI * j as f64 / g as f64;
            grid.push((f(s * (2.0 * phi).cos(), s * (2.0 * phi).sin()), s, phi));
        }
    }
    // stable sort keeps the lowest grid index first among ties
    grid.sort_by(|a, b| a.0.total_cmp(&b.0));
    let cap = opts.refine_ln_cap;
    let copts = CoordinateOptions { initial_step: 0.25, xtol: opts.refine_tol, ftol: 1e-13, max_sweeps: 400 };
    let polar = |x: &[f64]| f(x[0] * (2.0 * x[1]).cos(), x[0] * (2.0 * x[1]).sin());
    let mut best: Option<(f64, f64, f64, usize, bool)> = None;
    let mut consider = |value: f64, u: f64, v: f64, iters: usize, conv: bool| {
        if best.as_ref().is_none_or(|b| value < b.0) {
            best = Some((value, u, v, iters, conv));
        }
    };
    for &(_, s0, phi0) in grid.iter().take(3) {
        let (u0, v0) = (s0 * (2.0 * phi0).cos(), s0 * (2.0 * phi0).sin());
        let m = coordinate_descent(|x| f(x[0], x[1]), &[u0, v0], &[-cap, -cap], &[cap, cap], copts);
        consider(m.value, m.x[0], m.x[1], m.iterations, m.converged);
        // lambda < 1 at phi is lambda > 1 at phi + pi/2
        let (s1, phi1) = if s0 < 0.0 { (-s0, phi0 + 0.5 * PI) } else { (s0, phi0) };
        let m = coordinate_descent(polar, &[s1, phi1], &[0.0, phi1 - PI], &[cap, phi1 + PI], copts);
        let (s, phi) = (m.x[0], m.x[1]);
        consider(m.value, s * (2.0 * phi).cos(), s * (2.0 * phi).sin(), m.iterations, m.converged);
    }
    best.expect("grid is non-empty")
}

fn uv_to_lambda_phi(u: f64, v: f64) -> (f64, f64) {
    (u.hypot(v).exp(), (0.5 * v.atan2(u)).rem_euclid(PI))
}

/// Pure two-mode seed `exp(2J)` with `J` symmetric and anticommuting with the
/// symplectic form; `p` holds `(x1, y1, x2, y2, p, q)`.
fn two_mode_seed_frame(p: &[f64]) -> (DMatrix<f64>, Vec<f64>) {
    let blk = |x: f64, y: f64| [[x, y], [y, -x]];
    let blocks = [[blk(p[0], p[1]), blk(p[4], p[5])], [blk(p[4], p[5]), blk(p[2], p[3])]];
    let j = DMatrix::from_fn(4, 4, |r, c| blocks[r / 2][c / 2][r % 2][c % 2]);
    let eig = SymmetricEigen::new(j);
    (eig.eigenvectors, eig.eigenvalues.iter().map(|w| 2.0 * w).collect())
}

fn two_mode_seed_matrix(p: &[f64]) -> DMatrix<f64> {
    let (v, w) = two_mode_seed_frame(p);
    let d = DMatrix::from_diagonal(&nalgebra::DVector::from_iterator(4, w.iter().map(|x| x.exp())));
    linalg::symmetrize(&(&v * d * v.transpose()))
}

struct TwoModeConditioner {
    ga: DMatrix<f64>,
    gb: DMatrix<f64>,
    sigma: DMatrix<f64>,
    ln_cap: f64,
}

impl TwoModeConditioner {
    fn ln_det(&self, p: &[f64]) -> f64 {
        let (v, w) = two_mode_seed_frame(p);
        if w.iter().any(|x| x.abs() > self.ln_cap) {
            return f64::INFINITY;
        }
        let mut n = v.transpose() * &self.gb * &v;
        for (k, wk) in w.iter().enumerate() {
            n[(k, k)] += wk.exp();
        }
        let Ok(ninv) = linalg::inverse_spd(&linalg::symmetrize(&n)) else {
            return f64::INFINITY;
        };
        let sv = &self.sigma * &v;
        ln_det_general(&linalg::symmetrize(&(&self.ga - &sv * ninv * sv.transpose())))
    }
}

/// Numeric `J_2` by direct search over pure seeds on the measured group
/// (one or two modes).
pub fn classical_correlations_numeric(
    cm: &CovarianceMatrix,
    partition: &ModePartition,
    direction: Direction,
    opts: NumericOptions,
) -> Result<MeasureReport> {
    let (kept, measured) = roles(partition, direction)?;
    let ln_det_a = ln_det_or_empty(&sub_cm(cm, kept))?;
    match measured.len() {
        1 => {
            let c = SingleModeConditioner::new(cm, kept, measured[0]);
            let (best, u, v, iterations, converged) = single_mode_search(|u, v| c.ln_det_uv(u, v), &opts);
            let (lambda, phi) = uv_to_lambda_phi(u, v);
            Ok(MeasureReport {
                value: 0.5 * (ln_det_a - best),
                witness: Witness::Seed { lambda, phi },
                method: Method::Numeric,
                converged,
                iterations,
            })
        }
        2 => {
            let ka = linalg::quadratures(kept);
            let kb = linalg::quadratures(measured);
            let c = TwoModeConditioner {
                ga: linalg::principal(cm.matrix(), &ka),
                gb: linalg::principal(cm.matrix(), &kb),
                sigma: linalg::block(cm.matrix(), &ka, &kb),
                ln_cap: opts.refine_ln_cap,
            };
            let mut rng = ChaCha20Rng::seed_from_u64(opts.seed);
            let mut starts = vec![vec![0.0; 6]];
            for _ in 0..opts.restarts {
                starts.push((0..6).map(|_| rng.random_range(-1.5..1.5)).collect());
            }
            let nm = NelderMeadOptions { initial_step: 0.3, xtol: opts.refine_tol, ftol: 1e-14, max_iterations: 20_000 };
            let mut best: Option<crate::optimize::Minimum> = None;
            let mut iterations = 0;
            for s in &starts {
                let mut m = nelder_mead(|p| c.ln_det(p), s, nm);
                // one restart from the converged point guards against simplex collapse
                let again = nelder_mead(|p| c.ln_det(p), &m.x, nm);
                iterations += m.iterations + again.iterations;
                if again.value <= m.value {
                    m = again;
                }
                if best.as_ref().is_none_or(|b| m.value < b.value) {
                    best = Some(m);
                }
            }
            let best = best.expect("at least one start");
            Ok(MeasureReport {
                value: 0.5 * (ln_det_a - best.value),
                witness: Witness::SeedMatrix(two_mode_seed_matrix(&best.x).transpose().iter().copied().collect()),
                method: Method::Numeric,
                converged: best.converged,
                iterations,
            })
        }
        k => Err(Error::InvalidArgument(format!(
            "numeric seed search supports measured groups of 1 or 2 modes, got {k}"
        ))),
    }
}

/// Outcome of [`seed_search`].
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SeedSearch {
    pub lambda: f64,
    pub phi: f64,
    pub det_value: f64,
    pub iterations: usize,
    pub converged: bool,
}

/// Explicit `det gamma~_A` for the seed `(lambda, phi)` on a standard form.
/// For `lambda > 1` numerator and denominator are rescaled by `lambda^-2`.
pub fn conditional_det_explicit(sf: &TwoModeStandardForm, lambda: f64, phi: f64) -> f64 {
    let TwoModeStandardForm { a, b, c_plus: cp, c_minus: cm } = *sf;
    let (cp2, cm2) = (cp * cp, cm * cm);
    let cos = (2.0 * phi).cos();
    if lambda <= 1.0 {
        let l = lambda;
        let den = 2.0 * (b + l) * (1.0 + b * l);
        let num = 2.0 * a * a * (b + l) * (1.0 + b * l) - a * (cp2 + cm2) * (2.0 * b * l + l * l + 1.0)
            + 2.0 * cp2 * cm2 * l
            + a * (cp2 - cm2) * (l * l - 1.0) * cos;
        num / den
    } else {
        let m = 1.0 / lambda;
        let den = 2.0 * (b * m + 1.0) * (m + b);
        let num = 2.0 * a * a * (b * m + 1.0) * (m + b) - a * (cp2 + cm2) * (2.0 * b * m + 1.0 + m * m)
            + 2.0 * cp2 * cm2 * m
            + a * (cp2 - cm2) * (1.0 - m * m) * cos;
        num / den
    }
}

/// Grid-and-refine minimization of [`conditional_det_explicit`] on the
/// standard form of a two-mode state.
pub fn seed_search(cm: &CovarianceMatrix, direction: Direction, opts: NumericOptions) -> Result<SeedSearch> {
    if cm.n_modes() != 2 {
        return Err(Error::ModeCount { expected: 2, actual: cm.n_modes() });
    }
    let sf = oriented_standard_form(cm, direction)?;
    let f = |u: f64, v: f64| {
        let (lambda, phi) = uv_to_lambda_phi(u, v);
        conditional_det_explicit(&sf, lambda, phi)
    };
    let (det_value, u, v, iterations, converged) = single_mode_search(f, &opts);
    let (lambda, phi) = uv_to_lambda_phi(u, v);
    Ok(SeedSearch { lambda, phi, det_value, iterations, converged })
}

/// Shorthand for the `0;1` bipartition of a two-mode state.
pub fn two_mode_partition() -> ModePartition {
    ModePartition::bipartition(vec![0], vec![1], 2).expect("valid")
}
