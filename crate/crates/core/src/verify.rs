//! Seeded verification campaigns.
//!
//! Every trial draws its instance from a `ChaCha20Rng` seeded with
//! `master_seed.wrapping_add(trial_index)` through `SeedableRng::seed_from_u64`.
//! Trials run in parallel and are aggregated in index order, so a report does
//! not depend on the number of worker threads and `run_trial(suite, worst_seed)`
//! reproduces `worst_value` bit for bit.

use std::fmt;
use std::str::FromStr;
use std::time::Instant;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha20Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::correlations::{discord, ssa_gap, two_mode_partition, Direction};
use crate::entanglement::{
    je_gap, k_function, kw_gap, monogamy_gap, ppt_min_symplectic_eigenvalue, residual_d2, residual_e2,
    residual_e2_invariant, InseparabilityClass, ThreeModeLocalInvariants,
};
use crate::error::{Error, Result};
use crate::gaussian::{random_mixed_cm, random_pure_cm, CovarianceMatrix, ModePartition, TwoModeStandardForm};
use crate::phase_space::{mc_entropy, sampling_entropy};

/// Squeezing cap used by every campaign that draws random states.
pub const SQUEEZE_CAP: f64 = 1.5;
/// Thermal cap used by every campaign that draws mixed states.
pub const TEMP_CAP: f64 = 5.0;
/// Monte Carlo sample count per `mc-entropy` trial.
pub const MC_SAMPLES: usize = 100_000;
/// Upper end of the local invariants drawn for K-function tuples.
pub const K_TUPLE_MAX: f64 = 10.0;
/// Lower end of the local invariants on the structured K grid.
pub const K_TUPLE_MIN: f64 = 1.0 + 1e-4;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Suite {
    /// Strong subadditivity gap on random mixed 3- and 4-mode states.
    Ssa,
    /// Monogamy gap on random pure 3- and 4-mode states.
    Monogamy,
    /// Koashi-Winter gap on random pure 3-mode states.
    Kw,
    /// `J_2 - E_2` on random two-mode states.
    Je,
    /// K-function on random physical entangled standard-form tuples.
    KNonneg,
    /// Smaller of the two one-way discords on random two-mode states.
    DiscordNonneg,
    /// Monte Carlo sampling entropy, in standard errors from the exact value.
    McEntropy,
    /// Focus spread and closed-form agreement of the three-mode residual.
    ResidualInvariance,
}

/// Whether a trial value must be nonnegative or must vanish.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Check {
    Inequality,
    Equality,
}

impl Suite {
    pub const ALL: [Suite; 8] = [
        Suite::Ssa,
        Suite::Monogamy,
        Suite::Kw,
        Suite::Je,
        Suite::KNonneg,
        Suite::DiscordNonneg,
        Suite::McEntropy,
        Suite::ResidualInvariance,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Ssa => "ssa",
            Suite::Monogamy => "monogamy",
            Suite::Kw => "kw",
            Suite::Je => "je",
            Suite::KNonneg => "knonneg",
            Suite::DiscordNonneg => "discord-nonneg",
            Suite::McEntropy => "mc-entropy",
            Suite::ResidualInvariance => "residual-invariance",
        }
    }

    pub fn check(self) -> Check {
        match self {
            Suite::Kw | Suite::McEntropy | Suite::ResidualInvariance => Check::Equality,
            _ => Check::Inequality,
        }
    }

    /// Default tolerance. `mc-entropy` is measured in standard errors.
    pub fn default_tol(self) -> f64 {
        match self {
            Suite::McEntropy => 3.0,
            s if s.check() == Check::Equality => 1e-6,
            _ => 1e-9,
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Suite {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Suite::ALL
            .into_iter()
            .find(|suite| suite.name() == s)
            .ok_or_else(|| Error::InvalidArgument(format!("unknown suite '{s}'")))
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CampaignReport {
    pub suite: String,
    pub trials: usize,
    /// Trials beyond tolerance, including trials whose evaluation errored.
    pub failures: usize,
    /// Value of the worst trial; `None` when every trial was skipped.
    pub worst_value: Option<f64>,
    pub worst_seed: Option<u64>,
    pub elapsed_seconds: f64,
    /// Instances outside the domain of the checked formula.
    pub skipped: usize,
    pub errors: usize,
    pub tol: f64,
}

impl CampaignReport {
    pub fn passed(&self) -> bool {
        self.failures == 0
    }
}

/// Generator pinned for all campaigns.
pub fn trial_rng(seed: u64) -> ChaCha20Rng {
    ChaCha20Rng::seed_from_u64(seed)
}

/// Evaluates one trial. `Ok(None)` marks an instance outside the formula domain.
pub fn run_trial(suite: Suite, seed: u64) -> Result<Option<f64>> {
    let mut rng = trial_rng(seed);
    let rng = &mut rng;
    match suite {
        Suite::Ssa => {
            let (cm, partition) = random_ssa_instance(rng)?;
            ssa_gap(&cm, &partition).map(Some)
        }
        Suite::Monogamy => {
            let n = if rng.random::<f64>() < 0.9 { 3 } else { 4 };
            let cm = random_pure_cm(n, SQUEEZE_CAP, rng)?;
            monogamy_gap(&cm, rng.random_range(0..n)).map(Some)
        }
        Suite::Kw => {
            let cm = random_pure_cm(3, SQUEEZE_CAP, rng)?;
            let mut order = [0, 1, 2];
            order.shuffle(rng);
            kw_gap(&cm, (order[0], order[1], order[2])).map(Some)
        }
        Suite::Je => {
            let cm = random_two_mode(rng)?;
            je_gap(&cm).map(Some)
        }
        Suite::KNonneg => {
            let sf = random_entangled_tuple(rng)?;
            match k_function(sf.a, sf.b, sf.c_plus, sf.c_minus) {
                Ok(k) => Ok(Some(k)),
                Err(Error::Domain(_)) => Ok(None),
                Err(e) => Err(e),
            }
        }
        Suite::DiscordNonneg => {
            let cm = random_two_mode(rng)?;
            let p = two_mode_partition();
            let ab = discord(&cm, &p, Direction::AGivenB)?.value;
            let ba = discord(&cm, &p, Direction::BGivenA)?.value;
            Ok(Some(ab.min(ba)))
        }
        Suite::McEntropy => {
            let n = rng.random_range(1..=2);
            let cm = random_mixed_cm(n, SQUEEZE_CAP, TEMP_CAP, rng)?;
            let est = mc_entropy(&cm, MC_SAMPLES, rng)?;
            Ok(Some((est.mean - sampling_entropy(&cm)?) / est.std_error))
        }
        Suite::ResidualInvariance => {
            let inv = random_inseparable_triple(rng)?;
            residual_discrepancy(&inv).map(Some)
        }
    }
}

/// Largest of the focus spread of `residual_e2`, its distance from the
/// permutation-invariant formula, and its distance from `residual_d2`.
pub fn residual_discrepancy(inv: &ThreeModeLocalInvariants) -> Result<f64> {
    let invariant = residual_e2_invariant(inv)?;
    let mut worst = 0.0_f64;
    for focus in 0..3 {
        let e = residual_e2(inv, focus)?;
        let d = residual_d2(inv, focus)?;
        worst = worst.max((e - invariant).abs()).max((d - e).abs());
    }
    Ok(worst)
}

/// Runs `trials` trials starting at `master_seed`.
pub fn run_campaign(suite: Suite, trials: usize, master_seed: u64, tol: f64) -> Result<CampaignReport> {
    if trials == 0 {
        return Err(Error::InvalidArgument("a campaign needs at least one trial".into()));
    }
    if !tol.is_finite() || tol < 0.0 {
        return Err(Error::InvalidArgument(format!("tolerance must be finite and nonnegative, got {tol}")));
    }
    let start = Instant::now();
    let outcomes: Vec<Result<Option<f64>>> = (0..trials as u64)
        .into_par_iter()
        .map(|t| run_trial(suite, master_seed.wrapping_add(t)))
        .collect();

    let badness = |v: f64| match suite.check() {
        Check::Inequality => -v,
        Check::Equality => v.abs(),
    };
    let (mut failures, mut skipped, mut errors) = (0, 0, 0);
    let mut worst: Option<(f64, f64, u64)> = None;
    for (t, outcome) in outcomes.into_iter().enumerate() {
        let seed = master_seed.wrapping_add(t as u64);
        match outcome {
            Ok(None) => skipped += 1,
            Err(_) => {
                errors += 1;
                failures += 1;
            }
            Ok(Some(v)) => {
                let b = if v.is_nan() { f64::INFINITY } else { badness(v) };
                if b > tol {
                    failures += 1;
                }
                if worst.is_none_or(|(wb, _, _)| b > wb) {
                    worst = Some((b, v, seed));
                }
            }
        }
    }
    Ok(CampaignReport {
        suite: suite.name().to_string(),
        trials,
        failures,
        worst_value: worst.map(|w| w.1),
        worst_seed: worst.map(|w| w.2),
        elapsed_seconds: start.elapsed().as_secs_f64(),
        skipped,
        errors,
        tol,
    })
}

/// Random mixed state with a relabelled (1|1|1), (1|2|1) or (2|1|1) partition.
pub fn random_ssa_instance<R: Rng + ?Sized>(rng: &mut R) -> Result<(CovarianceMatrix, ModePartition)> {
    let sizes: &[usize] = match rng.random_range(0..3) {
        0 => &[1, 1, 1],
        1 => &[1, 2, 1],
        _ => &[2, 1, 1],
    };
    let n: usize = sizes.iter().sum();
    let cm = random_mixed_cm(n, SQUEEZE_CAP, TEMP_CAP, rng)?;
    let mut labels: Vec<usize> = (0..n).collect();
    labels.shuffle(rng);
    let mut groups = Vec::with_capacity(3);
    let mut rest = labels.as_slice();
    for &s in sizes {
        let (head, tail) = rest.split_at(s);
        groups.push(head.to_vec());
        rest = tail;
    }
    Ok((cm, ModePartition::new(groups, n)?))
}

/// Random two-mode state, pure one time in five.
pub fn random_two_mode<R: Rng + ?Sized>(rng: &mut R) -> Result<CovarianceMatrix> {
    if rng.random::<f64>() < 0.2 {
        random_pure_cm(2, SQUEEZE_CAP, rng)
    } else {
        random_mixed_cm(2, SQUEEZE_CAP, TEMP_CAP, rng)
    }
}

/// Whether a physical standard-form tuple violates the PPT criterion.
pub fn is_entangled(sf: &TwoModeStandardForm) -> Result<bool> {
    Ok(ppt_min_symplectic_eigenvalue(&sf.to_cm()?)? < 1.0)
}

/// Physical entangled standard-form tuple with `a, b` log-uniform in
/// `[1, K_TUPLE_MAX]`, `c+` uniform below `sqrt(ab - 1)` and `c- = -f c+`.
pub fn random_entangled_tuple<R: Rng + ?Sized>(rng: &mut R) -> Result<TwoModeStandardForm> {
    let ln_max = K_TUPLE_MAX.ln();
    for _ in 0..10_000 {
        let a = (rng.random::<f64>() * ln_max).exp();
        let b = (rng.random::<f64>() * ln_max).exp();
        let c_plus = rng.random::<f64>() * (a * b - 1.0).max(0.0).sqrt();
        let c_minus = -rng.random::<f64>() * c_plus;
        if let Some(sf) = physical_entangled(a, b, c_plus, c_minus)? {
            return Ok(sf);
        }
    }
    Err(Error::Numerical("no entangled tuple found in 10000 draws".into()))
}

fn physical_entangled(a: f64, b: f64, c_plus: f64, c_minus: f64) -> Result<Option<TwoModeStandardForm>> {
    let Ok(sf) = TwoModeStandardForm::new(a, b, c_plus, c_minus) else {
        return Ok(None);
    };
    Ok(is_entangled(&sf)?.then_some(sf))
}

/// Structured grid of physical entangled tuples: `a, b` geometric in
/// `[K_TUPLE_MIN, K_TUPLE_MAX]`, `c+ = t sqrt(ab - 1)` and `c- = -f c+` with
/// `t, f` uniform in `(0, 1]`, `points` values per axis.
pub fn structured_k_grid(points: usize) -> Result<Vec<TwoModeStandardForm>> {
    if points < 2 {
        return Err(Error::InvalidArgument("the grid needs at least two points per axis".into()));
    }
    let ratio = (K_TUPLE_MAX / K_TUPLE_MIN).ln() / (points - 1) as f64;
    let geo: Vec<f64> = (0..points).map(|i| K_TUPLE_MIN * (ratio * i as f64).exp()).collect();
    let frac: Vec<f64> = (1..=points).map(|i| i as f64 / points as f64).collect();
    let cells: Vec<(f64, f64)> = geo.iter().flat_map(|&a| geo.iter().map(move |&b| (a, b))).collect();
    let chunks: Vec<Vec<TwoModeStandardForm>> = cells
        .par_iter()
        .map(|&(a, b)| {
            let mut out = Vec::new();
            let top = (a * b - 1.0).sqrt();
            for &t in &frac {
                for &f in &frac {
                    let c_plus = t * top;
                    if let Some(sf) = physical_entangled(a, b, c_plus, -f * c_plus)? {
                        out.push(sf);
                    }
                }
            }
            Ok(out)
        })
        .collect::<Result<_>>()?;
    Ok(chunks.into_iter().flatten().collect())
}

/// Whether a tuple avoids the domain boundaries `c+ = sqrt(ab - 1)` and
/// `c+ = |c-|`, where pure states make `K` vanish identically.
pub fn is_interior(sf: &TwoModeStandardForm) -> bool {
    let margin = 1.0 - 1e-9;
    sf.c_plus < (sf.a * sf.b - 1.0).max(0.0).sqrt() * margin && sf.c_minus.abs() < sf.c_plus * margin
}

/// Outcome of evaluating the K-function over a set of tuples.
#[derive(Debug, Clone, PartialEq)]
pub struct KSweep {
    pub evaluated: usize,
    /// Tuples where the K-function denominator degenerates.
    pub skipped: usize,
    pub below: usize,
    pub min_value: f64,
    pub argmin: Option<TwoModeStandardForm>,
}

/// Evaluates `k_function` on every tuple and counts values below `-tol`.
pub fn k_sweep(tuples: &[TwoModeStandardForm], tol: f64) -> KSweep {
    let values: Vec<Option<f64>> = tuples
        .par_iter()
        .map(|sf| k_function(sf.a, sf.b, sf.c_plus, sf.c_minus).ok())
        .collect();
    let mut sweep = KSweep { evaluated: 0, skipped: 0, below: 0, min_value: f64::INFINITY, argmin: None };
    for (sf, v) in tuples.iter().zip(values) {
        match v {
            None => sweep.skipped += 1,
            Some(k) => {
                sweep.evaluated += 1;
                if k < -tol || k.is_nan() {
                    sweep.below += 1;
                }
                if k < sweep.min_value {
                    sweep.min_value = k;
                    sweep.argmin = Some(*sf);
                }
            }
        }
    }
    sweep
}

/// Triple `a_i` log-uniform in `[1, 5]`, redrawn until fully inseparable.
pub fn random_inseparable_triple<R: Rng + ?Sized>(rng: &mut R) -> Result<ThreeModeLocalInvariants> {
    let ln_max = 5f64.ln();
    for _ in 0..100_000 {
        let a = [0; 3].map(|_| (rng.random::<f64>() * ln_max).exp());
        if let Ok(inv) = ThreeModeLocalInvariants::new(a[0], a[1], a[2]) {
            if InseparabilityClass::of(&inv).fully_inseparable {
                return Ok(inv);
            }
        }
    }
    Err(Error::Numerical("no fully inseparable triple found".into()))
}
