//! Renyi-2 information measures for Gaussian states.
//!
//! States are zero-mean Gaussian states described by their vacuum-normalized
//! covariance matrix. The crate provides the symplectic algebra, entropies,
//! phase-space sampling, correlation measures (mutual information, one-way
//! classical correlations, discord), Gaussian entanglement with its
//! three-mode residual, and seeded verification campaigns.
//!
//! ```
//! use gauss_renyi::{tmss_cm, renyi2_entropy, reduce};
//!
//! let cm = tmss_cm(0.5);
//! let a = reduce(&cm, &[0]).unwrap();
//! assert!((renyi2_entropy(&a).unwrap() - 1f64.cosh().ln()).abs() < 1e-12);
//! ```

pub mod correlations;
pub mod entanglement;
mod error;
pub mod gaussian;
mod linalg;
pub mod optimize;
pub mod phase_space;
pub mod verify;

pub use correlations::{
    classical_correlations, classical_correlations_numeric, conditional_cm, discord,
    mutual_information, seed_search, ssa_gap, Direction, MeasureReport, MeasurementSeed, Method,
    NumericOptions, SeedSearch, Witness,
};
pub use entanglement::{
    convex_roof_oracle, e2_pure_bipartition, e2_two_mode, g_reduced, je_gap, k_function, kw_gap,
    m_theta, monogamy_gap, ppt_min_symplectic_eigenvalue, residual_d2, residual_e2,
    residual_e2_invariant, three_mode_pure_cm, InseparabilityClass, ThreeModeLocalInvariants,
};
pub use error::{Error, Result};
pub use gaussian::{
    local_invariants, purity, random_mixed_cm, random_pure_cm, reduce, renyi2_entropy,
    renyi_alpha_entropy, symplectic_form, symplectic_spectrum, tmss_cm, to_standard_form,
    validate, von_neumann_entropy, CovarianceMatrix, LocalInvariants, ModePartition,
    SymplecticForm, SymplecticSpectrum, TwoModeStandardForm, ValidityReport,
};
pub use phase_space::{
    mc_entropy, mc_relative_entropy, mutual_information_via_relent, relative_sampling_entropy,
    sample_phase_space, sampling_entropy, wigner_eval, EntropyEstimate, PhasePoint,
};
pub use verify::{run_campaign, run_trial, CampaignReport, Suite};
