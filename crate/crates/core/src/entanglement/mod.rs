//! Gaussian Renyi-2 entanglement: the two-mode closed form and its convex-roof
//! oracle, the K-function, three-mode pure states with their residual
//! entanglement and discord, and the monogamy and Koashi-Winter gaps.

mod gaps;
mod kfunction;
mod oracle;
mod three_mode;
mod two_mode;

pub use gaps::{je_gap, kw_gap, monogamy_gap};
pub use kfunction::{k_function, k_function_with, GReading};
pub use oracle::{convex_roof_oracle, DEFAULT_RESTARTS};
pub use three_mode::{
    g_reduced, residual_d2, residual_e2, residual_e2_invariant, three_mode_pure_cm, GBranch, InseparabilityClass,
    ThreeModeLocalInvariants,
};
pub use two_mode::{e2_pure_bipartition, e2_two_mode, m_theta, m_theta_as_printed, ppt_min_symplectic_eigenvalue};

/// Radicands above `-RADICAND_CLAMP` are treated as roundoff and clamped to zero.
pub(crate) const RADICAND_CLAMP: f64 = 1e-12;
/// Radicands below `-RADICAND_FAIL` are a genuine exit from the formula domain.
pub(crate) const RADICAND_FAIL: f64 = 1e-9;
