//! Covariance-matrix data model, symplectic algebra, entropies, the two-mode
//! standard form and seeded random-state generation.
//!
//! Quadratures are ordered `(q1, p1, q2, p2, ..., qn, pn)` and the covariance
//! matrix is vacuum-normalized, so the vacuum is the identity.

mod cm;
mod entropy;
mod partition;
mod random;
mod standard_form;

pub use cm::{
    reduce, symplectic_form, symplectic_spectrum, validate, CovarianceMatrix, SymplecticForm,
    SymplecticSpectrum, ValidityReport, PHYSICAL_TOL,
};
pub use entropy::{purity, renyi2_entropy, renyi_alpha_entropy, von_neumann_entropy};
pub use partition::ModePartition;
pub use random::{random_local_symplectic, random_mixed_cm, random_orthogonal_symplectic, random_pure_cm, random_symplectic};
pub use standard_form::{local_invariants, tmss_cm, to_standard_form, LocalInvariants, TwoModeStandardForm};
