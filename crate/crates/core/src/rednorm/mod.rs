//! Matrices over group rings: reduced norms, star adjoints, the σ-isomorphism and Fitting invariants.

pub mod fitting;
pub mod gr_matrix;
pub mod hset;
pub mod norm;
pub mod presentation;
pub mod representation;
pub mod sigma;

pub use fitting::{
    annihilation_check, fitting_of_presentation, FiniteGModule, FittingInvariant,
    PresentationModule,
};
pub use gr_matrix::GroupRingMatrix;
pub use hset::{certified_h, i_membership, validate_candidate, HElement, HStatus, IMembership};
pub use norm::{Realization, StarAdjointResult};
pub use presentation::{fitting_report, FittingReport, PresentationFile, PRESENTATION_SCHEMA};
pub use representation::MonomialRep;
pub use sigma::{det_commutative, MatrixGroupRing};
