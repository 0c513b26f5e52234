//! Average-case query complexity of boolean functions.
//!
//! This crate computes the exact minimum expected depth of zero-error
//! decision trees under the uniform input distribution, together with the
//! surrounding machinery: truth tables and restrictions, certificate
//! complexity, executable query strategies with exact cost measurement,
//! fixed-weight function sampling, the without-replacement box process,
//! and restriction-tail / criticality analysis for DNF formulas.

pub mod certificate;
pub mod criticality;
pub mod dnf;
pub mod ecs;
pub mod error;
pub mod exact;
pub mod experiments;
pub mod families;
pub mod hypergeom;
pub mod lattice;
pub mod rational;
pub mod report;
pub mod restriction;
pub mod rng;
pub mod sampling;
pub mod strategy;
pub mod table;

pub use error::Error;
pub use rational::Dyadic;
pub use restriction::{PathSpec, Restriction};
pub use table::TruthTable;

/// Convenience result alias used throughout the crate.
pub type Result<T> = std::result::Result<T, Error>;
