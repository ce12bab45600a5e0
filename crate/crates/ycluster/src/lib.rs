//! Cluster-algebra engine for the sine-Gordon and reduced sine-Gordon
//! Y-systems.
//!
//! The crate builds the two quiver families, runs their periodic mutation
//! sequences over trivial, tropical, principal and positive-real
//! coefficients, and checks the resulting T-/Y-relations, periodicities and
//! dilogarithm sums. [`mutclass`] locates a Dynkin quiver in the mutation
//! class of a given quiver.

pub mod error;
pub mod family;
mod json;
pub mod laurent;
pub mod mutclass;
pub mod quiver;
pub mod seed_engine;
pub mod semifield;
pub mod ysystem_verify;

pub use error::{Error, Result};
pub use family::{Family, FamilyKind};
pub use laurent::LaurentPoly;
pub use quiver::{build_quiver, DynkinType, ExchangeMatrix, LabeledQuiver, VertexId};
pub use seed_engine::{run, MutationSchedule, Seed, Trajectory};
pub use semifield::{Coeff, SemifieldKind, Sign, TropicalMonomial};
