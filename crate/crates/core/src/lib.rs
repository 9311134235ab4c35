//! Exact cohomology of finite groups with finite coefficients, group-change
//! maps at the cochain level, and Cassels-Tate pairings over finite duality
//! contexts.

pub mod cochain;
pub mod cohomology;
pub mod conjugation;
pub mod context;
pub mod ctp;
pub mod error;
pub mod extension;
pub mod fieldchange;
pub mod finab;
pub mod fixtures;
pub mod gamma;
pub mod group;
pub mod group_change;
pub mod hom;
pub mod identities;
pub mod induced;
pub mod io;
pub mod linalg;
pub mod module;
pub mod oracle;
pub mod qz;
pub mod sequence;
pub mod subquotient;
pub mod verify;

pub use error::{CochainError, ContextError, CtpError, GroupError, LoadError, ModuleError};
pub use group::{DoubleCosetDecomposition, Elem, FiniteGroup, Subgroup, Transversal};
pub use finab::{AbSubgroup, FinAb};
pub use hom::{ModuleHom, Pairing};
pub use induced::Induced;
pub use module::GModule;
pub use qz::QZ;
pub use cochain::{Cochain, Homogeneous};
pub use cohomology::{CohomologyGroup, Solve};
pub use group_change::{ClassMap, CohomSum, MapKind};
pub use context::{DecoratedModule, DualityContext, Place};
pub use sequence::DecoratedSequence;
pub use ctp::{ctp, ctp_matrix, CtpComputation, CtpMatrix};
