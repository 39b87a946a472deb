//! Exact computation of reflection length, fixed-space codimension, the two
//! induced conjugacy-class orders, and codimension atoms for complex
//! reflection groups, together with the corresponding skew group algebra
//! cohomology generator descriptions.
//!
//! The crate is organized around six modules:
//!
//! * [`cyclo`] - exact arithmetic in cyclotomic fields Q(zeta_N) and exact
//!   linear algebra over them;
//! * [`monomial`] - compact arithmetic and combinatorics for the infinite
//!   family G(m,p,n): cycle-sums, codimension, p-connectedness, atoms;
//! * [`matgroup`] - a generic finite matrix-group engine: closure
//!   enumeration, conjugacy classes, codimension, and the embedded generator
//!   data for the exceptional groups;
//! * [`ordertheory`] - class algebra constants, the layered reflection-length
//!   computation, the two class orders, atom detection, and coincidence
//!   reports;
//! * [`cohom`] - volume forms, the cohomology generator set tagged by
//!   codimension atoms, and the twisting-constant nonvanishing criterion.

pub mod cohom;
pub mod cyclo;
pub mod error;
pub mod matgroup;
pub mod monomial;
pub mod ordertheory;

pub use cyclo::{CycloMatrix, CycloNum};
pub use error::{Error, Result};
pub use matgroup::{Budget, Elem, GroupKind, GroupSpec, GroupTable};
pub use monomial::{CycleSumProfile, GmpnParams, MonomialElt};
pub use ordertheory::{CacTable, CoincidenceReport, OrderTables};
