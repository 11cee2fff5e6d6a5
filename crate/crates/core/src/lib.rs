//! Degree and class degree of one-block factor codes from one-step shifts of
//! finite type onto sofic shifts, with independently checkable certificates.
//!
//! The main entry points are [`degree::degree`] for finite-to-one codes and
//! [`classdeg::class_degree`] for arbitrary codes. [`oracle`] holds the
//! brute-force references both are validated against.

pub mod batch;
pub mod classdeg;
pub mod cli;
pub mod degree;
pub mod error;
pub mod exec;
pub mod finiteness;
pub mod format;
pub mod gen;
pub mod hitting;
pub mod language;
pub mod oracle;
pub mod recode;
pub mod reference;
pub mod set;
pub mod triple;

pub use classdeg::{class_degree, ClassDegree, TransitionBlockCert};
pub use degree::{degree, Degree, MagicBlockCert};
pub use error::*;
pub use exec::Exec;
pub use finiteness::{find_diamond, is_finite_to_one, Diamond};
pub use format::{parse_triple, serialize_triple};
pub use gen::{random_triple, Density, GenParams};
pub use oracle::{brute_force_class_degree, brute_force_degree, cross_check, Limits};
pub use set::SymbolSet;
pub use triple::{normalize, FactorTriple, ShiftOfFiniteType};
