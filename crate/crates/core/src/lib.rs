//! Finite connected quandles: validation, canonical forms via natural
//! reorderings, automorphisms, enumeration by profile, and instance checks of
//! the structural results behind them.

pub mod canon;
pub mod catalog_io;
pub mod enumerate;
pub mod error;
pub mod perm;
pub mod quandle;
pub mod tables;
pub mod verify;

pub use canon::{CanonicalSet, FormN, Reordering};
pub use catalog_io::{CatalogEntry, CatalogError, Metadata};
pub use enumerate::{Census, EnumOptions, Progress};
pub use error::{Error, Result};
pub use perm::{CycleDecomposition, Pattern, Perm};
pub use quandle::{DerivedFormula, FormulaViolation, Profile, Quandle, Sign};
pub use verify::{Claim, Status, VerificationReport, Witness};
