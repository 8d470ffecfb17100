//! Exact counting of solutions to commutator systems in finite groups.
//!
//! Groups are Cayley tables ([`group::GroupTable`]); character values live in
//! exact cyclotomic fields ([`cyclotomic::Cyclo`]). Counts are available both
//! by enumeration and through character formulas, and the two are checked
//! against each other throughout.

pub mod characters;
pub mod counts;
pub mod cyclotomic;
pub mod dihedral;
pub mod distributions;
pub mod error;
pub mod group;
pub mod harness;
pub mod io;
pub mod perm;
pub mod verify;

pub use characters::{build_table, CharacterTable, ClassFunction, Provider};
pub use counts::{CountFunction, CountKind, DEFAULT_BUDGET};
pub use cyclotomic::Cyclo;
pub use error::{Error, Result};
pub use group::{make_group, GroupSpec, GroupTable, Subgroup};
pub use perm::Perm;
