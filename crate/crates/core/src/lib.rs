//! Exhaustive finite-model checking of combinatorial notions of size in
//! semigroups: syndetic, thick, and piecewise syndetic sets, their
//! filter-relative generalizations, and the stack/filter/grill algebra they
//! live in, all over bitmask-encoded finite universes.

pub mod natwin;
pub mod notions;
pub mod semigroup;
pub mod setfam;
pub mod theorems;

pub use semigroup::CayleyTable;
pub use setfam::{ClassFlags, Family, FamilyClass, Filter, Stack, SubsetMask};
