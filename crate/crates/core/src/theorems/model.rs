//! The finite-model dictionary every checker translates through.
//!
//! For a finite semigroup the compactification collapses onto the semigroup
//! itself, because every ultrafilter on a finite set is principal:
//!
//! * ultrafilters are points of `S`;
//! * a proper filter is the principal filter over its base, and the closed
//!   set it generates is that base;
//! * the closure of a subset `A` is `A` itself;
//! * the product of the closed sets of two filters is the set product of
//!   their bases, and it is already closed.
//!
//! Statements phrased in terms of closed sets and ultrafilters are decided
//! through these helpers only, so the modeling identification lives in
//! exactly one place.

use crate::notions::{self, NotionsError};
use crate::semigroup::CayleyTable;
use crate::setfam::{Filter, SubsetMask};

/// The closed set a filter generates: its base.
pub fn closed_set_of_filter(f: Filter) -> SubsetMask {
    notions::filter_base(f)
}

/// The filter generating a nonempty closed set: the principal filter.
pub fn filter_of_closed_set(base: SubsetMask) -> Result<Filter, NotionsError> {
    notions::principal_filter(base)
}

/// Closure of a subset of the ground set.
pub fn closure_of_subset(a: SubsetMask) -> SubsetMask {
    a
}

/// Product of the closed sets of two filters.
pub fn closed_product(t: &CayleyTable, f: Filter, g: Filter) -> SubsetMask {
    t.set_product(closed_set_of_filter(f), closed_set_of_filter(g))
}

/// The ultrafilters lying in the closed set of a filter: its base points.
pub fn ultrafilters_in(f: Filter) -> impl Iterator<Item = u8> {
    closed_set_of_filter(f).elements()
}

pub use notions::point_ultrafilter;
