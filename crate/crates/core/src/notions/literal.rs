//! Reference implementations that evaluate every quantifier as written,
//! with no monotonicity shortcuts: the outer quantifier really ranges over
//! all members of the stack and the inner one over all nonempty subsets of
//! each member. Exponentially slower than the public procedures, kept as
//! the independent side of the shortcut-equivalence checks.

use super::{intersection_of_translates, union_of_translates};
use crate::semigroup::CayleyTable;
use crate::setfam::{mesh, Family, Stack, SubsetMask};

pub fn is_syndetic(t: &CayleyTable, a: SubsetMask) -> bool {
    t.full_set()
        .nonempty_subsets()
        .any(|hs| union_of_translates(t, hs, a) == t.full_set())
}

pub fn is_thick(t: &CayleyTable, a: SubsetMask) -> bool {
    t.full_set()
        .nonempty_subsets()
        .all(|hs| !intersection_of_translates(t, hs, a).is_empty())
}

pub fn is_piecewise_syndetic(t: &CayleyTable, a: SubsetMask) -> bool {
    t.full_set()
        .nonempty_subsets()
        .any(|hs| is_thick(t, union_of_translates(t, hs, a)))
}

pub fn is_rel_syndetic(t: &CayleyTable, a: SubsetMask, f: Stack, g: Stack) -> bool {
    f.family().members().all(|b| {
        b.nonempty_subsets()
            .any(|hs| g.family().contains(union_of_translates(t, hs, a)))
    })
}

pub fn is_rel_thick(t: &CayleyTable, a: SubsetMask, f: Stack, g: Stack) -> bool {
    let g_mesh = mesh(g.family());
    f.family().members().any(|b| {
        b.nonempty_subsets()
            .all(|hs| g_mesh.contains(intersection_of_translates(t, hs, a)))
    })
}

pub fn rel_syn_family(t: &CayleyTable, f: Stack, g: Stack) -> Family {
    let mut out = Family::empty(t.order());
    for a in SubsetMask::all(t.order()) {
        if is_rel_syndetic(t, a, f, g) {
            out.insert(a);
        }
    }
    out
}

pub fn rel_thick_family(t: &CayleyTable, f: Stack, g: Stack) -> Family {
    let mut out = Family::empty(t.order());
    for a in SubsetMask::all(t.order()) {
        if is_rel_thick(t, a, f, g) {
            out.insert(a);
        }
    }
    out
}

pub fn size_families(t: &CayleyTable) -> super::SizeFamilies {
    let n = t.order();
    let mut syn = Family::empty(n);
    let mut thick = Family::empty(n);
    let mut ps = Family::empty(n);
    for a in SubsetMask::all(n) {
        if is_syndetic(t, a) {
            syn.insert(a);
        }
        if is_thick(t, a) {
            thick.insert(a);
        }
        if is_piecewise_syndetic(t, a) {
            ps.insert(a);
        }
    }
    super::SizeFamilies { syn, thick, ps }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::notions;
    use crate::semigroup::{enumerate_semigroups, Dedupe};

    #[test]
    fn classical_sweeps_agree_with_shortcuts_at_small_orders() {
        for n in 1..=3u8 {
            for t in enumerate_semigroups(n, Dedupe::None).unwrap() {
                for a in SubsetMask::all(n) {
                    assert_eq!(is_syndetic(&t, a), notions::is_syndetic(&t, a));
                    assert_eq!(is_thick(&t, a), notions::is_thick(&t, a));
                    assert_eq!(
                        is_piecewise_syndetic(&t, a),
                        notions::is_piecewise_syndetic(&t, a)
                    );
                }
            }
        }
    }
}
