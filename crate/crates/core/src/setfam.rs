//! Families of subsets of a small ground set, packed into machine words.
//!
//! A subset of an `n`-element ground set (`n <= 16`) is one bit per element
//! ([`SubsetMask`]). A family of subsets is one bit per subset ([`Family`]),
//! so the whole powerset-of-powerset algebra runs on `u64` operations for
//! `n <= 6`. Classification (stack / filter / grill / ultrafilter), the mesh
//! operator, and class enumeration all live here.

use std::fmt;

use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

/// Largest ground set for which a `Family` fits in a `u64`.
pub const MAX_FAMILY_GROUND: u8 = 6;
/// Largest ground set for full stack/grill enumeration.
pub const MAX_STACK_ENUM_GROUND: u8 = 4;
/// Largest ground set for a `SubsetMask`.
pub const MAX_MASK_GROUND: u8 = 16;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SetfamError {
    #[error("ground set size {n} exceeds limit {max} for this operation")]
    GroundSetTooLarge { n: u8, max: u8 },
    #[error("ground set size must be at least 1")]
    EmptyGroundSet,
    #[error("family is not a stack")]
    NotAStack,
    #[error("family is not a filter")]
    NotAFilter,
    #[error("element index {index} out of range for ground set of size {n}")]
    ElementOutOfRange { index: u8, n: u8 },
    #[error("family members must be strictly ascending by subset mask")]
    MembersNotSorted,
    #[error("member element lists must be strictly ascending")]
    ElementsNotSorted,
}

/// A subset of the ground set `{0, .., n-1}`, one bit per element.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SubsetMask {
    bits: u16,
    n: u8,
}

impl SubsetMask {
    pub fn empty(n: u8) -> Self {
        assert!(
            (1..=MAX_MASK_GROUND).contains(&n),
            "ground set size out of range"
        );
        SubsetMask { bits: 0, n }
    }

    pub fn full(n: u8) -> Self {
        let mut m = Self::empty(n);
        m.bits = low_bits_u16(n);
        m
    }

    /// Build from a raw bit pattern; bits at position `>= n` must be clear.
    pub fn from_bits(bits: u16, n: u8) -> Self {
        let mut m = Self::empty(n);
        assert_eq!(bits & !low_bits_u16(n), 0, "bits beyond ground set");
        m.bits = bits;
        m
    }

    pub fn from_elements(elements: &[u8], n: u8) -> Result<Self, SetfamError> {
        let mut m = Self::empty(n);
        for &e in elements {
            if e >= n {
                return Err(SetfamError::ElementOutOfRange { index: e, n });
            }
            m.bits |= 1 << e;
        }
        Ok(m)
    }

    pub fn singleton(element: u8, n: u8) -> Self {
        assert!(element < n);
        Self::from_bits(1 << element, n)
    }

    pub fn bits(self) -> u16 {
        self.bits
    }

    pub fn ground_size(self) -> u8 {
        self.n
    }

    pub fn is_empty(self) -> bool {
        self.bits == 0
    }

    pub fn len(self) -> u32 {
        self.bits.count_ones()
    }

    pub fn contains(self, element: u8) -> bool {
        element < self.n && self.bits >> element & 1 == 1
    }

    pub fn insert(&mut self, element: u8) {
        assert!(element < self.n);
        self.bits |= 1 << element;
    }

    pub fn union(self, other: Self) -> Self {
        debug_assert_eq!(self.n, other.n);
        Self {
            bits: self.bits | other.bits,
            n: self.n,
        }
    }

    pub fn intersect(self, other: Self) -> Self {
        debug_assert_eq!(self.n, other.n);
        Self {
            bits: self.bits & other.bits,
            n: self.n,
        }
    }

    /// Complement within the ground set, so `complement(complement(a)) == a`.
    pub fn complement(self) -> Self {
        Self {
            bits: !self.bits & low_bits_u16(self.n),
            n: self.n,
        }
    }

    pub fn is_subset_of(self, other: Self) -> bool {
        debug_assert_eq!(self.n, other.n);
        self.bits & !other.bits == 0
    }

    pub fn meets(self, other: Self) -> bool {
        debug_assert_eq!(self.n, other.n);
        self.bits & other.bits != 0
    }

    pub fn elements(self) -> impl Iterator<Item = u8> {
        let bits = self.bits;
        (0..self.n).filter(move |&e| bits >> e & 1 == 1)
    }

    pub fn element_vec(self) -> Vec<u8> {
        self.elements().collect()
    }

    /// All subsets of the ground set, by ascending mask (includes the empty set).
    pub fn all(n: u8) -> impl Iterator<Item = SubsetMask> {
        assert!((1..=MAX_MASK_GROUND).contains(&n));
        (0..=low_bits_u16(n)).map(move |bits| SubsetMask { bits, n })
    }

    /// All nonempty subsets, ascending by mask.
    pub fn all_nonempty(n: u8) -> impl Iterator<Item = SubsetMask> {
        Self::all(n).skip(1)
    }

    /// Nonempty subsets of `self`, ascending by mask.
    pub fn nonempty_subsets(self) -> impl Iterator<Item = SubsetMask> {
        let SubsetMask { bits, n } = self;
        // Standard subset-walk of a mask: (s - 1) & bits steps down through them.
        std::iter::successors(Some(bits), move |&s| {
            if s == 0 {
                None
            } else {
                Some(s.wrapping_sub(1) & bits)
            }
        })
        .filter(|&s| s != 0)
        .map(move |s| SubsetMask { bits: s, n })
        .collect::<Vec<_>>()
        .into_iter()
        .rev()
    }
}

impl fmt::Debug for SubsetMask {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        let mut first = true;
        for e in self.elements() {
            if !first {
                write!(f, ",")?;
            }
            write!(f, "{e}")?;
            first = false;
        }
        write!(f, "}}")
    }
}

impl fmt::Display for SubsetMask {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

impl Serialize for SubsetMask {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_seq(self.elements())
    }
}

fn low_bits_u16(n: u8) -> u16 {
    debug_assert!(n <= 16);
    if n == 16 {
        u16::MAX
    } else {
        (1u16 << n) - 1
    }
}

fn low_bits_u64(count: u32) -> u64 {
    debug_assert!(count <= 64);
    if count == 64 {
        u64::MAX
    } else {
        (1u64 << count) - 1
    }
}

/// A family of subsets of `{0, .., n-1}`, `n <= 6`.
///
/// Bit `i` of `members` is set iff the subset whose mask is `i` belongs to
/// the family. No closure property is enforced at construction; stacks,
/// filters, grills and ultrafilters are recognized by [`classify`], never
/// assumed.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Family {
    members: u64,
    n: u8,
}

impl Family {
    pub fn empty(n: u8) -> Self {
        assert!(
            (1..=MAX_FAMILY_GROUND).contains(&n),
            "family ground set size out of range"
        );
        Family { members: 0, n }
    }

    /// The family containing every subset, including the empty one.
    /// This is the "improper filter": `classify` reports it as not a stack.
    pub fn all_subsets(n: u8) -> Self {
        let mut f = Self::empty(n);
        f.members = low_bits_u64(f.subset_count());
        f
    }

    pub fn from_members(n: u8, members: &[SubsetMask]) -> Self {
        let mut f = Self::empty(n);
        for &m in members {
            f.insert(m);
        }
        f
    }

    pub fn from_raw(members: u64, n: u8) -> Self {
        let mut f = Self::empty(n);
        assert_eq!(members & !low_bits_u64(f.subset_count()), 0);
        f.members = members;
        f
    }

    pub fn raw(self) -> u64 {
        self.members
    }

    pub fn ground_size(self) -> u8 {
        self.n
    }

    /// Number of candidate subsets, `2^n`.
    pub fn subset_count(self) -> u32 {
        1u32 << self.n
    }

    pub fn is_empty(self) -> bool {
        self.members == 0
    }

    pub fn len(self) -> u32 {
        self.members.count_ones()
    }

    pub fn contains(self, subset: SubsetMask) -> bool {
        debug_assert_eq!(self.n, subset.n);
        self.members >> subset.bits & 1 == 1
    }

    pub fn insert(&mut self, subset: SubsetMask) {
        debug_assert_eq!(self.n, subset.n);
        self.members |= 1u64 << subset.bits;
    }

    pub fn is_subfamily_of(self, other: Self) -> bool {
        debug_assert_eq!(self.n, other.n);
        self.members & !other.members == 0
    }

    pub fn members(self) -> impl Iterator<Item = SubsetMask> {
        let n = self.n;
        let mut rest = self.members;
        std::iter::from_fn(move || {
            if rest == 0 {
                None
            } else {
                let i = rest.trailing_zeros() as u16;
                rest &= rest - 1;
                Some(SubsetMask { bits: i, n })
            }
        })
    }

    /// Members with no proper member-subset.
    pub fn minimal_members(self) -> Vec<SubsetMask> {
        self.members()
            .filter(|&m| {
                self.members()
                    .all(|other| other == m || !other.is_subset_of(m))
            })
            .collect()
    }

    /// All supersets of `base`, i.e. the principal filter over `base`
    /// when `base` is nonempty.
    pub fn supersets_of(base: SubsetMask) -> Self {
        let mut f = Self::empty(base.n);
        f.insert(base);
        upward_closure(f)
    }

    /// Members as sorted element lists, ascending by subset mask.
    pub fn member_indices(self) -> Vec<Vec<u8>> {
        self.members().map(SubsetMask::element_vec).collect()
    }

    pub fn from_member_indices(n: u8, members: &[Vec<u8>]) -> Result<Self, SetfamError> {
        if n < 1 {
            return Err(SetfamError::EmptyGroundSet);
        }
        if n > MAX_FAMILY_GROUND {
            return Err(SetfamError::GroundSetTooLarge {
                n,
                max: MAX_FAMILY_GROUND,
            });
        }
        let mut f = Self::empty(n);
        let mut prev: Option<u16> = None;
        for elems in members {
            for w in elems.windows(2) {
                if w[0] >= w[1] {
                    return Err(SetfamError::ElementsNotSorted);
                }
            }
            let m = SubsetMask::from_elements(elems, n)?;
            if let Some(p) = prev {
                if m.bits <= p {
                    return Err(SetfamError::MembersNotSorted);
                }
            }
            prev = Some(m.bits);
            f.insert(m);
        }
        Ok(f)
    }
}

impl fmt::Debug for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        let mut first = true;
        for m in self.members() {
            if !first {
                write!(f, ",")?;
            }
            write!(f, "{m:?}")?;
            first = false;
        }
        write!(f, "}}")
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

/// On-disk shape of a family: ground-set size plus members as element lists,
/// ascending by subset mask.
#[derive(Serialize, Deserialize)]
struct FamilyLiteral {
    n: u8,
    members: Vec<Vec<u8>>,
}

impl Serialize for Family {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        FamilyLiteral {
            n: self.n,
            members: self.member_indices(),
        }
        .serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for Family {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let lit = FamilyLiteral::deserialize(deserializer)?;
        Family::from_member_indices(lit.n, &lit.members).map_err(D::Error::custom)
    }
}

// Bit-parallel OR-over-subsets: mask of family indices whose index bit `j`
// is clear, for j = 0..6.
const INDEX_BIT_CLEAR: [u64; 6] = [
    0x5555_5555_5555_5555,
    0x3333_3333_3333_3333,
    0x0f0f_0f0f_0f0f_0f0f,
    0x00ff_00ff_00ff_00ff,
    0x0000_ffff_0000_ffff,
    0x0000_0000_ffff_ffff,
];

/// Smallest superset-closed family containing `f`.
pub fn upward_closure(f: Family) -> Family {
    let mut m = f.members;
    for (j, &clear) in INDEX_BIT_CLEAR.iter().enumerate().take(f.n as usize) {
        // Copy each index's bit up to the index with ground element j added.
        m |= (m & clear) << (1u32 << j);
    }
    Family {
        members: m & low_bits_u64(f.subset_count()),
        n: f.n,
    }
}

/// The mesh `F* = { A : complement(A) not in F }`.
///
/// Index `m` of the result reads index `2^n - 1 - m` of the input, which is
/// exactly a bit reversal of the `2^n`-bit window, followed by a complement.
pub fn mesh(f: Family) -> Family {
    let size = f.subset_count();
    let reversed = f.members.reverse_bits() >> (64 - size);
    Family {
        members: !reversed & low_bits_u64(size),
        n: f.n,
    }
}

/// The meet-based variant `{ A : A meets every member of F }`.
/// Agrees with [`mesh`] exactly when `f` is a stack.
pub fn schmidt_mesh(f: Family) -> Family {
    let mut out = Family::empty(f.n);
    for a in SubsetMask::all(f.n) {
        if f.members().all(|b| a.meets(b)) {
            out.insert(a);
        }
    }
    out
}

/// `{ B intersect C : B in f, C in g }`, computed exactly over all pairs.
pub fn intersection_family(f: Family, g: Family) -> Family {
    debug_assert_eq!(f.n, g.n);
    let mut out = Family::empty(f.n);
    for b in f.members() {
        for c in g.members() {
            out.insert(b.intersect(c));
        }
    }
    out
}

/// Classification flags for one family, each the verbatim defining condition.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct ClassFlags {
    pub is_stack: bool,
    pub is_filter: bool,
    pub is_grill: bool,
    pub is_ultrafilter: bool,
}

/// Strongest class a family belongs to.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum FamilyClass {
    Arbitrary,
    Stack,
    Filter,
    Grill,
    Ultrafilter,
}

impl ClassFlags {
    pub fn strongest(self) -> FamilyClass {
        if self.is_ultrafilter {
            FamilyClass::Ultrafilter
        } else if self.is_filter {
            FamilyClass::Filter
        } else if self.is_grill {
            FamilyClass::Grill
        } else if self.is_stack {
            FamilyClass::Stack
        } else {
            FamilyClass::Arbitrary
        }
    }
}

/// Classify a family: stack (nonempty, empty-set-free, superset-closed),
/// filter (stack closed under pairwise intersection), grill (stack where a
/// member union forces a member operand), ultrafilter (filter and grill).
pub fn classify(f: Family) -> ClassFlags {
    let proper = !f.is_empty() && f.members & 1 == 0;
    let is_stack = proper && upward_closure(f) == f;
    let is_filter = is_stack && closed_under_intersection(f);
    let is_grill = is_stack && union_splits(f);
    ClassFlags {
        is_stack,
        is_filter,
        is_grill,
        is_ultrafilter: is_filter && is_grill,
    }
}

fn closed_under_intersection(f: Family) -> bool {
    f.members()
        .all(|a| f.members().all(|b| f.contains(a.intersect(b))))
}

// Condition (4) contrapositive: non-members are closed under union.
fn union_splits(f: Family) -> bool {
    let non: Vec<SubsetMask> = SubsetMask::all(f.n).filter(|&a| !f.contains(a)).collect();
    non.iter()
        .all(|&a| non.iter().all(|&b| !f.contains(a.union(b))))
}

/// A family checked to be a stack.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub struct Stack(Family);

impl Stack {
    pub fn new(f: Family) -> Result<Self, SetfamError> {
        if classify(f).is_stack {
            Ok(Stack(f))
        } else {
            Err(SetfamError::NotAStack)
        }
    }

    pub fn family(self) -> Family {
        self.0
    }

    pub fn ground_size(self) -> u8 {
        self.0.n
    }
}

/// A family checked to be a filter.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub struct Filter(Family);

impl Filter {
    pub fn new(f: Family) -> Result<Self, SetfamError> {
        if classify(f).is_filter {
            Ok(Filter(f))
        } else {
            Err(SetfamError::NotAFilter)
        }
    }

    pub fn family(self) -> Family {
        self.0
    }

    pub fn as_stack(self) -> Stack {
        Stack(self.0)
    }

    pub fn ground_size(self) -> u8 {
        self.0.n
    }
}

fn check_ground(n: u8, max: u8) -> Result<(), SetfamError> {
    if n < 1 {
        Err(SetfamError::EmptyGroundSet)
    } else if n > max {
        Err(SetfamError::GroundSetTooLarge { n, max })
    } else {
        Ok(())
    }
}

/// Every stack on an `n`-element ground set, built constructively as the
/// upward closure of each nonempty antichain of nonempty subsets. Order is
/// the depth-first antichain order, deterministic across runs.
pub fn enumerate_stacks(n: u8) -> Result<Vec<Stack>, SetfamError> {
    check_ground(n, MAX_STACK_ENUM_GROUND)?;
    let size = 1u16 << n;
    let mut out = Vec::new();
    let mut chosen: Vec<u16> = Vec::new();

    fn extend(next: u16, size: u16, n: u8, chosen: &mut Vec<u16>, out: &mut Vec<Stack>) {
        for m in next..size {
            if chosen.iter().any(|&c| c & m == c || c & m == m) {
                continue; // comparable with a chosen set: not an antichain
            }
            chosen.push(m);
            let fam = Family::from_members(
                n,
                &chosen
                    .iter()
                    .map(|&c| SubsetMask::from_bits(c, n))
                    .collect::<Vec<_>>(),
            );
            out.push(Stack(upward_closure(fam)));
            extend(m + 1, size, n, chosen, out);
            chosen.pop();
        }
    }

    extend(1, size, n, &mut chosen, &mut out);
    Ok(out)
}

/// Every proper filter: principal over each nonempty base, ascending by base mask.
pub fn enumerate_filters(n: u8) -> Result<Vec<Filter>, SetfamError> {
    check_ground(n, MAX_FAMILY_GROUND)?;
    Ok(SubsetMask::all_nonempty(n)
        .map(|base| Filter(Family::supersets_of(base)))
        .collect())
}

/// Every ultrafilter: principal at each point.
pub fn enumerate_ultrafilters(n: u8) -> Result<Vec<Filter>, SetfamError> {
    check_ground(n, MAX_FAMILY_GROUND)?;
    Ok((0..n)
        .map(|x| Filter(Family::supersets_of(SubsetMask::singleton(x, n))))
        .collect())
}

/// Every grill: the mesh of each proper filter, in filter order.
pub fn enumerate_grills(n: u8) -> Result<Vec<Family>, SetfamError> {
    check_ground(n, MAX_STACK_ENUM_GROUND)?;
    Ok(enumerate_filters(n)?
        .into_iter()
        .map(|f| mesh(f.family()))
        .collect())
}

/// All `2^(2^n)` families on an `n`-element ground set, ascending by raw bits.
/// Only feasible for `n <= 4`; used as the brute-force universe for checkers.
pub fn all_families(n: u8) -> Result<impl Iterator<Item = Family>, SetfamError> {
    check_ground(n, MAX_STACK_ENUM_GROUND)?;
    let count = 1u64 << (1u32 << n);
    Ok((0..count).map(move |members| Family { members, n }))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn fam(n: u8, members: &[&[u8]]) -> Family {
        let masks: Vec<SubsetMask> = members
            .iter()
            .map(|m| SubsetMask::from_elements(m, n).unwrap())
            .collect();
        Family::from_members(n, &masks)
    }

    /// Members of size >= k, the standard stack-not-filter-not-grill example.
    fn at_least(n: u8, k: u32) -> Family {
        let mut f = Family::empty(n);
        for a in SubsetMask::all(n) {
            if a.len() >= k {
                f.insert(a);
            }
        }
        f
    }

    #[test]
    fn upward_closure_of_empty_is_empty() {
        assert_eq!(upward_closure(Family::empty(3)), Family::empty(3));
    }

    #[test]
    fn upward_closure_adds_supersets() {
        let f = fam(2, &[&[0]]);
        assert_eq!(upward_closure(f), fam(2, &[&[0], &[0, 1]]));
    }

    #[test]
    fn upward_closure_is_idempotent_on_random_families() {
        // 1000 pseudo-random families at n=4, closure applied twice
        let mut state = 0x9e3779b97f4a7c15u64;
        for _ in 0..1000 {
            state = state
                .wrapping_mul(6364136223846793005)
                .wrapping_add(1442695040888963407);
            let f = Family::from_raw(state & 0xffff, 4);
            let once = upward_closure(f);
            assert_eq!(upward_closure(once), once, "family {f}");
        }
    }

    #[test]
    fn upward_closure_matches_naive_scan() {
        // Bit-parallel route against the quadratic definition, everything at n=3.
        for f in all_families(3).unwrap() {
            let mut naive = Family::empty(3);
            for a in SubsetMask::all(3) {
                if f.members().any(|m| m.is_subset_of(a)) {
                    naive.insert(a);
                }
            }
            assert_eq!(upward_closure(f), naive, "family {f}");
        }
    }

    #[test]
    fn classify_cardinality_stack_is_not_filter_or_grill() {
        let f = at_least(3, 2);
        let c = classify(f);
        assert!(c.is_stack);
        assert!(!c.is_filter);
        assert!(!c.is_grill);
        assert!(!c.is_ultrafilter);
        assert_eq!(c.strongest(), FamilyClass::Stack);
    }

    #[test]
    fn classify_principal_ultrafilter() {
        for n in 1..=6u8 {
            let f = Family::supersets_of(SubsetMask::singleton(0, n));
            assert!(classify(f).is_ultrafilter, "n={n}");
        }
    }

    #[test]
    fn classify_empty_family_has_no_flags() {
        let c = classify(Family::empty(3));
        assert_eq!(
            c,
            ClassFlags {
                is_stack: false,
                is_filter: false,
                is_grill: false,
                is_ultrafilter: false
            }
        );
        assert_eq!(c.strongest(), FamilyClass::Arbitrary);
    }

    #[test]
    fn improper_filter_is_not_a_filter() {
        // The all-subsets family contains the empty set, so condition (1) fails.
        let c = classify(Family::all_subsets(3));
        assert!(!c.is_stack);
        assert!(!c.is_filter);
    }

    #[test]
    fn classify_agrees_with_literal_definition_sweep_at_n2() {
        // Independent re-statement of the defining conditions, quantifier by
        // quantifier, with no reuse of upward_closure or the bit tricks.
        for f in all_families(2).unwrap() {
            let subsets: Vec<SubsetMask> = SubsetMask::all(2).collect();
            let cond1 = !f.is_empty() && !f.contains(SubsetMask::empty(2));
            let cond2 = subsets.iter().all(|&a| {
                subsets
                    .iter()
                    .all(|&b| !(f.contains(a) && a.is_subset_of(b)) || f.contains(b))
            });
            let stack = cond1 && cond2;
            let cond3 = subsets.iter().all(|&a| {
                subsets
                    .iter()
                    .all(|&b| !(f.contains(a) && f.contains(b)) || f.contains(a.intersect(b)))
            });
            let cond4 = subsets.iter().all(|&a| {
                subsets
                    .iter()
                    .all(|&b| !f.contains(a.union(b)) || f.contains(a) || f.contains(b))
            });
            let got = classify(f);
            assert_eq!(got.is_stack, stack, "{f}");
            assert_eq!(got.is_filter, stack && cond3, "{f}");
            assert_eq!(got.is_grill, stack && cond4, "{f}");
            assert_eq!(got.is_ultrafilter, stack && cond3 && cond4, "{f}");
        }
    }

    #[test]
    fn mesh_fixes_the_cardinality_stack() {
        let f = at_least(3, 2);
        assert_eq!(mesh(f), f);
        assert!(!classify(f).is_ultrafilter);
    }

    #[test]
    fn mesh_of_full_set_only_is_all_nonempty() {
        let f = fam(3, &[&[0, 1, 2]]);
        let mut nonempty = Family::empty(3);
        for a in SubsetMask::all_nonempty(3) {
            nonempty.insert(a);
        }
        assert_eq!(mesh(f), nonempty);
    }

    #[test]
    fn mesh_fixes_principal_ultrafilters() {
        for n in 1..=6u8 {
            for x in 0..n {
                let f = Family::supersets_of(SubsetMask::singleton(x, n));
                assert_eq!(mesh(f), f);
            }
        }
    }

    #[test]
    fn mesh_matches_naive_complement_scan() {
        for n in 1..=3u8 {
            for f in all_families(n).unwrap() {
                let mut naive = Family::empty(n);
                for a in SubsetMask::all(n) {
                    if !f.contains(a.complement()) {
                        naive.insert(a);
                    }
                }
                assert_eq!(mesh(f), naive, "n={n} family {f}");
            }
        }
        // random families at the larger ground sets, including the full
        // 64-bit window where the reversal shift degenerates to zero
        let mut state = 0xabcdef12_34567890u64;
        for n in 4..=6u8 {
            for _ in 0..500 {
                state = state
                    .wrapping_mul(6364136223846793005)
                    .wrapping_add(1442695040888963407);
                let bits = if n == 6 {
                    state
                } else {
                    state & ((1u64 << (1u32 << n)) - 1)
                };
                let f = Family::from_raw(bits, n);
                let mut naive = Family::empty(n);
                for a in SubsetMask::all(n) {
                    if !f.contains(a.complement()) {
                        naive.insert(a);
                    }
                }
                assert_eq!(mesh(f), naive, "n={n} family raw {bits:#x}");
            }
        }
    }

    #[test]
    fn schmidt_mesh_equals_mesh_on_stacks() {
        for n in 1..=4u8 {
            for s in enumerate_stacks(n).unwrap() {
                assert_eq!(schmidt_mesh(s.family()), mesh(s.family()));
            }
        }
    }

    #[test]
    fn schmidt_mesh_of_empty_set_member_is_empty() {
        let f = fam(2, &[&[]]);
        assert_eq!(schmidt_mesh(f), Family::empty(2));
    }

    #[test]
    fn mesh_and_schmidt_mesh_differ_off_stacks() {
        // f = {{0}} on two points is not upward closed. Direct evaluation of
        // both definitions pins the two values and the witness.
        let f = fam(2, &[&[0]]);
        let mut by_complement = Family::empty(2);
        for a in SubsetMask::all(2) {
            if !f.contains(a.complement()) {
                by_complement.insert(a);
            }
        }
        let mut by_meeting = Family::empty(2);
        for a in SubsetMask::all(2) {
            if f.members().all(|b| a.meets(b)) {
                by_meeting.insert(a);
            }
        }
        assert_eq!(mesh(f), by_complement);
        assert_eq!(schmidt_mesh(f), by_meeting);
        assert_eq!(by_complement, fam(2, &[&[], &[0], &[0, 1]]));
        assert_eq!(by_meeting, fam(2, &[&[0], &[0, 1]]));
        assert!(mesh(f) != schmidt_mesh(f));
        // Witness of the inequality: the empty set.
        assert!(mesh(f).contains(SubsetMask::empty(2)));
        assert!(!schmidt_mesh(f).contains(SubsetMask::empty(2)));
    }

    #[test]
    fn intersection_family_with_full_set_is_identity() {
        let f = at_least(3, 2);
        let top = fam(3, &[&[0, 1, 2]]);
        assert_eq!(intersection_family(f, top), f);
        assert_eq!(intersection_family(Family::empty(3), f), Family::empty(3));
    }

    #[test]
    fn intersection_with_mesh_gives_grill_containing_both() {
        for s in enumerate_stacks(3).unwrap() {
            let f = s.family();
            let g = intersection_family(f, mesh(f));
            assert!(classify(g).is_grill, "stack {f}");
            assert!(f.is_subfamily_of(g));
            assert!(mesh(f).is_subfamily_of(g));
        }
    }

    #[test]
    fn ultrafilter_count_is_ground_size() {
        for n in 1..=6u8 {
            assert_eq!(enumerate_ultrafilters(n).unwrap().len(), n as usize);
        }
    }

    #[test]
    fn filter_count_is_nonempty_base_count() {
        for n in 1..=6u8 {
            let filters = enumerate_filters(n).unwrap();
            assert_eq!(filters.len(), (1usize << n) - 1);
            for f in &filters {
                assert!(classify(f.family()).is_filter);
            }
        }
    }

    // Stack counts pinned from the brute-force universe scan below; the n=3
    // value also equals the count of antichains on a 3-set minus two.
    const STACK_COUNTS: [usize; 4] = [1, 4, 18, 166];

    #[test]
    fn stack_enumeration_matches_pinned_counts() {
        for n in 1..=4u8 {
            let stacks = enumerate_stacks(n).unwrap();
            assert_eq!(stacks.len(), STACK_COUNTS[n as usize - 1], "n={n}");
            for s in &stacks {
                assert!(classify(s.family()).is_stack);
            }
            // constructive enumeration yields each stack exactly once
            let mut raw: Vec<u64> = stacks.iter().map(|s| s.family().raw()).collect();
            raw.sort_unstable();
            raw.dedup();
            assert_eq!(raw.len(), stacks.len());
        }
    }

    #[test]
    fn stack_enumeration_matches_brute_force_universe() {
        for n in 1..=3u8 {
            let brute: Vec<Family> = all_families(n)
                .unwrap()
                .filter(|&f| classify(f).is_stack)
                .collect();
            let mut constructive: Vec<u64> = enumerate_stacks(n)
                .unwrap()
                .iter()
                .map(|s| s.family().raw())
                .collect();
            constructive.sort_unstable();
            let mut scanned: Vec<u64> = brute.iter().map(|f| f.raw()).collect();
            scanned.sort_unstable();
            assert_eq!(constructive, scanned, "n={n}");
        }
    }

    #[test]
    fn grill_enumeration_matches_brute_force_at_small_n() {
        for n in 1..=3u8 {
            let mut meshes: Vec<u64> = enumerate_grills(n)
                .unwrap()
                .iter()
                .map(|f| f.raw())
                .collect();
            meshes.sort_unstable();
            let mut scanned: Vec<u64> = all_families(n)
                .unwrap()
                .filter(|&f| classify(f).is_grill)
                .map(|f| f.raw())
                .collect();
            scanned.sort_unstable();
            assert_eq!(meshes, scanned, "n={n}");
        }
    }

    #[test]
    fn enumeration_size_limits_are_hard_errors() {
        assert!(matches!(
            enumerate_stacks(5),
            Err(SetfamError::GroundSetTooLarge { n: 5, max: 4 })
        ));
        assert!(matches!(
            enumerate_filters(7),
            Err(SetfamError::GroundSetTooLarge { n: 7, max: 6 })
        ));
        assert!(enumerate_ultrafilters(0).is_err());
    }

    #[test]
    fn family_literal_round_trip() {
        let f = fam(2, &[&[0], &[0, 1]]);
        let json = serde_json::to_string(&f).unwrap();
        assert_eq!(json, r#"{"n":2,"members":[[0],[0,1]]}"#);
        let back: Family = serde_json::from_str(&json).unwrap();
        assert_eq!(back, f);
    }

    #[test]
    fn family_literal_rejects_unsorted_members() {
        let r: Result<Family, _> = serde_json::from_str(r#"{"n":2,"members":[[0,1],[0]]}"#);
        assert!(r.is_err());
        let r: Result<Family, _> = serde_json::from_str(r#"{"n":2,"members":[[1,0]]}"#);
        assert!(r.is_err());
        let r: Result<Family, _> = serde_json::from_str(r#"{"n":2,"members":[[2]]}"#);
        assert!(r.is_err());
    }

    #[test]
    fn subset_mask_complement_involution() {
        for n in [1u8, 5, 16] {
            for bits in 0..1u32 << n.min(8) {
                let a = SubsetMask::from_bits(bits as u16, n);
                assert_eq!(a.complement().complement(), a);
            }
        }
    }

    #[test]
    fn nonempty_subsets_walk_is_complete() {
        let b = SubsetMask::from_elements(&[0, 2, 3], 4).unwrap();
        let subs: Vec<u16> = b.nonempty_subsets().map(|s| s.bits()).collect();
        assert_eq!(subs.len(), (1 << 3) - 1);
        for &s in &subs {
            assert_eq!(s & !b.bits(), 0);
            assert_ne!(s, 0);
        }
        let mut dedup = subs.clone();
        dedup.sort_unstable();
        dedup.dedup();
        assert_eq!(dedup.len(), subs.len());
    }
}
