//! Finite semigroups as Cayley tables: validation, translate preimages,
//! ideals, and exhaustive enumeration of all tables of a given order.

use std::fmt;

use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

use crate::setfam::SubsetMask;

/// Largest order for single-table operations.
pub const MAX_ORDER: u8 = 16;
/// Largest order for raw (undeduplicated) enumeration.
pub const MAX_RAW_ENUM_ORDER: u8 = 3;
/// Largest order for enumeration up to isomorphism.
pub const MAX_ISO_ENUM_ORDER: u8 = 5;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum TableError {
    #[error("order must be between 1 and {MAX_ORDER}, got {0}")]
    OrderOutOfRange(u8),
    #[error("table must have {expected} entries, got {got}")]
    WrongLength { expected: usize, got: usize },
    #[error("entry at row {row}, column {col} is {value}, out of range for order {n}")]
    EntryOutOfRange { row: u8, col: u8, value: u8, n: u8 },
    #[error("not associative: ({i}*{j})*{k} != {i}*({j}*{k})")]
    NotAssociative { i: u8, j: u8, k: u8 },
    #[error("enumeration order {n} outside the supported range 1..={max}")]
    EnumOrderTooLarge { n: u8, max: u8 },
    #[error("malformed table text: {0}")]
    Parse(String),
}

/// An associative multiplication table over element indices `0..n`.
/// Entry `(i, j)` is the product `i * j`. Associativity is validated at
/// construction, so a held value is always a semigroup.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct CayleyTable {
    n: u8,
    entries: Vec<u8>,
}

impl CayleyTable {
    /// Validate entries (row-major, length `n*n`) and build the table.
    /// Reports the lexicographically least violating triple on failure.
    pub fn new(n: u8, entries: Vec<u8>) -> Result<Self, TableError> {
        if !(1..=MAX_ORDER).contains(&n) {
            return Err(TableError::OrderOutOfRange(n));
        }
        let expected = n as usize * n as usize;
        if entries.len() != expected {
            return Err(TableError::WrongLength {
                expected,
                got: entries.len(),
            });
        }
        for i in 0..n {
            for j in 0..n {
                let v = entries[i as usize * n as usize + j as usize];
                if v >= n {
                    return Err(TableError::EntryOutOfRange {
                        row: i,
                        col: j,
                        value: v,
                        n,
                    });
                }
            }
        }
        let t = CayleyTable { n, entries };
        match t.first_violation() {
            None => Ok(t),
            Some((i, j, k)) => Err(TableError::NotAssociative { i, j, k }),
        }
    }

    // For enumeration, where the backtracking already guarantees the axioms.
    fn new_unchecked(n: u8, entries: Vec<u8>) -> Self {
        debug_assert!(CayleyTable::new(n, entries.clone()).is_ok());
        CayleyTable { n, entries }
    }

    /// Lexicographically least triple with `(i*j)*k != i*(j*k)`, if any.
    pub fn first_violation(&self) -> Option<(u8, u8, u8)> {
        for i in 0..self.n {
            for j in 0..self.n {
                for k in 0..self.n {
                    if self.mul(self.mul(i, j), k) != self.mul(i, self.mul(j, k)) {
                        return Some((i, j, k));
                    }
                }
            }
        }
        None
    }

    pub fn order(&self) -> u8 {
        self.n
    }

    pub fn mul(&self, i: u8, j: u8) -> u8 {
        self.entries[i as usize * self.n as usize + j as usize]
    }

    pub fn entries(&self) -> &[u8] {
        &self.entries
    }

    pub fn full_set(&self) -> SubsetMask {
        SubsetMask::full(self.n)
    }

    /// The left-zero table `i * j = i`.
    pub fn left_zero(n: u8) -> Self {
        let entries = (0..n)
            .flat_map(|i| std::iter::repeat_n(i, n as usize))
            .collect();
        CayleyTable::new(n, entries).expect("left-zero is associative")
    }

    /// The right-zero table `i * j = j`.
    pub fn right_zero(n: u8) -> Self {
        let entries = (0..n).flat_map(|_| 0..n).collect();
        CayleyTable::new(n, entries).expect("right-zero is associative")
    }

    /// Addition modulo `n`.
    pub fn cyclic_group(n: u8) -> Self {
        let entries = (0..n)
            .flat_map(|i| (0..n).map(move |j| (i + j) % n))
            .collect();
        CayleyTable::new(n, entries).expect("modular addition is associative")
    }

    /// Multiplication modulo `n`.
    pub fn modular_multiplication(n: u8) -> Self {
        let entries = (0..n)
            .flat_map(|i| (0..n).map(move |j| (i as u16 * j as u16 % n as u16) as u8))
            .collect();
        CayleyTable::new(n, entries).expect("modular multiplication is associative")
    }

    /// `{ y : h * y in A }`.
    pub fn preimage_translate(&self, h: u8, a: SubsetMask) -> SubsetMask {
        debug_assert_eq!(a.ground_size(), self.n);
        let mut out = SubsetMask::empty(self.n);
        for y in 0..self.n {
            if a.contains(self.mul(h, y)) {
                out.insert(y);
            }
        }
        out
    }

    /// `{ x * y : x in xs, y in ys }`.
    pub fn set_product(&self, xs: SubsetMask, ys: SubsetMask) -> SubsetMask {
        let mut out = SubsetMask::empty(self.n);
        for x in xs.elements() {
            for y in ys.elements() {
                out.insert(self.mul(x, y));
            }
        }
        out
    }

    /// Principal left ideal of `a`: `S*a` with the generator adjoined.
    pub fn principal_left_ideal(&self, a: u8) -> SubsetMask {
        let mut out = SubsetMask::singleton(a, self.n);
        for x in 0..self.n {
            out.insert(self.mul(x, a));
        }
        out
    }

    pub fn is_left_ideal(&self, b: SubsetMask) -> bool {
        !b.is_empty() && self.set_product(self.full_set(), b).is_subset_of(b)
    }

    pub fn is_right_ideal(&self, b: SubsetMask) -> bool {
        !b.is_empty() && self.set_product(b, self.full_set()).is_subset_of(b)
    }

    pub fn is_subsemigroup(&self, b: SubsetMask) -> bool {
        !b.is_empty() && self.set_product(b, b).is_subset_of(b)
    }

    /// Inclusion-minimal nonempty left ideals, deduplicated and sorted by mask.
    ///
    /// Computed from the principal left ideals (every minimal left ideal is
    /// principal), then each result is re-verified definitionally: it is a
    /// left ideal and no proper nonempty subset of it is one.
    pub fn minimal_left_ideals(&self) -> Vec<SubsetMask> {
        let principals: Vec<SubsetMask> =
            (0..self.n).map(|a| self.principal_left_ideal(a)).collect();
        let mut minimal: Vec<SubsetMask> = principals
            .iter()
            .copied()
            .filter(|&l| principals.iter().all(|&m| m == l || !m.is_subset_of(l)))
            .collect();
        minimal.sort_unstable();
        minimal.dedup();
        for &l in &minimal {
            assert!(
                self.is_left_ideal(l),
                "minimal left ideal candidate is not a left ideal"
            );
            let strictly_smaller = l
                .nonempty_subsets()
                .any(|sub| sub != l && self.is_left_ideal(sub));
            assert!(
                !strictly_smaller,
                "minimal left ideal candidate has a proper sub-ideal"
            );
        }
        minimal
    }

    /// The smallest two-sided ideal: the union of all minimal left ideals.
    pub fn smallest_ideal(&self) -> SubsetMask {
        let k = self
            .minimal_left_ideals()
            .into_iter()
            .fold(SubsetMask::empty(self.n), SubsetMask::union);
        assert!(
            self.is_left_ideal(k) && self.is_right_ideal(k),
            "smallest ideal must be two-sided"
        );
        k
    }

    /// `{ e : e * e = e }`; nonempty for every finite semigroup.
    pub fn idempotents(&self) -> SubsetMask {
        let mut out = SubsetMask::empty(self.n);
        for e in 0..self.n {
            if self.mul(e, e) == e {
                out.insert(e);
            }
        }
        out
    }

    /// Relabel elements via `perm` (element `i` becomes `perm[i]`).
    pub fn relabel(&self, perm: &[u8]) -> CayleyTable {
        let n = self.n as usize;
        let mut entries = vec![0u8; n * n];
        for i in 0..n {
            for j in 0..n {
                entries[perm[i] as usize * n + perm[j] as usize] =
                    perm[self.entries[i * n + j] as usize];
            }
        }
        CayleyTable { n: self.n, entries }
    }

    /// Lexicographically least relabeling of this table.
    pub fn canonical_form(&self) -> CayleyTable {
        let mut best = self.clone();
        for perm in permutations(self.n) {
            let cand = self.relabel(&perm);
            if cand.entries < best.entries {
                best = cand;
            }
        }
        best
    }

    pub fn is_canonical(&self) -> bool {
        self.canonical_form().entries == self.entries
    }

    /// Text format: first line the order, then one row of space-separated
    /// entries per line.
    pub fn to_text(&self) -> String {
        let mut out = format!("{}\n", self.n);
        for i in 0..self.n {
            let row: Vec<String> = (0..self.n).map(|j| self.mul(i, j).to_string()).collect();
            out.push_str(&row.join(" "));
            out.push('\n');
        }
        out
    }

    pub fn from_text(text: &str) -> Result<Self, TableError> {
        let mut lines = text.lines().filter(|l| !l.trim().is_empty());
        let n: u8 = lines
            .next()
            .ok_or_else(|| TableError::Parse("missing order line".into()))?
            .trim()
            .parse()
            .map_err(|e| TableError::Parse(format!("bad order: {e}")))?;
        if !(1..=MAX_ORDER).contains(&n) {
            return Err(TableError::OrderOutOfRange(n));
        }
        let mut entries = Vec::with_capacity(n as usize * n as usize);
        for i in 0..n {
            let line = lines
                .next()
                .ok_or_else(|| TableError::Parse(format!("missing row {i}")))?;
            let row: Result<Vec<u8>, _> = line.split_whitespace().map(str::parse::<u8>).collect();
            let row = row.map_err(|e| TableError::Parse(format!("row {i}: {e}")))?;
            if row.len() != n as usize {
                return Err(TableError::Parse(format!(
                    "row {i} has {} entries, expected {n}",
                    row.len()
                )));
            }
            entries.extend(row);
        }
        if lines.next().is_some() {
            return Err(TableError::Parse("trailing content after table".into()));
        }
        CayleyTable::new(n, entries)
    }
}

impl fmt::Debug for CayleyTable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "CayleyTable(n={}, {:?})", self.n, self.entries)
    }
}

#[derive(Serialize, Deserialize)]
struct TableWire {
    n: u8,
    table: Vec<Vec<u8>>,
}

impl Serialize for CayleyTable {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let table = (0..self.n)
            .map(|i| (0..self.n).map(|j| self.mul(i, j)).collect())
            .collect();
        TableWire { n: self.n, table }.serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for CayleyTable {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let wire = TableWire::deserialize(deserializer)?;
        let mut entries = Vec::new();
        for row in &wire.table {
            if row.len() != wire.n as usize {
                return Err(D::Error::custom("ragged table row"));
            }
            entries.extend_from_slice(row);
        }
        CayleyTable::new(wire.n, entries).map_err(D::Error::custom)
    }
}

fn permutations(n: u8) -> Vec<Vec<u8>> {
    let mut out = Vec::new();
    let mut items: Vec<u8> = (0..n).collect();
    fn heap(k: usize, items: &mut Vec<u8>, out: &mut Vec<Vec<u8>>) {
        if k <= 1 {
            out.push(items.clone());
            return;
        }
        for i in 0..k {
            heap(k - 1, items, out);
            if k.is_multiple_of(2) {
                items.swap(i, k - 1);
            } else {
                items.swap(0, k - 1);
            }
        }
    }
    heap(n as usize, &mut items, &mut out);
    out
}

/// Deduplication mode for [`enumerate_semigroups`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Dedupe {
    /// Every associative table.
    None,
    /// One representative per relabeling orbit: the lexicographically least
    /// table. Relabeling only; anti-isomorphism is deliberately not factored
    /// out, since left/right asymmetry is significant here.
    Iso,
}

/// Every associative table of the given order, by backtracking fill with
/// incremental associativity pruning. Output order is the lexicographic
/// order of the flattened tables.
pub fn enumerate_semigroups(n: u8, dedupe: Dedupe) -> Result<Vec<CayleyTable>, TableError> {
    let max = match dedupe {
        Dedupe::None => MAX_RAW_ENUM_ORDER,
        Dedupe::Iso => MAX_ISO_ENUM_ORDER,
    };
    if n < 1 || n > max {
        return Err(TableError::EnumOrderTooLarge { n, max });
    }
    let nn = n as usize;
    let mut cells = vec![u8::MAX; nn * nn]; // u8::MAX marks "unset"
    let mut out = Vec::new();
    fill(n, 0, &mut cells, dedupe, &mut out);
    Ok(out)
}

fn fill(n: u8, pos: usize, cells: &mut Vec<u8>, dedupe: Dedupe, out: &mut Vec<CayleyTable>) {
    let nn = n as usize;
    if pos == nn * nn {
        let t = CayleyTable::new_unchecked(n, cells.clone());
        if dedupe == Dedupe::None || t.is_canonical() {
            out.push(t);
        }
        return;
    }
    let (i, j) = ((pos / nn) as u8, (pos % nn) as u8);
    for v in 0..n {
        cells[pos] = v;
        if consistent_after(n, cells, i, j) {
            fill(n, pos + 1, cells, dedupe, out);
        }
    }
    cells[pos] = u8::MAX;
}

// Check every associativity triple whose evaluation touches the fresh cell
// (i, j), skipping triples that still involve unset cells.
fn consistent_after(n: u8, cells: &[u8], i: u8, j: u8) -> bool {
    let nn = n as usize;
    let get = |a: u8, b: u8| cells[a as usize * nn + b as usize];
    let check = |a: u8, b: u8, c: u8| {
        let ab = get(a, b);
        if ab == u8::MAX {
            return true;
        }
        let lhs = get(ab, c);
        let bc = get(b, c);
        if bc == u8::MAX {
            return true;
        }
        let rhs = get(a, bc);
        if lhs == u8::MAX || rhs == u8::MAX {
            return true;
        }
        lhs == rhs
    };
    for c in 0..n {
        if !check(i, j, c) {
            return false;
        }
    }
    for a in 0..n {
        if !check(a, i, j) {
            return false;
        }
    }
    for a in 0..n {
        for b in 0..n {
            // triples (a, b, j) where a*b = i, and (i, b, c=a) where b*a = j
            if get(a, b) == i && !check(a, b, j) {
                return false;
            }
            if get(a, b) == j && !check(i, a, b) {
                return false;
            }
        }
    }
    true
}
