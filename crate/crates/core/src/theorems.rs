//! One checker per claim about notions of size, a suite runner over
//! enumerated finite universes, and a counterexample search for the open
//! converse question.
//!
//! Every checker evaluates the two sides of its identity through separate
//! routes (decision procedures on one side; set products, literal
//! quantifier sweeps, or mesh images on the other) and compares bit
//! vectors. A failure carries the full inputs, so [`reverify`] can rerun
//! the claim from the payload alone.

pub mod model;
pub mod report;
pub mod search;
pub mod suite;

use std::fmt;
use std::str::FromStr;
use std::time::Instant;

use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

use crate::notions::{self, literal, NotionsError};
use crate::semigroup::{CayleyTable, TableError};
use crate::setfam::{
    all_families, classify, enumerate_filters, enumerate_stacks, enumerate_ultrafilters,
    intersection_family, mesh, schmidt_mesh, Family, Filter, SetfamError, Stack, SubsetMask,
    MAX_FAMILY_GROUND, MAX_STACK_ENUM_GROUND,
};
pub use report::{CheckReport, Counterexample, Status, Universe, Witness};

#[derive(Debug, Error)]
pub enum TheoremsError {
    #[error("semigroup order {n} outside the supported range 1..={max} for this checker")]
    OrderTooLarge { n: u8, max: u8 },
    #[error("unknown claim or claim group: {0:?}")]
    UnknownClaim(String),
    #[error("empty claim selection")]
    EmptyClaimSelection,
    #[error(transparent)]
    Table(#[from] TableError),
    #[error(transparent)]
    Setfam(#[from] SetfamError),
    #[error(transparent)]
    Notions(#[from] NotionsError),
}

/// Identifier of one checked claim.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
#[allow(non_camel_case_types)]
pub enum ClaimId {
    T1_4a,
    T1_4b,
    T1_4c,
    P2_4a,
    P2_4b,
    P2_4c,
    P2_4d,
    P2_4e,
    P2_4f,
    P2_4g,
    P2_4h,
    C2_6,
    P3_2,
    P3_5,
    P3_7a,
    P3_7b,
    P3_7c,
    P3_7d,
    L3_8a,
    L3_8b,
    L3_8c,
    L3_8d,
    L3_8ap,
    L3_8bp,
    L3_8cp,
    L3_8dp,
    T3_10a,
    T3_10b,
    T3_11,
    C3_12a,
    C3_12b,
    C3_12c,
    C3_12d,
    T4_2,
    P4_3a,
    P4_3b,
    P4_3c,
    P4_3d,
    T4_4,
    C4_5,
}

impl ClaimId {
    pub const ALL: [ClaimId; 40] = [
        ClaimId::T1_4a,
        ClaimId::T1_4b,
        ClaimId::T1_4c,
        ClaimId::P2_4a,
        ClaimId::P2_4b,
        ClaimId::P2_4c,
        ClaimId::P2_4d,
        ClaimId::P2_4e,
        ClaimId::P2_4f,
        ClaimId::P2_4g,
        ClaimId::P2_4h,
        ClaimId::C2_6,
        ClaimId::P3_2,
        ClaimId::P3_5,
        ClaimId::P3_7a,
        ClaimId::P3_7b,
        ClaimId::P3_7c,
        ClaimId::P3_7d,
        ClaimId::L3_8a,
        ClaimId::L3_8b,
        ClaimId::L3_8c,
        ClaimId::L3_8d,
        ClaimId::L3_8ap,
        ClaimId::L3_8bp,
        ClaimId::L3_8cp,
        ClaimId::L3_8dp,
        ClaimId::T3_10a,
        ClaimId::T3_10b,
        ClaimId::T3_11,
        ClaimId::C3_12a,
        ClaimId::C3_12b,
        ClaimId::C3_12c,
        ClaimId::C3_12d,
        ClaimId::T4_2,
        ClaimId::P4_3a,
        ClaimId::P4_3b,
        ClaimId::P4_3c,
        ClaimId::P4_3d,
        ClaimId::T4_4,
        ClaimId::C4_5,
    ];

    pub fn name(self) -> &'static str {
        match self {
            ClaimId::T1_4a => "T1.4a",
            ClaimId::T1_4b => "T1.4b",
            ClaimId::T1_4c => "T1.4c",
            ClaimId::P2_4a => "P2.4a",
            ClaimId::P2_4b => "P2.4b",
            ClaimId::P2_4c => "P2.4c",
            ClaimId::P2_4d => "P2.4d",
            ClaimId::P2_4e => "P2.4e",
            ClaimId::P2_4f => "P2.4f",
            ClaimId::P2_4g => "P2.4g",
            ClaimId::P2_4h => "P2.4h",
            ClaimId::C2_6 => "C2.6",
            ClaimId::P3_2 => "P3.2",
            ClaimId::P3_5 => "P3.5",
            ClaimId::P3_7a => "P3.7a",
            ClaimId::P3_7b => "P3.7b",
            ClaimId::P3_7c => "P3.7c",
            ClaimId::P3_7d => "P3.7d",
            ClaimId::L3_8a => "L3.8a",
            ClaimId::L3_8b => "L3.8b",
            ClaimId::L3_8c => "L3.8c",
            ClaimId::L3_8d => "L3.8d",
            ClaimId::L3_8ap => "L3.8a'",
            ClaimId::L3_8bp => "L3.8b'",
            ClaimId::L3_8cp => "L3.8c'",
            ClaimId::L3_8dp => "L3.8d'",
            ClaimId::T3_10a => "T3.10a",
            ClaimId::T3_10b => "T3.10b",
            ClaimId::T3_11 => "T3.11",
            ClaimId::C3_12a => "C3.12a",
            ClaimId::C3_12b => "C3.12b",
            ClaimId::C3_12c => "C3.12c",
            ClaimId::C3_12d => "C3.12d",
            ClaimId::T4_2 => "T4.2",
            ClaimId::P4_3a => "P4.3a",
            ClaimId::P4_3b => "P4.3b",
            ClaimId::P4_3c => "P4.3c",
            ClaimId::P4_3d => "P4.3d",
            ClaimId::T4_4 => "T4.4",
            ClaimId::C4_5 => "C4.5",
        }
    }
}

impl fmt::Display for ClaimId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

fn normalize_claim_token(s: &str) -> String {
    s.trim()
        .to_ascii_lowercase()
        .replace('_', ".")
        .replace('\u{2032}', "'")
}

impl FromStr for ClaimId {
    type Err = TheoremsError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let token = normalize_claim_token(s);
        for c in ClaimId::ALL {
            let canon = c.name().to_ascii_lowercase();
            if token == canon || token == canon.replace('\'', "p") {
                return Ok(c);
            }
        }
        Err(TheoremsError::UnknownClaim(s.to_string()))
    }
}

impl Serialize for ClaimId {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.serialize_str(self.name())
    }
}

impl<'de> Deserialize<'de> for ClaimId {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(D::Error::custom)
    }
}

/// Expand a comma-separated list of claim ids and group prefixes
/// (`"P2.4"` selects all eight parts; `"all"` selects everything).
pub fn parse_claim_list(list: &str) -> Result<Vec<ClaimId>, TheoremsError> {
    let mut selected = Vec::new();
    for raw in list.split(',') {
        let token = normalize_claim_token(raw);
        if token.is_empty() {
            continue;
        }
        if token == "all" {
            selected.extend(ClaimId::ALL);
            continue;
        }
        if let Ok(c) = raw.parse::<ClaimId>() {
            selected.push(c);
            continue;
        }
        let matches: Vec<ClaimId> = ClaimId::ALL
            .into_iter()
            .filter(|c| c.name().to_ascii_lowercase().starts_with(&token))
            .collect();
        if matches.is_empty() {
            return Err(TheoremsError::UnknownClaim(raw.trim().to_string()));
        }
        selected.extend(matches);
    }
    selected.sort_unstable();
    selected.dedup();
    if selected.is_empty() {
        return Err(TheoremsError::EmptyClaimSelection);
    }
    Ok(selected)
}

struct FailData {
    witness: Witness,
    lhs: String,
    rhs: String,
}

enum Outcome {
    Pass { note: Option<String> },
    Fail(Box<FailData>),
    Skip(String),
}

impl Outcome {
    fn pass() -> Self {
        Outcome::Pass { note: None }
    }
}

fn families_equal(lhs_name: &str, lhs: Family, rhs_name: &str, rhs: Family) -> Outcome {
    if lhs == rhs {
        return Outcome::pass();
    }
    let diff_index = (lhs.raw() ^ rhs.raw()).trailing_zeros() as u16;
    let witness = SubsetMask::from_bits(diff_index, lhs.ground_size());
    Outcome::Fail(Box::new(FailData {
        witness: Witness::Subset {
            set: witness.element_vec(),
        },
        lhs: format!("{lhs_name}: {witness} member = {}", lhs.contains(witness)),
        rhs: format!("{rhs_name}: {witness} member = {}", rhs.contains(witness)),
    }))
}

fn family_included(small_name: &str, small: Family, big_name: &str, big: Family) -> Outcome {
    if small.is_subfamily_of(big) {
        return Outcome::pass();
    }
    let stray = Family::from_raw(small.raw() & !big.raw(), small.ground_size())
        .members()
        .next()
        .expect("non-inclusion has a stray member");
    Outcome::Fail(Box::new(FailData {
        witness: Witness::Subset {
            set: stray.element_vec(),
        },
        lhs: format!("{small_name} contains {stray}"),
        rhs: format!("{big_name} misses {stray}"),
    }))
}

fn bools_equivalent(lhs_name: &str, lhs: bool, rhs_name: &str, rhs: bool) -> Outcome {
    if lhs == rhs {
        Outcome::pass()
    } else {
        Outcome::Fail(Box::new(FailData {
            witness: Witness::Whole,
            lhs: format!("{lhs_name} = {lhs}"),
            rhs: format!("{rhs_name} = {rhs}"),
        }))
    }
}

fn must_hold(cond: bool, what: &str) -> Outcome {
    if cond {
        Outcome::pass()
    } else {
        Outcome::Fail(Box::new(FailData {
            witness: Witness::Whole,
            lhs: format!("{what} = false"),
            rhs: "required: true".to_string(),
        }))
    }
}

fn both(first: Outcome, second: impl FnOnce() -> Outcome) -> Outcome {
    match first {
        Outcome::Pass { note: None } => second(),
        Outcome::Pass { note: Some(n) } => match second() {
            Outcome::Pass { note: None } => Outcome::Pass { note: Some(n) },
            other => other,
        },
        other => other,
    }
}

fn family_where(n: u8, pred: impl Fn(SubsetMask) -> bool) -> Family {
    let mut out = Family::empty(n);
    for a in SubsetMask::all(n) {
        if pred(a) {
            out.insert(a);
        }
    }
    out
}

fn trivial_stack(n: u8) -> Stack {
    notions::trivial_filter(n).as_stack()
}

fn mesh_stack(f: Family) -> Stack {
    Stack::new(mesh(f)).expect("mesh of a stack is a stack")
}

fn need_table(u: &Universe) -> Result<&CayleyTable, Outcome> {
    u.table
        .as_ref()
        .ok_or_else(|| Outcome::Skip("universe has no table".into()))
}

fn need_stack(slot: Option<Family>, name: &str) -> Result<Stack, Outcome> {
    let fam = slot.ok_or_else(|| Outcome::Skip(format!("universe has no {name}")))?;
    Stack::new(fam).map_err(|_| Outcome::Skip(format!("{name} is not a stack")))
}

fn need_filter(slot: Option<Family>, name: &str) -> Result<Filter, Outcome> {
    let fam = slot.ok_or_else(|| Outcome::Skip(format!("universe has no {name}")))?;
    Filter::new(fam).map_err(|_| Outcome::Skip(format!("{name} is not a filter")))
}

/// Evaluate one claim instance on a concrete universe, recomputing both
/// sides from scratch. This is also the re-verification entry point for
/// counterexample payloads.
fn eval_instance(claim: ClaimId, u: &Universe) -> Outcome {
    use ClaimId::*;
    let r = match claim {
        T1_4a | T1_4b | T1_4c => need_table(u).map(|t| eval_t1_4(claim, t)),
        P2_4a | P2_4b | P2_4d | P2_4e | P2_4f | P2_4h => {
            need_stack(u.f, "F").map(|f| eval_p2_4_single(claim, f))
        }
        P2_4c => need_stack(u.f, "F").and_then(|f| need_stack(u.g, "G").map(|g| eval_p2_4c(f, g))),
        P2_4g => {
            need_filter(u.f, "F").and_then(|f| need_filter(u.g, "G").map(|g| eval_p2_4g(f, g)))
        }
        C2_6 => need_table(u).map(eval_c2_6),
        P3_2 => with_table_stacks(u, eval_p3_2),
        P3_5 => need_table(u).and_then(|t| {
            let f1 = need_stack(u.f, "F1")?;
            let f2 = need_stack(u.g, "F2")?;
            let g = need_stack(u.h, "G")?;
            Ok(eval_p3_5(t, f1, f2, g))
        }),
        P3_7a | P3_7b | P3_7c | P3_7d => need_table(u).map(|t| eval_p3_7(claim, t)),
        L3_8a | L3_8b | L3_8c | L3_8d | L3_8ap | L3_8bp | L3_8cp | L3_8dp => {
            with_table_filters(u, |t, f, g| eval_l3_8(claim, t, f, g))
        }
        T3_10a | T3_10b => with_table_filters(u, |t, f, g| eval_t3_10(claim, t, f, g)),
        T3_11 => need_table(u).and_then(|t| {
            let f = need_filter(u.f, "F")?;
            let g = need_filter(u.g, "G")?;
            let h = need_filter(u.h, "H")?;
            Ok(eval_t3_11(t, f, g, h))
        }),
        C3_12a | C3_12b | C3_12c | C3_12d => need_table(u).and_then(|t| {
            let f = need_filter(u.f, "F")?;
            Ok(eval_c3_12(claim, t, f))
        }),
        T4_2 => with_table_stacks(u, eval_t4_2),
        P4_3a | P4_3b | P4_3c | P4_3d => with_table_filters(u, |t, f, g| eval_p4_3(claim, t, f, g)),
        T4_4 => with_table_filters(u, eval_t4_4),
        C4_5 => need_table(u).and_then(|t| {
            let f = need_filter(u.f, "F")?;
            Ok(eval_c4_5(t, f))
        }),
    };
    match r {
        Ok(outcome) => outcome,
        Err(skip) => skip,
    }
}

fn with_table_stacks(
    u: &Universe,
    eval: impl FnOnce(&CayleyTable, Stack, Stack) -> Outcome,
) -> Result<Outcome, Outcome> {
    let t = need_table(u)?;
    let f = need_stack(u.f, "F")?;
    let g = need_stack(u.g, "G")?;
    Ok(eval(t, f, g))
}

fn with_table_filters(
    u: &Universe,
    eval: impl FnOnce(&CayleyTable, Filter, Filter) -> Outcome,
) -> Result<Outcome, Outcome> {
    let t = need_table(u)?;
    let f = need_filter(u.f, "F")?;
    let g = need_filter(u.g, "G")?;
    Ok(eval(t, f, g))
}

// --- section 1: the three classical families against minimal left ideals ---

fn eval_t1_4(claim: ClaimId, t: &CayleyTable) -> Outcome {
    let sf = match notions::size_families(t) {
        Ok(sf) => sf,
        Err(e) => return Outcome::Skip(e.to_string()),
    };
    let ideals = t.minimal_left_ideals();
    let n = t.order();
    match claim {
        ClaimId::T1_4a => families_equal(
            "Syn from translate covers",
            sf.syn,
            "sets whose closure meets every minimal left ideal",
            family_where(n, |a| {
                let ca = model::closure_of_subset(a);
                ideals.iter().all(|&l| l.meets(ca))
            }),
        ),
        ClaimId::T1_4b => families_equal(
            "Thick from translate intersections",
            sf.thick,
            "sets whose closure contains a minimal left ideal",
            family_where(n, |a| {
                let ca = model::closure_of_subset(a);
                ideals.iter().any(|&l| l.is_subset_of(ca))
            }),
        ),
        ClaimId::T1_4c => families_equal(
            "PS from translate covers of thick sets",
            sf.ps,
            "sets whose closure meets some minimal left ideal",
            family_where(n, |a| {
                let ca = model::closure_of_subset(a);
                ideals.iter().any(|&l| l.meets(ca))
            }),
        ),
        _ => unreachable!(),
    }
}

// --- section 2: the mesh operator ---

fn eval_p2_4_single(claim: ClaimId, f: Stack) -> Outcome {
    let fam = f.family();
    match claim {
        ClaimId::P2_4a => must_hold(
            classify(mesh(fam)).is_stack,
            "mesh(F) classifies as a stack",
        ),
        ClaimId::P2_4b => families_equal("F", fam, "mesh of mesh of F", mesh(mesh(fam))),
        ClaimId::P2_4d => families_equal(
            "F",
            fam,
            "sets meeting every member of mesh(F)",
            schmidt_mesh(mesh(fam)),
        ),
        ClaimId::P2_4e => bools_equivalent(
            "F classifies as filter",
            classify(fam).is_filter,
            "mesh(F) classifies as grill",
            classify(mesh(fam)).is_grill,
        ),
        ClaimId::P2_4f => {
            let fixed = mesh(fam) == fam;
            let flags = classify(fam);
            if flags.is_filter {
                bools_equivalent(
                    "F classifies as ultrafilter",
                    flags.is_ultrafilter,
                    "mesh(F) = F",
                    fixed,
                )
            } else {
                // Without the filter hypothesis only the forward direction
                // survives: a mesh-fixed non-filter must not be an
                // ultrafilter (ultrafilters are filters).
                must_hold(
                    !flags.is_ultrafilter,
                    "non-filter stack is not an ultrafilter",
                )
            }
        }
        ClaimId::P2_4h => {
            let grill = intersection_family(fam, mesh(fam));
            both(
                must_hold(
                    classify(grill).is_grill,
                    "pairwise intersections of F with mesh(F) classify as a grill",
                ),
                || {
                    both(
                        family_included("F", fam, "the intersection grill", grill),
                        || family_included("mesh(F)", mesh(fam), "the intersection grill", grill),
                    )
                },
            )
        }
        _ => unreachable!(),
    }
}

fn eval_p2_4c(f1: Stack, f2: Stack) -> Outcome {
    bools_equivalent(
        "F1 is a subfamily of F2",
        f1.family().is_subfamily_of(f2.family()),
        "mesh(F2) is a subfamily of mesh(F1)",
        mesh(f2.family()).is_subfamily_of(mesh(f1.family())),
    )
}

fn eval_p2_4g(f: Filter, p: Filter) -> Outcome {
    if !classify(p.family()).is_ultrafilter {
        return Outcome::Skip("second parameter is not an ultrafilter".into());
    }
    bools_equivalent(
        "F is a subfamily of p",
        f.family().is_subfamily_of(p.family()),
        "p is a subfamily of mesh(F)",
        p.family().is_subfamily_of(mesh(f.family())),
    )
}

// --- piecewise syndetic sets form a grill, with the intersection shape ---

fn eval_c2_6(t: &CayleyTable) -> Outcome {
    let sf = match notions::size_families(t) {
        Ok(sf) => sf,
        Err(e) => return Outcome::Skip(e.to_string()),
    };
    both(
        must_hold(classify(sf.ps).is_grill, "PS classifies as a grill"),
        || {
            families_equal(
                "PS from translate decisions",
                sf.ps,
                "pairwise intersections of Syn with Thick",
                intersection_family(sf.syn, sf.thick),
            )
        },
    )
}

// --- section 3: duality, monotonicity, compositions ---

fn eval_p3_2(t: &CayleyTable, f: Stack, g: Stack) -> Outcome {
    let syn = match notions::rel_syn_family(t, f, g) {
        Ok(s) => s,
        Err(e) => return Outcome::Skip(e.to_string()),
    };
    let thick_lit = literal::rel_thick_family(t, f, g);
    both(
        families_equal(
            "Syn(F,G)",
            syn,
            "mesh of literal Thick(F,G)",
            mesh(thick_lit),
        ),
        || {
            families_equal(
                "Syn(F,G)",
                syn,
                "sets meeting every literal (F,G)-thick set",
                schmidt_mesh(thick_lit),
            )
        },
    )
}

fn eval_p3_5(t: &CayleyTable, f1: Stack, f2: Stack, g: Stack) -> Outcome {
    if !f1.family().is_subfamily_of(f2.family()) {
        return Outcome::Skip("stacks are not comparable (F1 must lie inside F2)".into());
    }
    if t.order() != f1.ground_size() {
        return Outcome::Skip("ground set mismatch".into());
    }
    let syn = |a: Stack, b: Stack| notions::rel_syn_family(t, a, b).expect("matched ground sets");
    let thick =
        |a: Stack, b: Stack| notions::rel_thick_family(t, a, b).expect("matched ground sets");
    both(
        family_included("Syn(F2,G)", syn(f2, g), "Syn(F1,G)", syn(f1, g)),
        || {
            both(
                family_included("Syn(G,F1)", syn(g, f1), "Syn(G,F2)", syn(g, f2)),
                || {
                    both(
                        family_included("Thick(F1,G)", thick(f1, g), "Thick(F2,G)", thick(f2, g)),
                        || {
                            family_included(
                                "Thick(G,F2)",
                                thick(g, f2),
                                "Thick(G,F1)",
                                thick(g, f1),
                            )
                        },
                    )
                },
            )
        },
    )
}

fn eval_p3_7(claim: ClaimId, t: &CayleyTable) -> Outcome {
    let sf = match notions::size_families(t) {
        Ok(sf) => sf,
        Err(e) => return Outcome::Skip(e.to_string()),
    };
    // The composition side goes entirely through the literal quantifier
    // sweeps, so the two routes share nothing past the table itself.
    let lit = literal::size_families(t);
    let triv = trivial_stack(t.order());
    let lit_thick = Stack::new(lit.thick).expect("thick family is a stack");
    let lit_syn = Stack::new(lit.syn).expect("syndetic family is a stack");
    match claim {
        ClaimId::P3_7a => families_equal(
            "PS",
            sf.ps,
            "Syn({S}, Thick) via literal sweep",
            literal::rel_syn_family(t, triv, lit_thick),
        ),
        ClaimId::P3_7b => families_equal(
            "PS",
            sf.ps,
            "Thick(Syn, PS*) via literal sweep",
            literal::rel_thick_family(t, lit_syn, mesh_stack(lit.ps)),
        ),
        ClaimId::P3_7c => families_equal(
            "mesh(PS)",
            mesh(sf.ps),
            "Thick({S}, Thick) via literal sweep",
            literal::rel_thick_family(t, triv, lit_thick),
        ),
        ClaimId::P3_7d => {
            let inner = literal::rel_thick_family(t, triv, lit_thick);
            let inner_stack = Stack::new(inner).expect("relative thick family is a stack");
            families_equal(
                "PS",
                sf.ps,
                "Thick(Syn, Thick({S}, Thick)) via literal sweep",
                literal::rel_thick_family(t, lit_syn, inner_stack),
            )
        }
        _ => unreachable!(),
    }
}

fn eval_l3_8(claim: ClaimId, t: &CayleyTable, f: Filter, g: Filter) -> Outcome {
    let n = t.order();
    let b = model::closed_set_of_filter(f);
    let c = model::closed_set_of_filter(g);
    let bc = model::closed_product(t, f, g);
    let fs = f.as_stack();
    let gs = g.as_stack();
    let fm = mesh_stack(f.family());
    let gm = mesh_stack(g.family());
    let rel_thick = |x, y| notions::rel_thick_family(t, x, y).expect("matched ground sets");
    let rel_syn = |x, y| notions::rel_syn_family(t, x, y).expect("matched ground sets");
    match claim {
        ClaimId::L3_8a => families_equal(
            "Thick(F,G)",
            rel_thick(fs, gs),
            "sets containing B*y for some y in C",
            family_where(n, |a| {
                let ca = model::closure_of_subset(a);
                c.elements().any(|y| {
                    t.set_product(b, SubsetMask::singleton(y, n))
                        .is_subset_of(ca)
                })
            }),
        ),
        ClaimId::L3_8b => families_equal(
            "Thick(F,G*)",
            rel_thick(fs, gm),
            "the product stack F*G",
            notions::stack_product(t, fs, gs).expect("matched ground sets"),
        ),
        ClaimId::L3_8c => families_equal(
            "Thick(F*,G)",
            rel_thick(fm, gs),
            "sets meeting B*C",
            family_where(n, |a| bc.meets(model::closure_of_subset(a))),
        ),
        ClaimId::L3_8d => families_equal(
            "Thick(F*,G*)",
            rel_thick(fm, gm),
            "sets containing x*C for some x in B",
            family_where(n, |a| {
                let ca = model::closure_of_subset(a);
                b.elements().any(|x| {
                    t.set_product(SubsetMask::singleton(x, n), c)
                        .is_subset_of(ca)
                })
            }),
        ),
        ClaimId::L3_8ap => families_equal(
            "Syn(F,G)",
            rel_syn(fs, gs),
            "sets meeting B*y for every y in C",
            family_where(n, |a| {
                let ca = model::closure_of_subset(a);
                c.elements()
                    .all(|y| t.set_product(b, SubsetMask::singleton(y, n)).meets(ca))
            }),
        ),
        ClaimId::L3_8bp => families_equal(
            "Syn(F,G*)",
            rel_syn(fs, gm),
            "sets meeting B*C",
            family_where(n, |a| bc.meets(model::closure_of_subset(a))),
        ),
        ClaimId::L3_8cp => families_equal(
            "Syn(F*,G)",
            rel_syn(fm, gs),
            "sets containing B*C",
            family_where(n, |a| bc.is_subset_of(model::closure_of_subset(a))),
        ),
        ClaimId::L3_8dp => families_equal(
            "Syn(F*,G*)",
            rel_syn(fm, gm),
            "sets meeting x*C for every x in B",
            family_where(n, |a| {
                let ca = model::closure_of_subset(a);
                b.elements()
                    .all(|x| t.set_product(SubsetMask::singleton(x, n), c).meets(ca))
            }),
        ),
        _ => unreachable!(),
    }
}

fn eval_t3_10(claim: ClaimId, t: &CayleyTable, f: Filter, g: Filter) -> Outcome {
    let fs = f.as_stack();
    let gs = g.as_stack();
    match claim {
        ClaimId::T3_10a => {
            let rs = notions::rel_syn_family(t, mesh_stack(f.family()), gs)
                .expect("matched ground sets");
            both(
                must_hold(classify(rs).is_filter, "Syn(F*,G) classifies as a filter"),
                || {
                    let bc = model::closed_product(t, f, g);
                    families_equal(
                        "Syn(F*,G)",
                        rs,
                        "the filter of the closed product of F and G",
                        model::filter_of_closed_set(bc)
                            .expect("product of bases is nonempty")
                            .family(),
                    )
                },
            )
        }
        ClaimId::T3_10b => {
            let rt = notions::rel_thick_family(t, fs, mesh_stack(g.family()))
                .expect("matched ground sets");
            both(
                must_hold(classify(rt).is_filter, "Thick(F,G*) classifies as a filter"),
                || {
                    families_equal(
                        "Thick(F,G*)",
                        rt,
                        "the product stack F*G",
                        notions::stack_product(t, fs, gs).expect("matched ground sets"),
                    )
                },
            )
        }
        _ => unreachable!(),
    }
}

fn eval_t3_11(t: &CayleyTable, f: Filter, g: Filter, h: Filter) -> Outcome {
    let product = model::closed_product(t, f, g);
    let algebraic = product.is_subset_of(model::closed_set_of_filter(h));
    let rs = notions::rel_syn_family(t, mesh_stack(f.family()), g.as_stack())
        .expect("matched ground sets");
    let combinatorial = h.family().is_subfamily_of(rs);
    bools_equivalent(
        "closed product of F and G lies in the closed set of H",
        algebraic,
        "H is a subfamily of Syn(F*,G)",
        combinatorial,
    )
}

fn eval_c3_12(claim: ClaimId, t: &CayleyTable, f: Filter) -> Outcome {
    let base = model::closed_set_of_filter(f);
    let fs = f.as_stack();
    let fm = mesh_stack(f.family());
    let triv = trivial_stack(t.order());
    let triv_mesh = mesh_stack(triv.family());
    let incl = |p: Stack, q: Stack| {
        f.family()
            .is_subfamily_of(notions::rel_syn_family(t, p, q).expect("matched ground sets"))
    };
    match claim {
        ClaimId::C3_12a => bools_equivalent(
            "base of F is a subsemigroup",
            t.is_subsemigroup(base),
            "F is a subfamily of Syn(F*,F)",
            incl(fm, fs),
        ),
        ClaimId::C3_12b => bools_equivalent(
            "base of F is a left ideal",
            t.is_left_ideal(base),
            "F is a subfamily of Syn({S}*,F)",
            incl(triv_mesh, fs),
        ),
        ClaimId::C3_12c => bools_equivalent(
            "base of F is a right ideal",
            t.is_right_ideal(base),
            "F is a subfamily of Syn(F*,{S})",
            incl(fm, triv),
        ),
        ClaimId::C3_12d => bools_equivalent(
            "base of F is a two-sided ideal",
            t.is_left_ideal(base) && t.is_right_ideal(base),
            "F lies in both Syn({S}*,F) and Syn(F*,{S})",
            incl(triv_mesh, fs) && incl(fm, triv),
        ),
        _ => unreachable!(),
    }
}

// --- section 4: relative piecewise syndetic sets ---

fn eval_t4_2(t: &CayleyTable, f: Stack, g: Stack) -> Outcome {
    let syn = notions::rel_syn_family(t, f, g).expect("matched ground sets");
    let thick = notions::rel_thick_family(t, f, g).expect("matched ground sets");
    let ps = intersection_family(syn, thick);
    both(
        must_hold(classify(ps).is_grill, "PS(F,G) classifies as a grill"),
        || {
            both(family_included("Syn(F,G)", syn, "PS(F,G)", ps), || {
                family_included("Thick(F,G)", thick, "PS(F,G)", ps)
            })
        },
    )
}

fn strictness_note(small: Family, big: Family, what: &str) -> Option<String> {
    let extra = big.raw() & !small.raw();
    if extra == 0 {
        return None;
    }
    let witness = Family::from_raw(extra, small.ground_size())
        .members()
        .next()
        .expect("nonzero");
    Some(format!("{what}: strict, witness {witness}"))
}

fn eval_p4_3(claim: ClaimId, t: &CayleyTable, f: Filter, g: Filter) -> Outcome {
    let n = t.order();
    let fs = f.as_stack();
    let gs = g.as_stack();
    let fm = mesh_stack(f.family());
    let gm = mesh_stack(g.family());
    let rel_ps = |x, y| notions::rel_ps_family(t, x, y).expect("matched ground sets");
    match claim {
        ClaimId::P4_3a => {
            let lhs = rel_ps(fs, gs);
            let rhs = notions::rel_thick_family(t, fm, gs).expect("matched ground sets");
            match family_included("PS(F,G)", lhs, "Thick(F*,G)", rhs) {
                Outcome::Pass { .. } => Outcome::Pass {
                    note: strictness_note(lhs, rhs, "PS(F,G) inside Thick(F*,G)"),
                },
                other => other,
            }
        }
        ClaimId::P4_3b => families_equal(
            "PS(F,G*)",
            rel_ps(fs, gm),
            "Syn(F,G*) via literal sweep",
            literal::rel_syn_family(t, fs, gm),
        ),
        ClaimId::P4_3c => families_equal(
            "PS(F*,G)",
            rel_ps(fm, gs),
            "Thick(F*,G) via literal sweep",
            literal::rel_thick_family(t, fm, gs),
        ),
        ClaimId::P4_3d => {
            let lhs = rel_ps(fm, gm);
            let b = model::closed_set_of_filter(f);
            let c = model::closed_set_of_filter(g);
            let rhs = family_where(n, |a| {
                let ca = model::closure_of_subset(a);
                b.elements()
                    .any(|x| t.set_product(SubsetMask::singleton(x, n), c).meets(ca))
            });
            match family_included("PS(F*,G*)", lhs, "sets meeting some x*C", rhs) {
                Outcome::Pass { .. } => Outcome::Pass {
                    note: strictness_note(lhs, rhs, "PS(F*,G*) inside the x*C-meeting sets"),
                },
                other => other,
            }
        }
        _ => unreachable!(),
    }
}

// Some point q of the witness range has A relatively syndetic for the pair
// (F, Thick(F, u_q)), with u_q the principal ultrafilter at q.
fn szz_predicate(t: &CayleyTable, a: SubsetMask, f: Filter, q_range: SubsetMask) -> bool {
    q_range.elements().any(|y| {
        let u_y = model::point_ultrafilter(y, t.order());
        let thick = notions::rel_thick_family(t, f.as_stack(), u_y.as_stack())
            .expect("matched ground sets");
        let thick_stack = Stack::new(thick).expect("relative thick family is a stack");
        notions::is_rel_syndetic(t, a, f.as_stack(), thick_stack)
    })
}

fn eval_t4_4(t: &CayleyTable, f: Filter, g: Filter) -> Outcome {
    let b = model::closed_set_of_filter(f);
    let c = model::closed_set_of_filter(g);
    if !t.is_subsemigroup(b) {
        return Outcome::Skip("hypothesis fails: base of F is not a subsemigroup".into());
    }
    if !t.set_product(b, c).is_subset_of(c) {
        return Outcome::Skip(
            "hypothesis fails: closed product of F and G does not lie in the closed set of G"
                .into(),
        );
    }
    let ps = notions::rel_ps_family(t, f.as_stack(), g.as_stack()).expect("matched ground sets");
    for a in ps.members() {
        if !szz_predicate(t, a, f, c) {
            return Outcome::Fail(Box::new(FailData {
                witness: Witness::Subset {
                    set: a.element_vec(),
                },
                lhs: format!("{a} lies in PS(F,G)"),
                rhs: format!("no q in the closed set of G puts {a} in Syn(F, Thick(F,q))"),
            }));
        }
    }
    Outcome::pass()
}

fn eval_c4_5(t: &CayleyTable, f: Filter) -> Outcome {
    let b = model::closed_set_of_filter(f);
    if !t.is_subsemigroup(b) {
        return Outcome::Skip("hypothesis fails: base of F is not a subsemigroup".into());
    }
    let ps = notions::rel_ps_family(t, f.as_stack(), f.as_stack()).expect("matched ground sets");
    for a in ps.members() {
        match notions::is_szz_piecewise_syndetic(t, a, f) {
            Ok(true) => {}
            Ok(false) => {
                return Outcome::Fail(Box::new(FailData {
                    witness: Witness::Subset {
                        set: a.element_vec(),
                    },
                    lhs: format!("{a} lies in PS(F,F)"),
                    rhs: format!("no q in the closed set of F puts {a} in Syn(F, Thick(F,q))"),
                }))
            }
            Err(e) => return Outcome::Skip(e.to_string()),
        }
    }
    Outcome::pass()
}

// --- report plumbing ---

fn finish(claim: ClaimId, universe: Universe, started: Instant) -> CheckReport {
    let outcome = eval_instance(claim, &universe);
    let label = universe.label();
    wrap_outcome(claim, label, universe, outcome, started)
}

fn wrap_outcome(
    claim: ClaimId,
    label: String,
    universe: Universe,
    outcome: Outcome,
    started: Instant,
) -> CheckReport {
    let (status, reason, note, counterexample) = match outcome {
        Outcome::Pass { note } => (Status::Pass, None, note, None),
        Outcome::Skip(reason) => (Status::Skipped, Some(reason), None, None),
        Outcome::Fail(data) => (
            Status::Fail,
            None,
            None,
            Some(Counterexample {
                universe,
                witness: data.witness,
                lhs: data.lhs,
                rhs: data.rhs,
            }),
        ),
    };
    CheckReport {
        claim,
        universe: label,
        status,
        reason,
        note,
        counterexample,
        elapsed: started.elapsed(),
    }
}

/// Rerun a failing report's claim from its counterexample payload.
/// `Some(true)` means the failure reproduces with the same witness;
/// `Some(false)` means it does not; `None` means there is nothing to rerun.
pub fn reverify(report: &CheckReport) -> Option<bool> {
    let cex = report.counterexample.as_ref()?;
    match eval_instance(report.claim, &cex.universe) {
        Outcome::Fail(data) => Some(data.witness == cex.witness),
        _ => Some(false),
    }
}

fn check_order(t: &CayleyTable) -> Result<(), TheoremsError> {
    if t.order() > MAX_FAMILY_GROUND {
        Err(TheoremsError::OrderTooLarge {
            n: t.order(),
            max: MAX_FAMILY_GROUND,
        })
    } else {
        Ok(())
    }
}

/// The three algebraic characterizations of Syn, Thick, and PS on one table.
pub fn check_thm_1_4(t: &CayleyTable) -> Result<Vec<CheckReport>, TheoremsError> {
    check_order(t)?;
    Ok([ClaimId::T1_4a, ClaimId::T1_4b, ClaimId::T1_4c]
        .into_iter()
        .map(|c| finish(c, Universe::for_table(t), Instant::now()))
        .collect())
}

/// PS is a grill and decomposes into syndetic-intersect-thick.
pub fn check_cor_2_6(t: &CayleyTable) -> Result<CheckReport, TheoremsError> {
    check_order(t)?;
    Ok(finish(
        ClaimId::C2_6,
        Universe::for_table(t),
        Instant::now(),
    ))
}

/// Duality of the relative notions on one (table, stack pair) universe.
pub fn check_prop_3_2(t: &CayleyTable, f: Stack, g: Stack) -> Result<CheckReport, TheoremsError> {
    check_order(t)?;
    Ok(finish(
        ClaimId::P3_2,
        Universe::for_table_fg(t, f.family(), g.family()),
        Instant::now(),
    ))
}

/// All four monotonicity directions for one comparable pair and one
/// companion stack.
pub fn check_prop_3_5(
    t: &CayleyTable,
    f1: Stack,
    f2: Stack,
    g: Stack,
) -> Result<CheckReport, TheoremsError> {
    check_order(t)?;
    Ok(finish(
        ClaimId::P3_5,
        Universe::for_table_fgh(t, f1.family(), f2.family(), g.family()),
        Instant::now(),
    ))
}

/// The four composition identities for PS on one table.
pub fn check_prop_3_7(t: &CayleyTable) -> Result<Vec<CheckReport>, TheoremsError> {
    check_order(t)?;
    Ok([
        ClaimId::P3_7a,
        ClaimId::P3_7b,
        ClaimId::P3_7c,
        ClaimId::P3_7d,
    ]
    .into_iter()
    .map(|c| finish(c, Universe::for_table(t), Instant::now()))
    .collect())
}

/// The eight closed-set characterizations of the relative notions.
pub fn check_lemma_3_8(
    t: &CayleyTable,
    f: Filter,
    g: Filter,
) -> Result<Vec<CheckReport>, TheoremsError> {
    check_order(t)?;
    Ok([
        ClaimId::L3_8a,
        ClaimId::L3_8b,
        ClaimId::L3_8c,
        ClaimId::L3_8d,
        ClaimId::L3_8ap,
        ClaimId::L3_8bp,
        ClaimId::L3_8cp,
        ClaimId::L3_8dp,
    ]
    .into_iter()
    .map(|c| {
        finish(
            c,
            Universe::for_table_fg(t, f.family(), g.family()),
            Instant::now(),
        )
    })
    .collect())
}

/// Syn(F*,G) and Thick(F,G*) are filters with known closed sets.
pub fn check_thm_3_10(
    t: &CayleyTable,
    f: Filter,
    g: Filter,
) -> Result<Vec<CheckReport>, TheoremsError> {
    check_order(t)?;
    Ok([ClaimId::T3_10a, ClaimId::T3_10b]
        .into_iter()
        .map(|c| {
            finish(
                c,
                Universe::for_table_fg(t, f.family(), g.family()),
                Instant::now(),
            )
        })
        .collect())
}

/// Product containment in a third filter against the combinatorial side.
pub fn check_thm_3_11(
    t: &CayleyTable,
    f: Filter,
    g: Filter,
    h: Filter,
) -> Result<CheckReport, TheoremsError> {
    check_order(t)?;
    Ok(finish(
        ClaimId::T3_11,
        Universe::for_table_fgh(t, f.family(), g.family(), h.family()),
        Instant::now(),
    ))
}

/// Combinatorial characterizations of subsemigroup / left / right /
/// two-sided ideal bases.
pub fn check_cor_3_12(t: &CayleyTable, f: Filter) -> Result<Vec<CheckReport>, TheoremsError> {
    check_order(t)?;
    Ok([
        ClaimId::C3_12a,
        ClaimId::C3_12b,
        ClaimId::C3_12c,
        ClaimId::C3_12d,
    ]
    .into_iter()
    .map(|c| finish(c, Universe::for_table_f(t, f.family()), Instant::now()))
    .collect())
}

/// The relative-piecewise claims: the grill theorem, the four composition
/// facts, the subsemigroup transfer theorem, and (when the two filters
/// coincide) the ultrafilter-witness corollary.
pub fn check_sec4(
    t: &CayleyTable,
    f: Filter,
    g: Filter,
) -> Result<Vec<CheckReport>, TheoremsError> {
    check_order(t)?;
    let mut out: Vec<CheckReport> = [
        ClaimId::T4_2,
        ClaimId::P4_3a,
        ClaimId::P4_3b,
        ClaimId::P4_3c,
        ClaimId::P4_3d,
        ClaimId::T4_4,
    ]
    .into_iter()
    .map(|c| {
        finish(
            c,
            Universe::for_table_fg(t, f.family(), g.family()),
            Instant::now(),
        )
    })
    .collect();
    if f == g {
        out.push(finish(
            ClaimId::C4_5,
            Universe::for_table_f(t, f.family()),
            Instant::now(),
        ));
    }
    Ok(out)
}

/// The eight mesh-operator statements, swept over every stack (and filter,
/// ultrafilter) on an `n`-point ground set.
///
/// The universe is assembled twice: constructively (antichain closures,
/// principal filters) and by brute-force classification of all `2^(2^n)`
/// families; the two must agree exactly, and the sweep then runs on the
/// definitional sets. One aggregated report per statement, carrying the
/// first counterexample if any instance fails.
pub fn check_prop_2_4(n: u8) -> Result<Vec<CheckReport>, TheoremsError> {
    if n > MAX_STACK_ENUM_GROUND {
        return Err(TheoremsError::OrderTooLarge {
            n,
            max: MAX_STACK_ENUM_GROUND,
        });
    }
    let family_count: u64 = 1u64 << (1u32 << n);

    let stacks: Vec<Family> = all_families(n)?
        .filter(|&fam| classify(fam).is_stack)
        .collect();
    let filters: Vec<Family> = stacks
        .iter()
        .copied()
        .filter(|&fam| classify(fam).is_filter)
        .collect();
    let ultras: Vec<Family> = filters
        .iter()
        .copied()
        .filter(|&fam| classify(fam).is_ultrafilter)
        .collect();

    let constructive: Vec<u64> = {
        let mut v: Vec<u64> = enumerate_stacks(n)?
            .iter()
            .map(|s| s.family().raw())
            .collect();
        v.sort_unstable();
        v
    };
    let mut scanned: Vec<u64> = stacks.iter().map(|f| f.raw()).collect();
    scanned.sort_unstable();
    assert_eq!(
        constructive, scanned,
        "constructive stack enumeration must match the scan"
    );
    assert_eq!(
        enumerate_filters(n)?.len(),
        filters.len(),
        "principal filter enumeration must match the scan"
    );
    assert_eq!(
        enumerate_ultrafilters(n)?.len(),
        ultras.len(),
        "principal ultrafilter enumeration must match the scan"
    );

    let label = format!(
        "n={n}: {} stacks, {} filters, {} ultrafilters (constructive = scan of {} families)",
        stacks.len(),
        filters.len(),
        ultras.len(),
        family_count,
    );
    let empty_universe = Universe {
        n,
        table: None,
        f: None,
        g: None,
        h: None,
    };

    let mut out = Vec::new();
    let singles = [
        ClaimId::P2_4a,
        ClaimId::P2_4b,
        ClaimId::P2_4d,
        ClaimId::P2_4e,
        ClaimId::P2_4f,
        ClaimId::P2_4h,
    ];
    for claim in singles {
        let started = Instant::now();
        let mut result = Outcome::pass();
        let mut at = None;
        for &fam in &stacks {
            let u = Universe::for_family(n, fam);
            match eval_instance(claim, &u) {
                Outcome::Pass { .. } => {}
                other => {
                    at = Some(u);
                    result = other;
                    break;
                }
            }
        }
        // The stack of all majority-size subsets is the standing example
        // that the filter hypothesis in (f) is needed: it is mesh-fixed
        // without being an ultrafilter. Pin it explicitly on odd ground
        // sets, where it exists.
        if claim == ClaimId::P2_4f && matches!(result, Outcome::Pass { .. }) && n % 2 == 1 && n > 1
        {
            let threshold = (n as u32).div_ceil(2);
            let caveat = family_where(n, |a| a.len() >= threshold);
            let ok = mesh(caveat) == caveat && !classify(caveat).is_ultrafilter;
            if !ok {
                at = Some(Universe::for_family(n, caveat));
                result = must_hold(
                    ok,
                    "the majority-size caveat family is mesh-fixed yet not an ultrafilter",
                );
            }
        }
        out.push(wrap_outcome(
            claim,
            label.clone(),
            at.unwrap_or_else(|| empty_universe.clone()),
            result,
            started,
        ));
    }

    // (c): every ordered pair of stacks.
    {
        let started = Instant::now();
        let mut result = Outcome::pass();
        let mut at = None;
        'pairs_c: for &f1 in &stacks {
            for &f2 in &stacks {
                let u = Universe::for_family_pair(n, f1, f2);
                match eval_instance(ClaimId::P2_4c, &u) {
                    Outcome::Pass { .. } => {}
                    other => {
                        at = Some(u);
                        result = other;
                        break 'pairs_c;
                    }
                }
            }
        }
        out.push(wrap_outcome(
            ClaimId::P2_4c,
            label.clone(),
            at.unwrap_or_else(|| empty_universe.clone()),
            result,
            started,
        ));
    }

    // (g): every (filter, ultrafilter) pair.
    {
        let started = Instant::now();
        let mut result = Outcome::pass();
        let mut at = None;
        'pairs_g: for &f in &filters {
            for &p in &ultras {
                let u = Universe::for_family_pair(n, f, p);
                match eval_instance(ClaimId::P2_4g, &u) {
                    Outcome::Pass { .. } => {}
                    other => {
                        at = Some(u);
                        result = other;
                        break 'pairs_g;
                    }
                }
            }
        }
        out.push(wrap_outcome(
            ClaimId::P2_4g,
            label,
            at.unwrap_or(empty_universe),
            result,
            started,
        ));
    }

    out.sort_by_key(|r| r.claim);
    Ok(out)
}
