//! Exhaustive search for a counterexample to the converse of the
//! ultrafilter-witness corollary: a set that satisfies the witness
//! predicate without being relatively piecewise syndetic.
//!
//! The search speaks only about the finite universes it visited. Whatever
//! the outcome, it asserts nothing about infinite semigroups.

use std::time::{Duration, Instant};

use serde::{Deserialize, Serialize};

use crate::notions;
use crate::semigroup::{enumerate_semigroups, CayleyTable, Dedupe};
use crate::setfam::{Family, SubsetMask};
use crate::theorems::{model, TheoremsError};

/// Largest semigroup order the search accepts.
pub const MAX_SEARCH_ORDER: u8 = 5;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CandidatePayload {
    pub table: CayleyTable,
    pub filter: Family,
    /// The candidate set, as sorted element indices.
    pub set: Vec<u8>,
    /// A base point whose ultrafilter witnesses the predicate.
    pub witness_point: u8,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum SearchOutcome {
    NoneFound,
    Candidate(CandidatePayload),
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SearchReport {
    pub question: String,
    pub max_order: u8,
    pub budget: u64,
    /// Number of (table, filter, set) triples fully examined.
    pub universes_examined: u64,
    /// True when the budget ran out before the universe did.
    pub partial: bool,
    pub outcome: SearchOutcome,
    #[serde(skip, default)]
    pub elapsed: Duration,
}

/// Recompute both sides of a candidate from its payload: the witness
/// predicate must hold and the set must lie outside PS(F,F).
pub fn verify_candidate(c: &CandidatePayload) -> bool {
    let Ok(f) = crate::setfam::Filter::new(c.filter) else {
        return false;
    };
    let Ok(a) = SubsetMask::from_elements(&c.set, c.table.order()) else {
        return false;
    };
    let base = model::closed_set_of_filter(f);
    if !c.table.is_subsemigroup(base) || !base.contains(c.witness_point) {
        return false;
    }
    let szz = match notions::is_szz_piecewise_syndetic(&c.table, a, f) {
        Ok(v) => v,
        Err(_) => return false,
    };
    let ps = match notions::rel_ps_family(&c.table, f.as_stack(), f.as_stack()) {
        Ok(fam) => fam,
        Err(_) => return false,
    };
    szz && !ps.contains(a)
}

/// Scan tables of increasing order (one representative per relabeling
/// orbit), filters with subsemigroup bases by descending base size, and
/// candidate sets by ascending size, until a verified candidate appears or
/// `budget` triples have been examined.
pub fn search_question_4_6(max_order: u8, budget: u64) -> Result<SearchReport, TheoremsError> {
    if !(1..=MAX_SEARCH_ORDER).contains(&max_order) {
        return Err(TheoremsError::OrderTooLarge {
            n: max_order,
            max: MAX_SEARCH_ORDER,
        });
    }
    let started = Instant::now();
    let mut examined: u64 = 0;
    let report = |outcome, partial, examined, elapsed| SearchReport {
        question: "Q4.6".to_string(),
        max_order,
        budget,
        universes_examined: examined,
        partial,
        outcome,
        elapsed,
    };

    for n in 1..=max_order {
        for table in enumerate_semigroups(n, Dedupe::Iso)? {
            // subsemigroup bases, largest first, then ascending by mask
            let mut bases: Vec<SubsetMask> = SubsetMask::all_nonempty(n)
                .filter(|&b| table.is_subsemigroup(b))
                .collect();
            bases.sort_by_key(|b| (std::cmp::Reverse(b.len()), b.bits()));
            for base in bases {
                let f = notions::principal_filter(base).expect("base is nonempty");
                let ps = notions::rel_ps_family(&table, f.as_stack(), f.as_stack())?;
                let mut sets: Vec<SubsetMask> = SubsetMask::all(n).collect();
                sets.sort_by_key(|a| (a.len(), a.bits()));
                for a in sets {
                    if examined == budget {
                        return Ok(report(
                            SearchOutcome::NoneFound,
                            true,
                            examined,
                            started.elapsed(),
                        ));
                    }
                    examined += 1;
                    let witness = base.elements().find(|&y| {
                        let u_y = model::point_ultrafilter(y, n);
                        let thick = notions::rel_thick_family(&table, f.as_stack(), u_y.as_stack())
                            .expect("matched ground sets");
                        let thick_stack = crate::setfam::Stack::new(thick)
                            .expect("relative thick family is a stack");
                        notions::is_rel_syndetic(&table, a, f.as_stack(), thick_stack)
                    });
                    if let Some(y) = witness {
                        if !ps.contains(a) {
                            let candidate = CandidatePayload {
                                table: table.clone(),
                                filter: f.family(),
                                set: a.element_vec(),
                                witness_point: y,
                            };
                            assert!(
                                verify_candidate(&candidate),
                                "search candidate must re-verify from its payload"
                            );
                            return Ok(report(
                                SearchOutcome::Candidate(candidate),
                                false,
                                examined,
                                started.elapsed(),
                            ));
                        }
                    }
                }
            }
        }
    }
    Ok(report(
        SearchOutcome::NoneFound,
        false,
        examined,
        started.elapsed(),
    ))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn zero_budget_reports_partial_with_nothing_examined() {
        let r = search_question_4_6(2, 0).unwrap();
        assert_eq!(r.universes_examined, 0);
        assert!(r.partial);
        assert_eq!(r.outcome, SearchOutcome::NoneFound);
    }

    // Outcomes pinned from the first exhaustive runs; they must reproduce
    // exactly. They say nothing beyond the finite universes scanned.
    #[test]
    fn order_two_search_outcome_is_pinned() {
        let r = search_question_4_6(2, u64::MAX).unwrap();
        assert_eq!(r.outcome, SearchOutcome::NoneFound);
        assert!(!r.partial);
        assert_eq!(r.universes_examined, 54);
    }

    #[test]
    fn order_three_search_outcome_is_pinned() {
        let r = search_question_4_6(3, u64::MAX).unwrap();
        assert_eq!(r.outcome, SearchOutcome::NoneFound);
        assert!(!r.partial);
        assert_eq!(r.universes_examined, 1078);
    }

    #[test]
    fn bogus_candidates_are_rejected() {
        // The full set is always relatively piecewise syndetic, so it can
        // never be a candidate.
        let table = CayleyTable::cyclic_group(2);
        let f = notions::trivial_filter(2);
        let bogus = CandidatePayload {
            table: table.clone(),
            filter: f.family(),
            set: vec![0, 1],
            witness_point: 0,
        };
        assert!(!verify_candidate(&bogus));
        // out-of-range data is rejected rather than trusted
        let malformed = CandidatePayload {
            table,
            filter: f.family(),
            set: vec![7],
            witness_point: 0,
        };
        assert!(!verify_candidate(&malformed));
    }

    #[test]
    fn budget_truncation_is_monotone() {
        let full = search_question_4_6(2, u64::MAX).unwrap();
        let cut = search_question_4_6(2, 10).unwrap();
        assert_eq!(cut.universes_examined, 10);
        assert!(cut.partial);
        assert!(cut.universes_examined <= full.universes_examined);
    }
}
