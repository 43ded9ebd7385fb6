//! Deterministic suite runner: every selected claim over every enumerated
//! universe up to a configured order, in a fixed report order regardless of
//! worker count.

use std::collections::BTreeMap;
use std::time::{Duration, Instant};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::semigroup::{enumerate_semigroups, CayleyTable, Dedupe};
use crate::setfam::{enumerate_filters, Filter};
use crate::theorems::report::CheckReport;
use crate::theorems::{
    check_cor_2_6, check_cor_3_12, check_lemma_3_8, check_prop_2_4, check_prop_3_2, check_prop_3_5,
    check_prop_3_7, check_sec4, check_thm_1_4, check_thm_3_10, check_thm_3_11, ClaimId,
    Counterexample, Status, TheoremsError,
};

/// Ground-set sizes the mesh-operator sweep runs at inside the suite.
const MESH_SWEEP_MAX_GROUND: u8 = 3;

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SuiteConfig {
    pub max_order: u8,
    pub dedupe: Dedupe,
    pub claims: Vec<ClaimId>,
    /// Worker threads; `None` uses the global default. Verdicts never
    /// depend on this.
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub jobs: Option<usize>,
}

impl SuiteConfig {
    pub fn all_claims(max_order: u8, dedupe: Dedupe) -> Self {
        SuiteConfig {
            max_order,
            dedupe,
            claims: ClaimId::ALL.to_vec(),
            jobs: None,
        }
    }
}

#[derive(Debug, Clone, Default, Serialize, Deserialize, PartialEq)]
pub struct ClaimTally {
    pub pass: u64,
    pub fail: u64,
    pub skipped: u64,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub first_counterexample: Option<Counterexample>,
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
pub struct SuiteSummary {
    pub max_order: u8,
    pub dedupe: Dedupe,
    pub tables_examined: Vec<(u8, u64)>,
    pub per_claim: BTreeMap<String, ClaimTally>,
    pub pass: u64,
    pub fail: u64,
    pub skipped: u64,
    pub all_pass: bool,
}

#[derive(Debug)]
pub struct SuiteReport {
    pub reports: Vec<CheckReport>,
    pub summary: SuiteSummary,
    pub elapsed: Duration,
}

fn selected(config: &SuiteConfig, claim: ClaimId) -> bool {
    config.claims.contains(&claim)
}

fn any_selected(config: &SuiteConfig, claims: &[ClaimId]) -> bool {
    claims.iter().any(|&c| selected(config, c))
}

const TABLE_CLAIMS: [ClaimId; 8] = [
    ClaimId::T1_4a,
    ClaimId::T1_4b,
    ClaimId::T1_4c,
    ClaimId::C2_6,
    ClaimId::P3_7a,
    ClaimId::P3_7b,
    ClaimId::P3_7c,
    ClaimId::P3_7d,
];

const PAIR_CLAIMS: [ClaimId; 18] = [
    ClaimId::P3_2,
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
    ClaimId::T4_2,
    ClaimId::P4_3a,
    ClaimId::P4_3b,
    ClaimId::P4_3c,
    ClaimId::P4_3d,
    ClaimId::T4_4,
    ClaimId::C4_5,
];

fn table_reports(t: &CayleyTable, config: &SuiteConfig) -> Vec<CheckReport> {
    let mut out = Vec::new();
    let keep = |r: &CheckReport| selected(config, r.claim);

    if any_selected(config, &TABLE_CLAIMS[..3]) {
        out.extend(
            check_thm_1_4(t)
                .expect("suite order is within limits")
                .into_iter()
                .filter(keep),
        );
    }
    if selected(config, ClaimId::C2_6) {
        out.push(check_cor_2_6(t).expect("suite order is within limits"));
    }
    if any_selected(config, &TABLE_CLAIMS[4..]) {
        out.extend(
            check_prop_3_7(t)
                .expect("suite order is within limits")
                .into_iter()
                .filter(keep),
        );
    }

    let needs_filters = any_selected(config, &PAIR_CLAIMS)
        || selected(config, ClaimId::T3_11)
        || selected(config, ClaimId::P3_5)
        || any_selected(
            config,
            &[
                ClaimId::C3_12a,
                ClaimId::C3_12b,
                ClaimId::C3_12c,
                ClaimId::C3_12d,
            ],
        );
    if !needs_filters {
        return out;
    }
    let filters: Vec<Filter> = enumerate_filters(t.order()).expect("order within family limit");

    if any_selected(
        config,
        &[
            ClaimId::C3_12a,
            ClaimId::C3_12b,
            ClaimId::C3_12c,
            ClaimId::C3_12d,
        ],
    ) {
        for &f in &filters {
            out.extend(
                check_cor_3_12(t, f)
                    .expect("suite order is within limits")
                    .into_iter()
                    .filter(keep),
            );
        }
    }

    for &f in &filters {
        for &g in &filters {
            if selected(config, ClaimId::P3_2) {
                out.push(
                    check_prop_3_2(t, f.as_stack(), g.as_stack())
                        .expect("suite order is within limits"),
                );
            }
            if any_selected(config, &PAIR_CLAIMS[1..9]) {
                out.extend(
                    check_lemma_3_8(t, f, g)
                        .expect("suite order is within limits")
                        .into_iter()
                        .filter(keep),
                );
            }
            if any_selected(config, &[ClaimId::T3_10a, ClaimId::T3_10b]) {
                out.extend(
                    check_thm_3_10(t, f, g)
                        .expect("suite order is within limits")
                        .into_iter()
                        .filter(keep),
                );
            }
            if any_selected(
                config,
                &[
                    ClaimId::T4_2,
                    ClaimId::P4_3a,
                    ClaimId::P4_3b,
                    ClaimId::P4_3c,
                    ClaimId::P4_3d,
                    ClaimId::T4_4,
                    ClaimId::C4_5,
                ],
            ) {
                out.extend(
                    check_sec4(t, f, g)
                        .expect("suite order is within limits")
                        .into_iter()
                        .filter(keep),
                );
            }
            if selected(config, ClaimId::T3_11) {
                for &h in &filters {
                    out.push(check_thm_3_11(t, f, g, h).expect("suite order is within limits"));
                }
            }
        }
    }

    if selected(config, ClaimId::P3_5) {
        for &f1 in &filters {
            for &f2 in &filters {
                if !f1.family().is_subfamily_of(f2.family()) {
                    continue;
                }
                for &g in &filters {
                    out.push(
                        check_prop_3_5(t, f1.as_stack(), f2.as_stack(), g.as_stack())
                            .expect("suite order is within limits"),
                    );
                }
            }
        }
    }

    out
}

/// Run every selected claim over all tables of order `1..=max_order` plus
/// the table-free mesh-operator sweeps. The report stream is deterministic
/// for a fixed config; the worker count changes wall time only.
pub fn run_suite(config: &SuiteConfig) -> Result<SuiteReport, TheoremsError> {
    if config.claims.is_empty() {
        return Err(TheoremsError::EmptyClaimSelection);
    }
    if config.max_order < 1 {
        return Err(TheoremsError::OrderTooLarge {
            n: config.max_order,
            max: crate::semigroup::MAX_ISO_ENUM_ORDER,
        });
    }
    let started = Instant::now();
    let mut reports = Vec::new();

    let mesh_claims = [
        ClaimId::P2_4a,
        ClaimId::P2_4b,
        ClaimId::P2_4c,
        ClaimId::P2_4d,
        ClaimId::P2_4e,
        ClaimId::P2_4f,
        ClaimId::P2_4g,
        ClaimId::P2_4h,
    ];
    if any_selected(config, &mesh_claims) {
        for n in 1..=config.max_order.min(MESH_SWEEP_MAX_GROUND) {
            reports.extend(
                check_prop_2_4(n)?
                    .into_iter()
                    .filter(|r| selected(config, r.claim)),
            );
        }
    }

    let mut tables_examined = Vec::new();
    let table_claims_wanted = any_selected(config, &TABLE_CLAIMS)
        || any_selected(config, &PAIR_CLAIMS)
        || any_selected(
            config,
            &[
                ClaimId::P3_5,
                ClaimId::T3_11,
                ClaimId::C3_12a,
                ClaimId::C3_12b,
                ClaimId::C3_12c,
                ClaimId::C3_12d,
            ],
        );

    if table_claims_wanted {
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(config.jobs.unwrap_or(0))
            .build()
            .expect("thread pool construction");
        for n in 1..=config.max_order {
            let tables = enumerate_semigroups(n, config.dedupe)?;
            tables_examined.push((n, tables.len() as u64));
            let per_table: Vec<Vec<CheckReport>> = pool.install(|| {
                tables
                    .par_iter()
                    .map(|t| table_reports(t, config))
                    .collect()
            });
            reports.extend(per_table.into_iter().flatten());
        }
    }

    let mut per_claim: BTreeMap<String, ClaimTally> = BTreeMap::new();
    let (mut pass, mut fail, mut skipped) = (0u64, 0u64, 0u64);
    for r in &reports {
        let tally = per_claim.entry(r.claim.name().to_string()).or_default();
        match r.status {
            Status::Pass => {
                tally.pass += 1;
                pass += 1;
            }
            Status::Fail => {
                tally.fail += 1;
                fail += 1;
                if tally.first_counterexample.is_none() {
                    tally.first_counterexample = r.counterexample.clone();
                }
            }
            Status::Skipped => {
                tally.skipped += 1;
                skipped += 1;
            }
        }
    }

    let summary = SuiteSummary {
        max_order: config.max_order,
        dedupe: config.dedupe,
        tables_examined,
        per_claim,
        pass,
        fail,
        skipped,
        all_pass: fail == 0,
    };
    Ok(SuiteReport {
        reports,
        summary,
        elapsed: started.elapsed(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn strip_timing(reports: &[CheckReport]) -> Vec<CheckReport> {
        reports
            .iter()
            .map(|r| CheckReport {
                elapsed: Duration::ZERO,
                ..r.clone()
            })
            .collect()
    }

    #[test]
    fn order_two_suite_all_claims_pass() {
        let started = Instant::now();
        let report = run_suite(&SuiteConfig::all_claims(2, Dedupe::None)).unwrap();
        assert!(
            started.elapsed() < Duration::from_secs(10),
            "order-2 run stays under 10 s"
        );
        assert!(
            report.summary.all_pass,
            "failures: {:?}",
            report.summary.per_claim
        );
        assert_eq!(report.summary.fail, 0);
        assert_eq!(report.summary.tables_examined, vec![(1, 1), (2, 8)]);
        // every skip names a failed hypothesis
        for r in &report.reports {
            if r.status == Status::Skipped {
                assert!(
                    r.reason.as_deref().unwrap_or("").contains("hypothesis"),
                    "unexpected skip: {r:?}"
                );
            }
        }
    }

    #[test]
    fn verdicts_do_not_depend_on_worker_count() {
        let mut one = SuiteConfig::all_claims(2, Dedupe::Iso);
        one.jobs = Some(1);
        let mut four = SuiteConfig::all_claims(2, Dedupe::Iso);
        four.jobs = Some(4);
        let a = run_suite(&one).unwrap();
        let b = run_suite(&four).unwrap();
        assert_eq!(strip_timing(&a.reports), strip_timing(&b.reports));
        assert_eq!(a.summary, b.summary);
    }

    #[test]
    fn claim_subset_runs_only_those_claims() {
        let config = SuiteConfig {
            max_order: 2,
            dedupe: Dedupe::None,
            claims: vec![ClaimId::T3_11],
            jobs: Some(1),
        };
        let report = run_suite(&config).unwrap();
        assert!(report.reports.iter().all(|r| r.claim == ClaimId::T3_11));
        // 1 table of order 1 (1 triple) + 8 tables of order 2 (27 triples)
        assert_eq!(report.reports.len(), 1 + 8 * 27);
        assert!(report.summary.all_pass);
    }

    #[test]
    fn empty_selection_is_a_config_error() {
        let config = SuiteConfig {
            max_order: 2,
            dedupe: Dedupe::None,
            claims: vec![],
            jobs: None,
        };
        assert!(matches!(
            run_suite(&config),
            Err(TheoremsError::EmptyClaimSelection)
        ));
    }
}
