//! Check outcomes and their wire shape. A failing report always carries a
//! counterexample payload that is rich enough to rerun the claim from
//! scratch with [`crate::theorems::reverify`].

use std::time::Duration;

use serde::{Deserialize, Serialize};

use crate::semigroup::CayleyTable;
use crate::setfam::Family;
use crate::theorems::ClaimId;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Skipped,
}

/// The concrete inputs of one claim instance. Slots are optional because
/// different claims quantify over different shapes; `n` is always present.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Universe {
    pub n: u8,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub table: Option<CayleyTable>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub f: Option<Family>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub g: Option<Family>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub h: Option<Family>,
}

impl Universe {
    pub fn for_family(n: u8, f: Family) -> Self {
        Universe {
            n,
            table: None,
            f: Some(f),
            g: None,
            h: None,
        }
    }

    pub fn for_family_pair(n: u8, f: Family, g: Family) -> Self {
        Universe {
            n,
            table: None,
            f: Some(f),
            g: Some(g),
            h: None,
        }
    }

    pub fn for_table(t: &CayleyTable) -> Self {
        Universe {
            n: t.order(),
            table: Some(t.clone()),
            f: None,
            g: None,
            h: None,
        }
    }

    pub fn for_table_f(t: &CayleyTable, f: Family) -> Self {
        Universe {
            n: t.order(),
            table: Some(t.clone()),
            f: Some(f),
            g: None,
            h: None,
        }
    }

    pub fn for_table_fg(t: &CayleyTable, f: Family, g: Family) -> Self {
        Universe {
            n: t.order(),
            table: Some(t.clone()),
            f: Some(f),
            g: Some(g),
            h: None,
        }
    }

    pub fn for_table_fgh(t: &CayleyTable, f: Family, g: Family, h: Family) -> Self {
        Universe {
            n: t.order(),
            table: Some(t.clone()),
            f: Some(f),
            g: Some(g),
            h: Some(h),
        }
    }

    /// Compact deterministic description: flattened table digits and raw
    /// family bits.
    pub fn label(&self) -> String {
        let mut s = format!("n={}", self.n);
        if let Some(t) = &self.table {
            s.push_str(" t=");
            for &e in t.entries() {
                s.push_str(&e.to_string());
            }
        }
        for (name, fam) in [("F", &self.f), ("G", &self.g), ("H", &self.h)] {
            if let Some(fam) = fam {
                s.push_str(&format!(" {name}=0x{:x}", fam.raw()));
            }
        }
        s
    }
}

/// What a failing instance points at.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Witness {
    /// A subset of the ground set, as sorted element indices.
    Subset { set: Vec<u8> },
    /// A single element.
    Element { element: u8 },
    /// The claim compares whole objects with no smaller witness.
    Whole,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Counterexample {
    /// Full inputs; feeding these back through the claim evaluator must
    /// reproduce the failure.
    pub universe: Universe,
    pub witness: Witness,
    pub lhs: String,
    pub rhs: String,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CheckReport {
    pub claim: ClaimId,
    /// Compact description of the inputs this verdict is about.
    pub universe: String,
    pub status: Status,
    /// Present exactly when `status` is `Skipped`: the failed hypothesis.
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub reason: Option<String>,
    /// Informational remarks on passing checks (e.g. a strictness witness).
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub note: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub counterexample: Option<Counterexample>,
    /// Wall time, kept out of the serialized data body so identical runs
    /// emit identical bytes; totals surface in the suite summary metadata.
    #[serde(skip, default)]
    pub elapsed: Duration,
}

impl CheckReport {
    pub fn passed(&self) -> bool {
        self.status == Status::Pass
    }
}
