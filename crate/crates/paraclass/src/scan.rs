//! The survey over real quadratic fields `Q(√d)`.

use std::panic::{catch_unwind, AssertUnwindSafe};

use num_traits::{One, Signed};
use paraclass_core::quad_order::is_laurent_domain;
use paraclass_core::scalar::is_squarefree;
use paraclass_core::{Int, Ring};
use rayon::prelude::*;
use serde_json::{json, Value};

use crate::cache::Cache;
use crate::report::quad_report;
use crate::{json, Error, Result};

/// The `d < 100` for which the coordinate ring is listed as a Laurent domain.
pub const PAPER_LAURENT: [i64; 13] = [2, 3, 10, 13, 15, 23, 26, 29, 35, 53, 77, 82, 85];
/// The listed principal ideal domains among them.
pub const PAPER_PID: [i64; 7] = [2, 3, 13, 23, 29, 53, 77];

/// Cache kind for quad reports; bumped with the crate version.
pub const CACHE_KIND: &str = concat!("quad-report/", env!("CARGO_PKG_VERSION"));

#[derive(Clone, Debug, PartialEq)]
pub struct ScanRow {
    pub d: i64,
    /// The [`crate::Subject`] JSON, or the error that stopped it.
    pub result: std::result::Result<Value, String>,
}

impl ScanRow {
    pub fn laurent(&self) -> Option<bool> {
        self.result.as_ref().ok()?["report"]["flags"]["laurent"]["value"].as_bool()
    }

    pub fn class_number(&self) -> Option<Int> {
        json::parse_int(&self.result.as_ref().ok()?["report"]["class_group"]["order"])
    }

    pub fn para_class_count(&self) -> Option<u64> {
        self.result.as_ref().ok()?["report"]["para_class_count"].as_u64()
    }

    fn to_json(&self) -> Value {
        match &self.result {
            Ok(v) => json!({"d": self.d, "subject": v}),
            Err(e) => json!({"d": self.d, "error": e}),
        }
    }
}

/// Independently rechecked unit data for a disagreement with the published list.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Certificate {
    pub d: i64,
    pub unit: String,
    pub unit_norm: Int,
    /// `[D : Z[ε]]`.
    pub index: Int,
    pub laurent: bool,
    /// `N(ε) = ±1`, and the index agrees with the ω-coefficient of `ε`.
    pub checked: bool,
}

impl Certificate {
    pub fn new(d: i64) -> Result<Self> {
        let di = Int::from(d);
        let v = is_laurent_domain(&di)?;
        let ring = Ring::maximal_order(&di)?;
        let unit_norm = ring.norm_form(&v.unit);
        let checked =
            unit_norm.abs().is_one() && v.index == v.unit.y.abs() && v.laurent == v.index.is_one();
        Ok(Certificate {
            d,
            unit: ring.render(&v.unit),
            unit_norm,
            index: v.index,
            laurent: v.laurent,
            checked,
        })
    }

    fn to_json(&self) -> Value {
        json!({
            "d": self.d,
            "unit": self.unit,
            "unit_norm": json::int(&self.unit_norm),
            "index": json::int(&self.index),
            "laurent": self.laurent,
            "checked": self.checked,
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ListDiff {
    pub paper: Vec<i64>,
    pub computed: Vec<i64>,
    pub agree: Vec<i64>,
    pub paper_only: Vec<i64>,
    pub computed_only: Vec<i64>,
}

impl ListDiff {
    fn new(paper: Vec<i64>, computed: Vec<i64>) -> Self {
        let agree = paper
            .iter()
            .copied()
            .filter(|d| computed.contains(d))
            .collect();
        let paper_only = paper
            .iter()
            .copied()
            .filter(|d| !computed.contains(d))
            .collect();
        let computed_only = computed
            .iter()
            .copied()
            .filter(|d| !paper.contains(d))
            .collect();
        ListDiff {
            paper,
            computed,
            agree,
            paper_only,
            computed_only,
        }
    }

    fn to_json(&self) -> Value {
        json!({
            "paper": self.paper,
            "computed": self.computed,
            "agree": self.agree,
            "paper_only": self.paper_only,
            "computed_only": self.computed_only,
        })
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct ScanReport {
    pub max_d: i64,
    pub rows: Vec<ScanRow>,
    pub laurent: ListDiff,
    /// One per entry of `laurent.paper_only` and `laurent.computed_only`.
    pub certificates: Vec<Certificate>,
    /// Class number one among the published Laurent list.
    pub pid: ListDiff,
    /// Class number one among the computed Laurent list.
    pub pid_computed_laurent: Vec<i64>,
}

impl ScanReport {
    pub fn failures(&self) -> Vec<&ScanRow> {
        self.rows.iter().filter(|r| r.result.is_err()).collect()
    }

    pub fn to_json(&self) -> Value {
        json!({
            "max_d": self.max_d,
            "rows": self.rows.iter().map(ScanRow::to_json).collect::<Vec<_>>(),
            "diff": {
                "laurent": self.laurent.to_json(),
                "certificates": self.certificates.iter().map(Certificate::to_json).collect::<Vec<_>>(),
                "pid": self.pid.to_json(),
                "pid_computed_laurent": self.pid_computed_laurent,
            },
            "provenance": {
                "diff.laurent.paper": "paper_sourced",
                "diff.pid.paper": "paper_sourced",
            },
        })
    }
}

fn compute_row(d: i64) -> std::result::Result<Value, String> {
    match catch_unwind(AssertUnwindSafe(|| quad_report(&Int::from(d)))) {
        Ok(Ok(s)) => Ok(s.to_json()),
        Ok(Err(e)) => Err(e.to_string()),
        Err(p) => Err(p
            .downcast_ref::<String>()
            .cloned()
            .or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string()))
            .unwrap_or_else(|| "panic".into())),
    }
}

fn squarefree_upto(max_d: i64) -> Vec<i64> {
    (2..=max_d).filter(is_squarefree).collect()
}

pub fn run_scan(max_d: i64, jobs: usize) -> Result<ScanReport> {
    scan_inner(max_d, jobs, None)
}

/// As [`run_scan`], reusing and extending the cache; rows that failed are
/// not cached.
pub fn run_scan_cached(max_d: i64, jobs: usize, cache: &mut Cache) -> Result<ScanReport> {
    scan_inner(max_d, jobs, Some(cache))
}

fn scan_inner(max_d: i64, jobs: usize, cache: Option<&mut Cache>) -> Result<ScanReport> {
    if max_d < 2 {
        return Err(Error::Usage(format!("max_d = {max_d} must be at least 2")));
    }
    let ds = squarefree_upto(max_d);
    let cached: Vec<Option<Value>> = ds
        .iter()
        .map(|d| {
            cache
                .as_ref()
                .and_then(|c| c.get(CACHE_KIND, &d.to_string()).cloned())
        })
        .collect();
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(jobs.max(1))
        .build()?;
    let rows: Vec<ScanRow> = pool.install(|| {
        ds.par_iter()
            .zip(cached.par_iter())
            .map(|(&d, hit)| ScanRow {
                d,
                result: hit.clone().map_or_else(|| compute_row(d), Ok),
            })
            .collect()
    });
    if let Some(c) = cache {
        c.put_all(rows.iter().filter_map(|r| {
            r.result
                .as_ref()
                .ok()
                .map(|v| (CACHE_KIND.to_string(), r.d.to_string(), v.clone()))
        }))?;
    }

    let computed: Vec<i64> = rows
        .iter()
        .filter(|r| r.laurent() == Some(true))
        .map(|r| r.d)
        .collect();
    let paper: Vec<i64> = PAPER_LAURENT
        .iter()
        .copied()
        .filter(|&d| d <= max_d)
        .collect();
    let laurent = ListDiff::new(paper.clone(), computed.clone());
    let certificates = laurent
        .paper_only
        .iter()
        .chain(&laurent.computed_only)
        .map(|&d| Certificate::new(d))
        .collect::<Result<Vec<_>>>()?;

    let h1 = |d: &i64| {
        rows.iter()
            .find(|r| r.d == *d)
            .and_then(ScanRow::class_number)
            .is_some_and(|h| h.is_one())
    };
    let pid = ListDiff::new(
        PAPER_PID.iter().copied().filter(|&d| d <= max_d).collect(),
        paper.iter().copied().filter(h1).collect(),
    );
    let pid_computed_laurent = computed.iter().copied().filter(h1).collect();
    Ok(ScanReport {
        max_d,
        rows,
        laurent,
        certificates,
        pid,
        pid_computed_laurent,
    })
}
