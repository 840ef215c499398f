//! The machine-readable run report and its text rendering.
//!
//! Reports hold no timing, so identical inputs give byte-identical JSON.

use std::fmt::Write;

use serde::{Deserialize, Serialize};

use lhs_core::checks::SuiteOutcome;
use lhs_core::config::ExtensionConfig;
use lhs_core::oracle::DimTable;
use lhs_core::sseq::SseqReport;

/// Bumped whenever a field changes meaning or is removed.
pub const SCHEMA_VERSION: u32 = 1;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RunReport {
    pub schema_version: u32,
    pub command: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub spec: Option<ExtensionConfig>,
    pub seed: u64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub sseq: Option<SseqReport>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub oracle: Option<OracleReport>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub massey: Option<MasseyReport>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub expansion: Option<Vec<i64>>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub suites: Vec<SuiteOutcome>,
    pub verdicts: Vec<Verdict>,
}

impl RunReport {
    pub fn new(command: &str, seed: u64) -> Self {
        RunReport {
            schema_version: SCHEMA_VERSION,
            command: command.to_string(),
            spec: None,
            seed,
            sseq: None,
            oracle: None,
            massey: None,
            expansion: None,
            suites: Vec::new(),
            verdicts: Vec::new(),
        }
    }

    /// Exit status 0 iff this holds. Skipped verdicts do not count against it.
    pub fn all_pass(&self) -> bool {
        self.verdicts.iter().all(|v| !matches!(v.status, Status::Mismatch { .. }))
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report serializes");
        s.push('\n');
        s
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct OracleReport {
    pub group_order: usize,
    pub max_degree: usize,
    /// Ranks of the minimal resolution of the extension group.
    pub cohomology: Vec<usize>,
    /// Double-complex pages `E_1 … E_{r_max}`.
    pub pages: Vec<DimTable>,
    pub total_cohomology: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MasseyReport {
    pub p: u32,
    pub quotient: Vec<u32>,
    pub classes: [String; 3],
    pub representative: String,
    pub indeterminacy: Vec<String>,
    pub contains_zero: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Verdict {
    pub name: String,
    #[serde(flatten)]
    pub status: Status,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "status", rename_all = "snake_case")]
pub enum Status {
    Match,
    Mismatch { detail: String },
    Skipped { reason: String },
}

impl Verdict {
    pub fn compare<T: PartialEq + std::fmt::Debug>(name: &str, got: &T, want: &T) -> Self {
        let status = if got == want {
            Status::Match
        } else {
            Status::Mismatch {
                detail: format!("got {got:?}, expected {want:?}"),
            }
        };
        Verdict {
            name: name.to_string(),
            status,
        }
    }
}

/// `dims[j][i]` as a grid with row `j` running down from the top.
pub fn grid(dims: &[Vec<usize>]) -> String {
    let width = dims.iter().flatten().map(|d| d.to_string().len()).max().unwrap_or(1);
    let label = dims.len().saturating_sub(1).to_string().len();
    let mut out = String::new();
    for (j, row) in dims.iter().enumerate().rev() {
        let cells: Vec<String> = row.iter().map(|d| format!("{d:>width$}")).collect();
        let _ = writeln!(out, "  {j:>label$} | {}", cells.join(" "));
    }
    let _ = writeln!(out, "  {:>label$} + i ->", "j");
    out
}

pub fn render(report: &RunReport) -> String {
    let mut out = String::new();
    if let Some(spec) = &report.spec {
        let name = spec.name.as_deref().unwrap_or("extension");
        let _ = writeln!(
            out,
            "{name}: p = {}, kernel C_{}, quotient exponents {:?}, xi = {}",
            spec.p,
            spec.p.pow(spec.kernel_m),
            spec.quotient,
            spec.xi
        );
    }
    if let Some(s) = &report.sseq {
        if s.experimental {
            let _ = writeln!(out, "kernel of order 2: rows use u^2 = t (experimental)");
        }
        for o in &s.overrides {
            let _ = writeln!(out, "override d_{}({}) = {}  [{}]", o.r, o.source, o.value, o.provenance);
        }
        for page in &s.pages {
            let rank = page.differential_rank.map_or(String::new(), |r| format!(", rank of d_{} = {r}", page.r));
            let _ = writeln!(out, "E_{}{rank}", page.r);
            out.push_str(&grid(&page.dims));
        }
        let _ = writeln!(
            out,
            "Poincare coefficients through degree {}: {:?}",
            s.poincare.valid_through, s.poincare.coefficients
        );
        if !s.later_differentials.is_empty() {
            let _ = writeln!(
                out,
                "{} bidegrees could still support a differential beyond E_{}",
                s.later_differentials.len(),
                s.r_max
            );
        }
    }
    if let Some(o) = &report.oracle {
        let _ = writeln!(out, "group of order {}: dim H^n = {:?}", o.group_order, o.cohomology);
        for page in &o.pages {
            let _ = writeln!(out, "double complex E_{}", page.r);
            out.push_str(&grid(&page.dims));
        }
        let _ = writeln!(out, "total complex: {:?}", o.total_cohomology);
    }
    if let Some(m) = &report.massey {
        let [a, b, c] = &m.classes;
        let _ = writeln!(out, "<{a}, {b}, {c}> = {}", m.representative);
        let _ = writeln!(out, "indeterminacy: [{}]", m.indeterminacy.join(", "));
        let _ = writeln!(out, "contains zero: {}", m.contains_zero);
    }
    if let Some(e) = &report.expansion {
        let _ = writeln!(out, "{e:?}");
    }
    for s in &report.suites {
        let tag = if s.passed { "pass" } else { "FAIL" };
        let _ = writeln!(out, "{tag} {} ({} checks)", s.suite, s.checked);
        for f in &s.failures {
            let _ = writeln!(out, "    {f}");
        }
    }
    for v in &report.verdicts {
        match &v.status {
            Status::Match => {
                let _ = writeln!(out, "match: {}", v.name);
            }
            Status::Mismatch { detail } => {
                let _ = writeln!(out, "MISMATCH: {}: {detail}", v.name);
            }
            Status::Skipped { reason } => {
                let _ = writeln!(out, "skipped: {}: {reason}", v.name);
            }
        }
    }
    out
}
