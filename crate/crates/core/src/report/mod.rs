//! Machine-readable and Markdown reports.

mod claims;

use std::collections::BTreeMap;
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::catalog::GroupProfile;

pub use claims::{claim_ids, run_claims, ClaimResult, Status};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub tool_version: String,
    /// Catalog name, file path or command the report was produced for.
    pub input: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub profile: Option<GroupProfile>,
    #[serde(default)]
    pub claims: Vec<ClaimResult>,
    /// Wall-clock milliseconds per phase; empty unless timings were asked for.
    #[serde(default)]
    pub timings: BTreeMap<String, u64>,
    /// Command-specific payload (search results, subgroup lists, ...).
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub result: Option<serde_json::Value>,
}

impl Report {
    pub fn new(input: impl Into<String>) -> Self {
        Report {
            tool_version: env!("CARGO_PKG_VERSION").to_string(),
            input: input.into(),
            profile: None,
            claims: Vec::new(),
            timings: BTreeMap::new(),
            result: None,
        }
    }

    pub fn all_pass(&self) -> bool {
        self.claims.iter().all(|c| c.status == Status::Pass)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes") + "\n"
    }

    pub fn from_json(text: &str) -> crate::Result<Self> {
        Ok(serde_json::from_str(text)?)
    }

    pub fn to_markdown(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(
            out,
            "# gamma-groups {}: {}\n",
            self.tool_version, self.input
        );
        if let Some(p) = &self.profile {
            out.push_str(&profile_markdown(p));
        }
        if !self.claims.is_empty() {
            let passed = self
                .claims
                .iter()
                .filter(|c| c.status == Status::Pass)
                .count();
            let _ = writeln!(out, "## Claims ({passed}/{} pass)\n", self.claims.len());
            out.push_str("| id | status | expected | computed | ms |\n|---|---|---|---|---|\n");
            for c in &self.claims {
                let status = if c.status == Status::Pass {
                    "PASS"
                } else {
                    "FAIL"
                };
                let _ = writeln!(
                    out,
                    "| {} | {status} | {} | {} | {} |",
                    c.claim_id,
                    cell(&c.expected),
                    cell(&c.computed),
                    c.runtime_ms
                );
            }
            out.push('\n');
        }
        if let Some(r) = &self.result {
            let body = serde_json::to_string_pretty(r).expect("value serializes");
            let _ = writeln!(out, "## Result\n\n```json\n{body}\n```\n");
        }
        if !self.timings.is_empty() {
            out.push_str("## Timings\n\n| phase | ms |\n|---|---|\n");
            for (k, v) in &self.timings {
                let _ = writeln!(out, "| {k} | {v} |");
            }
            out.push('\n');
        }
        out
    }
}

fn cell(text: &str) -> String {
    text.replace('|', "\\|")
}

fn profile_markdown(p: &GroupProfile) -> String {
    let mut rows: Vec<(&str, String)> = vec![
        ("order", p.order.to_string()),
        ("dimension", p.dim.to_string()),
        ("conjugacy classes", p.class_count.to_string()),
        ("center order", p.center_order.to_string()),
        ("derived subgroup order", p.derived_order.to_string()),
        ("abelianization", format!("{:?}", p.abelianization)),
        ("exponent", p.exponent.to_string()),
        ("rank", p.rank.map_or("n/a".into(), |r| r.to_string())),
        ("generator orders", format!("{:?}", p.generator_orders)),
        (
            "irreducible census",
            p.census
                .clone()
                .or(p.census_error.clone())
                .unwrap_or_default(),
        ),
        ("irreducible", p.irreducible.to_string()),
        (
            "structural invariant",
            p.invariant.map_or_else(
                || p.invariant_error.clone().unwrap_or_default(),
                |v| v.to_string(),
            ),
        ),
        ("block invariants", format!("{:?}", p.invariant_blocks)),
        (
            "invariant forms",
            p.forms
                .iter()
                .map(|f| f.name())
                .collect::<Vec<_>>()
                .join(", "),
        ),
        ("index-2 subgroups", p.index2_count.to_string()),
        (
            "index-2 isomorphism classes",
            p.index2_iso_classes.to_string(),
        ),
        ("components", p.components.join(", ")),
        (
            "composition",
            p.composition
                .iter()
                .map(|(k, v)| format!("{k}: {v}"))
                .collect::<Vec<_>>()
                .join(", "),
        ),
    ];
    rows.retain(|(_, v)| !v.is_empty());
    let mut out = String::from("## Profile\n\n| property | value |\n|---|---|\n");
    for (k, v) in rows {
        let _ = writeln!(out, "| {k} | {} |", cell(&v));
    }
    out.push('\n');
    out
}
