//! Named groups with stored generators and expected profiles, plus the
//! exhaustive searches that rediscover them.

mod extensions;
mod profile;
mod search;

use std::collections::BTreeMap;
use std::sync::OnceLock;

use serde::{Deserialize, Serialize};

use crate::brackets::{
    bracket_table, find_realization, relation_set, verify_bracket_table, verify_relations,
    Assignment, CheckItem, Component, VerificationReport,
};
use crate::error::{Error, Result};
use crate::group::{generate_closure, MatrixGroup, DEFAULT_CAP};
use crate::matrix::ExactMatrix;

pub use extensions::{
    decompose_order32_subgroups, enumerate_extensions, Decomposition, Extension, ExtensionClass,
};
pub use profile::{
    identify_stable, profile, stable_references, GroupProfile, ProfileOptions, StableReference,
};
pub use search::{
    find_gamma_models, sweep_signatures, GammaModel, Pool, SignatureSpec, SweepResult,
};

/// Group file: `{"name", "dimension", "generators": [matrix, ...]}`.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct GeneratorFile {
    pub name: String,
    pub dimension: usize,
    pub generators: Vec<ExactMatrix>,
}

impl GeneratorFile {
    pub fn from_json(text: &str) -> Result<Self> {
        let file: GeneratorFile = serde_json::from_str(text)?;
        if let Some(bad) = file.generators.iter().find(|g| g.dim() != file.dimension) {
            return Err(Error::Data {
                file: file.name.clone(),
                reason: format!(
                    "generator of dimension {} in a {}-dimensional file",
                    bad.dim(),
                    file.dimension
                ),
            });
        }
        Ok(file)
    }

    pub fn close(&self, cap: usize) -> Result<MatrixGroup> {
        if self.generators.is_empty() {
            return Ok(MatrixGroup::trivial(self.dimension));
        }
        Ok(generate_closure(&self.generators, cap)?)
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct RelationCheck {
    pub set: String,
    pub expect: bool,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct Extraction {
    pub from: String,
    pub component: Component,
}

/// Expected profile fields; absent fields are not checked.
#[derive(Debug, Clone, Default, Serialize, Deserialize)]
pub struct ExpectedProfile {
    pub order: Option<usize>,
    pub class_count: Option<usize>,
    pub center_order: Option<usize>,
    pub abelianization: Option<Vec<usize>>,
    pub rank: Option<usize>,
    pub census: Option<String>,
    pub invariant: Option<i8>,
    pub index2_count: Option<usize>,
    pub index2_iso_classes: Option<usize>,
    pub components: Option<Vec<String>>,
    pub generator_orders: Option<Vec<usize>>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct CatalogEntry {
    pub name: String,
    pub aliases: Vec<String>,
    pub dimension: usize,
    pub generators: Vec<ExactMatrix>,
    /// Labels of the generators, in order, for relation checks.
    pub labels: Vec<String>,
    pub realization: Option<BTreeMap<String, ExactMatrix>>,
    pub extract: Option<Extraction>,
    pub signature: Option<String>,
    pub tables: Vec<String>,
    pub relations: Vec<RelationCheck>,
    pub expected: ExpectedProfile,
    pub notes: String,
}

#[derive(Deserialize)]
struct CatalogFile {
    entries: Vec<CatalogEntry>,
}

static CATALOG: OnceLock<Vec<CatalogEntry>> = OnceLock::new();

pub fn catalog_entries() -> &'static [CatalogEntry] {
    CATALOG.get_or_init(|| {
        let file: CatalogFile = serde_json::from_str(include_str!("../../data/catalog.json"))
            .expect("shipped catalog parses");
        file.entries
    })
}

pub fn catalog_names() -> Vec<&'static str> {
    catalog_entries().iter().map(|e| e.name.as_str()).collect()
}

pub fn catalog_entry(name: &str) -> Result<&'static CatalogEntry> {
    catalog_entries()
        .iter()
        .find(|e| e.name == name || e.aliases.iter().any(|a| a == name))
        .ok_or_else(|| Error::UnknownName(name.into()))
}

/// The group of a catalog entry, built from stored generators or
/// extracted from its parent group.
pub fn catalog_get(name: &str) -> Result<(MatrixGroup, &'static CatalogEntry)> {
    let entry = catalog_entry(name)?;
    let group = match &entry.extract {
        None => generate_closure(&entry.generators, DEFAULT_CAP)?,
        Some(ex) => extract_component(&ex.from, ex.component)?.0,
    };
    Ok((group, entry))
}

/// First order-16 subgroup (in member order) of `parent` that realizes the
/// component's table, with the labelled realization found there.
fn extract_component(parent: &str, component: Component) -> Result<(MatrixGroup, Assignment)> {
    let (g, _) = catalog_get(parent)?;
    let table = bracket_table(component.table_id())?;
    for sub in g.subgroups_of_order(16)? {
        let h = sub.to_group();
        if let Some(found) = find_realization(&h, table) {
            let assignment = found
                .into_iter()
                .map(|(l, i)| (l, h.element(i).clone()))
                .collect();
            return Ok((h, assignment));
        }
    }
    Err(Error::Search(format!(
        "no order-16 subgroup of {parent} realizes component {component}"
    )))
}

/// Labelled matrices of an entry: its generators under their labels plus
/// the stored (or, for extracted entries, discovered) realization.
pub fn entry_assignment(entry: &CatalogEntry) -> Result<Assignment> {
    let mut a: Assignment = entry
        .labels
        .iter()
        .cloned()
        .zip(entry.generators.iter().cloned())
        .collect();
    if let Some(r) = &entry.realization {
        a.extend(r.iter().map(|(k, v)| (k.clone(), v.clone())));
    }
    if let Some(ex) = &entry.extract {
        a.extend(extract_component(&ex.from, ex.component)?.1);
    }
    Ok(a)
}

fn item(check: impl Into<String>, expected: String, computed: String) -> CheckItem {
    let pass = expected == computed;
    CheckItem {
        check: check.into(),
        pass,
        lhs: (!pass).then_some(computed),
        rhs: (!pass).then_some(expected),
    }
}

/// Check an entry's relation sets, tables and every expected-profile field.
pub fn catalog_validate(name: &str) -> Result<VerificationReport> {
    let (group, entry) = catalog_get(name)?;
    let assignment = entry_assignment(entry)?;
    let mut items = Vec::new();

    for rc in &entry.relations {
        let report = verify_relations(&assignment, relation_set(&rc.set)?)?;
        items.push(item(
            format!("relations {}", rc.set),
            rc.expect.to_string(),
            report.pass.to_string(),
        ));
    }
    if let Some(sig) = &entry.signature {
        let spec: SignatureSpec = sig.parse()?;
        let report = verify_relations(&assignment, &spec.relation_set())?;
        items.push(item(
            format!("signature {sig}"),
            "true".into(),
            report.pass.to_string(),
        ));
    }
    for t in &entry.tables {
        let report = verify_bracket_table(&assignment, bracket_table(t)?)?;
        items.push(item(
            format!("table {t}"),
            "true".into(),
            report.pass.to_string(),
        ));
    }

    let p = profile(&group, &ProfileOptions::default());
    let e = &entry.expected;
    let mut field = |label: &str, expected: Option<String>, computed: String| {
        if let Some(x) = expected {
            items.push(item(label, x, computed));
        }
    };
    field("order", e.order.map(|v| v.to_string()), p.order.to_string());
    field(
        "class_count",
        e.class_count.map(|v| v.to_string()),
        p.class_count.to_string(),
    );
    field(
        "center_order",
        e.center_order.map(|v| v.to_string()),
        p.center_order.to_string(),
    );
    field(
        "abelianization",
        e.abelianization.as_ref().map(|v| format!("{v:?}")),
        format!("{:?}", p.abelianization),
    );
    field(
        "rank",
        e.rank.map(|v| v.to_string()),
        format!("{:?}", p.rank.map(|r| r as i64).unwrap_or(-1)),
    );
    field(
        "census",
        e.census.clone(),
        p.census.clone().unwrap_or_default(),
    );
    field(
        "invariant",
        e.invariant.map(|v| v.to_string()),
        p.invariant.map_or("none".into(), |v| v.to_string()),
    );
    field(
        "index2_count",
        e.index2_count.map(|v| v.to_string()),
        p.index2_count.to_string(),
    );
    field(
        "index2_iso_classes",
        e.index2_iso_classes.map(|v| v.to_string()),
        p.index2_iso_classes.to_string(),
    );
    field(
        "components",
        e.components.as_ref().map(|v| v.join(",")),
        p.components.join(","),
    );
    field(
        "generator_orders",
        e.generator_orders.as_ref().map(|v| format!("{v:?}")),
        format!("{:?}", p.generator_orders),
    );
    Ok(VerificationReport::new(
        format!("catalog {}", entry.name),
        items,
    ))
}
