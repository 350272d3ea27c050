//! Commutator tables and word relations, verified exactly on labelled
//! matrix realizations.

mod classify;
mod word;

use std::collections::{BTreeMap, BTreeSet};
use std::sync::OnceLock;

use serde::{Deserialize, Serialize};

use crate::error::{BracketError, MatrixError};
use crate::matrix::ExactMatrix;
use crate::scalar::GaussianRational;

pub use classify::{
    classify_component, classify_group, classify_realization, find_realization, Component,
    ComponentClass,
};
pub use word::{Assignment, Relation, Word};

/// `xy − yx`.
pub fn commutator(x: &ExactMatrix, y: &ExactMatrix) -> Result<ExactMatrix, MatrixError> {
    x.commutator(y)
}

/// `[x,y] = coef·z`, with `z = None` meaning zero.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BracketEntry {
    pub x: String,
    pub y: String,
    pub coef: i64,
    pub z: Option<String>,
}

impl std::fmt::Display for BracketEntry {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match &self.z {
            Some(z) if self.coef != 0 => write!(f, "[{},{}] = {}*{}", self.x, self.y, self.coef, z),
            _ => write!(f, "[{},{}] = 0", self.x, self.y),
        }
    }
}

fn parse_entry(id: &str, text: &str) -> Result<BracketEntry, BracketError> {
    let invalid = |reason: &str| BracketError::InvalidTable {
        id: id.into(),
        reason: format!("{reason}: `{text}`"),
    };
    let (lhs, rhs) = text.split_once('=').ok_or_else(|| invalid("missing `=`"))?;
    let inner = lhs
        .trim()
        .strip_prefix('[')
        .and_then(|s| s.strip_suffix(']'))
        .ok_or_else(|| invalid("bad bracket"))?;
    let (x, y) = inner
        .split_once(',')
        .ok_or_else(|| invalid("bad bracket"))?;
    let rhs = rhs.trim();
    let (coef, z) = if rhs == "0" {
        (0, None)
    } else {
        let (c, z) = rhs
            .split_once('*')
            .ok_or_else(|| invalid("expected coef*label"))?;
        (
            c.trim().parse().map_err(|_| invalid("bad coefficient"))?,
            Some(z.trim().to_string()),
        )
    };
    Ok(BracketEntry {
        x: x.trim().into(),
        y: y.trim().into(),
        coef,
        z,
    })
}

#[derive(Debug, Clone)]
pub struct BracketTable {
    pub id: String,
    pub component: Option<Component>,
    pub anchor: String,
    pub labels: Vec<String>,
    pub entries: Vec<BracketEntry>,
}

#[derive(Deserialize)]
struct RawTable {
    id: String,
    component: Option<Component>,
    anchor: String,
    labels: Vec<String>,
    entries: Vec<String>,
}

#[derive(Deserialize)]
struct RawTables {
    tables: Vec<RawTable>,
}

impl BracketTable {
    fn from_raw(raw: RawTable) -> Result<Self, BracketError> {
        let entries: Vec<BracketEntry> = raw
            .entries
            .iter()
            .map(|e| parse_entry(&raw.id, e))
            .collect::<Result<_, _>>()?;
        let invalid = |reason: String| BracketError::InvalidTable {
            id: raw.id.clone(),
            reason,
        };
        let declared: BTreeSet<&str> = raw.labels.iter().map(String::as_str).collect();
        let mut seen: BTreeMap<(&str, &str), (i64, Option<&str>)> = BTreeMap::new();
        for e in &entries {
            for l in [Some(&e.x), Some(&e.y), e.z.as_ref()].into_iter().flatten() {
                if !declared.contains(l.as_str()) {
                    return Err(invalid(format!("undeclared label `{l}`")));
                }
            }
            // Antisymmetry: a reversed entry must carry the negated value.
            if let Some(&(c, z)) = seen.get(&(e.y.as_str(), e.x.as_str())) {
                if c != -e.coef || z != e.z.as_deref() {
                    return Err(invalid(format!("[{},{}] is not antisymmetric", e.x, e.y)));
                }
            }
            if e.x == e.y && e.coef != 0 {
                return Err(invalid(format!("[{0},{0}] must vanish", e.x)));
            }
            seen.insert((e.x.as_str(), e.y.as_str()), (e.coef, e.z.as_deref()));
        }
        Ok(BracketTable {
            id: raw.id,
            component: raw.component,
            anchor: raw.anchor,
            labels: raw.labels,
            entries,
        })
    }
}

/// Parse a table collection in the shipped JSON schema.
pub fn parse_tables(json: &str) -> Result<Vec<BracketTable>, BracketError> {
    let raw: RawTables = serde_json::from_str(json).map_err(|e| BracketError::InvalidTable {
        id: "*".into(),
        reason: e.to_string(),
    })?;
    raw.tables.into_iter().map(BracketTable::from_raw).collect()
}

static TABLES: OnceLock<Vec<BracketTable>> = OnceLock::new();

pub fn bracket_tables() -> &'static [BracketTable] {
    TABLES.get_or_init(|| {
        parse_tables(include_str!("../../data/bracket_tables.json"))
            .expect("shipped bracket tables are valid")
    })
}

pub fn bracket_table(id: &str) -> Result<&'static BracketTable, BracketError> {
    bracket_tables()
        .iter()
        .find(|t| t.id == id)
        .ok_or_else(|| BracketError::UnknownTable(id.into()))
}

#[derive(Debug, Clone)]
pub struct RelationSet {
    pub id: String,
    pub anchor: String,
    pub labels: Vec<String>,
    /// Labels defined as words over earlier labels, evaluated in order.
    pub derived: Vec<(String, Word)>,
    pub relations: Vec<Relation>,
}

#[derive(Deserialize)]
struct RawSet {
    id: String,
    anchor: String,
    labels: Vec<String>,
    derived: BTreeMap<String, String>,
    relations: Vec<String>,
}

#[derive(Deserialize)]
struct RawSets {
    relation_sets: Vec<RawSet>,
}

impl RelationSet {
    pub fn new(
        id: impl Into<String>,
        anchor: impl Into<String>,
        labels: Vec<String>,
        derived: Vec<(String, Word)>,
        relations: Vec<Relation>,
    ) -> Result<Self, BracketError> {
        let set = RelationSet {
            id: id.into(),
            anchor: anchor.into(),
            labels,
            derived,
            relations,
        };
        let mut known: BTreeSet<&str> = set.labels.iter().map(String::as_str).collect();
        for (name, word) in &set.derived {
            if let Some(bad) = word.labels().find(|l| !known.contains(l)) {
                return Err(BracketError::MalformedWord {
                    word: word.to_string(),
                    reason: format!("unknown label `{bad}`"),
                });
            }
            known.insert(name);
        }
        for r in &set.relations {
            if let Some(bad) = r
                .lhs
                .labels()
                .chain(r.rhs.labels())
                .find(|l| !known.contains(l))
            {
                return Err(BracketError::MalformedWord {
                    word: r.to_string(),
                    reason: format!("unknown label `{bad}`"),
                });
            }
        }
        Ok(set)
    }
}

pub fn parse_relation_sets(json: &str) -> Result<Vec<RelationSet>, BracketError> {
    let raw: RawSets = serde_json::from_str(json).map_err(|e| BracketError::MalformedWord {
        word: "*".into(),
        reason: e.to_string(),
    })?;
    raw.relation_sets
        .into_iter()
        .map(|s| {
            // Derived labels may depend on each other only in sorted order.
            let derived = s
                .derived
                .iter()
                .map(|(k, v)| Ok((k.clone(), Word::parse(v)?)))
                .collect::<Result<_, _>>()?;
            let relations = s
                .relations
                .iter()
                .map(|r| Relation::parse(r))
                .collect::<Result<_, _>>()?;
            RelationSet::new(s.id, s.anchor, s.labels, derived, relations)
        })
        .collect()
}

static SETS: OnceLock<Vec<RelationSet>> = OnceLock::new();

pub fn relation_sets() -> &'static [RelationSet] {
    SETS.get_or_init(|| {
        parse_relation_sets(include_str!("../../data/relation_sets.json"))
            .expect("shipped relation sets are valid")
    })
}

pub fn relation_set(id: &str) -> Result<&'static RelationSet, BracketError> {
    relation_sets()
        .iter()
        .find(|s| s.id == id)
        .ok_or_else(|| BracketError::UnknownRelationSet(id.into()))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CheckItem {
    pub check: String,
    pub pass: bool,
    /// Both sides, printed only on failure.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub lhs: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub rhs: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct VerificationReport {
    pub subject: String,
    pub pass: bool,
    pub items: Vec<CheckItem>,
}

impl VerificationReport {
    pub fn new(subject: impl Into<String>, items: Vec<CheckItem>) -> Self {
        let pass = items.iter().all(|i| i.pass);
        VerificationReport {
            subject: subject.into(),
            pass,
            items,
        }
    }

    pub fn failures(&self) -> impl Iterator<Item = &CheckItem> {
        self.items.iter().filter(|i| !i.pass)
    }
}

fn check_item(check: String, lhs: &ExactMatrix, rhs: &ExactMatrix) -> CheckItem {
    let pass = lhs == rhs;
    CheckItem {
        check,
        pass,
        lhs: (!pass).then(|| lhs.to_string()),
        rhs: (!pass).then(|| rhs.to_string()),
    }
}

fn common_dim(assignment: &Assignment, labels: &[String]) -> Result<usize, BracketError> {
    let first = labels
        .first()
        .ok_or_else(|| BracketError::UnassignedLabel(String::new()))?;
    Ok(assignment
        .get(first)
        .ok_or_else(|| BracketError::UnassignedLabel(first.clone()))?
        .dim())
}

fn lookup<'a>(assignment: &'a Assignment, label: &str) -> Result<&'a ExactMatrix, BracketError> {
    assignment
        .get(label)
        .ok_or_else(|| BracketError::UnassignedLabel(label.into()))
}

/// Check every table entry `[x,y] = coef·z` exactly.
pub fn verify_bracket_table(
    assignment: &Assignment,
    table: &BracketTable,
) -> Result<VerificationReport, BracketError> {
    for l in &table.labels {
        lookup(assignment, l)?;
    }
    let dim = common_dim(assignment, &table.labels)?;
    let items = table
        .entries
        .iter()
        .map(|e| {
            let (x, y) = (lookup(assignment, &e.x)?, lookup(assignment, &e.y)?);
            let lhs = x.commutator(y).map_err(|err| BracketError::InvalidTable {
                id: table.id.clone(),
                reason: err.to_string(),
            })?;
            let rhs = match &e.z {
                Some(z) if e.coef != 0 => {
                    lookup(assignment, z)?.scale(&GaussianRational::from(e.coef))
                }
                _ => ExactMatrix::zero(dim),
            };
            Ok(check_item(e.to_string(), &lhs, &rhs))
        })
        .collect::<Result<Vec<_>, BracketError>>()?;
    Ok(VerificationReport::new(
        format!("table {}", table.id),
        items,
    ))
}

/// Evaluate every relation of the set exactly.
pub fn verify_relations(
    assignment: &Assignment,
    set: &RelationSet,
) -> Result<VerificationReport, BracketError> {
    let dim = common_dim(assignment, &set.labels)?;
    let mut full = Assignment::new();
    for l in &set.labels {
        full.insert(l.clone(), lookup(assignment, l)?.clone());
    }
    for (name, word) in &set.derived {
        let value = word.evaluate(&full, dim)?;
        full.insert(name.clone(), value);
    }
    let items = set
        .relations
        .iter()
        .map(|r| {
            Ok(check_item(
                r.to_string(),
                &r.lhs.evaluate(&full, dim)?,
                &r.rhs.evaluate(&full, dim)?,
            ))
        })
        .collect::<Result<Vec<_>, BracketError>>()?;
    Ok(VerificationReport::new(set.id.clone(), items))
}

/// Multiply the named labels by a scalar, e.g. `b_k → i·b_k`.
pub fn substitute_scaled(
    assignment: &Assignment,
    labels: &[&str],
    factor: &GaussianRational,
) -> Assignment {
    assignment
        .iter()
        .map(|(k, v)| {
            (
                k.clone(),
                if labels.contains(&k.as_str()) {
                    v.scale(factor)
                } else {
                    v.clone()
                },
            )
        })
        .collect()
}

#[cfg(test)]
pub(crate) mod tests {
    use super::*;

    fn m(s: &str) -> ExactMatrix {
        s.parse().unwrap()
    }

    pub(crate) fn pauli_assignment() -> Assignment {
        let (sx, sy, sz) = (m("[[0,1],[1,0]]"), m("[[0,-i],[i,0]]"), m("[[1,0],[0,-1]]"));
        let mut a = Assignment::new();
        a.insert("a1".into(), sz.mul(&sy).unwrap());
        a.insert("a2".into(), sx.mul(&sz).unwrap());
        a.insert("a3".into(), sy.mul(&sx).unwrap());
        a.insert("b1".into(), sx);
        a.insert("b2".into(), sy);
        a.insert("b3".into(), sz);
        a.insert("c".into(), m("[[i,0],[0,i]]"));
        a
    }

    #[test]
    fn shipped_data_loads() {
        assert_eq!(bracket_tables().len(), 5);
        assert_eq!(bracket_table("4").unwrap().entries.len(), 15);
        assert_eq!(bracket_table("6").unwrap().entries.len(), 3);
        assert!(matches!(
            bracket_table("5"),
            Err(BracketError::UnknownTable(_))
        ));
        assert!(relation_set("delta1.center").unwrap().derived.len() == 1);
    }

    #[test]
    fn pauli_tables() {
        let a = pauli_assignment();
        assert!(
            verify_bracket_table(&a, bracket_table("4").unwrap())
                .unwrap()
                .pass
        );
        let nine = verify_bracket_table(&a, bracket_table("9").unwrap()).unwrap();
        assert!(!nine.pass);
        assert!(nine
            .failures()
            .all(|f| f.check.starts_with("[b") && f.lhs.is_some()));
        for id in ["pauli.b_from_ac", "pauli.b_from_ia", "pauli.boost_products"] {
            assert!(
                verify_relations(&a, relation_set(id).unwrap())
                    .unwrap()
                    .pass,
                "{id}"
            );
        }
    }

    #[test]
    fn substitution_maps_table_four_to_nine() {
        let a = substitute_scaled(
            &pauli_assignment(),
            &["b1", "b2", "b3"],
            &GaussianRational::i(),
        );
        assert!(
            verify_bracket_table(&a, bracket_table("9").unwrap())
                .unwrap()
                .pass
        );
    }

    #[test]
    fn table_validation() {
        let bad = r#"{"tables":[{"id":"x","component":null,"anchor":"","labels":["p","q"],
            "entries":["[p,q] = 2*q","[q,p] = 2*q"]}]}"#;
        assert!(matches!(
            parse_tables(bad),
            Err(BracketError::InvalidTable { .. })
        ));
        let undeclared = r#"{"tables":[{"id":"x","component":null,"anchor":"","labels":["p"],
            "entries":["[p,r] = 0"]}]}"#;
        assert!(matches!(
            parse_tables(undeclared),
            Err(BracketError::InvalidTable { .. })
        ));
    }

    #[test]
    fn unassigned_label_is_an_error() {
        let mut a = pauli_assignment();
        a.remove("b3");
        assert!(matches!(
            verify_bracket_table(&a, bracket_table("4").unwrap()),
            Err(BracketError::UnassignedLabel(l)) if l == "b3"
        ));
    }
}
