//! Which commutator tables an order-16 group can realize.
//!
//! For elements of a finite group `[x,y] = 2κz` (κ = ±1) holds exactly when
//! `xy = κz` and `yx = −xy`, and `[x,y] = 0` when `x` and `y` commute, so the
//! search runs on the Cayley table.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use super::{bracket_table, verify_bracket_table, Assignment, BracketTable};
use crate::group::{MatrixGroup, Subgroup};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Component {
    D,
    F,
    B,
    C,
}

impl Component {
    pub const ALL: [Component; 4] = [Component::D, Component::F, Component::B, Component::C];

    pub fn table_id(self) -> &'static str {
        match self {
            Component::D => "4",
            Component::F => "7",
            Component::B => "9",
            Component::C => "11",
        }
    }

    pub fn label(self) -> &'static str {
        match self {
            Component::D => "d",
            Component::F => "f",
            Component::B => "b",
            Component::C => "c",
        }
    }
}

impl std::fmt::Display for Component {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.label())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ComponentClass {
    /// Every component whose table some generating assignment satisfies.
    pub realizable: Vec<Component>,
    /// First realizable component in the order d, f, b, c.
    pub primary: Option<Component>,
}

impl ComponentClass {
    fn from_realizable(realizable: Vec<Component>) -> Self {
        let primary = realizable.first().copied();
        ComponentClass {
            realizable,
            primary,
        }
    }
}

/// Search `h` for six distinct elements that generate it and satisfy the
/// table. Candidates are tried in element-index order, so the first hit is
/// deterministic. Returns label → element index.
pub fn find_realization(h: &MatrixGroup, table: &BracketTable) -> Option<BTreeMap<String, usize>> {
    let n = h.order();
    let neg: Vec<Option<usize>> = (0..n).map(|g| h.negation(g)).collect();
    let idx = |l: &str| {
        table
            .labels
            .iter()
            .position(|x| x == l)
            .expect("validated table")
    };
    let entries: Vec<(usize, usize, i64, Option<usize>)> = table
        .entries
        .iter()
        .map(|e| (idx(&e.x), idx(&e.y), e.coef, e.z.as_deref().map(idx)))
        .collect();
    let mut search = Search {
        h,
        neg,
        entries,
        slots: vec![None; table.labels.len()],
    };
    search.run().then(|| {
        table
            .labels
            .iter()
            .cloned()
            .zip(search.slots.iter().map(|s| s.expect("complete")))
            .collect()
    })
}

struct Search<'a> {
    h: &'a MatrixGroup,
    neg: Vec<Option<usize>>,
    entries: Vec<(usize, usize, i64, Option<usize>)>,
    slots: Vec<Option<usize>>,
}

impl Search<'_> {
    /// `κ·xy` when `xy = −yx`, for `coef = 2κ`.
    fn bracket_value(&self, x: usize, y: usize, coef: i64) -> Option<usize> {
        let (p, q) = (self.h.mul(x, y), self.h.mul(y, x));
        if self.neg[p] != Some(q) {
            return None;
        }
        match coef {
            2 => Some(p),
            -2 => self.neg[p],
            _ => None,
        }
    }

    fn entry_holds(&self, x: usize, y: usize, coef: i64, z: Option<usize>) -> bool {
        match (coef, z) {
            (0, _) | (_, None) => self.h.mul(x, y) == self.h.mul(y, x),
            (c, Some(z)) => self.bracket_value(x, y, c) == Some(z),
        }
    }

    /// Fill labels forced by entries with both bracket arguments known, then
    /// check every fully assigned entry. Returns the labels it filled, or
    /// `None` on contradiction (after undoing them).
    fn propagate(&mut self) -> Option<Vec<usize>> {
        let mut filled = Vec::new();
        loop {
            let mut progress = false;
            for k in 0..self.entries.len() {
                let (x, y, coef, z) = self.entries[k];
                let (Some(xv), Some(yv)) = (self.slots[x], self.slots[y]) else {
                    continue;
                };
                match z.map(|z| (z, self.slots[z])) {
                    Some((zi, None)) if coef != 0 => match self.bracket_value(xv, yv, coef) {
                        Some(v) => {
                            self.slots[zi] = Some(v);
                            filled.push(zi);
                            progress = true;
                        }
                        None => return self.undo(filled),
                    },
                    Some((_, None)) => {}
                    Some((_, Some(zv))) => {
                        if !self.entry_holds(xv, yv, coef, Some(zv)) {
                            return self.undo(filled);
                        }
                    }
                    None => {
                        if !self.entry_holds(xv, yv, coef, None) {
                            return self.undo(filled);
                        }
                    }
                }
            }
            if !progress {
                return Some(filled);
            }
        }
    }

    fn undo(&mut self, filled: Vec<usize>) -> Option<Vec<usize>> {
        for k in filled {
            self.slots[k] = None;
        }
        None
    }

    fn complete(&self) -> bool {
        let vals: Vec<usize> = self
            .slots
            .iter()
            .map(|s| s.expect("all assigned"))
            .collect();
        let mut sorted = vals.clone();
        sorted.sort_unstable();
        sorted.dedup();
        sorted.len() == vals.len() && self.h.close_indices(&vals).len() == self.h.order()
    }

    fn run(&mut self) -> bool {
        let Some(next) = self.slots.iter().position(Option::is_none) else {
            return self.complete();
        };
        for v in 1..self.h.order() {
            self.slots[next] = Some(v);
            if let Some(filled) = self.propagate() {
                if self.run() {
                    return true;
                }
                self.undo(filled);
            }
        }
        self.slots[next] = None;
        false
    }
}

/// Components realizable inside an order-16 subgroup; empty for any other
/// order.
pub fn classify_component(sub: &Subgroup<'_>) -> ComponentClass {
    classify_group(&sub.to_group())
}

pub fn classify_group(h: &MatrixGroup) -> ComponentClass {
    if h.order() != 16 {
        return ComponentClass::from_realizable(Vec::new());
    }
    let realizable = Component::ALL
        .into_iter()
        .filter(|c| {
            find_realization(h, bracket_table(c.table_id()).expect("shipped table")).is_some()
        })
        .collect();
    ComponentClass::from_realizable(realizable)
}

/// Components whose table a concrete labelled realization satisfies.
pub fn classify_realization(assignment: &Assignment) -> Vec<Component> {
    Component::ALL
        .into_iter()
        .filter(|c| {
            verify_bracket_table(
                assignment,
                bracket_table(c.table_id()).expect("shipped table"),
            )
            .is_ok_and(|r| r.pass)
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::brackets::tests::pauli_assignment;
    use crate::group::{generate_closure, DEFAULT_CAP};

    #[test]
    fn pauli_group_realizes_d_and_f() {
        let a = pauli_assignment();
        let g = generate_closure(
            &[a["b1"].clone(), a["b2"].clone(), a["b3"].clone()],
            DEFAULT_CAP,
        )
        .unwrap();
        let class = classify_group(&g);
        assert_eq!(class.realizable, vec![Component::D, Component::F]);
        assert_eq!(class.primary, Some(Component::D));
        assert_eq!(classify_realization(&a), vec![Component::D]);
    }

    #[test]
    fn realization_satisfies_its_table() {
        let a = pauli_assignment();
        let g = generate_closure(
            &[a["b1"].clone(), a["b2"].clone(), a["b3"].clone()],
            DEFAULT_CAP,
        )
        .unwrap();
        let table = bracket_table("4").unwrap();
        let found = find_realization(&g, table).unwrap();
        let assignment: Assignment = found
            .iter()
            .map(|(k, &v)| (k.clone(), g.element(v).clone()))
            .collect();
        assert!(verify_bracket_table(&assignment, table).unwrap().pass);
    }
}
