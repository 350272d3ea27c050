use std::collections::BTreeMap;
use std::sync::OnceLock;

use serde::{Deserialize, Serialize};

use super::catalog_get;
use crate::brackets::classify_group;
use crate::group::{fingerprint, is_isomorphic, Fingerprint, MatrixGroup};
use crate::rep::{block_forms, block_invariants, irrep_census, FormKind};

#[derive(Debug, Clone, Copy)]
pub struct ProfileOptions {
    /// Classify or identify every index-2 subgroup.
    pub subgroups: bool,
    /// Compute invariant bilinear forms per block.
    pub forms: bool,
}

impl Default for ProfileOptions {
    fn default() -> Self {
        ProfileOptions {
            subgroups: true,
            forms: true,
        }
    }
}

/// Everything the tool reports about one group.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GroupProfile {
    pub order: usize,
    pub dim: usize,
    pub class_count: usize,
    pub center_order: usize,
    pub derived_order: usize,
    pub abelianization: Vec<usize>,
    pub exponent: usize,
    pub rank: Option<usize>,
    pub generator_orders: Vec<usize>,
    pub census: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub census_error: Option<String>,
    pub irreducible: bool,
    pub invariant: Option<i8>,
    pub invariant_blocks: Vec<i8>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub invariant_error: Option<String>,
    pub forms: Vec<FormKind>,
    pub index2_count: usize,
    pub index2_iso_classes: usize,
    /// Order 16: realizable components. Order 32: distinct primary
    /// components of the index-2 subgroups. Order 64: distinct stable types
    /// among the index-2 subgroups.
    pub components: Vec<String>,
    /// Label → number of index-2 subgroups carrying it.
    pub composition: BTreeMap<String, usize>,
}

pub fn profile(g: &MatrixGroup, opts: &ProfileOptions) -> GroupProfile {
    let (census, census_error) = match irrep_census(g) {
        Ok(c) => (Some(c.summary()), None),
        Err(e) => (None, Some(e.to_string())),
    };
    let (invariant, invariant_blocks, irreducible, invariant_error) = match block_invariants(g) {
        Ok(b) => (Some(b.value), b.block_values(), b.irreducible, None),
        Err(e) => (None, Vec::new(), false, Some(e.to_string())),
    };
    let forms = if opts.forms && invariant.is_some() {
        block_forms(g)
            .map(|fs| fs.into_iter().map(|f| f.kind).collect())
            .unwrap_or_default()
    } else {
        Vec::new()
    };

    let mut p = GroupProfile {
        order: g.order(),
        dim: g.dim(),
        class_count: g.conjugacy_classes().len(),
        center_order: g.center().order(),
        derived_order: g.derived_subgroup().order(),
        abelianization: g.abelianization_invariants(),
        exponent: g.exponent(),
        rank: g.minimal_generator_count().ok(),
        generator_orders: g
            .generator_indices()
            .iter()
            .map(|&x| g.element_order(x))
            .collect(),
        census,
        census_error,
        irreducible,
        invariant,
        invariant_blocks,
        invariant_error,
        forms,
        index2_count: 0,
        index2_iso_classes: 0,
        components: Vec::new(),
        composition: BTreeMap::new(),
    };

    if g.order() == 16 {
        p.components = classify_group(g)
            .realizable
            .iter()
            .map(|c| c.label().to_string())
            .collect();
    }
    if opts.subgroups && g.order().is_multiple_of(2) {
        let subs: Vec<MatrixGroup> = g
            .subgroups_of_order(g.order() / 2)
            .expect("even order")
            .iter()
            .map(|s| s.to_group())
            .collect();
        p.index2_count = subs.len();
        p.index2_iso_classes = iso_class_count(&subs);
        let labels: Vec<String> = match g.order() {
            32 => subs
                .iter()
                .map(|h| {
                    classify_group(h)
                        .primary
                        .map_or("unclassified".into(), |c| c.label().to_string())
                })
                .collect(),
            64 => subs
                .iter()
                .map(|h| identify_stable(h).unwrap_or("unidentified").to_string())
                .collect(),
            _ => Vec::new(),
        };
        for l in labels {
            *p.composition.entry(l).or_insert(0) += 1;
        }
        if g.order() == 32 || g.order() == 64 {
            p.components = p
                .composition
                .keys()
                .filter(|k| *k != "unclassified" && *k != "unidentified")
                .cloned()
                .collect();
        }
    }
    p
}

/// Number of isomorphism classes among `groups`.
pub(crate) fn iso_class_count(groups: &[MatrixGroup]) -> usize {
    iso_classes(groups).len()
}

/// Partition indices of `groups` into isomorphism classes, each class
/// listed in ascending index order and classes ordered by first member.
pub(crate) fn iso_classes(groups: &[MatrixGroup]) -> Vec<Vec<usize>> {
    let prints: Vec<Fingerprint> = groups.iter().map(fingerprint).collect();
    let mut classes: Vec<Vec<usize>> = Vec::new();
    for (i, g) in groups.iter().enumerate() {
        let home = classes
            .iter_mut()
            .find(|c| prints[c[0]] == prints[i] && is_isomorphic(&groups[c[0]], g).is_some());
        match home {
            Some(c) => c.push(i),
            None => classes.push(vec![i]),
        }
    }
    classes
}

/// The five order-32 reference groups with the data used to recognize them.
#[derive(Debug)]
pub struct StableReference {
    pub name: &'static str,
    pub group: MatrixGroup,
    pub fingerprint: Fingerprint,
    pub invariant: Option<i8>,
    pub composition: BTreeMap<String, usize>,
}

pub const STABLE_NAMES: [&str; 5] = ["D_I", "D_II", "D_III", "D_IV", "D_V"];

pub fn stable_references() -> &'static [StableReference] {
    static REFS: OnceLock<Vec<StableReference>> = OnceLock::new();
    REFS.get_or_init(|| {
        STABLE_NAMES
            .iter()
            .map(|&name| {
                let (group, _) = catalog_get(name).expect("catalog entry");
                let p = profile(
                    &group,
                    &ProfileOptions {
                        subgroups: true,
                        forms: false,
                    },
                );
                StableReference {
                    name,
                    fingerprint: fingerprint(&group),
                    invariant: p.invariant,
                    composition: p.composition,
                    group,
                }
            })
            .collect()
    })
}

/// Name of the stable type `h` matches: isomorphic, same structural
/// invariant and same index-2 composition.
pub fn identify_stable(h: &MatrixGroup) -> Option<&'static str> {
    if h.order() != 32 {
        return None;
    }
    let print = fingerprint(h);
    let candidates: Vec<&StableReference> = stable_references()
        .iter()
        .filter(|r| r.fingerprint == print && is_isomorphic(h, &r.group).is_some())
        .collect();
    if candidates.is_empty() {
        return None;
    }
    let p = profile(
        h,
        &ProfileOptions {
            subgroups: true,
            forms: false,
        },
    );
    candidates
        .into_iter()
        .find(|r| r.invariant == p.invariant && r.composition == p.composition)
        .map(|r| r.name)
}
