use std::collections::BTreeMap;

use rayon::prelude::*;
use serde::Serialize;

use super::catalog_get;
use super::profile::{identify_stable, iso_classes, profile, ProfileOptions};
use super::search::{Pool, SignatureSpec};
use crate::brackets::{verify_relations, Assignment, Relation, RelationSet, Word};
use crate::error::{Error, Result};
use crate::group::{generate_closure, is_isomorphic, MatrixGroup, DEFAULT_CAP};
use crate::matrix::ExactMatrix;
use crate::scalar::GaussianRational;

/// A five-generator group obtained by adjoining one more generator that
/// anticommutes with all four generators of a base group.
#[derive(Debug, Clone, Serialize)]
pub struct Extension {
    pub base: String,
    pub square: i8,
    pub generators: Vec<ExactMatrix>,
    pub order: usize,
    /// Base relations lifted to the new generators, plus the relations of
    /// the added generator.
    pub relations_pass: bool,
    /// Whether the product of all five generators is central.
    pub top_product_central: bool,
    /// Its square as `±1`, when scalar.
    pub top_product_square: Option<i8>,
    pub invariant: Option<i8>,
}

#[derive(Debug, Clone, Serialize)]
pub struct ExtensionClass {
    pub representative: Extension,
    /// Distinct extension groups in the class.
    pub members: usize,
    /// Catalog five-generator group it matches, if any.
    pub identified: Option<String>,
}

const EXTENDED: [&str; 3] = ["Delta1", "Delta2", "Delta3"];

/// Relations of the base signature extended by `g5`, which squares to
/// `square` and anticommutes with `g1..g4`.
pub fn extension_relations(base: &SignatureSpec, square: i8) -> RelationSet {
    let base_set = base.relation_set();
    let mut labels = base_set.labels.clone();
    labels.push("g5".into());
    let mut relations = base_set.relations.clone();
    let mut add = |r: String| relations.push(Relation::parse(&r).expect("well-formed"));
    add(format!("g5^2 = {square}"));
    for k in 1..=base.len() {
        add(format!("g{k} g5 = -g5 g{k}"));
    }
    let derived = Vec::<(String, Word)>::new();
    RelationSet::new(
        format!("extension {base} / {square}"),
        "generated",
        labels,
        derived,
        relations,
    )
    .expect("labels declared")
}

fn scalar_sign(m: &ExactMatrix) -> Option<i8> {
    let s = m.as_scalar()?;
    if s.is_one() {
        Some(1)
    } else if (-s).is_one() {
        Some(-1)
    } else {
        None
    }
}

fn anticommutes(a: &ExactMatrix, b: &ExactMatrix) -> bool {
    a.mul_unchecked(b) == b.mul_unchecked(a).neg()
}

/// Extensions of the named order-32 catalog group by a generator squaring
/// to `square`, grouped into isomorphism classes.
///
/// Four-dimensional bases are doubled: each `g` becomes `g ⊕ g` and the new
/// generator is `w ⊕ −w` with `w` a phase times the product of the four base
/// generators. Eight-dimensional bases draw the new generator from `pool`.
pub fn enumerate_extensions(base: &str, square: i8, pool: &Pool) -> Result<Vec<ExtensionClass>> {
    let (_, entry) = catalog_get(base)?;
    let spec: SignatureSpec = entry
        .signature
        .as_deref()
        .ok_or_else(|| Error::Search(format!("`{base}` has no signature to extend")))?
        .parse()?;
    if square.abs() != 1 {
        return Err(Error::Search(format!(
            "square must be 1 or -1, got {square}"
        )));
    }
    let target = ExactMatrix::scalar(entry.dimension, GaussianRational::from(square as i64));

    let gen_sets: Vec<Vec<ExactMatrix>> = if entry.dimension == 4 {
        let product = entry
            .generators
            .iter()
            .skip(1)
            .fold(entry.generators[0].clone(), |acc, g| acc.mul_unchecked(g));
        [GaussianRational::one(), GaussianRational::i()]
            .iter()
            .map(|phase| product.scale(phase))
            .filter(|w| {
                w.mul_unchecked(w) == target && entry.generators.iter().all(|g| anticommutes(g, w))
            })
            .map(|w| {
                let mut gens: Vec<ExactMatrix> =
                    entry.generators.iter().map(|g| g.direct_sum(g)).collect();
                gens.push(w.direct_sum(&w.neg()));
                gens
            })
            .collect()
    } else {
        if pool.group.dim() != entry.dimension {
            return Err(Error::Search(format!(
                "pool `{}` has dimension {}, base `{base}` has {}",
                pool.name,
                pool.group.dim(),
                entry.dimension
            )));
        }
        pool.group
            .elements()
            .iter()
            .filter(|w| {
                w.mul_unchecked(w) == target && entry.generators.iter().all(|g| anticommutes(g, w))
            })
            .map(|w| {
                let mut gens = entry.generators.clone();
                gens.push(w.clone());
                gens
            })
            .collect()
    };

    let relations = extension_relations(&spec, square);
    let built: Vec<(MatrixGroup, Extension)> = gen_sets
        .into_par_iter()
        .map(|gens| {
            let group = generate_closure(&gens, DEFAULT_CAP)?;
            let assignment: Assignment = (1..=gens.len())
                .map(|k| format!("g{k}"))
                .zip(gens.iter().cloned())
                .collect();
            let top = gens
                .iter()
                .skip(1)
                .fold(gens[0].clone(), |acc, g| acc.mul_unchecked(g));
            let inv = profile(
                &group,
                &ProfileOptions {
                    subgroups: false,
                    forms: false,
                },
            )
            .invariant;
            let ext = Extension {
                base: entry.name.clone(),
                square,
                order: group.order(),
                relations_pass: verify_relations(&assignment, &relations)?.pass,
                top_product_central: gens
                    .iter()
                    .all(|g| g.mul_unchecked(&top) == top.mul_unchecked(g)),
                top_product_square: scalar_sign(&top.mul_unchecked(&top)),
                invariant: inv,
                generators: gens,
            };
            Ok((group, ext))
        })
        .collect::<Result<_>>()?;

    // The same group can arise from several new generators.
    let mut distinct: Vec<(MatrixGroup, Extension)> = Vec::new();
    for (g, e) in built {
        let same = |h: &MatrixGroup| {
            h.order() == g.order() && g.elements().iter().all(|x| h.index_of(x).is_some())
        };
        if !distinct.iter().any(|(h, _)| same(h)) {
            distinct.push((g, e));
        }
    }

    let groups: Vec<MatrixGroup> = distinct.iter().map(|(g, _)| g.clone()).collect();
    let mut classes = Vec::new();
    for iso_class in iso_classes(&groups) {
        let mut by_invariant: BTreeMap<Option<i8>, Vec<usize>> = BTreeMap::new();
        for i in iso_class {
            by_invariant
                .entry(distinct[i].1.invariant)
                .or_default()
                .push(i);
        }
        for members in by_invariant.into_values() {
            let (group, rep) = &distinct[members[0]];
            classes.push(ExtensionClass {
                representative: rep.clone(),
                members: members.len(),
                identified: identify_extended(group, rep.invariant)?,
            });
        }
    }
    Ok(classes)
}

fn identify_extended(g: &MatrixGroup, invariant: Option<i8>) -> Result<Option<String>> {
    for name in EXTENDED {
        let (h, entry) = catalog_get(name)?;
        if entry.expected.invariant == invariant && is_isomorphic(g, &h).is_some() {
            return Ok(Some(name.to_string()));
        }
    }
    Ok(None)
}

/// How the index-2 subgroups of an order-64 group split into stable types.
#[derive(Debug, Clone, Serialize)]
pub struct Decomposition {
    pub subject: String,
    pub index2_count: usize,
    pub iso_classes: usize,
    /// Stable type (or `unidentified`) → count.
    pub composition: BTreeMap<String, usize>,
    /// Stable types present, sorted.
    pub types: Vec<String>,
}

pub fn decompose_order32_subgroups(name: &str, g: &MatrixGroup) -> Result<Decomposition> {
    if g.order() != 64 {
        return Err(Error::Search(format!(
            "`{name}` has order {}, expected 64",
            g.order()
        )));
    }
    let subs: Vec<MatrixGroup> = g
        .subgroups_of_order(32)?
        .iter()
        .map(|s| s.to_group())
        .collect();
    let labels: Vec<String> = subs
        .par_iter()
        .map(|h| identify_stable(h).unwrap_or("unidentified").to_string())
        .collect();
    let mut composition = BTreeMap::new();
    for l in labels {
        *composition.entry(l).or_insert(0) += 1;
    }
    let types = composition
        .keys()
        .filter(|k| *k != "unidentified")
        .cloned()
        .collect();
    Ok(Decomposition {
        subject: name.to_string(),
        index2_count: subs.len(),
        iso_classes: iso_classes(&subs).len(),
        composition,
        types,
    })
}
