//! Registry of checkable statements about the catalog groups. Each claim
//! pairs an expected value written down here with a value computed from
//! scratch; it passes when the two strings are identical.

use std::collections::BTreeSet;
use std::sync::OnceLock;
use std::time::Instant;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::brackets::{
    bracket_table, relation_set, substitute_scaled, verify_bracket_table, verify_relations,
    Assignment,
};
use crate::catalog::{
    catalog_entries, catalog_get, catalog_validate, decompose_order32_subgroups, entry_assignment,
    enumerate_extensions, profile, sweep_signatures, ExtensionClass, Pool, ProfileOptions,
    SignatureSpec, SweepResult,
};
use crate::error::{Error, Result};
use crate::group::{find_isomorphism, is_isomorphic, MatrixGroup};
use crate::matrix::ExactMatrix;
use crate::rep::{block_forms, block_invariants, irrep_census, spin_weight, FormKind};
use crate::scalar::GaussianRational;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "UPPERCASE")]
pub enum Status {
    Pass,
    Fail,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClaimResult {
    pub claim_id: String,
    pub description: String,
    /// Where the statement lives: topic and the quantity concerned.
    pub anchor: String,
    pub expected: String,
    pub computed: String,
    pub status: Status,
    pub runtime_ms: u64,
}

type Check = Box<dyn Fn(&Shared) -> Result<(String, String)> + Send + Sync>;

struct Claim {
    id: String,
    description: String,
    anchor: &'static str,
    check: Check,
}

fn claim(
    id: &str,
    description: &str,
    anchor: &'static str,
    check: impl Fn(&Shared) -> Result<(String, String)> + Send + Sync + 'static,
) -> Claim {
    Claim {
        id: id.to_string(),
        description: description.to_string(),
        anchor,
        check: Box::new(check),
    }
}

/// Expensive results used by several claims, computed at most once.
#[derive(Default)]
struct Shared {
    sweep: OnceLock<std::result::Result<SweepResult, String>>,
    extensions: OnceLock<std::result::Result<Vec<ExtensionClass>, String>>,
}

impl Shared {
    fn sweep(&self) -> Result<&SweepResult> {
        self.sweep
            .get_or_init(|| {
                sweep_signatures(&SignatureSpec::all(), &Pool::default_pool())
                    .map_err(|e| e.to_string())
            })
            .as_ref()
            .map_err(|e| Error::Search(e.clone()))
    }

    fn extensions(&self) -> Result<&[ExtensionClass]> {
        self.extensions
            .get_or_init(|| all_extensions().map_err(|e| e.to_string()))
            .as_deref()
            .map_err(|e| Error::Search(e.clone()))
    }
}

const STABLE: [&str; 5] = ["D_I", "D_II", "D_III", "D_IV", "D_V"];

fn all_extensions() -> Result<Vec<ExtensionClass>> {
    let pool = Pool::default_pool();
    let mut out = Vec::new();
    for base in STABLE {
        for square in [1, -1] {
            out.extend(enumerate_extensions(base, square, &pool)?);
        }
    }
    Ok(out)
}

fn group(name: &str) -> Result<MatrixGroup> {
    Ok(catalog_get(name)?.0)
}

fn assignment(name: &str) -> Result<Assignment> {
    entry_assignment(catalog_get(name)?.1)
}

fn pair(expected: impl Into<String>, computed: impl Into<String>) -> Result<(String, String)> {
    Ok((expected.into(), computed.into()))
}

fn sorted_matrices(ms: impl IntoIterator<Item = ExactMatrix>) -> String {
    let set: BTreeSet<String> = ms.into_iter().map(|m| m.to_string()).collect();
    set.into_iter().collect::<Vec<_>>().join(", ")
}

/// `In=v form=k` with the common form kind of all blocks (or `mixed`).
fn invariant_and_form(g: &MatrixGroup) -> Result<String> {
    let inv = block_invariants(g)?;
    let kinds: BTreeSet<&str> = block_forms(g)?.into_iter().map(|f| f.kind.name()).collect();
    let kind = if kinds.len() == 1 {
        kinds.into_iter().next().unwrap_or("none")
    } else {
        "mixed"
    };
    Ok(format!("In={} form={kind}", inv.value))
}

fn relation_passes(name: &str, set: &str) -> Result<bool> {
    Ok(verify_relations(&assignment(name)?, relation_set(set)?)?.pass)
}

fn table_passes(name: &str, table: &str) -> Result<bool> {
    Ok(verify_bracket_table(&assignment(name)?, bracket_table(table)?)?.pass)
}

fn delta_structure(name: &str) -> Result<String> {
    let g = group(name)?;
    let census = irrep_census(&g)?.summary();
    Ok(format!(
        "order={} census={census} In={}",
        g.order(),
        block_invariants(&g)?.value
    ))
}

fn delta_decomposition(name: &str) -> Result<String> {
    let d = decompose_order32_subgroups(name, &group(name)?)?;
    Ok(format!(
        "types={{{}}} unidentified={}",
        d.types.join(", "),
        d.composition.get("unidentified").unwrap_or(&0)
    ))
}

/// Centrality and square of the product of all generators.
fn top_product(name: &str) -> Result<String> {
    let (_, entry) = catalog_get(name)?;
    let gens = &entry.generators;
    let top = gens
        .iter()
        .skip(1)
        .fold(gens[0].clone(), |acc, g| acc.mul(g).expect("same dim"));
    let central = gens.iter().all(|g| g.mul(&top).ok() == top.mul(g).ok());
    let sq = top.mul(&top)?;
    let square = match sq.as_scalar() {
        Some(s) if s.is_one() => "1".to_string(),
        Some(s) if (-&s).is_one() => "-1".to_string(),
        _ => "non-scalar".to_string(),
    };
    Ok(format!("central={central} square={square}"))
}

fn delta_form(name: &str) -> Result<String> {
    let g = group(name)?;
    let forms = block_forms(&g)?;
    let kinds: BTreeSet<&str> = forms.iter().map(|f| f.kind.name()).collect();
    let nonsingular = forms
        .iter()
        .all(|f| f.kind == FormKind::None || f.witness.is_some());
    Ok(format!(
        "blocks={} form={} nonsingular={nonsingular}",
        forms.len(),
        kinds.into_iter().collect::<Vec<_>>().join("/")
    ))
}

fn weight_of(name: &str, label: &str) -> Result<crate::rep::WeightReport> {
    let a = assignment(name)?;
    let m = a
        .get(label)
        .ok_or_else(|| Error::Search(format!("{name} has no label {label}")))?;
    Ok(spin_weight(label, m)?)
}

fn weight_class(r: &crate::rep::WeightReport) -> String {
    serde_json::to_value(r.classification)
        .ok()
        .and_then(|v| v.as_str().map(str::to_string))
        .unwrap_or_default()
}

fn registry() -> Vec<Claim> {
    let mut claims = vec![
        claim(
            "pauli.order",
            "closure of the three Pauli matrices",
            "Pauli group: order",
            |_| pair("16", group("pauli")?.order().to_string()),
        ),
        claim(
            "pauli.classes",
            "number of conjugacy classes",
            "Pauli group: conjugacy classes",
            |_| pair("10", group("pauli")?.conjugacy_classes().len().to_string()),
        ),
        claim(
            "pauli.center",
            "center is {±I, ±iI}",
            "Pauli group: center",
            |_| {
                let g = group("pauli")?;
                let one = GaussianRational::one();
                let i = GaussianRational::i();
                let expected = sorted_matrices(
                    [one.clone(), -one, i.clone(), -i].into_iter().map(|s| ExactMatrix::scalar(2, s)),
                );
                let center = g.center();
                let computed = sorted_matrices(center.indices().into_iter().map(|x| g.element(x).clone()));
                pair(format!("4: {expected}"), format!("{}: {computed}", center.order()))
            },
        ),
        claim(
            "pauli.census",
            "irreducible representation dimensions",
            "Pauli group: irreducible representations",
            |_| pair("8x1+2x2", irrep_census(&group("pauli")?)?.summary()),
        ),
        claim(
            "pauli.rank",
            "minimal number of generators",
            "Pauli group: rank",
            |_| pair("3", group("pauli")?.minimal_generator_count()?.to_string()),
        ),
        claim(
            "pauli.l0",
            "weight number of the rotation generator a1",
            "Pauli group: weight number",
            |_| {
                let w = weight_of("pauli", "a1")?;
                pair("1/2", w.l0.unwrap_or_else(|| "none".into()))
            },
        ),
        claim(
            "quaternion.Q2",
            "<a1, a2> has order 8 and obeys the quaternion relations",
            "quaternion subgroup: presentation",
            |_| {
                let g = group("Q2")?;
                pair("order=8 relations=true", format!("order={} relations={}", g.order(), relation_passes("Q2", "quaternion.Q2")?))
            },
        ),
        claim(
            "quaternion.q2",
            "<a1, a2'> has order 8, generator orders (4, 2) and satisfies table 6",
            "second-kind quaternion subgroup",
            |_| {
                let g = group("q2")?;
                let orders: Vec<usize> = g.generator_indices().iter().map(|&x| g.element_order(x)).collect();
                pair(
                    "order=8 generator_orders=[4, 2] table6=true",
                    format!("order={} generator_orders={orders:?} table6={}", g.order(), table_passes("q2", "6")?),
                )
            },
        ),
        claim(
            "quaternion.nonisomorphic",
            "Q2 and q2 are not isomorphic (exhaustive backtracking)",
            "quaternion subgroups of the first and second kind",
            |_| pair("false", find_isomorphism(&group("Q2")?, &group("q2")?).is_some().to_string()),
        ),
        claim(
            "brackets.table4",
            "Pauli realization satisfies the proper-component table",
            "commutation table 4",
            |_| pair("true", table_passes("pauli", "4")?.to_string()),
        ),
        claim(
            "brackets.table6",
            "q2 realization satisfies table 6",
            "commutation table 6",
            |_| pair("true", table_passes("q2", "6")?.to_string()),
        ),
        claim(
            "brackets.table7",
            "f_gamma realization satisfies table 7",
            "commutation table 7",
            |_| pair("true", table_passes("f_gamma", "7")?.to_string()),
        ),
        claim(
            "brackets.table9",
            "b_gamma (found inside D_II) satisfies table 9",
            "commutation table 9",
            |_| pair("true", table_passes("b_gamma", "9")?.to_string()),
        ),
        claim(
            "brackets.table11",
            "c_gamma (found inside D_I) satisfies table 11",
            "commutation table 11",
            |_| pair("true", table_passes("c_gamma", "11")?.to_string()),
        ),
        claim(
            "brackets.substitution",
            "replacing b_k by i·b_k turns a table-4 realization into a table-9 one",
            "transition between tables 4 and 9",
            |_| {
                let a = assignment("pauli")?;
                let before = verify_bracket_table(&a, bracket_table("4")?)?.pass;
                let moved = substitute_scaled(&a, &["b1", "b2", "b3"], &GaussianRational::i());
                let after = verify_bracket_table(&moved, bracket_table("9")?)?.pass;
                pair("table4=true table9=true", format!("table4={before} table9={after}"))
            },
        ),
        claim(
            "brackets.products",
            "boosts as products with the central element, as i times rotations, and their products",
            "Pauli group: product identities",
            |_| {
                let sets = ["pauli.b_from_ac", "pauli.b_from_ia", "pauli.boost_products"];
                let computed = sets
                    .iter()
                    .map(|s| Ok(format!("{s}={}", relation_passes("pauli", s)?)))
                    .collect::<Result<Vec<_>>>()?;
                pair(sets.map(|s| format!("{s}=true")).join(" "), computed.join(" "))
            },
        ),
        claim(
            "weights.a1",
            "eigenvalues of (i/2)·a1",
            "weight number of the Pauli realization",
            |_| {
                let w = weight_of("pauli", "a1")?;
                let eig: BTreeSet<String> = w.eigenvalues.iter().map(|(e, m)| format!("{e}x{m}")).collect();
                pair(
                    "eigenvalues={-1/2x1, 1/2x1} l0=1/2",
                    format!("eigenvalues={{{}}} l0={}", eig.into_iter().collect::<Vec<_>>().join(", "), w.l0.unwrap_or_else(|| "none".into())),
                )
            },
        ),
        claim(
            "weights.f_gamma",
            "the weight spectra of a2' and a3' in f_gamma are pure imaginary",
            "P-conjugate component: weight number",
            |_| {
                let (w2, w3) = (weight_of("f_gamma", "a2")?, weight_of("f_gamma", "a3")?);
                pair(
                    "a2=pure-imaginary a3=pure-imaginary",
                    format!("a2={} a3={}", weight_class(&w2), weight_class(&w3)),
                )
            },
        ),
        claim(
            "dirac.order",
            "closure of four anticommuting gamma matrices",
            "Dirac group: order",
            |_| pair("32", group("D_II")?.order().to_string()),
        ),
        claim(
            "dirac.components",
            "order-16 subgroups form 2 isomorphism classes with primary components {b, d}",
            "Dirac group: order-16 subgroups",
            |_| {
                let p = profile(&group("D_II")?, &ProfileOptions { subgroups: true, forms: false });
                pair(
                    "index2=15 iso_classes=2 components={b, d}",
                    format!(
                        "index2={} iso_classes={} components={{{}}}",
                        p.index2_count,
                        p.index2_iso_classes,
                        p.components.join(", ")
                    ),
                )
            },
        ),
        claim(
            "dirac.d_f_isomorphic",
            "d_gamma and f_gamma are isomorphic, with a verified certificate",
            "P-conjugate component",
            |_| {
                let cert = is_isomorphic(&group("pauli")?, &group("f_gamma")?);
                pair("true", cert.is_some_and(|c| c.verified).to_string())
            },
        ),
        claim(
            "invariants.D_I",
            "structural invariant and invariant form of D_I",
            "stable leptons: invariant list",
            |_| pair("In=1 form=symmetric", invariant_and_form(&group("D_I")?)?),
        ),
        claim(
            "invariants.D_II",
            "structural invariant and invariant form of D_II",
            "stable leptons: invariant list",
            |_| pair("In=-1 form=antisymmetric", invariant_and_form(&group("D_II")?)?),
        ),
        claim(
            "invariants.D_III",
            "structural invariant and invariant form of D_III",
            "stable leptons: invariant list",
            |_| pair("In=0 form=none", invariant_and_form(&group("D_III")?)?),
        ),
        claim(
            "invariants.D_IV",
            "structural invariant and invariant form of D_IV",
            "stable leptons: invariant list",
            |_| pair("In=-1 form=antisymmetric", invariant_and_form(&group("D_IV")?)?),
        ),
        claim(
            "invariants.D_V",
            "structural invariant and invariant form of D_V",
            "stable leptons: invariant list",
            |_| pair("In=1 form=symmetric", invariant_and_form(&group("D_V")?)?),
        ),
        claim(
            "search.exhaustive",
            "every four-generator signature over the default pool gives exactly the five stable groups",
            "stable leptons: exhaustiveness",
            |s| {
                let sweep = s.sweep()?;
                let mut found: Vec<String> = sweep
                    .classes
                    .iter()
                    .map(|c| {
                        let inv = c.profile.invariant.map_or("?".into(), |v| v.to_string());
                        format!("{}:{inv}", c.identified.as_deref().unwrap_or("unidentified"))
                    })
                    .collect();
                found.sort();
                pair(
                    "5 classes: D_I:1, D_II:-1, D_III:0, D_IV:-1, D_V:1",
                    format!("{} classes: {}", found.len(), found.join(", ")),
                )
            },
        ),
        claim(
            "delta.delta1.structure",
            "order, irreducible census and invariant of Delta1",
            "unstable leptons: Delta1",
            |_| pair("order=64 census=32x1+2x4 In=-1", delta_structure("Delta1")?),
        ),
        claim(
            "delta.delta2.structure",
            "order, irreducible census and invariant of Delta2",
            "unstable leptons: Delta2",
            |_| pair("order=64 census=32x1+2x4 In=1", delta_structure("Delta2")?),
        ),
        claim(
            "delta.delta3.structure",
            "order, irreducible census and invariant of Delta3",
            "unstable leptons: Delta3",
            |_| pair("order=64 census=32x1+2x4 In=0", delta_structure("Delta3")?),
        ),
        claim(
            "delta.delta1.decomposition",
            "stable types among the order-32 subgroups of Delta1",
            "unstable leptons: Delta1 decomposition",
            |_| pair("types={D_II, D_III, D_IV} unidentified=0", delta_decomposition("Delta1")?),
        ),
        claim(
            "delta.delta2.decomposition",
            "stable types among the order-32 subgroups of Delta2",
            "unstable leptons: Delta2 decomposition",
            |_| pair("types={D_I, D_III, D_V} unidentified=0", delta_decomposition("Delta2")?),
        ),
        claim(
            "delta.delta3.decomposition",
            "stable types among the order-32 subgroups of Delta3",
            "unstable leptons: Delta3 decomposition",
            |_| pair("types={D_I, D_II, D_III} unidentified=0", delta_decomposition("Delta3")?),
        ),
        claim(
            "delta.delta1.top_product",
            "product of the five generators of Delta1 is central and squares to +1",
            "unstable leptons: Delta1 central element",
            |_| pair("central=true square=1", top_product("Delta1")?),
        ),
        claim(
            "delta.delta2.top_product",
            "product of the five generators of Delta2 is central and squares to +1",
            "unstable leptons: Delta2 central element",
            |_| pair("central=true square=1", top_product("Delta2")?),
        ),
        claim(
            "delta.delta3.top_product",
            "product of the five generators of Delta3 is central and squares to -1",
            "unstable leptons: Delta3 central element",
            |_| pair("central=true square=-1", top_product("Delta3")?),
        ),
        claim(
            "delta.delta1.form",
            "both 4-dim blocks of Delta1 carry a nonsingular antisymmetric invariant form",
            "unstable leptons: Delta1 representation type",
            |_| pair("blocks=2 form=antisymmetric nonsingular=true", delta_form("Delta1")?),
        ),
        claim(
            "delta.delta2.realform",
            "both 4-dim blocks of Delta2 carry a nonsingular symmetric invariant form",
            "unstable leptons: Delta2 real form",
            |_| pair("blocks=2 form=symmetric nonsingular=true", delta_form("Delta2")?),
        ),
        claim(
            "delta.delta3.form",
            "the 4-dim blocks of Delta3 carry no invariant bilinear form",
            "unstable leptons: Delta3 representation type",
            |_| pair("blocks=2 form=none nonsingular=true", delta_form("Delta3")?),
        ),
        claim(
            "delta.compositions_distinct",
            "the three decompositions differ pairwise",
            "unstable leptons: uniqueness of composition",
            |_| {
                let d: BTreeSet<String> =
                    ["Delta1", "Delta2", "Delta3"].iter().map(|n| delta_decomposition(n)).collect::<Result<_>>()?;
                pair("3", d.len().to_string())
            },
        ),
        claim(
            "extensions.exhaustive",
            "all five bases times both squares give exactly Delta1, Delta2, Delta3",
            "conclusion: exhaustiveness of extensions",
            |s| {
                let classes = s.extensions()?;
                let sound = classes.iter().all(|c| c.representative.relations_pass && c.representative.order == 64);
                let names: BTreeSet<String> = classes
                    .iter()
                    .map(|c| c.identified.clone().unwrap_or_else(|| "unidentified".into()))
                    .collect();
                pair(
                    "classes={Delta1, Delta2, Delta3} sound=true",
                    format!("classes={{{}}} sound={sound}", names.into_iter().collect::<Vec<_>>().join(", ")),
                )
            },
        ),
    ];
    for entry in catalog_entries() {
        let name = entry.name.clone();
        claims.push(claim(
            &format!("catalog.{name}"),
            &format!("catalog entry {name} matches its recorded relations, tables and profile"),
            "catalog",
            move |_| {
                let report = catalog_validate(&name)?;
                let failed: Vec<String> = report.failures().map(|f| f.check.clone()).collect();
                pair(
                    "pass",
                    if failed.is_empty() {
                        "pass".to_string()
                    } else {
                        format!("fail: {}", failed.join(", "))
                    },
                )
            },
        ));
    }
    claims
}

fn claims() -> &'static [Claim] {
    static CLAIMS: OnceLock<Vec<Claim>> = OnceLock::new();
    CLAIMS.get_or_init(registry)
}

/// Every registered claim id, sorted.
pub fn claim_ids() -> Vec<&'static str> {
    let mut ids: Vec<&str> = claims().iter().map(|c| c.id.as_str()).collect();
    ids.sort_unstable();
    ids
}

/// Run the claims matching `filter` (a glob over claim ids; all when
/// `None`) in parallel, sorted by id. A filter matching nothing is an
/// error. Runtimes are recorded only when `timed`.
pub fn run_claims(filter: Option<&str>, timed: bool) -> Result<Vec<ClaimResult>> {
    let pattern = filter
        .map(|f| glob::Pattern::new(f).map_err(|_| Error::UnknownClaim(f.to_string())))
        .transpose()?;
    let mut selected: Vec<&Claim> = claims()
        .iter()
        .filter(|c| pattern.as_ref().is_none_or(|p| p.matches(&c.id)))
        .collect();
    if selected.is_empty() {
        return Err(Error::UnknownClaim(filter.unwrap_or("").to_string()));
    }
    selected.sort_by(|a, b| a.id.cmp(&b.id));
    let shared = Shared::default();
    Ok(selected
        .par_iter()
        .map(|c| {
            let start = Instant::now();
            let (expected, computed) = match (c.check)(&shared) {
                Ok(p) => p,
                Err(e) => ("no error".to_string(), format!("error: {e}")),
            };
            let status = if expected == computed {
                Status::Pass
            } else {
                Status::Fail
            };
            ClaimResult {
                claim_id: c.id.clone(),
                description: c.description.clone(),
                anchor: c.anchor.to_string(),
                expected,
                computed,
                status,
                runtime_ms: if timed {
                    start.elapsed().as_millis() as u64
                } else {
                    0
                },
            }
        })
        .collect())
}
