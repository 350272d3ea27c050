use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::path::Path;
use std::str::FromStr;
use std::sync::Mutex;

use rayon::prelude::*;
use serde::Serialize;

use super::profile::{identify_stable, profile, GroupProfile, ProfileOptions};
use super::GeneratorFile;
use crate::brackets::{classify_group, Component};
use crate::brackets::{Relation, RelationSet};
use crate::error::{Error, Result};
use crate::group::{
    find_isomorphism, fingerprint, generate_closure, ElementSet, Fingerprint, MatrixGroup,
    DEFAULT_CAP,
};
use crate::matrix::ExactMatrix;
use crate::rep::block_invariants;

/// How the last generator relates to the others.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum PairMode {
    /// Every pair anticommutes.
    Anti,
    /// The last generator commutes with all others; the rest anticommute.
    Comm,
}

/// Squares of the generators (`+` for `+I`, `-` for `-I`) and the pair
/// mode, written like `+++-:anti`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct SignatureSpec {
    pub squares: Vec<i8>,
    pub mode: PairMode,
}

impl SignatureSpec {
    pub fn len(&self) -> usize {
        self.squares.len()
    }

    pub fn is_empty(&self) -> bool {
        self.squares.is_empty()
    }

    /// All 32 four-generator signatures, in display order.
    pub fn all() -> Vec<SignatureSpec> {
        let mut out = Vec::new();
        for mode in [PairMode::Anti, PairMode::Comm] {
            for bits in 0..16u8 {
                let squares = (0..4)
                    .map(|k| if bits >> (3 - k) & 1 == 0 { 1 } else { -1 })
                    .collect();
                out.push(SignatureSpec { squares, mode });
            }
        }
        out
    }

    /// Whether generators `j < k` commute (otherwise they anticommute).
    pub fn commutes(&self, j: usize, k: usize) -> bool {
        self.mode == PairMode::Comm && k == self.len() - 1 && j < k
    }

    /// The defining relations over labels `g1..gn`.
    pub fn relation_set(&self) -> RelationSet {
        let n = self.len();
        let labels: Vec<String> = (1..=n).map(|k| format!("g{k}")).collect();
        let mut rels = Vec::new();
        for (k, s) in self.squares.iter().enumerate() {
            rels.push(format!("g{}^2 = {}", k + 1, s));
        }
        for j in 0..n {
            for k in j + 1..n {
                let sign = if self.commutes(j, k) { "" } else { "-" };
                rels.push(format!("g{a} g{b} = {sign}g{b} g{a}", a = j + 1, b = k + 1));
            }
        }
        let relations = rels
            .iter()
            .map(|r| Relation::parse(r).expect("well-formed"))
            .collect();
        RelationSet::new(
            format!("signature {self}"),
            "generated from a signature",
            labels,
            Vec::new(),
            relations,
        )
        .expect("labels declared")
    }
}

impl fmt::Display for SignatureSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for s in &self.squares {
            f.write_str(if *s > 0 { "+" } else { "-" })?;
        }
        f.write_str(match self.mode {
            PairMode::Anti => ":anti",
            PairMode::Comm => ":comm",
        })
    }
}

impl FromStr for SignatureSpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = |why: &str| Error::Search(format!("bad signature `{s}`: {why}"));
        let (signs, mode) = s.split_once(':').unwrap_or((s, "anti"));
        let mode = match mode {
            "anti" => PairMode::Anti,
            "comm" => PairMode::Comm,
            _ => return Err(bad("mode must be `anti` or `comm`")),
        };
        let squares = signs
            .chars()
            .map(|c| match c {
                '+' => Ok(1),
                '-' => Ok(-1),
                _ => Err(bad("squares are written with `+` and `-`")),
            })
            .collect::<Result<Vec<i8>>>()?;
        if !(2..=6).contains(&squares.len()) {
            return Err(bad("between 2 and 6 generators"));
        }
        Ok(SignatureSpec { squares, mode })
    }
}

/// Finite group whose elements are the candidate generators of a search.
#[derive(Debug)]
pub struct Pool {
    pub name: String,
    pub group: MatrixGroup,
}

impl Pool {
    /// `dirac8`, `dirac4`, or a path to a generator file.
    pub fn load(spec: &str) -> Result<Pool> {
        let text = match spec {
            "dirac8" => include_str!("../../data/pool_dirac8.json").to_string(),
            "dirac4" => include_str!("../../data/pool_dirac4.json").to_string(),
            path => std::fs::read_to_string(Path::new(path))?,
        };
        let file = GeneratorFile::from_json(&text)?;
        let group = file.close(DEFAULT_CAP)?;
        Ok(Pool {
            name: file.name,
            group,
        })
    }

    pub fn default_pool() -> Pool {
        Pool::load("dirac8").expect("shipped pool")
    }
}

/// One isomorphism class of realizations of a signature.
#[derive(Debug, Clone, Serialize)]
pub struct GammaModel {
    pub signature: String,
    /// Lexicographically least generator tuple (pool indices) in the class.
    pub tuple: Vec<usize>,
    pub generators: Vec<ExactMatrix>,
    /// Distinct generated subgroups of the pool in this class.
    pub subgroups: usize,
    /// Generator tuples landing in this class.
    pub tuples: usize,
    pub identified: Option<String>,
    pub profile: GroupProfile,
}

struct Candidate {
    set: ElementSet,
    tuple: Vec<usize>,
    tuples: usize,
}

/// Every generated subgroup of the required order, with its least tuple.
fn realizations(spec: &SignatureSpec, pool: &MatrixGroup) -> Vec<Candidate> {
    let n = pool.order();
    let minus_one = pool.index_of(&ExactMatrix::identity(pool.dim()).neg());
    let neg: Vec<Option<usize>> = (0..n).map(|x| pool.negation(x)).collect();
    let relation: Vec<PairRelation> = (0..n * n)
        .map(|yx| {
            let (y, x) = (yx / n, yx % n);
            let (a, b) = (pool.mul(y, x), pool.mul(x, y));
            if a == b {
                PairRelation::Commute
            } else if Some(a) == neg[b] {
                PairRelation::Anticommute
            } else {
                PairRelation::Other
            }
        })
        .collect();
    let pick = |s: i8| -> Vec<usize> {
        let target = if s > 0 { Some(0) } else { minus_one };
        (0..n).filter(|&x| Some(pool.mul(x, x)) == target).collect()
    };
    let cands: Vec<Vec<usize>> = spec.squares.iter().map(|&s| pick(s)).collect();

    let partial: Vec<HashMap<ElementSet, (Vec<usize>, usize)>> = cands[0]
        .par_iter()
        .map(|&first| {
            let mut walk = Walk::new(spec, pool, &relation, &cands);
            walk.start(first);
            walk.into_found()
        })
        .collect();

    let mut merged: BTreeMap<ElementSet, (Vec<usize>, usize)> = BTreeMap::new();
    for map in partial {
        for (set, (tuple, count)) in map {
            let e = merged.entry(set).or_insert_with(|| (tuple.clone(), 0));
            if tuple < e.0 {
                e.0 = tuple;
            }
            e.1 += count;
        }
    }
    let mut out: Vec<Candidate> = merged
        .into_iter()
        .map(|(set, (tuple, tuples))| Candidate { set, tuple, tuples })
        .collect();
    out.sort_by(|a, b| a.tuple.cmp(&b.tuple));
    out
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum PairRelation {
    Commute,
    Anticommute,
    Other,
}

/// Depth-first walk over admissible tuples sharing a first generator.
/// Generated subgroups are interned so the closure of `(subgroup, element)`
/// is computed once.
struct Walk<'a> {
    spec: &'a SignatureSpec,
    pool: &'a MatrixGroup,
    /// `relation[y * n + x]` for pool elements `x`, `y`.
    relation: &'a [PairRelation],
    cands: &'a [Vec<usize>],
    want: usize,
    tuple: Vec<usize>,
    sets: Vec<ElementSet>,
    ids: HashMap<ElementSet, usize>,
    memo: HashMap<(usize, usize), usize>,
    /// Set id → (least tuple, tuple count).
    found: HashMap<usize, (Vec<usize>, usize)>,
}

impl<'a> Walk<'a> {
    fn new(
        spec: &'a SignatureSpec,
        pool: &'a MatrixGroup,
        relation: &'a [PairRelation],
        cands: &'a [Vec<usize>],
    ) -> Self {
        Walk {
            spec,
            pool,
            relation,
            cands,
            want: 2usize << spec.len(),
            tuple: Vec::new(),
            sets: Vec::new(),
            ids: HashMap::new(),
            memo: HashMap::new(),
            found: HashMap::new(),
        }
    }

    fn intern(&mut self, set: ElementSet) -> usize {
        if let Some(&id) = self.ids.get(&set) {
            return id;
        }
        self.sets.push(set.clone());
        self.ids.insert(set, self.sets.len() - 1);
        self.sets.len() - 1
    }

    fn start(&mut self, first: usize) {
        self.tuple = vec![first];
        let id = self.intern(self.pool.close_indices(&[first]));
        self.extend(id);
    }

    fn extend(&mut self, generated: usize) {
        let k = self.tuple.len();
        if k == self.cands.len() {
            if self.sets[generated].len() == self.want {
                let e = self
                    .found
                    .entry(generated)
                    .or_insert_with(|| (self.tuple.clone(), 0));
                e.1 += 1;
            }
            return;
        }
        let (pool, cands) = (self.pool, self.cands);
        let n = pool.order();
        for &x in &cands[k] {
            let ok = self.tuple.iter().enumerate().all(|(j, &y)| {
                let want = if self.spec.commutes(j, k) {
                    PairRelation::Commute
                } else {
                    PairRelation::Anticommute
                };
                self.relation[y * n + x] == want
            });
            if !ok {
                continue;
            }
            self.tuple.push(x);
            let next = match self.memo.get(&(generated, x)) {
                Some(&id) => id,
                None => {
                    let id = self.intern(pool.close_indices(&self.tuple));
                    self.memo.insert((generated, x), id);
                    id
                }
            };
            self.extend(next);
            self.tuple.pop();
        }
    }

    fn into_found(self) -> HashMap<ElementSet, (Vec<usize>, usize)> {
        let sets = self.sets;
        self.found
            .into_iter()
            .map(|(id, v)| (sets[id].clone(), v))
            .collect()
    }
}

type ClassKey = (Option<i8>, BTreeMap<String, usize>);

struct Analyzed {
    group: MatrixGroup,
    print: Fingerprint,
    key: ClassKey,
}

/// One class found so far: isomorphism type, invariant and composition.
struct ClassEntry {
    analyzed: Analyzed,
    identified: Option<Option<String>>,
}

/// Primary component of each order-16 subgroup of the pool seen so far.
type ComponentCache = Mutex<HashMap<ElementSet, Option<Component>>>;

/// Invariant and index-2 composition, the same values [`profile`] reports,
/// with order-16 subgroups classified once per pool.
fn analyze(pool: &MatrixGroup, set: &ElementSet, components: &ComponentCache) -> Analyzed {
    let group = pool.restrict(set);
    let to_pool: Vec<usize> = set.iter().collect();
    let invariant = block_invariants(&group).ok().map(|b| b.value);
    let mut composition = BTreeMap::new();
    for sub in group
        .subgroups_of_order(group.order() / 2)
        .expect("even order")
    {
        let key = ElementSet::from_indices(pool.order(), sub.members().iter().map(|k| to_pool[k]));
        let cached = components.lock().expect("no poisoning").get(&key).copied();
        let primary = match cached {
            Some(p) => p,
            None => {
                let p = classify_group(&sub.to_group()).primary;
                components.lock().expect("no poisoning").insert(key, p);
                p
            }
        };
        let label = primary.map_or("unclassified".to_string(), |c| c.label().to_string());
        *composition.entry(label).or_insert(0) += 1;
    }
    Analyzed {
        print: fingerprint(&group),
        group,
        key: (invariant, composition),
    }
}

/// Class of every subgroup analysed so far, so a subgroup reached under
/// several signatures is analysed once.
#[derive(Default)]
struct Caches {
    class_of: HashMap<ElementSet, usize>,
    classes: Vec<ClassEntry>,
    components: ComponentCache,
}

impl Caches {
    fn assign(&mut self, a: Analyzed) -> usize {
        let home = self.classes.iter().position(|c| {
            let b = &c.analyzed;
            b.key == a.key && b.print == a.print && find_isomorphism(&b.group, &a.group).is_some()
        });
        home.unwrap_or_else(|| {
            self.classes.push(ClassEntry {
                analyzed: a,
                identified: None,
            });
            self.classes.len() - 1
        })
    }

    fn identified(&mut self, class: usize) -> Option<String> {
        let entry = &mut self.classes[class];
        entry
            .identified
            .get_or_insert_with(|| identify_stable(&entry.analyzed.group).map(str::to_string))
            .clone()
    }
}

/// Models of one signature with their global class ids.
fn models_with_cache(
    spec: &SignatureSpec,
    pool: &Pool,
    caches: &mut Caches,
) -> Result<Vec<(usize, GammaModel)>> {
    let cands = realizations(spec, &pool.group);
    let fresh: Vec<(ElementSet, Analyzed)> = cands
        .par_iter()
        .filter(|c| !caches.class_of.contains_key(&c.set))
        .map(|c| {
            (
                c.set.clone(),
                analyze(&pool.group, &c.set, &caches.components),
            )
        })
        .collect();
    for (set, a) in fresh {
        let id = caches.assign(a);
        caches.class_of.insert(set, id);
    }

    let mut members: Vec<(usize, Vec<usize>)> = Vec::new();
    for (i, c) in cands.iter().enumerate() {
        let id = caches.class_of[&c.set];
        match members.iter_mut().find(|(k, _)| *k == id) {
            Some((_, v)) => v.push(i),
            None => members.push((id, vec![i])),
        }
    }
    let identified: Vec<Option<String>> = members
        .iter()
        .map(|(id, _)| caches.identified(*id))
        .collect();
    members
        .into_par_iter()
        .zip(identified)
        .map(|((id, class), identified)| {
            let rep = &cands[class[0]];
            let generators: Vec<ExactMatrix> = rep
                .tuple
                .iter()
                .map(|&i| pool.group.element(i).clone())
                .collect();
            let group = generate_closure(&generators, DEFAULT_CAP)?;
            let model = GammaModel {
                signature: spec.to_string(),
                tuple: rep.tuple.clone(),
                subgroups: class.len(),
                tuples: class.iter().map(|&i| cands[i].tuples).sum(),
                identified,
                profile: profile(&group, &ProfileOptions::default()),
                generators,
            };
            Ok((id, model))
        })
        .collect()
}

/// Isomorphism classes of groups generated by tuples from `pool` that obey
/// `spec` and have order `2^(n+1)`, the size of a group of signed
/// products of the generators. Classes also separate on structural
/// invariant and index-2 composition.
pub fn find_gamma_models(spec: &SignatureSpec, pool: &Pool) -> Result<Vec<GammaModel>> {
    Ok(models_with_cache(spec, pool, &mut Caches::default())?
        .into_iter()
        .map(|(_, m)| m)
        .collect())
}

/// Result of running every signature over one pool.
#[derive(Debug, Clone, Serialize)]
pub struct SweepResult {
    pub pool: String,
    pub per_signature: Vec<SignatureSummary>,
    /// Classes across all signatures, one representative each.
    pub classes: Vec<GammaModel>,
}

#[derive(Debug, Clone, Serialize)]
pub struct SignatureSummary {
    pub signature: String,
    pub subgroups: usize,
    pub classes: Vec<Option<String>>,
}

pub fn sweep_signatures(specs: &[SignatureSpec], pool: &Pool) -> Result<SweepResult> {
    let mut caches = Caches::default();
    let mut per_signature = Vec::new();
    let mut classes: Vec<(usize, GammaModel)> = Vec::new();
    for spec in specs {
        let models = models_with_cache(spec, pool, &mut caches)?;
        per_signature.push(SignatureSummary {
            signature: spec.to_string(),
            subgroups: models.iter().map(|(_, m)| m.subgroups).sum(),
            classes: models.iter().map(|(_, m)| m.identified.clone()).collect(),
        });
        for (id, m) in models {
            if !classes.iter().any(|(k, _)| *k == id) {
                classes.push((id, m));
            }
        }
    }
    Ok(SweepResult {
        pool: pool.name.clone(),
        per_signature,
        classes: classes.into_iter().map(|(_, m)| m).collect(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn signature_round_trip() {
        let s: SignatureSpec = "+++-:comm".parse().unwrap();
        assert_eq!(s.squares, vec![1, 1, 1, -1]);
        assert_eq!(s.to_string(), "+++-:comm");
        assert_eq!("++".parse::<SignatureSpec>().unwrap().mode, PairMode::Anti);
        assert!("+x+".parse::<SignatureSpec>().is_err());
        assert_eq!(SignatureSpec::all().len(), 32);
    }

    #[test]
    fn signature_relations_hold_for_pauli() {
        let spec: SignatureSpec = "+++".parse().unwrap();
        let a = crate::brackets::tests::pauli_assignment();
        let mut g = crate::brackets::Assignment::new();
        for (k, l) in ["b1", "b2", "b3"].iter().enumerate() {
            g.insert(format!("g{}", k + 1), a[*l].clone());
        }
        assert!(
            crate::brackets::verify_relations(&g, &spec.relation_set())
                .unwrap()
                .pass
        );
    }
}
