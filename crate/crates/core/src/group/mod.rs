//! Finite matrix groups generated by closure, with a full Cayley table.

mod iso;
mod structure;
mod subgroups;

use std::collections::HashMap;
use std::fmt;

use rayon::prelude::*;

use crate::error::GroupError;
use crate::matrix::ExactMatrix;

pub use iso::{find_isomorphism, fingerprint, is_isomorphic, Fingerprint, IsoCertificate};
pub use structure::abelian_invariants_of;

/// Default closure budget.
pub const DEFAULT_CAP: usize = 4096;

/// Bitset over element indices of a fixed group.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ElementSet {
    words: Vec<u64>,
}

impl ElementSet {
    pub fn new(universe: usize) -> Self {
        Self {
            words: vec![0; universe.div_ceil(64)],
        }
    }

    pub fn from_indices(universe: usize, idx: impl IntoIterator<Item = usize>) -> Self {
        let mut s = Self::new(universe);
        for i in idx {
            s.insert(i);
        }
        s
    }

    pub fn insert(&mut self, i: usize) -> bool {
        let (w, b) = (i / 64, 1u64 << (i % 64));
        let fresh = self.words[w] & b == 0;
        self.words[w] |= b;
        fresh
    }

    pub fn contains(&self, i: usize) -> bool {
        self.words
            .get(i / 64)
            .is_some_and(|w| w & (1u64 << (i % 64)) != 0)
    }

    pub fn len(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.words.iter().enumerate().flat_map(|(wi, &w)| {
            (0..64)
                .filter(move |b| w & (1u64 << b) != 0)
                .map(move |b| wi * 64 + b)
        })
    }

    pub fn union(&self, other: &Self) -> Self {
        Self {
            words: self
                .words
                .iter()
                .zip(&other.words)
                .map(|(a, b)| a | b)
                .collect(),
        }
    }

    pub fn is_subset(&self, other: &Self) -> bool {
        self.words
            .iter()
            .zip(&other.words)
            .all(|(a, b)| a & !b == 0)
    }
}

impl fmt::Debug for ElementSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

/// A finite group of invertible matrices, closed under product.
///
/// Element 0 is the identity. Indices follow breadth-first discovery order
/// over the generator list, so they are stable for a fixed generator order.
#[derive(Clone)]
pub struct MatrixGroup {
    dim: usize,
    elements: Vec<ExactMatrix>,
    generator_indices: Vec<usize>,
    cayley: Vec<u32>,
    inverse: Vec<usize>,
    hash_index: HashMap<ExactMatrix, usize>,
}

impl fmt::Debug for MatrixGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("MatrixGroup")
            .field("dim", &self.dim)
            .field("order", &self.order())
            .field("generators", &self.generator_indices)
            .finish()
    }
}

/// Close `generators` under multiplication.
///
/// Fails when the element count exceeds `cap` (the group is too large or
/// infinite), when a generator is singular, or on mixed dimensions.
pub fn generate_closure(generators: &[ExactMatrix], cap: usize) -> Result<MatrixGroup, GroupError> {
    let dim = generators.first().ok_or(GroupError::NoGenerators)?.dim();
    for (index, g) in generators.iter().enumerate() {
        if g.dim() != dim {
            return Err(GroupError::DimensionMismatch {
                index,
                expected: dim,
                found: g.dim(),
            });
        }
        if !g.is_invertible() {
            return Err(GroupError::SingularGenerator { index });
        }
    }

    let mut elements = vec![ExactMatrix::identity(dim)];
    let mut hash_index = HashMap::from([(elements[0].clone(), 0usize)]);
    let mut parent = vec![(0usize, 0usize)];
    let mut right: Vec<Vec<usize>> = Vec::new();
    let mut layer = 0..1;

    while !layer.is_empty() {
        // Products of a whole layer are independent; merging them in
        // (element, generator) order reproduces sequential BFS numbering.
        let products: Vec<Vec<ExactMatrix>> = elements[layer.clone()]
            .par_iter()
            .map(|x| generators.iter().map(|g| x.mul_unchecked(g)).collect())
            .collect();
        let next_start = elements.len();
        for (offset, row) in products.into_iter().enumerate() {
            let x = layer.start + offset;
            let mut targets = Vec::with_capacity(generators.len());
            for (k, y) in row.into_iter().enumerate() {
                let idx = match hash_index.get(&y) {
                    Some(&i) => i,
                    None => {
                        let i = elements.len();
                        if i >= cap {
                            return Err(GroupError::CapExceeded { cap });
                        }
                        hash_index.insert(y.clone(), i);
                        elements.push(y);
                        parent.push((x, k));
                        i
                    }
                };
                targets.push(idx);
            }
            right.push(targets);
        }
        layer = next_start..elements.len();
    }

    let n = elements.len();
    let mut cayley = vec![0u32; n * n];
    for i in 0..n {
        cayley[i * n] = i as u32;
        for j in 1..n {
            let (p, k) = parent[j];
            cayley[i * n + j] = right[cayley[i * n + p] as usize][k] as u32;
        }
    }
    let generator_indices = generators.iter().map(|g| hash_index[g]).collect();
    Ok(MatrixGroup::assemble(
        dim,
        elements,
        generator_indices,
        cayley,
        hash_index,
    ))
}

impl MatrixGroup {
    fn assemble(
        dim: usize,
        elements: Vec<ExactMatrix>,
        generator_indices: Vec<usize>,
        cayley: Vec<u32>,
        hash_index: HashMap<ExactMatrix, usize>,
    ) -> Self {
        let n = elements.len();
        let mut inverse = vec![0; n];
        for (i, inv) in inverse.iter_mut().enumerate() {
            *inv = (0..n)
                .find(|&j| cayley[i * n + j] == 0)
                .expect("closed group has inverses");
        }
        Self {
            dim,
            elements,
            generator_indices,
            cayley,
            inverse,
            hash_index,
        }
    }

    pub fn trivial(dim: usize) -> Self {
        generate_closure(&[ExactMatrix::identity(dim)], 1).expect("identity closes")
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn elements(&self) -> &[ExactMatrix] {
        &self.elements
    }

    pub fn element(&self, i: usize) -> &ExactMatrix {
        &self.elements[i]
    }

    pub fn generator_indices(&self) -> &[usize] {
        &self.generator_indices
    }

    pub fn generators(&self) -> Vec<ExactMatrix> {
        self.generator_indices
            .iter()
            .map(|&i| self.elements[i].clone())
            .collect()
    }

    pub fn index_of(&self, m: &ExactMatrix) -> Option<usize> {
        self.hash_index.get(m).copied()
    }

    #[inline]
    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.cayley[a * self.elements.len() + b] as usize
    }

    #[inline]
    pub fn inv(&self, a: usize) -> usize {
        self.inverse[a]
    }

    pub fn conjugate(&self, x: usize, by: usize) -> usize {
        self.mul(self.mul(by, x), self.inverse[by])
    }

    pub fn commutator(&self, a: usize, b: usize) -> usize {
        self.mul(self.mul(a, b), self.mul(self.inverse[a], self.inverse[b]))
    }

    /// Index of `−g` when it lies in the group.
    pub fn negation(&self, g: usize) -> Option<usize> {
        self.index_of(&self.elements[g].neg())
    }

    pub fn power(&self, a: usize, k: usize) -> usize {
        (0..k).fold(0, |acc, _| self.mul(acc, a))
    }

    pub fn full_set(&self) -> ElementSet {
        ElementSet::from_indices(self.order(), 0..self.order())
    }

    /// Subgroup generated by the given element indices.
    pub fn close_indices(&self, gens: &[usize]) -> ElementSet {
        let mut set = ElementSet::new(self.order());
        set.insert(0);
        let mut frontier = vec![0usize];
        while let Some(x) = frontier.pop() {
            for &g in gens {
                let y = self.mul(x, g);
                if set.insert(y) {
                    frontier.push(y);
                }
            }
        }
        set
    }

    pub fn subgroup_generated(&self, gens: &[usize]) -> Subgroup<'_> {
        Subgroup {
            parent: self,
            members: self.close_indices(gens),
        }
    }

    pub fn whole(&self) -> Subgroup<'_> {
        Subgroup {
            parent: self,
            members: self.full_set(),
        }
    }

    /// Check closure, identity, inverse totality and the Latin-square
    /// property of the Cayley table.
    pub fn check_axioms(&self) -> bool {
        let n = self.order();
        if !self.elements[0].is_identity() {
            return false;
        }
        let mut seen = vec![false; n];
        for i in 0..n {
            if self.mul(i, self.inverse[i]) != 0 || self.mul(self.inverse[i], i) != 0 {
                return false;
            }
            seen.iter_mut().for_each(|s| *s = false);
            for j in 0..n {
                let p = self.mul(i, j);
                if seen[p] {
                    return false;
                }
                seen[p] = true;
            }
            seen.iter_mut().for_each(|s| *s = false);
            for j in 0..n {
                let p = self.mul(j, i);
                if seen[p] {
                    return false;
                }
                seen[p] = true;
            }
        }
        true
    }

    /// A short deterministic generating set: repeatedly add the element of
    /// largest order (lowest index on ties) not yet in the generated subgroup.
    pub fn small_generating_set(&self, within: &ElementSet) -> Vec<usize> {
        let orders: Vec<usize> = (0..self.order()).map(|i| self.element_order(i)).collect();
        let mut gens = Vec::new();
        let mut current = self.close_indices(&gens);
        while current != *within {
            let pick = within
                .iter()
                .filter(|&i| !current.contains(i))
                .max_by_key(|&i| (orders[i], std::cmp::Reverse(i)))
                .expect("proper subset has an outside element");
            gens.push(pick);
            current = self.close_indices(&gens);
        }
        gens
    }

    /// Materialize a subset (which must be a subgroup) as a standalone group.
    /// Members keep their relative index order.
    pub fn restrict(&self, members: &ElementSet) -> MatrixGroup {
        let idx: Vec<usize> = members.iter().collect();
        let n = idx.len();
        let mut local = vec![usize::MAX; self.order()];
        for (k, &g) in idx.iter().enumerate() {
            local[g] = k;
        }
        let mut cayley = vec![0u32; n * n];
        for (a, &ga) in idx.iter().enumerate() {
            for (b, &gb) in idx.iter().enumerate() {
                cayley[a * n + b] = local[self.mul(ga, gb)] as u32;
            }
        }
        let elements: Vec<ExactMatrix> = idx.iter().map(|&g| self.elements[g].clone()).collect();
        let hash_index = elements
            .iter()
            .cloned()
            .enumerate()
            .map(|(k, m)| (m, k))
            .collect();
        let gens = self
            .small_generating_set(members)
            .into_iter()
            .map(|g| local[g])
            .collect();
        MatrixGroup::assemble(self.dim, elements, gens, cayley, hash_index)
    }
}

/// A subgroup of a [`MatrixGroup`], stored as a member bitset.
#[derive(Clone)]
pub struct Subgroup<'g> {
    parent: &'g MatrixGroup,
    members: ElementSet,
}

impl fmt::Debug for Subgroup<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Subgroup")
            .field("order", &self.order())
            .field("members", &self.members)
            .finish()
    }
}

impl PartialEq for Subgroup<'_> {
    fn eq(&self, other: &Self) -> bool {
        std::ptr::eq(self.parent, other.parent) && self.members == other.members
    }
}

impl<'g> Subgroup<'g> {
    pub fn from_members(parent: &'g MatrixGroup, members: ElementSet) -> Self {
        Self { parent, members }
    }

    pub fn parent(&self) -> &'g MatrixGroup {
        self.parent
    }

    pub fn members(&self) -> &ElementSet {
        &self.members
    }

    pub fn indices(&self) -> Vec<usize> {
        self.members.iter().collect()
    }

    pub fn order(&self) -> usize {
        self.members.len()
    }

    pub fn contains(&self, i: usize) -> bool {
        self.members.contains(i)
    }

    pub fn to_group(&self) -> MatrixGroup {
        self.parent.restrict(&self.members)
    }

    /// Closed under the parent's product and inverse, and contains identity.
    pub fn is_closed(&self) -> bool {
        self.members.contains(0)
            && self.members.iter().all(|a| {
                self.members.contains(self.parent.inv(a))
                    && self
                        .members
                        .iter()
                        .all(|b| self.members.contains(self.parent.mul(a, b)))
            })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::GaussianRational;

    fn m(s: &str) -> ExactMatrix {
        s.parse().unwrap()
    }

    fn pauli() -> MatrixGroup {
        generate_closure(
            &[m("[[0,1],[1,0]]"), m("[[0,-i],[i,0]]"), m("[[1,0],[0,-1]]")],
            DEFAULT_CAP,
        )
        .unwrap()
    }

    #[test]
    fn pauli_closure() {
        let g = pauli();
        assert_eq!(g.order(), 16);
        assert!(g.check_axioms());
        assert!(g.element(0).is_identity());
    }

    #[test]
    fn trivial_closure() {
        let g = generate_closure(&[ExactMatrix::identity(2)], DEFAULT_CAP).unwrap();
        assert_eq!(g.order(), 1);
        assert_eq!(MatrixGroup::trivial(3).order(), 1);
    }

    #[test]
    fn closure_errors() {
        let big = ExactMatrix::scalar(1, GaussianRational::from(2));
        assert_eq!(
            generate_closure(&[big], 50).unwrap_err(),
            GroupError::CapExceeded { cap: 50 }
        );
        let singular = m("[[1,0],[0,0]]");
        assert_eq!(
            generate_closure(&[singular], 50).unwrap_err(),
            GroupError::SingularGenerator { index: 0 }
        );
        let mixed = [ExactMatrix::identity(2), ExactMatrix::identity(3)];
        assert!(matches!(
            generate_closure(&mixed, 50),
            Err(GroupError::DimensionMismatch { .. })
        ));
        assert_eq!(
            generate_closure(&[], 50).unwrap_err(),
            GroupError::NoGenerators
        );
    }

    #[test]
    fn closure_is_idempotent() {
        let g = pauli();
        let again = generate_closure(g.elements(), DEFAULT_CAP).unwrap();
        let a: std::collections::HashSet<_> = g.elements().iter().collect();
        let b: std::collections::HashSet<_> = again.elements().iter().collect();
        assert_eq!(a, b);
    }

    #[test]
    fn restrict_keeps_structure() {
        let g = pauli();
        let a1 = g.index_of(&m("[[0,-i],[-i,0]]")).unwrap();
        let a2 = g.index_of(&m("[[0,-1],[1,0]]")).unwrap();
        let q = g.subgroup_generated(&[a1, a2]);
        assert_eq!(q.order(), 8);
        assert!(q.is_closed());
        let h = q.to_group();
        assert!(h.check_axioms());
        assert_eq!(h.order(), 8);
    }
}
