use std::collections::BTreeMap;

use serde::Serialize;

use super::MatrixGroup;

/// Cheap isomorphism invariants. Equal fingerprints are necessary, not
/// sufficient, for isomorphism.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct Fingerprint {
    pub order: usize,
    pub order_histogram: BTreeMap<usize, usize>,
    pub class_sizes: Vec<usize>,
    pub center_order: usize,
    pub derived_order: usize,
    pub abelianization: Vec<usize>,
    pub exponent: usize,
}

pub fn fingerprint(g: &MatrixGroup) -> Fingerprint {
    let mut class_sizes: Vec<usize> = g.conjugacy_classes().iter().map(Vec::len).collect();
    class_sizes.sort_unstable();
    Fingerprint {
        order: g.order(),
        order_histogram: g.order_histogram(),
        class_sizes,
        center_order: g.center().order(),
        derived_order: g.derived_subgroup().order(),
        abelianization: g.abelianization_invariants(),
        exponent: g.exponent(),
    }
}

/// An explicit isomorphism: generator images plus the full element map,
/// checked against both Cayley tables.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct IsoCertificate {
    /// `(generator index in G, image index in H)`.
    pub images: Vec<(usize, usize)>,
    #[serde(skip)]
    pub map: Vec<usize>,
    pub verified: bool,
}

impl IsoCertificate {
    /// Bijective and multiplicative on every pair.
    pub fn verify(&self, g: &MatrixGroup, h: &MatrixGroup) -> bool {
        let n = g.order();
        if h.order() != n || self.map.len() != n {
            return false;
        }
        let mut hit = vec![false; n];
        for &y in &self.map {
            if y >= n || std::mem::replace(&mut hit[y], true) {
                return false;
            }
        }
        (0..n).all(|a| (0..n).all(|b| self.map[g.mul(a, b)] == h.mul(self.map[a], self.map[b])))
    }
}

/// Per-element data preserved by any isomorphism.
fn element_signature(g: &MatrixGroup) -> Vec<(usize, usize, usize)> {
    let n = g.order();
    let mut class_size = vec![0; n];
    for class in g.conjugacy_classes() {
        for &x in &class {
            class_size[x] = class.len();
        }
    }
    let mut roots = vec![0; n];
    for x in 0..n {
        roots[g.mul(x, x)] += 1;
    }
    (0..n)
        .map(|x| (g.element_order(x), class_size[x], roots[x]))
        .collect()
}

/// Search for an isomorphism `G → H`. Returns a verified certificate, or
/// `None` when the groups are not isomorphic.
pub fn is_isomorphic(g: &MatrixGroup, h: &MatrixGroup) -> Option<IsoCertificate> {
    if g.order() != h.order() || fingerprint(g) != fingerprint(h) {
        return None;
    }
    find_isomorphism(g, h)
}

/// Backtracking search without the fingerprint pre-check, for callers that
/// have already compared fingerprints.
pub fn find_isomorphism(g: &MatrixGroup, h: &MatrixGroup) -> Option<IsoCertificate> {
    if g.order() != h.order() {
        return None;
    }
    let gens = g.small_generating_set(&g.full_set());
    let sig_g = element_signature(g);
    let sig_h = element_signature(h);
    let candidates: Vec<Vec<usize>> = gens
        .iter()
        .map(|&x| (0..h.order()).filter(|&y| sig_h[y] == sig_g[x]).collect())
        .collect();

    let mut search = Search {
        g,
        h,
        gens: &gens,
        candidates: &candidates,
        chosen: Vec::new(),
    };
    let mut start = vec![None; g.order()];
    start[0] = Some(0);
    let map = search.extend(start)?;

    let mut cert = IsoCertificate {
        images: gens
            .iter()
            .copied()
            .zip(search.chosen.iter().copied())
            .collect(),
        map,
        verified: false,
    };
    cert.verified = cert.verify(g, h);
    cert.verified.then_some(cert)
}

struct Search<'a> {
    g: &'a MatrixGroup,
    h: &'a MatrixGroup,
    gens: &'a [usize],
    candidates: &'a [Vec<usize>],
    chosen: Vec<usize>,
}

impl Search<'_> {
    fn extend(&mut self, partial: Vec<Option<usize>>) -> Option<Vec<usize>> {
        let depth = self.chosen.len();
        if depth == self.gens.len() {
            let map: Vec<usize> = partial.into_iter().collect::<Option<_>>()?;
            return Some(map);
        }
        for &y in &self.candidates[depth] {
            self.chosen.push(y);
            if let Some(next) = self.propagate(&partial) {
                if let Some(done) = self.extend(next) {
                    return Some(done);
                }
            }
            self.chosen.pop();
        }
        None
    }

    /// Close the partial map under right multiplication by every assigned
    /// generator, rejecting conflicts and non-injective images.
    fn propagate(&self, partial: &[Option<usize>]) -> Option<Vec<Option<usize>>> {
        let (g, h) = (self.g, self.h);
        let assigned: Vec<(usize, usize)> = self
            .gens
            .iter()
            .copied()
            .zip(self.chosen.iter().copied())
            .collect();
        let mut map = partial.to_vec();
        let mut used = vec![false; h.order()];
        for y in map.iter().flatten() {
            used[*y] = true;
        }
        let mut stack: Vec<usize> = (0..map.len()).filter(|&x| map[x].is_some()).collect();
        while let Some(x) = stack.pop() {
            let fx = map[x].expect("stacked elements are mapped");
            for &(s, t) in &assigned {
                let xs = g.mul(x, s);
                let target = h.mul(fx, t);
                match map[xs] {
                    Some(existing) if existing != target => return None,
                    Some(_) => {}
                    None => {
                        if std::mem::replace(&mut used[target], true) {
                            return None;
                        }
                        map[xs] = Some(target);
                        stack.push(xs);
                    }
                }
            }
        }
        Some(map)
    }
}
