use std::collections::BTreeSet;

use super::{ElementSet, MatrixGroup, Subgroup};
use crate::error::GroupError;

impl MatrixGroup {
    /// Every subgroup of order `n`, sorted by member bitset.
    pub fn subgroups_of_order(&self, n: usize) -> Result<Vec<Subgroup<'_>>, GroupError> {
        let order = self.order();
        if n == 0 || !order.is_multiple_of(n) {
            return Err(GroupError::NotDivisor { n, order });
        }
        let sets = if n == order {
            vec![self.full_set()]
        } else if n == 1 {
            vec![ElementSet::from_indices(order, [0])]
        } else if 2 * n == order {
            self.index_two_sets()
        } else {
            self.sets_by_joins(n)
        };
        Ok(sets
            .into_iter()
            .map(|m| Subgroup::from_members(self, m))
            .collect())
    }

    /// Index-2 subgroups contain every square, so they are the kernels of
    /// nonzero functionals on the elementary abelian quotient `G/⟨g²⟩`.
    fn index_two_sets(&self) -> Vec<ElementSet> {
        let n = self.order();
        let squares: Vec<usize> = (0..n).map(|g| self.mul(g, g)).collect();
        let s = self.close_indices(&squares);
        let (labels, _) = self.cosets(&s);

        // Greedy basis of the quotient; coords[label] is a bitmask.
        let mut coords: Vec<Option<u64>> = vec![None; n / s.len()];
        coords[0] = Some(0);
        let mut reps: Vec<usize> = vec![0];
        let mut basis = 0u32;
        for g in 0..n {
            if coords[labels[g]].is_some() {
                continue;
            }
            let bit = 1u64 << basis;
            basis += 1;
            let span = reps.clone();
            for r in span {
                let y = self.mul(r, g);
                coords[labels[y]] = Some(coords[labels[r]].unwrap() | bit);
                reps.push(y);
            }
        }

        let mut out: Vec<ElementSet> = (1u64..(1 << basis))
            .map(|f| {
                let members =
                    (0..n).filter(|&g| (coords[labels[g]].unwrap() & f).count_ones().is_multiple_of(2));
                ElementSet::from_indices(n, members)
            })
            .collect();
        out.sort();
        out
    }

    /// Grow subgroups from cyclic ones by joining one cyclic subgroup at a
    /// time, discarding joins whose order does not divide `target`. Every
    /// subgroup of order `target` is reached because each intermediate join
    /// lies inside it.
    fn sets_by_joins(&self, target: usize) -> Vec<ElementSet> {
        let n = self.order();
        let cyclic: BTreeSet<(ElementSet, usize)> = (0..n)
            .map(|g| (self.close_indices(&[g]), g))
            .filter(|(c, _)| target.is_multiple_of(c.len()))
            .collect();
        let mut cyclic_dedup: Vec<(ElementSet, usize)> = Vec::new();
        for (c, g) in cyclic {
            if cyclic_dedup.last().is_none_or(|(prev, _)| *prev != c) {
                cyclic_dedup.push((c, g));
            }
        }

        let mut seen: BTreeSet<ElementSet> = cyclic_dedup.iter().map(|(c, _)| c.clone()).collect();
        let mut frontier: Vec<ElementSet> = seen.iter().cloned().collect();
        while !frontier.is_empty() {
            let mut next = Vec::new();
            for h in &frontier {
                if h.len() == target {
                    continue;
                }
                let gens: Vec<usize> = h.iter().collect();
                for (c, g) in &cyclic_dedup {
                    if c.is_subset(h) {
                        continue;
                    }
                    let mut joined_gens = gens.clone();
                    joined_gens.push(*g);
                    let j = self.close_indices(&joined_gens);
                    if target.is_multiple_of(j.len()) && seen.insert(j.clone()) {
                        next.push(j);
                    }
                }
            }
            frontier = next;
        }
        seen.into_iter().filter(|s| s.len() == target).collect()
    }
}

#[cfg(test)]
mod tests {
    use crate::error::GroupError;
    use crate::group::{generate_closure, DEFAULT_CAP};
    use crate::matrix::ExactMatrix;

    fn pauli() -> crate::group::MatrixGroup {
        let gens: Vec<ExactMatrix> = ["[[0,1],[1,0]]", "[[0,-i],[i,0]]", "[[1,0],[0,-1]]"]
            .iter()
            .map(|s| s.parse().unwrap())
            .collect();
        generate_closure(&gens, DEFAULT_CAP).unwrap()
    }

    #[test]
    fn pauli_subgroup_counts() {
        let g = pauli();
        // Pauli group ≅ C4 ∘ D8: seven index-2 subgroups.
        assert_eq!(g.subgroups_of_order(8).unwrap().len(), 7);
        assert_eq!(g.subgroups_of_order(16).unwrap().len(), 1);
        assert_eq!(g.subgroups_of_order(1).unwrap().len(), 1);
        for h in g.subgroups_of_order(4).unwrap() {
            assert!(h.is_closed());
            assert_eq!(h.order(), 4);
        }
        assert!(matches!(
            g.subgroups_of_order(3),
            Err(GroupError::NotDivisor { n: 3, order: 16 })
        ));
    }

    #[test]
    fn joins_agree_with_hyperplanes() {
        let g = pauli();
        let fast: Vec<_> = g
            .subgroups_of_order(8)
            .unwrap()
            .into_iter()
            .map(|s| s.members().clone())
            .collect();
        let slow = g.sets_by_joins(8);
        assert_eq!(fast, slow);
    }
}
