use std::collections::BTreeMap;

use super::{ElementSet, MatrixGroup, Subgroup};
use crate::error::GroupError;

impl MatrixGroup {
    /// Least `n ≥ 1` with `gⁿ = 1`.
    pub fn element_order(&self, g: usize) -> usize {
        let mut x = g;
        let mut n = 1;
        while x != 0 {
            x = self.mul(x, g);
            n += 1;
        }
        n
    }

    pub fn try_element_order(&self, g: usize) -> Result<usize, GroupError> {
        if g >= self.order() {
            return Err(GroupError::BadIndex(g));
        }
        Ok(self.element_order(g))
    }

    pub fn exponent(&self) -> usize {
        (0..self.order())
            .map(|g| self.element_order(g))
            .fold(1, num_integer::lcm)
    }

    pub fn is_abelian(&self) -> bool {
        let n = self.order();
        (0..n).all(|a| (a + 1..n).all(|b| self.mul(a, b) == self.mul(b, a)))
    }

    pub fn center(&self) -> Subgroup<'_> {
        let n = self.order();
        let members = (0..n).filter(|&z| (0..n).all(|g| self.mul(z, g) == self.mul(g, z)));
        Subgroup::from_members(self, ElementSet::from_indices(n, members))
    }

    /// Conjugacy classes sorted by `(size, least index)`.
    pub fn conjugacy_classes(&self) -> Vec<Vec<usize>> {
        let n = self.order();
        let mut seen = vec![false; n];
        let mut classes = Vec::new();
        for x in 0..n {
            if seen[x] {
                continue;
            }
            let mut class: Vec<usize> = (0..n).map(|g| self.conjugate(x, g)).collect();
            class.sort_unstable();
            class.dedup();
            for &c in &class {
                seen[c] = true;
            }
            classes.push(class);
        }
        classes.sort_by_key(|c| (c.len(), c[0]));
        classes
    }

    /// Closure of all commutators `g h g⁻¹ h⁻¹`.
    pub fn derived_subgroup(&self) -> Subgroup<'_> {
        let n = self.order();
        let mut comms = ElementSet::new(n);
        for a in 0..n {
            for b in 0..n {
                comms.insert(self.commutator(a, b));
            }
        }
        let gens: Vec<usize> = comms.iter().collect();
        self.subgroup_generated(&gens)
    }

    /// Elementary divisors (prime powers, ascending) of `G/G'`.
    pub fn abelianization_invariants(&self) -> Vec<usize> {
        let derived = self.derived_subgroup();
        let (labels, reps) = self.cosets(derived.members());
        let quotient_order = |c: usize| {
            let mut x = reps[c];
            let mut k = 1;
            while labels[x] != 0 {
                x = self.mul(x, reps[c]);
                k += 1;
            }
            k
        };
        let orders: Vec<usize> = (0..reps.len()).map(quotient_order).collect();
        abelian_invariants_of(&orders)
    }

    /// Left cosets `xN` of a normal subgroup: per-element coset label and
    /// one representative per coset (label 0 is `N` itself).
    pub(crate) fn cosets(&self, normal: &ElementSet) -> (Vec<usize>, Vec<usize>) {
        let n = self.order();
        let mut labels = vec![usize::MAX; n];
        let mut reps = Vec::new();
        for x in 0..n {
            if labels[x] != usize::MAX {
                continue;
            }
            let c = reps.len();
            reps.push(x);
            for k in normal.iter() {
                labels[self.mul(x, k)] = c;
            }
        }
        (labels, reps)
    }

    fn require_two_group(&self) -> Result<(), GroupError> {
        if self.order().is_power_of_two() {
            Ok(())
        } else {
            Err(GroupError::NotTwoGroup {
                order: self.order(),
            })
        }
    }

    /// Frattini subgroup of a 2-group, generated by squares and commutators.
    pub fn frattini_subgroup(&self) -> Result<Subgroup<'_>, GroupError> {
        self.require_two_group()?;
        let n = self.order();
        let mut gens = ElementSet::new(n);
        for a in 0..n {
            gens.insert(self.mul(a, a));
            for b in 0..n {
                gens.insert(self.commutator(a, b));
            }
        }
        let gens: Vec<usize> = gens.iter().collect();
        Ok(self.subgroup_generated(&gens))
    }

    /// Rank of `G/Φ(G)` over GF(2): the minimal number of generators of a
    /// 2-group.
    pub fn minimal_generator_count(&self) -> Result<usize, GroupError> {
        let phi = self.frattini_subgroup()?;
        Ok((self.order() / phi.order()).trailing_zeros() as usize)
    }

    /// Histogram `order → count` over all elements.
    pub fn order_histogram(&self) -> BTreeMap<usize, usize> {
        let mut h = BTreeMap::new();
        for g in 0..self.order() {
            *h.entry(self.element_order(g)).or_insert(0) += 1;
        }
        h
    }
}

/// Elementary divisors of a finite abelian group, given every element's
/// order. For each prime `p`, the number of cyclic factors of order at least
/// `p^k` is `log_p(|A[p^k]| / |A[p^(k-1)]|)` restricted to the `p`-part.
pub fn abelian_invariants_of(element_orders: &[usize]) -> Vec<usize> {
    let total = element_orders.len();
    let mut out = Vec::new();
    for p in prime_factors(total) {
        let count_dividing = |q: usize| {
            element_orders
                .iter()
                .filter(|&&o| q.is_multiple_of(o) && is_power_of(o, p))
                .count()
        };
        let mut ranks = Vec::new();
        let mut prev = 1usize;
        let mut q = p;
        loop {
            let c = count_dividing(q);
            if c == prev {
                break;
            }
            ranks.push(log_base(c / prev, p));
            prev = c;
            q *= p;
        }
        // ranks[k] = number of factors of order ≥ p^(k+1)
        for k in 0..ranks.len() {
            let exactly = ranks[k] - ranks.get(k + 1).copied().unwrap_or(0);
            out.extend(std::iter::repeat_n(p.pow(k as u32 + 1), exactly));
        }
    }
    out.sort_unstable();
    out
}

fn is_power_of(mut x: usize, p: usize) -> bool {
    while x.is_multiple_of(p) {
        x /= p;
    }
    x == 1
}

fn log_base(mut x: usize, p: usize) -> usize {
    let mut k = 0;
    while x > 1 {
        x /= p;
        k += 1;
    }
    k
}

fn prime_factors(mut n: usize) -> Vec<usize> {
    let mut ps = Vec::new();
    let mut p = 2;
    while p * p <= n {
        if n.is_multiple_of(p) {
            ps.push(p);
            while n.is_multiple_of(p) {
                n /= p;
            }
        }
        p += 1;
    }
    if n > 1 {
        ps.push(n);
    }
    ps
}
