use serde::Serialize;

use crate::error::RepError;
use crate::group::MatrixGroup;

/// Irreducible-representation dimensions, as far as class count,
/// abelianization and `Σ d² = |G|` determine them.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct IrrepCensus {
    pub num_irreps: usize,
    pub one_dim_count: usize,
    /// `(dimension, count)` ascending by dimension.
    pub dims: Vec<(usize, usize)>,
}

impl IrrepCensus {
    /// Compact form such as `8x1+2x2`.
    pub fn summary(&self) -> String {
        self.dims
            .iter()
            .map(|(d, c)| format!("{c}x{d}"))
            .collect::<Vec<_>>()
            .join("+")
    }

    pub fn sum_of_squares(&self) -> usize {
        self.dims.iter().map(|(d, c)| c * d * d).sum()
    }
}

/// Unique dimension multiset compatible with the class count and `|G/G'|`,
/// with every higher dimension dividing `|G|` and at most `√|G:Z|`.
pub fn irrep_census(g: &MatrixGroup) -> Result<IrrepCensus, RepError> {
    let order = g.order();
    let num_irreps = g.conjugacy_classes().len();
    let one_dim_count = g.abelianization_invariants().iter().product::<usize>();
    let bound = order / g.center().order();
    let allowed: Vec<usize> = (2..=order)
        .rev()
        .filter(|d| order.is_multiple_of(*d) && d * d <= bound)
        .collect();

    let mut solutions = Vec::new();
    let mut current = Vec::new();
    search(
        &allowed,
        num_irreps - one_dim_count,
        order - one_dim_count,
        &mut current,
        &mut solutions,
    );
    match solutions.len() {
        0 => Err(RepError::NoCensus),
        1 => {
            let mut dims = vec![(1, one_dim_count)];
            for d in solutions.pop().unwrap().into_iter().rev() {
                match dims.last_mut() {
                    Some((last, c)) if *last == d => *c += 1,
                    _ => dims.push((d, 1)),
                }
            }
            Ok(IrrepCensus {
                num_irreps,
                one_dim_count,
                dims,
            })
        }
        n => Err(RepError::AmbiguousCensus { candidates: n }),
    }
}

/// Nonincreasing sequences from `allowed` of length `count` with squares
/// summing to `remaining`. Stops after two solutions.
fn search(
    allowed: &[usize],
    count: usize,
    remaining: usize,
    current: &mut Vec<usize>,
    out: &mut Vec<Vec<usize>>,
) {
    if out.len() > 1 {
        return;
    }
    if count == 0 {
        if remaining == 0 {
            out.push(current.clone());
        }
        return;
    }
    for (k, &d) in allowed.iter().enumerate() {
        if d * d * count < remaining {
            break;
        }
        if d * d > remaining || current.last().is_some_and(|&l| d > l) {
            continue;
        }
        current.push(d);
        search(&allowed[k..], count - 1, remaining - d * d, current, out);
        current.pop();
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::{generate_closure, DEFAULT_CAP};
    use crate::matrix::ExactMatrix;

    #[test]
    fn pauli_census() {
        let gens: Vec<ExactMatrix> = ["[[0,1],[1,0]]", "[[0,-i],[i,0]]", "[[1,0],[0,-1]]"]
            .iter()
            .map(|s| s.parse().unwrap())
            .collect();
        let c = irrep_census(&generate_closure(&gens, DEFAULT_CAP).unwrap()).unwrap();
        assert_eq!(c.summary(), "8x1+2x2");
        assert_eq!(c.sum_of_squares(), 16);
    }

    #[test]
    fn trivial_census() {
        let c = irrep_census(&MatrixGroup::trivial(2)).unwrap();
        assert_eq!(c.dims, vec![(1, 1)]);
        assert_eq!(c.num_irreps, 1);
    }
}
