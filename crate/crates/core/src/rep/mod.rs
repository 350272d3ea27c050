//! Character-level analysis of the defining representation: irreducibility,
//! Frobenius–Schur indicator, isotypic blocks, invariant bilinear forms,
//! irrep census and spin weights.

mod census;
mod forms;
mod weight;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

use crate::error::RepError;
use crate::group::MatrixGroup;
use crate::linalg;
use crate::matrix::ExactMatrix;
use crate::scalar::GaussianRational;

pub use census::{irrep_census, IrrepCensus};
pub use forms::{
    block_forms, invariant_bilinear_form, invariant_forms_on, FormKind, InvariantForm,
};
pub use weight::{eigen_multiplicities, spin_weight, HalfRoot, WeightClass, WeightReport};

/// `(1/|G|) Σ |tr g|²`; equals 1 exactly when the defining
/// representation is irreducible.
pub fn irreducibility_norm(g: &MatrixGroup) -> BigRational {
    character_norm(g.elements().iter().map(ExactMatrix::trace), g.order())
}

/// `(1/|G|) Σ tr(g²)`.
pub fn indicator_sum(g: &MatrixGroup) -> GaussianRational {
    let n = g.order();
    let total = (0..n).fold(GaussianRational::zero(), |acc, x| {
        acc + g.element(g.mul(x, x)).trace()
    });
    total.scale(&BigRational::new(BigInt::one(), BigInt::from(n)))
}

fn character_norm(traces: impl Iterator<Item = GaussianRational>, order: usize) -> BigRational {
    let total = traces.fold(BigRational::zero(), |acc, t| acc + t.norm_sqr());
    total / BigRational::from_integer(BigInt::from(order))
}

fn as_small_int(v: &GaussianRational) -> Option<i64> {
    v.to_integer()
        .filter(|_| v.is_real())
        .and_then(|n| i64::try_from(n).ok())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct StructuralInvariant {
    pub value: i8,
    pub rep_dim: usize,
}

/// Frobenius–Schur indicator of an irreducible defining representation.
pub fn structural_invariant(g: &MatrixGroup) -> Result<StructuralInvariant, RepError> {
    let norm = irreducibility_norm(g);
    if !norm.is_one() {
        return Err(RepError::Reducible {
            norm: norm.to_string(),
        });
    }
    let s = indicator_sum(g);
    match as_small_int(&s) {
        Some(v @ -1..=1) => Ok(StructuralInvariant {
            value: v as i8,
            rep_dim: g.dim(),
        }),
        _ => Err(RepError::NonIntegral {
            value: s.to_string(),
        }),
    }
}

/// One isotypic component `m·ρ` of the defining representation.
#[derive(Debug, Clone, Serialize)]
pub struct BlockReport {
    /// Dimension of the component (`m · irrep_dim`).
    pub rank: usize,
    pub multiplicity: usize,
    pub irrep_dim: usize,
    pub indicator: i8,
    #[serde(skip)]
    pub projector: ExactMatrix,
}

/// Indicator of every isotypic block plus their common value.
#[derive(Debug, Clone, Serialize)]
pub struct BlockInvariants {
    pub value: i8,
    pub irreducible: bool,
    pub blocks: Vec<BlockReport>,
}

impl BlockInvariants {
    pub fn block_values(&self) -> Vec<i8> {
        self.blocks.iter().map(|b| b.indicator).collect()
    }
}

/// Split the defining representation into isotypic blocks and compute the
/// indicator of the irreducible constituent of each.
///
/// Blocks are the joint eigenspaces of the center's generators (every
/// central element must have order dividing 4). Their projectors are
/// central idempotents of the group algebra, so block characters follow
/// from the defining character alone. Each block is then checked to be
/// isotypic: every class sum must act on it as a scalar. All blocks must
/// share one value.
pub fn block_invariants(g: &MatrixGroup) -> Result<BlockInvariants, RepError> {
    let traces: Vec<GaussianRational> = g.elements().iter().map(ExactMatrix::trace).collect();
    let irreducible = character_norm(traces.iter().cloned(), g.order()).is_one();
    let classes = g.conjugacy_classes();
    let blocks: Vec<BlockReport> = isotypic_idempotents(g)?
        .into_iter()
        .filter_map(|e| {
            let chars = block_character(g, &traces, &e);
            (!chars[0].is_zero()).then(|| block_report(g, &classes, &e, chars))
        })
        .collect::<Result<_, _>>()?;
    let values: Vec<i8> = blocks.iter().map(|b| b.indicator).collect();
    if values.windows(2).any(|w| w[0] != w[1]) {
        return Err(RepError::BlocksDisagree(values));
    }
    Ok(BlockInvariants {
        value: values[0],
        irreducible,
        blocks,
    })
}

fn fourth_roots() -> [GaussianRational; 4] {
    [
        GaussianRational::one(),
        GaussianRational::i(),
        -GaussianRational::one(),
        -GaussianRational::i(),
    ]
}

/// Group-algebra element `Σ c_h h`, stored densely by element index.
type AlgebraElement = Vec<GaussianRational>;

/// `(1/4) Σ λ^(-k) z^k`, the projector onto the `λ`-eigenspace of `z`.
fn eigen_idempotent(g: &MatrixGroup, z: usize, lambda: &GaussianRational) -> AlgebraElement {
    let mut e = vec![GaussianRational::zero(); g.order()];
    let quarter = BigRational::new(BigInt::one(), BigInt::from(4));
    let step = lambda.inv().expect("root of unity");
    let (mut x, mut c) = (0usize, GaussianRational::one());
    for _ in 0..4 {
        e[x] += &c.scale(&quarter);
        x = g.mul(x, z);
        c = &c * &step;
    }
    e
}

fn algebra_mul(g: &MatrixGroup, a: &AlgebraElement, b: &AlgebraElement) -> AlgebraElement {
    let mut out = vec![GaussianRational::zero(); g.order()];
    for (x, cx) in a.iter().enumerate().filter(|(_, c)| !c.is_zero()) {
        for (y, cy) in b.iter().enumerate().filter(|(_, c)| !c.is_zero()) {
            out[g.mul(x, y)] += &(cx * cy);
        }
    }
    out
}

/// Joint eigen-idempotents of a generating set of the center; the zero
/// ones are dropped later by their character.
fn isotypic_idempotents(g: &MatrixGroup) -> Result<Vec<AlgebraElement>, RepError> {
    let center = g.center();
    let mut unit = vec![GaussianRational::zero(); g.order()];
    unit[0] = GaussianRational::one();
    let mut idempotents = vec![unit];
    for z in g.small_generating_set(center.members()) {
        let order = g.element_order(z);
        if 4 % order != 0 {
            return Err(RepError::UnsupportedOrder { order });
        }
        let mut refined = Vec::new();
        for e in &idempotents {
            for lambda in fourth_roots() {
                let q = algebra_mul(g, e, &eigen_idempotent(g, z, &lambda));
                if q.iter().any(|c| !c.is_zero()) {
                    refined.push(q);
                }
            }
        }
        idempotents = refined;
    }
    Ok(idempotents)
}

/// `x ↦ tr(E x)` for a central idempotent `E`.
fn block_character(
    g: &MatrixGroup,
    traces: &[GaussianRational],
    e: &AlgebraElement,
) -> Vec<GaussianRational> {
    let support: Vec<(usize, &GaussianRational)> =
        e.iter().enumerate().filter(|(_, c)| !c.is_zero()).collect();
    (0..g.order())
        .map(|x| {
            support
                .iter()
                .fold(GaussianRational::zero(), |acc, (h, c)| {
                    &acc + &(*c * &traces[g.mul(*h, x)])
                })
        })
        .collect()
}

fn idempotent_matrix(g: &MatrixGroup, e: &AlgebraElement) -> ExactMatrix {
    e.iter()
        .enumerate()
        .filter(|(_, c)| !c.is_zero())
        .fold(ExactMatrix::zero(g.dim()), |acc, (h, c)| {
            acc.add(&g.element(h).scale(c)).expect("same dim")
        })
}

fn block_report(
    g: &MatrixGroup,
    classes: &[Vec<usize>],
    e: &AlgebraElement,
    chars: Vec<GaussianRational>,
) -> Result<BlockReport, RepError> {
    let n = g.order();
    let rank = as_small_int(&chars[0])
        .filter(|&r| r > 0)
        .ok_or(RepError::NonIntegralMultiplicity)? as usize;

    // A class sum K acts on the block with eigenvalues ω_j. In a unitary
    // basis |tr(KE)|² ≤ rank · tr(K E K*) with equality exactly when all ω_j
    // agree, and both sides are character values.
    for class in classes {
        let t = class
            .iter()
            .fold(GaussianRational::zero(), |acc, &x| &acc + &chars[x]);
        let mut tt = GaussianRational::zero();
        for &x in class {
            for &y in class {
                tt += &chars[g.mul(x, g.inv(y))];
            }
        }
        if t.norm_sqr() != tt.re() * BigRational::from_integer(BigInt::from(rank))
            || !tt.im().is_zero()
        {
            return Err(RepError::NotIsotypic);
        }
    }

    let norm = character_norm(chars.iter().cloned(), n);
    let m = integer_sqrt(&norm).ok_or(RepError::NonIntegralMultiplicity)?;
    if m == 0 || !rank.is_multiple_of(m) {
        return Err(RepError::NonIntegralMultiplicity);
    }
    let s = (0..n).fold(GaussianRational::zero(), |acc, x| {
        &acc + &chars[g.mul(x, x)]
    });
    let ind = s.scale(&BigRational::new(BigInt::one(), BigInt::from(n * m)));
    let indicator = match as_small_int(&ind) {
        Some(v @ -1..=1) => v as i8,
        _ => {
            return Err(RepError::NonIntegral {
                value: ind.to_string(),
            })
        }
    };
    Ok(BlockReport {
        rank,
        multiplicity: m,
        irrep_dim: rank / m,
        indicator,
        projector: idempotent_matrix(g, e),
    })
}

fn integer_sqrt(q: &BigRational) -> Option<usize> {
    if !q.is_integer() || q.is_negative() {
        return None;
    }
    let v = usize::try_from(q.to_integer()).ok()?;
    let r = num_integer::Roots::sqrt(&v);
    (r * r == v).then_some(r)
}

/// Matrices of the generators restricted to the image of the projector
/// `p`, in a basis of pivot columns of `p`.
pub(crate) fn restrict_to_image(p: &ExactMatrix, gens: &[ExactMatrix]) -> Vec<ExactMatrix> {
    let cols = p.transpose().rows();
    let mut echelon = p.rows();
    let basis: Vec<Vec<GaussianRational>> = linalg::rref(&mut echelon)
        .iter()
        .map(|&c| cols[c].clone())
        .collect();
    let r = basis.len();

    // Left inverse of the basis: invert its restriction to r independent
    // coordinates and ignore the rest.
    let mut echelon = basis.clone();
    let coords = linalg::rref(&mut echelon);
    let square: Vec<Vec<GaussianRational>> = coords
        .iter()
        .map(|&row| basis.iter().map(|v| v[row].clone()).collect())
        .collect();
    let left = linalg::inverse(&square).expect("independent basis");

    gens.iter()
        .map(|g| {
            let image: Vec<Vec<GaussianRational>> = basis
                .iter()
                .map(|v| {
                    coords
                        .iter()
                        .map(|&row| {
                            (0..g.dim())
                                .fold(GaussianRational::zero(), |s, t| s + g.get(row, t) * &v[t])
                        })
                        .collect()
                })
                .collect();
            let rows = (0..r)
                .map(|i| {
                    (0..r)
                        .map(|j| {
                            (0..r).fold(GaussianRational::zero(), |acc, k| {
                                acc + &left[i][k] * &image[j][k]
                            })
                        })
                        .collect()
                })
                .collect();
            ExactMatrix::from_rows(rows).expect("square")
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::{generate_closure, DEFAULT_CAP};

    fn group(gens: &[&str]) -> MatrixGroup {
        let gens: Vec<ExactMatrix> = gens.iter().map(|s| s.parse().unwrap()).collect();
        generate_closure(&gens, DEFAULT_CAP).unwrap()
    }

    #[test]
    fn pauli_is_complex_type() {
        let g = group(&["[[0,1],[1,0]]", "[[0,-i],[i,0]]", "[[1,0],[0,-1]]"]);
        assert!(irreducibility_norm(&g).is_one());
        assert_eq!(
            structural_invariant(&g).unwrap(),
            StructuralInvariant {
                value: 0,
                rep_dim: 2
            }
        );
    }

    #[test]
    fn quaternion_and_dihedral_types() {
        let q8 = group(&["[[0,-i],[-i,0]]", "[[0,-1],[1,0]]"]);
        let d8 = group(&["[[0,1],[1,0]]", "[[1,0],[0,-1]]"]);
        assert_eq!(structural_invariant(&q8).unwrap().value, -1);
        assert_eq!(structural_invariant(&d8).unwrap().value, 1);
    }

    #[test]
    fn reducible_is_rejected_strictly_but_blocked() {
        let twice = group(&["[[1,0],[0,1]]"]);
        assert_eq!(
            irreducibility_norm(&twice),
            BigRational::from_integer(4.into())
        );
        assert!(matches!(
            structural_invariant(&twice),
            Err(RepError::Reducible { .. })
        ));
        let b = block_invariants(&twice).unwrap();
        assert_eq!(b.value, 1);
        assert_eq!(b.blocks[0].multiplicity, 2);
    }

    #[test]
    fn direct_sum_of_q8_and_its_conjugate_splits() {
        // iI ⊕ −iI is central and separates the two copies of Q8.
        let a: ExactMatrix = "[[0,-i],[-i,0]]".parse().unwrap();
        let b: ExactMatrix = "[[0,-1],[1,0]]".parse().unwrap();
        let c: ExactMatrix = "[[i,0],[0,i]]".parse().unwrap();
        let g = generate_closure(
            &[a.direct_sum(&a), b.direct_sum(&b), c.direct_sum(&c.neg())],
            DEFAULT_CAP,
        )
        .unwrap();
        let inv = block_invariants(&g).unwrap();
        assert_eq!(inv.blocks.len(), 2);
        assert!(inv
            .blocks
            .iter()
            .all(|b| b.multiplicity == 1 && b.irrep_dim == 2));
    }

    #[test]
    fn two_characters_sharing_a_central_character_are_not_isotypic() {
        // D8 as rot ⊕ refl on the plane, plus two distinct linear characters.
        let g = group(&[
            "[[0,-1,0,0],[1,0,0,0],[0,0,1,0],[0,0,0,-1]]",
            "[[1,0,0,0],[0,-1,0,0],[0,0,1,0],[0,0,0,1]]",
        ]);
        assert_eq!(g.order(), 8);
        assert_eq!(block_invariants(&g).unwrap_err(), RepError::NotIsotypic);
    }

    #[test]
    fn restriction_recovers_block() {
        let a: ExactMatrix = "[[0,1],[1,0]]".parse().unwrap();
        let p = ExactMatrix::identity(2).direct_sum(&ExactMatrix::zero(2));
        let r = restrict_to_image(&p, &[a.direct_sum(&a)]);
        assert_eq!(r[0], a);
    }
}
