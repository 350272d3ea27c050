use serde::{Deserialize, Serialize};

use super::{block_invariants, restrict_to_image, structural_invariant};
use crate::error::RepError;
use crate::group::MatrixGroup;
use crate::linalg;
use crate::matrix::ExactMatrix;
use crate::scalar::GaussianRational;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum FormKind {
    Symmetric,
    Antisymmetric,
    None,
}

impl FormKind {
    /// The indicator value this kind corresponds to.
    pub fn indicator(self) -> i8 {
        match self {
            FormKind::Symmetric => 1,
            FormKind::Antisymmetric => -1,
            FormKind::None => 0,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            FormKind::Symmetric => "symmetric",
            FormKind::Antisymmetric => "antisymmetric",
            FormKind::None => "none",
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct InvariantForm {
    pub kind: FormKind,
    /// Nonsingular invariant form of that kind, when one exists.
    pub witness: Option<ExactMatrix>,
    pub symmetric_dim: usize,
    pub antisymmetric_dim: usize,
}

/// Bases of the invariant symmetric and antisymmetric forms
/// `{B : gᵀ B g = B for every generator, Bᵀ = ±B}`.
pub fn invariant_forms_on(gens: &[ExactMatrix]) -> (Vec<ExactMatrix>, Vec<ExactMatrix>) {
    let n = gens.first().map_or(0, ExactMatrix::dim);
    let var = |r: usize, c: usize| r * n + c;
    let mut invariance = Vec::new();
    for g in gens {
        for i in 0..n {
            for j in 0..n {
                let mut row = vec![GaussianRational::zero(); n * n];
                for r in (0..n).filter(|&r| !g.get(r, i).is_zero()) {
                    for c in (0..n).filter(|&c| !g.get(c, j).is_zero()) {
                        row[var(r, c)] += &(g.get(r, i) * g.get(c, j));
                    }
                }
                row[var(i, j)] += &-GaussianRational::one();
                invariance.push(row);
            }
        }
    }
    let solve = |sign: i64| -> Vec<ExactMatrix> {
        let mut rows = invariance.clone();
        for r in 0..n {
            for c in r..n {
                let mut row = vec![GaussianRational::zero(); n * n];
                row[var(r, c)] += &GaussianRational::one();
                row[var(c, r)] += &GaussianRational::from(-sign);
                rows.push(row);
            }
        }
        linalg::nullspace(&rows, n * n)
            .into_iter()
            .map(|v| ExactMatrix::from_entries(n, v).expect("n² entries"))
            .collect()
    };
    (solve(1), solve(-1))
}

fn nonsingular_combination(basis: &[ExactMatrix]) -> Option<ExactMatrix> {
    // Weights k² + t·k + 1 avoid the rank-one pencils that geometric
    // weights fall into; a generic combination is nonsingular.
    (1..=16i64).find_map(|t| {
        let mut acc = ExactMatrix::zero(basis.first()?.dim());
        for (k, b) in basis.iter().enumerate() {
            let k = k as i64;
            acc = acc
                .add(&b.scale(&GaussianRational::from(k * k + t * k + 1)))
                .expect("same dim");
        }
        acc.is_invertible().then_some(acc)
    })
}

/// Classify the forms of `m` copies of one irreducible representation.
/// Real type gives m(m+1)/2 symmetric and m(m-1)/2 antisymmetric forms,
/// quaternionic type the reverse, complex type none at all.
fn classify(gens: &[ExactMatrix], multiplicity: usize) -> Option<InvariantForm> {
    let (sym, anti) = invariant_forms_on(gens);
    let m = multiplicity;
    let (big, small) = (m * (m + 1) / 2, m * (m - 1) / 2);
    let (kind, basis) = match (sym.len(), anti.len()) {
        (0, 0) => (FormKind::None, &sym),
        (s, a) if s == big && a == small => (FormKind::Symmetric, &sym),
        (s, a) if s == small && a == big => (FormKind::Antisymmetric, &anti),
        _ => return None,
    };
    let witness = if kind == FormKind::None {
        None
    } else {
        nonsingular_combination(basis)
    };
    Some(InvariantForm {
        kind,
        witness,
        symmetric_dim: sym.len(),
        antisymmetric_dim: anti.len(),
    })
}

fn check(form: InvariantForm, indicator: i8) -> Result<InvariantForm, RepError> {
    let nonsingular_ok = form.kind == FormKind::None || form.witness.is_some();
    if form.kind.indicator() != indicator || !nonsingular_ok {
        return Err(RepError::InconsistentForm {
            form: form.kind.name().into(),
            indicator,
        });
    }
    Ok(form)
}

/// Invariant bilinear form of an irreducible defining representation,
/// cross-checked against its indicator.
pub fn invariant_bilinear_form(g: &MatrixGroup) -> Result<InvariantForm, RepError> {
    let inv = structural_invariant(g)?;
    let form = classify(&g.generators(), 1).ok_or_else(|| RepError::InconsistentForm {
        form: "indeterminate".into(),
        indicator: inv.value,
    })?;
    check(form, inv.value)
}

/// Invariant form of each isotypic block, in the order of
/// [`block_invariants`].
pub fn block_forms(g: &MatrixGroup) -> Result<Vec<InvariantForm>, RepError> {
    let blocks = block_invariants(g)?;
    let gens = g.generators();
    blocks
        .blocks
        .iter()
        .map(|b| {
            let restricted = restrict_to_image(&b.projector, &gens);
            let form = classify(&restricted, b.multiplicity).ok_or_else(|| {
                RepError::InconsistentForm {
                    form: "indeterminate".into(),
                    indicator: b.indicator,
                }
            })?;
            check(form, b.indicator)
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
    fn three_types() {
        let pauli = group(&["[[0,1],[1,0]]", "[[0,-i],[i,0]]", "[[1,0],[0,-1]]"]);
        let q8 = group(&["[[0,-i],[-i,0]]", "[[0,-1],[1,0]]"]);
        let d8 = group(&["[[0,1],[1,0]]", "[[1,0],[0,-1]]"]);
        assert_eq!(
            invariant_bilinear_form(&pauli).unwrap().kind,
            FormKind::None
        );
        let f = invariant_bilinear_form(&q8).unwrap();
        assert_eq!(f.kind, FormKind::Antisymmetric);
        let w = f.witness.unwrap();
        assert_eq!(w.transpose(), w.neg());
        assert_eq!(
            invariant_bilinear_form(&d8).unwrap().kind,
            FormKind::Symmetric
        );
    }

    #[test]
    fn doubled_block_uses_multiplicity_counts() {
        let q8 = group(&["[[0,-i],[-i,0]]", "[[0,-1],[1,0]]"]);
        let doubled = generate_closure(
            &q8.generators()
                .iter()
                .map(|m| m.direct_sum(m))
                .collect::<Vec<_>>(),
            DEFAULT_CAP,
        )
        .unwrap();
        let forms = block_forms(&doubled).unwrap();
        assert_eq!(forms.len(), 1);
        assert_eq!(forms[0].kind, FormKind::Antisymmetric);
        assert_eq!((forms[0].symmetric_dim, forms[0].antisymmetric_dim), (1, 3));
    }
}
