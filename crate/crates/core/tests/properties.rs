mod common;

use common::*;
use gamma_groups::GaussianRational;
use proptest::prelude::*;
use proptest::test_runner::TestCaseError;

fn gaussian() -> impl Strategy<Value = GaussianRational> {
    (-20i64..20, 1i64..9, -20i64..20, 1i64..9)
        .prop_map(|(a, b, c, d)| GaussianRational::from_fractions((a, b), (c, d)))
}

#[test]
fn cayley_tables_are_latin_squares() {
    for (name, g) in all_groups() {
        check_cayley(name, &g).unwrap();
    }
}

#[test]
fn class_equation_holds() {
    for (name, g) in all_groups() {
        check_class_equation(name, &g).unwrap();
    }
}

#[test]
fn census_sum_of_squares_is_the_order() {
    for (name, g) in all_groups() {
        check_census(name, &g).unwrap();
    }
}

#[test]
fn indicator_agrees_with_form_kind_on_every_entry() {
    let groups = all_groups();
    assert!(groups.len() >= 12);
    for (name, g) in groups {
        check_trichotomy(name, &g).unwrap();
    }
}

#[test]
fn random_products_match_matrix_multiplication() {
    let groups = all_groups();
    let mut runner = common::runner(256);
    runner
        .run(
            &(
                0..groups.len(),
                any::<prop::sample::Index>(),
                any::<prop::sample::Index>(),
                any::<prop::sample::Index>(),
            ),
            |(k, a, b, c)| {
                let g = &groups[k].1;
                let (a, b, c) = (a.index(g.order()), b.index(g.order()), c.index(g.order()));
                let ab = g.element(a).mul(g.element(b)).unwrap();
                prop_assert_eq!(g.index_of(&ab), Some(g.mul(a, b)));
                prop_assert_eq!(g.mul(g.mul(a, b), c), g.mul(a, g.mul(b, c)));
                prop_assert_eq!(g.mul(a, g.inv(a)), 0);
                prop_assert!(g.element(0).is_identity());
                Ok(())
            },
        )
        .unwrap();
}

#[test]
fn gaussian_field_axioms() {
    common::runner(512)
        .run(&(gaussian(), gaussian(), gaussian()), |(x, y, z)| {
            prop_assert_eq!(&(&x * &y) * &z, &x * &(&y * &z));
            prop_assert_eq!(&x * &(&y + &z), &(&x * &y) + &(&x * &z));
            prop_assert_eq!(&x + &y, &y + &x);
            if let Some(inv) = x.inv() {
                prop_assert!((&x * &inv).is_one());
            } else {
                prop_assert!(x.is_zero());
            }
            prop_assert_eq!((&x * &x.conj()).im().clone(), num_rational_zero());
            Ok(())
        })
        .unwrap();
}

fn num_rational_zero() -> num_rational::BigRational {
    num_rational::BigRational::from_integer(0.into())
}

#[test]
fn entry_text_round_trips() {
    common::runner(512)
        .run(&gaussian(), |x| {
            let text = x.to_string();
            let back: GaussianRational = text
                .parse()
                .map_err(|e| TestCaseError::fail(format!("{text}: {e}")))?;
            prop_assert_eq!(back, x);
            Ok(())
        })
        .unwrap();
}

#[test]
fn seed_is_fixed_by_default() {
    if std::env::var("GAMMA_GROUPS_SEED").is_err() {
        assert_eq!(common::seed(), common::DEFAULT_SEED);
    }
}
