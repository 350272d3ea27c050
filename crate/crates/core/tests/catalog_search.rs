use std::collections::BTreeSet;

use gamma_groups::catalog::{
    catalog_get, catalog_names, catalog_validate, decompose_order32_subgroups,
    enumerate_extensions, find_gamma_models, identify_stable, sweep_signatures, Pool,
    SignatureSpec,
};
use gamma_groups::group::is_isomorphic;

#[test]
fn every_catalog_entry_validates() {
    for name in catalog_names() {
        let report = catalog_validate(name).unwrap();
        let failed: Vec<_> = report.failures().collect();
        assert!(failed.is_empty(), "{name}: {failed:?}");
    }
}

#[test]
fn stable_groups_identify_as_themselves() {
    for name in ["D_I", "D_II", "D_III", "D_IV", "D_V"] {
        assert_eq!(identify_stable(&catalog_get(name).unwrap().0), Some(name));
    }
    assert_eq!(identify_stable(&catalog_get("pauli").unwrap().0), None);
}

#[test]
fn same_order_stable_groups_are_not_isomorphic() {
    let (a, b) = (
        catalog_get("D_I").unwrap().0,
        catalog_get("D_II").unwrap().0,
    );
    assert!(is_isomorphic(&a, &b).is_none());
    let (iii, iv) = (
        catalog_get("D_III").unwrap().0,
        catalog_get("D_IV").unwrap().0,
    );
    assert_eq!(iii.order(), iv.order());
    assert!(is_isomorphic(&iii, &iv).is_none());
}

#[test]
fn there_are_thirty_two_signatures() {
    let all = SignatureSpec::all();
    assert_eq!(all.len(), 32);
    assert_eq!(
        all.iter()
            .map(ToString::to_string)
            .collect::<BTreeSet<_>>()
            .len(),
        32
    );
}

#[test]
fn single_signature_models() {
    let pool = Pool::default_pool();
    let models = find_gamma_models(&"++++:anti".parse().unwrap(), &pool).unwrap();
    assert_eq!(models.len(), 1);
    assert_eq!(models[0].identified.as_deref(), Some("D_II"));
    assert_eq!(models[0].profile.invariant, Some(-1));
}

#[test]
fn four_dimensional_pool_misses_the_wide_center_groups() {
    // Groups with an 8-element center have no faithful 4-dim monomial model.
    let sweep = sweep_signatures(&SignatureSpec::all(), &Pool::load("dirac4").unwrap()).unwrap();
    let found: BTreeSet<String> = sweep
        .classes
        .iter()
        .filter_map(|c| c.identified.clone())
        .collect();
    assert_eq!(sweep.classes.len(), 3);
    assert_eq!(
        found,
        BTreeSet::from(["D_I".into(), "D_II".into(), "D_III".into()])
    );
}

#[test]
fn extensions_of_the_dirac_group() {
    let pool = Pool::default_pool();
    let plus = enumerate_extensions("D_II", 1, &pool).unwrap();
    let minus = enumerate_extensions("D_II", -1, &pool).unwrap();
    assert_eq!(plus.len(), 1);
    assert_eq!(minus.len(), 1);
    assert_eq!(plus[0].identified.as_deref(), Some("Delta1"));
    assert_eq!(minus[0].identified.as_deref(), Some("Delta3"));
    assert!(plus[0].representative.top_product_central);
    assert_eq!(plus[0].representative.top_product_square, Some(1));
    assert_eq!(minus[0].representative.top_product_square, Some(-1));
}

#[test]
fn unknown_base_is_rejected() {
    assert!(enumerate_extensions("pauli", 1, &Pool::default_pool()).is_err());
}

#[test]
fn decomposition_requires_order_64() {
    let g = catalog_get("D_II").unwrap().0;
    assert!(decompose_order32_subgroups("D_II", &g).is_err());
}

#[test]
fn delta_decompositions_have_31_subgroups_in_3_types() {
    for name in ["Delta1", "Delta2", "Delta3"] {
        let d = decompose_order32_subgroups(name, &catalog_get(name).unwrap().0).unwrap();
        assert_eq!(d.index2_count, 31, "{name}");
        assert_eq!(d.iso_classes, 3, "{name}");
        assert_eq!(d.types.len(), 3, "{name}");
        assert_eq!(d.composition.values().sum::<usize>(), 31, "{name}");
    }
}
