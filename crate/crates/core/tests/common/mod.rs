#![allow(dead_code)]

use gamma_groups::catalog::{catalog_get, catalog_names};
use gamma_groups::rep::{block_forms, block_invariants, irrep_census};
use gamma_groups::MatrixGroup;
use proptest::test_runner::{Config, RngAlgorithm, TestRng, TestRunner};

pub fn all_groups() -> Vec<(&'static str, MatrixGroup)> {
    catalog_names()
        .into_iter()
        .map(|n| (n, catalog_get(n).unwrap().0))
        .collect()
}

/// Axioms, Latin-square rows and columns, identity at index 0.
pub fn check_cayley(name: &str, g: &MatrixGroup) -> Result<(), String> {
    if !g.check_axioms() || !g.element(0).is_identity() {
        return Err(format!("{name}: group axioms"));
    }
    let n = g.order();
    for a in 0..n {
        let mut row: Vec<usize> = (0..n).map(|b| g.mul(a, b)).collect();
        let mut col: Vec<usize> = (0..n).map(|b| g.mul(b, a)).collect();
        row.sort_unstable();
        col.sort_unstable();
        if !row.iter().copied().eq(0..n) || !col.iter().copied().eq(0..n) {
            return Err(format!("{name}: row or column {a} is not a permutation"));
        }
    }
    Ok(())
}

pub fn check_class_equation(name: &str, g: &MatrixGroup) -> Result<(), String> {
    let classes = g.conjugacy_classes();
    let total: usize = classes.iter().map(Vec::len).sum();
    let singletons = classes.iter().filter(|c| c.len() == 1).count();
    if total != g.order()
        || classes.iter().any(|c| !g.order().is_multiple_of(c.len()))
        || singletons != g.center().order()
    {
        return Err(format!("{name}: class equation"));
    }
    Ok(())
}

pub fn check_census(name: &str, g: &MatrixGroup) -> Result<(), String> {
    let census = irrep_census(g).map_err(|e| format!("{name}: {e}"))?;
    if census.sum_of_squares() != g.order() || census.num_irreps != g.conjugacy_classes().len() {
        return Err(format!("{name}: census {} does not fit", census.summary()));
    }
    Ok(())
}

/// Indicator of every block matches the kind of invariant form found on it.
pub fn check_trichotomy(name: &str, g: &MatrixGroup) -> Result<(), String> {
    let inv = block_invariants(g).map_err(|e| format!("{name}: {e}"))?;
    let forms = block_forms(g).map_err(|e| format!("{name}: {e}"))?;
    for (block, form) in inv.blocks.iter().zip(&forms) {
        if form.kind.indicator() != block.indicator
            || form.witness.is_some() != (block.indicator != 0)
        {
            return Err(format!(
                "{name}: indicator {} vs form {}",
                block.indicator,
                form.kind.name()
            ));
        }
    }
    Ok(())
}

/// Seed for every randomized suite; override with `GAMMA_GROUPS_SEED`.
pub const DEFAULT_SEED: u64 = 0x5eed_2024;

pub fn seed() -> u64 {
    std::env::var("GAMMA_GROUPS_SEED")
        .ok()
        .and_then(|s| s.parse().ok())
        .unwrap_or(DEFAULT_SEED)
}

/// A proptest runner whose RNG is fixed by [`seed`].
pub fn runner(cases: u32) -> TestRunner {
    let mut bytes = [0u8; 32];
    bytes[..8].copy_from_slice(&seed().to_le_bytes());
    let config = Config {
        cases,
        failure_persistence: None,
        ..Config::default()
    };
    TestRunner::new_with_rng(config, TestRng::from_seed(RngAlgorithm::ChaCha, &bytes))
}
