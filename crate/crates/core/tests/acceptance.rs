//! One PASS/FAIL line per acceptance criterion; exits non-zero if any
//! criterion fails. Runs without the libtest harness so the lines are
//! always shown.

mod common;

use gamma_groups::report::{run_claims, ClaimResult, Status};
use proptest::prelude::*;
use proptest::sample::Index;

struct Criterion {
    number: u32,
    title: &'static str,
    claims: fn(&str) -> bool,
}

const CRITERIA: [Criterion; 10] = [
    Criterion {
        number: 1,
        title: "Pauli group order, classes, center, census, rank",
        claims: |id| {
            [
                "pauli.order",
                "pauli.classes",
                "pauli.center",
                "pauli.census",
                "pauli.rank",
            ]
            .contains(&id)
        },
    },
    Criterion {
        number: 2,
        title: "quaternion subgroups of both kinds",
        claims: |id| id.starts_with("quaternion."),
    },
    Criterion {
        number: 3,
        title: "commutator tables, substitution, product identities",
        claims: |id| id.starts_with("brackets."),
    },
    Criterion {
        number: 4,
        title: "weight numbers",
        claims: |id| id.starts_with("weights."),
    },
    Criterion {
        number: 5,
        title: "Dirac group structure and components",
        claims: |id| id.starts_with("dirac."),
    },
    Criterion {
        number: 6,
        title: "structural invariants of the five stable groups",
        claims: |id| id.starts_with("invariants."),
    },
    Criterion {
        number: 7,
        title: "exhaustive signature search",
        claims: |id| id == "search.exhaustive",
    },
    Criterion {
        number: 8,
        title: "Delta structure, decompositions, central product",
        claims: |id| {
            id.starts_with("delta.") && !id.ends_with(".form") && !id.ends_with(".realform")
        },
    },
    Criterion {
        number: 9,
        title: "exhaustive extensions",
        claims: |id| id == "extensions.exhaustive",
    },
    Criterion {
        number: 10,
        title: "invariant forms on the Delta blocks",
        claims: |id| id.ends_with(".form") || id.ends_with(".realform"),
    },
];

fn property_suites() -> Result<usize, String> {
    let groups = common::all_groups();
    for (name, g) in &groups {
        common::check_cayley(name, g)?;
        common::check_class_equation(name, g)?;
        common::check_census(name, g)?;
        common::check_trichotomy(name, g)?;
    }
    let strategy = (
        0..groups.len(),
        any::<Index>(),
        any::<Index>(),
        any::<Index>(),
    );
    common::runner(256)
        .run(&strategy, |(k, a, b, c)| {
            let g = &groups[k].1;
            let (a, b, c) = (a.index(g.order()), b.index(g.order()), c.index(g.order()));
            prop_assert_eq!(g.mul(g.mul(a, b), c), g.mul(a, g.mul(b, c)));
            prop_assert_eq!(
                g.index_of(&g.element(a).mul(g.element(b)).unwrap()),
                Some(g.mul(a, b))
            );
            Ok(())
        })
        .map_err(|e| e.to_string())?;
    Ok(groups.len())
}

fn line(number: u32, pass: bool, title: &str, detail: &str) -> bool {
    println!(
        "{} criterion {number}: {title}{detail}",
        if pass { "PASS" } else { "FAIL" }
    );
    pass
}

fn main() {
    let results: Vec<ClaimResult> = run_claims(None, false).expect("claims run");
    let mut all = true;
    for c in &CRITERIA {
        let mine: Vec<&ClaimResult> = results.iter().filter(|r| (c.claims)(&r.claim_id)).collect();
        let failed: Vec<String> = mine
            .iter()
            .filter(|r| r.status == Status::Fail)
            .map(|r| {
                format!(
                    "{} (expected `{}`, computed `{}`)",
                    r.claim_id, r.expected, r.computed
                )
            })
            .collect();
        let pass = !mine.is_empty() && failed.is_empty();
        let detail = if pass {
            format!(" [{} checks]", mine.len())
        } else {
            format!(" [failed: {}]", failed.join("; "))
        };
        all &= line(c.number, pass, c.title, &detail);
    }
    let props = property_suites();
    let detail = match &props {
        Ok(n) => format!(" [{n} catalog groups, seed {}]", common::seed()),
        Err(e) => format!(" [{e}]"),
    };
    all &= line(
        11,
        props.is_ok(),
        "property suites on every catalog group",
        &detail,
    );
    if !all {
        std::process::exit(1);
    }
}
