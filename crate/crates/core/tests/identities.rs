use std::sync::Arc;

use plactic_core::identities::{
    compare_monoids, enumerate_identities, holds_at_bound, localization_lemma_check, satisfies,
    unbalanced_counterexample,
};
use plactic_core::localization::{fraction_equal, LocalizedElement};
use plactic_core::{run_suite, Catalog, Identity, Suite, SuiteConfig, SuiteReport, Var, VarWord, Word};
use proptest::prelude::*;

fn id(s: &str) -> Identity {
    s.parse().unwrap()
}

#[test]
fn verdict_examples() {
    let c = Catalog::builtin();
    let v = holds_at_bound(&c.m, &id("xy=yx"), 1).unwrap();
    assert_eq!(v.witness.unwrap().to_string(), "x->a, y->b");
    assert!(!holds_at_bound(&c.n2, &id("x=x"), 2).unwrap().fails());
    assert_eq!(holds_at_bound(&c.m, &id("xx=xxx"), 1).unwrap().witness.unwrap().to_string(), "x->a");
}

#[test]
fn identities_of_m_hold_in_its_quotients() {
    let c = Catalog::builtin();
    let ids = enumerate_identities(2, 6, true);
    for row in compare_monoids(&[Arc::clone(&c.m), Arc::clone(&c.n1), Arc::clone(&c.n2)], &ids, 2) {
        assert!(!row.quotient_violation, "{}", row.identity);
    }
}

#[test]
fn known_survivors_of_n1() {
    let c = Catalog::builtin();
    for s in ["xxxxyxxx=xxxyxxxx", "xyxxyxyx=xyxyxxyx"] {
        assert!(!holds_at_bound(&c.n1, &id(s), 2).unwrap().fails(), "{s}");
    }
    assert!(!holds_at_bound(&c.n2, &id("xxxyxx=xxyxxx"), 2).unwrap().fails());
    assert!(holds_at_bound(&c.n1, &id("xxxyxx=xxyxxx"), 2).unwrap().fails());
}

#[test]
fn localization_check_notes_base_counterexamples() {
    let c = Catalog::builtin();
    let r = localization_lemma_check(&c.n1, &id("xy=yx"), 1, -1..=1).unwrap();
    assert_eq!(r.violation_count, 0);
    assert!(r.notes.iter().any(|n| n.contains("counterexample")));
    assert!(localization_lemma_check(&c.n1, &id("xy=y"), 1, -1..=1).is_err());
}

#[test]
fn localization_check_passes_on_survivor() {
    let c = Catalog::builtin();
    let r = localization_lemma_check(&c.n2, &id("xxxyxx=xxyxxx"), 2, -2..=2).unwrap();
    assert!(r.passed(), "{:?}", r.violations);
    assert!(r.checked > 0);
}

#[test]
fn suites_are_deterministic_across_thread_counts() {
    let run = |threads: usize| {
        let pool = rayon::ThreadPoolBuilder::new().num_threads(threads).build().unwrap();
        pool.install(|| {
            let catalog = Catalog::builtin();
            let mut config = SuiteConfig::new(Suite::LocalizationLemma);
            config.count = 3;
            let mut report = run_suite(&catalog, &config).unwrap();
            report.elapsed_ms = 0;
            for check in &mut report.checks {
                check.elapsed_ms = 0;
            }
            report.to_json()
        })
    };
    assert_eq!(run(1), run(4));
}

#[test]
fn suite_report_json_round_trips() {
    let catalog = Catalog::builtin();
    let mut config = SuiteConfig::new(Suite::Delta);
    config.len = Some(2);
    config.sample = Some(50);
    let report = run_suite(&catalog, &config).unwrap();
    assert!(report.passed);
    let text = report.to_json();
    let back: SuiteReport = serde_json::from_str(&text).unwrap();
    assert_eq!(back.to_json(), text);
}

fn var_word(max: usize) -> impl Strategy<Value = VarWord> {
    prop::collection::vec(0u8..2, 0..=max).prop_map(|v| v.into_iter().map(Var).collect())
}

fn word(max: usize) -> impl Strategy<Value = Word> {
    prop::collection::vec(0u8..3, 0..=max).prop_map(|v| v.into_iter().map(plactic_core::Letter).collect())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn unbalanced_identities_fail_everywhere(l in var_word(5), r in var_word(5)) {
        let ident = Identity { lhs: l, rhs: r };
        prop_assume!(!ident.is_balanced());
        let s = unbalanced_counterexample(&ident).unwrap();
        for h in Catalog::builtin().handles() {
            prop_assert!(!satisfies(&h, &ident, &s).unwrap(), "{} in {}", ident, h.name());
        }
    }

    #[test]
    fn localized_multiplication_is_associative(
        u in word(3), v in word(3), w in word(3), m in -2i64..=2, n in -2i64..=2, k in -2i64..=2,
    ) {
        let c = Catalog::builtin();
        for base in [&c.m, &c.n1, &c.n2] {
            let x = LocalizedElement::new(base, &u, m).unwrap();
            let y = LocalizedElement::new(base, &v, n).unwrap();
            let z = LocalizedElement::new(base, &w, k).unwrap();
            let left = x.mul(&y).unwrap().mul(&z).unwrap();
            let right = x.mul(&y.mul(&z).unwrap()).unwrap();
            prop_assert!(left.localized_equal(&right).unwrap());
        }
    }

    #[test]
    fn fractions_compare_through_z(u in word(4), v in word(4), m in -3i64..=3, n in -3i64..=3) {
        let c = Catalog::builtin();
        let z = plactic_core::plactic::z_word();
        for base in [&c.m, &c.n1, &c.n2] {
            let direct = fraction_equal(base, &u, m, &v, n).unwrap();
            let lifted = base
                .equal(&u.concat(&z.pow((m + 3) as usize)), &v.concat(&z.pow((n + 3) as usize)))
                .unwrap();
            prop_assert_eq!(direct, lifted);
        }
    }
}
