mod common;

use common::eval;
use nckit_core::formula::{substitution, Formula, Substitution};
use nckit_core::kripke::Model;
use nckit_core::random::{self, seeded};
use nckit_core::{parse, render};
use proptest::prelude::*;

fn formula() -> impl Strategy<Value = Formula> {
    let leaf = prop_oneof![
        Just(Formula::Top),
        Just(Formula::bottom()),
        "[pqr]".prop_map(Formula::atom),
    ];
    leaf.prop_recursive(5, 32, 2, |inner| {
        prop_oneof![
            inner.clone().prop_map(Formula::not),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| a.and(b)),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| a.or(b)),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| a.implies(b)),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| a.iff(b)),
            inner.clone().prop_map(Formula::boxed),
            inner.clone().prop_map(Formula::diamond),
            inner.clone().prop_map(Formula::delta),
            inner.clone().prop_map(Formula::nabla),
            inner.clone().prop_map(Formula::circ),
            inner.clone().prop_map(Formula::bullet),
            inner.clone().prop_map(Formula::tri),
            inner.prop_map(Formula::blackdown),
        ]
    })
}

fn small_model() -> impl Strategy<Value = Model> {
    any::<u64>().prop_map(|seed| random::model(&mut seeded(seed), 1, 4, &["p", "q", "r"]))
}

/// `σ` then `τ`, as one substitution.
fn compose(sigma: &Substitution, tau: &Substitution) -> Substitution {
    let mut out: Substitution = sigma
        .iter()
        .map(|(p, phi)| (p.clone(), phi.substitute(tau)))
        .collect();
    for (p, phi) in tau {
        out.entry(p.clone()).or_insert_with(|| phi.clone());
    }
    out
}

proptest! {
    #[test]
    fn printing_then_parsing_is_identity(phi in formula()) {
        let text = render(&phi);
        prop_assert_eq!(parse(&text).unwrap(), phi, "{}", text);
    }

    #[test]
    fn substitutions_compose(phi in formula(), a in formula(), b in formula(), c in formula()) {
        let sigma = substitution([("p", a), ("q", b)]);
        let tau = substitution([("p", c.clone()), ("r", c)]);
        prop_assert_eq!(
            phi.substitute(&sigma).substitute(&tau),
            phi.substitute(&compose(&sigma, &tau))
        );
    }

    #[test]
    fn derived_connectives_mean_what_they_say(m in small_model(), a in formula(), b in formula()) {
        for w in 0..m.len() {
            let (x, y) = (eval(&m, w, &a), eval(&m, w, &b));
            prop_assert_eq!(eval(&m, w, &a.clone().or(b.clone())), x || y);
            prop_assert_eq!(eval(&m, w, &a.clone().implies(b.clone())), !x || y);
            prop_assert_eq!(eval(&m, w, &a.clone().iff(b.clone())), x == y);
            prop_assert!(!eval(&m, w, &Formula::bottom()));
            let succ = m.frame().succ(w);
            prop_assert_eq!(eval(&m, w, &a.clone().diamond()), succ.iter().any(|&v| eval(&m, v, &a)));
            prop_assert_eq!(eval(&m, w, &a.clone().nabla()), !eval(&m, w, &a.clone().delta()));
            prop_assert_eq!(eval(&m, w, &a.clone().bullet()), !eval(&m, w, &a.clone().circ()));
            prop_assert_eq!(eval(&m, w, &a.clone().blackdown()), !eval(&m, w, &a.clone().tri()));
        }
    }

    #[test]
    fn set_evaluator_matches_pointwise_clauses(m in small_model(), phi in formula()) {
        let set = nckit_core::semantics::truth_set(&m, &phi);
        for w in 0..m.len() {
            prop_assert_eq!(set.contains(w), eval(&m, w, &phi));
        }
    }

    #[test]
    fn truth_ignores_atoms_not_mentioned(seed in any::<u64>(), phi in formula()) {
        let mut rng = seeded(seed);
        let m = random::model(&mut rng, 1, 4, &["p", "q", "r", "s"]);
        let mut val = m.valuation().clone();
        val.get_mut("s").unwrap().toggle_range(..);
        let changed = Model::from_sets(m.frame().clone(), val);
        for w in 0..m.len() {
            prop_assert_eq!(eval(&m, w, &phi), eval(&changed, w, &phi));
        }
    }
}

#[test]
fn degenerate_worlds_make_every_modality_true() {
    let m = common::model("prop3_2_N");
    let mut rng = seeded(11);
    for _ in 0..50 {
        let phi = random::formula(&mut rng, &["p", "q"], &nckit_core::Modality::ALL, 3);
        for op in [Formula::boxed, Formula::delta, Formula::circ, Formula::tri] {
            assert!(eval(&m, 0, &op(phi.clone())));
        }
    }
}

#[test]
fn parse_errors_report_position() {
    for bad in ["p &", "(p", "p q", "#", "p -> -> q", ""] {
        assert!(parse(bad).is_err(), "{bad}");
    }
}
