mod common;

use common::{eval_named, f};
use nckit_core::kripke::FrameProperty;
use nckit_core::random::{self, seeded};
use nckit_core::sat::{fmp_bound, satisfiable, SatOutcome};
use nckit_core::Modality;

#[test]
fn more_worlds_never_lose_a_model() {
    let mut rng = seeded(41);
    for _ in 0..40 {
        let phi = random::formula(&mut rng, &["p"], &Modality::ALL, 2);
        let mut seen = false;
        for n in 1..=3 {
            let sat = satisfiable(&phi, &[], n).unwrap().is_sat();
            assert!(!seen || sat, "lost a model at {n} worlds");
            seen |= sat;
        }
    }
}

#[test]
fn witnesses_lie_in_the_requested_class() {
    let mut rng = seeded(42);
    let classes = [
        vec![FrameProperty::Reflexive],
        vec![FrameProperty::Transitive],
        vec![FrameProperty::Symmetric],
        vec![FrameProperty::Equivalence],
    ];
    for class in &classes {
        for _ in 0..15 {
            let phi = random::formula(&mut rng, &["p"], &Modality::ALL, 2);
            let r = satisfiable(&phi, class, 3).unwrap();
            assert!(!matches!(r.outcome, SatOutcome::UnsatCertified(_)));
            if let Some((m, w)) = r.witness() {
                assert!(class.iter().all(|&p| m.frame().has_property(p)));
                assert!(eval_named(&m, w, &phi));
            }
        }
    }
}

#[test]
fn reflexive_collapse_shows_up_in_search() {
    let phi = f("#p & !%p");
    assert!(!satisfiable(&phi, &[FrameProperty::Reflexive], 3)
        .unwrap()
        .is_sat());
    assert!(!satisfiable(&phi, &[], 3).unwrap().is_sat());
    let weak_only = f("%p & !#p");
    assert!(satisfiable(&weak_only, &[], 2).unwrap().is_sat());
    assert!(!satisfiable(&weak_only, &[FrameProperty::Reflexive], 3)
        .unwrap()
        .is_sat());
}

#[test]
fn bounds_grow_with_depth() {
    assert_eq!(fmp_bound(&f("p")), 1);
    assert!(fmp_bound(&f("#p")) <= fmp_bound(&f("##p")));
}
