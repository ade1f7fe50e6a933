mod support;

use fpal_core::algebra::Limits;
use fpal_core::cpo_model::{self, check_equation, PosetModel};
use fpal_core::entailment::{conclusion_divisors, entails, equivalent, EntailOptions};
use fpal_core::identities::gamma;
use fpal_core::{Automaton, Subject};
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use support::corpus::random_automaton;

fn automaton() -> impl proptest::strategy::Strategy<Value = Automaton> {
    any::<u64>().prop_map(|seed| random_automaton(&mut ChaCha8Rng::seed_from_u64(seed), 4, 3))
}

fn holds(hyps: &[&Automaton], concl: &Automaton) -> bool {
    let hyps: Vec<Subject> = hyps.iter().map(|&q| q.clone().into()).collect();
    entails(&hyps, &concl.clone().into(), &EntailOptions::default())
        .unwrap()
        .holds
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(96))]

    #[test]
    fn entailment_is_reflexive(q in automaton()) {
        prop_assert!(holds(&[&q], &q));
    }

    #[test]
    fn more_hypotheses_never_hurt(h in automaton(), extra in automaton(), c in automaton()) {
        if holds(&[&h], &c) {
            prop_assert!(holds(&[&h, &extra], &c));
            prop_assert!(holds(&[&extra, &h], &c));
        }
    }

    #[test]
    fn entailment_is_transitive(h in automaton(), q1 in automaton(), q2 in automaton()) {
        if holds(&[&h], &q1) && holds(&[&q1], &q2) {
            prop_assert!(holds(&[&h], &q2));
        }
    }

    #[test]
    fn report_partitions_the_conclusion(h in automaton(), c in automaton()) {
        let report = entails(&[h.into()], &c.clone().into(), &EntailOptions::default()).unwrap();
        let covered: std::collections::BTreeSet<_> = report.coverage.iter().map(|cv| cv.divisor.clone()).collect();
        let all: std::collections::BTreeSet<_> = covered.iter().chain(&report.missing).cloned().collect();
        prop_assert_eq!(&all, &conclusion_divisors(&c.into(), &Limits::default()).unwrap());
        prop_assert_eq!(report.holds, report.missing.is_empty());
    }

    #[test]
    fn extensions_are_equivalent(q in automaton(), seed: u64) {
        let limits = Limits::default();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let word: Vec<usize> = (0..rng.gen_range(0..5)).map(|_| rng.gen_range(0..q.n_letters())).collect();
        let e = q.with_letters([("w".to_string(), q.induced(&word))]).unwrap();
        prop_assert!(holds(&[&q], &e) && holds(&[&e], &q));
        prop_assert!(equivalent(&q.clone().into(), &e.into(), &limits).unwrap());
    }
}

#[test]
fn model_never_refutes_an_automaton_identity() {
    let p = PosetModel::chain(2).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(23);
    for _ in 0..40 {
        let h = random_automaton(&mut rng, 3, 2);
        let c = random_automaton(&mut rng, 3, 2);
        let report = entails(&[h.into()], &c.clone().into(), &EntailOptions::default()).unwrap();
        let check = check_equation(&gamma(&c, 1).unwrap(), &p, cpo_model::Strategy::default()).unwrap();
        assert!(check.holds, "verdict {} but the model refutes", report.holds);
    }
}
