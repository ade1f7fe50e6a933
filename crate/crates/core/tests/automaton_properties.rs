mod support;

use std::collections::BTreeSet;

use fpal_core::algebra::{simple_divisors_monoid, transition_monoid, FiniteGroup, Limits};
use fpal_core::automaton::Automaton;
use proptest::prelude::*;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use support::corpus::random_automaton;

fn automaton(max_states: usize, max_letters: usize) -> impl Strategy<Value = Automaton> {
    any::<u64>().prop_map(move |seed| random_automaton(&mut ChaCha8Rng::seed_from_u64(seed), max_states, max_letters))
}

fn element_set(q: &Automaton) -> BTreeSet<Vec<usize>> {
    let m = transition_monoid(q, &Limits::default()).unwrap();
    m.elements().iter().map(|t| t.images().to_vec()).collect()
}

/// Appends `k` letters, each acting as a random word of `q`.
fn extend_by_words(q: &Automaton, k: usize, rng: &mut impl Rng) -> Automaton {
    let extra = (0..k).map(|i| {
        let len = rng.gen_range(0..5);
        let word: Vec<usize> = (0..len).map(|_| rng.gen_range(0..q.n_letters())).collect();
        (format!("w{i}"), q.induced(&word))
    });
    q.with_letters(extra).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(96))]

    #[test]
    fn monoid_is_closed_and_witnessed(q in automaton(4, 3)) {
        let m = transition_monoid(&q, &Limits::default()).unwrap();
        prop_assert!(m.index_of(&q.induced(&[])).is_some());
        for i in 0..m.order() {
            prop_assert_eq!(&q.induced(m.witness(i)), m.element(i));
            for j in 0..m.order() {
                let prod = m.element(i).then(m.element(j));
                prop_assert_eq!(m.index_of(&prod), Some(m.product(i, j)));
            }
        }
    }

    #[test]
    fn induced_is_a_homomorphism(q in automaton(5, 3), seed: u64) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        for _ in 0..10 {
            let u: Vec<usize> = (0..rng.gen_range(0..6)).map(|_| rng.gen_range(0..q.n_letters())).collect();
            let v: Vec<usize> = (0..rng.gen_range(0..6)).map(|_| rng.gen_range(0..q.n_letters())).collect();
            let uv: Vec<usize> = u.iter().chain(&v).copied().collect();
            prop_assert_eq!(q.induced(&uv), q.induced(&u).then(&q.induced(&v)));
        }
    }

    #[test]
    fn relabelling_preserves_the_monoid(q in automaton(4, 3), seed: u64) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut sigma: Vec<usize> = (0..q.n_states()).collect();
        let mut tau: Vec<usize> = (0..q.n_letters()).collect();
        sigma.shuffle(&mut rng);
        tau.shuffle(&mut rng);
        let r = q.relabel(&sigma, &tau);
        let limits = Limits::default();
        let (m, mr) = (transition_monoid(&q, &limits).unwrap(), transition_monoid(&r, &limits).unwrap());
        prop_assert_eq!(m.order(), mr.order());
        prop_assert_eq!(m.idempotents().len(), mr.idempotents().len());
        prop_assert_eq!(simple_divisors_monoid(&m, &limits).unwrap(), simple_divisors_monoid(&mr, &limits).unwrap());
    }

    #[test]
    fn restriction_gives_a_submonoid(q in automaton(4, 3), seed: u64) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let keep: Vec<usize> = (0..q.n_letters()).filter(|_| rng.gen_bool(0.5)).collect();
        let letters = keep.iter().map(|&a| q.letters()[a].clone()).collect();
        let actions: Vec<_> = keep.iter().map(|&a| q.letter_action(a)).collect();
        prop_assume!(!keep.is_empty());
        let r = Automaton::from_transformations(letters, &actions).unwrap();
        prop_assert!(r.is_restriction_of(&q).unwrap());
        prop_assert!(element_set(&r).is_subset(&element_set(&q)));
    }

    #[test]
    fn extensions_keep_the_monoid(q in automaton(4, 3), seed: u64) {
        let limits = Limits::default();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let e = extend_by_words(&q, rng.gen_range(1..4), &mut rng);
        prop_assert!(e.is_extension_of(&q, &limits).unwrap());
        prop_assert_eq!(element_set(&e), element_set(&q));
        let s = q.saturate(&limits).unwrap();
        prop_assert!(s.is_extension_of(&q, &limits).unwrap());
        prop_assert_eq!(element_set(&s), element_set(&q));
    }

    #[test]
    fn saturation_is_idempotent(q in automaton(4, 2)) {
        let limits = Limits::default();
        let once = q.saturate(&limits).unwrap();
        let twice = once.saturate(&limits).unwrap();
        let actions = |a: &Automaton| -> BTreeSet<Vec<usize>> {
            a.letter_actions().iter().map(|t| t.images().to_vec()).collect()
        };
        prop_assert_eq!(actions(&once), actions(&twice));
        prop_assert_eq!(element_set(&once), element_set(&twice));
    }

    #[test]
    fn quotients_have_the_right_order(q in automaton(4, 3)) {
        let limits = Limits::default();
        let m = transition_monoid(&q, &limits).unwrap();
        for e in m.idempotents() {
            let g: FiniteGroup = m.maximal_subgroup_at(e).unwrap();
            for n in g.normal_subgroups() {
                let quotient = g.quotient(&n).unwrap();
                prop_assert_eq!(quotient.order() * n.len(), g.order());
                // the constructor validates associativity, identity and inverses
                prop_assert!(FiniteGroup::from_table(quotient.table().to_vec()).is_ok());
            }
        }
    }
}

#[test]
fn reachable_part_is_initially_connected() {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    for _ in 0..200 {
        let q = random_automaton(&mut rng, 6, 3);
        let initial = rng.gen_range(0..q.n_states());
        let iq = q.with_initial(initial).unwrap();
        let r = iq.reachable_part();
        assert!(r.is_initially_connected());
        assert_eq!(r.automaton.n_states(), iq.reachable_states().len());
        assert_eq!(r.initial, 0);
    }
}
