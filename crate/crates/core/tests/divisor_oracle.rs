mod support;

use fpal_core::algebra::{simple_divisors_monoid, transition_monoid, FiniteGroup, Limits};
use fpal_core::automaton::symmetric_automaton;
use support::corpus::{corpus, MAX_MONOID, SIZE};
use support::oracle::{shape_of, Table};

#[test]
fn corpus_shape() {
    let c = corpus();
    assert_eq!(c.len(), SIZE);
    let limits = Limits::default();
    let mut nontrivial = 0;
    for q in &c {
        assert!(q.n_states() <= 4 && q.n_letters() <= 3);
        let m = transition_monoid(q, &limits).unwrap();
        assert!(m.order() <= MAX_MONOID);
        if !simple_divisors_monoid(&m, &limits).unwrap().is_empty() {
            nontrivial += 1;
        }
    }
    assert!(nontrivial > 20, "corpus should exercise groups, got {nontrivial}");
}

#[test]
fn divisors_agree_with_brute_force() {
    let limits = Limits::default();
    for (i, q) in corpus().iter().enumerate() {
        let m = transition_monoid(q, &limits).unwrap();
        let mul = |x, y| m.product(x, y);
        let oracle = Table {
            order: m.order(),
            mul: &mul,
        }
        .simple_divisors();
        let fast = simple_divisors_monoid(&m, &limits)
            .unwrap()
            .iter()
            .map(shape_of)
            .collect();
        assert_eq!(oracle, fast, "corpus automaton {i}: {:?}", q.delta());
    }
}

#[test]
fn oracle_sees_groups_at_every_idempotent() {
    // the monoid of S_3 ∪ constants: groups at the identity and at each constant
    let q = symmetric_automaton(3).unwrap();
    let q = q
        .with_letters([("c".to_string(), fpal_core::Transformation::constant(3, 0))])
        .unwrap();
    let m = transition_monoid(&q, &Limits::default()).unwrap();
    let mul = |x, y| m.product(x, y);
    let table = Table {
        order: m.order(),
        mul: &mul,
    };
    let groups = table.groups();
    // 6 subgroups of S_3 plus 3 trivial groups at the constants
    assert_eq!(groups.len(), 9);
    assert_eq!(table.simple_divisors().len(), 2);
}

#[test]
fn oracle_on_a5() {
    let g = FiniteGroup::from_monoid(&transition_monoid(&alternating5(), &Limits::default()).unwrap()).unwrap();
    let mul = |x, y| g.mul(x, y);
    let shapes = Table {
        order: g.order(),
        mul: &mul,
    }
    .simple_divisors();
    let orders: Vec<usize> = shapes.iter().map(|s| s.0).collect();
    assert_eq!(orders, vec![2, 3, 5, 60]);
}

fn alternating5() -> fpal_core::Automaton {
    use fpal_core::Transformation;
    fpal_core::Automaton::from_transformations(
        vec!["a".into(), "b".into()],
        &[
            Transformation::from_one_based(&[2, 3, 4, 5, 1]),
            Transformation::from_one_based(&[2, 3, 1, 4, 5]),
        ],
    )
    .unwrap()
}
