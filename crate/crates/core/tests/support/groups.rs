//! Permutation groups of order at most 60.

use fpal_core::algebra::{transition_monoid, FiniteGroup, Limits};
use fpal_core::{Automaton, Transformation};

pub fn perm_group(gens: &[Vec<usize>]) -> FiniteGroup {
    let letters = (0..gens.len()).map(|i| format!("g{i}")).collect();
    let actions: Vec<Transformation> = gens.iter().map(|g| Transformation::from_one_based(g)).collect();
    let q = Automaton::from_transformations(letters, &actions).unwrap();
    FiniteGroup::from_monoid(&transition_monoid(&q, &Limits::default()).unwrap()).unwrap()
}

pub fn cycle(n: usize) -> Vec<usize> {
    (1..=n).map(|i| i % n + 1).collect()
}

fn reflection(n: usize) -> Vec<usize> {
    (1..=n).map(|i| (n + 1 - i) % n + 1).collect()
}

/// Concatenates permutations on disjoint point sets.
fn disjoint(parts: &[Vec<usize>]) -> Vec<usize> {
    let mut out = Vec::new();
    for p in parts {
        let shift = out.len();
        out.extend(p.iter().map(|x| x + shift));
    }
    out
}

/// Left multiplication by the unit `u` on the eight quaternions `(sign, unit)`
/// with units `1, i, j, k`, as a permutation of `1..=8`.
fn quaternion_left(u: usize) -> Vec<usize> {
    // table[a][b] = (negated, unit) for the product of units a and b
    const T: [[(bool, usize); 4]; 4] = [
        [(false, 0), (false, 1), (false, 2), (false, 3)],
        [(false, 1), (true, 0), (false, 3), (true, 2)],
        [(false, 2), (true, 3), (true, 0), (false, 1)],
        [(false, 3), (false, 2), (true, 1), (true, 0)],
    ];
    (0..8)
        .map(|x| {
            let (neg, unit) = T[u][x % 4];
            let sign = (x / 4 == 1) ^ neg;
            usize::from(sign) * 4 + unit + 1
        })
        .collect()
}

fn id(n: usize) -> Vec<usize> {
    (1..=n).collect()
}

/// Groups of order at most 60 covering the cyclic, dihedral, elementary
/// abelian, symmetric and alternating cases plus several direct products.
pub fn catalog() -> Vec<(String, FiniteGroup)> {
    let mut out: Vec<(String, FiniteGroup)> = (1..=60).map(|n| (format!("C{n}"), FiniteGroup::cyclic(n))).collect();
    for n in 3..=30 {
        out.push((format!("D{n}"), perm_group(&[cycle(n), reflection(n)])));
    }
    for k in 1..=5 {
        let gens: Vec<Vec<usize>> = (0..k)
            .map(|i| {
                disjoint(
                    &(0..k)
                        .map(|j| if i == j { vec![2, 1] } else { id(2) })
                        .collect::<Vec<_>>(),
                )
            })
            .collect();
        out.push((format!("C2^{k}"), perm_group(&gens)));
    }
    let s3 = [vec![2, 3, 1], vec![2, 1, 3]];
    let a4 = [vec![2, 3, 1, 4], vec![2, 1, 4, 3]];
    let s4 = [vec![2, 3, 4, 1], vec![2, 1, 3, 4]];
    out.push(("S3".into(), perm_group(&s3)));
    out.push(("A4".into(), perm_group(&a4)));
    out.push(("S4".into(), perm_group(&s4)));
    out.push(("A5".into(), perm_group(&[vec![2, 3, 4, 5, 1], vec![2, 3, 1, 4, 5]])));
    out.push(("Q8".into(), perm_group(&[quaternion_left(1), quaternion_left(2)])));
    let product = |a: &[Vec<usize>], na: usize, b: &[Vec<usize>], nb: usize| -> FiniteGroup {
        let mut gens: Vec<Vec<usize>> = a.iter().map(|g| disjoint(&[g.clone(), id(nb)])).collect();
        gens.extend(b.iter().map(|g| disjoint(&[id(na), g.clone()])));
        perm_group(&gens)
    };
    out.push(("S3xS3".into(), product(&s3, 3, &s3, 3)));
    out.push(("A4xC2".into(), product(&a4, 4, &[vec![2, 1]], 2)));
    out.push(("A4xC3".into(), product(&a4, 4, &[cycle(3)], 3)));
    out.push(("A4xC4".into(), product(&a4, 4, &[cycle(4)], 4)));
    out.push(("S4xC2".into(), product(&s4, 4, &[vec![2, 1]], 2)));
    out.push(("S3xC5".into(), product(&s3, 3, &[cycle(5)], 5)));
    out.push((
        "S3xC3xC3".into(),
        product(&s3, 3, &[disjoint(&[cycle(3), id(3)]), disjoint(&[id(3), cycle(3)])], 6),
    ));
    out
}
