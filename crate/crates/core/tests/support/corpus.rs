//! A fixed, seeded corpus of small automata.

use std::collections::BTreeSet;

use fpal_core::algebra::{transition_monoid, Limits};
use fpal_core::automaton::{counter, symmetric_automaton, Automaton};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub const SEED: u64 = 0x00c0_ffee;
pub const SIZE: usize = 240;
pub const MAX_MONOID: usize = 24;

pub fn random_automaton(rng: &mut impl Rng, max_states: usize, max_letters: usize) -> Automaton {
    let n = rng.gen_range(1..=max_states);
    let m = rng.gen_range(1..=max_letters);
    let letters = (0..m).map(|j| ((b'a' + j as u8) as char).to_string()).collect();
    let delta = (0..n).map(|_| (0..m).map(|_| rng.gen_range(0..n)).collect()).collect();
    Automaton::new(letters, delta).expect("random automaton is well formed")
}

/// Hand-picked automata followed by distinct random ones, all with
/// `n <= 4`, `m <= 3` and `|M| <= 24`.
pub fn corpus() -> Vec<Automaton> {
    let limits = Limits::default();
    let mut out = vec![
        symmetric_automaton(3).unwrap(),
        symmetric_automaton(4).unwrap(),
        counter(1).unwrap(),
        counter(2).unwrap(),
        counter(3).unwrap(),
        counter(4).unwrap(),
    ];
    let mut seen: BTreeSet<Vec<Vec<usize>>> = out.iter().map(|q| q.delta().to_vec()).collect();
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    while out.len() < SIZE {
        let q = random_automaton(&mut rng, 4, 3);
        if !seen.insert(q.delta().to_vec()) {
            continue;
        }
        if transition_monoid(&q, &limits).is_ok_and(|m| m.order() <= MAX_MONOID) {
            out.push(q);
        }
    }
    out
}
