//! Random well-typed terms over the symbols `f0, f1, ...`, where `fk` has
//! arity `k`.

use fpal_core::term::{Morphism, Symbol};
use rand::Rng;

pub fn random_term(rng: &mut impl Rng, source: usize, target: usize, depth: usize) -> Morphism {
    if target != 1 {
        let items = (0..target).map(|_| random_term(rng, source, 1, depth)).collect();
        return Morphism::tuple(source, items).unwrap();
    }
    let choice = if depth == 0 {
        rng.gen_range(0..2)
    } else {
        rng.gen_range(0..5)
    };
    match choice {
        0 if source > 0 => Morphism::proj(rng.gen_range(1..=source), source).unwrap(),
        0 | 1 => Morphism::sym(Symbol::new(format!("f{source}"), source)),
        2 | 3 => {
            let mid = rng.gen_range(0..=2);
            let g = random_term(rng, mid, 1, depth - 1);
            let f = random_term(rng, source, mid, depth - 1);
            Morphism::compose(g, f).unwrap()
        }
        _ => {
            let vars = rng.gen_range(1..=2);
            let body = random_term(rng, vars + source, vars, depth - 1);
            let d = Morphism::dagger(body, vars).unwrap();
            if vars == 1 {
                d
            } else {
                Morphism::compose(Morphism::proj(rng.gen_range(1..=vars), vars).unwrap(), d).unwrap()
            }
        }
    }
}
