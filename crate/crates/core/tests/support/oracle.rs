//! Brute-force simple divisors of a finite monoid, straight from the
//! definition: `G` divides `M` when it is a quotient of a subsemigroup of `M`
//! that is a group.
//!
//! Nothing here uses maximal subgroups, conjugacy classes or composition
//! series. Groups in `M` are found by closing singletons and extending by one
//! element at a time: every intermediate closure inside a finite group is a
//! group, so this reaches all of them.

use std::collections::{BTreeMap, BTreeSet, VecDeque};

/// `(order, element order -> count)` of a simple group.
pub type Shape = (usize, BTreeMap<usize, usize>);

pub struct Table<'a> {
    pub order: usize,
    pub mul: &'a dyn Fn(usize, usize) -> usize,
}

impl Table<'_> {
    fn closure(&self, seed: &BTreeSet<usize>) -> BTreeSet<usize> {
        let mut set = seed.clone();
        let mut queue: VecDeque<usize> = seed.iter().copied().collect();
        while let Some(x) = queue.pop_front() {
            let current: Vec<usize> = set.iter().copied().collect();
            for y in current {
                for z in [(self.mul)(x, y), (self.mul)(y, x)] {
                    if set.insert(z) {
                        queue.push_back(z);
                    }
                }
            }
        }
        set
    }

    /// The identity of `set` when `set` is a group under the monoid product.
    fn group_identity(&self, set: &BTreeSet<usize>) -> Option<usize> {
        let e = set
            .iter()
            .copied()
            .find(|&e| set.iter().all(|&x| (self.mul)(e, x) == x && (self.mul)(x, e) == x))?;
        let invertible = set
            .iter()
            .all(|&x| set.iter().any(|&y| (self.mul)(x, y) == e && (self.mul)(y, x) == e));
        invertible.then_some(e)
    }

    /// Every subsemigroup of the monoid that is a group.
    pub fn groups(&self) -> Vec<BTreeSet<usize>> {
        let mut seen = BTreeSet::new();
        let mut queue = VecDeque::new();
        for x in 0..self.order {
            let s = self.closure(&BTreeSet::from([x]));
            if self.group_identity(&s).is_some() && seen.insert(s.clone()) {
                queue.push_back(s);
            }
        }
        while let Some(s) = queue.pop_front() {
            for y in 0..self.order {
                if s.contains(&y) {
                    continue;
                }
                let mut t = s.clone();
                t.insert(y);
                let t = self.closure(&t);
                if self.group_identity(&t).is_some() && seen.insert(t.clone()) {
                    queue.push_back(t);
                }
            }
        }
        seen.into_iter().collect()
    }

    fn inverse(&self, k: &BTreeSet<usize>, e: usize, x: usize) -> usize {
        *k.iter()
            .find(|&&y| (self.mul)(x, y) == e)
            .expect("group element has an inverse")
    }

    fn is_normal(&self, k: &BTreeSet<usize>, e: usize, n: &BTreeSet<usize>) -> bool {
        k.iter().all(|&g| {
            let gi = self.inverse(k, e, g);
            n.iter().all(|&x| n.contains(&(self.mul)((self.mul)(g, x), gi)))
        })
    }

    /// Simple quotients `K / N` over all groups `K` in the monoid and all
    /// maximal normal subgroups `N` of `K`.
    pub fn simple_divisors(&self) -> BTreeSet<Shape> {
        let groups = self.groups();
        let mut out = BTreeSet::new();
        for k in &groups {
            let e = self.group_identity(k).expect("listed sets are groups");
            let normal: Vec<&BTreeSet<usize>> = groups
                .iter()
                .filter(|n| n.len() < k.len() && n.is_subset(k) && n.contains(&e) && self.is_normal(k, e, n))
                .collect();
            for n in &normal {
                let maximal = !normal.iter().any(|m| m.len() > n.len() && n.is_subset(m));
                if maximal {
                    out.insert(self.quotient_shape(k, n));
                }
            }
        }
        out
    }

    fn quotient_shape(&self, k: &BTreeSet<usize>, n: &BTreeSet<usize>) -> Shape {
        let mut counts: BTreeMap<usize, usize> = BTreeMap::new();
        for &g in k {
            let mut power = g;
            let mut t = 1;
            while !n.contains(&power) {
                power = (self.mul)(power, g);
                t += 1;
            }
            *counts.entry(t).or_insert(0) += 1;
        }
        // every coset contributes |N| elements of the same coset order
        let counts = counts.into_iter().map(|(o, c)| (o, c / n.len())).collect();
        (k.len() / n.len(), counts)
    }
}

pub fn shape_of(id: &fpal_core::SimpleGroupId) -> Shape {
    (id.order, id.element_orders.clone())
}
