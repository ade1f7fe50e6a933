//! Transition monoids and the finite group theory needed to compute which
//! simple groups divide them.
//!
//! A group `G` divides a monoid `M` when it is a quotient of a group in `M`,
//! i.e. of a subsemigroup that happens to be a group. Every group in `M` with
//! unit `e` lies inside the maximal subgroup `H_e` (the units of `eMe`), so
//! the simple divisors of `M` are the simple divisors of its maximal
//! subgroups, and the simple divisors of a group are the composition factors
//! of its subgroups.

use std::collections::{BTreeMap, BTreeSet, HashMap, HashSet, VecDeque};
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::automaton::{Automaton, Transformation};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AlgebraError {
    #[error("transition monoid exceeds the cap of {cap} elements")]
    MonoidTooLarge { cap: usize },
    #[error("group of order {order} exceeds the subgroup-enumeration cap of {cap}")]
    GroupTooLarge { order: usize, cap: usize },
    #[error("element {0} is not idempotent")]
    NotIdempotent(usize),
    #[error("subset is not a normal subgroup")]
    NotNormal,
    #[error("subset is not a subgroup")]
    NotSubgroup,
    #[error("group is not simple")]
    NotSimple,
    #[error("invalid group table: {0}")]
    InvalidTable(String),
}

/// Size caps for the closure and enumeration routines.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Limits {
    pub monoid_cap: usize,
    pub subgroup_cap: usize,
}

impl Default for Limits {
    fn default() -> Self {
        Limits {
            monoid_cap: 5040,
            subgroup_cap: 1024,
        }
    }
}

// ---------------------------------------------------------------------------
// Transformation monoids

/// The transition monoid `M(Q)` of an automaton.
///
/// Elements are sorted lexicographically by their images. Each element keeps
/// the shortlex-least word (in letter order) that induces it.
#[derive(Clone, Debug)]
pub struct TransformationMonoid {
    elements: Vec<Transformation>,
    index: HashMap<Transformation, usize>,
    table: Vec<u32>,
    identity: usize,
    witnesses: Vec<Vec<usize>>,
    letters: Vec<String>,
}

/// Computes `M(Q)` by breadth-first closure over the letter actions.
pub fn transition_monoid(q: &Automaton, limits: &Limits) -> Result<TransformationMonoid, AlgebraError> {
    let gens = q.letter_actions();
    let id = Transformation::identity(q.n_states());
    let mut found: HashMap<Transformation, usize> = HashMap::new();
    let mut order = vec![id.clone()];
    let mut words: Vec<Vec<usize>> = vec![Vec::new()];
    let mut right: Vec<Vec<usize>> = Vec::new();
    found.insert(id, 0);
    let mut i = 0;
    while i < order.len() {
        let mut row = Vec::with_capacity(gens.len());
        for (a, g) in gens.iter().enumerate() {
            let t = order[i].then(g);
            let idx = match found.get(&t) {
                Some(&idx) => idx,
                None => {
                    if order.len() >= limits.monoid_cap {
                        return Err(AlgebraError::MonoidTooLarge { cap: limits.monoid_cap });
                    }
                    let idx = order.len();
                    let mut w = words[i].clone();
                    w.push(a);
                    found.insert(t.clone(), idx);
                    order.push(t);
                    words.push(w);
                    idx
                }
            };
            row.push(idx);
        }
        right.push(row);
        i += 1;
    }

    let k = order.len();
    let mut sorted: Vec<usize> = (0..k).collect();
    sorted.sort_by(|&x, &y| order[x].cmp(&order[y]));
    let mut rank = vec![0; k];
    for (new, &old) in sorted.iter().enumerate() {
        rank[old] = new;
    }
    let elements: Vec<Transformation> = sorted.iter().map(|&old| order[old].clone()).collect();
    let witnesses: Vec<Vec<usize>> = sorted.iter().map(|&old| words[old].clone()).collect();
    let right: Vec<Vec<usize>> = sorted
        .iter()
        .map(|&old| right[old].iter().map(|&t| rank[t]).collect())
        .collect();

    // x · y = x followed by the letters of y's witness
    let mut table = vec![0u32; k * k];
    for x in 0..k {
        for y in 0..k {
            let p = witnesses[y].iter().fold(x, |acc, &a| right[acc][a]);
            table[x * k + y] = p as u32;
        }
    }
    let index = elements.iter().cloned().enumerate().map(|(i, t)| (t, i)).collect();
    Ok(TransformationMonoid {
        elements,
        index,
        table,
        identity: rank[0],
        witnesses,
        letters: q.letters().to_vec(),
    })
}

impl TransformationMonoid {
    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn elements(&self) -> &[Transformation] {
        &self.elements
    }

    pub fn element(&self, i: usize) -> &Transformation {
        &self.elements[i]
    }

    pub fn identity(&self) -> usize {
        self.identity
    }

    /// `x · y`: apply `x`, then `y`.
    pub fn product(&self, x: usize, y: usize) -> usize {
        self.table[x * self.order() + y] as usize
    }

    pub fn index_of(&self, t: &Transformation) -> Option<usize> {
        self.index.get(t).copied()
    }

    /// Shortest witness word (letter indices) of element `i`.
    pub fn witness(&self, i: usize) -> &[usize] {
        &self.witnesses[i]
    }

    pub fn letters(&self) -> &[String] {
        &self.letters
    }

    /// Witness word of element `i` as text; `ε` for the empty word.
    pub fn witness_str(&self, i: usize) -> String {
        let w = &self.witnesses[i];
        if w.is_empty() {
            return "ε".to_string();
        }
        let single = self.letters.iter().all(|l| l.chars().count() == 1);
        let parts: Vec<&str> = w.iter().map(|&a| self.letters[a].as_str()).collect();
        if single {
            parts.concat()
        } else {
            parts.join(" ")
        }
    }

    pub fn is_group(&self) -> bool {
        self.idempotents().len() == 1
    }

    /// All `e` with `e · e = e`, in element order.
    pub fn idempotents(&self) -> Vec<usize> {
        (0..self.order()).filter(|&e| self.product(e, e) == e).collect()
    }

    /// The maximal subgroup `H_e`: the invertible elements of the local
    /// monoid `eMe`, with unit `e`. Labels are monoid element indices.
    pub fn maximal_subgroup_at(&self, e: usize) -> Result<FiniteGroup, AlgebraError> {
        if self.product(e, e) != e {
            return Err(AlgebraError::NotIdempotent(e));
        }
        let local: BTreeSet<usize> = (0..self.order()).map(|x| self.product(self.product(e, x), e)).collect();
        let units: Vec<usize> = local
            .iter()
            .copied()
            .filter(|&x| {
                local
                    .iter()
                    .any(|&y| self.product(x, y) == e && self.product(y, x) == e)
            })
            .collect();
        let pos: HashMap<usize, usize> = units.iter().enumerate().map(|(i, &x)| (x, i)).collect();
        let table = units
            .iter()
            .map(|&x| units.iter().map(|&y| pos[&self.product(x, y)]).collect())
            .collect();
        Ok(FiniteGroup::from_table_unchecked(table, units))
    }
}

// ---------------------------------------------------------------------------
// Finite groups

/// A finite group given by its Cayley table.
///
/// `labels[i]` names element `i` in the structure it was taken from: a
/// monoid element index for maximal subgroups, a parent element index for
/// subgroups, and the least parent element of the coset for quotients.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteGroup {
    table: Vec<Vec<usize>>,
    identity: usize,
    inverses: Vec<usize>,
    labels: Vec<usize>,
}

impl FiniteGroup {
    /// Builds a group from a Cayley table, checking closure, identity,
    /// inverses and associativity.
    pub fn from_table(table: Vec<Vec<usize>>) -> Result<Self, AlgebraError> {
        let n = table.len();
        if n == 0 {
            return Err(AlgebraError::InvalidTable("empty table".into()));
        }
        if table.iter().any(|row| row.len() != n || row.iter().any(|&v| v >= n)) {
            return Err(AlgebraError::InvalidTable("table is not square or not closed".into()));
        }
        let identity = (0..n)
            .find(|&e| (0..n).all(|x| table[e][x] == x && table[x][e] == x))
            .ok_or_else(|| AlgebraError::InvalidTable("no identity".into()))?;
        for (x, row) in table.iter().enumerate() {
            if !(0..n).any(|y| row[y] == identity && table[y][x] == identity) {
                return Err(AlgebraError::InvalidTable(format!("element {x} has no inverse")));
            }
        }
        for x in 0..n {
            for y in 0..n {
                for z in 0..n {
                    if table[table[x][y]][z] != table[x][table[y][z]] {
                        return Err(AlgebraError::InvalidTable("not associative".into()));
                    }
                }
            }
        }
        Ok(Self::from_table_unchecked(table, (0..n).collect()))
    }

    fn from_table_unchecked(table: Vec<Vec<usize>>, labels: Vec<usize>) -> Self {
        let n = table.len();
        let identity = (0..n).find(|&e| table[e][e] == e).expect("a group has an idempotent");
        let inverses = (0..n)
            .map(|x| (0..n).find(|&y| table[x][y] == identity).expect("inverse exists"))
            .collect();
        FiniteGroup {
            table,
            identity,
            inverses,
            labels,
        }
    }

    /// The cyclic group `Z_n`.
    pub fn cyclic(n: usize) -> Self {
        let table = (0..n).map(|x| (0..n).map(|y| (x + y) % n).collect()).collect();
        Self::from_table_unchecked(table, (0..n).collect())
    }

    /// The group of units of a transformation monoid that is itself a group.
    pub fn from_monoid(m: &TransformationMonoid) -> Result<Self, AlgebraError> {
        if !m.is_group() {
            return Err(AlgebraError::InvalidTable("monoid is not a group".into()));
        }
        m.maximal_subgroup_at(m.identity())
    }

    pub fn order(&self) -> usize {
        self.table.len()
    }

    pub fn identity(&self) -> usize {
        self.identity
    }

    pub fn mul(&self, x: usize, y: usize) -> usize {
        self.table[x][y]
    }

    pub fn inverse(&self, x: usize) -> usize {
        self.inverses[x]
    }

    pub fn labels(&self) -> &[usize] {
        &self.labels
    }

    pub fn table(&self) -> &[Vec<usize>] {
        &self.table
    }

    pub fn is_trivial(&self) -> bool {
        self.order() == 1
    }

    pub fn element_order(&self, x: usize) -> usize {
        let mut k = 1;
        let mut p = x;
        while p != self.identity {
            p = self.mul(p, x);
            k += 1;
        }
        k
    }

    pub fn is_abelian(&self) -> bool {
        let n = self.order();
        (0..n).all(|x| (0..n).all(|y| self.mul(x, y) == self.mul(y, x)))
    }

    fn conjugate(&self, g: usize, x: usize) -> usize {
        self.mul(self.mul(g, x), self.inverse(g))
    }

    /// The subgroup generated by `gens`, as a sorted element list.
    pub fn generate(&self, gens: &[usize]) -> Vec<usize> {
        let mut member = vec![false; self.order()];
        member[self.identity] = true;
        let mut elems = vec![self.identity];
        let mut i = 0;
        while i < elems.len() {
            let x = elems[i];
            for &g in gens {
                let y = self.mul(x, g);
                if !member[y] {
                    member[y] = true;
                    elems.push(y);
                }
            }
            i += 1;
        }
        elems.sort_unstable();
        elems
    }

    pub fn is_subgroup(&self, set: &[usize]) -> bool {
        let member = self.membership(set);
        set.contains(&self.identity)
            && set
                .iter()
                .all(|&x| member[self.inverse(x)] && set.iter().all(|&y| member[self.mul(x, y)]))
    }

    pub fn is_normal(&self, set: &[usize]) -> bool {
        let member = self.membership(set);
        self.is_subgroup(set) && (0..self.order()).all(|g| set.iter().all(|&x| member[self.conjugate(g, x)]))
    }

    fn membership(&self, set: &[usize]) -> Vec<bool> {
        let mut member = vec![false; self.order()];
        for &x in set {
            member[x] = true;
        }
        member
    }

    /// The group induced on a subgroup, labelled by parent element indices.
    pub fn subgroup(&self, set: &[usize]) -> Result<FiniteGroup, AlgebraError> {
        if !self.is_subgroup(set) {
            return Err(AlgebraError::NotSubgroup);
        }
        Ok(self.subgroup_unchecked(set))
    }

    fn subgroup_unchecked(&self, set: &[usize]) -> FiniteGroup {
        let pos: HashMap<usize, usize> = set.iter().enumerate().map(|(i, &x)| (x, i)).collect();
        let table = set
            .iter()
            .map(|&x| set.iter().map(|&y| pos[&self.mul(x, y)]).collect())
            .collect();
        FiniteGroup::from_table_unchecked(table, set.to_vec())
    }

    /// The coset group `G / N`; element `i` is labelled by the least element
    /// of its coset.
    pub fn quotient(&self, normal: &[usize]) -> Result<FiniteGroup, AlgebraError> {
        if !self.is_normal(normal) {
            return Err(AlgebraError::NotNormal);
        }
        Ok(self.quotient_unchecked(normal))
    }

    fn quotient_unchecked(&self, normal: &[usize]) -> FiniteGroup {
        let n = self.order();
        let mut coset = vec![usize::MAX; n];
        let mut reps = Vec::new();
        for g in 0..n {
            if coset[g] == usize::MAX {
                let id = reps.len();
                reps.push(g);
                for &x in normal {
                    coset[self.mul(g, x)] = id;
                }
            }
        }
        let table = reps
            .iter()
            .map(|&x| reps.iter().map(|&y| coset[self.mul(x, y)]).collect())
            .collect();
        FiniteGroup::from_table_unchecked(table, reps)
    }

    /// Conjugacy classes of elements, each sorted, ordered by least element.
    pub fn conjugacy_classes(&self) -> Vec<Vec<usize>> {
        let n = self.order();
        let mut seen = vec![false; n];
        let mut classes = Vec::new();
        for x in 0..n {
            if seen[x] {
                continue;
            }
            let mut class: Vec<usize> = (0..n).map(|g| self.conjugate(g, x)).collect();
            class.sort_unstable();
            class.dedup();
            for &y in &class {
                seen[y] = true;
            }
            classes.push(class);
        }
        classes
    }

    /// All normal subgroups as sorted element lists, ordered by size and then
    /// lexicographically.
    pub fn normal_subgroups(&self) -> Vec<Vec<usize>> {
        let classes = self.conjugacy_classes();
        let trivial = vec![self.identity];
        let mut seen: HashSet<Vec<usize>> = HashSet::from([trivial.clone()]);
        let mut queue = VecDeque::from([trivial]);
        let mut out = Vec::new();
        while let Some(normal) = queue.pop_front() {
            let member = self.membership(&normal);
            for class in &classes {
                if member[class[0]] {
                    continue;
                }
                let mut gens = normal.clone();
                gens.extend_from_slice(class);
                let bigger = self.generate(&gens);
                if seen.insert(bigger.clone()) {
                    queue.push_back(bigger);
                }
            }
            out.push(normal);
        }
        sort_sets(&mut out);
        out
    }

    /// Simple in the usual sense: nontrivial with no normal subgroups besides
    /// the trivial one and itself.
    pub fn is_simple(&self) -> bool {
        self.order() > 1 && self.normal_subgroups().len() == 2
    }
}

fn sort_sets(sets: &mut [Vec<usize>]) {
    sets.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
}

/// One conjugacy class of subgroups.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SubgroupClass {
    /// The lexicographically least conjugate, sorted.
    pub representative: Vec<usize>,
    /// A generating set of the representative.
    pub generators: Vec<usize>,
    /// Number of distinct conjugates.
    pub conjugates: usize,
}

impl SubgroupClass {
    pub fn order(&self) -> usize {
        self.representative.len()
    }
}

/// Subgroups of `g` up to conjugacy, ordered by size then representative.
///
/// Starting from the trivial subgroup, each class representative `H` is
/// extended to `⟨H, x⟩` for every `x ∉ H`; every subgroup is reached this way
/// up to conjugacy because conjugation commutes with adjoining a generator.
pub fn subgroups(g: &FiniteGroup, limits: &Limits) -> Result<Vec<SubgroupClass>, AlgebraError> {
    if g.order() > limits.subgroup_cap {
        return Err(AlgebraError::GroupTooLarge {
            order: g.order(),
            cap: limits.subgroup_cap,
        });
    }
    let n = g.order();
    let canonical = |set: &[usize]| -> (Vec<usize>, usize) {
        let mut conjugates: HashSet<Vec<usize>> = HashSet::new();
        for x in 0..n {
            let mut c: Vec<usize> = set.iter().map(|&h| g.conjugate(x, h)).collect();
            c.sort_unstable();
            conjugates.insert(c);
        }
        let count = conjugates.len();
        (conjugates.into_iter().min().expect("nonempty"), count)
    };

    let trivial = SubgroupClass {
        representative: vec![g.identity()],
        generators: Vec::new(),
        conjugates: 1,
    };
    let mut classes: HashMap<Vec<usize>, SubgroupClass> = HashMap::new();
    classes.insert(trivial.representative.clone(), trivial.clone());
    let mut queue = VecDeque::from([trivial]);
    let mut visited: HashSet<Vec<usize>> = HashSet::new();
    while let Some(class) = queue.pop_front() {
        let h = &class.representative;
        let mut done = g.membership(h);
        for x in 0..n {
            if done[x] {
                continue;
            }
            // ⟨H, x⟩ = ⟨H, hx⟩ for every h in H
            for &y in h {
                done[g.mul(y, x)] = true;
            }
            let mut gens = class.generators.clone();
            gens.push(x);
            let bigger = g.generate(&gens);
            if !visited.insert(bigger.clone()) {
                continue;
            }
            let (rep, count) = canonical(&bigger);
            if classes.contains_key(&rep) {
                continue;
            }
            // generators of the representative: conjugate the generators of `bigger`
            let conj = (0..n)
                .find(|&c| {
                    let mut s: Vec<usize> = bigger.iter().map(|&e| g.conjugate(c, e)).collect();
                    s.sort_unstable();
                    s == rep
                })
                .expect("representative is a conjugate");
            let rep_gens: Vec<usize> = gens.iter().map(|&e| g.conjugate(conj, e)).collect();
            let next = SubgroupClass {
                representative: rep.clone(),
                generators: rep_gens,
                conjugates: count,
            };
            classes.insert(rep, next.clone());
            queue.push_back(next);
        }
    }
    let mut out: Vec<SubgroupClass> = classes.into_values().collect();
    out.sort_by(|a, b| {
        a.order()
            .cmp(&b.order())
            .then_with(|| a.representative.cmp(&b.representative))
    });
    Ok(out)
}

// ---------------------------------------------------------------------------
// Simple groups and composition series

/// Identifies a finite simple group by its order and the multiset of its
/// element orders (element order -> count).
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct SimpleGroupId {
    pub order: usize,
    pub element_orders: BTreeMap<usize, usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
}

/// Orders of the nonabelian simple groups up to 20160 with their names. At
/// 20160 the two groups are told apart by whether an element of order 15
/// exists.
pub const NONABELIAN_SIMPLE: &[(usize, &str)] = &[
    (60, "A_5"),
    (168, "PSL(2,7)"),
    (360, "A_6"),
    (504, "PSL(2,8)"),
    (660, "PSL(2,11)"),
    (1092, "PSL(2,13)"),
    (2448, "PSL(2,17)"),
    (2520, "A_7"),
    (3420, "PSL(2,19)"),
    (4080, "PSL(2,16)"),
    (5616, "PSL(3,3)"),
    (6048, "PSU(3,3)"),
    (6072, "PSL(2,23)"),
    (7800, "PSL(2,25)"),
    (7920, "M_11"),
    (9828, "PSL(2,27)"),
    (12180, "PSL(2,29)"),
    (14880, "PSL(2,31)"),
];

pub(crate) fn is_prime(n: usize) -> bool {
    n >= 2 && (2..).take_while(|d| d * d <= n).all(|d| !n.is_multiple_of(d))
}

fn recognize(order: usize, element_orders: &BTreeMap<usize, usize>) -> Option<String> {
    if is_prime(order) {
        return Some(format!("C_{order}"));
    }
    if order == 20160 {
        return Some(
            if element_orders.contains_key(&15) {
                "A_8"
            } else {
                "PSL(3,4)"
            }
            .into(),
        );
    }
    NONABELIAN_SIMPLE
        .iter()
        .find(|(o, _)| *o == order)
        .map(|(_, name)| name.to_string())
}

impl SimpleGroupId {
    fn from_orders(order: usize, element_orders: BTreeMap<usize, usize>) -> Self {
        let name = recognize(order, &element_orders);
        SimpleGroupId {
            order,
            element_orders,
            name,
        }
    }

    /// The cyclic group of prime order `p`.
    pub fn cyclic(p: usize) -> Self {
        assert!(is_prime(p), "C_{p} is not simple");
        let mut m = BTreeMap::from([(1, 1)]);
        m.insert(p, p - 1);
        Self::from_orders(p, m)
    }

    /// The alternating group `A_5`.
    pub fn a5() -> Self {
        Self::from_orders(60, BTreeMap::from([(1, 1), (2, 15), (3, 20), (5, 24)]))
    }

    /// `PSL(2,7)`, the simple group of order 168.
    pub fn psl27() -> Self {
        Self::from_orders(168, BTreeMap::from([(1, 1), (2, 21), (3, 56), (4, 42), (7, 48)]))
    }

    /// The alternating group `A_6`.
    pub fn a6() -> Self {
        Self::from_orders(360, BTreeMap::from([(1, 1), (2, 45), (3, 80), (4, 90), (5, 144)]))
    }

    pub fn is_abelian(&self) -> bool {
        is_prime(self.order)
    }

    pub fn label(&self) -> String {
        self.name.clone().unwrap_or_else(|| format!("simple({})", self.order))
    }
}

impl fmt::Display for SimpleGroupId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.label())
    }
}

fn fingerprint_unchecked(g: &FiniteGroup) -> SimpleGroupId {
    let mut orders = BTreeMap::new();
    for x in 0..g.order() {
        *orders.entry(g.element_order(x)).or_insert(0) += 1;
    }
    SimpleGroupId::from_orders(g.order(), orders)
}

/// Fingerprint of a simple group.
pub fn fingerprint(g: &FiniteGroup) -> Result<SimpleGroupId, AlgebraError> {
    if !g.is_simple() {
        return Err(AlgebraError::NotSimple);
    }
    Ok(fingerprint_unchecked(g))
}

/// Maximal proper normal subgroups of `g` (sorted sets of `g`'s indices).
fn maximal_normal_subgroups(g: &FiniteGroup) -> Vec<Vec<usize>> {
    let all = g.normal_subgroups();
    let proper: Vec<&Vec<usize>> = all.iter().filter(|s| s.len() < g.order()).collect();
    proper
        .iter()
        .filter(|n| {
            !proper.iter().any(|m| {
                m.len() > n.len() && {
                    let member = g.membership(m);
                    n.iter().all(|&x| member[x])
                }
            })
        })
        .map(|n| (*n).clone())
        .collect()
}

/// A composition series `G = G_0 ▷ G_1 ▷ … ▷ G_r = 1`, each term a sorted
/// list of `g`'s element indices. At each step `choose` picks one of the
/// maximal normal subgroups of the current term.
pub fn composition_series_by(
    g: &FiniteGroup,
    limits: &Limits,
    choose: &mut dyn FnMut(&[Vec<usize>]) -> usize,
) -> Result<Vec<Vec<usize>>, AlgebraError> {
    if g.order() > limits.subgroup_cap {
        return Err(AlgebraError::GroupTooLarge {
            order: g.order(),
            cap: limits.subgroup_cap,
        });
    }
    let mut series = vec![(0..g.order()).collect::<Vec<_>>()];
    let mut current = g.clone();
    // labels of `current` in terms of g's indices
    let mut to_g: Vec<usize> = (0..g.order()).collect();
    while current.order() > 1 {
        let mut candidates: Vec<Vec<usize>> = maximal_normal_subgroups(&current);
        // compare candidates on g's indices
        let mut in_g: Vec<(Vec<usize>, Vec<usize>)> = candidates
            .drain(..)
            .map(|local| {
                let mut global: Vec<usize> = local.iter().map(|&x| to_g[x]).collect();
                global.sort_unstable();
                (local, global)
            })
            .collect();
        in_g.sort_by(|a, b| a.1.cmp(&b.1));
        let globals: Vec<Vec<usize>> = in_g.iter().map(|(_, gl)| gl.clone()).collect();
        let pick = choose(&globals);
        let (local, global) = in_g.swap_remove(pick);
        let next = current.subgroup_unchecked(&local);
        to_g = next.labels().iter().map(|&x| to_g[x]).collect();
        current = next;
        series.push(global);
    }
    Ok(series)
}

/// Default tie-break: the largest maximal normal subgroup, then the
/// lexicographically least element set.
fn default_choice(candidates: &[Vec<usize>]) -> usize {
    let mut best = 0;
    for (i, c) in candidates.iter().enumerate() {
        let b = &candidates[best];
        if c.len() > b.len() || (c.len() == b.len() && c < b) {
            best = i;
        }
    }
    best
}

pub fn composition_series(g: &FiniteGroup, limits: &Limits) -> Result<Vec<Vec<usize>>, AlgebraError> {
    composition_series_by(g, limits, &mut default_choice)
}

/// Factors `G_i / G_{i+1}` of a composition series, in series order.
pub fn series_factors(g: &FiniteGroup, series: &[Vec<usize>]) -> Vec<SimpleGroupId> {
    series
        .windows(2)
        .map(|w| {
            let upper = g.subgroup_unchecked(&w[0]);
            let pos: HashMap<usize, usize> = w[0].iter().enumerate().map(|(i, &x)| (x, i)).collect();
            let lower: Vec<usize> = w[1].iter().map(|x| pos[x]).collect();
            fingerprint_unchecked(&upper.quotient_unchecked(&lower))
        })
        .collect()
}

/// Composition factors of `g`, sorted.
pub fn composition_factors(g: &FiniteGroup, limits: &Limits) -> Result<Vec<SimpleGroupId>, AlgebraError> {
    let series = composition_series(g, limits)?;
    let mut factors = series_factors(g, &series);
    factors.sort();
    Ok(factors)
}

/// A subquotient `K / N` of a group, recorded as element sets of the group.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Subquotient {
    pub subgroup: Vec<usize>,
    pub normal: Vec<usize>,
}

/// For each simple group dividing `g`, the first subquotient realizing it
/// (class representatives in enumeration order, composition series top down).
pub fn simple_divisor_witnesses(
    g: &FiniteGroup,
    limits: &Limits,
) -> Result<BTreeMap<SimpleGroupId, Subquotient>, AlgebraError> {
    let mut out = BTreeMap::new();
    for class in subgroups(g, limits)? {
        let k = g.subgroup_unchecked(&class.representative);
        let series = composition_series(&k, limits)?;
        let factors = series_factors(&k, &series);
        for (i, s) in factors.into_iter().enumerate() {
            out.entry(s).or_insert_with(|| Subquotient {
                subgroup: series[i].iter().map(|&x| k.labels()[x]).collect(),
                normal: series[i + 1].iter().map(|&x| k.labels()[x]).collect(),
            });
        }
    }
    Ok(out)
}

/// The simple groups dividing `g`: composition factors of its subgroups.
pub fn simple_divisors_group(g: &FiniteGroup, limits: &Limits) -> Result<BTreeSet<SimpleGroupId>, AlgebraError> {
    Ok(simple_divisor_witnesses(g, limits)?.into_keys().collect())
}

/// A group `K / N` in a monoid: `K` and `N` are subgroups of `H_e`, given as
/// monoid element indices.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DivisionWitness {
    pub idempotent: usize,
    pub subgroup: Vec<usize>,
    pub normal: Vec<usize>,
}

/// For each simple divisor of `m`, a witness found at the first idempotent
/// (in element order) whose maximal subgroup it divides.
pub fn monoid_divisor_witnesses(
    m: &TransformationMonoid,
    limits: &Limits,
) -> Result<BTreeMap<SimpleGroupId, DivisionWitness>, AlgebraError> {
    if m.order() > limits.monoid_cap {
        return Err(AlgebraError::MonoidTooLarge { cap: limits.monoid_cap });
    }
    let mut out = BTreeMap::new();
    for e in m.idempotents() {
        let h = m.maximal_subgroup_at(e)?;
        if h.is_trivial() {
            continue;
        }
        for (s, sq) in simple_divisor_witnesses(&h, limits)? {
            out.entry(s).or_insert_with(|| DivisionWitness {
                idempotent: e,
                subgroup: sq.subgroup.iter().map(|&x| h.labels()[x]).collect(),
                normal: sq.normal.iter().map(|&x| h.labels()[x]).collect(),
            });
        }
    }
    Ok(out)
}

/// The simple groups dividing `m`.
pub fn simple_divisors_monoid(
    m: &TransformationMonoid,
    limits: &Limits,
) -> Result<BTreeSet<SimpleGroupId>, AlgebraError> {
    Ok(monoid_divisor_witnesses(m, limits)?.into_keys().collect())
}

/// Whether `s` divides `m`, with a witness when it does.
pub fn divides(
    s: &SimpleGroupId,
    m: &TransformationMonoid,
    limits: &Limits,
) -> Result<Option<DivisionWitness>, AlgebraError> {
    Ok(monoid_divisor_witnesses(m, limits)?.remove(s))
}

/// A small generating set of a subset of monoid elements that forms a group:
/// the least element not yet generated is added until everything is covered.
pub fn group_generators(m: &TransformationMonoid, set: &[usize]) -> Vec<usize> {
    let Some(&first) = set.first() else {
        return Vec::new();
    };
    // unit of the group: the idempotent power of any element
    let mut unit = first;
    while m.product(unit, unit) != unit {
        unit = m.product(unit, first);
    }
    let mut covered: BTreeSet<usize> = BTreeSet::from([unit]);
    let mut gens = Vec::new();
    for &x in set {
        if covered.contains(&x) {
            continue;
        }
        gens.push(x);
        let mut frontier: Vec<usize> = covered.iter().copied().collect();
        while let Some(y) = frontier.pop() {
            for &g in &gens {
                let z = m.product(y, g);
                if covered.insert(z) {
                    frontier.push(z);
                }
            }
        }
    }
    gens
}

// ---------------------------------------------------------------------------
// Reports

/// Summary of a transition monoid.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MonoidReport {
    pub order: usize,
    pub idempotents: usize,
    pub maximal_subgroup_orders: Vec<usize>,
    pub simple_divisors: Vec<SimpleGroupId>,
}

impl MonoidReport {
    pub fn compute(m: &TransformationMonoid, limits: &Limits) -> Result<Self, AlgebraError> {
        let idempotents = m.idempotents();
        let mut orders = Vec::with_capacity(idempotents.len());
        for &e in &idempotents {
            orders.push(m.maximal_subgroup_at(e)?.order());
        }
        Ok(MonoidReport {
            order: m.order(),
            idempotents: idempotents.len(),
            maximal_subgroup_orders: orders,
            simple_divisors: simple_divisors_monoid(m, limits)?.into_iter().collect(),
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::automaton::{counter, full_t2, symmetric_automaton};

    fn limits() -> Limits {
        Limits::default()
    }

    fn sym_group(n: usize) -> FiniteGroup {
        let m = transition_monoid(&symmetric_automaton(n).unwrap(), &limits()).unwrap();
        FiniteGroup::from_monoid(&m).unwrap()
    }

    fn names(set: impl IntoIterator<Item = SimpleGroupId>) -> Vec<String> {
        set.into_iter().map(|s| s.label()).collect()
    }

    #[test]
    fn monoid_orders() {
        let c6 = transition_monoid(&counter(6).unwrap(), &limits()).unwrap();
        assert_eq!(c6.order(), 6);
        assert!(c6.is_group());
        let s4 = transition_monoid(&symmetric_automaton(4).unwrap(), &limits()).unwrap();
        assert_eq!(s4.order(), 24);
        let t2 = transition_monoid(&full_t2(), &limits()).unwrap();
        assert_eq!(t2.order(), 4);
        assert_eq!(t2.witness_str(t2.identity()), "ε");
    }

    #[test]
    fn monoid_cap() {
        let tight = Limits {
            monoid_cap: 5,
            ..Limits::default()
        };
        assert!(matches!(
            transition_monoid(&counter(6).unwrap(), &tight),
            Err(AlgebraError::MonoidTooLarge { cap: 5 })
        ));
    }

    #[test]
    fn witnesses_are_shortlex() {
        let m = transition_monoid(&full_t2(), &limits()).unwrap();
        let words: Vec<String> = (0..m.order()).map(|i| m.witness_str(i)).collect();
        // elements sorted: [1,1] [1,2] [2,1] [2,2]
        assert_eq!(words, vec!["c", "ε", "b", "d"]);
    }

    #[test]
    fn idempotents_of_t2() {
        let m = transition_monoid(&full_t2(), &limits()).unwrap();
        let e = m.idempotents();
        assert_eq!(e.len(), 3);
        assert!(e.contains(&m.identity()));
        let c3 = transition_monoid(&counter(3).unwrap(), &limits()).unwrap();
        assert_eq!(c3.idempotents(), vec![c3.identity()]);
    }

    #[test]
    fn maximal_subgroups_of_t2() {
        let m = transition_monoid(&full_t2(), &limits()).unwrap();
        assert_eq!(m.maximal_subgroup_at(m.identity()).unwrap().order(), 2);
        let const1 = m.index_of(&Transformation::constant(2, 0)).unwrap();
        assert_eq!(m.maximal_subgroup_at(const1).unwrap().order(), 1);
        let swap = m.index_of(&Transformation::from_one_based(&[2, 1])).unwrap();
        assert!(matches!(
            m.maximal_subgroup_at(swap),
            Err(AlgebraError::NotIdempotent(_))
        ));
        let c5 = transition_monoid(&counter(5).unwrap(), &limits()).unwrap();
        assert_eq!(c5.maximal_subgroup_at(c5.identity()).unwrap().order(), 5);
    }

    #[test]
    fn subgroup_classes() {
        let s3 = sym_group(3);
        let classes = subgroups(&s3, &limits()).unwrap();
        let orders: Vec<usize> = classes.iter().map(SubgroupClass::order).collect();
        assert_eq!(orders, vec![1, 2, 3, 6]);
        assert_eq!(classes.iter().map(|c| c.conjugates).sum::<usize>(), 6);
        let c6 = FiniteGroup::cyclic(6);
        let orders: Vec<usize> = subgroups(&c6, &limits()).unwrap().iter().map(|c| c.order()).collect();
        assert_eq!(orders, vec![1, 2, 3, 6]);
        assert_eq!(subgroups(&FiniteGroup::cyclic(1), &limits()).unwrap().len(), 1);
        // S_4 has 11 classes and 30 subgroups
        let s4 = subgroups(&sym_group(4), &limits()).unwrap();
        assert_eq!(s4.len(), 11);
        assert_eq!(s4.iter().map(|c| c.conjugates).sum::<usize>(), 30);
    }

    #[test]
    fn subgroup_cap() {
        let tight = Limits {
            subgroup_cap: 10,
            ..Limits::default()
        };
        assert!(matches!(
            subgroups(&sym_group(4), &tight),
            Err(AlgebraError::GroupTooLarge { order: 24, cap: 10 })
        ));
    }

    #[test]
    fn normal_subgroups_and_quotients() {
        let s3 = sym_group(3);
        let normals: Vec<usize> = s3.normal_subgroups().iter().map(Vec::len).collect();
        assert_eq!(normals, vec![1, 3, 6]);
        let c6 = FiniteGroup::cyclic(6);
        let q = c6.quotient(&[0, 3]).unwrap();
        assert_eq!(q.order(), 3);
        assert!(q.is_abelian());
        assert_eq!(fingerprint(&q).unwrap().label(), "C_3");
        assert!(FiniteGroup::from_table(q.table().to_vec()).is_ok());
        let non_normal: Vec<usize> = subgroups(&s3, &limits()).unwrap()[1].representative.clone();
        assert!(matches!(s3.quotient(&non_normal), Err(AlgebraError::NotNormal)));
    }

    #[test]
    fn simplicity() {
        assert!(FiniteGroup::cyclic(5).is_simple());
        assert!(!FiniteGroup::cyclic(6).is_simple());
        assert!(!FiniteGroup::cyclic(1).is_simple());
        assert!(matches!(
            fingerprint(&FiniteGroup::cyclic(4)),
            Err(AlgebraError::NotSimple)
        ));
        let c2 = fingerprint(&FiniteGroup::cyclic(2)).unwrap();
        assert_eq!(c2.order, 2);
        assert_eq!(c2.element_orders, BTreeMap::from([(1, 1), (2, 1)]));
        assert_eq!(c2, SimpleGroupId::cyclic(2));
    }

    #[test]
    fn composition_factor_examples() {
        assert_eq!(
            names(composition_factors(&sym_group(3), &limits()).unwrap()),
            vec!["C_2", "C_3"]
        );
        assert_eq!(
            names(composition_factors(&FiniteGroup::cyclic(12), &limits()).unwrap()),
            vec!["C_2", "C_2", "C_3"]
        );
        assert_eq!(
            names(composition_factors(&sym_group(4), &limits()).unwrap()),
            vec!["C_2", "C_2", "C_2", "C_3"]
        );
    }

    #[test]
    fn a5_is_simple() {
        let s5 = sym_group(5);
        let normals = s5.normal_subgroups();
        let a5 = s5.subgroup(&normals[1]).unwrap();
        assert_eq!(a5.order(), 60);
        assert!(a5.is_simple());
        let id = fingerprint(&a5).unwrap();
        assert_eq!(id, SimpleGroupId::a5());
        assert_eq!(composition_factors(&a5, &limits()).unwrap(), vec![SimpleGroupId::a5()]);
    }

    #[test]
    fn group_divisors() {
        let d = simple_divisors_group(&sym_group(5), &limits()).unwrap();
        assert_eq!(names(d), vec!["C_2", "C_3", "C_5", "A_5"]);
        let d = simple_divisors_group(&FiniteGroup::cyclic(6), &limits()).unwrap();
        assert_eq!(names(d), vec!["C_2", "C_3"]);
        assert!(simple_divisors_group(&FiniteGroup::cyclic(1), &limits())
            .unwrap()
            .is_empty());
    }

    #[test]
    fn monoid_divisors() {
        let t2 = transition_monoid(&full_t2(), &limits()).unwrap();
        assert_eq!(names(simple_divisors_monoid(&t2, &limits()).unwrap()), vec!["C_2"]);
        let c6 = transition_monoid(&counter(6).unwrap(), &limits()).unwrap();
        assert_eq!(
            names(simple_divisors_monoid(&c6, &limits()).unwrap()),
            vec!["C_2", "C_3"]
        );
        let s3 = transition_monoid(&symmetric_automaton(3).unwrap(), &limits()).unwrap();
        assert_eq!(
            names(simple_divisors_monoid(&s3, &limits()).unwrap()),
            vec!["C_2", "C_3"]
        );
    }

    #[test]
    fn divides_with_witness() {
        let c3 = transition_monoid(&counter(3).unwrap(), &limits()).unwrap();
        assert!(divides(&SimpleGroupId::cyclic(2), &c3, &limits()).unwrap().is_none());
        let s5 = transition_monoid(&symmetric_automaton(5).unwrap(), &limits()).unwrap();
        let w = divides(&SimpleGroupId::cyclic(5), &s5, &limits()).unwrap().unwrap();
        assert_eq!(w.subgroup.len(), 5);
        assert_eq!(w.normal.len(), 1);
        assert!(w
            .subgroup
            .iter()
            .all(|&x| x == w.idempotent || s5.element(x).is_permutation()));
        let w = divides(&SimpleGroupId::a5(), &s5, &limits()).unwrap().unwrap();
        assert_eq!(w.subgroup.len() / w.normal.len(), 60);
        let gens = group_generators(&s5, &w.subgroup);
        assert!(gens.len() <= 3);
    }

    #[test]
    fn report() {
        let t2 = transition_monoid(&full_t2(), &limits()).unwrap();
        let r = MonoidReport::compute(&t2, &limits()).unwrap();
        assert_eq!(r.order, 4);
        assert_eq!(r.idempotents, 3);
        let mut orders = r.maximal_subgroup_orders.clone();
        orders.sort();
        assert_eq!(orders, vec![1, 1, 2]);
        let json = serde_json::to_value(&r).unwrap();
        assert_eq!(json["simple_divisors"][0]["name"], "C_2");
    }

    #[test]
    fn table_validation() {
        assert!(FiniteGroup::from_table(vec![vec![0, 0], vec![0, 1]]).is_err());
        assert!(FiniteGroup::from_table(vec![vec![1, 0], vec![0, 1]]).is_ok());
        assert!(FiniteGroup::from_table(vec![]).is_err());
    }
}
