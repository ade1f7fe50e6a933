//! A finite model of iteration: pointed finite posets, monotone maps between
//! their powers, and dagger interpreted as the parameterized least fixed
//! point.
//!
//! A map `P^k -> P^t` is stored as a table indexed by the big-endian encoding
//! of its argument tuple. Checking an equation here can only refute it: a
//! passing check is evidence, not a proof of validity in every Conway
//! category.

use std::collections::BTreeMap;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::term::{Equation, Morphism, Symbol};

pub const DEFAULT_EXHAUSTIVE_THRESHOLD: u64 = 100_000;
pub const DEFAULT_SAMPLES: u64 = 10_000;
pub const DEFAULT_SEED: u64 = 42;
pub const DEFAULT_DECISION_BUDGET: u64 = 50_000_000;

/// Largest table (in argument tuples) the evaluator will build.
const MAX_TABLE: usize = 1 << 22;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ModelError {
    #[error("poset needs at least one element")]
    EmptyPoset,
    #[error("relation is not a partial order: {0}")]
    NotPartialOrder(String),
    #[error("poset has no least element")]
    NoBottom,
    #[error("unknown poset `{0}`; expected chain:k or flat:k")]
    UnknownPoset(String),
    #[error("more than {limit} monotone functions of arity {arity}; sample instead")]
    TooManyFunctions { arity: usize, limit: u64 },
    #[error("exhaustive check needs {needed} interpretations, above the threshold {threshold}")]
    ExhaustiveTooLarge { needed: String, threshold: u64 },
    #[error("symbol `{0}` is not interpreted")]
    MissingSymbol(String),
    #[error("symbol `{name}` has arity {expected} but its interpretation has arity {found}")]
    ArityMismatch {
        name: String,
        expected: usize,
        found: usize,
    },
    #[error("table for a map out of P^{0} is too large to evaluate")]
    TableTooLarge(usize),
    #[error("poset `{0}` lacks binary joins; the decision-tree check needs them")]
    NoJoins(String),
    #[error("decision tree exceeded {0} leaves")]
    DecisionBudget(u64),
    #[error("Kleene iteration did not stabilize; interpretation is not monotone")]
    NonStabilization,
    #[error(transparent)]
    Term(#[from] crate::term::TermError),
}

/// A finite poset with a least element.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PosetModel {
    name: String,
    size: usize,
    leq: Vec<bool>,
    bottom: u8,
    /// Elements in a linear extension of the order.
    linear: Vec<u8>,
    lower_covers: Vec<Vec<u8>>,
    upper_covers: Vec<Vec<u8>>,
}

impl PosetModel {
    /// Builds a poset from its order relation `leq[x * size + y] = x ≤ y`.
    pub fn from_relation(name: impl Into<String>, size: usize, leq: Vec<bool>) -> Result<Self, ModelError> {
        if size == 0 {
            return Err(ModelError::EmptyPoset);
        }
        if size > 255 || leq.len() != size * size {
            return Err(ModelError::NotPartialOrder("bad relation size".into()));
        }
        let le = |x: usize, y: usize| leq[x * size + y];
        for x in 0..size {
            if !le(x, x) {
                return Err(ModelError::NotPartialOrder(format!("{x} ≰ {x}")));
            }
            for y in 0..size {
                if x != y && le(x, y) && le(y, x) {
                    return Err(ModelError::NotPartialOrder(format!("{x} and {y} are equivalent")));
                }
                for z in 0..size {
                    if le(x, y) && le(y, z) && !le(x, z) {
                        return Err(ModelError::NotPartialOrder(format!("{x} ≤ {y} ≤ {z} but {x} ≰ {z}")));
                    }
                }
            }
        }
        let bottom = (0..size)
            .find(|&b| (0..size).all(|y| le(b, y)))
            .ok_or(ModelError::NoBottom)? as u8;
        // number of elements below is a linear extension key
        let mut linear: Vec<u8> = (0..size as u8).collect();
        linear.sort_by_key(|&x| ((0..size).filter(|&y| le(y, x as usize)).count(), x));
        let covers =
            |x: usize, y: usize| le(x, y) && x != y && !(0..size).any(|z| z != x && z != y && le(x, z) && le(z, y));
        let lower_covers = (0..size)
            .map(|y| (0..size).filter(|&x| covers(x, y)).map(|x| x as u8).collect())
            .collect();
        let upper_covers = (0..size)
            .map(|x| (0..size).filter(|&y| covers(x, y)).map(|y| y as u8).collect())
            .collect();
        Ok(PosetModel {
            name: name.into(),
            size,
            leq,
            bottom,
            linear,
            lower_covers,
            upper_covers,
        })
    }

    /// The chain `0 < 1 < … < k-1`.
    pub fn chain(k: usize) -> Result<Self, ModelError> {
        let leq = (0..k * k).map(|i| i / k.max(1) <= i % k.max(1)).collect();
        Self::from_relation(format!("chain:{k}"), k, leq)
    }

    /// The flat poset: a bottom `0` below `k` pairwise incomparable elements.
    pub fn flat(k: usize) -> Result<Self, ModelError> {
        let n = k + 1;
        let leq = (0..n * n).map(|i| i / n == 0 || i / n == i % n).collect();
        Self::from_relation(format!("flat:{k}"), n, leq)
    }

    /// Parses `chain:k` or `flat:k`.
    pub fn parse(text: &str) -> Result<Self, ModelError> {
        let bad = || ModelError::UnknownPoset(text.to_string());
        let (kind, k) = text.split_once(':').ok_or_else(bad)?;
        let k: usize = k.trim().parse().map_err(|_| bad())?;
        match kind.trim() {
            "chain" => Self::chain(k),
            "flat" => Self::flat(k),
            _ => Err(bad()),
        }
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn bottom(&self) -> u8 {
        self.bottom
    }

    pub fn leq(&self, x: u8, y: u8) -> bool {
        self.leq[x as usize * self.size + y as usize]
    }

    /// Componentwise order on tuples.
    pub fn leq_tuple(&self, x: &[u8], y: &[u8]) -> bool {
        x.iter().zip(y).all(|(&a, &b)| self.leq(a, b))
    }

    /// Least upper bound of `x` and `y`, if it exists.
    pub fn join(&self, x: u8, y: u8) -> Option<u8> {
        let uppers: Vec<u8> = (0..self.size as u8)
            .filter(|&u| self.leq(x, u) && self.leq(y, u))
            .collect();
        uppers.iter().copied().find(|&u| uppers.iter().all(|&w| self.leq(u, w)))
    }

    pub fn has_joins(&self) -> bool {
        (0..self.size as u8).all(|x| (0..self.size as u8).all(|y| self.join(x, y).is_some()))
    }

    fn pow(&self, k: usize) -> Result<usize, ModelError> {
        let mut n: usize = 1;
        for _ in 0..k {
            n = n
                .checked_mul(self.size)
                .filter(|&n| n <= MAX_TABLE)
                .ok_or(ModelError::TableTooLarge(k))?;
        }
        Ok(n)
    }

    pub fn encode(&self, tuple: &[u8]) -> usize {
        tuple.iter().fold(0, |acc, &v| acc * self.size + v as usize)
    }

    pub fn decode(&self, mut index: usize, arity: usize) -> Vec<u8> {
        let mut out = vec![0u8; arity];
        for slot in out.iter_mut().rev() {
            *slot = (index % self.size) as u8;
            index /= self.size;
        }
        out
    }

    /// All tuples of `P^n` in index order.
    pub fn product_order(&self, n: usize) -> Result<impl Iterator<Item = Vec<u8>> + '_, ModelError> {
        let count = self.pow(n)?;
        Ok((0..count).map(move |i| self.decode(i, n)))
    }

    /// Argument tuples of `P^arity` sorted along a linear extension of the
    /// product order, with each tuple's lower and upper neighbours (one
    /// coordinate moved along a cover).
    fn domain_plan(&self, arity: usize) -> Result<DomainPlan, ModelError> {
        let count = self.pow(arity)?;
        let mut rank = vec![0usize; self.size];
        for (r, &x) in self.linear.iter().enumerate() {
            rank[x as usize] = r;
        }
        let mut order: Vec<usize> = (0..count).collect();
        let key = |i: usize| -> Vec<usize> { self.decode(i, arity).iter().map(|&v| rank[v as usize]).collect() };
        order.sort_by_cached_key(|&i| key(i));
        let neighbours = |i: usize, covers: &[Vec<u8>]| -> Vec<usize> {
            let t = self.decode(i, arity);
            let mut out = Vec::new();
            for c in 0..arity {
                for &v in &covers[t[c] as usize] {
                    let mut u = t.clone();
                    u[c] = v;
                    out.push(self.encode(&u));
                }
            }
            out
        };
        let below = order.iter().map(|&i| neighbours(i, &self.lower_covers)).collect();
        let above = order.iter().map(|&i| neighbours(i, &self.upper_covers)).collect();
        Ok(DomainPlan { order, below, above })
    }
}

struct DomainPlan {
    order: Vec<usize>,
    below: Vec<Vec<usize>>,
    above: Vec<Vec<usize>>,
}

/// A map `P^in_arity -> P^out_arity`; `table[i * out_arity + j]` is output
/// `j` at the argument tuple with index `i`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct MonotoneFn {
    pub in_arity: usize,
    pub out_arity: usize,
    pub table: Vec<u8>,
}

impl MonotoneFn {
    pub fn new(in_arity: usize, out_arity: usize, table: Vec<u8>) -> Self {
        MonotoneFn {
            in_arity,
            out_arity,
            table,
        }
    }

    pub fn output(&self, index: usize) -> &[u8] {
        &self.table[index * self.out_arity..(index + 1) * self.out_arity]
    }

    pub fn apply(&self, p: &PosetModel, args: &[u8]) -> &[u8] {
        self.output(p.encode(args))
    }

    /// Number of argument tuples, `|P|^in_arity`.
    pub fn rows(&self, p: &PosetModel) -> usize {
        p.size().pow(self.in_arity as u32)
    }

    pub fn is_monotone(&self, p: &PosetModel) -> bool {
        let n = self.rows(p);
        (0..n).all(|i| {
            let x = p.decode(i, self.in_arity);
            (0..n).all(|j| {
                let y = p.decode(j, self.in_arity);
                !p.leq_tuple(&x, &y) || p.leq_tuple(self.output(i), self.output(j))
            })
        })
    }
}

/// Calls `visit` with every monotone `P^arity -> P` table, in a fixed order,
/// until it returns `false`.
fn for_each_monotone(p: &PosetModel, arity: usize, visit: &mut dyn FnMut(&[u8]) -> bool) -> Result<(), ModelError> {
    let plan = p.domain_plan(arity)?;
    let count = plan.order.len();
    let mut table = vec![0u8; count];
    fn go(
        p: &PosetModel,
        plan: &DomainPlan,
        pos: usize,
        table: &mut [u8],
        visit: &mut dyn FnMut(&[u8]) -> bool,
    ) -> bool {
        if pos == plan.order.len() {
            return visit(table);
        }
        for &v in &p.linear {
            if plan.below[pos].iter().all(|&b| p.leq(table[b], v)) {
                table[plan.order[pos]] = v;
                if !go(p, plan, pos + 1, table, visit) {
                    return false;
                }
            }
        }
        true
    }
    go(p, &plan, 0, &mut table, visit);
    Ok(())
}

/// Number of monotone maps `P^arity -> P`, or `None` when above `limit`.
pub fn count_monotone(p: &PosetModel, arity: usize, limit: u64) -> Result<Option<u64>, ModelError> {
    let mut n = 0u64;
    for_each_monotone(p, arity, &mut |_| {
        n += 1;
        n <= limit
    })?;
    Ok((n <= limit).then_some(n))
}

/// Every monotone map `P^arity -> P` exactly once, in a fixed order.
pub fn enumerate_monotone(p: &PosetModel, arity: usize, limit: u64) -> Result<Vec<MonotoneFn>, ModelError> {
    let mut out = Vec::new();
    let mut over = false;
    for_each_monotone(p, arity, &mut |t| {
        if out.len() as u64 >= limit {
            over = true;
            return false;
        }
        out.push(MonotoneFn::new(arity, 1, t.to_vec()));
        true
    })?;
    if over {
        return Err(ModelError::TooManyFunctions { arity, limit });
    }
    Ok(out)
}

/// A pseudo-random monotone map `P^arity -> P`. Values are drawn either
/// bottom-up above the values already fixed below, or top-down below the
/// values fixed above; every monotone map has positive probability.
pub fn random_monotone(p: &PosetModel, arity: usize, rng: &mut impl Rng) -> Result<MonotoneFn, ModelError> {
    let plan = p.domain_plan(arity)?;
    let count = plan.order.len();
    let mut table = vec![0u8; count];
    let upward = rng.gen_bool(0.5);
    // Top-down never gets stuck since the bottom is always below the fixed
    // values. Bottom-up can, when two fixed values have no common upper
    // bound; it restarts a few times, then goes top-down.
    let mut choices = Vec::with_capacity(p.size());
    let mut upward = upward;
    let mut attempts = 0;
    'attempt: loop {
        for &pos in &positions_for(upward, count) {
            let neighbours = if upward { &plan.below[pos] } else { &plan.above[pos] };
            choices.clear();
            choices.extend((0..p.size() as u8).filter(|&v| {
                neighbours
                    .iter()
                    .all(|&n| if upward { p.leq(table[n], v) } else { p.leq(v, table[n]) })
            }));
            if choices.is_empty() {
                attempts += 1;
                upward = attempts < 16;
                continue 'attempt;
            }
            table[plan.order[pos]] = choices[rng.gen_range(0..choices.len())];
        }
        break;
    }
    Ok(MonotoneFn::new(arity, 1, table))
}

fn positions_for(upward: bool, count: usize) -> Vec<usize> {
    if upward {
        (0..count).collect()
    } else {
        (0..count).rev().collect()
    }
}

/// Least fixed point of `x ↦ f(x, params)` for `f: P^{1+p} -> P`, by Kleene
/// iteration from the bottom.
pub fn lfp(p: &PosetModel, f: &MonotoneFn, params: &[u8]) -> Result<u8, ModelError> {
    let pidx = p.encode(params);
    let stride = p.pow(params.len())?;
    let mut x = p.bottom();
    for _ in 0..=p.size() {
        let next = f.output(x as usize * stride + pidx)[0];
        if next == x {
            return Ok(x);
        }
        x = next;
    }
    Err(ModelError::NonStabilization)
}

/// Interpretation of the symbols of a term.
pub type Interpretation = BTreeMap<String, MonotoneFn>;

/// Evaluates a well-typed term.
pub fn eval(m: &Morphism, interp: &Interpretation, p: &PosetModel) -> Result<MonotoneFn, ModelError> {
    match m {
        Morphism::Proj { index, arity } => {
            m.arity()?;
            let rows = p.pow(*arity)?;
            let table = (0..rows).map(|i| p.decode(i, *arity)[index - 1]).collect();
            Ok(MonotoneFn::new(*arity, 1, table))
        }
        Morphism::Tuple { source, items } => {
            let rows = p.pow(*source)?;
            let parts = items
                .iter()
                .map(|t| eval(t, interp, p))
                .collect::<Result<Vec<_>, _>>()?;
            for part in &parts {
                if part.in_arity != *source {
                    return Err(crate::term::TermError::ArityMismatch {
                        context: "tuple component source",
                        expected: *source,
                        found: part.in_arity,
                        path: "/".into(),
                    }
                    .into());
                }
            }
            let out_arity: usize = parts.iter().map(|f| f.out_arity).sum();
            let mut table = Vec::with_capacity(rows * out_arity);
            for i in 0..rows {
                for part in &parts {
                    table.extend_from_slice(part.output(i));
                }
            }
            Ok(MonotoneFn::new(*source, out_arity, table))
        }
        Morphism::Comp(g, f) => {
            let fv = eval(f, interp, p)?;
            let gv = eval(g, interp, p)?;
            if fv.out_arity != gv.in_arity {
                return Err(crate::term::TermError::ArityMismatch {
                    context: "composition",
                    expected: gv.in_arity,
                    found: fv.out_arity,
                    path: "/".into(),
                }
                .into());
            }
            let rows = fv.rows(p);
            let mut table = Vec::with_capacity(rows * gv.out_arity);
            for i in 0..rows {
                let mid = p.encode(fv.output(i));
                table.extend_from_slice(gv.output(mid));
            }
            Ok(MonotoneFn::new(fv.in_arity, gv.out_arity, table))
        }
        Morphism::Sym(s) => {
            let f = interp
                .get(&s.name)
                .ok_or_else(|| ModelError::MissingSymbol(s.name.clone()))?;
            if f.in_arity != s.in_arity || f.out_arity != 1 {
                return Err(ModelError::ArityMismatch {
                    name: s.name.clone(),
                    expected: s.in_arity,
                    found: f.in_arity,
                });
            }
            Ok(f.clone())
        }
        Morphism::Dagger { body, vars } => {
            let b = eval(body, interp, p)?;
            if b.out_arity != *vars || b.in_arity < *vars {
                return Err(crate::term::TermError::DaggerShape {
                    vars: *vars,
                    body: crate::term::Arity::new(b.in_arity, b.out_arity),
                    path: "/".into(),
                }
                .into());
            }
            let params = b.in_arity - vars;
            let prow = p.pow(params)?;
            let mut table = Vec::with_capacity(prow * vars);
            let bound = vars * p.size() + 1;
            let mut x = vec![p.bottom(); *vars];
            for pidx in 0..prow {
                x.iter_mut().for_each(|v| *v = p.bottom());
                let mut stable = false;
                for _ in 0..=bound {
                    let next = b.output(p.encode(&x) * prow + pidx);
                    if next == x.as_slice() {
                        stable = true;
                        break;
                    }
                    x.copy_from_slice(next);
                }
                if !stable {
                    return Err(ModelError::NonStabilization);
                }
                table.extend_from_slice(&x);
            }
            Ok(MonotoneFn::new(params, *vars, table))
        }
    }
}

// ---------------------------------------------------------------------------
// Equation checking

/// How interpretations are chosen.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Strategy {
    /// Every interpretation; fails when there are more than `threshold`.
    Exhaustive { threshold: u64 },
    /// `count` pseudo-random interpretations from `seed`.
    Sampled { seed: u64, count: u64 },
    /// Exhaustive up to `threshold` interpretations, sampled above it.
    Auto { threshold: u64, seed: u64, count: u64 },
    /// Every interpretation, grouped by the table entries evaluation reads.
    /// Each input is evaluated pointwise and the search branches over the
    /// monotone-consistent values of an entry only when it is read. Needs a
    /// poset with binary joins, where every consistent partial table extends
    /// to a monotone one. Fails after `budget` leaves.
    Decision { budget: u64 },
}

impl Default for Strategy {
    fn default() -> Self {
        Strategy::Auto {
            threshold: DEFAULT_EXHAUSTIVE_THRESHOLD,
            seed: DEFAULT_SEED,
            count: DEFAULT_SAMPLES,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Counterexample {
    /// Tables of the interpreting functions, indexed by argument tuple.
    pub interpretation: BTreeMap<String, Vec<u8>>,
    pub input: Vec<u8>,
    pub lhs: Vec<u8>,
    pub rhs: Vec<u8>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CheckResult {
    pub equation: String,
    pub poset: String,
    pub strategy: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    /// Interpretations evaluated; for the decision tree, leaves of the search.
    pub interpretations_checked: u64,
    pub holds: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub counterexample: Option<Counterexample>,
    /// A passing check does not establish validity in all Conway categories.
    pub refutation_only: bool,
}

/// Number of interpretations of `symbols` over `p`, or `None` when above
/// `limit`.
pub fn interpretation_count(symbols: &[Symbol], p: &PosetModel, limit: u64) -> Result<Option<u64>, ModelError> {
    let mut total: u64 = 1;
    for s in symbols {
        match count_monotone(p, s.in_arity, limit)? {
            Some(n) => match total.checked_mul(n) {
                Some(t) if t <= limit => total = t,
                _ => return Ok(None),
            },
            None => return Ok(None),
        }
    }
    Ok(Some(total))
}

fn compare(eq: &Equation, interp: &Interpretation, p: &PosetModel) -> Result<Option<Counterexample>, ModelError> {
    let l = eval(&eq.lhs, interp, p)?;
    let r = eval(&eq.rhs, interp, p)?;
    if l.table == r.table {
        return Ok(None);
    }
    let rows = l.rows(p);
    let i = (0..rows).find(|&i| l.output(i) != r.output(i)).expect("tables differ");
    Ok(Some(Counterexample {
        interpretation: interp.iter().map(|(k, v)| (k.clone(), v.table.clone())).collect(),
        input: p.decode(i, l.in_arity),
        lhs: l.output(i).to_vec(),
        rhs: r.output(i).to_vec(),
    }))
}

/// Checks `eq` in the model `p`.
pub fn check_equation(eq: &Equation, p: &PosetModel, strategy: Strategy) -> Result<CheckResult, ModelError> {
    let exhaustive_limit = match strategy {
        Strategy::Exhaustive { threshold } | Strategy::Auto { threshold, .. } => Some(threshold),
        Strategy::Sampled { .. } => None,
        Strategy::Decision { budget } => return check_decision(eq, p, budget),
    };
    if let Some(threshold) = exhaustive_limit {
        match interpretation_count(&eq.symbols, p, threshold)? {
            Some(_) => return check_exhaustive(eq, p, threshold),
            None => {
                if let Strategy::Exhaustive { threshold } = strategy {
                    return Err(ModelError::ExhaustiveTooLarge {
                        needed: format!("more than {threshold}"),
                        threshold,
                    });
                }
            }
        }
    }
    let (seed, count) = match strategy {
        Strategy::Sampled { seed, count } | Strategy::Auto { seed, count, .. } => (seed, count),
        Strategy::Exhaustive { .. } | Strategy::Decision { .. } => unreachable!("handled above"),
    };
    check_sampled(eq, p, seed, count)
}

fn check_exhaustive(eq: &Equation, p: &PosetModel, threshold: u64) -> Result<CheckResult, ModelError> {
    let pools = eq
        .symbols
        .iter()
        .map(|s| enumerate_monotone(p, s.in_arity, threshold))
        .collect::<Result<Vec<_>, _>>()?;
    let mut cursor = vec![0usize; pools.len()];
    let mut interp: Interpretation = eq
        .symbols
        .iter()
        .zip(&pools)
        .map(|(s, pool)| (s.name.clone(), pool[0].clone()))
        .collect();
    let mut checked = 0u64;
    loop {
        checked += 1;
        if let Some(cex) = compare(eq, &interp, p)? {
            return Ok(result(eq, p, "exhaustive", None, checked, Some(cex)));
        }
        // odometer, last symbol fastest
        let mut k = pools.len();
        loop {
            if k == 0 {
                return Ok(result(eq, p, "exhaustive", None, checked, None));
            }
            k -= 1;
            cursor[k] += 1;
            if cursor[k] < pools[k].len() {
                break;
            }
            cursor[k] = 0;
        }
        for (j, s) in eq.symbols.iter().enumerate().skip(k) {
            interp.insert(s.name.clone(), pools[j][cursor[j]].clone());
        }
    }
}

fn check_sampled(eq: &Equation, p: &PosetModel, seed: u64, count: u64) -> Result<CheckResult, ModelError> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut checked = 0u64;
    for _ in 0..count {
        let mut interp = Interpretation::new();
        for s in &eq.symbols {
            interp.insert(s.name.clone(), random_monotone(p, s.in_arity, &mut rng)?);
        }
        checked += 1;
        if let Some(cex) = compare(eq, &interp, p)? {
            return Ok(result(eq, p, "sampled", Some(seed), checked, Some(cex)));
        }
    }
    Ok(result(eq, p, "sampled", Some(seed), checked, None))
}

const UNSET: u8 = u8::MAX;

enum Probe {
    Need(usize, usize),
    Fail(ModelError),
}

impl From<ModelError> for Probe {
    fn from(e: ModelError) -> Self {
        Probe::Fail(e)
    }
}

/// Interpretation tables with unread entries left as `UNSET`.
struct Partial<'a> {
    p: &'a PosetModel,
    index: BTreeMap<&'a str, usize>,
    arity: Vec<usize>,
    tables: Vec<Vec<u8>>,
}

impl<'a> Partial<'a> {
    fn new(eq: &'a Equation, p: &'a PosetModel) -> Result<Self, ModelError> {
        let index = eq
            .symbols
            .iter()
            .enumerate()
            .map(|(k, s)| (s.name.as_str(), k))
            .collect();
        let arity: Vec<usize> = eq.symbols.iter().map(|s| s.in_arity).collect();
        let tables = arity
            .iter()
            .map(|&a| Ok(vec![UNSET; p.pow(a)?]))
            .collect::<Result<_, ModelError>>()?;
        Ok(Partial {
            p,
            index,
            arity,
            tables,
        })
    }

    fn eval_at(&self, m: &Morphism, x: &[u8]) -> Result<Vec<u8>, Probe> {
        match m {
            Morphism::Proj { index, .. } => Ok(vec![x[index - 1]]),
            Morphism::Tuple { items, .. } => {
                let mut out = Vec::with_capacity(items.len());
                for t in items {
                    out.extend(self.eval_at(t, x)?);
                }
                Ok(out)
            }
            Morphism::Comp(g, f) => {
                let y = self.eval_at(f, x)?;
                self.eval_at(g, &y)
            }
            Morphism::Sym(s) => {
                let k = *self
                    .index
                    .get(s.name.as_str())
                    .ok_or_else(|| ModelError::MissingSymbol(s.name.clone()))?;
                let i = self.p.encode(x);
                match self.tables[k][i] {
                    UNSET => Err(Probe::Need(k, i)),
                    v => Ok(vec![v]),
                }
            }
            Morphism::Dagger { body, vars } => {
                let mut arg = vec![self.p.bottom(); *vars];
                arg.extend_from_slice(x);
                for _ in 0..=vars * self.p.size() {
                    let next = self.eval_at(body, &arg)?;
                    if next[..] == arg[..*vars] {
                        return Ok(next);
                    }
                    arg[..*vars].copy_from_slice(&next);
                }
                Err(ModelError::NonStabilization.into())
            }
        }
    }

    /// Values for entry `i` of table `k` that keep the table monotone.
    fn candidates(&self, k: usize, i: usize) -> Vec<u8> {
        let a = self.arity[k];
        let xi = self.p.decode(i, a);
        let set: Vec<(Vec<u8>, u8)> = self.tables[k]
            .iter()
            .enumerate()
            .filter(|(_, &v)| v != UNSET)
            .map(|(j, &v)| (self.p.decode(j, a), v))
            .collect();
        self.p
            .linear
            .iter()
            .copied()
            .filter(|&v| {
                set.iter().all(|(xj, w)| {
                    (!self.p.leq_tuple(xj, &xi) || self.p.leq(*w, v))
                        && (!self.p.leq_tuple(&xi, xj) || self.p.leq(v, *w))
                })
            })
            .collect()
    }

    /// Depth-first search below the current assignment. On a refutation the
    /// refuting assignment is left in place.
    fn search(&mut self, eq: &Equation, x: &[u8], leaves: &mut u64, budget: u64) -> Result<bool, ModelError> {
        let probe = self
            .eval_at(&eq.lhs, x)
            .and_then(|l| Ok((l, self.eval_at(&eq.rhs, x)?)));
        match probe {
            Ok((l, r)) => {
                *leaves += 1;
                if *leaves > budget {
                    return Err(ModelError::DecisionBudget(budget));
                }
                Ok(l != r)
            }
            Err(Probe::Fail(e)) => Err(e),
            Err(Probe::Need(k, i)) => {
                for v in self.candidates(k, i) {
                    self.tables[k][i] = v;
                    if self.search(eq, x, leaves, budget)? {
                        return Ok(true);
                    }
                }
                self.tables[k][i] = UNSET;
                Ok(false)
            }
        }
    }

    /// Completes every table by `x ↦ ⋁ { t(d) : d ≤ x assigned }`.
    fn complete(&self) -> Interpretation {
        let mut interp = Interpretation::new();
        for (name, &k) in &self.index {
            let a = self.arity[k];
            let t = &self.tables[k];
            let table = (0..t.len())
                .map(|i| {
                    if t[i] != UNSET {
                        return t[i];
                    }
                    let xi = self.p.decode(i, a);
                    t.iter()
                        .enumerate()
                        .filter(|(j, &v)| v != UNSET && self.p.leq_tuple(&self.p.decode(*j, a), &xi))
                        .fold(self.p.bottom(), |acc, (_, &v)| {
                            self.p.join(acc, v).expect("poset has joins")
                        })
                })
                .collect();
            interp.insert(name.to_string(), MonotoneFn::new(a, 1, table));
        }
        interp
    }
}

fn check_decision(eq: &Equation, p: &PosetModel, budget: u64) -> Result<CheckResult, ModelError> {
    if !p.has_joins() {
        return Err(ModelError::NoJoins(p.name().to_string()));
    }
    let mut partial = Partial::new(eq, p)?;
    let mut leaves = 0u64;
    for i in 0..p.pow(eq.arity().source)? {
        let x = p.decode(i, eq.arity().source);
        if partial.search(eq, &x, &mut leaves, budget)? {
            let interp = partial.complete();
            let cex = compare(eq, &interp, p)?.expect("a completed refuting assignment refutes");
            return Ok(result(eq, p, "decision-tree", None, leaves, Some(cex)));
        }
    }
    Ok(result(eq, p, "decision-tree", None, leaves, None))
}

fn result(
    eq: &Equation,
    p: &PosetModel,
    strategy: &str,
    seed: Option<u64>,
    checked: u64,
    counterexample: Option<Counterexample>,
) -> CheckResult {
    CheckResult {
        equation: eq.name.clone(),
        poset: p.name().to_string(),
        strategy: strategy.to_string(),
        seed,
        interpretations_checked: checked,
        holds: counterexample.is_none(),
        counterexample,
        refutation_only: true,
    }
}
