//! Builders for the identities of iteration theory as [`Equation`]s.
//!
//! Objects are powers of a single sort, so each schematic identity is
//! emitted at concrete arities: `a`, `b` for the objects `A`, `B` and `c`
//! for the parameter object `C`. Schematic morphisms into `A^k` with `k > 1`
//! are tuples of unary-output symbols (see [`generic`]).

use std::collections::BTreeMap;

use thiserror::Error;

use crate::algebra::{AlgebraError, FiniteGroup, Limits, TransformationMonoid};
use crate::automaton::{cayley_automaton, monoid_automaton, Automaton, InitializedAutomaton};
use crate::term::{
    base_from_function, block, diagonal, generic, identity, power, product, Equation, Morphism, Symbol, TermError,
};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum IdentityError {
    #[error("{name} needs {constraint}, got {value}")]
    OutOfRange {
        name: &'static str,
        constraint: &'static str,
        value: usize,
    },
    #[error("not a permutation of 1..={0}")]
    NotPermutation(usize),
    #[error(transparent)]
    Term(#[from] TermError),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
}

/// A named identity instance together with the arities it was built at.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IdentitySchema {
    pub name: String,
    pub params: BTreeMap<String, usize>,
    /// Arity of the parameter object.
    pub p: usize,
    pub equation: Equation,
}

impl IdentitySchema {
    fn new(name: &str, params: &[(&str, usize)], p: usize, lhs: Morphism, rhs: Morphism) -> Result<Self, TermError> {
        let params: BTreeMap<String, usize> = params.iter().map(|(k, v)| (k.to_string(), *v)).collect();
        let label = params
            .iter()
            .map(|(k, v)| format!("{k}={v}"))
            .collect::<Vec<_>>()
            .join(",");
        let equation = Equation::new(format!("{name}({label})"), lhs, rhs)?;
        Ok(IdentitySchema {
            name: name.to_string(),
            params,
            p,
            equation,
        })
    }
}

fn comp(g: Morphism, f: Morphism) -> Result<Morphism, TermError> {
    Morphism::compose(g, f)
}

/// Tupling, with `⟨f⟩ = f`.
fn tup(source: usize, mut items: Vec<Morphism>) -> Result<Morphism, TermError> {
    if items.len() == 1 && items[0].arity()?.source == source {
        return Ok(items.pop().expect("one item"));
    }
    Morphism::tuple(source, items)
}

fn dag(body: Morphism, vars: usize) -> Result<Morphism, TermError> {
    Morphism::dagger(body, vars)
}

// ---------------------------------------------------------------------------
// Automaton identities

/// `ρ_i × 1_C` for state `i` (0-based): the base morphism `A^n × C -> A^m × C`.
fn rho_times_one(q: &Automaton, state: usize, p: usize) -> Result<Morphism, TermError> {
    let n = q.n_states();
    let mut rho: Vec<usize> = (0..q.n_letters()).map(|a| q.step(state, a) + 1).collect();
    rho.extend(n + 1..=n + p);
    base_from_function(&rho, n + p)
}

/// The system `f^{Q,A}: A^n × C -> A^n`.
fn automaton_system(q: &Automaton, f: &Morphism, p: usize) -> Result<Morphism, TermError> {
    let n = q.n_states();
    let items = (0..n)
        .map(|i| comp(f.clone(), rho_times_one(q, i, p)?))
        .collect::<Result<Vec<_>, _>>()?;
    tup(n + p, items)
}

/// `(f ∘ (Δ_{A^m} × 1_C))†: C -> A`.
fn diagonal_dagger(f: &Morphism, m: usize, p: usize) -> Result<Morphism, TermError> {
    dag(comp(f.clone(), product(&diagonal(1, m), &identity(p))?)?, 1)
}

fn automaton_symbol(q: &Automaton, p: usize) -> Morphism {
    Morphism::Sym(Symbol::new("f", q.n_letters() + p))
}

/// `Γ(Q)`: `(f^{Q,A})† = Δ_{A^n} ∘ (f ∘ (Δ_{A^m} × 1_C))†`, both sides `p -> n`.
pub fn gamma(q: &Automaton, p: usize) -> Result<Equation, IdentityError> {
    let f = automaton_symbol(q, p);
    let n = q.n_states();
    let lhs = dag(automaton_system(q, &f, p)?, n)?;
    let rhs = comp(diagonal(1, n), diagonal_dagger(&f, q.n_letters(), p)?)?;
    Ok(Equation::new(
        format!("gamma(n={n},m={},p={p})", q.n_letters()),
        lhs,
        rhs,
    )?)
}

/// `Γ(Q, q)`: the component of the initial state, both sides `p -> 1`.
pub fn gamma_init(iq: &InitializedAutomaton, p: usize) -> Result<Equation, IdentityError> {
    let q = &iq.automaton;
    let f = automaton_symbol(q, p);
    let n = q.n_states();
    let lhs = comp(Morphism::proj(iq.initial + 1, n)?, dag(automaton_system(q, &f, p)?, n)?)?;
    let rhs = diagonal_dagger(&f, q.n_letters(), p)?;
    Ok(Equation::new(
        format!("gamma_init(n={n},m={},q={},p={p})", q.n_letters(), iq.initial + 1),
        lhs,
        rhs,
    )?)
}

/// The identity of the automaton `(M, M, ·)`.
pub fn gamma_monoid(m: &TransformationMonoid, p: usize) -> Result<Equation, IdentityError> {
    gamma(&monoid_automaton(m), p)
}

/// The identity of the automaton `(G, G, ·)`.
pub fn gamma_group(g: &FiniteGroup, p: usize) -> Result<Equation, IdentityError> {
    gamma(&cayley_automaton(g.order(), |x, y| g.mul(x, y)), p)
}

/// `Γ` of the transition monoid of `q`, computed within `limits`.
pub fn gamma_of_monoid_of(q: &Automaton, p: usize, limits: &Limits) -> Result<Equation, IdentityError> {
    let m = crate::algebra::transition_monoid(q, limits)?;
    gamma_monoid(&m, p)
}

fn variable_names(n: usize) -> Vec<String> {
    match n {
        1 => vec!["x".into()],
        2 => vec!["x".into(), "y".into()],
        _ => (1..=n).map(|i| format!("x_{i}")).collect(),
    }
}

fn parameter_names(p: usize) -> Vec<String> {
    match p {
        1 => vec!["z".into()],
        _ => (1..=p).map(|j| format!("z_{j}")).collect(),
    }
}

/// The fixed-point system of `Γ(Q)` as lines `x_i = f(…)`, followed by the
/// single equation of its right side.
pub fn system_view(q: &Automaton, p: usize) -> (Vec<String>, String) {
    let vars = variable_names(q.n_states());
    let params = parameter_names(p);
    let args = |names: Vec<&str>| {
        names
            .into_iter()
            .chain(params.iter().map(String::as_str))
            .collect::<Vec<_>>()
            .join(",")
    };
    let lines = (0..q.n_states())
        .map(|i| {
            let row = (0..q.n_letters()).map(|a| vars[q.step(i, a)].as_str()).collect();
            format!("{} = f({})", vars[i], args(row))
        })
        .collect();
    let single = format!("x = f({})", args(vec!["x"; q.n_letters()]));
    (lines, single)
}

// ---------------------------------------------------------------------------
// Conway identities

/// `f: A^{in} -> A^{out}` as a schematic term.
fn sch(name: &str, input: usize, output: usize) -> Morphism {
    generic(name, input, output)
}

/// `(f ∘ (1_A × g))† = f† ∘ g` for `f: A × B -> A`, `g: C -> B`.
pub fn parameter(a: usize, b: usize, c: usize) -> Result<IdentitySchema, TermError> {
    let f = sch("f", a + b, a);
    let g = sch("g", c, b);
    let lhs = dag(comp(f.clone(), product(&identity(a), &g)?)?, a)?;
    let rhs = comp(dag(f, a)?, g)?;
    IdentitySchema::new("parameter", &[("a", a), ("b", b), ("c", c)], c, lhs, rhs)
}

/// `f†† = (f ∘ (Δ_{A^2} × 1_C))†` for `f: A × A × C -> A`.
pub fn double_dagger(a: usize, c: usize) -> Result<IdentitySchema, TermError> {
    let f = sch("f", 2 * a + c, a);
    let lhs = dag(dag(f.clone(), a)?, a)?;
    let rhs = dag(comp(f, product(&diagonal(a, 2), &identity(c))?)?, a)?;
    IdentitySchema::new("double-dagger", &[("a", a), ("c", c)], c, lhs, rhs)
}

/// `(f ∘ ⟨g, π_2⟩)† = f ∘ ⟨(g ∘ ⟨f, π_2⟩)†, 1_C⟩` for `f: B × C -> A`,
/// `g: A × C -> B`.
pub fn composition(a: usize, b: usize, c: usize) -> Result<IdentitySchema, TermError> {
    let f = sch("f", b + c, a);
    let g = sch("g", a + c, b);
    let lhs = dag(
        comp(f.clone(), tup(a + c, vec![g.clone(), block(a + 1, c, a + c)?])?)?,
        a,
    )?;
    let inner = dag(comp(g, tup(b + c, vec![f.clone(), block(b + 1, c, b + c)?])?)?, b)?;
    let rhs = comp(f, tup(c, vec![inner, identity(c)])?)?;
    IdentitySchema::new("composition", &[("a", a), ("b", b), ("c", c)], c, lhs, rhs)
}

/// `f† = f ∘ ⟨f†, 1_C⟩` for `f: A × C -> A`.
pub fn fixed_point(a: usize, c: usize) -> Result<IdentitySchema, TermError> {
    let f = sch("f", a + c, a);
    let lhs = dag(f.clone(), a)?;
    let rhs = comp(f, tup(c, vec![lhs.clone(), identity(c)])?)?;
    IdentitySchema::new("fixed-point", &[("a", a), ("c", c)], c, lhs, rhs)
}

/// `(f ∘ π_2)† = f` for `f: C -> A`.
pub fn left_zero(a: usize, c: usize) -> Result<IdentitySchema, TermError> {
    let f = sch("f", c, a);
    let lhs = dag(comp(f.clone(), block(a + 1, c, a + c)?)?, a)?;
    IdentitySchema::new("left-zero", &[("a", a), ("c", c)], c, lhs, f)
}

/// `(f ∘ π_{A×B})† = f† ∘ π_1^{B×C}` for `f: A × B -> A`, with the
/// projection of `A × B × C` onto `A × B`.
pub fn right_zero(a: usize, b: usize, c: usize) -> Result<IdentitySchema, TermError> {
    let f = sch("f", a + b, a);
    let lhs = dag(comp(f.clone(), block(1, a + b, a + b + c)?)?, a)?;
    let rhs = comp(dag(f, a)?, block(1, b, b + c)?)?;
    IdentitySchema::new("right-zero", &[("a", a), ("b", b), ("c", c)], b + c, lhs, rhs)
}

/// Bekić: `⟨f, g⟩† = ⟨f† ∘ ⟨h†, 1_C⟩, h†⟩` with `h = g ∘ ⟨f†, 1_{B×C}⟩`.
pub fn pairing(a: usize, b: usize, c: usize) -> Result<IdentitySchema, TermError> {
    let n = a + b + c;
    let f = sch("f", n, a);
    let g = sch("g", n, b);
    let lhs = dag(tup(n, vec![f.clone(), g.clone()])?, a + b)?;
    let fd = dag(f, a)?;
    let h = comp(g, tup(b + c, vec![fd.clone(), identity(b + c)])?)?;
    let hd = dag(h, b)?;
    let rhs = tup(c, vec![comp(fd, tup(c, vec![hd.clone(), identity(c)])?)?, hd])?;
    IdentitySchema::new("pairing", &[("a", a), ("b", b), ("c", c)], c, lhs, rhs)
}

/// Dual Bekić: `⟨f, g⟩† = ⟨k†, ḡ† ∘ ⟨k†, 1_C⟩⟩` with
/// `ḡ = g ∘ (⟨π_2, π_1⟩ × 1_C)` and `k = f ∘ ⟨π_1, ḡ†, π_2⟩`.
pub fn pairing_dual(a: usize, b: usize, c: usize) -> Result<IdentitySchema, TermError> {
    let n = a + b + c;
    let f = sch("f", n, a);
    let g = sch("g", n, b);
    let lhs = dag(tup(n, vec![f.clone(), g.clone()])?, a + b)?;
    let swap: Vec<usize> = (b + 1..=b + a).chain(1..=b).chain(a + b + 1..=n).collect();
    let gbar = comp(g, base_from_function(&swap, n)?)?;
    let gbar_d = dag(gbar, b)?;
    let k = comp(
        f,
        tup(
            a + c,
            vec![block(1, a, a + c)?, gbar_d.clone(), block(a + 1, c, a + c)?],
        )?,
    )?;
    let kd = dag(k, a)?;
    let rhs = tup(c, vec![kd.clone(), comp(gbar_d, tup(c, vec![kd, identity(c)])?)?])?;
    IdentitySchema::new("pairing-dual", &[("a", a), ("b", b), ("c", c)], c, lhs, rhs)
}

/// `f ∘ (1_A × !_B × 1_C)`: drops the `B` block of `A × B × C`.
fn drop_middle(f: Morphism, a: usize, b: usize, c: usize) -> Result<Morphism, TermError> {
    let rho: Vec<usize> = (1..=a).chain(a + b + 1..=a + b + c).collect();
    comp(f, base_from_function(&rho, a + b + c)?)
}

/// `⟨f ∘ (1_A × !_B × 1_C), g ∘ (!_A × 1_{B×C})⟩† = ⟨f†, g†⟩` for
/// `f: A × C -> A`, `g: B × C -> B`.
pub fn separated_pairing(a: usize, b: usize, c: usize) -> Result<IdentitySchema, TermError> {
    let n = a + b + c;
    let f = sch("f", a + c, a);
    let g = sch("g", b + c, b);
    let lhs = dag(
        tup(
            n,
            vec![
                drop_middle(f.clone(), a, b, c)?,
                comp(g.clone(), block(a + 1, b + c, n)?)?,
            ],
        )?,
        a + b,
    )?;
    let rhs = tup(c, vec![dag(f, a)?, dag(g, b)?])?;
    IdentitySchema::new("separated-pairing", &[("a", a), ("b", b), ("c", c)], c, lhs, rhs)
}

/// `π_1 ∘ ⟨f ∘ (1_A × !_B × 1_C), g⟩† = f†` for `f: A × C -> A`,
/// `g: A × B × C -> B`.
pub fn c1(a: usize, b: usize, c: usize) -> Result<IdentitySchema, TermError> {
    let n = a + b + c;
    let f = sch("f", a + c, a);
    let g = sch("g", n, b);
    let sys = dag(tup(n, vec![drop_middle(f.clone(), a, b, c)?, g])?, a + b)?;
    let lhs = comp(block(1, a, a + b)?, sys)?;
    IdentitySchema::new("c1", &[("a", a), ("b", b), ("c", c)], c, lhs, dag(f, a)?)
}

/// Shared left side of the `c2` identities: `⟨f, g × !_{B×C}⟩†`.
fn c2_lhs(f: &Morphism, g: &Morphism, a: usize, b: usize, c: usize) -> Result<Morphism, TermError> {
    let n = a + b + c;
    dag(tup(n, vec![f.clone(), comp(g.clone(), block(1, a, n)?)?])?, a + b)
}

/// `⟨f, g × !⟩† = ⟨f ∘ (⟨1_A, g⟩ × !_B × 1_C), g × !⟩†` for
/// `f: A × B × C -> A`, `g: A -> B`.
pub fn c2(a: usize, b: usize, c: usize) -> Result<IdentitySchema, TermError> {
    let n = a + b + c;
    let f = sch("f", n, a);
    let g = sch("g", a, b);
    let lhs = c2_lhs(&f, &g, a, b, c)?;
    let first = block(1, a, n)?;
    let subst = tup(
        n,
        vec![first.clone(), comp(g.clone(), first.clone())?, block(a + b + 1, c, n)?],
    )?;
    let rhs = dag(tup(n, vec![comp(f, subst)?, comp(g, first)?])?, a + b)?;
    IdentitySchema::new("c2", &[("a", a), ("b", b), ("c", c)], c, lhs, rhs)
}

/// `⟨f, g × !⟩† = ⟨F†, g ∘ F†⟩` with `F = f ∘ (⟨1_A, g⟩ × 1_C)`.
pub fn c22(a: usize, b: usize, c: usize) -> Result<IdentitySchema, TermError> {
    let n = a + b + c;
    let f = sch("f", n, a);
    let g = sch("g", a, b);
    let lhs = c2_lhs(&f, &g, a, b, c)?;
    let first = block(1, a, a + c)?;
    let subst = tup(
        a + c,
        vec![first.clone(), comp(g.clone(), first)?, block(a + 1, c, a + c)?],
    )?;
    let fd = dag(comp(f, subst)?, a)?;
    let rhs = tup(c, vec![fd.clone(), comp(g, fd)?])?;
    IdentitySchema::new("c22", &[("a", a), ("b", b), ("c", c)], c, lhs, rhs)
}

/// `(π ∘ f ∘ (π⁻¹ × 1_C))† = π ∘ f†` for the base permutation `π` of the
/// blocks `A_1 × … × A_k` (sizes given by `blocks`) sending block `i` to
/// position `sigma[i]` (1-based), and `f: A_1 × … × A_k × C -> A_1 × … × A_k`.
pub fn permutation(blocks: &[usize], sigma: &[usize], c: usize) -> Result<IdentitySchema, IdentityError> {
    let k = blocks.len();
    let mut seen = vec![false; k];
    for &s in sigma {
        if s == 0 || s > k || seen[s - 1] {
            return Err(IdentityError::NotPermutation(k));
        }
        seen[s - 1] = true;
    }
    if sigma.len() != k {
        return Err(IdentityError::NotPermutation(k));
    }
    let n: usize = blocks.iter().sum();
    let offsets = prefix_sums(blocks);
    // π: A_1 × … × A_k -> A_{τ(1)} × … × A_{τ(k)} where τ = σ⁻¹ lists which
    // block lands at each position.
    let mut tau = vec![0; k];
    for (i, &s) in sigma.iter().enumerate() {
        tau[s - 1] = i;
    }
    let mut pi_rho = Vec::with_capacity(n);
    for &i in &tau {
        pi_rho.extend((1..=blocks[i]).map(|j| offsets[i] + j));
    }
    let pi = base_from_function(&pi_rho, n)?;
    // π⁻¹ reads the permuted layout back into the original one.
    let permuted: Vec<usize> = tau.iter().map(|&i| blocks[i]).collect();
    let permuted_offsets = prefix_sums(&permuted);
    let mut inv_rho = Vec::with_capacity(n);
    for i in 0..k {
        inv_rho.extend((1..=blocks[i]).map(|j| permuted_offsets[sigma[i] - 1] + j));
    }
    let pi_inv = base_from_function(&inv_rho, n)?;
    let f = sch("f", n + c, n);
    let lhs = dag(comp(pi.clone(), comp(f.clone(), product(&pi_inv, &identity(c))?)?)?, n)?;
    let rhs = comp(pi, dag(f, n)?)?;
    let mut params: Vec<(&str, usize)> = vec![("c", c)];
    let names = ["s1", "s2", "s3", "s4", "s5", "s6"];
    let sizes = ["a1", "a2", "a3", "a4", "a5", "a6"];
    for i in 0..k.min(6) {
        params.push((sizes[i], blocks[i]));
        params.push((names[i], sigma[i]));
    }
    Ok(IdentitySchema::new("permutation", &params, c, lhs, rhs)?)
}

fn prefix_sums(sizes: &[usize]) -> Vec<usize> {
    let mut out = Vec::with_capacity(sizes.len());
    let mut acc = 0;
    for &s in sizes {
        out.push(acc);
        acc += s;
    }
    out
}

/// `f^{†…†} = (f ∘ (Δ_{A^n} × 1_C))†` with `n` daggers on the left, for
/// `f: A^n × C -> A`.
pub fn n_dagger(n: usize, a: usize, c: usize) -> Result<IdentitySchema, IdentityError> {
    if n == 0 {
        return Err(IdentityError::OutOfRange {
            name: "n-dagger",
            constraint: "n >= 1",
            value: n,
        });
    }
    let f = sch("f", n * a + c, a);
    let mut lhs = f.clone();
    for _ in 0..n {
        lhs = dag(lhs, a)?;
    }
    let rhs = dag(comp(f, product(&diagonal(a, n), &identity(c))?)?, a)?;
    Ok(IdentitySchema::new(
        "n-dagger",
        &[("n", n), ("a", a), ("c", c)],
        c,
        lhs,
        rhs,
    )?)
}

/// One instance of each Conway identity at the arities `a`, `b`, `c`, with
/// the permutation identity at the swap of `A × B` and the `n`-dagger
/// identity for `n = 1, 2, 3`.
pub fn conway_library(a: usize, b: usize, c: usize) -> Result<Vec<IdentitySchema>, IdentityError> {
    let mut out = vec![
        parameter(a, b, c)?,
        double_dagger(a, c)?,
        composition(a, b, c)?,
        fixed_point(a, c)?,
        left_zero(a, c)?,
        right_zero(a, b, c)?,
        pairing(a, b, c)?,
        pairing_dual(a, b, c)?,
        separated_pairing(a, b, c)?,
        c1(a, b, c)?,
        c2(a, b, c)?,
        c22(a, b, c)?,
        permutation(&[a, b], &[2, 1], c)?,
    ];
    for n in 1..=3 {
        out.push(n_dagger(n, a, c)?);
    }
    Ok(out)
}

// ---------------------------------------------------------------------------
// Identities of particular shape

/// `(f^n)† = f†` for `f: A × C -> A`, `|C| = p`.
pub fn power_identity(n: usize, p: usize) -> Result<Equation, IdentityError> {
    if n == 0 {
        return Err(IdentityError::OutOfRange {
            name: "power identity",
            constraint: "n >= 1",
            value: n,
        });
    }
    let f = Morphism::Sym(Symbol::new("f", 1 + p));
    let lhs = dag(power(&f, n)?, 1)?;
    let rhs = dag(f, 1)?;
    Ok(Equation::new(format!("power(n={n},p={p})"), lhs, rhs)?)
}

/// The reduced form of `Γ(Q_n, q_1)` for the automata with monoid `S_n`:
/// `(f ∘ (Δ × 1) ∘ ⟨f ∘ ⟨π_1, (f†)^{n-2}, π_2⟩, π_2⟩)† = (f ∘ (Δ × 1))†`
/// for `f: A^2 × C -> A`.
pub fn eq14(n: usize, p: usize) -> Result<Equation, IdentityError> {
    if n < 3 {
        return Err(IdentityError::OutOfRange {
            name: "reduced symmetric identity",
            constraint: "n >= 3",
            value: n,
        });
    }
    let f = Morphism::Sym(Symbol::new("f", 2 + p));
    let diag = product(&diagonal(1, 2), &identity(p))?;
    let fd_pow = power(&dag(f.clone(), 1)?, n - 2)?;
    let params = block(2, p, 1 + p)?;
    let inner = comp(
        f.clone(),
        tup(1 + p, vec![Morphism::proj(1, 1 + p)?, fd_pow, params.clone()])?,
    )?;
    let body = comp(comp(f.clone(), diag.clone())?, tup(1 + p, vec![inner, params])?)?;
    let lhs = dag(body, 1)?;
    let rhs = dag(comp(f, diag)?, 1)?;
    Ok(Equation::new(format!("symmetric-reduced(n={n},p={p})"), lhs, rhs)?)
}

/// `g† = ⟨f_1†, …, f_n†⟩†` where `f_i: A^{1+n} × C -> A` and
/// `g = ⟨f_i ∘ (⟨π_i, 1_{A^n}⟩ × 1_C)⟩_i`.
pub fn adding_id_instance(n: usize, p: usize) -> Result<Equation, IdentityError> {
    if n == 0 {
        return Err(IdentityError::OutOfRange {
            name: "adding-id",
            constraint: "n >= 1",
            value: n,
        });
    }
    let fs: Vec<Morphism> = (1..=n)
        .map(|i| Morphism::Sym(Symbol::new(format!("f{i}"), 1 + n + p)))
        .collect();
    let items = fs
        .iter()
        .enumerate()
        .map(|(i, f)| {
            let rho: Vec<usize> = std::iter::once(i + 1).chain(1..=n + p).collect();
            comp(f.clone(), base_from_function(&rho, n + p)?)
        })
        .collect::<Result<Vec<_>, _>>()?;
    let lhs = dag(tup(n + p, items)?, n)?;
    let daggers = fs.into_iter().map(|f| dag(f, 1)).collect::<Result<Vec<_>, _>>()?;
    let rhs = dag(tup(n + p, daggers)?, n)?;
    Ok(Equation::new(format!("adding-id(n={n},p={p})"), lhs, rhs)?)
}
