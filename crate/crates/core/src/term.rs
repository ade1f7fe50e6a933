//! Morphism terms of the free cartesian category with a dagger operation,
//! over a single generating sort `A`.
//!
//! Objects are powers `A^n` written as flat arities, so products are
//! associative on the nose and `A^0` is the terminal object. Every term has a
//! source and a target arity; [`Morphism::arity`] computes both and reports
//! the first ill-typed subterm.
//!
//! The textual form is
//!
//! ```text
//! pi(i,n) | tup(t1,...,tk) | bang(n) | comp(g,f) | sym(name) | dagger(t,m)
//! ```
//!
//! where `bang(n)` is the empty tuple out of `A^n`. The parser also accepts a
//! bare identifier for `sym(name)` and `dagger(t)` with the variable count
//! inferred from the target of `t`.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Source and target arities of a well-typed term.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Arity {
    pub source: usize,
    pub target: usize,
}

impl Arity {
    pub fn new(source: usize, target: usize) -> Self {
        Arity { source, target }
    }
}

impl fmt::Display for Arity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} -> {}", self.source, self.target)
    }
}

/// A schematic function symbol `name: A^in_arity -> A`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Symbol {
    pub name: String,
    #[serde(rename = "arity")]
    pub in_arity: usize,
}

impl Symbol {
    pub fn new(name: impl Into<String>, in_arity: usize) -> Self {
        Symbol {
            name: name.into(),
            in_arity,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TermError {
    #[error("index {index} exceeds arity {arity} at {path}")]
    ProjOutOfRange { index: usize, arity: usize, path: String },
    #[error("arity mismatch in {context} at {path}: expected {expected}, found {found}")]
    ArityMismatch {
        context: &'static str,
        expected: usize,
        found: usize,
        path: String,
    },
    #[error("dagger over {vars} variables needs a body of target {vars} and source >= {vars}, got {body} at {path}")]
    DaggerShape { vars: usize, body: Arity, path: String },
    #[error("base morphism value {value} is outside [1, {codomain}]")]
    BaseOutOfRange { value: usize, codomain: usize },
    #[error("power exponent must be positive")]
    ZeroPower,
    #[error("power needs a morphism 1+p -> 1, got {0}")]
    PowerShape(Arity),
    #[error("unknown symbol `{0}`")]
    UnknownSymbol(String),
    #[error("symbol `{name}` declared with arities {first} and {second}")]
    ConflictingSymbol { name: String, first: usize, second: usize },
    #[error("parse error at byte {pos}: {msg}")]
    Parse { pos: usize, msg: String },
}

/// A morphism term.
///
/// Projection indices are 1-based. `Comp(g, f)` is `g ∘ f`. A `Tuple` keeps
/// its source arity so that the empty tuple `!_{A^n}` is typed; its target is
/// the sum of the component targets.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Morphism {
    Proj { index: usize, arity: usize },
    Tuple { source: usize, items: Vec<Morphism> },
    Comp(Box<Morphism>, Box<Morphism>),
    Sym(Symbol),
    Dagger { body: Box<Morphism>, vars: usize },
}

fn path_string(path: &[usize]) -> String {
    if path.is_empty() {
        return "/".to_string();
    }
    path.iter().map(|i| format!("/{i}")).collect()
}

impl Morphism {
    /// Projection `π_index^{A^arity}`, checked.
    pub fn proj(index: usize, arity: usize) -> Result<Morphism, TermError> {
        let m = Morphism::Proj { index, arity };
        m.arity()?;
        Ok(m)
    }

    pub fn sym(symbol: Symbol) -> Morphism {
        Morphism::Sym(symbol)
    }

    /// `g ∘ f`.
    pub fn compose(g: Morphism, f: Morphism) -> Result<Morphism, TermError> {
        let ga = g.arity()?;
        let fa = f.arity()?;
        if fa.target != ga.source {
            return Err(TermError::ArityMismatch {
                context: "composition",
                expected: ga.source,
                found: fa.target,
                path: "/".to_string(),
            });
        }
        Ok(Morphism::Comp(Box::new(g), Box::new(f)))
    }

    /// Tupling `⟨f_1, …, f_k⟩` out of `A^source`.
    pub fn tuple(source: usize, items: Vec<Morphism>) -> Result<Morphism, TermError> {
        for item in &items {
            let a = item.arity()?;
            if a.source != source {
                return Err(TermError::ArityMismatch {
                    context: "tuple component source",
                    expected: source,
                    found: a.source,
                    path: "/".to_string(),
                });
            }
        }
        Ok(Morphism::Tuple { source, items })
    }

    /// The unique morphism `!: A^n -> T`.
    pub fn bang(source: usize) -> Morphism {
        Morphism::Tuple {
            source,
            items: Vec::new(),
        }
    }

    /// `body†` where `body: A^vars × A^p -> A^vars`.
    pub fn dagger(body: Morphism, vars: usize) -> Result<Morphism, TermError> {
        let m = Morphism::Dagger {
            body: Box::new(body),
            vars,
        };
        m.arity()?;
        Ok(m)
    }

    /// Dagger over all target variables of `body`.
    pub fn dagger_all(body: Morphism) -> Result<Morphism, TermError> {
        let vars = body.arity()?.target;
        Morphism::dagger(body, vars)
    }

    /// Source and target arities of the term.
    pub fn arity(&self) -> Result<Arity, TermError> {
        let mut path = Vec::new();
        self.arity_at(&mut path)
    }

    fn arity_at(&self, path: &mut Vec<usize>) -> Result<Arity, TermError> {
        match self {
            Morphism::Proj { index, arity } => {
                if *index == 0 || *index > *arity {
                    return Err(TermError::ProjOutOfRange {
                        index: *index,
                        arity: *arity,
                        path: path_string(path),
                    });
                }
                Ok(Arity::new(*arity, 1))
            }
            Morphism::Tuple { source, items } => {
                let mut target = 0;
                for (i, item) in items.iter().enumerate() {
                    path.push(i);
                    let a = item.arity_at(path)?;
                    if a.source != *source {
                        let p = path_string(path);
                        path.pop();
                        return Err(TermError::ArityMismatch {
                            context: "tuple component source",
                            expected: *source,
                            found: a.source,
                            path: p,
                        });
                    }
                    path.pop();
                    target += a.target;
                }
                Ok(Arity::new(*source, target))
            }
            Morphism::Comp(g, f) => {
                path.push(0);
                let ga = g.arity_at(path)?;
                path.pop();
                path.push(1);
                let fa = f.arity_at(path)?;
                path.pop();
                if fa.target != ga.source {
                    return Err(TermError::ArityMismatch {
                        context: "composition",
                        expected: ga.source,
                        found: fa.target,
                        path: path_string(path),
                    });
                }
                Ok(Arity::new(fa.source, ga.target))
            }
            Morphism::Sym(s) => Ok(Arity::new(s.in_arity, 1)),
            Morphism::Dagger { body, vars } => {
                path.push(0);
                let b = body.arity_at(path)?;
                path.pop();
                if b.target != *vars || b.source < *vars {
                    return Err(TermError::DaggerShape {
                        vars: *vars,
                        body: b,
                        path: path_string(path),
                    });
                }
                Ok(Arity::new(b.source - vars, *vars))
            }
        }
    }

    /// All symbols occurring in the term.
    pub fn symbols(&self) -> BTreeSet<Symbol> {
        let mut out = BTreeSet::new();
        self.collect_symbols(&mut out);
        out
    }

    fn collect_symbols(&self, out: &mut BTreeSet<Symbol>) {
        match self {
            Morphism::Proj { .. } => {}
            Morphism::Tuple { items, .. } => items.iter().for_each(|t| t.collect_symbols(out)),
            Morphism::Comp(g, f) => {
                g.collect_symbols(out);
                f.collect_symbols(out);
            }
            Morphism::Sym(s) => {
                out.insert(s.clone());
            }
            Morphism::Dagger { body, .. } => body.collect_symbols(out),
        }
    }

    /// Number of nodes.
    pub fn size(&self) -> usize {
        match self {
            Morphism::Proj { .. } | Morphism::Sym(_) => 1,
            Morphism::Tuple { items, .. } => 1 + items.iter().map(Morphism::size).sum::<usize>(),
            Morphism::Comp(g, f) => 1 + g.size() + f.size(),
            Morphism::Dagger { body, .. } => 1 + body.size(),
        }
    }

    pub fn render(&self) -> String {
        let mut out = String::new();
        self.render_into(&mut out);
        out
    }

    fn render_into(&self, out: &mut String) {
        use std::fmt::Write;
        match self {
            Morphism::Proj { index, arity } => {
                let _ = write!(out, "pi({index},{arity})");
            }
            Morphism::Tuple { source, items } if items.is_empty() => {
                let _ = write!(out, "bang({source})");
            }
            Morphism::Tuple { items, .. } => {
                out.push_str("tup(");
                for (i, item) in items.iter().enumerate() {
                    if i > 0 {
                        out.push(',');
                    }
                    item.render_into(out);
                }
                out.push(')');
            }
            Morphism::Comp(g, f) => {
                out.push_str("comp(");
                g.render_into(out);
                out.push(',');
                f.render_into(out);
                out.push(')');
            }
            Morphism::Sym(s) => {
                out.push_str("sym(");
                out.push_str(&s.name);
                out.push(')');
            }
            Morphism::Dagger { body, vars } => {
                out.push_str("dagger(");
                body.render_into(out);
                let _ = write!(out, ",{vars})");
            }
        }
    }
}

impl fmt::Display for Morphism {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render())
    }
}

// ---------------------------------------------------------------------------
// Derived constructors

/// Base morphism `⟨π_{ρ(1)}, …, π_{ρ(m)}⟩: A^n -> A^m` for the function
/// `ρ: [m] -> [n]` given by its 1-based values. A single-valued `ρ` yields the
/// bare projection.
pub fn base_from_function(rho: &[usize], n: usize) -> Result<Morphism, TermError> {
    for &value in rho {
        if value == 0 || value > n {
            return Err(TermError::BaseOutOfRange { value, codomain: n });
        }
    }
    if rho.len() == 1 {
        return Ok(Morphism::Proj {
            index: rho[0],
            arity: n,
        });
    }
    Ok(Morphism::Tuple {
        source: n,
        items: rho.iter().map(|&index| Morphism::Proj { index, arity: n }).collect(),
    })
}

/// `1_{A^n}`.
pub fn identity(n: usize) -> Morphism {
    let rho: Vec<usize> = (1..=n).collect();
    base_from_function(&rho, n).expect("identity is in range")
}

/// Projection of `A^n` onto the block of `len` coordinates starting at the
/// 1-based position `start`.
pub fn block(start: usize, len: usize, n: usize) -> Result<Morphism, TermError> {
    let rho: Vec<usize> = (start..start + len).collect();
    base_from_function(&rho, n)
}

/// Diagonal `Δ: A^a -> (A^a)^copies`.
pub fn diagonal(a: usize, copies: usize) -> Morphism {
    let rho: Vec<usize> = (0..a * copies).map(|j| j % a.max(1) + 1).collect();
    base_from_function(&rho, a).expect("diagonal is in range")
}

/// `f × g = ⟨f ∘ π_1, g ∘ π_2⟩`.
pub fn product(f: &Morphism, g: &Morphism) -> Result<Morphism, TermError> {
    let fa = f.arity()?;
    let ga = g.arity()?;
    let n = fa.source + ga.source;
    let left = Morphism::compose(f.clone(), block(1, fa.source, n)?)?;
    let right = Morphism::compose(g.clone(), block(fa.source + 1, ga.source, n)?)?;
    Morphism::tuple(n, vec![left, right])
}

/// Product of several morphisms, left to right.
pub fn product_all(parts: &[Morphism]) -> Result<Morphism, TermError> {
    let arities = parts.iter().map(Morphism::arity).collect::<Result<Vec<_>, _>>()?;
    let n: usize = arities.iter().map(|a| a.source).sum();
    let mut items = Vec::with_capacity(parts.len());
    let mut start = 1;
    for (part, a) in parts.iter().zip(&arities) {
        items.push(Morphism::compose(part.clone(), block(start, a.source, n)?)?);
        start += a.source;
    }
    Morphism::tuple(n, items)
}

/// Powers `f^1 = f`, `f^k = f ∘ ⟨f^{k-1}, π_2^{A × C}⟩` for `f: A × C -> A`.
pub fn power(f: &Morphism, n: usize) -> Result<Morphism, TermError> {
    if n == 0 {
        return Err(TermError::ZeroPower);
    }
    let a = f.arity()?;
    if a.target != 1 || a.source == 0 {
        return Err(TermError::PowerShape(a));
    }
    let params = a.source - 1;
    let mut acc = f.clone();
    for _ in 1..n {
        let inner = Morphism::tuple(a.source, vec![acc, block(2, params, a.source)?])?;
        acc = Morphism::compose(f.clone(), inner)?;
    }
    Ok(acc)
}

/// A schematic morphism `A^in -> A^out`: a symbol when `out == 1`, otherwise
/// a tuple of the symbols `name1, …, name<out>`.
pub fn generic(name: &str, in_arity: usize, out_arity: usize) -> Morphism {
    if out_arity == 1 {
        return Morphism::Sym(Symbol::new(name, in_arity));
    }
    Morphism::Tuple {
        source: in_arity,
        items: (1..=out_arity)
            .map(|j| Morphism::Sym(Symbol::new(format!("{name}{j}"), in_arity)))
            .collect(),
    }
}

// ---------------------------------------------------------------------------
// Signatures and equations

/// Symbol table used by the parser.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Signature {
    arities: BTreeMap<String, usize>,
}

impl Signature {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn from_symbols<'a>(symbols: impl IntoIterator<Item = &'a Symbol>) -> Result<Self, TermError> {
        let mut sig = Signature::new();
        for s in symbols {
            sig.insert(s.clone())?;
        }
        Ok(sig)
    }

    pub fn insert(&mut self, symbol: Symbol) -> Result<(), TermError> {
        match self.arities.get(&symbol.name) {
            Some(&a) if a != symbol.in_arity => Err(TermError::ConflictingSymbol {
                name: symbol.name,
                first: a,
                second: symbol.in_arity,
            }),
            _ => {
                self.arities.insert(symbol.name, symbol.in_arity);
                Ok(())
            }
        }
    }

    pub fn get(&self, name: &str) -> Option<Symbol> {
        self.arities.get(name).map(|&a| Symbol::new(name, a))
    }

    pub fn symbols(&self) -> Vec<Symbol> {
        self.arities.iter().map(|(n, &a)| Symbol::new(n.clone(), a)).collect()
    }
}

/// An identity `lhs = rhs` between two terms of the same type.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Equation {
    pub name: String,
    pub lhs: Morphism,
    pub rhs: Morphism,
    pub symbols: Vec<Symbol>,
}

impl Equation {
    pub fn new(name: impl Into<String>, lhs: Morphism, rhs: Morphism) -> Result<Self, TermError> {
        let la = lhs.arity()?;
        let ra = rhs.arity()?;
        if la.source != ra.source {
            return Err(TermError::ArityMismatch {
                context: "equation source",
                expected: la.source,
                found: ra.source,
                path: "rhs".to_string(),
            });
        }
        if la.target != ra.target {
            return Err(TermError::ArityMismatch {
                context: "equation target",
                expected: la.target,
                found: ra.target,
                path: "rhs".to_string(),
            });
        }
        let mut all = lhs.symbols();
        all.extend(rhs.symbols());
        let sig = Signature::from_symbols(&all)?;
        Ok(Equation {
            name: name.into(),
            lhs,
            rhs,
            symbols: sig.symbols(),
        })
    }

    pub fn arity(&self) -> Arity {
        self.lhs.arity().expect("equation sides are validated")
    }

    pub fn to_file(&self) -> EquationFile {
        EquationFile {
            name: self.name.clone(),
            symbols: self.symbols.clone(),
            lhs: self.lhs.render(),
            rhs: self.rhs.render(),
        }
    }
}

/// On-disk form of an equation: JSON with both sides in the term grammar.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EquationFile {
    pub name: String,
    pub symbols: Vec<Symbol>,
    pub lhs: String,
    pub rhs: String,
}

impl EquationFile {
    pub fn to_equation(&self) -> Result<Equation, TermError> {
        let sig = Signature::from_symbols(&self.symbols)?;
        let lhs = parse(&self.lhs, &sig)?;
        let rhs = parse(&self.rhs, &sig)?;
        Equation::new(self.name.clone(), lhs, rhs)
    }
}

// ---------------------------------------------------------------------------
// Parser

/// Parses a term, resolving symbol names against `sig`.
pub fn parse(text: &str, sig: &Signature) -> Result<Morphism, TermError> {
    let mut p = Parser {
        src: text.as_bytes(),
        pos: 0,
        sig,
    };
    let (m, _) = p.term()?;
    p.skip_ws();
    if p.pos != p.src.len() {
        return Err(p.error("trailing input"));
    }
    Ok(m)
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
    sig: &'a Signature,
}

impl Parser<'_> {
    fn error(&self, msg: impl Into<String>) -> TermError {
        TermError::Parse {
            pos: self.pos,
            msg: msg.into(),
        }
    }

    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn expect(&mut self, c: u8) -> Result<(), TermError> {
        if self.peek() == Some(c) {
            self.pos += 1;
            Ok(())
        } else {
            Err(self.error(format!("expected `{}`", c as char)))
        }
    }

    fn ident(&mut self) -> Result<String, TermError> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.src.len() {
            let c = self.src[self.pos];
            let ok = c.is_ascii_alphanumeric() || c == b'_' || c == b'\'';
            if !ok || (self.pos == start && c.is_ascii_digit()) {
                break;
            }
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.error("expected identifier"));
        }
        Ok(String::from_utf8_lossy(&self.src[start..self.pos]).into_owned())
    }

    fn number(&mut self) -> Result<usize, TermError> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.error("expected number"));
        }
        std::str::from_utf8(&self.src[start..self.pos])
            .expect("digits")
            .parse()
            .map_err(|_| self.error("number too large"))
    }

    fn located(&self, at: usize, e: TermError) -> TermError {
        match e {
            TermError::Parse { .. } => e,
            other => TermError::Parse {
                pos: at,
                msg: other.to_string(),
            },
        }
    }

    fn term(&mut self) -> Result<(Morphism, Arity), TermError> {
        self.skip_ws();
        let at = self.pos;
        let head = self.ident()?;
        if self.peek() != Some(b'(') {
            let s = self
                .sig
                .get(&head)
                .ok_or_else(|| self.located(at, TermError::UnknownSymbol(head.clone())))?;
            let a = Arity::new(s.in_arity, 1);
            return Ok((Morphism::Sym(s), a));
        }
        self.expect(b'(')?;
        let m = match head.as_str() {
            "pi" => {
                let index = self.number()?;
                self.expect(b',')?;
                let arity = self.number()?;
                Morphism::Proj { index, arity }
            }
            "bang" => Morphism::bang(self.number()?),
            "tup" => {
                let (first, fa) = self.term()?;
                let mut items = vec![first];
                while self.peek() == Some(b',') {
                    self.pos += 1;
                    items.push(self.term()?.0);
                }
                Morphism::Tuple {
                    source: fa.source,
                    items,
                }
            }
            "comp" => {
                let (g, _) = self.term()?;
                self.expect(b',')?;
                let (f, _) = self.term()?;
                Morphism::Comp(Box::new(g), Box::new(f))
            }
            "sym" => {
                let name = self.ident()?;
                let s = self
                    .sig
                    .get(&name)
                    .ok_or_else(|| self.located(at, TermError::UnknownSymbol(name.clone())))?;
                Morphism::Sym(s)
            }
            "dagger" => {
                let (body, ba) = self.term()?;
                let vars = if self.peek() == Some(b',') {
                    self.pos += 1;
                    self.number()?
                } else {
                    ba.target
                };
                Morphism::Dagger {
                    body: Box::new(body),
                    vars,
                }
            }
            other => {
                return Err(self.located(
                    at,
                    TermError::Parse {
                        pos: at,
                        msg: format!("unknown constructor `{other}`"),
                    },
                ))
            }
        };
        self.expect(b')')?;
        let a = m.arity().map_err(|e| self.located(at, e))?;
        Ok((m, a))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f2() -> Morphism {
        Morphism::Sym(Symbol::new("f", 2))
    }

    #[test]
    fn base_identity_and_diagonal() {
        assert_eq!(
            base_from_function(&[1], 1).unwrap(),
            Morphism::Proj { index: 1, arity: 1 }
        );
        let d = base_from_function(&[1, 1], 1).unwrap();
        assert_eq!(d.render(), "tup(pi(1,1),pi(1,1))");
        assert_eq!(d, diagonal(1, 2));
        let swap = base_from_function(&[2, 1], 2).unwrap();
        assert_eq!(swap.render(), "tup(pi(2,2),pi(1,2))");
        assert!(matches!(
            base_from_function(&[3], 2),
            Err(TermError::BaseOutOfRange { value: 3, codomain: 2 })
        ));
    }

    #[test]
    fn compose_checks_arities() {
        let rho = base_from_function(&[2, 3, 1], 3).unwrap();
        let c = Morphism::compose(Morphism::Proj { index: 2, arity: 3 }, rho).unwrap();
        assert_eq!(c.arity().unwrap(), Arity::new(3, 1));
        let g = Morphism::Sym(Symbol::new("g", 1));
        let three = Morphism::tuple(1, vec![g.clone(), g.clone(), g]).unwrap();
        let err = Morphism::compose(f2(), three).unwrap_err();
        assert!(matches!(
            err,
            TermError::ArityMismatch {
                expected: 2,
                found: 3,
                ..
            }
        ));
    }

    #[test]
    fn tuples() {
        let bang = Morphism::tuple(3, vec![]).unwrap();
        assert_eq!(bang.arity().unwrap(), Arity::new(3, 0));
        let one = Morphism::tuple(2, vec![f2()]).unwrap();
        assert_eq!(one.arity().unwrap(), Arity::new(2, 1));
        let p = Morphism::Proj { index: 1, arity: 1 };
        let d = Morphism::tuple(1, vec![p.clone(), p]).unwrap();
        assert_eq!(d.arity().unwrap(), Arity::new(1, 2));
        assert!(Morphism::tuple(1, vec![f2()]).is_err());
    }

    #[test]
    fn dagger_shapes() {
        assert_eq!(Morphism::dagger(f2(), 1).unwrap().arity().unwrap(), Arity::new(1, 1));
        let g = generic("g", 1, 2);
        assert!(matches!(Morphism::dagger(g, 2), Err(TermError::DaggerShape { .. })));
        let sys = generic("h", 5, 3);
        assert_eq!(Morphism::dagger(sys, 3).unwrap().arity().unwrap(), Arity::new(2, 3));
    }

    #[test]
    fn powers() {
        assert_eq!(power(&f2(), 1).unwrap(), f2());
        let p2 = power(&f2(), 2).unwrap();
        assert_eq!(p2.render(), "comp(sym(f),tup(sym(f),pi(2,2)))");
        assert!(matches!(power(&f2(), 0), Err(TermError::ZeroPower)));
    }

    #[test]
    fn validate_reports_path() {
        let bad = Morphism::Proj { index: 3, arity: 2 };
        assert_eq!(bad.arity().unwrap_err().to_string(), "index 3 exceeds arity 2 at /");
        let nested = Morphism::Comp(
            Box::new(f2()),
            Box::new(Morphism::Tuple {
                source: 2,
                items: vec![
                    Morphism::Proj { index: 1, arity: 2 },
                    Morphism::Proj { index: 5, arity: 2 },
                ],
            }),
        );
        assert_eq!(
            nested.arity().unwrap_err().to_string(),
            "index 5 exceeds arity 2 at /1/1"
        );
        let inner = Morphism::dagger(f2(), 1).unwrap();
        let body = Morphism::compose(inner, Morphism::Proj { index: 2, arity: 2 }).unwrap();
        assert!(Morphism::dagger(body, 1).is_ok());
    }

    #[test]
    fn parse_and_render() {
        let mut sig = Signature::new();
        sig.insert(Symbol::new("f", 2)).unwrap();
        assert_eq!(Morphism::Proj { index: 1, arity: 2 }.render(), "pi(1,2)");
        let m = parse("dagger(comp(f, tup(pi(1,2),pi(2,2))))", &sig).unwrap();
        assert!(matches!(m, Morphism::Dagger { vars: 1, .. }));
        assert_eq!(m.render(), "dagger(comp(sym(f),tup(pi(1,2),pi(2,2))),1)");
        assert_eq!(parse(&m.render(), &sig).unwrap(), m);
        assert_eq!(parse(" bang( 3 ) ", &sig).unwrap(), Morphism::bang(3));
    }

    #[test]
    fn parse_errors() {
        let sig = Signature::new();
        assert!(matches!(parse("sym(g)", &sig), Err(TermError::Parse { pos: 0, .. })));
        assert!(matches!(parse("pi(1,", &sig), Err(TermError::Parse { pos: 5, .. })));
        assert!(matches!(parse("pi(3,2)", &sig), Err(TermError::Parse { .. })));
        assert!(matches!(parse("pi(1,1) x", &sig), Err(TermError::Parse { pos: 8, .. })));
        assert!(matches!(parse("frob(1)", &sig), Err(TermError::Parse { .. })));
    }

    #[test]
    fn equation_requires_matching_types() {
        let lhs = Morphism::dagger(f2(), 1).unwrap();
        assert!(Equation::new("ok", lhs.clone(), lhs.clone()).is_ok());
        assert!(Equation::new("bad", lhs, f2()).is_err());
        let clash = Equation::new(
            "clash",
            Morphism::Sym(Symbol::new("f", 1)),
            Morphism::compose(f2(), diagonal(1, 2)).unwrap(),
        );
        assert!(matches!(clash, Err(TermError::ConflictingSymbol { .. })));
    }

    #[test]
    fn equation_file_round_trip() {
        let lhs = Morphism::dagger(f2(), 1).unwrap();
        let eq = Equation::new("e", lhs.clone(), lhs).unwrap();
        let json = serde_json::to_string(&eq.to_file()).unwrap();
        let back: EquationFile = serde_json::from_str(&json).unwrap();
        assert_eq!(back.to_equation().unwrap(), eq);
    }
}
