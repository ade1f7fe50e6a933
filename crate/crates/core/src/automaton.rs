//! Deterministic finite automata as right actions of an alphabet on a state
//! set, together with the automaton families used throughout the crate.
//!
//! States are stored 0-based; the JSON file format and every `Display`
//! implementation use 1-based state numbers.

use std::collections::{HashSet, VecDeque};
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::algebra::{self, AlgebraError, Limits, TransformationMonoid};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AutomatonError {
    #[error("automaton needs at least one state")]
    NoStates,
    #[error("automaton needs at least one letter")]
    NoLetters,
    #[error("duplicate letter `{0}`")]
    DuplicateLetter(String),
    #[error("transition table has {found} rows, expected {expected}")]
    RowCount { expected: usize, found: usize },
    #[error("row for state {state} has {found} entries, expected {expected}")]
    RowLength {
        state: usize,
        expected: usize,
        found: usize,
    },
    #[error("transition target {target} from state {state} is outside [1, {states}]")]
    TargetOutOfRange { state: usize, target: usize, states: usize },
    #[error("initial state {initial} is outside [1, {states}]")]
    InitialOutOfRange { initial: usize, states: usize },
    #[error("unknown letter `{0}`")]
    UnknownLetter(String),
    #[error("state counts differ: {0} vs {1}")]
    StateCountMismatch(usize, usize),
    #[error("{family} needs n >= {min}, got {n}")]
    FamilyParameter { family: &'static str, min: usize, n: usize },
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error("malformed automaton file: {0}")]
    Json(String),
}

/// A total map on `{0, …, n-1}`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Transformation(Vec<usize>);

impl Transformation {
    pub fn identity(n: usize) -> Self {
        Transformation((0..n).collect())
    }

    pub fn constant(n: usize, value: usize) -> Self {
        Transformation(vec![value; n])
    }

    /// Builds from 0-based images; panics when an image is out of range.
    pub fn from_images(images: Vec<usize>) -> Self {
        let n = images.len();
        assert!(images.iter().all(|&v| v < n), "image out of range");
        Transformation(images)
    }

    /// Builds from 1-based images such as `[2, 3, 1]`.
    pub fn from_one_based(images: &[usize]) -> Self {
        Self::from_images(images.iter().map(|&v| v - 1).collect())
    }

    pub fn degree(&self) -> usize {
        self.0.len()
    }

    pub fn images(&self) -> &[usize] {
        &self.0
    }

    pub fn one_based(&self) -> Vec<usize> {
        self.0.iter().map(|&v| v + 1).collect()
    }

    pub fn apply(&self, state: usize) -> usize {
        self.0[state]
    }

    /// `self` followed by `other`: the product `u^Q · v^Q = (uv)^Q`.
    pub fn then(&self, other: &Transformation) -> Transformation {
        Transformation(self.0.iter().map(|&s| other.0[s]).collect())
    }

    pub fn is_permutation(&self) -> bool {
        let mut seen = vec![false; self.0.len()];
        self.0.iter().all(|&v| !std::mem::replace(&mut seen[v], true))
    }
}

impl fmt::Display for Transformation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("[")?;
        for (i, v) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{}", v + 1)?;
        }
        f.write_str("]")
    }
}

/// A deterministic finite automaton `(Q, Z, ·)`.
///
/// `delta[state][letter]` is the state entered from `state` on `letter`.
/// Letter order matters: identity constructors enumerate letters in order.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Automaton {
    letters: Vec<String>,
    delta: Vec<Vec<usize>>,
}

impl Automaton {
    /// Builds an automaton from a 0-based transition table.
    pub fn new(letters: Vec<String>, delta: Vec<Vec<usize>>) -> Result<Self, AutomatonError> {
        if delta.is_empty() {
            return Err(AutomatonError::NoStates);
        }
        if letters.is_empty() {
            return Err(AutomatonError::NoLetters);
        }
        let mut seen = HashSet::new();
        for l in &letters {
            if !seen.insert(l.as_str()) {
                return Err(AutomatonError::DuplicateLetter(l.clone()));
            }
        }
        let n = delta.len();
        for (state, row) in delta.iter().enumerate() {
            if row.len() != letters.len() {
                return Err(AutomatonError::RowLength {
                    state: state + 1,
                    expected: letters.len(),
                    found: row.len(),
                });
            }
            if let Some(&t) = row.iter().find(|&&t| t >= n) {
                return Err(AutomatonError::TargetOutOfRange {
                    state: state + 1,
                    target: t + 1,
                    states: n,
                });
            }
        }
        Ok(Automaton { letters, delta })
    }

    /// Builds an automaton whose letters act as the given transformations.
    pub fn from_transformations(letters: Vec<String>, actions: &[Transformation]) -> Result<Self, AutomatonError> {
        let n = actions.first().map_or(0, Transformation::degree);
        if actions.iter().any(|t| t.degree() != n) {
            return Err(AutomatonError::StateCountMismatch(
                n,
                actions
                    .iter()
                    .map(Transformation::degree)
                    .find(|&d| d != n)
                    .unwrap_or(n),
            ));
        }
        let delta = (0..n).map(|s| actions.iter().map(|t| t.apply(s)).collect()).collect();
        Automaton::new(letters, delta)
    }

    pub fn n_states(&self) -> usize {
        self.delta.len()
    }

    pub fn n_letters(&self) -> usize {
        self.letters.len()
    }

    pub fn letters(&self) -> &[String] {
        &self.letters
    }

    pub fn letter_index(&self, name: &str) -> Option<usize> {
        self.letters.iter().position(|l| l == name)
    }

    /// `state · letter`, both 0-based.
    pub fn step(&self, state: usize, letter: usize) -> usize {
        self.delta[state][letter]
    }

    pub fn delta(&self) -> &[Vec<usize>] {
        &self.delta
    }

    /// The transformation `a^Q` induced by one letter.
    pub fn letter_action(&self, letter: usize) -> Transformation {
        Transformation(self.delta.iter().map(|row| row[letter]).collect())
    }

    pub fn letter_actions(&self) -> Vec<Transformation> {
        (0..self.n_letters()).map(|a| self.letter_action(a)).collect()
    }

    /// Tokenizes a word: whitespace- or comma-separated letter names, or, when
    /// the text is a single token that is not itself a letter, one letter per
    /// character.
    pub fn parse_word(&self, text: &str) -> Result<Vec<usize>, AutomatonError> {
        let tokens: Vec<&str> = text
            .split(|c: char| c.is_whitespace() || c == ',')
            .filter(|t| !t.is_empty())
            .collect();
        let lookup = |t: &str| {
            self.letter_index(t)
                .ok_or_else(|| AutomatonError::UnknownLetter(t.to_string()))
        };
        match tokens.as_slice() {
            [] => Ok(Vec::new()),
            [single] if self.letter_index(single).is_none() => single.chars().map(|c| lookup(&c.to_string())).collect(),
            _ => tokens.into_iter().map(lookup).collect(),
        }
    }

    pub fn format_word(&self, word: &[usize]) -> String {
        if self.letters.iter().all(|l| l.chars().count() == 1) {
            word.iter().map(|&a| self.letters[a].as_str()).collect()
        } else {
            word.iter()
                .map(|&a| self.letters[a].as_str())
                .collect::<Vec<_>>()
                .join(" ")
        }
    }

    /// `u^Q` for a word of letter indices; the empty word gives the identity.
    pub fn induced(&self, word: &[usize]) -> Transformation {
        let images = (0..self.n_states())
            .map(|s| word.iter().fold(s, |q, &a| self.delta[q][a]))
            .collect();
        Transformation(images)
    }

    /// `u^Q` for a textual word.
    pub fn induced_str(&self, word: &str) -> Result<Transformation, AutomatonError> {
        Ok(self.induced(&self.parse_word(word)?))
    }

    /// Appends letters acting as the given transformations.
    pub fn with_letters(
        &self,
        extra: impl IntoIterator<Item = (String, Transformation)>,
    ) -> Result<Automaton, AutomatonError> {
        let mut letters = self.letters.clone();
        let mut delta = self.delta.clone();
        for (name, t) in extra {
            if t.degree() != self.n_states() {
                return Err(AutomatonError::StateCountMismatch(self.n_states(), t.degree()));
            }
            letters.push(name);
            for (s, row) in delta.iter_mut().enumerate() {
                row.push(t.apply(s));
            }
        }
        Automaton::new(letters, delta)
    }

    /// Renames states by the permutation `sigma` (old state `s` becomes
    /// `sigma[s]`) and reorders letters so that new letter `j` is old letter
    /// `tau[j]`.
    pub fn relabel(&self, sigma: &[usize], tau: &[usize]) -> Automaton {
        let n = self.n_states();
        let mut delta = vec![vec![0; tau.len()]; n];
        for s in 0..n {
            for (j, &old) in tau.iter().enumerate() {
                delta[sigma[s]][j] = sigma[self.delta[s][old]];
            }
        }
        let letters = tau.iter().map(|&old| self.letters[old].clone()).collect();
        Automaton { letters, delta }
    }

    /// True when `self` extends `base`: same states, every letter of `base`
    /// is present with the same action, and every new letter acts as some
    /// word of `base`.
    pub fn is_extension_of(&self, base: &Automaton, limits: &Limits) -> Result<bool, AutomatonError> {
        if self.n_states() != base.n_states() {
            return Err(AutomatonError::StateCountMismatch(self.n_states(), base.n_states()));
        }
        let mut old = vec![false; self.n_letters()];
        for (a, name) in base.letters.iter().enumerate() {
            match self.letter_index(name) {
                Some(b) if self.letter_action(b) == base.letter_action(a) => old[b] = true,
                _ => return Ok(false),
            }
        }
        if old.iter().all(|&o| o) {
            return Ok(true);
        }
        let monoid = algebra::transition_monoid(base, limits)?;
        Ok((0..self.n_letters())
            .filter(|&b| !old[b])
            .all(|b| monoid.index_of(&self.letter_action(b)).is_some()))
    }

    /// True when `self` is a restriction of `base`: a sub-alphabet with
    /// identical action.
    pub fn is_restriction_of(&self, base: &Automaton) -> Result<bool, AutomatonError> {
        if self.n_states() != base.n_states() {
            return Err(AutomatonError::StateCountMismatch(self.n_states(), base.n_states()));
        }
        Ok(self.letters.iter().enumerate().all(|(a, name)| {
            base.letter_index(name)
                .is_some_and(|b| base.letter_action(b) == self.letter_action(a))
        }))
    }

    /// The extension with one extra letter per element of `M(Q)`, so that
    /// every word action is a letter action.
    pub fn saturate(&self, limits: &Limits) -> Result<Automaton, AutomatonError> {
        let monoid = algebra::transition_monoid(self, limits)?;
        let mut taken: HashSet<String> = self.letters.iter().cloned().collect();
        let mut extra = Vec::with_capacity(monoid.order());
        for (i, t) in monoid.elements().iter().enumerate() {
            let mut name = format!("m{}", i + 1);
            while taken.contains(&name) {
                name.push('\'');
            }
            taken.insert(name.clone());
            extra.push((name, t.clone()));
        }
        self.with_letters(extra)
    }

    pub fn with_initial(self, initial: usize) -> Result<InitializedAutomaton, AutomatonError> {
        InitializedAutomaton::new(self, initial)
    }

    pub fn to_file(&self, initial: Option<usize>) -> AutomatonFile {
        AutomatonFile {
            states: self.n_states(),
            letters: self.letters.clone(),
            delta: self
                .delta
                .iter()
                .map(|row| row.iter().map(|&t| t + 1).collect())
                .collect(),
            initial: initial.map(|q| q + 1),
        }
    }
}

impl fmt::Display for Automaton {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} states, letters [{}]", self.n_states(), self.letters.join(","))?;
        for (a, name) in self.letters.iter().enumerate() {
            write!(f, "; {name} -> {}", self.letter_action(a))?;
        }
        Ok(())
    }
}

/// An automaton with a distinguished (0-based) initial state.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct InitializedAutomaton {
    pub automaton: Automaton,
    pub initial: usize,
}

impl InitializedAutomaton {
    pub fn new(automaton: Automaton, initial: usize) -> Result<Self, AutomatonError> {
        if initial >= automaton.n_states() {
            return Err(AutomatonError::InitialOutOfRange {
                initial: initial + 1,
                states: automaton.n_states(),
            });
        }
        Ok(InitializedAutomaton { automaton, initial })
    }

    /// States in breadth-first discovery order from the initial state,
    /// exploring letters in order.
    pub fn reachable_states(&self) -> Vec<usize> {
        let a = &self.automaton;
        let mut seen = vec![false; a.n_states()];
        let mut order = vec![self.initial];
        seen[self.initial] = true;
        let mut queue = VecDeque::from([self.initial]);
        while let Some(q) = queue.pop_front() {
            for l in 0..a.n_letters() {
                let t = a.step(q, l);
                if !seen[t] {
                    seen[t] = true;
                    order.push(t);
                    queue.push_back(t);
                }
            }
        }
        order
    }

    pub fn is_initially_connected(&self) -> bool {
        self.reachable_states().len() == self.automaton.n_states()
    }

    /// The subautomaton on the states reachable from the initial state,
    /// renumbered in discovery order (the initial state becomes state 1).
    pub fn reachable_part(&self) -> InitializedAutomaton {
        let order = self.reachable_states();
        let mut rename = vec![usize::MAX; self.automaton.n_states()];
        for (new, &old) in order.iter().enumerate() {
            rename[old] = new;
        }
        let delta = order
            .iter()
            .map(|&q| self.automaton.delta[q].iter().map(|&t| rename[t]).collect())
            .collect();
        InitializedAutomaton {
            automaton: Automaton {
                letters: self.automaton.letters.clone(),
                delta,
            },
            initial: 0,
        }
    }
}

/// JSON form: `{"states": n, "letters": [...], "delta": [[...]], "initial": q?}`
/// with 1-based states; row `i`, column `j` holds `i · a_j`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AutomatonFile {
    pub states: usize,
    pub letters: Vec<String>,
    pub delta: Vec<Vec<usize>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub initial: Option<usize>,
}

impl AutomatonFile {
    pub fn from_json(text: &str) -> Result<Self, AutomatonError> {
        serde_json::from_str(text).map_err(|e| AutomatonError::Json(e.to_string()))
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("automaton file serializes")
    }

    /// Validates the file and converts it to 0-based form.
    pub fn parse(&self) -> Result<(Automaton, Option<usize>), AutomatonError> {
        if self.delta.len() != self.states {
            return Err(AutomatonError::RowCount {
                expected: self.states,
                found: self.delta.len(),
            });
        }
        let mut delta = Vec::with_capacity(self.states);
        for (i, row) in self.delta.iter().enumerate() {
            let mut out = Vec::with_capacity(row.len());
            for &t in row {
                if t == 0 || t > self.states {
                    return Err(AutomatonError::TargetOutOfRange {
                        state: i + 1,
                        target: t,
                        states: self.states,
                    });
                }
                out.push(t - 1);
            }
            delta.push(out);
        }
        let automaton = Automaton::new(self.letters.clone(), delta)?;
        let initial = match self.initial {
            None => None,
            Some(q) if q == 0 || q > self.states => {
                return Err(AutomatonError::InitialOutOfRange {
                    initial: q,
                    states: self.states,
                })
            }
            Some(q) => Some(q - 1),
        };
        Ok((automaton, initial))
    }

    pub fn into_subject(&self) -> Result<Subject, AutomatonError> {
        let (automaton, initial) = self.parse()?;
        Ok(match initial {
            None => Subject::Plain(automaton),
            Some(q) => Subject::Initialized(InitializedAutomaton::new(automaton, q)?),
        })
    }
}

/// An automaton identity's subject: `Γ(Q)` for a plain automaton or
/// `Γ(Q, q)` for an initialized one.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Subject {
    Plain(Automaton),
    Initialized(InitializedAutomaton),
}

impl Subject {
    pub fn automaton(&self) -> &Automaton {
        match self {
            Subject::Plain(a) => a,
            Subject::Initialized(ia) => &ia.automaton,
        }
    }

    pub fn initial(&self) -> Option<usize> {
        match self {
            Subject::Plain(_) => None,
            Subject::Initialized(ia) => Some(ia.initial),
        }
    }
}

impl From<Automaton> for Subject {
    fn from(a: Automaton) -> Self {
        Subject::Plain(a)
    }
}

impl From<InitializedAutomaton> for Subject {
    fn from(a: InitializedAutomaton) -> Self {
        Subject::Initialized(a)
    }
}

// ---------------------------------------------------------------------------
// Families

/// An `n`-state automaton with one letter `a` inducing the cycle
/// `1 -> 2 -> … -> n -> 1`.
pub fn counter(n: usize) -> Result<Automaton, AutomatonError> {
    if n == 0 {
        return Err(AutomatonError::FamilyParameter {
            family: "counter",
            min: 1,
            n,
        });
    }
    Automaton::new(vec!["a".into()], (0..n).map(|s| vec![(s + 1) % n]).collect())
}

/// The automaton `Q_n`: letter `a` induces the cycle `(1 … n)`, letter `b`
/// the transposition `(1 2)`. Its monoid is the symmetric group `S_n`.
pub fn symmetric_automaton(n: usize) -> Result<Automaton, AutomatonError> {
    if n < 3 {
        return Err(AutomatonError::FamilyParameter {
            family: "symmetric automaton",
            min: 3,
            n,
        });
    }
    let delta = (0..n)
        .map(|s| {
            let swap = match s {
                0 => 1,
                1 => 0,
                s => s,
            };
            vec![(s + 1) % n, swap]
        })
        .collect();
    Automaton::new(vec!["a".into(), "b".into()], delta)
}

/// The two-state automaton whose four letters induce, in order, the
/// identity, the swap, and the constant maps onto states 1 and 2.
pub fn full_t2() -> Automaton {
    Automaton::new(
        vec!["a".into(), "b".into(), "c".into(), "d".into()],
        vec![vec![0, 1, 0, 1], vec![1, 0, 0, 1]],
    )
    .expect("valid table")
}

/// The automaton `(M, M, ·)` of a monoid under right multiplication. States
/// and letters follow the monoid's element order; letter `m<k>` is element
/// `k` (1-based).
pub fn monoid_automaton(m: &TransformationMonoid) -> Automaton {
    cayley_automaton(m.order(), |x, y| m.product(x, y))
}

/// The automaton of a finite monoid given by its multiplication.
pub fn cayley_automaton(order: usize, mul: impl Fn(usize, usize) -> usize) -> Automaton {
    let letters = (1..=order).map(|k| format!("m{k}")).collect();
    let delta = (0..order).map(|x| (0..order).map(|y| mul(x, y)).collect()).collect();
    Automaton::new(letters, delta).expect("cayley table is total")
}
