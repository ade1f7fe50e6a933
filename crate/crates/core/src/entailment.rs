//! Entailment between automaton identities over Conway categories.
//!
//! A set of automaton identities entails `Γ(Q)` exactly when every simple
//! group dividing `M(Q)` divides the monoid of some hypothesis. Everything
//! here reduces to that criterion.

use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::algebra::{
    group_generators, is_prime, monoid_divisor_witnesses, simple_divisors_monoid, transition_monoid, AlgebraError,
    DivisionWitness, Limits, SimpleGroupId, TransformationMonoid, NONABELIAN_SIMPLE,
};
use crate::automaton::{Automaton, AutomatonError, InitializedAutomaton, Subject};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum EntailmentError {
    #[error(
        "hypothesis {index} is not initially connected ({reachable} of {states} states reachable); \
         pass the reachable-part reduction to use its reachable part"
    )]
    NotInitiallyConnected {
        index: usize,
        reachable: usize,
        states: usize,
    },
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error(transparent)]
    Automaton(#[from] AutomatonError),
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct EntailOptions {
    pub limits: Limits,
    /// Replace a hypothesis `(Q, q)` that is not initially connected by its
    /// reachable part.
    pub reduce_reachable: bool,
}

/// Where a simple group divides a hypothesis monoid: `K / N` inside the
/// maximal subgroup at an idempotent, with words inducing the idempotent and
/// generators of `K` and `N`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Witness {
    pub idempotent: String,
    pub subgroup_order: usize,
    pub normal_order: usize,
    pub subgroup_generators: Vec<String>,
    pub normal_generators: Vec<String>,
}

impl Witness {
    fn new(m: &TransformationMonoid, w: &DivisionWitness) -> Self {
        let words = |set: &[usize]| group_generators(m, set).into_iter().map(|x| m.witness_str(x)).collect();
        Witness {
            idempotent: m.witness_str(w.idempotent),
            subgroup_order: w.subgroup.len(),
            normal_order: w.normal.len(),
            subgroup_generators: words(&w.subgroup),
            normal_generators: words(&w.normal),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Coverage {
    pub divisor: SimpleGroupId,
    pub hypothesis: usize,
    pub witness: Witness,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EntailmentReport {
    pub holds: bool,
    pub conclusion_divisors: Vec<SimpleGroupId>,
    pub coverage: Vec<Coverage>,
    pub missing: Vec<SimpleGroupId>,
    pub notes: Vec<String>,
}

/// The simple divisors of a set of hypotheses, each with the first
/// hypothesis (by index) it divides.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DivisorBasis {
    pub divisors: BTreeMap<SimpleGroupId, (usize, Witness)>,
    pub notes: Vec<String>,
}

impl DivisorBasis {
    pub fn groups(&self) -> BTreeSet<SimpleGroupId> {
        self.divisors.keys().cloned().collect()
    }
}

const REDUCTION_NOTE: &str = "replaced by its reachable part: the unreachable block of the system is \
     triangular and drops out by the projection identity for ⟨f ∘ (1 × ! × 1), g⟩†; \
     the divisor criterion is only established for initially connected automata";

/// The automaton whose monoid represents a hypothesis.
fn hypothesis_automaton(
    index: usize,
    h: &Subject,
    opts: &EntailOptions,
    notes: &mut Vec<String>,
) -> Result<Automaton, EntailmentError> {
    match h {
        Subject::Plain(q) => Ok(q.clone()),
        Subject::Initialized(iq) if iq.is_initially_connected() => Ok(iq.automaton.clone()),
        Subject::Initialized(iq) => {
            let reachable = iq.reachable_states().len();
            if !opts.reduce_reachable {
                return Err(EntailmentError::NotInitiallyConnected {
                    index,
                    reachable,
                    states: iq.automaton.n_states(),
                });
            }
            notes.push(format!(
                "hypothesis {index} ({reachable} of {} states reachable) {REDUCTION_NOTE}",
                iq.automaton.n_states()
            ));
            Ok(iq.reachable_part().automaton)
        }
    }
}

/// Union of the simple divisors of the hypothesis monoids.
pub fn divisor_basis(hyps: &[Subject], opts: &EntailOptions) -> Result<DivisorBasis, EntailmentError> {
    let mut notes = Vec::new();
    let mut divisors = BTreeMap::new();
    for (i, h) in hyps.iter().enumerate() {
        let q = hypothesis_automaton(i, h, opts, &mut notes)?;
        let m = transition_monoid(&q, &opts.limits)?;
        for (s, w) in monoid_divisor_witnesses(&m, &opts.limits)? {
            divisors.entry(s).or_insert_with(|| (i, Witness::new(&m, &w)));
        }
    }
    Ok(DivisorBasis { divisors, notes })
}

/// Simple divisors of the conclusion's monoid. The monoid of the whole
/// automaton is used for initialized conclusions too, since `Γ(Q)` implies
/// `Γ(Q, q)` for every state.
pub fn conclusion_divisors(concl: &Subject, limits: &Limits) -> Result<BTreeSet<SimpleGroupId>, EntailmentError> {
    let m = transition_monoid(concl.automaton(), limits)?;
    Ok(simple_divisors_monoid(&m, limits)?)
}

/// Decides whether the hypotheses entail the conclusion.
pub fn entails(hyps: &[Subject], concl: &Subject, opts: &EntailOptions) -> Result<EntailmentReport, EntailmentError> {
    let basis = divisor_basis(hyps, opts)?;
    let needed = conclusion_divisors(concl, &opts.limits)?;
    let mut coverage = Vec::new();
    let mut missing = Vec::new();
    for s in &needed {
        match basis.divisors.get(s) {
            Some((hypothesis, witness)) => coverage.push(Coverage {
                divisor: s.clone(),
                hypothesis: *hypothesis,
                witness: witness.clone(),
            }),
            None => missing.push(s.clone()),
        }
    }
    let mut notes = basis.notes;
    if let Subject::Initialized(iq) = concl {
        notes.push(format!(
            "conclusion is initialized at state {}; it follows from the identity of the whole automaton",
            iq.initial + 1
        ));
    }
    Ok(EntailmentReport {
        holds: missing.is_empty(),
        conclusion_divisors: needed.into_iter().collect(),
        coverage,
        missing,
        notes,
    })
}

/// Whether two automaton identities are equivalent over Conway categories.
pub fn equivalent(q1: &Subject, q2: &Subject, limits: &Limits) -> Result<bool, EntailmentError> {
    Ok(conclusion_divisors(q1, limits)? == conclusion_divisors(q2, limits)?)
}

/// Comparison of `Γ(Q, q)` and `Γ(Q, qu)` as hypotheses.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct InitialShiftReport {
    pub word: String,
    pub state: usize,
    pub shifted_state: usize,
    pub reachable_from_state: Vec<usize>,
    pub reachable_from_shifted: Vec<usize>,
    pub divisors_at_state: Vec<SimpleGroupId>,
    pub divisors_at_shifted: Vec<SimpleGroupId>,
    /// Both hypotheses yield the same divisor basis.
    pub identical: bool,
    /// The basis at `qu` is contained in the basis at `q`, as it must be
    /// since `Γ(Q, q)` implies `Γ(Q, qu)`.
    pub consistent: bool,
    pub notes: Vec<String>,
}

/// Checks that moving the initial state along `word` is consistent with the
/// divisor criterion. States are 1-based in the report.
pub fn initial_shift_check(
    iq: &InitializedAutomaton,
    word: &str,
    opts: &EntailOptions,
) -> Result<InitialShiftReport, EntailmentError> {
    let letters = iq.automaton.parse_word(word)?;
    let shifted = InitializedAutomaton::new(iq.automaton.clone(), iq.automaton.induced(&letters).apply(iq.initial))?;
    let at = divisor_basis(&[iq.clone().into()], opts)?;
    let at_shifted = divisor_basis(&[shifted.clone().into()], opts)?;
    let one_based = |v: Vec<usize>| v.into_iter().map(|s| s + 1).collect::<Vec<_>>();
    let mut reach_q = one_based(iq.reachable_states());
    let mut reach_qu = one_based(shifted.reachable_states());
    reach_q.sort_unstable();
    reach_qu.sort_unstable();
    let (a, b) = (at.groups(), at_shifted.groups());
    let mut notes = at.notes;
    notes.extend(at_shifted.notes);
    Ok(InitialShiftReport {
        word: word.to_string(),
        state: iq.initial + 1,
        shifted_state: shifted.initial + 1,
        reachable_from_state: reach_q,
        reachable_from_shifted: reach_qu,
        identical: a == b,
        consistent: b.is_subset(&a),
        divisors_at_state: a.into_iter().collect(),
        divisors_at_shifted: b.into_iter().collect(),
        notes,
    })
}

// ---------------------------------------------------------------------------
// Families

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Family {
    /// The counters, one for each `n`.
    Cyclic,
    /// The automata `Q_n` with monoid `S_n`.
    Symmetric,
    /// Automata whose monoids are the alternating groups.
    Alternating,
    /// A finite list of automata.
    ExplicitList(Vec<Subject>),
}

/// A simple group named by its order and label.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct NamedSimpleGroup {
    pub order: usize,
    pub name: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CompletenessVerdict {
    pub family: String,
    pub complete: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub divisors: Option<Vec<SimpleGroupId>>,
    /// A simple group dividing no monoid of the family.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub witness: Option<NamedSimpleGroup>,
    pub reason: String,
}

/// The simple group of least order (ties by name) outside `set`, among the
/// cyclic groups of prime order and the tabulated nonabelian ones.
pub fn smallest_simple_group_outside(set: &BTreeSet<SimpleGroupId>) -> NamedSimpleGroup {
    let names: BTreeSet<String> = set.iter().map(SimpleGroupId::label).collect();
    let mut nonabelian: Vec<(usize, &str)> = NONABELIAN_SIMPLE.to_vec();
    nonabelian.extend([(20160, "A_8"), (20160, "PSL(3,4)")]);
    let mut n = 2;
    loop {
        let mut here: Vec<String> = nonabelian
            .iter()
            .filter(|(o, _)| *o == n)
            .map(|(_, name)| name.to_string())
            .collect();
        if is_prime(n) {
            here.push(format!("C_{n}"));
        }
        here.sort();
        if let Some(name) = here.into_iter().find(|name| !names.contains(name)) {
            return NamedSimpleGroup { order: n, name };
        }
        n += 1;
    }
}

/// Whether the Conway identities with the identities of the family are
/// complete for iteration categories. The infinite families are answered
/// from known facts; explicit lists are computed.
pub fn family_completeness(family: &Family, limits: &Limits) -> Result<CompletenessVerdict, EntailmentError> {
    Ok(match family {
        Family::Cyclic => CompletenessVerdict {
            family: "cyclic".into(),
            complete: false,
            divisors: None,
            witness: Some(NamedSimpleGroup {
                order: 60,
                name: "A_5".into(),
            }),
            reason: "subquotients of cyclic groups are cyclic, so no nonabelian simple group divides a counter".into(),
        },
        Family::Symmetric => CompletenessVerdict {
            family: "symmetric".into(),
            complete: true,
            divisors: None,
            witness: None,
            reason: "every finite group embeds in S_n for n large enough".into(),
        },
        Family::Alternating => CompletenessVerdict {
            family: "alternating".into(),
            complete: true,
            divisors: None,
            witness: None,
            reason: "every finite group embeds in S_n, and S_n embeds in A_{n+2}".into(),
        },
        Family::ExplicitList(list) => {
            let opts = EntailOptions {
                limits: *limits,
                reduce_reachable: true,
            };
            let basis = divisor_basis(list, &opts)?;
            let set = basis.groups();
            let witness = smallest_simple_group_outside(&set);
            CompletenessVerdict {
                family: format!("list of {}", list.len()),
                complete: false,
                divisors: Some(set.into_iter().collect()),
                witness: Some(witness),
                reason: "a finite list has finitely many simple divisors".into(),
            }
        }
    })
}
