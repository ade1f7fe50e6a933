//! The `fpal` command line: reads automata and equations from JSON files and
//! prints reports on standard output.
//!
//! Exit status is 0 when the requested property holds (or the command just
//! reports), 1 when it fails, and 2 on error. Errors are printed to standard
//! error as a single line `error: <code>: <message>`.

use std::ffi::OsString;
use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use clap::{ArgGroup, Parser, Subcommand, ValueEnum};
use fpal_core::algebra::{transition_monoid, AlgebraError, Limits, MonoidReport, SimpleGroupId};
use fpal_core::automaton::{AutomatonError, AutomatonFile, InitializedAutomaton, Subject};
use fpal_core::cpo_model::{check_equation, CheckResult, ModelError, PosetModel, Strategy, DEFAULT_DECISION_BUDGET};
use fpal_core::entailment::{
    divisor_basis, entails, equivalent, family_completeness, initial_shift_check, CompletenessVerdict, EntailOptions,
    EntailmentError, EntailmentReport, Family, InitialShiftReport,
};
use fpal_core::identities::{conway_library, gamma, gamma_init, system_view, IdentityError};
use fpal_core::term::{EquationFile, TermError};
use serde::Serialize;

pub mod config;

pub use config::{Config, OutputFormat};

/// A failure with a stable machine-readable code.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CliError {
    pub code: &'static str,
    pub message: String,
}

impl CliError {
    pub fn new(code: &'static str, message: impl Into<String>) -> Self {
        CliError {
            code,
            message: message.into(),
        }
    }
}

impl From<AutomatonError> for CliError {
    fn from(e: AutomatonError) -> Self {
        match e {
            AutomatonError::Algebra(a) => a.into(),
            other => CliError::new("malformed-automaton", other.to_string()),
        }
    }
}

impl From<TermError> for CliError {
    fn from(e: TermError) -> Self {
        CliError::new("malformed-equation", e.to_string())
    }
}

impl From<AlgebraError> for CliError {
    fn from(e: AlgebraError) -> Self {
        let code = match e {
            AlgebraError::MonoidTooLarge { .. } | AlgebraError::GroupTooLarge { .. } => "cap-exceeded",
            _ => "algebra",
        };
        CliError::new(code, e.to_string())
    }
}

impl From<ModelError> for CliError {
    fn from(e: ModelError) -> Self {
        let code = match e {
            ModelError::ExhaustiveTooLarge { .. }
            | ModelError::TooManyFunctions { .. }
            | ModelError::DecisionBudget(_) => "threshold-exceeded",
            ModelError::UnknownPoset(_) | ModelError::NoJoins(_) => "unsupported",
            ModelError::Term(t) => return t.into(),
            _ => "model",
        };
        CliError::new(code, e.to_string())
    }
}

impl From<EntailmentError> for CliError {
    fn from(e: EntailmentError) -> Self {
        match e {
            EntailmentError::Algebra(a) => a.into(),
            EntailmentError::Automaton(a) => a.into(),
            other => CliError::new("not-initially-connected", other.to_string()),
        }
    }
}

impl From<IdentityError> for CliError {
    fn from(e: IdentityError) -> Self {
        match e {
            IdentityError::Term(t) => t.into(),
            IdentityError::Algebra(a) => a.into(),
            other => CliError::new("unsupported", other.to_string()),
        }
    }
}

/// What a run printed and its exit status.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

#[derive(Parser, Debug)]
#[command(name = "fpal", version, about = "Automaton identities for fixed point operations")]
struct Cli {
    /// Output format; overrides the config file.
    #[arg(long, global = true, value_enum)]
    format: Option<OutputFormat>,
    /// Largest transition monoid to compute.
    #[arg(long, global = true)]
    monoid_cap: Option<usize>,
    /// Largest group whose subgroups are enumerated.
    #[arg(long, global = true)]
    subgroup_cap: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum FamilyKind {
    Cyclic,
    Symmetric,
    Alternating,
    List,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Builtin {
    Conway,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Transition monoid of an automaton.
    Monoid { automaton: PathBuf },
    /// Simple groups dividing the transition monoid.
    Divisors { automaton: PathBuf },
    /// The identity associated with an automaton.
    Gamma {
        automaton: PathBuf,
        /// Initial state (1-based); overrides the file's.
        #[arg(long)]
        initial: Option<usize>,
        /// Arity of the parameter object.
        #[arg(short = 'p', default_value_t = 1)]
        p: usize,
    },
    /// Whether the hypotheses' identities entail the conclusion's.
    Entails {
        #[arg(long = "hyp", required = true)]
        hyps: Vec<PathBuf>,
        #[arg(long)]
        concl: PathBuf,
        /// Use the reachable part of hypotheses that are not initially connected.
        #[arg(long)]
        reduce_reachable: bool,
    },
    /// Whether two automaton identities are equivalent.
    Equivalent { first: PathBuf, second: PathBuf },
    /// Compare an initialized automaton with its initial state moved along a word.
    Shift {
        automaton: PathBuf,
        #[arg(long)]
        word: String,
        #[arg(long)]
        initial: Option<usize>,
        #[arg(long)]
        reduce_reachable: bool,
    },
    /// Check equations in a finite poset model.
    #[command(group(ArgGroup::new("source").required(true).args(["equation", "builtin", "gamma"])))]
    Check {
        /// Equation file.
        equation: Option<PathBuf>,
        #[arg(long, value_enum)]
        builtin: Option<Builtin>,
        /// Check the identity of this automaton.
        #[arg(long)]
        gamma: Option<PathBuf>,
        #[arg(long, requires = "gamma")]
        initial: Option<usize>,
        #[arg(short = 'p', default_value_t = 1, requires = "gamma")]
        p: usize,
        /// Object arities a,b,c for the built-in identities.
        #[arg(long, value_delimiter = ',', default_values_t = [1, 1, 1], requires = "builtin")]
        arities: Vec<usize>,
        #[arg(long, default_value = "chain:2")]
        poset: String,
        #[arg(long, conflicts_with_all = ["samples", "seed", "decision_tree"])]
        exhaustive: bool,
        /// Exhaustive search branching only on the table entries evaluation
        /// reads; needs a poset with joins.
        #[arg(long, conflicts_with_all = ["samples", "seed"])]
        decision_tree: bool,
        #[arg(long)]
        samples: Option<u64>,
        #[arg(long)]
        seed: Option<u64>,
    },
    /// Completeness of a family of automaton identities.
    Family {
        kind: FamilyKind,
        /// Comma-separated automaton files for `list`.
        files: Option<String>,
    },
}

/// Runs the command line with the configuration from `FPAL_CONFIG`.
pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    match Config::from_env() {
        Ok(config) => run_with_config(args, config),
        Err(e) => failure(e),
    }
}

pub fn run_with_config<I, T>(args: I, config: Config) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => Outcome {
                    code: 0,
                    stdout: e.to_string(),
                    stderr: String::new(),
                },
                _ => {
                    let first = e
                        .to_string()
                        .lines()
                        .next()
                        .unwrap_or("")
                        .trim_start_matches("error: ")
                        .to_string();
                    failure(CliError::new("usage", first))
                }
            };
        }
    };
    let mut config = config;
    if let Some(f) = cli.format {
        config.output_format = f;
    }
    if let Some(c) = cli.monoid_cap {
        config.monoid_cap = c;
    }
    if let Some(c) = cli.subgroup_cap {
        config.subgroup_cap = c;
    }
    if let Err(e) = config.validate() {
        return failure(e);
    }
    match execute(cli.command, &config) {
        Ok((code, stdout)) => Outcome {
            code,
            stdout,
            stderr: String::new(),
        },
        Err(e) => failure(e),
    }
}

fn failure(e: CliError) -> Outcome {
    let message = e.message.replace('\n', " ");
    Outcome {
        code: 2,
        stdout: String::new(),
        stderr: format!("error: {}: {}\n", e.code, message),
    }
}

fn read_subject(path: &Path) -> Result<(AutomatonFile, Subject), CliError> {
    let text = std::fs::read_to_string(path).map_err(|e| CliError::new("io", format!("{}: {e}", path.display())))?;
    let file = AutomatonFile::from_json(&text)?;
    let subject = file.into_subject()?;
    Ok((file, subject))
}

fn read_equation(path: &Path) -> Result<EquationFile, CliError> {
    let text = std::fs::read_to_string(path).map_err(|e| CliError::new("io", format!("{}: {e}", path.display())))?;
    serde_json::from_str(&text).map_err(|e| CliError::new("malformed-equation", format!("{}: {e}", path.display())))
}

fn with_initial(subject: Subject, initial: Option<usize>) -> Result<Subject, CliError> {
    match initial {
        None => Ok(subject),
        Some(0) => Err(CliError::new("malformed-automaton", "states are numbered from 1")),
        Some(q) => Ok(InitializedAutomaton::new(subject.automaton().clone(), q - 1)?.into()),
    }
}

fn json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("reports serialize");
    s.push('\n');
    s
}

fn labels(groups: &[SimpleGroupId]) -> String {
    if groups.is_empty() {
        return "{}".to_string();
    }
    let names: Vec<String> = groups.iter().map(SimpleGroupId::label).collect();
    format!("{{{}}}", names.join(", "))
}

fn execute(command: Command, config: &Config) -> Result<(i32, String), CliError> {
    let limits = config.limits();
    let text = config.output_format == OutputFormat::Text;
    match command {
        Command::Monoid { automaton } => monoid(&automaton, &limits, text),
        Command::Divisors { automaton } => divisors(&automaton, &limits, text),
        Command::Gamma { automaton, initial, p } => gamma_cmd(&automaton, initial, p, text),
        Command::Entails {
            hyps,
            concl,
            reduce_reachable,
        } => {
            let hyps = hyps
                .iter()
                .map(|h| read_subject(h).map(|(_, s)| s))
                .collect::<Result<Vec<_>, _>>()?;
            let (_, concl) = read_subject(&concl)?;
            let opts = EntailOptions {
                limits,
                reduce_reachable,
            };
            let report = entails(&hyps, &concl, &opts)?;
            let out = if text { entailment_text(&report) } else { json(&report) };
            Ok((if report.holds { 0 } else { 1 }, out))
        }
        Command::Equivalent { first, second } => {
            let (_, a) = read_subject(&first)?;
            let (_, b) = read_subject(&second)?;
            let eq = equivalent(&a, &b, &limits)?;
            let out = if text {
                format!("{}\n", if eq { "equivalent" } else { "not equivalent" })
            } else {
                json(&serde_json::json!({ "equivalent": eq }))
            };
            Ok((if eq { 0 } else { 1 }, out))
        }
        Command::Shift {
            automaton,
            word,
            initial,
            reduce_reachable,
        } => {
            let (_, subject) = read_subject(&automaton)?;
            let Subject::Initialized(iq) = with_initial(subject, initial)? else {
                return Err(CliError::new("unsupported", "shift needs an initial state"));
            };
            let opts = EntailOptions {
                limits,
                reduce_reachable,
            };
            let report = initial_shift_check(&iq, &word, &opts)?;
            let out = if text { shift_text(&report) } else { json(&report) };
            Ok((if report.consistent { 0 } else { 1 }, out))
        }
        Command::Check {
            equation,
            builtin,
            gamma: gamma_file,
            initial,
            p,
            arities,
            poset,
            exhaustive,
            decision_tree,
            samples,
            seed,
        } => {
            let poset = PosetModel::parse(&poset)?;
            let strategy = if decision_tree {
                Strategy::Decision {
                    budget: DEFAULT_DECISION_BUDGET,
                }
            } else if exhaustive {
                Strategy::Exhaustive {
                    threshold: config.exhaustive_threshold,
                }
            } else if let Some(count) = samples {
                if count == 0 {
                    return Err(CliError::new("usage", "--samples must be positive"));
                }
                Strategy::Sampled {
                    seed: seed.unwrap_or(config.seed),
                    count,
                }
            } else {
                Strategy::Auto {
                    threshold: config.exhaustive_threshold,
                    seed: seed.unwrap_or(config.seed),
                    count: config.sample_count,
                }
            };
            let equations = if let Some(path) = equation {
                vec![read_equation(&path)?.to_equation()?]
            } else if let Some(Builtin::Conway) = builtin {
                let [a, b, c] = arities[..] else {
                    return Err(CliError::new("usage", "--arities takes three values a,b,c"));
                };
                if a == 0 || b == 0 {
                    return Err(CliError::new("unsupported", "object arities a and b must be positive"));
                }
                conway_library(a, b, c)?.into_iter().map(|s| s.equation).collect()
            } else {
                let path = gamma_file.expect("argument group requires a source");
                let (_, subject) = read_subject(&path)?;
                match with_initial(subject, initial)? {
                    Subject::Plain(q) => vec![gamma(&q, p)?],
                    Subject::Initialized(iq) => vec![gamma_init(&iq, p)?],
                }
            };
            let results = equations
                .iter()
                .map(|eq| check_equation(eq, &poset, strategy))
                .collect::<Result<Vec<_>, _>>()?;
            let holds = results.iter().all(|r| r.holds);
            let out = if text {
                results.iter().map(check_text).collect()
            } else if results.len() == 1 {
                json(&results[0])
            } else {
                json(&BatchReport {
                    poset: poset.name().to_string(),
                    holds,
                    results,
                })
            };
            Ok((if holds { 0 } else { 1 }, out))
        }
        Command::Family { kind, files } => {
            if kind != FamilyKind::List && files.is_some() {
                return Err(CliError::new("usage", "only `family list` takes files"));
            }
            let family = match kind {
                FamilyKind::Cyclic => Family::Cyclic,
                FamilyKind::Symmetric => Family::Symmetric,
                FamilyKind::Alternating => Family::Alternating,
                FamilyKind::List => {
                    let files = files.ok_or_else(|| CliError::new("usage", "family list needs a file list"))?;
                    let subjects = files
                        .split(',')
                        .filter(|f| !f.trim().is_empty())
                        .map(|f| read_subject(Path::new(f.trim())).map(|(_, s)| s))
                        .collect::<Result<Vec<_>, _>>()?;
                    Family::ExplicitList(subjects)
                }
            };
            let verdict = family_completeness(&family, &limits)?;
            let out = if text { family_text(&verdict) } else { json(&verdict) };
            Ok((if verdict.complete { 0 } else { 1 }, out))
        }
    }
}

#[derive(Serialize)]
struct BatchReport {
    poset: String,
    holds: bool,
    results: Vec<CheckResult>,
}

#[derive(Serialize)]
struct ElementReport {
    word: String,
    images: Vec<usize>,
}

#[derive(Serialize)]
struct MonoidOutput {
    states: usize,
    letters: Vec<String>,
    order: usize,
    is_group: bool,
    elements: Vec<ElementReport>,
    idempotents: Vec<String>,
    maximal_subgroup_orders: Vec<usize>,
    simple_divisors: Vec<SimpleGroupId>,
}

fn monoid(path: &Path, limits: &Limits, text: bool) -> Result<(i32, String), CliError> {
    let (_, subject) = read_subject(path)?;
    let q = subject.automaton();
    let m = transition_monoid(q, limits)?;
    let report = MonoidReport::compute(&m, limits)?;
    let out = MonoidOutput {
        states: q.n_states(),
        letters: q.letters().to_vec(),
        order: m.order(),
        is_group: m.is_group(),
        elements: (0..m.order())
            .map(|i| ElementReport {
                word: m.witness_str(i),
                images: m.element(i).one_based(),
            })
            .collect(),
        idempotents: m.idempotents().into_iter().map(|e| m.witness_str(e)).collect(),
        maximal_subgroup_orders: report.maximal_subgroup_orders,
        simple_divisors: report.simple_divisors,
    };
    if !text {
        return Ok((0, json(&out)));
    }
    let mut s = String::new();
    writeln!(s, "order {}{}", out.order, if out.is_group { " (group)" } else { "" }).unwrap();
    for e in &out.elements {
        let images: Vec<String> = e.images.iter().map(usize::to_string).collect();
        writeln!(s, "  {:<8} [{}]", e.word, images.join(",")).unwrap();
    }
    writeln!(s, "idempotents {}", out.idempotents.join(" ")).unwrap();
    writeln!(s, "simple divisors {}", labels(&out.simple_divisors)).unwrap();
    Ok((0, s))
}

#[derive(Serialize)]
struct DivisorReport {
    order: usize,
    divisors: Vec<SimpleGroupId>,
    witnesses: Vec<fpal_core::entailment::Coverage>,
}

fn divisors(path: &Path, limits: &Limits, text: bool) -> Result<(i32, String), CliError> {
    let (_, subject) = read_subject(path)?;
    let q = subject.automaton().clone();
    let m = transition_monoid(&q, limits)?;
    let basis = divisor_basis(
        &[Subject::Plain(q)],
        &EntailOptions {
            limits: *limits,
            reduce_reachable: false,
        },
    )?;
    let divisors: Vec<SimpleGroupId> = basis.groups().into_iter().collect();
    if text {
        return Ok((0, format!("{}\n", labels(&divisors))));
    }
    let witnesses = basis
        .divisors
        .into_iter()
        .map(|(divisor, (hypothesis, witness))| fpal_core::entailment::Coverage {
            divisor,
            hypothesis,
            witness,
        })
        .collect();
    Ok((
        0,
        json(&DivisorReport {
            order: m.order(),
            divisors,
            witnesses,
        }),
    ))
}

#[derive(Serialize)]
struct GammaOutput {
    #[serde(flatten)]
    equation: EquationFile,
    system: Vec<String>,
    diagonal: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    initial: Option<usize>,
}

fn gamma_cmd(path: &Path, initial: Option<usize>, p: usize, text: bool) -> Result<(i32, String), CliError> {
    let (_, subject) = read_subject(path)?;
    let subject = with_initial(subject, initial)?;
    let eq = match &subject {
        Subject::Plain(q) => gamma(q, p)?,
        Subject::Initialized(iq) => gamma_init(iq, p)?,
    };
    let (system, diagonal) = system_view(subject.automaton(), p);
    let out = GammaOutput {
        equation: eq.to_file(),
        system,
        diagonal,
        initial: subject.initial().map(|q| q + 1),
    };
    if !text {
        return Ok((0, json(&out)));
    }
    let mut s = String::new();
    writeln!(s, "{}", out.equation.name).unwrap();
    for line in &out.system {
        writeln!(s, "  {line}").unwrap();
    }
    match out.initial {
        Some(q) => writeln!(s, "least solution component {q} equals the least solution of").unwrap(),
        None => writeln!(s, "least solution equals the diagonal of the least solution of").unwrap(),
    }
    writeln!(s, "  {}", out.diagonal).unwrap();
    writeln!(s, "lhs = {}", out.equation.lhs).unwrap();
    writeln!(s, "rhs = {}", out.equation.rhs).unwrap();
    Ok((0, s))
}

fn entailment_text(r: &EntailmentReport) -> String {
    let mut s = String::new();
    writeln!(s, "{}", if r.holds { "entailed" } else { "not entailed" }).unwrap();
    writeln!(s, "conclusion divisors {}", labels(&r.conclusion_divisors)).unwrap();
    for c in &r.coverage {
        writeln!(
            s,
            "  {} divides hypothesis {} at idempotent {} ({} / {})",
            c.divisor, c.hypothesis, c.witness.idempotent, c.witness.subgroup_order, c.witness.normal_order
        )
        .unwrap();
    }
    if !r.missing.is_empty() {
        writeln!(s, "missing {}", labels(&r.missing)).unwrap();
    }
    for n in &r.notes {
        writeln!(s, "note: {n}").unwrap();
    }
    s
}

fn shift_text(r: &InitialShiftReport) -> String {
    let mut s = String::new();
    writeln!(s, "state {} --{}--> state {}", r.state, r.word, r.shifted_state).unwrap();
    writeln!(s, "  divisors at {}: {}", r.state, labels(&r.divisors_at_state)).unwrap();
    writeln!(
        s,
        "  divisors at {}: {}",
        r.shifted_state,
        labels(&r.divisors_at_shifted)
    )
    .unwrap();
    writeln!(s, "identical {} consistent {}", r.identical, r.consistent).unwrap();
    for n in &r.notes {
        writeln!(s, "note: {n}").unwrap();
    }
    s
}

fn check_text(r: &CheckResult) -> String {
    let mut s = format!(
        "{} on {}: {} ({} {} interpretations",
        r.equation,
        r.poset,
        if r.holds { "holds" } else { "FAILS" },
        r.interpretations_checked,
        r.strategy
    );
    if let Some(seed) = r.seed {
        write!(s, ", seed {seed}").unwrap();
    }
    s.push_str(")\n");
    if let Some(c) = &r.counterexample {
        writeln!(s, "  at input {:?}: lhs {:?} rhs {:?}", c.input, c.lhs, c.rhs).unwrap();
        for (name, table) in &c.interpretation {
            writeln!(s, "  {name} = {table:?}").unwrap();
        }
    }
    s
}

fn family_text(v: &CompletenessVerdict) -> String {
    let mut s = format!("{}: {}\n", v.family, if v.complete { "complete" } else { "incomplete" });
    if let Some(d) = &v.divisors {
        writeln!(s, "  divisors {}", labels(d)).unwrap();
    }
    if let Some(w) = &v.witness {
        writeln!(s, "  witness {} (order {})", w.name, w.order).unwrap();
    }
    writeln!(s, "  {}", v.reason).unwrap();
    s
}
