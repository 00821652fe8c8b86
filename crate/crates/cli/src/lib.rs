//! The `syncalg` command line.
//!
//! Exit codes: 0 yes or success, 1 negative answer, 2 guard or bound exceeded, 3 input error.

use std::ffi::OsString;
use std::io::Write;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use syncalg::algebra::{
    compose_algebras, compose_recognizers, compose_recognizers_exact, consolidate, parse_algebra, recognizer_to_dfa,
    DEFAULT_COMPOSE_GUARD,
};
use syncalg::automata::{
    boolean_combine, compare, compose_relations, determinize_minimize, enumerate_pairs, is_permutation_automaton,
    parse_relation, BoolOp, CompareKind,
};
use syncalg::decide::{classify, decide, Guards, MethodChoice, VarietySpec};
use syncalg::fixtures::{self, FIXTURES};
use syncalg::oracle::{nerode_classes, recognizable_decomposition, verify_syntactic, OracleConfig};
use syncalg::profinite::{parse_equations, EqualitySet};
use syncalg::syntactic::{as_plus, naive_syntactic_algebra, syntactic_sync_algebra_with, MONOID_GUARD};
use syncalg::{Error, Relation, SyncAlgebra, Tag, Variant};

pub const EXIT_YES: i32 = 0;
pub const EXIT_NO: i32 = 1;
pub const EXIT_GUARD: i32 = 2;
pub const EXIT_INPUT: i32 = 3;

#[derive(Parser, Debug)]
#[command(name = "syncalg", version, about = "Synchronous algebras of automatic relations")]
pub struct Cli {
    /// Machine-readable output
    #[arg(long, global = true)]
    json: bool,
    /// Graphviz output where available
    #[arg(long, global = true)]
    dot: bool,
    /// Largest transition monoid built by the pipelines
    #[arg(long, global = true, value_name = "N")]
    guard: Option<usize>,
    /// Length bound for enumerations and oracles
    #[arg(long, global = true, value_name = "N")]
    max_len: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Syntactic algebra of a relation
    Synt {
        input: String,
        #[arg(long, value_enum, default_value = "unital")]
        variant: VariantArg,
        /// Print the sizes met along the pipeline
        #[arg(long)]
        trace: bool,
    },
    /// Decide membership in a class of relations
    Decide(DecideArgs),
    /// Operations on relations
    #[command(subcommand)]
    Op(OpCommand),
    /// Composition of two positive algebras, or of the syntactic recognizers of two relations
    Compose {
        a: String,
        b: String,
        /// Use the literal powerset construction instead of the exact one
        #[arg(long)]
        literal: bool,
        /// Compare the composed recognizer with the composed relation
        #[arg(long)]
        check: bool,
    },
    /// Validate an algebra file
    CheckAlgebra {
        input: String,
        /// Also print the consolidation
        #[arg(long)]
        consolidate: bool,
    },
    /// Bounded brute-force checks
    #[command(subcommand)]
    Oracle(OracleCommand),
    /// List the built-in fixtures or print one as an automaton file
    Fixtures { name: Option<String> },
    /// Graphviz rendering of an automaton or algebra file
    ExportDot { input: String },
}

#[derive(Args, Debug)]
struct DecideArgs {
    input: String,
    /// Built-in variety, or `all` for every built-in one
    #[arg(long, conflicts_with = "equations", required_unless_present = "equations")]
    variety: Option<String>,
    /// File of equations defining the variety
    #[arg(long)]
    equations: Option<String>,
    #[arg(long, value_enum, default_value = "auto")]
    method: MethodArg,
    /// Largest semigroup on which the E-closure is computed
    #[arg(long, value_name = "N")]
    closure_guard: Option<usize>,
}

#[derive(Subcommand, Debug)]
enum OpCommand {
    Union {
        a: String,
        b: String,
    },
    Intersection {
        a: String,
        b: String,
    },
    Difference {
        a: String,
        b: String,
    },
    /// Complement within the pairs of the same mode
    Complement {
        a: String,
    },
    Compose {
        a: String,
        b: String,
    },
    Minimize {
        a: String,
    },
    Compare {
        #[arg(value_enum)]
        kind: CompareArg,
        a: String,
        b: Option<String>,
    },
    /// Member pairs up to `--max-len` total letters
    Enumerate {
        a: String,
    },
    /// Membership of a pair
    Accepts {
        a: String,
        u: String,
        v: String,
    },
    /// Whether the automaton is a complete permutation automaton
    Permutation {
        a: String,
    },
}

#[derive(Subcommand, Debug)]
enum OracleCommand {
    /// Compare the syntactic algebra with bounded congruence classes
    Verify {
        input: String,
        #[arg(long, value_enum)]
        variant: Option<VariantArg>,
    },
    /// Bounded congruence classes
    Nerode {
        input: String,
        #[arg(long, value_enum)]
        variant: Option<VariantArg>,
        /// Only classes of this type
        #[arg(long)]
        tag: Option<String>,
    },
    /// Try to split the relation into products of languages
    Decompose { input: String },
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum VariantArg {
    Unital,
    Positive,
    Naive,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum MethodArg {
    Auto,
    Lifting,
    Deps,
    Pointlikes,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum CompareArg {
    Empty,
    Universal,
    Included,
    Equivalent,
}

/// Errors of the front end: library errors and unreadable files.
#[derive(Debug, thiserror::Error)]
enum CliError {
    #[error(transparent)]
    Lib(#[from] Error),
    #[error("cannot read `{path}`: {message}")]
    Io { path: String, message: String },
    #[error("{0}")]
    Usage(String),
}

impl CliError {
    fn code(&self) -> &'static str {
        match self {
            CliError::Io { .. } => "io",
            CliError::Usage(_) => "usage",
            CliError::Lib(e) => match e {
                Error::Parse { .. } => "parse",
                Error::UnknownLetter(_) => "unknown-letter",
                Error::InvalidAlphabet(_) | Error::EmptyAlphabet => "alphabet",
                Error::AlphabetMismatch(..) => "alphabet-mismatch",
                Error::ModeMismatch(_) | Error::VariantMismatch(_) => "mode-mismatch",
                Error::NotDeterministicComplete => "not-deterministic",
                Error::BoundExceeded { .. } => "bound-exceeded",
                Error::SizeGuardExceeded { .. } => "guard-exceeded",
                Error::EmptyWordInPositive | Error::BadTypedWord { .. } => "bad-word",
                Error::NonClosedAccepting(..) => "non-closed",
                Error::NotACongruence(_) => "not-a-congruence",
                Error::IllTypedTerm(_) | Error::IncompatibleProduct(_) => "ill-typed",
                Error::InvalidAlgebra(_) => "invalid-algebra",
                Error::UnknownFixture(_) => "unknown-fixture",
                Error::UnknownVariety(_) => "unknown-variety",
                Error::VarietyKindMismatch(_) => "variety-kind",
                Error::NotApplicable(_) => "not-applicable",
            },
        }
    }

    fn exit_code(&self) -> i32 {
        match self {
            CliError::Lib(e) if e.is_guard() => EXIT_GUARD,
            _ => EXIT_INPUT,
        }
    }
}

type CliResult<T> = std::result::Result<T, CliError>;

/// Rendered output and exit code of one command.
struct Output {
    text: String,
    code: i32,
}

impl Output {
    fn ok(text: String) -> Self {
        Output { text, code: EXIT_YES }
    }

    fn answer(text: String, yes: bool) -> Self {
        Output {
            text,
            code: if yes { EXIT_YES } else { EXIT_NO },
        }
    }
}

/// Parses `argv` (including the program name), runs the command and writes its output.
pub fn run<I, T>(argv: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_INPUT } else { EXIT_YES };
            let rendered = e.render().to_string();
            if e.use_stderr() {
                let _ = write!(err, "{rendered}");
            } else {
                let _ = write!(out, "{rendered}");
            }
            return code;
        }
    };
    match execute(&cli) {
        Ok(o) => {
            let _ = write!(out, "{}", o.text);
            if !o.text.ends_with('\n') && !o.text.is_empty() {
                let _ = writeln!(out);
            }
            o.code
        }
        Err(e) => {
            if cli.json {
                let v = json!({ "error": { "code": e.code(), "message": e.to_string() } });
                let _ = writeln!(err, "{v}");
            } else {
                let _ = writeln!(err, "error[{}]: {e}", e.code());
            }
            e.exit_code()
        }
    }
}

fn read_file(path: &str) -> CliResult<String> {
    std::fs::read_to_string(path).map_err(|e| CliError::Io {
        path: path.to_string(),
        message: e.to_string(),
    })
}

/// An automaton file, or `fixture:<name>` for a built-in relation.
fn load_relation(spec: &str) -> CliResult<Relation> {
    if let Some(name) = spec.strip_prefix("fixture:") {
        return Ok(fixtures::by_name(name)?);
    }
    Ok(parse_relation(&read_file(spec)?)?)
}

fn load_algebra(path: &str) -> CliResult<SyncAlgebra> {
    Ok(parse_algebra(&read_file(path)?, true)?)
}

fn looks_like_algebra(text: &str) -> bool {
    text.lines()
        .map(|l| l.trim_start())
        .any(|l| l.starts_with("variant:") || l.starts_with("elements "))
}

fn pretty(v: &impl serde::Serialize) -> String {
    serde_json::to_string_pretty(v).expect("serializable") + "\n"
}

fn algebra_json(alg: &SyncAlgebra) -> Value {
    json!({
        "variant": alg.variant().name(),
        "sizes": alg.sizes(),
        "elements": (0..alg.len()).map(|i| json!({ "name": alg.name(i), "tag": alg.tag(i) })).collect::<Vec<_>>(),
        "dep": alg.dep_pairs().iter().map(|&(a, b)| [alg.name(a), alg.name(b)]).collect::<Vec<_>>(),
    })
}

fn render_relation(cli: &Cli, r: &Relation) -> String {
    if cli.dot {
        r.automaton.to_dot()
    } else {
        r.to_text()
    }
}

fn execute(cli: &Cli) -> CliResult<Output> {
    let monoid_guard = cli.guard.unwrap_or(MONOID_GUARD);
    match &cli.command {
        Command::Synt { input, variant, trace } => synt(cli, input, *variant, *trace, monoid_guard),
        Command::Decide(args) => decide_cmd(cli, args, monoid_guard),
        Command::Op(op) => op_cmd(cli, op),
        Command::Compose { a, b, literal, check } => compose_cmd(cli, a, b, *literal, *check, monoid_guard),
        Command::CheckAlgebra {
            input,
            consolidate: show,
        } => check_algebra(cli, input, *show),
        Command::Oracle(o) => oracle_cmd(cli, o, monoid_guard),
        Command::Fixtures { name } => fixtures_cmd(cli, name.as_deref()),
        Command::ExportDot { input } => {
            let text = if let Some(name) = input.strip_prefix("fixture:") {
                fixtures::by_name(name)?.to_text()
            } else {
                read_file(input)?
            };
            if looks_like_algebra(&text) {
                Ok(Output::ok(parse_algebra(&text, false)?.to_dot()))
            } else {
                Ok(Output::ok(parse_relation(&text)?.automaton.to_dot()))
            }
        }
    }
}

fn synt(cli: &Cli, input: &str, variant: VariantArg, trace: bool, guard: usize) -> CliResult<Output> {
    let r = load_relation(input)?;
    let (r, variant) = match variant {
        VariantArg::Naive => {
            let n = naive_syntactic_algebra(&r)?;
            if cli.json {
                return Ok(Output::ok(pretty(
                    &json!({ "variant": "naive", "sizes": n.sizes(), "text": n.to_text() }),
                )));
            }
            return Ok(Output::ok(n.to_text()));
        }
        VariantArg::Unital => (r, Variant::Unital),
        VariantArg::Positive => (as_plus(&r), Variant::Positive),
    };
    let syn = syntactic_sync_algebra_with(&r, variant, guard)?;
    let alg = syn.algebra();
    if cli.json {
        let mut v = algebra_json(alg);
        v["accepting"] = syn.accepting().iter().map(|i| alg.name(i)).collect::<Vec<_>>().into();
        v["trace"] = serde_json::to_value(&syn.trace).expect("serializable");
        return Ok(Output::ok(pretty(&v)));
    }
    if cli.dot {
        return Ok(Output::ok(alg.to_dot()));
    }
    let mut text = alg.to_text();
    let acc: Vec<&str> = syn.accepting().iter().map(|i| alg.name(i)).collect();
    text.push_str(&format!("# accepting: {}\n", acc.join(" ")));
    if trace {
        let t = &syn.trace;
        text.push_str(&format!(
            "# minimal dfa states: {}\n# transition monoid: {}\n# induced carriers: {:?}\n# syntactic carriers: {:?}\n",
            t.dfa_states, t.monoid_size, t.induced_sizes, t.class_counts
        ));
    }
    Ok(Output::ok(text))
}

fn decide_cmd(cli: &Cli, args: &DecideArgs, monoid_guard: usize) -> CliResult<Output> {
    let r = load_relation(&args.input)?;
    let mut guards = Guards {
        monoid: monoid_guard,
        ..Guards::default()
    };
    if let Some(g) = args.closure_guard {
        guards.closure = g;
    }
    let method = match args.method {
        MethodArg::Auto => MethodChoice::Auto,
        MethodArg::Lifting => MethodChoice::Lifting,
        MethodArg::Deps => MethodChoice::Deps,
        MethodArg::Pointlikes => MethodChoice::Pointlikes,
    };
    if args.variety.as_deref() == Some("all") {
        let table = classify(&r, guards)?;
        let text = if cli.json {
            pretty(&table)
        } else {
            table.iter().map(|v| v.to_string()).collect()
        };
        return Ok(Output::ok(text));
    }
    let spec = match (&args.variety, &args.equations) {
        (Some(name), _) => VarietySpec::builtin(name)?,
        (None, Some(path)) => {
            let e: EqualitySet = parse_equations(&read_file(path)?)?;
            VarietySpec::custom(e)
        }
        (None, None) => return Err(CliError::Usage("either --variety or --equations is required".into())),
    };
    let v = decide(&r, &spec, method, guards)?;
    let text = if cli.json { pretty(&v) } else { v.to_string() };
    Ok(Output::answer(text, v.is_v_relation))
}

fn op_cmd(cli: &Cli, op: &OpCommand) -> CliResult<Output> {
    let binary = |a: &str, b: &str, op: BoolOp| -> CliResult<Output> {
        let r = boolean_combine(op, &load_relation(a)?, Some(&load_relation(b)?))?;
        Ok(Output::ok(render_relation(cli, &r)))
    };
    match op {
        OpCommand::Union { a, b } => binary(a, b, BoolOp::Union),
        OpCommand::Intersection { a, b } => binary(a, b, BoolOp::Intersection),
        OpCommand::Difference { a, b } => binary(a, b, BoolOp::Difference),
        OpCommand::Complement { a } => {
            let r = boolean_combine(BoolOp::Complement, &load_relation(a)?, None)?;
            Ok(Output::ok(render_relation(cli, &r)))
        }
        OpCommand::Compose { a, b } => {
            let r = compose_relations(&load_relation(a)?, &load_relation(b)?)?;
            Ok(Output::ok(render_relation(cli, &r)))
        }
        OpCommand::Minimize { a } => {
            let r = load_relation(a)?;
            let m = Relation::new(determinize_minimize(&r.automaton), r.mode);
            Ok(Output::ok(render_relation(cli, &m)))
        }
        OpCommand::Compare { kind, a, b } => {
            let kind = match kind {
                CompareArg::Empty => CompareKind::Empty,
                CompareArg::Universal => CompareKind::Universal,
                CompareArg::Included => CompareKind::Included,
                CompareArg::Equivalent => CompareKind::Equivalent,
            };
            let b = b.as_deref().map(load_relation).transpose()?;
            let c = compare(kind, &load_relation(a)?, b.as_ref())?;
            let text = if cli.json {
                pretty(&c)
            } else {
                match &c.witness {
                    None => "yes\n".to_string(),
                    Some((u, v)) => format!("no, witness ({u:?}, {v:?})\n"),
                }
            };
            Ok(Output::answer(text, c.holds))
        }
        OpCommand::Enumerate { a } => {
            let pairs = enumerate_pairs(&load_relation(a)?, cli.max_len.unwrap_or(4))?;
            let text = if cli.json {
                pretty(&pairs)
            } else {
                pairs.iter().map(|(u, v)| format!("({u:?}, {v:?})\n")).collect()
            };
            Ok(Output::ok(text))
        }
        OpCommand::Accepts { a, u, v } => {
            let r = load_relation(a)?;
            for w in [u, v] {
                for c in w.chars() {
                    if !r.alphabet().contains(c) {
                        return Err(Error::UnknownLetter(c.to_string()).into());
                    }
                }
            }
            let yes = r.accepts_pair(u, v);
            Ok(Output::answer(if yes { "yes\n" } else { "no\n" }.to_string(), yes))
        }
        OpCommand::Permutation { a } => {
            let yes = is_permutation_automaton(&load_relation(a)?.automaton)?;
            Ok(Output::answer(if yes { "yes\n" } else { "no\n" }.to_string(), yes))
        }
    }
}

fn compose_cmd(cli: &Cli, a: &str, b: &str, literal: bool, check: bool, guard: usize) -> CliResult<Output> {
    let ta = if a.starts_with("fixture:") {
        String::new()
    } else {
        read_file(a)?
    };
    if looks_like_algebra(&ta) {
        let c = compose_algebras(&load_algebra(a)?, &load_algebra(b)?, DEFAULT_COMPOSE_GUARD)?;
        return Ok(Output::ok(if cli.json {
            pretty(&algebra_json(&c))
        } else {
            c.to_text()
        }));
    }
    let (r, s) = (as_plus(&load_relation(a)?), as_plus(&load_relation(b)?));
    let phi = syntactic_sync_algebra_with(&r, Variant::Positive, guard)?.morphism;
    let psi = syntactic_sync_algebra_with(&s, Variant::Positive, guard)?.morphism;
    let m = if literal {
        compose_recognizers(&phi, &psi, DEFAULT_COMPOSE_GUARD)?
    } else {
        compose_recognizers_exact(&phi, &psi, DEFAULT_COMPOSE_GUARD)?
    };
    let alg = m.target();
    if !check {
        return Ok(Output::ok(if cli.json {
            pretty(&algebra_json(alg))
        } else {
            alg.to_text()
        }));
    }
    let expected = compose_relations(&r, &s)?;
    let c = compare(CompareKind::Equivalent, &recognizer_to_dfa(&m)?, Some(&expected))?;
    let text = if cli.json {
        pretty(&json!({ "sizes": alg.sizes(), "agrees": c.holds, "witness": c.witness }))
    } else {
        match &c.witness {
            None => format!(
                "composed recognizer with carriers {:?} agrees with the composed relation\n",
                alg.sizes()
            ),
            Some((u, v)) => format!("recognizer and composed relation differ on ({u:?}, {v:?})\n"),
        }
    };
    Ok(Output::answer(text, c.holds))
}

fn check_algebra(cli: &Cli, input: &str, show: bool) -> CliResult<Output> {
    let alg = parse_algebra(&read_file(input)?, false)?;
    let violations = alg.validate();
    let valid = violations.is_empty();
    let mut text = if cli.json {
        pretty(&json!({ "valid": valid, "sizes": alg.sizes(), "violations": violations }))
    } else if valid {
        format!("valid {} algebra, carriers {:?}\n", alg.variant(), alg.sizes())
    } else {
        violations.iter().map(|v| format!("violation: {v}\n")).collect()
    };
    if show && valid && !cli.json {
        let c = consolidate(&alg);
        let s = &c.semigroup;
        text.push_str(&format!("consolidation: {} elements\n", s.len()));
        for x in 0..s.len() {
            let row: Vec<&str> = (0..s.len()).map(|y| s.name(s.mul(x, y))).collect();
            text.push_str(&format!("  {}: {}\n", s.name(x), row.join(" ")));
        }
    }
    Ok(Output::answer(text, valid))
}

fn variant_for(r: &Relation, v: Option<VariantArg>) -> CliResult<Variant> {
    match v {
        None => Ok(match r.mode {
            syncalg::Mode::Star => Variant::Unital,
            syncalg::Mode::Plus => Variant::Positive,
        }),
        Some(VariantArg::Unital) => Ok(Variant::Unital),
        Some(VariantArg::Positive) => Ok(Variant::Positive),
        Some(VariantArg::Naive) => Err(CliError::Usage("the oracle has no naive variant".into())),
    }
}

fn oracle_cmd(cli: &Cli, o: &OracleCommand, guard: usize) -> CliResult<Output> {
    let cfg = OracleConfig::new(cli.max_len.unwrap_or(8), 0)?;
    match o {
        OracleCommand::Verify { input, variant } => {
            let r = load_relation(input)?;
            let v = variant_for(&r, *variant)?;
            let r = if v == Variant::Positive { as_plus(&r) } else { r };
            let syn = syntactic_sync_algebra_with(&r, v, guard)?;
            let rep = verify_syntactic(&r, &syn, &cfg)?;
            let text = if cli.json { pretty(&rep) } else { rep.to_string() };
            Ok(Output::answer(text, rep.ok()))
        }
        OracleCommand::Nerode { input, variant, tag } => {
            let r = load_relation(input)?;
            let v = variant_for(&r, *variant)?;
            let r = if v == Variant::Positive { as_plus(&r) } else { r };
            let tag: Option<Tag> = match tag {
                None => None,
                Some(t) => Some(
                    Tag::ALL
                        .into_iter()
                        .find(|x| x.name() == t)
                        .ok_or_else(|| CliError::Usage(format!("unknown tag `{t}`")))?,
                ),
            };
            let n = nerode_classes(&r, v, &cfg)?;
            if cli.json {
                let classes: Vec<_> = n.classes.iter().filter(|c| tag.is_none_or(|t| c.tag == t)).collect();
                let cross: Vec<_> = n
                    .cross
                    .iter()
                    .map(|&(i, j)| [&n.classes[i].representative, &n.classes[j].representative])
                    .collect();
                return Ok(Output::ok(pretty(&json!({
                    "variant": v.name(),
                    "bound": n.bound,
                    "counts": n.counts(),
                    "classes": classes,
                    "cross": cross,
                }))));
            }
            let mut text = format!("bound {}, classes per type {:?}\n", n.bound, n.counts());
            for t in Tag::ALL.into_iter().filter(|t| tag.is_none_or(|x| x == *t)) {
                let reps: Vec<String> = n
                    .of_tag(t)
                    .map(|c| format!("{}{}", c.representative, if c.accepted { " (accepted)" } else { "" }))
                    .collect();
                text.push_str(&format!("{t}: {}\n", reps.join(", ")));
            }
            if tag.is_none() {
                for &(i, j) in &n.cross {
                    text.push_str(&format!(
                        "dep: {} {}\n",
                        n.classes[i].representative, n.classes[j].representative
                    ));
                }
            }
            Ok(Output::ok(text))
        }
        OracleCommand::Decompose { input } => {
            let r = load_relation(input)?;
            let parts = recognizable_decomposition(&r, &cfg)?;
            let text = if cli.json {
                pretty(&parts)
            } else if parts.is_empty() {
                "empty union\n".to_string()
            } else {
                parts
                    .iter()
                    .map(|p| format!("{{{}}} x {{{}}}\n", p.left.join(", "), p.right.join(", ")))
                    .collect()
            };
            Ok(Output::ok(text))
        }
    }
}

fn fixtures_cmd(cli: &Cli, name: Option<&str>) -> CliResult<Output> {
    match name {
        Some(n) => {
            let r = fixtures::by_name(n)?;
            Ok(Output::ok(render_relation(cli, &r)))
        }
        None => {
            if cli.json {
                let list: Vec<Value> = FIXTURES
                    .iter()
                    .map(|f| json!({ "name": f.name, "description": f.description }))
                    .collect();
                return Ok(Output::ok(pretty(&list)));
            }
            let width = FIXTURES.iter().map(|f| f.name.len()).max().unwrap_or(0);
            let mut text: String = FIXTURES
                .iter()
                .map(|f| format!("{:width$}  {}\n", f.name, f.description))
                .collect();
            text.push_str(&format!(
                "{:width$}  {}\n",
                "zpq:P:Q:I:J", "length difference mod P in I or mod Q in J"
            ));
            text.push_str(&format!(
                "{:width$}  {}\n",
                "counterex-mod-P", "left word longer by a multiple of P (plus mode)"
            ));
            Ok(Output::ok(text))
        }
    }
}
