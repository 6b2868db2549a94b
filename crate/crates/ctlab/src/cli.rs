use std::ffi::OsString;
use std::io::Write;

use anyhow::{anyhow, bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use ctlab_core::coding::{decode, encode, Syntax};
use ctlab_core::countermodels::{audit_construction, construct, random_cut_model, Construction, CutModel, StepAction};
use ctlab_core::derivations::{check_yablo_claim, yablo_transform_with};
use ctlab_core::disjunctions::BuilderKind;
use ctlab_core::ev::{ev_construct, random_scenario, DEFAULT_MAX_VALUE};
use ctlab_core::principles::{Outcome, QuantifierVariant};
use ctlab_core::semantics::{Evaluator, Verdict};
use ctlab_core::syntax::{parse_formula, parse_term};
use num_bigint::BigUint;
use serde_json::{json, Value};

use crate::ast::{formula_to_json, term_to_json};
use crate::report::{envelope, exit_code, principle_json, render, EXIT_ERROR, EXIT_PASS, EXIT_VIOLATION};
use crate::{gen, input, suite};

#[derive(Parser, Debug)]
#[command(name = "ctlab", version, about = "Finite checks for compositional truth over arithmetic")]
struct Cli {
    /// Search budget for bounded evaluation and quantifier instances.
    #[arg(long, global = true, default_value_t = ctlab_core::semantics::DEFAULT_BUDGET)]
    budget: u64,
    /// Disjunct count from which a disjunction counts as long.
    #[arg(long, global = true)]
    long_cut: Option<usize>,
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Terms the quantifier clauses range over.
    #[arg(long, global = true, value_enum, default_value_t = Variant::Numeral)]
    variant: Variant,
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Variant {
    Numeral,
    Term,
}

impl From<Variant> for QuantifierVariant {
    fn from(v: Variant) -> QuantifierVariant {
        match v {
            Variant::Numeral => QuantifierVariant::Numeral,
            Variant::Term => QuantifierVariant::ClosedTerm,
        }
    }
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Format {
    Json,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Kind {
    Left,
    Balanced,
    Outer,
    Negconj,
    Selective,
}

impl From<Kind> for BuilderKind {
    fn from(k: Kind) -> BuilderKind {
        match k {
            Kind::Left => BuilderKind::LeftGrouped,
            Kind::Balanced => BuilderKind::Balanced,
            Kind::Outer => BuilderKind::QuantifiedOuter,
            Kind::Negconj => BuilderKind::NegatedConjunction,
            Kind::Selective => BuilderKind::Selective,
        }
    }
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Which {
    A,
    B,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Parse a formula (or a term) and print its normal form and tree.
    Parse {
        #[arg(long)]
        term: bool,
        text: String,
    },
    /// Code of a formula or term, or the syntax behind a code.
    Encode {
        #[arg(long, value_name = "CODE")]
        decode: Option<String>,
        #[arg(long)]
        term: bool,
        text: Option<String>,
    },
    /// Bounded evaluation of a sentence.
    Eval { text: String },
    /// Build a disjunction of sentences.
    #[command(subcommand)]
    Disj(DisjCommand),
    /// Derived truth-passing sequence and its claim check.
    #[command(subcommand)]
    Yablo(YabloCommand),
    /// Audit one principle on the data in an input file.
    Check {
        #[arg(long, value_parser = clap::builder::PossibleValuesParser::new(input::PRINCIPLES))]
        principle: String,
        #[arg(long)]
        input: String,
    },
    /// Staged satisfaction-class construction with its audits.
    #[command(subcommand)]
    Ev(EvCommand),
    /// Cut-model constructions separating the induction schemes.
    #[command(subcommand)]
    Cutmodel(CutCommand),
    /// Run the seeded check suite.
    Suite {
        /// Only checks whose id starts with this.
        #[arg(long)]
        only: Option<String>,
    },
}

#[derive(Subcommand, Debug)]
enum DisjCommand {
    Build {
        #[arg(long, value_enum, default_value_t = Kind::Left)]
        kind: Kind,
        #[arg(required = true)]
        items: Vec<String>,
    },
}

#[derive(Subcommand, Debug)]
enum YabloCommand {
    /// Derived sequence and claim check; random true sentences when no items are given.
    Run {
        #[arg(long, value_enum, default_value_t = Kind::Left)]
        builder: Kind,
        /// Length of the random sequence.
        #[arg(long, default_value_t = 8)]
        length: usize,
        items: Vec<String>,
    },
}

#[derive(Subcommand, Debug)]
enum EvCommand {
    Run(EvArgs),
}

#[derive(Args, Debug)]
struct EvArgs {
    /// Scenario file; a seeded random scenario when absent.
    scenario: Option<String>,
    /// `full` includes every audit's violations and notes.
    #[arg(long, default_value = "summary", value_parser = ["summary", "full"])]
    audit: String,
}

#[derive(Subcommand, Debug)]
enum CutCommand {
    Run(CutArgs),
}

#[derive(Args, Debug)]
struct CutArgs {
    #[arg(long, value_enum)]
    which: Which,
    #[arg(long, default_value_t = 2000)]
    size: u64,
    #[arg(long, default_value_t = 1000)]
    cut: u64,
    /// Sequence file; seeded random sequences when absent.
    #[arg(long)]
    seqs: Option<String>,
    #[arg(long, default_value_t = 300)]
    count: usize,
    #[arg(long, default_value_t = 50)]
    max_len: usize,
    #[arg(long)]
    long_threshold: Option<usize>,
    /// Include every step of the trace.
    #[arg(long)]
    trace: bool,
}

/// Runs the command line and returns the process exit code.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return e.exit_code();
        }
    };
    match dispatch(&cli) {
        Ok((out, code)) => {
            let mut stdout = std::io::stdout().lock();
            if stdout.write_all(render(&out).as_bytes()).is_err() {
                return EXIT_ERROR;
            }
            code
        }
        Err(e) => {
            eprintln!("error: {e:#}");
            EXIT_ERROR
        }
    }
}

fn vars_json(vs: &[ctlab_core::Var]) -> Value {
    json!(vs.iter().map(|v| format!("x{}", v.0)).collect::<Vec<_>>())
}

fn dispatch(cli: &Cli) -> Result<(Value, i32)> {
    let Format::Json = cli.format;
    let budget = cli.budget;
    match &cli.command {
        Command::Parse { term, text } => {
            let body = if *term {
                let t = parse_term(text)?;
                let mut vars = std::collections::BTreeSet::new();
                t.collect_vars(&mut vars);
                json!({
                    "kind": "term",
                    "printed": t.to_string(),
                    "ast": term_to_json(&t),
                    "free_vars": vars.iter().map(|v| format!("x{}", v.0)).collect::<Vec<_>>(),
                })
            } else {
                let f = parse_formula(text)?;
                json!({
                    "kind": "formula",
                    "printed": f.to_string(),
                    "ast": formula_to_json(&f),
                    "free_vars": vars_json(f.free_vars()),
                    "sentence": f.is_sentence(),
                    "depth": f.depth(),
                })
            };
            Ok((envelope("parse", body), EXIT_PASS))
        }
        Command::Encode { decode: Some(code), .. } => {
            let c: BigUint = code.trim().parse().map_err(|_| anyhow!("{code:?} is not a natural number"))?;
            let (kind, printed) = match decode(&c)? {
                Syntax::Term(t) => ("term", t.to_string()),
                Syntax::Formula(f) => ("formula", f.to_string()),
            };
            Ok((envelope("encode", json!({"code": c.to_string(), "kind": kind, "printed": printed})), EXIT_PASS))
        }
        Command::Encode { decode: None, term, text } => {
            let text = text.as_deref().context("encode needs TEXT or --decode CODE")?;
            let x = if *term { Syntax::Term(parse_term(text)?) } else { Syntax::Formula(parse_formula(text)?) };
            let c = encode(&x);
            let body = json!({"code": c.to_string(), "bits": c.bits(), "kind": suite::syntax_kind(&x)});
            Ok((envelope("encode", body), EXIT_PASS))
        }
        Command::Eval { text } => {
            let f = parse_formula(text)?;
            if !f.is_sentence() {
                bail!("{f} has free variables {}", vars_json(f.free_vars()));
            }
            let v = Evaluator::new(budget).sentence(&f)?;
            let certificate: Vec<Value> = v
                .certificate()
                .iter()
                .map(|(x, n)| json!({"var": format!("x{}", x.0), "value": n.to_string()}))
                .collect();
            let code = if matches!(v, Verdict::Unknown) { EXIT_ERROR } else { EXIT_PASS };
            let body = json!({"sentence": f.to_string(), "budget": budget, "verdict": v.label(), "certificate": certificate});
            Ok((envelope("eval", body), code))
        }
        Command::Disj(DisjCommand::Build { kind, items }) => {
            let fs = input::sentences(items)?;
            let kind = BuilderKind::from(*kind);
            let d = input::build(kind, &fs)?;
            let body = json!({
                "kind": kind.name(),
                "items": fs.len(),
                "sentence": d.to_string(),
                "flat_size": d.flat_size(),
                "depth": d.depth(),
            });
            Ok((envelope("disj build", body), EXIT_PASS))
        }
        Command::Yablo(YabloCommand::Run { builder, length, items }) => {
            let fs = if items.is_empty() {
                let mut rng = gen::stream(cli.seed, 5);
                (0..(*length).max(1)).map(|_| gen::true_sentence(&mut rng)).collect()
            } else {
                input::sentences(items)?
            };
            let kind = BuilderKind::from(*builder);
            let ys = yablo_transform_with(&fs, &kind)?;
            let rep = check_yablo_claim(&ys, budget)?;
            let body = json!({
                "builder": kind.name(),
                "length": rep.length,
                "source": ys.source.iter().map(ToString::to_string).collect::<Vec<_>>(),
                "dag_size": rep.dag_size,
                "last_flat_size": rep.last_flat_size,
                "structure_faults": rep.structure_faults.iter().map(|f| json!({"index": f.index, "what": f.what})).collect::<Vec<_>>(),
                "first_derived_failure": rep.first_derived_failure,
                "first_source_failure": rep.first_source_failure,
                "verdict": if rep.passed() { "pass" } else { "fail" },
            });
            Ok((envelope("yablo run", body), if rep.passed() { EXIT_PASS } else { EXIT_VIOLATION }))
        }
        Command::Check { principle, input: path } => {
            let v = input::read_json(path)?;
            let rep = input::run_check(principle, &v, cli.variant.into(), budget)?;
            Ok((envelope("check", principle_json(&rep)), exit_code(rep.verdict())))
        }
        Command::Ev(EvCommand::Run(args)) => ev_run(cli, args),
        Command::Cutmodel(CutCommand::Run(args)) => cut_run(cli, args),
        Command::Suite { only } => {
            let cfg = suite::SuiteConfig { seed: cli.seed, budget, only: only.clone() };
            let results = suite::run_suite(&cfg);
            if results.is_empty() {
                bail!("no check id starts with {:?}", only.as_deref().unwrap_or(""));
            }
            let verdict = suite::overall(&results);
            Ok((suite::suite_json(&cfg, &results), exit_code(verdict)))
        }
    }
}

fn ev_run(cli: &Cli, args: &EvArgs) -> Result<(Value, i32)> {
    let sc = match &args.scenario {
        Some(path) => input::ev_scenario(&input::read_json(path)?, cli.long_cut)?,
        None => {
            let mut rng = gen::stream(cli.seed, 8);
            let sc = random_scenario(&mut gen::draws(&mut rng), cli.long_cut.unwrap_or(4), DEFAULT_MAX_VALUE);
            sc
        }
    };
    let (result, report) = ev_construct(&sc)?;
    let audits: Vec<Value> = if args.audit == "full" {
        report.audits.iter().map(principle_json).collect()
    } else {
        report
            .audits
            .iter()
            .map(|a| json!({"principle": a.principle, "verdict": a.verdict().label(), "instances": a.instances}))
            .collect()
    };
    let pairs: Vec<Value> = result
        .pairs
        .iter()
        .map(|(f, a)| {
            let asg: serde_json::Map<String, Value> =
                a.iter().map(|(x, n)| (format!("x{}", x.0), json!(n.to_string()))).collect();
            json!({"formula": f.to_string(), "assignment": asg})
        })
        .collect();
    let verdict = if report.passed() { Outcome::Pass } else { Outcome::Fail };
    let body = json!({
        "environment": sc.environment.len(),
        "targets": sc.targets.iter().map(ToString::to_string).collect::<Vec<_>>(),
        "long_cut": sc.long_cut,
        "max_value": sc.max_value,
        "classes": report.classes,
        "considered_classes": report.considered_classes,
        "stages": report.stages,
        "relation_pairs": report.relation.pairs.len(),
        "domain": result.domain.iter().map(ToString::to_string).collect::<Vec<_>>(),
        "pairs": pairs,
        "audits": audits,
        "verdict": verdict.label(),
    });
    Ok((envelope("ev run", body), exit_code(verdict)))
}

fn cut_run(cli: &Cli, args: &CutArgs) -> Result<(Value, i32)> {
    let m = match &args.seqs {
        Some(path) => CutModel::new(args.size, args.cut, input::cut_sequences(&input::read_json(path)?)?)?,
        None => {
            let mut rng = gen::stream(cli.seed, 9);
            let m = random_cut_model(&mut gen::draws(&mut rng), args.size, args.cut, args.count, args.max_len)?;
            m
        }
    };
    let m = match args.long_threshold {
        Some(k) => m.with_long_threshold(k),
        None => m,
    };
    let which = match args.which {
        Which::A => Construction::A,
        Which::B => Construction::B,
    };
    let trace = construct(&m, which)?;
    let audit = audit_construction(&trace, &m);
    let (a, b) = trace.snapshot(trace.steps.len());
    let mut body = json!({
        "construction": which.name(),
        "size": m.size,
        "cut": m.cut,
        "sequences": m.sequences.len(),
        "long_threshold": m.long_threshold,
        "extensions": trace.extensions(),
        "skips": trace.skips().iter().map(|(i, r)| json!({"step": i, "reason": r})).collect::<Vec<_>>(),
        "positive_size": a.len(),
        "negative_size": b.len(),
        "union_size": trace.t.len(),
        "audit": principle_json(&audit),
    });
    if args.trace {
        body["steps"] = trace
            .steps
            .iter()
            .map(|s| match s {
                StepAction::Keep => json!({"action": "keep"}),
                StepAction::Extend { a, b } => json!({"action": "extend", "a": a, "b": b}),
                StepAction::Skip { reason } => json!({"action": "skip", "reason": reason}),
            })
            .collect();
    }
    Ok((envelope("cutmodel run", body), exit_code(audit.verdict())))
}
