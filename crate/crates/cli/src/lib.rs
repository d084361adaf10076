//! Command-line front end. [`run`] takes the arguments and output streams so tests can
//! drive it without spawning processes.

use std::collections::BTreeSet;
use std::io::Write;
use std::path::{Path, PathBuf};

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand};
use orbits::argumentation::{self, classify_symmetry, is_coherent, kb_to_psetaf, Psetaf, Semantics};
use orbits::dllite::ConjunctiveQuery;
use orbits::io;
use orbits::kb::KnowledgeBase;
use orbits::lp;
use orbits::oracle;
use orbits::repairs::{self, Refutation};
use orbits::semantics::{self, Mode};
use orbits::{FactSet, Limits, RepairKind, ValidatedKb};
use serde_json::{json, Value};

#[derive(Parser, Debug)]
#[command(name = "orbits", version, about = "Optimal repairs and argumentation for prioritized knowledge bases")]
struct Cli {
    /// Print machine-readable JSON.
    #[arg(long, global = true)]
    json: bool,
    /// Ignore the size guards.
    #[arg(long, global = true)]
    force: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Minimal conflicts, one per line.
    Conflicts { file: PathBuf },
    /// Optimal repairs of the given kind, one per line.
    Repairs {
        #[arg(long)]
        kind: RepairKind,
        file: PathBuf,
    },
    /// Whether a set of facts is an optimal repair.
    CheckRepair {
        #[arg(long)]
        kind: RepairKind,
        file: PathBuf,
        /// Comma-separated fact identifiers.
        #[arg(long)]
        set: String,
    },
    /// Query entailment under repair-based or grounded semantics.
    Entail(EntailArgs),
    /// The elected facts.
    Elect { file: PathBuf },
    /// The grounded extension as a set of facts.
    Grounded {
        #[arg(long)]
        depth: Option<usize>,
        file: PathBuf,
    },
    /// The preferred repair of a partial preorder given in a separate file.
    Partialpr { file: PathBuf, preorder: PathBuf },
    /// Argumentation frameworks.
    Af {
        #[command(subcommand)]
        command: AfCommand,
    },
    /// Logic programs.
    Lp {
        #[command(subcommand)]
        command: LpCommand,
    },
    /// Brute-force cross-checks.
    Oracle {
        #[command(subcommand)]
        command: OracleCommand,
    },
}

#[derive(Args, Debug)]
struct EntailArgs {
    #[arg(long, conflicts_with = "sem", required_unless_present = "sem")]
    kind: Option<RepairKind>,
    #[arg(long, requires = "kind")]
    mode: Option<Mode>,
    /// `grounded` instead of a repair kind.
    #[arg(long)]
    sem: Option<String>,
    /// Stop the grounded computation after this many rounds.
    #[arg(long, requires = "sem")]
    depth: Option<usize>,
    file: PathBuf,
    queries: PathBuf,
}

#[derive(Subcommand, Debug)]
enum AfCommand {
    /// The framework of a knowledge base in SETAF format.
    Export { file: PathBuf },
    /// Extensions under a semantics, one per line.
    Extensions {
        #[arg(long)]
        sem: Semantics,
        file: PathBuf,
    },
    /// Size, symmetry and coherence of a framework.
    Analyze { file: PathBuf },
}

#[derive(Subcommand, Debug)]
enum LpCommand {
    /// Print the program for a framework or a knowledge base.
    Emit {
        #[command(subcommand)]
        target: EmitTarget,
    },
    /// Well-founded model of a program.
    Wfs { file: PathBuf },
}

#[derive(Subcommand, Debug)]
enum EmitTarget {
    /// Grounded-extension program for a SETAF file.
    Setaf { file: PathBuf },
    /// Grounded-extension program for a knowledge-base file, with its facts.
    Kb { file: PathBuf },
    /// Stratified program for a bounded number of rounds.
    Gamma {
        #[arg(long)]
        depth: usize,
        file: PathBuf,
    },
}

#[derive(Subcommand, Debug)]
enum OracleCommand {
    /// Compare the main algorithms with the oracles on random instances.
    Verify {
        #[arg(long, default_value_t = 200)]
        trials: usize,
        #[arg(long, default_value_t = 1)]
        seed: u64,
    },
}

/// Exit status: success or a positive answer.
pub const EXIT_YES: i32 = 0;
/// Exit status: a negative answer.
pub const EXIT_NO: i32 = 1;
/// Exit status: usage or input error.
pub const EXIT_ERROR: i32 = 2;

struct Report {
    text: String,
    json: Value,
    status: i32,
}

impl Report {
    fn ok(text: String, json: Value) -> Self {
        Report { text, json, status: EXIT_YES }
    }
}

/// Runs the command line and returns the exit status.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let status = if e.use_stderr() { EXIT_ERROR } else { EXIT_YES };
            let rendered = e.render().to_string();
            let _ = if e.use_stderr() { write!(err, "{rendered}") } else { write!(out, "{rendered}") };
            return status;
        }
    };
    match execute(&cli) {
        Ok(report) => {
            let written = if cli.json {
                writeln!(out, "{}", serde_json::to_string_pretty(&report.json).unwrap_or_default())
            } else {
                write!(out, "{}", report.text)
            };
            if written.is_err() {
                return EXIT_ERROR;
            }
            report.status
        }
        Err(e) => {
            let _ = writeln!(err, "error: {e:#}");
            EXIT_ERROR
        }
    }
}

fn read(path: &Path) -> Result<String> {
    std::fs::read_to_string(path).with_context(|| format!("cannot read {}", path.display()))
}

fn limits(cli: &Cli) -> Limits {
    if cli.force {
        Limits::unbounded()
    } else {
        Limits::default()
    }
}

fn load_kb(cli: &Cli, path: &Path) -> Result<ValidatedKb> {
    let kb = io::parse_kb(&read(path)?).with_context(|| format!("in {}", path.display()))?;
    Ok(ValidatedKb::from_kb(kb).with_context(|| format!("in {}", path.display()))?.with_limits(limits(cli)))
}

fn load_setaf(path: &Path) -> Result<Psetaf> {
    io::parse_setaf(&read(path)?).with_context(|| format!("in {}", path.display()))
}

fn braces(names: &[String]) -> String {
    format!("{{{}}}", names.join(" "))
}

fn set_lines(names: &[Vec<String>]) -> String {
    names.iter().map(|n| braces(n) + "\n").collect()
}

fn sorted_names(kb: &ValidatedKb, sets: &[FactSet]) -> Vec<Vec<String>> {
    let mut v: Vec<Vec<String>> = sets.iter().map(|s| kb.names(s)).collect();
    v.sort();
    v
}

fn execute(cli: &Cli) -> Result<Report> {
    match &cli.command {
        Command::Conflicts { file } => {
            let kb = load_kb(cli, file)?;
            let names = sorted_names(&kb, &kb.conflicts().all_conflicts());
            Ok(Report::ok(set_lines(&names), json!({ "conflicts": names })))
        }
        Command::Repairs { kind, file } => {
            let kb = load_kb(cli, file)?;
            let names = sorted_names(&kb, &repairs::enumerate_optimal(&kb, *kind)?);
            Ok(Report::ok(set_lines(&names), json!({ "kind": kind.letter().to_string(), "repairs": names })))
        }
        Command::CheckRepair { kind, file, set } => check_repair(cli, *kind, file, set),
        Command::Entail(args) => entail(cli, args),
        Command::Elect { file } => {
            let kb = load_kb(cli, file)?;
            let names = kb.names(&semantics::elect(&kb));
            Ok(Report::ok(braces(&names) + "\n", json!({ "elect": names })))
        }
        Command::Grounded { depth, file } => {
            let kb = load_kb(cli, file)?;
            let set = match depth {
                Some(d) => semantics::grounded_approx_set(&kb, *d),
                None => semantics::grounded_set(&kb),
            };
            let names = kb.names(&set);
            Ok(Report::ok(braces(&names) + "\n", json!({ "grounded": names, "depth": depth })))
        }
        Command::Partialpr { file, preorder } => {
            let kb = load_kb(cli, file)?;
            let pre = io::parse_preorder(&read(preorder)?, kb.abox())
                .with_context(|| format!("in {}", preorder.display()))?;
            let names = kb.names(&semantics::partial_pr(&kb, &pre)?);
            Ok(Report::ok(braces(&names) + "\n", json!({ "partialpr": names })))
        }
        Command::Af { command } => af(cli, command),
        Command::Lp { command } => lp_command(cli, command),
        Command::Oracle { command: OracleCommand::Verify { trials, seed } } => {
            let report = oracle::verify(*trials, *seed)?;
            let mut text = format!("trials {}\nchecks {}\nfailures {}\n", report.trials, report.checks, report.failures.len());
            for f in &report.failures {
                text.push_str(f);
                text.push('\n');
            }
            let json = json!({ "trials": report.trials, "checks": report.checks, "failures": report.failures });
            Ok(Report { text, json, status: if report.passed() { EXIT_YES } else { EXIT_NO } })
        }
    }
}

fn check_repair(cli: &Cli, kind: RepairKind, file: &Path, set: &str) -> Result<Report> {
    let kb = load_kb(cli, file)?;
    let ids: Vec<&str> = set.split(',').map(str::trim).filter(|s| !s.is_empty()).collect();
    let candidate = kb.abox().resolve(ids)?;
    let check = repairs::check_repair(&kb, &candidate, kind)?;
    let names = |s: &FactSet| kb.names(s);
    let (text, detail) = match &check.refutation {
        None => ("yes\n".to_owned(), Value::Null),
        Some(Refutation::Inconsistent(c)) => {
            (format!("no: contains the conflict {}\n", braces(&names(c))), json!({ "inconsistent": names(c) }))
        }
        Some(Refutation::NotMaximal(f)) => {
            (format!("no: {} can be added\n", kb.name(*f)), json!({ "not_maximal": kb.name(*f) }))
        }
        Some(Refutation::Improvement(w)) => {
            let flavor = match w.flavor {
                repairs::Flavor::Pareto => "Pareto",
                repairs::Flavor::Global => "global",
            };
            (
                format!(
                    "no: {flavor} improvement {} (entering {}, leaving {})\n",
                    braces(&names(&w.improved)),
                    braces(&names(&w.entering)),
                    braces(&names(&w.leaving))
                ),
                json!({
                    "improvement": {
                        "flavor": flavor,
                        "improved": names(&w.improved),
                        "entering": names(&w.entering),
                        "leaving": names(&w.leaving),
                    }
                }),
            )
        }
        Some(Refutation::GreedyDiverged(r)) => (
            format!("no: the greedy run favouring the candidate yields {}\n", braces(&names(r))),
            json!({ "greedy_result": names(r) }),
        ),
    };
    let status = if check.holds() { EXIT_YES } else { EXIT_NO };
    Ok(Report { text, json: json!({ "kind": kind.letter().to_string(), "holds": check.holds(), "refutation": detail }), status })
}

fn bindings(individuals: &[String], arity: usize) -> Vec<Vec<String>> {
    let mut out = vec![Vec::new()];
    for _ in 0..arity {
        out = out
            .into_iter()
            .flat_map(|b| {
                individuals.iter().map(move |i| {
                    let mut b = b.clone();
                    b.push(i.clone());
                    b
                })
            })
            .collect();
    }
    out
}

fn entail(cli: &Cli, args: &EntailArgs) -> Result<Report> {
    let kb = load_kb(cli, &args.file)?;
    let individuals = kb.abox().individuals();
    let queries: Vec<ConjunctiveQuery> = io::parse_queries(&read(&args.queries)?, &individuals)
        .with_context(|| format!("in {}", args.queries.display()))?;
    if queries.is_empty() {
        bail!("{} contains no query", args.queries.display());
    }
    let decide = |q: &orbits::dllite::Bcq| -> Result<bool> {
        Ok(match (&args.sem, args.kind) {
            (Some(sem), _) => {
                if sem != "grounded" {
                    bail!("unknown semantics `{sem}` (expected `grounded`)");
                }
                match args.depth {
                    Some(d) => semantics::grounded_approx_entails(&kb, q, d)?,
                    None => semantics::grounded_entails(&kb, q)?,
                }
            }
            (None, Some(kind)) => {
                let mode = args.mode.context("--mode is required with --kind")?;
                semantics::entails(&kb, q, kind, mode)?
            }
            (None, None) => bail!("either --kind or --sem is required"),
        })
    };
    let individuals: Vec<String> = individuals.into_iter().collect();
    let mut text = String::new();
    let mut results = Vec::new();
    let mut all_hold = true;
    for q in &queries {
        if q.is_boolean() {
            let holds = decide(&q.body)?;
            all_hold &= holds;
            text.push_str(&format!("{}: {}\n", q.name, if holds { "yes" } else { "no" }));
            results.push(json!({ "query": q.name, "holds": holds }));
        } else {
            let mut answers = Vec::new();
            for b in bindings(&individuals, q.answer_vars.len()) {
                if decide(&q.bind(&b))? {
                    text.push_str(&format!("{}({})\n", q.name, b.join(", ")));
                    answers.push(b);
                }
            }
            if answers.is_empty() {
                text.push_str(&format!("{}: no answers\n", q.name));
            }
            all_hold &= !answers.is_empty();
            results.push(json!({ "query": q.name, "answers": answers }));
        }
    }
    Ok(Report { text, json: json!({ "results": results }), status: if all_hold { EXIT_YES } else { EXIT_NO } })
}

fn af(cli: &Cli, command: &AfCommand) -> Result<Report> {
    match command {
        AfCommand::Export { file } => {
            let kb = load_kb(cli, file)?;
            let fw = kb_to_psetaf(&kb);
            let text = io::serialize_setaf(&fw.psetaf);
            Ok(Report::ok(text.clone(), json!({ "setaf": text })))
        }
        AfCommand::Extensions { sem, file } => {
            let p = load_setaf(file)?;
            let f = p.reduce();
            let mut exts: Vec<Vec<String>> = argumentation::extensions_with_limits(&f, *sem, &limits(cli))?
                .iter()
                .map(|e| f.set_names(e))
                .collect();
            exts.sort();
            Ok(Report::ok(set_lines(&exts), json!({ "semantics": sem.to_string(), "extensions": exts })))
        }
        AfCommand::Analyze { file } => {
            let p = load_setaf(file)?;
            let f = p.reduce();
            let sym = classify_symmetry(&p.setaf);
            let coherence = is_coherent(&f)?;
            let labels = sym.labels();
            let mut text = format!(
                "arguments {}\nattacks {}\nmax-attack-size {}\npreferences {}\nsymmetry {}\n",
                f.len(),
                p.setaf.attacks().len(),
                p.setaf.max_attack_size(),
                p.preference().len(),
                labels.join(" ")
            );
            let counter = coherence.counterexample.as_ref().map(|c| f.set_names(c));
            match &counter {
                None => text.push_str("coherent yes\n"),
                Some(c) => text.push_str(&format!("coherent no: preferred {} is not stable\n", braces(c))),
            }
            Ok(Report::ok(
                text,
                json!({
                    "arguments": f.len(),
                    "attacks": p.setaf.attacks().len(),
                    "max_attack_size": p.setaf.max_attack_size(),
                    "preferences": p.preference().len(),
                    "symmetry": labels,
                    "coherent": coherence.coherent,
                    "counterexample": counter,
                }),
            ))
        }
    }
}

fn ontology(kb: &ValidatedKb) -> Result<ValidatedKb> {
    match oracle::hypergraph_to_ontology(kb.kb()) {
        Some(onto) => Ok(ValidatedKb::from_kb(onto)?),
        None => Ok(kb.clone()),
    }
}

fn kb_programs(cli: &Cli, file: &Path, depth: Option<usize>) -> Result<lp::Program> {
    let kb = ontology(&load_kb(cli, file)?)?;
    let closed = kb.closed_tbox().context("knowledge base has no TBox")?;
    let kbase: &KnowledgeBase = kb.kb();
    let mut program = match depth {
        Some(d) => lp::gen_gamma_program(closed, &kbase.signature, d),
        None => lp::gen_kb_program(closed, &kbase.signature),
    };
    program.extend(lp::kb_fact_program(kbase));
    Ok(program)
}

fn lp_command(cli: &Cli, command: &LpCommand) -> Result<Report> {
    match command {
        LpCommand::Emit { target } => {
            let program = match target {
                EmitTarget::Setaf { file } => lp::gen_setaf_program(&load_setaf(file)?.reduce()),
                EmitTarget::Kb { file } => kb_programs(cli, file, None)?,
                EmitTarget::Gamma { depth, file } => kb_programs(cli, file, Some(*depth))?,
            };
            let text = program.to_string();
            Ok(Report::ok(text.clone(), json!({ "program": text })))
        }
        LpCommand::Wfs { file } => {
            let program = lp::parse_program(&read(file)?).with_context(|| format!("in {}", file.display()))?;
            let max = limits(cli).max_ground_atoms;
            let model = lp::well_founded_model_with_budget(&program, max)?;
            let show = |set: &BTreeSet<lp::GroundAtom>| set.iter().map(ToString::to_string).collect::<Vec<_>>();
            let (t, u) = (show(model.true_atoms()), show(model.unknown_atoms()));
            let mut text = String::new();
            for a in &t {
                text.push_str(&format!("true {a}\n"));
            }
            for a in &u {
                text.push_str(&format!("unknown {a}\n"));
            }
            Ok(Report::ok(text, json!({ "true": t, "unknown": u })))
        }
    }
}
