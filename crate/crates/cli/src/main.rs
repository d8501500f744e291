//! `mucal`: prove, grade and compare beliefs over a knowledge base.
//!
//! Exit codes:
//!
//! | command          | status                                           |
//! |------------------|--------------------------------------------------|
//! | `prove`          | 0 proved, 1 unknown, 2 refuted                   |
//! | `strength`       | the level 1..=5, or 10 for none                  |
//! | `compare`        | 0 when the first is more reasonable, 1 otherwise |
//! | `counterfactual` | 0 witness found, 3 no consistent revision        |
//! | any              | 64 bad input, 66 unreadable file                 |

use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::Context;
use clap::{Parser, Subcommand};
use mucal::agent::Engine;
use mucal::kb::KbDocument;
use mucal::proof::ProofResult;
use mucal::reason::{DeltaOutcome, ProbTable};
use mucal::strength::{describe_verdict, explain};
use mucal::{parse_kb, Formula, Rational, Term};
use serde_json::json;

#[derive(Parser)]
#[command(name = "mucal", version, about = "Graded belief over sorted modal formulas")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Knowledge base file.
    #[arg(long, global = true)]
    kb: Option<PathBuf>,
    /// Agent whose beliefs are judged. Defaults to the only declared agent.
    #[arg(long, global = true)]
    agent: Option<String>,
    /// Moment of judgment. Defaults to the latest declared moment.
    #[arg(long, global = true)]
    at: Option<String>,
    /// Proof search depth.
    #[arg(long, global = true, env = "MUCAL_DEPTH")]
    depth: Option<usize>,
    /// Maximum level spread for the belief rule.
    #[arg(long, global = true)]
    u: Option<u8>,
    /// Print proof traces.
    #[arg(long, global = true)]
    trace: bool,
    /// Machine-readable output.
    #[arg(long, global = true)]
    json: bool,
}

#[derive(Subcommand)]
enum Command {
    /// Prove a formula from the knowledge base.
    Prove { formula: String },
    /// Strength of the agent's belief in a formula.
    Strength { formula: String },
    /// Whether believing the first formula is more reasonable than the second.
    Compare { first: String, second: String },
    /// The closest consistent revision under which a formula is provable.
    Counterfactual { formula: String },
    /// Strength with its justification.
    Explain { formula: String },
    /// Parse and sort-check the knowledge base.
    CheckKb,
}

/// Failure with its exit status.
struct Failure {
    code: u8,
    error: anyhow::Error,
}

impl<E: Into<anyhow::Error>> From<E> for Failure {
    fn from(e: E) -> Self {
        Failure { code: 64, error: e.into() }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(code) => ExitCode::from(code),
        Err(f) => {
            eprintln!("mucal: {}", render(&f.error));
            ExitCode::from(f.code)
        }
    }
}

/// The error chain, skipping causes already quoted by their parent.
fn render(e: &anyhow::Error) -> String {
    let mut out = String::new();
    for cause in e.chain() {
        let text = cause.to_string();
        if !out.contains(&text) {
            if !out.is_empty() {
                out.push_str(": ");
            }
            out.push_str(&text);
        }
    }
    out
}

fn load(cli: &Cli) -> Result<KbDocument, Failure> {
    let path = cli
        .kb
        .as_ref()
        .ok_or_else(|| anyhow::anyhow!("--kb <path> is required"))?;
    let text = std::fs::read_to_string(path)
        .with_context(|| format!("cannot read {}", path.display()))
        .map_err(|error| Failure { code: 66, error })?;
    let mut kb = parse_kb(&text).with_context(|| format!("in {}", path.display()))?;
    if let Some(d) = cli.depth {
        kb.params.proof_depth = d;
    }
    if let Some(u) = cli.u {
        kb.params.u = u;
    }
    Ok(kb)
}

fn agent(cli: &Cli, kb: &KbDocument) -> Result<Term, Failure> {
    if let Some(a) = &cli.agent {
        let t = kb.term(a)?;
        kb.check_agent(&t)?;
        return Ok(t);
    }
    let agents = kb.agents();
    match agents.len() {
        1 => Ok(agents.into_iter().next().unwrap()),
        0 => Err(anyhow::anyhow!("the knowledge base declares no agent").into()),
        _ => {
            let names: Vec<String> = agents.iter().map(|a| a.to_string()).collect();
            Err(anyhow::anyhow!("several agents ({}); choose one with --agent", names.join(", ")).into())
        }
    }
}

fn moment(cli: &Cli, kb: &KbDocument) -> Result<Term, Failure> {
    if let Some(m) = &cli.at {
        let t = kb.term(m)?;
        kb.check_moment(&t)?;
        return Ok(t);
    }
    let all: Vec<&Term> = kb.order.moments().collect();
    let latest: Vec<&Term> = all
        .iter()
        .copied()
        .filter(|m| !all.iter().any(|n| kb.order.holds(m, n)))
        .collect();
    match latest.as_slice() {
        [m] => Ok((*m).clone()),
        [] => Err(anyhow::anyhow!("the knowledge base declares no moment").into()),
        _ => Err(anyhow::anyhow!("no single latest moment; choose one with --at").into()),
    }
}

fn formula(kb: &KbDocument, text: &str) -> Result<Formula, Failure> {
    Ok(kb.formula(text)?)
}

fn print_json(v: serde_json::Value) {
    println!("{}", serde_json::to_string_pretty(&v).expect("json values serialize"));
}

fn run(cli: &Cli) -> Result<u8, Failure> {
    let kb = load(cli)?;
    let engine = Engine::new(&kb);
    let table: ProbTable<Rational> = ProbTable::from_kb(&kb);
    match &cli.command {
        Command::CheckKb => {
            if cli.json {
                print_json(json!({
                    "axioms": kb.axioms.len(),
                    "candidates": kb.candidates.len(),
                    "probabilities": kb.probabilities.len(),
                    "moments": kb.order.moments().count(),
                    "params": kb.params,
                }));
            } else {
                println!(
                    "ok: {} axioms, {} candidates, {} probabilities, {} moments",
                    kb.axioms.len(),
                    kb.candidates.len(),
                    kb.probabilities.len(),
                    kb.order.moments().count()
                );
            }
            Ok(0)
        }
        Command::Prove { formula: text } => {
            let goal = formula(&kb, text)?;
            let result = engine.plain_prove(&kb.background(), &goal);
            if cli.json {
                print_json(serde_json::to_value(&result)?);
            } else {
                match &result {
                    ProofResult::Proved { proof } => {
                        println!("proved {goal}");
                        if cli.trace {
                            print!("{}", proof.trace());
                        }
                    }
                    ProofResult::Refuted { proof } => {
                        println!("refuted {goal}");
                        if cli.trace {
                            print!("{}", proof.trace());
                        }
                    }
                    ProofResult::Unknown { reason } => println!("unknown {goal}: {reason}"),
                }
            }
            Ok(match result {
                ProofResult::Proved { .. } => 0,
                ProofResult::Unknown { .. } => 1,
                ProofResult::Refuted { .. } => 2,
            })
        }
        Command::Strength { formula: text } | Command::Explain { formula: text } => {
            let (a, t) = (agent(cli, &kb)?, moment(cli, &kb)?);
            let f = formula(&kb, text)?;
            let (j, store) = engine.judge(&table, &a, &t, &f)?;
            let explanation = explain(&j);
            if cli.json {
                print_json(json!({
                    "judgment": j,
                    "explanation": explanation,
                    "store": store,
                }));
            } else if matches!(cli.command, Command::Explain { .. }) {
                print!("{explanation}");
            } else {
                println!("{} ({}) for {a} at {t}: {f}", j.level.name(), j.level.value());
                let levels: Vec<String> = j.satisfied.iter().map(|l| l.to_string()).collect();
                println!("satisfied levels: {{{}}}", levels.join(", "));
                for e in &explanation.evidence {
                    println!("  {e}");
                }
            }
            Ok(j.level.exit_code() as u8)
        }
        Command::Compare { first, second } => {
            let (a, t) = (agent(cli, &kb)?, moment(cli, &kb)?);
            let (f, g) = (formula(&kb, first)?, formula(&kb, second)?);
            let v = engine.more_reasonable(&table, &a, &t, &f, &g)?;
            if cli.json {
                print_json(serde_json::to_value(&v)?);
            } else {
                let irreflexive = if f.canonical() == g.canonical() { " (irreflexive)" } else { "" };
                if v.holds {
                    println!("more reasonable: {f} over {g}");
                } else {
                    println!("not more reasonable{irreflexive}: {f} over {g}");
                }
                println!("  {}", describe_verdict(&v));
            }
            Ok(if v.holds { 0 } else { 1 })
        }
        Command::Counterfactual { formula: text } => {
            let (a, t) = (agent(cli, &kb)?, moment(cli, &kb)?);
            let f = formula(&kb, text)?;
            let d = engine.delta(&a, &t, &f)?;
            if cli.json {
                print_json(serde_json::to_value(&d)?);
                return Ok(if d.witness().is_some() { 0 } else { 3 });
            }
            match &d {
                DeltaOutcome::Witness(w) => {
                    let (th, la) = w.labels();
                    println!("δ = {}", mucal::reason::show_ratio(&w.distance));
                    println!("add {{{}}}", th.join(", "));
                    println!("remove {{{}}}", la.join(", "));
                    if cli.trace {
                        print!("{}", w.proof.trace());
                    }
                    Ok(0)
                }
                DeltaOutcome::Infinite => {
                    println!("no consistent revision found: δ = ∞");
                    Ok(3)
                }
                DeltaOutcome::Undefined => {
                    println!("no consistent revision found within the search bounds");
                    Ok(3)
                }
            }
        }
    }
}
