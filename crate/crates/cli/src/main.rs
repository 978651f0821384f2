use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::sync::Arc;

use anyhow::{anyhow, bail, Context};
use clap::{Args, Parser, Subcommand};
use plactic_core::identities::{compare_monoids, enumerate_identities, holds_at_bound, render_table};
use plactic_core::localization::LocalizedElement;
use plactic_core::presentations::PresentationConfig;
use plactic_core::{run_suite, Caps, Catalog, Identity, MonoidHandle, Presentation, Suite, SuiteConfig, Word};
use serde_json::json;

#[derive(Debug, Parser)]
#[command(name = "plactic", version, about = "Compute in the plactic monoid on a<b<c and its quotients")]
struct Cli {
    /// JSON file with extra presentations (one object or an array).
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Print the canonical word of an element.
    Normalize { monoid: String, word: String },
    /// Decide equality; exits 0 when equal, 1 when not.
    Eq { monoid: String, u: String, v: String },
    /// Multiply two elements; `v·z^m` terms multiply in the localization.
    Mul { monoid: String, x: String, y: String },
    /// Test one element for centrality, or list central elements.
    Central {
        monoid: String,
        word: Option<String>,
        #[arg(long, default_value_t = 6)]
        len: usize,
    },
    /// Search for a counterexample to an identity.
    CheckId {
        monoid: String,
        identity: String,
        #[arg(long, default_value_t = 3)]
        bound: usize,
    },
    /// Tabulate identities across monoids.
    ScanIds {
        #[arg(long = "monoid", default_values_t = ["M".to_string(), "N1".to_string(), "N2".to_string()])]
        monoids: Vec<String>,
        #[arg(long, default_value_t = 2)]
        vars: usize,
        #[arg(long, default_value_t = 5)]
        sides: usize,
        #[arg(long, default_value_t = 3)]
        bound: usize,
        /// Only list identities on which the monoids disagree.
        #[arg(long)]
        differences: bool,
        #[arg(long)]
        json: Option<PathBuf>,
    },
    /// Run a named verification suite.
    Verify(VerifyArgs),
    /// List the available monoids.
    Catalog {
        #[arg(long)]
        json: bool,
    },
}

#[derive(Debug, Args)]
struct VerifyArgs {
    #[arg(value_parser = parse_suite)]
    suite: Suite,
    /// Word length bound.
    #[arg(long, visible_alias = "len")]
    length: Option<usize>,
    /// Longest identity side.
    #[arg(long)]
    sides: Option<usize>,
    /// Substitution length bound.
    #[arg(long, default_value_t = 2)]
    bound: usize,
    /// Exponent range `lo..hi`, or `n` for `-n..n`.
    #[arg(long, default_value = "2", value_parser = parse_exps)]
    exp: (i64, i64),
    #[arg(long, default_value_t = 3)]
    escalate: usize,
    /// Surviving identities taken by the localization suite.
    #[arg(long, default_value_t = 20)]
    count: usize,
    /// Random pairs for the δ homomorphism check.
    #[arg(long)]
    sample: Option<usize>,
    #[arg(long = "monoid")]
    monoids: Vec<String>,
    /// Findings fail the run too.
    #[arg(long)]
    strict: bool,
    #[arg(long)]
    json: Option<PathBuf>,
}

fn parse_suite(s: &str) -> Result<Suite, String> {
    s.parse().map_err(|e: plactic_core::Error| e.to_string())
}

fn parse_exps(s: &str) -> Result<(i64, i64), String> {
    let parse = |t: &str| t.trim().parse::<i64>().map_err(|_| format!("bad exponent {t:?}"));
    match s.split_once("..") {
        Some((lo, hi)) => Ok((parse(lo)?, parse(hi.trim_start_matches('='))?)),
        None => {
            let n = parse(s)?;
            Ok((-n.abs(), n.abs()))
        }
    }
}

fn load_catalog(config: Option<&Path>) -> anyhow::Result<Catalog> {
    let mut catalog = Catalog::new(Caps::from_env()?);
    if let Some(path) = config {
        let text = std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
        let value: serde_json::Value =
            serde_json::from_str(&text).with_context(|| format!("parsing {}", path.display()))?;
        let configs: Vec<PresentationConfig> = match value {
            serde_json::Value::Array(_) => serde_json::from_value(value)?,
            _ => vec![serde_json::from_value(value)?],
        };
        for c in &configs {
            catalog.register(Presentation::from_config(c)?)?;
        }
    }
    Ok(catalog)
}

fn monoid(catalog: &Catalog, name: &str) -> anyhow::Result<Arc<MonoidHandle>> {
    catalog.get(name).ok_or_else(|| anyhow!("unknown monoid {name:?}; see `plactic catalog`"))
}

fn word(h: &MonoidHandle, text: &str) -> anyhow::Result<Word> {
    let u: Word = text.parse()?;
    h.alphabet().check(&u)?;
    Ok(u)
}

fn write_json(path: &Path, text: &str) -> anyhow::Result<()> {
    std::fs::write(path, format!("{text}\n")).with_context(|| format!("writing {}", path.display()))
}

fn run(cli: Cli) -> anyhow::Result<ExitCode> {
    let catalog = load_catalog(cli.config.as_deref())?;
    match cli.command {
        Command::Normalize { monoid: name, word: text } => {
            let h = monoid(&catalog, &name)?;
            println!("{}", h.canonical(&word(&h, &text)?)?);
        }
        Command::Eq { monoid: name, u, v } => {
            let h = monoid(&catalog, &name)?;
            let equal = h.equal(&word(&h, &u)?, &word(&h, &v)?)?;
            println!("{equal}");
            return Ok(if equal { ExitCode::SUCCESS } else { ExitCode::from(1) });
        }
        Command::Mul { monoid: name, x, y } => {
            let h = monoid(&catalog, &name)?;
            if x.contains("z^") || y.contains("z^") {
                let x = LocalizedElement::parse(&h, &x)?;
                let y = LocalizedElement::parse(&h, &y)?;
                println!("{}", x.mul(&y)?);
            } else {
                println!("{}", h.canonical(&word(&h, &x)?.concat(&word(&h, &y)?))?);
            }
        }
        Command::Central { monoid: name, word: text, len } => {
            let h = monoid(&catalog, &name)?;
            match text {
                Some(text) => {
                    let c = h.is_central(&word(&h, &text)?, len)?;
                    match c.witness {
                        Some(g) => println!("false (does not commute with {g})"),
                        None => println!("true (checked up to length {})", c.checked_up_to),
                    }
                    return Ok(if c.central { ExitCode::SUCCESS } else { ExitCode::from(1) });
                }
                None => {
                    for u in h.central_elements_up_to(len)? {
                        println!("{u}");
                    }
                }
            }
        }
        Command::CheckId { monoid: name, identity, bound } => {
            let h = monoid(&catalog, &name)?;
            let id: Identity = identity.parse()?;
            let verdict = holds_at_bound(&h, &id, bound)?;
            println!("{id}: {verdict}");
            return Ok(if verdict.fails() { ExitCode::from(1) } else { ExitCode::SUCCESS });
        }
        Command::ScanIds { monoids, vars, sides, bound, differences, json } => {
            let handles = monoids.iter().map(|n| monoid(&catalog, n)).collect::<anyhow::Result<Vec<_>>>()?;
            let ids = enumerate_identities(vars, sides, true);
            let mut rows = compare_monoids(&handles, &ids, bound);
            if differences {
                rows.retain(|r| !r.agreement);
            }
            print!("{}", render_table(&rows));
            if let Some(path) = json {
                let doc = json!({
                    "monoids": monoids,
                    "vars": vars,
                    "sides": sides,
                    "bound": bound,
                    "rows": rows.iter().map(|r| r.to_json()).collect::<Vec<_>>(),
                });
                write_json(&path, &serde_json::to_string_pretty(&doc)?)?;
            }
        }
        Command::Verify(args) => {
            if args.exp.0 > args.exp.1 {
                bail!("empty exponent range {}..{}", args.exp.0, args.exp.1);
            }
            let config = SuiteConfig {
                suite: args.suite,
                len: args.length,
                sides: args.sides,
                bound: args.bound,
                exps: args.exp.0..=args.exp.1,
                escalate: args.escalate,
                count: args.count,
                sample: args.sample,
                monoids: args.monoids,
                strict: args.strict,
            };
            let report = run_suite(&catalog, &config)?;
            for check in &report.checks {
                println!(
                    "{:<24} checked={:<8} violations={} findings={} errors={}",
                    check.check,
                    check.checked,
                    check.violation_count,
                    check.finding_count,
                    check.errors.len()
                );
                for e in check.violations.iter().chain(&check.findings) {
                    println!("    {}: {}", e.subject, e.detail);
                }
                for e in &check.errors {
                    println!("    error: {e}");
                }
            }
            println!("{} {}", report.suite, if report.passed { "PASS" } else { "FAIL" });
            if let Some(path) = args.json {
                write_json(&path, &report.to_json())?;
            }
            return Ok(if report.passed { ExitCode::SUCCESS } else { ExitCode::from(1) });
        }
        Command::Catalog { json } => {
            let handles = catalog.handles();
            if json {
                let doc: Vec<_> = handles
                    .iter()
                    .map(|h| {
                        json!({
                            "name": h.name(),
                            "relations": h.presentation().relations.len(),
                            "strategy": h.strategy().to_string(),
                        })
                    })
                    .collect();
                println!("{}", serde_json::to_string_pretty(&doc)?);
            } else {
                println!("{:<8} {:>9}  strategy", "monoid", "relations");
                for h in handles {
                    println!("{:<8} {:>9}  {}", h.name(), h.presentation().relations.len(), h.strategy());
                }
            }
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
