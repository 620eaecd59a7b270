//! The `ggd` command line tool.
//!
//! Exit codes: 0 success, 1 violations remain (or the repair did not reach a
//! clean fixpoint), 2 usage, input or rule errors.

use std::fmt::Display;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{ArgAction, Parser, Subcommand, ValueEnum};
use serde_json::json;

use crate::distance::DistanceRegistry;
use crate::dsl::parse_ggd_file;
use crate::ggd::Ggd;
use crate::graph_io::{parse_graph_file, serialize_graph, LoadedGraph};
use crate::matcher::{find_matches, find_matches_parallel};
use crate::repair::repair_to_fixpoint;
use crate::report::{match_json, overall_verdict, render, repair_report_json, validation_json};
use crate::validation::{validate_set_with, ValidationOptions};

#[derive(Debug, Parser)]
#[command(name = "ggd", version, about = "Validate and repair property graphs against graph generating dependencies")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Check a graph against a rule file and write a JSON report.
    Validate {
        #[arg(long)]
        graph: PathBuf,
        #[arg(long)]
        rules: PathBuf,
        #[arg(long)]
        out: PathBuf,
        #[arg(long)]
        parallelism: Option<usize>,
        /// Exit with 1 when some rule is violated.
        #[arg(long, default_value_t = true, action = ArgAction::Set)]
        fail_on_violation: bool,
    },
    /// Add the objects needed to satisfy the rules, then revalidate.
    Repair {
        #[arg(long)]
        graph: PathBuf,
        #[arg(long)]
        rules: PathBuf,
        #[arg(long)]
        out_graph: PathBuf,
        #[arg(long)]
        out: PathBuf,
        #[arg(long, default_value_t = 10)]
        max_rounds: usize,
        #[arg(long)]
        parallelism: Option<usize>,
    },
    /// List the matches of one side of a rule.
    Match {
        #[arg(long)]
        graph: PathBuf,
        #[arg(long)]
        rules: PathBuf,
        #[arg(long)]
        rule: String,
        #[arg(long, value_enum, default_value_t = SideArg::Source)]
        side: SideArg,
        /// Write to this file instead of stdout.
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum SideArg {
    Source,
    Target,
}

struct Failure(String);

impl<E: Display> From<E> for Failure {
    fn from(e: E) -> Self {
        Failure(e.to_string())
    }
}

fn read(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| Failure(format!("{}: {e}", path.display())))
}

fn load_graph(path: &Path) -> Result<LoadedGraph, Failure> {
    parse_graph_file(&read(path)?).map_err(|e| Failure(format!("{}: {e}", path.display())))
}

fn load_rules(path: &Path, registry: &DistanceRegistry) -> Result<Vec<Ggd>, Failure> {
    parse_ggd_file(&read(path)?, registry).map_err(|e| Failure(format!("{}:{e}", path.display())))
}

fn check_writable(path: &Path) -> Result<(), Failure> {
    match path.parent() {
        Some(dir) if !dir.as_os_str().is_empty() && !dir.is_dir() => {
            Err(Failure(format!("{}: output directory does not exist", path.display())))
        }
        _ => Ok(()),
    }
}

fn write(path: &Path, contents: &str) -> Result<(), Failure> {
    fs::write(path, contents).map_err(|e| Failure(format!("{}: {e}", path.display())))
}

fn threads(requested: Option<usize>) -> usize {
    requested
        .unwrap_or_else(|| std::thread::available_parallelism().map(|n| n.get()).unwrap_or(1))
        .max(1)
}

fn error_report(message: &str) -> String {
    render(&json!({ "verdict": "error", "error": message }))
}

/// Runs the tool with `args` (including the program name) and returns the
/// exit code.
pub fn run<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let text = e.render().to_string();
            let sink: &mut dyn Write = if e.use_stderr() { stderr } else { stdout };
            let _ = sink.write_all(text.as_bytes());
            return e.exit_code();
        }
    };
    let registry = DistanceRegistry::new();
    let out_path = match &cli.command {
        Command::Validate { out, .. } | Command::Repair { out, .. } => Some(out.clone()),
        Command::Match { out, .. } => out.clone(),
    };
    match execute(cli.command, &registry, stdout) {
        Ok(code) => code,
        Err(Failure(message)) => {
            let _ = writeln!(stderr, "error: {message}");
            if let Some(out) = out_path {
                if out.parent().map_or(true, |d| d.as_os_str().is_empty() || d.is_dir()) {
                    let _ = fs::write(&out, error_report(&message));
                }
            }
            2
        }
    }
}

fn execute(command: Command, registry: &DistanceRegistry, stdout: &mut dyn Write) -> Result<i32, Failure> {
    match command {
        Command::Validate { graph, rules, out, parallelism, fail_on_violation } => {
            check_writable(&out)?;
            let loaded = load_graph(&graph)?;
            let rules = load_rules(&rules, registry)?;
            let options = ValidationOptions { parallelism: threads(parallelism) };
            let report = validate_set_with(&loaded.graph, &rules, registry, options);
            write(&out, &render(&validation_json(&report, &loaded.ids)))?;
            let violations = report.violations().count();
            writeln!(stdout, "{}: {} rules, {} violations", overall_verdict(&report), rules.len(), violations)?;
            Ok(if report.has_errors() {
                2
            } else if report.holds() || !fail_on_violation {
                0
            } else {
                1
            })
        }
        Command::Repair { graph, rules, out_graph, out, max_rounds, parallelism } => {
            check_writable(&out)?;
            check_writable(&out_graph)?;
            let LoadedGraph { graph: mut g, mut ids } = load_graph(&graph)?;
            let rules = load_rules(&rules, registry)?;
            let options = ValidationOptions { parallelism: threads(parallelism) };
            let outcome = repair_to_fixpoint(&mut g, &rules, registry, max_rounds, options)?;
            ids.name_generated(&outcome.generated());
            let final_report = validate_set_with(&g, &rules, registry, options);
            write(&out_graph, &serialize_graph(&g, &ids))?;
            write(&out, &render(&repair_report_json(&final_report, &outcome, &g, &ids)))?;
            writeln!(
                stdout,
                "{}: {} repairs in {} rounds, {} objects added, {} unrepairable{}",
                overall_verdict(&final_report),
                outcome.plans_applied(),
                outcome.rounds_executed,
                outcome.generated().len(),
                outcome.unrepairable.len(),
                if outcome.hit_round_cap { ", round cap reached" } else { "" },
            )?;
            Ok(if outcome.is_clean() && final_report.holds() { 0 } else { 1 })
        }
        Command::Match { graph, rules, rule, side, out } => {
            if let Some(out) = &out {
                check_writable(out)?;
            }
            let loaded = load_graph(&graph)?;
            let rules = load_rules(&rules, registry)?;
            let ggd = rules.iter().find(|r| r.name() == rule).ok_or_else(|| Failure(format!("unknown rule `{rule}`")))?;
            let (name, bindings) = match side {
                SideArg::Source => ("source", find_matches_parallel(ggd.source(), &loaded.graph, threads(None))),
                SideArg::Target => ("target", find_matches(ggd.target(), &loaded.graph).collect()),
            };
            let text = render(&match_json(&rule, name, &bindings, &loaded.ids));
            match out {
                Some(path) => write(&path, &text)?,
                None => stdout.write_all(text.as_bytes())?,
            }
            Ok(0)
        }
    }
}
