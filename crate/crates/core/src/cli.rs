//! Command-line front end.
//!
//! Exit codes: 10 when every input is satisfiable, 20 when every input is
//! unsatisfiable, 0 for mixed results and the informational subcommands,
//! 1 for usage or parse errors (and selftest failures), 2 when a step
//! budget runs out.

use std::io::{self, Read, Write};
use std::sync::atomic::{AtomicUsize, Ordering};
use std::sync::Mutex;

use clap::{Args, Parser, Subcommand};

use crate::bench::{load_suite, run_bench};
use crate::engine::{solve, ChildOrder, PivotStrategy, SolveConfig, Status};
use crate::formula::{parse_lines, Formula};
use crate::oracle::{brute_sat, enumerate_formulas, eval_lasso, EnumOptions};

pub const EXIT_MIXED: i32 = 0;
pub const EXIT_ERROR: i32 = 1;
pub const EXIT_BUDGET: i32 = 2;
pub const EXIT_SAT: i32 = 10;
pub const EXIT_UNSAT: i32 = 20;

#[derive(Debug, Parser)]
#[command(name = "onepass", version, about = "LTL satisfiability with a one-pass tableau")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Decide each formula of a file (one per line, `#` comments), or of stdin with `-`.
    Solve {
        input: String,
        /// Print a lasso model after each SAT line.
        #[arg(long)]
        model: bool,
        /// Print every rule application to stderr.
        #[arg(long)]
        trace: bool,
        #[command(flatten)]
        search: SearchArgs,
    },
    /// Run a benchmark suite: classic, counter, patterns, all, or a file.
    Bench {
        suite: String,
        /// Emit JSON lines instead of a table.
        #[arg(long)]
        json: bool,
        #[command(flatten)]
        search: SearchArgs,
    },
    /// Cross-check the solver against the brute-force oracle on every small formula.
    Selftest {
        #[arg(long, default_value_t = 5)]
        max_size: usize,
        /// Number of atoms, drawn from p, q, r.
        #[arg(long, default_value_t = 2, value_parser = clap::value_parser!(u8).range(1..=3))]
        atoms: u8,
        /// Longest prefix and period the oracle tries.
        #[arg(long, default_value_t = 4)]
        bound: usize,
    },
}

#[derive(Debug, Args)]
struct SearchArgs {
    /// Disable the PRUNE0 rule.
    #[arg(long)]
    no_prune0: bool,
    /// Static-rule pivot: first, small or event.
    #[arg(long, default_value = "first", value_parser = parse_pivot)]
    pivot: PivotStrategy,
    /// Explore the postponing child of a branching rule first.
    #[arg(long)]
    defer_first: bool,
    #[arg(long, default_value_t = 1)]
    threads: usize,
    /// Give up after this many rule applications per formula.
    #[arg(long)]
    budget: Option<u64>,
}

fn parse_pivot(s: &str) -> Result<PivotStrategy, String> {
    s.parse().map_err(|_| format!("unknown pivot `{s}` (expected first, small or event)"))
}

impl SearchArgs {
    fn config(&self, trace: bool) -> SolveConfig {
        SolveConfig {
            pivot: self.pivot,
            prune0: !self.no_prune0,
            child_order: if self.defer_first { ChildOrder::DeferFirst } else { ChildOrder::FulfillFirst },
            budget: self.budget,
            threads: self.threads.max(1),
            trace,
            ..SolveConfig::default()
        }
    }
}

/// Runs the command line `args` (program name first) and returns the exit
/// code. Verdicts and models go to `out`; traces and diagnostics to `err`.
pub fn cli_main<I, T>(args: I, input: &mut dyn Read, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_ERROR } else { EXIT_MIXED };
            let text = e.render().to_string();
            if e.use_stderr() {
                let _ = write!(err, "{text}");
            } else {
                let _ = write!(out, "{text}");
            }
            return code;
        }
    };
    let result = match cli.command {
        Command::Solve { input: path, model, trace, search } => {
            run_solve(&path, input, model, &search.config(trace), out, err)
        }
        Command::Bench { suite, json, search } => run_bench_cmd(&suite, json, &search.config(false), out, err),
        Command::Selftest { max_size, atoms, bound } => run_selftest(max_size, atoms as usize, bound, out, err),
    };
    result.unwrap_or_else(|e| {
        let _ = writeln!(err, "error: {e}");
        EXIT_ERROR
    })
}

fn run_solve(
    path: &str,
    stdin: &mut dyn Read,
    print_model: bool,
    config: &SolveConfig,
    out: &mut dyn Write,
    err: &mut dyn Write,
) -> io::Result<i32> {
    let mut text = String::new();
    if path == "-" {
        stdin.read_to_string(&mut text)?;
    } else {
        match std::fs::read_to_string(path) {
            Ok(t) => text = t,
            Err(e) => {
                writeln!(err, "error: cannot read {path}: {e}")?;
                return Ok(EXIT_ERROR);
            }
        }
    }
    let mut formulas = Vec::new();
    let mut bad = false;
    for (_, parsed) in parse_lines(&text) {
        match parsed {
            Ok(f) => formulas.push(f),
            Err(e) => {
                writeln!(err, "{path}:{e}")?;
                bad = true;
            }
        }
    }
    if bad {
        return Ok(EXIT_ERROR);
    }
    let mut statuses = Vec::new();
    for f in formulas {
        let verdict = solve(f, config);
        if let Some(trace) = &verdict.trace {
            writeln!(err, "# {f}")?;
            write!(err, "{trace}")?;
        }
        writeln!(out, "{}", verdict.status())?;
        if print_model {
            if let Some(m) = verdict.model() {
                writeln!(out, "{m}")?;
            }
        }
        statuses.push(verdict.status());
    }
    Ok(exit_code(&statuses))
}

/// Combined exit code for a list of verdicts.
pub fn exit_code(statuses: &[Status]) -> i32 {
    if statuses.contains(&Status::Unknown) {
        EXIT_BUDGET
    } else if statuses.is_empty() {
        EXIT_MIXED
    } else if statuses.iter().all(|&s| s == Status::Sat) {
        EXIT_SAT
    } else if statuses.iter().all(|&s| s == Status::Unsat) {
        EXIT_UNSAT
    } else {
        EXIT_MIXED
    }
}

fn run_bench_cmd(
    suite: &str,
    json: bool,
    config: &SolveConfig,
    out: &mut dyn Write,
    err: &mut dyn Write,
) -> io::Result<i32> {
    let cases = match load_suite(suite) {
        Ok(c) => c,
        Err(e) => {
            writeln!(err, "error: {e}")?;
            return Ok(EXIT_ERROR);
        }
    };
    let report = run_bench(&cases, config);
    if json {
        write!(out, "{}", report.to_json_lines())?;
    } else {
        write!(out, "{report}")?;
    }
    for r in report.records.iter().filter(|r| !r.correct()) {
        writeln!(err, "wrong verdict for {}: expected {}, got {}", r.name, r.expected.unwrap(), r.verdict)?;
    }
    if report.records.iter().any(|r| r.verdict == Status::Unknown) {
        return Ok(EXIT_BUDGET);
    }
    Ok(if report.all_correct() { EXIT_MIXED } else { EXIT_ERROR })
}

/// Outcome of checking the solver against the oracle on a set of formulas.
#[derive(Debug, Default)]
pub struct SelftestSummary {
    pub checked: usize,
    pub sat: usize,
    pub unsat: usize,
    pub violations: Vec<String>,
}

/// For each formula: a SAT verdict must come with a model that satisfies it,
/// and an UNSAT verdict must agree with the oracle finding no lasso within
/// `bound`. Work is spread over the available cores.
pub fn selftest(formulas: &[Formula], bound: usize) -> SelftestSummary {
    let next = AtomicUsize::new(0);
    let summary = Mutex::new(SelftestSummary::default());
    let workers = std::thread::available_parallelism().map_or(1, |n| n.get());
    std::thread::scope(|scope| {
        for _ in 0..workers {
            scope.spawn(|| loop {
                let i = next.fetch_add(1, Ordering::Relaxed);
                let Some(&f) = formulas.get(i) else { break };
                let verdict = solve(f, &SolveConfig::default());
                let problem = match verdict.status() {
                    Status::Sat => {
                        let m = verdict.model().unwrap();
                        (!eval_lasso(f, m)).then(|| format!("{f}: model {m} does not satisfy it"))
                    }
                    Status::Unsat => brute_sat(f, bound, bound).map(|m| format!("{f}: UNSAT but {m} satisfies it")),
                    Status::Unknown => Some(format!("{f}: no verdict")),
                };
                let mut s = summary.lock().unwrap();
                s.checked += 1;
                match verdict.status() {
                    Status::Sat => s.sat += 1,
                    Status::Unsat => s.unsat += 1,
                    Status::Unknown => {}
                }
                s.violations.extend(problem);
            });
        }
    });
    let mut s = summary.into_inner().unwrap();
    s.violations.sort();
    s
}

fn run_selftest(
    max_size: usize,
    atoms: usize,
    bound: usize,
    out: &mut dyn Write,
    err: &mut dyn Write,
) -> io::Result<i32> {
    let names = &["p", "q", "r"][..atoms];
    let opts = EnumOptions { temporal: true, canonical: true };
    let formulas: Vec<Formula> = enumerate_formulas(max_size, names, opts).collect();
    let s = selftest(&formulas, bound);
    for v in &s.violations {
        writeln!(err, "violation: {v}")?;
    }
    writeln!(
        out,
        "checked {} formulas: {} SAT, {} UNSAT, {} violations",
        s.checked,
        s.sat,
        s.unsat,
        s.violations.len()
    )?;
    Ok(if s.violations.is_empty() { EXIT_MIXED } else { EXIT_ERROR })
}
