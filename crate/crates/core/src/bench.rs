//! Benchmark families and a measurement harness.
//!
//! The counter family `counter(n)` describes an `n`-bit binary counter over
//! bits `c0..c{n-1}` and carry atoms `k1..kn`, where `k{i}` holds exactly
//! when bits `c0..c{i-1}` are all set:
//!
//! ```text
//! !c0 & ... & !c{n-1}                    start at zero
//! G (X c0 <-> !c0)                       the low bit flips every step
//! G (k1 <-> c0)
//! G (k{i+1} <-> k{i} & c{i})             carries ripple upwards
//! G (X c{i} <-> !(c{i} <-> k{i}))        bit i flips when a carry arrives
//! G F kn                                 the counter keeps wrapping
//! ```
//!
//! Every model runs through all `2^n` values in order, so the period of any
//! lasso model is a multiple of `2^n` while the formula grows linearly.

use std::fmt;
use std::path::Path;
use std::time::Instant;

use serde::Serialize;

use crate::engine::{solve, SolveConfig, Status, Verdict};
use crate::formula::{parse, parse_lines, Formula, ParseError};

/// The `n`-bit counter formula described in the module docs.
pub fn gen_counter(n: usize) -> Formula {
    assert!(n >= 1, "counter needs at least one bit");
    let c = |i: usize| Formula::atom(&format!("c{i}"));
    let k = |i: usize| Formula::atom(&format!("k{i}"));
    let mut parts: Vec<Formula> = (0..n).map(|i| c(i).not()).collect();
    parts.push(c(0).next().iff(c(0).not()).always());
    parts.push(k(1).iff(c(0)).always());
    for i in 1..n {
        parts.push(k(i + 1).iff(k(i).and(c(i))).always());
        parts.push(c(i).next().iff(c(i).iff(k(i)).not()).always());
    }
    parts.push(k(n).eventually().always());
    Formula::conjunction(parts).expect("nonempty")
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Pattern {
    /// `p1 U (p2 U (... U pn))`
    UntilChain,
    /// `G p1 & ... & G pn`
    AlwaysChain,
    /// `G F p1 & ... & G F pn`
    RecurrenceConj,
}

impl Pattern {
    pub const ALL: [Pattern; 3] = [Pattern::UntilChain, Pattern::AlwaysChain, Pattern::RecurrenceConj];

    pub fn name(self) -> &'static str {
        match self {
            Pattern::UntilChain => "uchain",
            Pattern::AlwaysChain => "gchain",
            Pattern::RecurrenceConj => "gfconj",
        }
    }
}

pub fn gen_patterns(kind: Pattern, n: usize) -> Formula {
    assert!(n >= 1, "patterns need at least one atom");
    let p = |i: usize| Formula::atom(&format!("p{i}"));
    match kind {
        Pattern::UntilChain => (1..n).rev().fold(p(n), |acc, i| p(i).until(acc)),
        Pattern::AlwaysChain => Formula::conjunction((1..=n).map(|i| p(i).always())).unwrap(),
        Pattern::RecurrenceConj => {
            Formula::conjunction((1..=n).map(|i| p(i).eventually().always())).unwrap()
        }
    }
}

/// One benchmark input.
#[derive(Debug, Clone)]
pub struct Case {
    pub name: String,
    pub formula: Formula,
    pub expected: Option<Status>,
}

impl Case {
    fn new(name: impl Into<String>, formula: Formula, expected: Option<Status>) -> Case {
        Case { name: name.into(), formula, expected }
    }
}

/// The textbook satisfiable and unsatisfiable examples.
pub const CLASSIC: [(&str, Status); 11] = [
    ("true", Status::Sat),
    ("p", Status::Sat),
    ("F p", Status::Sat),
    ("p & X p & F !p", Status::Sat),
    ("G p", Status::Sat),
    ("!p & X !p & (q U p)", Status::Sat),
    ("false", Status::Unsat),
    ("p & !p", Status::Unsat),
    ("F p & G !p", Status::Unsat),
    ("p & G (p -> X p) & F !p", Status::Unsat),
    ("G (p & q) & F !p", Status::Unsat),
];

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BuiltinSuite {
    /// The eleven classic examples.
    Classic,
    /// `counter(1)` to `counter(4)`.
    Counter,
    /// Each pattern family for `n` from 1 to 6.
    Patterns,
    /// All of the above.
    All,
}

pub fn suite(which: BuiltinSuite) -> Vec<Case> {
    match which {
        BuiltinSuite::Classic => CLASSIC
            .iter()
            .map(|&(s, expected)| Case::new(s, parse(s).expect("classic example parses"), Some(expected)))
            .collect(),
        BuiltinSuite::Counter => (1..=4)
            .map(|n| Case::new(format!("counter({n})"), gen_counter(n), Some(Status::Sat)))
            .collect(),
        BuiltinSuite::Patterns => Pattern::ALL
            .iter()
            .flat_map(|&kind| {
                (1..=6).map(move |n| {
                    Case::new(format!("{}({n})", kind.name()), gen_patterns(kind, n), Some(Status::Sat))
                })
            })
            .collect(),
        BuiltinSuite::All => [BuiltinSuite::Classic, BuiltinSuite::Counter, BuiltinSuite::Patterns]
            .into_iter()
            .flat_map(suite)
            .collect(),
    }
}

#[derive(Debug, thiserror::Error)]
pub enum SuiteError {
    #[error("cannot read {path}: {source}")]
    Io {
        path: String,
        source: std::io::Error,
    },
    #[error("{path}:{source}")]
    Parse { path: String, source: ParseError },
}

/// Resolves a suite name (`classic`, `counter`, `patterns`, `all`) or reads
/// one formula per line from a file. File cases have no expected verdict.
pub fn load_suite(spec: &str) -> Result<Vec<Case>, SuiteError> {
    let builtin = match spec {
        "classic" => Some(BuiltinSuite::Classic),
        "counter" => Some(BuiltinSuite::Counter),
        "patterns" => Some(BuiltinSuite::Patterns),
        "all" => Some(BuiltinSuite::All),
        _ => None,
    };
    if let Some(b) = builtin {
        return Ok(suite(b));
    }
    let path = Path::new(spec);
    let text = std::fs::read_to_string(path).map_err(|source| SuiteError::Io {
        path: spec.to_string(),
        source,
    })?;
    parse_lines(&text)
        .into_iter()
        .map(|(line, r)| match r {
            Ok(f) => Ok(Case::new(format!("{spec}:{line}"), f, None)),
            Err(source) => Err(SuiteError::Parse { path: spec.to_string(), source }),
        })
        .collect()
}

#[derive(Debug, Clone, Serialize)]
pub struct Record {
    pub name: String,
    pub size: usize,
    pub verdict: Status,
    pub expected: Option<Status>,
    pub seconds: f64,
    pub steps: u64,
    pub max_poised_depth: u64,
}

impl Record {
    /// False only when an expected verdict is known and differs.
    pub fn correct(&self) -> bool {
        self.expected.is_none_or(|e| e == self.verdict)
    }
}

#[derive(Debug, Clone, Default, Serialize)]
pub struct Report {
    pub records: Vec<Record>,
}

impl Report {
    pub fn len(&self) -> usize {
        self.records.len()
    }

    pub fn is_empty(&self) -> bool {
        self.records.is_empty()
    }

    pub fn all_correct(&self) -> bool {
        self.records.iter().all(Record::correct)
    }

    pub fn to_json_lines(&self) -> String {
        self.records
            .iter()
            .map(|r| serde_json::to_string(r).expect("record serializes") + "\n")
            .collect()
    }
}

/// Aligned plain-text table, one row per record.
impl fmt::Display for Report {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let width = self.records.iter().map(|r| r.name.len()).max().unwrap_or(0).max(4);
        writeln!(
            f,
            "{:<width$}  {:>5}  {:<7}  {:<8}  {:>10}  {:>10}  {:>6}",
            "name", "size", "verdict", "expected", "seconds", "steps", "depth"
        )?;
        for r in &self.records {
            let expected = r.expected.map_or("-".to_string(), |e| e.to_string());
            writeln!(
                f,
                "{:<width$}  {:>5}  {:<7}  {:<8}  {:>10.6}  {:>10}  {:>6}",
                r.name,
                r.size,
                r.verdict.to_string(),
                expected,
                r.seconds,
                r.steps,
                r.max_poised_depth
            )?;
        }
        Ok(())
    }
}

pub fn run_case(case: &Case, config: &SolveConfig) -> (Record, Verdict) {
    let start = Instant::now();
    let verdict = solve(case.formula, config);
    let record = Record {
        name: case.name.clone(),
        size: case.formula.size(),
        verdict: verdict.status(),
        expected: case.expected,
        seconds: start.elapsed().as_secs_f64(),
        steps: verdict.stats.steps,
        max_poised_depth: verdict.stats.max_poised_depth,
    };
    (record, verdict)
}

/// Solves every case in order. Budget exhaustion shows up as an `UNKNOWN`
/// verdict in the record.
pub fn run_bench(cases: &[Case], config: &SolveConfig) -> Report {
    Report {
        records: cases.iter().map(|c| run_case(c, config).0).collect(),
    }
}
