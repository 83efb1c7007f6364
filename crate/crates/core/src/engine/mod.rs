//! The one-pass tableau search.
//!
//! A tableau is a tree of labelled nodes rooted at `{φ}`. Static rules
//! decompose one non-elementary formula at a time; once a label is poised
//! the branch either ends (LOOP ticks it, PRUNE or PRUNE₀ cross it) or
//! TRANSITION steps to the next state. The formula is satisfiable iff some
//! branch ends in a tick.

mod branch;
mod search;
mod tableau;
mod trace;

use std::fmt;

use serde::Serialize;
use thiserror::Error;

pub use branch::{Branch, Frame, RuleChoice};
pub use search::{solve, solve_with};
pub use tableau::{Children, Label, Tableau, XEventuality};
pub use trace::{Trace, TraceEvent};

use crate::extraction::LassoModel;
use crate::formula::Formula;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum EngineError {
    #[error("formula `{0}` is not in this tableau's universe")]
    OutsideUniverse(Formula),
    #[error("pivot `{0}` is not a member of the label")]
    PivotNotInLabel(Formula),
    #[error("pivot `{0}` is not decomposable by a static rule")]
    NotDecomposable(Formula),
    #[error("branch does not end in a tick")]
    NotTicked,
}

/// Static decomposition rules, one per formula shape.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum StaticRule {
    Top,
    And,
    Until,
    NotNot,
    NotAnd,
    NotUntil,
    Eventually,
    Always,
    NotAlways,
    NotEventually,
    Or,
    NotOr,
    Implies,
    NotImplies,
    Iff,
    NotIff,
    NotBottom,
}

impl StaticRule {
    pub fn name(self) -> &'static str {
        match self {
            StaticRule::Top => "TOP",
            StaticRule::And => "AND",
            StaticRule::Until => "UNTIL",
            StaticRule::NotNot => "NOT-NOT",
            StaticRule::NotAnd => "NOT-AND",
            StaticRule::NotUntil => "NOT-UNTIL",
            StaticRule::Eventually => "F",
            StaticRule::Always => "G",
            StaticRule::NotAlways => "NOT-G",
            StaticRule::NotEventually => "NOT-F",
            StaticRule::Or => "OR",
            StaticRule::NotOr => "NOT-OR",
            StaticRule::Implies => "IMPLIES",
            StaticRule::NotImplies => "NOT-IMPLIES",
            StaticRule::Iff => "IFF",
            StaticRule::NotIff => "NOT-IFF",
            StaticRule::NotBottom => "NOT-BOTTOM",
        }
    }
}

/// Every rule of the tableau.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum Rule {
    Empty,
    Bottom,
    NegTop,
    Contradiction,
    Static(StaticRule),
    Loop,
    Prune,
    Prune0,
    Transition,
}

impl Rule {
    pub fn is_tick(self) -> bool {
        matches!(self, Rule::Empty | Rule::Loop)
    }

    pub fn is_cross(self) -> bool {
        matches!(
            self,
            Rule::Bottom | Rule::NegTop | Rule::Contradiction | Rule::Prune | Rule::Prune0
        )
    }
}

impl fmt::Display for Rule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Rule::Empty => "EMPTY",
            Rule::Bottom => "BOTTOM",
            Rule::NegTop => "NOT-TOP",
            Rule::Contradiction => "CONTRADICTION",
            Rule::Static(r) => r.name(),
            Rule::Loop => "LOOP",
            Rule::Prune => "PRUNE",
            Rule::Prune0 => "PRUNE0",
            Rule::Transition => "TRANSITION",
        })
    }
}

/// Which non-elementary formula a static rule decomposes next.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum PivotStrategy {
    /// Earliest formula in discovery order.
    #[default]
    First,
    /// Smallest formula, ties broken by discovery order.
    Smallest,
    /// Eventualities (`U`, `F`, `¬G`) before anything else.
    EventualityFirst,
}

impl PivotStrategy {
    pub const ALL: [PivotStrategy; 3] = [
        PivotStrategy::First,
        PivotStrategy::Smallest,
        PivotStrategy::EventualityFirst,
    ];
}

impl std::str::FromStr for PivotStrategy {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "first" => Ok(PivotStrategy::First),
            "small" => Ok(PivotStrategy::Smallest),
            "event" => Ok(PivotStrategy::EventualityFirst),
            other => Err(format!("unknown pivot strategy `{other}` (first, small, event)")),
        }
    }
}

/// Which child of a branching rule is explored first.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum ChildOrder {
    /// Left child as the rule is written: the fulfilling alternative.
    #[default]
    FulfillFirst,
    /// Right child first.
    DeferFirst,
}

#[derive(Debug, Clone)]
pub struct SolveConfig {
    pub pivot: PivotStrategy,
    pub child_order: ChildOrder,
    pub loop_rule: bool,
    pub prune: bool,
    pub prune0: bool,
    /// Cap on rule applications; `None` is unbounded.
    pub budget: Option<u64>,
    /// Worker threads; 1 is the sequential leftmost depth-first search.
    pub threads: usize,
    /// Record every rule application (sequential search only).
    pub trace: bool,
}

impl Default for SolveConfig {
    fn default() -> Self {
        SolveConfig {
            pivot: PivotStrategy::First,
            child_order: ChildOrder::FulfillFirst,
            loop_rule: true,
            prune: true,
            prune0: true,
            budget: None,
            threads: 1,
            trace: false,
        }
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct Crossings {
    pub contradiction: u64,
    pub bottom: u64,
    pub neg_top: u64,
    pub prune: u64,
    pub prune0: u64,
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct Ticks {
    pub empty: u64,
    #[serde(rename = "loop")]
    pub loop_: u64,
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct Stats {
    /// Rule applications, terminal ones included.
    pub steps: u64,
    /// Most TRANSITIONs used on any explored branch.
    pub max_poised_depth: u64,
    pub crossings: Crossings,
    pub ticks: Ticks,
}

impl Stats {
    pub(crate) fn record(&mut self, rule: Rule) {
        self.steps += 1;
        match rule {
            Rule::Contradiction => self.crossings.contradiction += 1,
            Rule::Bottom => self.crossings.bottom += 1,
            Rule::NegTop => self.crossings.neg_top += 1,
            Rule::Prune => self.crossings.prune += 1,
            Rule::Prune0 => self.crossings.prune0 += 1,
            Rule::Empty => self.ticks.empty += 1,
            Rule::Loop => self.ticks.loop_ += 1,
            Rule::Static(_) | Rule::Transition => {}
        }
    }

    pub(crate) fn merge(&mut self, other: &Stats) {
        self.steps += other.steps;
        self.max_poised_depth = self.max_poised_depth.max(other.max_poised_depth);
        self.crossings.contradiction += other.crossings.contradiction;
        self.crossings.bottom += other.crossings.bottom;
        self.crossings.neg_top += other.crossings.neg_top;
        self.crossings.prune += other.crossings.prune;
        self.crossings.prune0 += other.crossings.prune0;
        self.ticks.empty += other.ticks.empty;
        self.ticks.loop_ += other.ticks.loop_;
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Status {
    #[serde(rename = "SAT")]
    Sat,
    #[serde(rename = "UNSAT")]
    Unsat,
    /// The step budget ran out before a verdict.
    #[serde(rename = "UNKNOWN")]
    Unknown,
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Status::Sat => "SAT",
            Status::Unsat => "UNSAT",
            Status::Unknown => "UNKNOWN",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Outcome {
    Sat(LassoModel),
    Unsat,
    BudgetExceeded,
}

#[derive(Debug, Clone)]
pub struct Verdict {
    pub outcome: Outcome,
    pub stats: Stats,
    pub trace: Option<Trace>,
}

impl Verdict {
    pub fn status(&self) -> Status {
        match self.outcome {
            Outcome::Sat(_) => Status::Sat,
            Outcome::Unsat => Status::Unsat,
            Outcome::BudgetExceeded => Status::Unknown,
        }
    }

    pub fn model(&self) -> Option<&LassoModel> {
        match &self.outcome {
            Outcome::Sat(m) => Some(m),
            _ => None,
        }
    }
}
