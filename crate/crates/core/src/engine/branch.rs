//! Root-to-leaf branch state and the rules that look back along it.

use std::collections::HashMap;

use smallvec::SmallVec;

use super::tableau::{Class, Label, Tableau};
use super::{PivotStrategy, Rule, SolveConfig, StaticRule};
use crate::formula::Formula;

/// One node on a branch.
#[derive(Debug, Clone)]
pub struct Frame {
    /// Kept for poised frames and the leaf, dropped for the others unless
    /// the branch was built with `keep_labels`.
    pub label: Option<Label>,
    pub rule: Option<Rule>,
    pub pivot: Option<Formula>,
    pub loop_ancestor: Option<usize>,
    poised: bool,
    goals: SmallVec<[u32; 4]>,
}

impl Frame {
    pub fn is_poised(&self) -> bool {
        self.poised
    }
}

/// The rule that applies to a branch's leaf, in priority order.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RuleChoice {
    Empty,
    Bottom,
    NegTop,
    Contradiction,
    Static { rule: StaticRule, pivot: Formula },
    Loop { ancestor: usize },
    Prune,
    Prune0,
    Transition,
}

impl RuleChoice {
    pub fn rule(self) -> Rule {
        match self {
            RuleChoice::Empty => Rule::Empty,
            RuleChoice::Bottom => Rule::Bottom,
            RuleChoice::NegTop => Rule::NegTop,
            RuleChoice::Contradiction => Rule::Contradiction,
            RuleChoice::Static { rule, .. } => Rule::Static(rule),
            RuleChoice::Loop { .. } => Rule::Loop,
            RuleChoice::Prune => Rule::Prune,
            RuleChoice::Prune0 => Rule::Prune0,
            RuleChoice::Transition => Rule::Transition,
        }
    }
}

/// Classification with the pivot as a slot, used by the search loop.
#[derive(Debug, Clone, Copy)]
pub(crate) enum Choice {
    Terminal(RuleChoice),
    Static(StaticRule, u32),
    Transition,
}

#[derive(Clone)]
pub struct Branch<'t> {
    tableau: &'t Tableau,
    frames: Vec<Frame>,
    /// Poised frames that have been followed by a TRANSITION, ascending.
    poised: Vec<usize>,
    /// Per goal: ascending frame indices whose label contains it.
    occurrences: Vec<Vec<u32>>,
    /// Per poised label: ascending indices of its transitioned frames.
    label_index: HashMap<Label, Vec<u32>>,
    keep_labels: bool,
}

fn has_in(occ: &[u32], after: usize, upto: usize) -> bool {
    let i = occ.partition_point(|&x| (x as usize) <= after);
    occ.get(i).is_some_and(|&x| (x as usize) <= upto)
}

impl<'t> Branch<'t> {
    pub fn new(tableau: &'t Tableau) -> Branch<'t> {
        Branch {
            tableau,
            frames: Vec::new(),
            poised: Vec::new(),
            occurrences: vec![Vec::new(); tableau.goal_count()],
            label_index: HashMap::new(),
            keep_labels: false,
        }
    }

    /// Keeps every frame's label, for tracing and inspection.
    pub fn keep_labels(mut self, keep: bool) -> Self {
        self.keep_labels = keep;
        self
    }

    pub fn tableau(&self) -> &'t Tableau {
        self.tableau
    }

    pub fn len(&self) -> usize {
        self.frames.len()
    }

    pub fn is_empty(&self) -> bool {
        self.frames.is_empty()
    }

    pub fn frames(&self) -> &[Frame] {
        &self.frames
    }

    pub fn leaf(&self) -> Option<&Frame> {
        self.frames.last()
    }

    pub fn leaf_label(&self) -> &Label {
        self.frames
            .last()
            .and_then(|f| f.label.as_ref())
            .expect("branch has a leaf")
    }

    /// Indices of poised frames at which TRANSITION fired.
    pub fn transitions(&self) -> &[usize] {
        &self.poised
    }

    /// Frames whose label contains `goal`, if `goal` is the goal of some
    /// X-eventuality in the universe.
    pub fn occurrences(&self, goal: Formula) -> Option<&[u32]> {
        let slot = self.tableau.slot_of(goal).ok()?;
        let g = self.tableau.goal_slot(slot)?;
        Some(&self.occurrences[g as usize])
    }

    /// Appends a child of the current leaf and returns its index.
    ///
    /// A poised leaf that gets a child is taken to have used TRANSITION.
    pub fn push(&mut self, label: Label) -> usize {
        let idx = self.frames.len();
        if let Some(prev) = self.frames.last_mut() {
            if prev.poised {
                if prev.rule.is_none() {
                    prev.rule = Some(Rule::Transition);
                }
                self.poised.push(idx - 1);
                let key = prev.label.clone().expect("poised frames keep labels");
                self.label_index.entry(key).or_default().push(idx as u32 - 1);
            } else if !self.keep_labels {
                prev.label = None;
            }
        }
        let goals = self.tableau.goals_present(&label);
        for &g in &goals {
            self.occurrences[g as usize].push(idx as u32);
        }
        let poised = self.tableau.is_poised(&label);
        self.frames.push(Frame {
            label: Some(label),
            rule: None,
            pivot: None,
            loop_ancestor: None,
            poised,
            goals,
        });
        idx
    }

    /// Removes the leaf. Labels dropped from non-poised frames are not
    /// restored, so only truncate back to a frame you still hold a label for.
    pub fn pop(&mut self) -> Option<Frame> {
        let frame = self.frames.pop()?;
        for &g in &frame.goals {
            let popped = self.occurrences[g as usize].pop();
            debug_assert_eq!(popped, Some(self.frames.len() as u32));
        }
        if let Some(prev) = self.frames.last_mut() {
            if prev.poised {
                self.poised.pop();
                let key = prev.label.as_ref().expect("poised frames keep labels");
                let list = self.label_index.get_mut(key).expect("indexed");
                list.pop();
                if list.is_empty() {
                    self.label_index.remove(key);
                }
                if prev.rule == Some(Rule::Transition) {
                    prev.rule = None;
                }
            }
        }
        Some(frame)
    }

    pub fn truncate(&mut self, len: usize) {
        while self.frames.len() > len {
            self.pop();
        }
    }

    pub(crate) fn set_rule(&mut self, choice: &RuleChoice) {
        let leaf = self.frames.last_mut().expect("branch has a leaf");
        leaf.rule = Some(choice.rule());
        match *choice {
            RuleChoice::Static { pivot, .. } => leaf.pivot = Some(pivot),
            RuleChoice::Loop { ancestor } => leaf.loop_ancestor = Some(ancestor),
            _ => {}
        }
    }

    /// Deepest poised ancestor that the leaf may loop back to.
    pub fn check_loop(&self) -> Option<usize> {
        let leaf_idx = self.frames.len().checked_sub(1)?;
        let leaf = self.leaf_label();
        self.poised.iter().rev().copied().find(|&u| {
            let ancestor = self.frames[u].label.as_ref().expect("poised frames keep labels");
            ancestor.is_superset(leaf)
                && self
                    .tableau
                    .goals_in(ancestor)
                    .iter()
                    .all(|&g| has_in(&self.occurrences[g as usize], u, leaf_idx))
        })
    }

    /// Some earlier pair `u < v` carries the leaf's exact label and the
    /// interval `(v, leaf]` fulfils nothing that `(u, v]` did not.
    pub fn check_prune(&self) -> bool {
        let w = self.frames.len() - 1;
        let label = self.leaf_label();
        let Some(prior) = self.label_index.get(label) else {
            return false;
        };
        if prior.len() < 2 {
            return false;
        }
        let goals = self.tableau.goals_in(label);
        for (i, &u) in prior.iter().enumerate() {
            for &v in &prior[i + 1..] {
                let (u, v) = (u as usize, v as usize);
                let useless = goals.iter().all(|&g| {
                    let occ = &self.occurrences[g as usize];
                    !has_in(occ, v, w) || has_in(occ, u, v)
                });
                if useless {
                    return true;
                }
            }
        }
        false
    }

    /// The leaf repeats an earlier label that holds X-eventualities, none of
    /// which has been fulfilled since.
    pub fn check_prune0(&self) -> bool {
        let v = self.frames.len() - 1;
        let label = self.leaf_label();
        let Some(&u) = self.label_index.get(label).and_then(|p| p.last()) else {
            return false;
        };
        let goals = self.tableau.goals_in(label);
        !goals.is_empty()
            && goals
                .iter()
                .all(|&g| !has_in(&self.occurrences[g as usize], u as usize, v))
    }

    pub(crate) fn choose(&self, config: &SolveConfig) -> Choice {
        let t = self.tableau;
        let label = self.leaf_label();
        if label.is_empty() {
            return Choice::Terminal(RuleChoice::Empty);
        }
        if t.has_class(label, |c| matches!(c, Class::Bottom)) {
            return Choice::Terminal(RuleChoice::Bottom);
        }
        if t.has_class(label, |c| matches!(c, Class::NegTop)) {
            return Choice::Terminal(RuleChoice::NegTop);
        }
        if t.has_contradiction(label) {
            return Choice::Terminal(RuleChoice::Contradiction);
        }
        if let Some(pivot) = t.pivot(label, config.pivot) {
            let Class::Static(rule, _) = t.entry(pivot).class else {
                unreachable!("non-elementary formulas are static")
            };
            return Choice::Static(rule, pivot);
        }
        if config.loop_rule {
            if let Some(ancestor) = self.check_loop() {
                return Choice::Terminal(RuleChoice::Loop { ancestor });
            }
        }
        if config.prune && self.check_prune() {
            return Choice::Terminal(RuleChoice::Prune);
        }
        if config.prune0 && self.check_prune0() {
            return Choice::Terminal(RuleChoice::Prune0);
        }
        Choice::Transition
    }

    /// The rule to apply at the leaf, honouring the configured pivot
    /// strategy and enabled rules.
    pub fn classify(&self, config: &SolveConfig) -> RuleChoice {
        match self.choose(config) {
            Choice::Terminal(c) => c,
            Choice::Static(rule, pivot) => RuleChoice::Static {
                rule,
                pivot: self.tableau.entry(pivot).formula,
            },
            Choice::Transition => RuleChoice::Transition,
        }
    }

    /// Same as [`classify`](Self::classify) with the default configuration
    /// and a chosen pivot strategy.
    pub fn classify_with(&self, pivot: PivotStrategy) -> RuleChoice {
        self.classify(&SolveConfig {
            pivot,
            ..SolveConfig::default()
        })
    }
}
