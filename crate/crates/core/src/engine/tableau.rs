//! Per-formula rule tables.
//!
//! Before searching, every formula that can ever appear in a label of the
//! tableau for φ is interned and numbered in breadth-first discovery order
//! from φ. Labels are bitsets over these numbers, and each number carries a
//! precomputed description of what the rules do with it.

use std::collections::{HashMap, VecDeque};
use std::fmt;

use smallvec::{smallvec, SmallVec};

use super::{EngineError, StaticRule};
use crate::formula::{Formula, Kind, Sym};

pub(crate) type Slots = SmallVec<[u32; 2]>;

#[derive(Clone, Debug)]
pub(crate) enum Expansion {
    One(Slots),
    Two(Slots, Slots),
}

#[derive(Clone, Debug)]
pub(crate) enum Class {
    Atom(Sym),
    NegAtom,
    /// `Xα` or `¬Xα`; carries the slot of `α` (resp. `¬α`).
    Next(u32),
    Bottom,
    NegTop,
    Static(StaticRule, Expansion),
}

#[derive(Clone, Debug)]
pub(crate) struct Entry {
    pub formula: Formula,
    pub class: Class,
    pub size: u32,
    /// For `¬α`: the slot of `α`.
    pub negates: Option<u32>,
    /// For an X-eventuality: the slot of its goal.
    pub goal: Option<u32>,
}

impl Entry {
    pub fn is_elementary(&self) -> bool {
        matches!(self.class, Class::Atom(_) | Class::NegAtom | Class::Next(_))
    }

    fn is_eventuality(&self) -> bool {
        matches!(
            self.class,
            Class::Static(StaticRule::Until | StaticRule::Eventually | StaticRule::NotAlways, _)
        )
    }
}

/// A duplicate-free set of formulas from one tableau's universe.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Label {
    words: Box<[u64]>,
}

impl Label {
    pub(crate) fn empty(universe: usize) -> Label {
        Label {
            words: vec![0; universe.div_ceil(64)].into_boxed_slice(),
        }
    }

    pub(crate) fn insert(&mut self, slot: u32) {
        self.words[slot as usize / 64] |= 1 << (slot % 64);
    }

    pub(crate) fn remove(&mut self, slot: u32) {
        self.words[slot as usize / 64] &= !(1 << (slot % 64));
    }

    pub(crate) fn contains(&self, slot: u32) -> bool {
        self.words[slot as usize / 64] & (1 << (slot % 64)) != 0
    }

    pub fn is_empty(&self) -> bool {
        self.words.iter().all(|w| *w == 0)
    }

    pub fn len(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn is_superset(&self, other: &Label) -> bool {
        self.words.iter().zip(other.words.iter()).all(|(a, b)| b & !a == 0)
    }

    /// Member slots in ascending order.
    pub(crate) fn slots(&self) -> impl Iterator<Item = u32> + '_ {
        self.words.iter().enumerate().flat_map(|(i, &w)| {
            let mut w = w;
            std::iter::from_fn(move || {
                if w == 0 {
                    return None;
                }
                let bit = w.trailing_zeros();
                w &= w - 1;
                Some(i as u32 * 64 + bit)
            })
        })
    }
}

impl fmt::Debug for Label {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.slots()).finish()
    }
}

/// Children produced by one static rule application.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Children {
    One(Label),
    Two(Label, Label),
}

/// An X-eventuality found in a label together with its goal.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct XEventuality {
    pub source: Formula,
    pub goal: Formula,
}

/// The compiled rule tables for one root formula.
pub struct Tableau {
    root: Formula,
    entries: Vec<Entry>,
    index: HashMap<Formula, u32>,
    goal_slots: Vec<Option<u32>>,
    goal_count: usize,
}

impl fmt::Debug for Tableau {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Tableau")
            .field("root", &self.root)
            .field("universe", &self.entries.len())
            .finish()
    }
}

struct Builder {
    entries: Vec<Option<Entry>>,
    formulas: Vec<Formula>,
    index: HashMap<Formula, u32>,
    queue: VecDeque<u32>,
}

impl Builder {
    fn slot(&mut self, f: Formula) -> u32 {
        if let Some(&s) = self.index.get(&f) {
            return s;
        }
        let s = self.formulas.len() as u32;
        self.formulas.push(f);
        self.entries.push(None);
        self.index.insert(f, s);
        self.queue.push_back(s);
        s
    }

    fn one(&mut self, fs: &[Formula]) -> Expansion {
        Expansion::One(fs.iter().map(|&f| self.slot(f)).collect())
    }

    fn two(&mut self, left: &[Formula], right: &[Formula]) -> Expansion {
        let l = left.iter().map(|&f| self.slot(f)).collect();
        let r = right.iter().map(|&f| self.slot(f)).collect();
        Expansion::Two(l, r)
    }

    fn classify(&mut self, f: Formula) -> Class {
        use StaticRule as R;
        match f.kind() {
            Kind::Atom(s) => Class::Atom(s),
            Kind::False => Class::Bottom,
            Kind::True => Class::Static(R::Top, Expansion::One(smallvec![])),
            Kind::Next(a) => Class::Next(self.slot(a)),
            Kind::And(a, b) => Class::Static(R::And, self.one(&[a, b])),
            Kind::Until(a, b) => Class::Static(R::Until, self.two(&[b], &[a, f.next()])),
            Kind::Eventually(a) => Class::Static(R::Eventually, self.two(&[a], &[f.next()])),
            Kind::Always(a) => Class::Static(R::Always, self.one(&[a, f.next()])),
            Kind::Or(a, b) => Class::Static(R::Or, self.two(&[a], &[b])),
            Kind::Implies(a, b) => Class::Static(R::Implies, self.two(&[a.not()], &[b])),
            Kind::Iff(a, b) => Class::Static(R::Iff, self.two(&[a, b], &[a.not(), b.not()])),
            Kind::Not(g) => match g.kind() {
                Kind::Atom(_) => Class::NegAtom,
                Kind::True => Class::NegTop,
                Kind::False => Class::Static(R::NotBottom, Expansion::One(smallvec![])),
                Kind::Next(a) => Class::Next(self.slot(a.not())),
                Kind::Not(a) => Class::Static(R::NotNot, self.one(&[a])),
                Kind::And(a, b) => Class::Static(R::NotAnd, self.two(&[a.not()], &[b.not()])),
                Kind::Until(a, b) => Class::Static(
                    R::NotUntil,
                    self.two(&[a.not(), b.not()], &[b.not(), f.next()]),
                ),
                Kind::Eventually(a) => {
                    Class::Static(R::NotEventually, self.one(&[a.not(), f.next()]))
                }
                Kind::Always(a) => {
                    Class::Static(R::NotAlways, self.two(&[a.not()], &[f.next()]))
                }
                Kind::Or(a, b) => Class::Static(R::NotOr, self.one(&[a.not(), b.not()])),
                Kind::Implies(a, b) => Class::Static(R::NotImplies, self.one(&[a, b.not()])),
                Kind::Iff(a, b) => {
                    Class::Static(R::NotIff, self.two(&[a, b.not()], &[a.not(), b]))
                }
            },
        }
    }
}

/// Goal of an X-eventuality shape, if `f` has one.
fn goal_of(f: Formula) -> Option<Formula> {
    let Kind::Next(inner) = f.kind() else {
        return None;
    };
    match inner.kind() {
        Kind::Until(_, b) => Some(b),
        Kind::Eventually(b) => Some(b),
        Kind::Not(g) => match g.kind() {
            Kind::Always(b) => Some(b.not()),
            _ => None,
        },
        _ => None,
    }
}

impl Tableau {
    pub fn new(root: Formula) -> Tableau {
        Tableau::with_roots(root, &[])
    }

    /// Compiles the universe of `root` extended with the universes of
    /// `extra`, so hand-built labels may mention them.
    pub fn with_roots(root: Formula, extra: &[Formula]) -> Tableau {
        let mut b = Builder {
            entries: Vec::new(),
            formulas: Vec::new(),
            index: HashMap::new(),
            queue: VecDeque::new(),
        };
        b.slot(root);
        for &f in extra {
            b.slot(f);
        }
        while let Some(s) = b.queue.pop_front() {
            let f = b.formulas[s as usize];
            let class = b.classify(f);
            let goal = goal_of(f).map(|g| b.slot(g));
            b.entries[s as usize] = Some(Entry {
                formula: f,
                class,
                size: f.size() as u32,
                negates: None,
                goal,
            });
        }
        // Negation links need every slot to exist first.
        let mut entries: Vec<Entry> = b.entries.into_iter().map(Option::unwrap).collect();
        for e in entries.iter_mut() {
            if let Kind::Not(g) = e.formula.kind() {
                e.negates = b.index.get(&g).copied();
            }
        }
        let mut goal_slots = vec![None; entries.len()];
        let mut goal_count = 0;
        for e in &entries {
            if let Some(g) = e.goal {
                if goal_slots[g as usize].is_none() {
                    goal_slots[g as usize] = Some(goal_count);
                    goal_count += 1;
                }
            }
        }
        Tableau {
            root,
            entries,
            index: b.index,
            goal_slots,
            goal_count: goal_count as usize,
        }
    }

    pub fn root(&self) -> Formula {
        self.root
    }

    /// Number of formulas that can occur in labels.
    pub fn universe_len(&self) -> usize {
        self.entries.len()
    }

    pub fn universe(&self) -> impl Iterator<Item = Formula> + '_ {
        self.entries.iter().map(|e| e.formula)
    }

    pub(crate) fn entry(&self, slot: u32) -> &Entry {
        &self.entries[slot as usize]
    }

    pub(crate) fn goal_count(&self) -> usize {
        self.goal_count
    }

    /// Dense index of a goal formula among all goals, keyed by its slot.
    pub(crate) fn goal_slot(&self, slot: u32) -> Option<u32> {
        self.goal_slots[slot as usize]
    }

    pub(crate) fn slot_of(&self, f: Formula) -> Result<u32, EngineError> {
        self.index
            .get(&f)
            .copied()
            .ok_or(EngineError::OutsideUniverse(f))
    }

    pub fn root_label(&self) -> Label {
        let mut l = Label::empty(self.entries.len());
        l.insert(0);
        l
    }

    pub fn label(&self, formulas: &[Formula]) -> Result<Label, EngineError> {
        let mut l = Label::empty(self.entries.len());
        for &f in formulas {
            l.insert(self.slot_of(f)?);
        }
        Ok(l)
    }

    pub fn contains(&self, label: &Label, f: Formula) -> bool {
        self.index.get(&f).is_some_and(|&s| label.contains(s))
    }

    /// Members in universe order.
    pub fn formulas(&self, label: &Label) -> Vec<Formula> {
        label.slots().map(|s| self.entry(s).formula).collect()
    }

    pub fn has_contradiction(&self, label: &Label) -> bool {
        label
            .slots()
            .any(|s| self.entry(s).negates.is_some_and(|n| label.contains(n)))
    }

    /// Nonempty, contradiction-free and made only of elementary formulas.
    pub fn is_poised(&self, label: &Label) -> bool {
        !label.is_empty()
            && label.slots().all(|s| self.entry(s).is_elementary())
            && !self.has_contradiction(label)
    }

    pub fn is_elementary(&self, f: Formula) -> Result<bool, EngineError> {
        Ok(self.entry(self.slot_of(f)?).is_elementary())
    }

    pub(crate) fn expand(&self, label: &Label, pivot: u32) -> Option<(StaticRule, Children)> {
        let Class::Static(rule, exp) = &self.entry(pivot).class else {
            return None;
        };
        let mut base = label.clone();
        base.remove(pivot);
        let with = |add: &Slots| {
            let mut l = base.clone();
            for &s in add {
                l.insert(s);
            }
            l
        };
        let children = match exp {
            Expansion::One(a) => Children::One(with(a)),
            Expansion::Two(a, b) => Children::Two(with(a), with(b)),
        };
        Some((*rule, children))
    }

    /// Applies the static rule that decomposes `pivot`.
    pub fn apply_static(
        &self,
        label: &Label,
        pivot: Formula,
    ) -> Result<(StaticRule, Children), EngineError> {
        let slot = self.slot_of(pivot)?;
        if !label.contains(slot) {
            return Err(EngineError::PivotNotInLabel(pivot));
        }
        self.expand(label, slot)
            .ok_or(EngineError::NotDecomposable(pivot))
    }

    /// `{α | Xα ∈ Γ} ∪ {¬α | ¬Xα ∈ Γ}`.
    pub fn transition(&self, label: &Label) -> Label {
        let mut next = Label::empty(self.entries.len());
        for s in label.slots() {
            if let Class::Next(t) = self.entry(s).class {
                next.insert(t);
            }
        }
        next
    }

    pub fn x_eventualities(&self, label: &Label) -> Vec<XEventuality> {
        label
            .slots()
            .filter_map(|s| {
                let e = self.entry(s);
                e.goal.map(|g| XEventuality {
                    source: e.formula,
                    goal: self.entry(g).formula,
                })
            })
            .collect()
    }

    /// Goal slots (dense) of the X-eventualities in `label`.
    pub(crate) fn goals_in(&self, label: &Label) -> SmallVec<[u32; 4]> {
        label
            .slots()
            .filter_map(|s| self.entry(s).goal)
            .map(|g| self.goal_slots[g as usize].expect("goal registered"))
            .collect()
    }

    /// Goal slots (dense) of goal formulas present in `label`.
    pub(crate) fn goals_present(&self, label: &Label) -> SmallVec<[u32; 4]> {
        label
            .slots()
            .filter_map(|s| self.goal_slots[s as usize])
            .collect()
    }

    pub(crate) fn pivot(&self, label: &Label, strategy: super::PivotStrategy) -> Option<u32> {
        use super::PivotStrategy;
        let mut candidates = label.slots().filter(|&s| !self.entry(s).is_elementary());
        match strategy {
            PivotStrategy::First => candidates.next(),
            PivotStrategy::Smallest => candidates.min_by_key(|&s| (self.entry(s).size, s)),
            PivotStrategy::EventualityFirst => {
                let all: SmallVec<[u32; 8]> = candidates.collect();
                all.iter()
                    .copied()
                    .find(|&s| self.entry(s).is_eventuality())
                    .or_else(|| all.first().copied())
            }
        }
    }

    /// Positive atoms of `label`.
    pub(crate) fn atoms(&self, label: &Label) -> Vec<Sym> {
        label
            .slots()
            .filter_map(|s| match self.entry(s).class {
                Class::Atom(sym) => Some(sym),
                _ => None,
            })
            .collect()
    }

    pub(crate) fn has_class(&self, label: &Label, pred: impl Fn(&Class) -> bool) -> bool {
        label.slots().any(|s| pred(&self.entry(s).class))
    }
}
