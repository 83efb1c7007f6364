//! Depth-first exploration of the tableau, sequential or on a worker pool.

use std::sync::atomic::{AtomicBool, AtomicU64, AtomicUsize, Ordering};
use std::sync::{Condvar, Mutex};

use super::branch::{Branch, Choice, RuleChoice};
use super::tableau::{Children, Label, Tableau};
use super::trace::{Trace, TraceEvent};
use super::{ChildOrder, Outcome, SolveConfig, Stats, Verdict};
use crate::extraction::{extract_model, LassoModel};
use crate::formula::Formula;

/// Decides satisfiability of `phi`.
pub fn solve(phi: Formula, config: &SolveConfig) -> Verdict {
    solve_with(&Tableau::new(phi), config)
}

/// Runs the search over an already compiled tableau.
pub fn solve_with(tableau: &Tableau, config: &SolveConfig) -> Verdict {
    if config.threads <= 1 || config.trace {
        sequential(tableau, config)
    } else {
        parallel(tableau, config)
    }
}

/// How a worker talks to whoever runs it.
trait Control<'t> {
    /// Called before every rule application; `false` stops the worker.
    fn proceed(&mut self) -> bool;
    /// Offers a pending sibling to other workers. Returns `false` to keep it.
    fn offload(&self, branch: &Branch<'t>, label: &Label) -> bool;
}

enum Run {
    Sat(LassoModel),
    Exhausted,
    Stopped,
}

struct Worker<'t, 'c> {
    tableau: &'t Tableau,
    config: &'c SolveConfig,
    branch: Branch<'t>,
    /// Pending siblings: branch length to return to and the child label.
    stack: Vec<(usize, Label)>,
    stats: Stats,
    trace: Option<Vec<TraceEvent>>,
}

impl<'t, 'c> Worker<'t, 'c> {
    fn new(tableau: &'t Tableau, config: &'c SolveConfig) -> Self {
        Worker {
            tableau,
            config,
            branch: Branch::new(tableau).keep_labels(config.trace),
            stack: Vec::new(),
            stats: Stats::default(),
            trace: config.trace.then(Vec::new),
        }
    }

    fn run(&mut self, ctl: &mut impl Control<'t>) -> Run {
        while let Some((len, label)) = self.stack.pop() {
            self.branch.truncate(len);
            let mut label = label;
            loop {
                if !ctl.proceed() {
                    return Run::Stopped;
                }
                self.branch.push(label);
                let choice = self.branch.choose(self.config);
                let leaf = self.branch.leaf_label();
                let (public, next) = match choice {
                    Choice::Terminal(c) => (c, None),
                    Choice::Static(rule, pivot) => {
                        let (_, children) = self.tableau.expand(leaf, pivot).expect("static pivot");
                        let public = RuleChoice::Static {
                            rule,
                            pivot: self.tableau.entry(pivot).formula,
                        };
                        let first = match children {
                            Children::One(c) => c,
                            Children::Two(a, b) if a == b => a,
                            Children::Two(a, b) => {
                                let (first, second) = match self.config.child_order {
                                    ChildOrder::FulfillFirst => (a, b),
                                    ChildOrder::DeferFirst => (b, a),
                                };
                                if !ctl.offload(&self.branch, &second) {
                                    self.stack.push((self.branch.len(), second));
                                }
                                first
                            }
                        };
                        (public, Some(first))
                    }
                    Choice::Transition => {
                        let depth = self.branch.transitions().len() as u64 + 1;
                        self.stats.max_poised_depth = self.stats.max_poised_depth.max(depth);
                        (RuleChoice::Transition, Some(self.tableau.transition(leaf)))
                    }
                };
                if let Some(trace) = self.trace.as_mut() {
                    let (pivot, loop_ancestor) = match public {
                        RuleChoice::Static { pivot, .. } => (Some(pivot), None),
                        RuleChoice::Loop { ancestor } => (None, Some(ancestor)),
                        _ => (None, None),
                    };
                    trace.push(TraceEvent {
                        index: self.branch.len() - 1,
                        rule: public.rule(),
                        pivot,
                        loop_ancestor,
                        label: self.tableau.formulas(leaf),
                    });
                }
                self.branch.set_rule(&public);
                self.stats.record(public.rule());
                match next {
                    Some(child) => label = child,
                    None if public.rule().is_tick() => {
                        let model = extract_model(&self.branch).expect("ticked branch");
                        return Run::Sat(model);
                    }
                    None => break,
                }
            }
        }
        Run::Exhausted
    }
}

struct Sequential {
    steps: u64,
    budget: Option<u64>,
    exhausted_budget: bool,
}

impl<'t> Control<'t> for Sequential {
    fn proceed(&mut self) -> bool {
        if self.budget.is_some_and(|b| self.steps >= b) {
            self.exhausted_budget = true;
            return false;
        }
        self.steps += 1;
        true
    }

    fn offload(&self, _: &Branch<'t>, _: &Label) -> bool {
        false
    }
}

fn sequential(tableau: &Tableau, config: &SolveConfig) -> Verdict {
    let mut worker = Worker::new(tableau, config);
    worker.stack.push((0, tableau.root_label()));
    let mut ctl = Sequential {
        steps: 0,
        budget: config.budget,
        exhausted_budget: false,
    };
    let outcome = match worker.run(&mut ctl) {
        Run::Sat(m) => Outcome::Sat(m),
        Run::Exhausted => Outcome::Unsat,
        Run::Stopped => Outcome::BudgetExceeded,
    };
    Verdict {
        outcome,
        stats: worker.stats,
        trace: worker.trace.map(|events| Trace { events }),
    }
}

struct Pool<'t> {
    queue: Vec<(Branch<'t>, Label)>,
    idle: usize,
    done: bool,
}

struct Shared<'t> {
    pool: Mutex<Pool<'t>>,
    wake: Condvar,
    idle: AtomicUsize,
    stop: AtomicBool,
    budget_hit: AtomicBool,
    steps: AtomicU64,
    budget: Option<u64>,
    model: Mutex<Option<LassoModel>>,
    stats: Mutex<Stats>,
}

impl<'t> Shared<'t> {
    fn finish(&self) {
        self.stop.store(true, Ordering::SeqCst);
        self.pool.lock().unwrap().done = true;
        self.wake.notify_all();
    }

    fn next_task(&self, workers: usize) -> Option<(Branch<'t>, Label)> {
        let mut pool = self.pool.lock().unwrap();
        pool.idle += 1;
        self.idle.store(pool.idle, Ordering::SeqCst);
        loop {
            if pool.done {
                return None;
            }
            if let Some(task) = pool.queue.pop() {
                pool.idle -= 1;
                self.idle.store(pool.idle, Ordering::SeqCst);
                return Some(task);
            }
            if pool.idle == workers {
                pool.done = true;
                self.wake.notify_all();
                return None;
            }
            pool = self.wake.wait(pool).unwrap();
        }
    }
}

struct Parallel<'s, 't> {
    shared: &'s Shared<'t>,
}

impl<'t> Control<'t> for Parallel<'_, 't> {
    fn proceed(&mut self) -> bool {
        if self.shared.stop.load(Ordering::Relaxed) {
            return false;
        }
        let done = self.shared.steps.fetch_add(1, Ordering::Relaxed);
        if self.shared.budget.is_some_and(|b| done >= b) {
            self.shared.budget_hit.store(true, Ordering::SeqCst);
            self.shared.finish();
            return false;
        }
        true
    }

    fn offload(&self, branch: &Branch<'t>, label: &Label) -> bool {
        if self.shared.idle.load(Ordering::Relaxed) == 0 {
            return false;
        }
        let mut pool = self.shared.pool.lock().unwrap();
        if pool.queue.len() >= pool.idle {
            return false;
        }
        pool.queue.push((branch.clone(), label.clone()));
        self.shared.wake.notify_one();
        true
    }
}

fn parallel(tableau: &Tableau, config: &SolveConfig) -> Verdict {
    let workers = config.threads.max(1);
    let shared = Shared {
        pool: Mutex::new(Pool {
            queue: vec![(Branch::new(tableau), tableau.root_label())],
            idle: 0,
            done: false,
        }),
        wake: Condvar::new(),
        idle: AtomicUsize::new(0),
        stop: AtomicBool::new(false),
        budget_hit: AtomicBool::new(false),
        steps: AtomicU64::new(0),
        budget: config.budget,
        model: Mutex::new(None),
        stats: Mutex::new(Stats::default()),
    };
    std::thread::scope(|scope| {
        for _ in 0..workers {
            scope.spawn(|| {
                let mut worker = Worker::new(tableau, config);
                let mut ctl = Parallel { shared: &shared };
                while let Some((branch, label)) = shared.next_task(workers) {
                    worker.stack.push((branch.len(), label));
                    worker.branch = branch;
                    match worker.run(&mut ctl) {
                        Run::Exhausted => {}
                        Run::Sat(m) => {
                            shared.model.lock().unwrap().get_or_insert(m);
                            shared.finish();
                        }
                        Run::Stopped => break,
                    }
                }
                shared.stats.lock().unwrap().merge(&worker.stats);
            });
        }
    });
    let model = shared.model.into_inner().unwrap();
    let outcome = match model {
        Some(m) => Outcome::Sat(m),
        None if shared.budget_hit.load(Ordering::SeqCst) => Outcome::BudgetExceeded,
        None => Outcome::Unsat,
    };
    Verdict {
        outcome,
        stats: shared.stats.into_inner().unwrap(),
        trace: None,
    }
}
