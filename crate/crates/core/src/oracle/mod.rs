//! Ground truth for checking the tableau: the LTL semantics evaluated
//! directly on lasso paths, a brute-force bounded model search, and an
//! exhaustive formula enumerator.

mod brute;
mod enumerate;

use std::collections::HashMap;

pub use brute::{brute_sat, Program};
pub use enumerate::{enumerate_formulas, EnumOptions};

use crate::extraction::LassoModel;
use crate::formula::{Formula, Kind};

/// Truth of every subformula at every position of a lasso.
///
/// Positions run over `0..|prefix| + |period|`; the successor of the last
/// position is the first position of the period.
#[derive(Debug, Clone)]
pub struct EvalTable {
    truth: HashMap<Formula, Vec<bool>>,
}

impl EvalTable {
    pub fn build(phi: Formula, model: &LassoModel) -> EvalTable {
        let n = model.len();
        let start = model.loop_start();
        let succ = |i: usize| if i + 1 == n { start } else { i + 1 };
        let mut truth: HashMap<Formula, Vec<bool>> = HashMap::new();
        for f in phi.bottom_up() {
            let get = |g: Formula| &truth[&g];
            let row: Vec<bool> = match f.kind() {
                Kind::Atom(s) => {
                    let name = s.name();
                    (0..n).map(|i| model.state(i).contains(&*name)).collect()
                }
                Kind::True => vec![true; n],
                Kind::False => vec![false; n],
                Kind::Not(a) => get(a).iter().map(|v| !v).collect(),
                Kind::And(a, b) => zip(get(a), get(b), |x, y| x && y),
                Kind::Or(a, b) => zip(get(a), get(b), |x, y| x || y),
                Kind::Implies(a, b) => zip(get(a), get(b), |x, y| !x || y),
                Kind::Iff(a, b) => zip(get(a), get(b), |x, y| x == y),
                Kind::Next(a) => {
                    let a = get(a);
                    (0..n).map(|i| a[succ(i)]).collect()
                }
                Kind::Until(a, b) => until(get(a), get(b), start),
                Kind::Eventually(b) => until(&vec![true; n], get(b), start),
                Kind::Always(a) => {
                    let not_a: Vec<bool> = get(a).iter().map(|v| !v).collect();
                    until(&vec![true; n], &not_a, start)
                        .into_iter()
                        .map(|v| !v)
                        .collect()
                }
            };
            truth.insert(f, row);
        }
        EvalTable { truth }
    }

    /// Truth of a subformula at a position; `None` if `f` is not a
    /// subformula of the table's root.
    pub fn get(&self, f: Formula, pos: usize) -> Option<bool> {
        self.truth.get(&f).and_then(|row| row.get(pos).copied())
    }
}

fn zip(a: &[bool], b: &[bool], op: impl Fn(bool, bool) -> bool) -> Vec<bool> {
    a.iter().zip(b).map(|(&x, &y)| op(x, y)).collect()
}

/// Least solution of `y = b ∨ (a ∧ X y)` on a lasso: the loop twice
/// backwards (the first pass settles the loop start), then the prefix.
fn until(a: &[bool], b: &[bool], start: usize) -> Vec<bool> {
    let n = a.len();
    let mut y = vec![false; n];
    for _ in 0..2 {
        for i in (start..n).rev() {
            let next = if i + 1 == n { y[start] } else { y[i + 1] };
            y[i] = b[i] || (a[i] && next);
        }
    }
    for i in (0..start).rev() {
        y[i] = b[i] || (a[i] && y[i + 1]);
    }
    y
}

/// Does the path induced by `model` satisfy `phi` at position 0?
pub fn eval_lasso(phi: Formula, model: &LassoModel) -> bool {
    EvalTable::build(phi, model).get(phi, 0).expect("root is tabled")
}
