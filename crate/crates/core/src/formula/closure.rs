use std::collections::{BTreeSet, HashMap};

use super::{Formula, Kind};

/// Atom used to spell out `true` in the core language. The `$` keeps it out
/// of the parseable identifier space.
pub const RESERVED_ATOM: &str = "$p0";

/// Formulas that may occur in tableau labels for a given root.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClosureSet {
    pub members: BTreeSet<Formula>,
}

impl ClosureSet {
    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn contains(&self, f: Formula) -> bool {
        self.members.contains(&f)
    }
}

/// `{ψ, ¬ψ | ψ ≤ φ}` plus `Xψ, ¬Xψ` for every `αUβ`, `Fβ`, `Gβ` and `¬Gβ`
/// subformula ψ.
pub fn closure(phi: Formula) -> ClosureSet {
    let mut members = BTreeSet::new();
    for psi in phi.subformulas() {
        members.insert(psi);
        members.insert(psi.not());
        let temporal = match psi.kind() {
            Kind::Until(..) | Kind::Eventually(_) | Kind::Always(_) => true,
            Kind::Not(inner) => matches!(inner.kind(), Kind::Always(_)),
            _ => false,
        };
        if temporal {
            members.insert(psi.next());
            members.insert(psi.next().not());
        }
    }
    ClosureSet { members }
}

/// Rewrites every abbreviation into atoms, `¬`, `∧`, `X` and `U`.
pub fn desugar(phi: Formula) -> Formula {
    let mut memo = HashMap::new();
    go(phi, &mut memo)
}

fn top() -> Formula {
    let p = Formula::atom(RESERVED_ATOM);
    p.and(p.not()).not()
}

fn or(a: Formula, b: Formula) -> Formula {
    a.not().and(b.not()).not()
}

fn go(f: Formula, memo: &mut HashMap<Formula, Formula>) -> Formula {
    if let Some(&d) = memo.get(&f) {
        return d;
    }
    let d = match f.kind() {
        Kind::Atom(_) => f,
        Kind::True => top(),
        Kind::False => top().not(),
        Kind::Not(a) => go(a, memo).not(),
        Kind::And(a, b) => go(a, memo).and(go(b, memo)),
        Kind::Or(a, b) => or(go(a, memo), go(b, memo)),
        Kind::Implies(a, b) => or(go(a, memo).not(), go(b, memo)),
        Kind::Iff(a, b) => {
            let (a, b) = (go(a, memo), go(b, memo));
            or(a.not(), b).and(or(b.not(), a))
        }
        Kind::Next(a) => go(a, memo).next(),
        Kind::Until(a, b) => go(a, memo).until(go(b, memo)),
        Kind::Eventually(a) => top().until(go(a, memo)),
        Kind::Always(a) => top().until(go(a, memo).not()).not(),
    };
    memo.insert(f, d);
    d
}
