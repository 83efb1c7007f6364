//! LTL formulas as hash-consed handles.
//!
//! Every [`Formula`] is an index into a process-wide intern table, so two
//! formulas are structurally equal exactly when their handles are equal.
//! The table only grows; once a formula has been built it can be read from
//! any thread.

mod closure;
mod parse;
mod print;

use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, LazyLock, RwLock};

pub use closure::{closure, desugar, ClosureSet, RESERVED_ATOM};
pub use parse::{parse, parse_lines, ParseError};

/// Interned atom name.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Sym(u32);

impl Sym {
    pub fn new(name: &str) -> Sym {
        if let Some(s) = INTERNER.read().unwrap().syms.get(name) {
            return *s;
        }
        let mut table = INTERNER.write().unwrap();
        if let Some(s) = table.syms.get(name) {
            return *s;
        }
        let sym = Sym(table.sym_names.len() as u32);
        let name: Arc<str> = Arc::from(name);
        table.sym_names.push(name.clone());
        table.syms.insert(name, sym);
        sym
    }

    pub fn name(self) -> Arc<str> {
        INTERNER.read().unwrap().sym_names[self.0 as usize].clone()
    }
}

/// Handle to an interned formula.
///
/// Ordering compares intern handles and is only stable within one process;
/// use it for set membership, never for user-visible ordering.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Formula(u32);

/// One layer of formula structure.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Kind {
    Atom(Sym),
    True,
    False,
    Not(Formula),
    And(Formula, Formula),
    Or(Formula, Formula),
    Implies(Formula, Formula),
    Iff(Formula, Formula),
    Next(Formula),
    Until(Formula, Formula),
    Eventually(Formula),
    Always(Formula),
}

impl Kind {
    /// Direct children, left to right.
    pub fn children(&self) -> impl Iterator<Item = Formula> {
        let (a, b) = match *self {
            Kind::Atom(_) | Kind::True | Kind::False => (None, None),
            Kind::Not(a) | Kind::Next(a) | Kind::Eventually(a) | Kind::Always(a) => {
                (Some(a), None)
            }
            Kind::And(a, b)
            | Kind::Or(a, b)
            | Kind::Implies(a, b)
            | Kind::Iff(a, b)
            | Kind::Until(a, b) => (Some(a), Some(b)),
        };
        a.into_iter().chain(b)
    }
}

struct Node {
    kind: Kind,
    size: u32,
}

#[derive(Default)]
struct Interner {
    nodes: Vec<Node>,
    lookup: HashMap<Kind, Formula>,
    sym_names: Vec<Arc<str>>,
    syms: HashMap<Arc<str>, Sym>,
}

static INTERNER: LazyLock<RwLock<Interner>> = LazyLock::new(Default::default);

impl Formula {
    pub fn intern(kind: Kind) -> Formula {
        if let Some(f) = INTERNER.read().unwrap().lookup.get(&kind) {
            return *f;
        }
        let mut table = INTERNER.write().unwrap();
        if let Some(f) = table.lookup.get(&kind) {
            return *f;
        }
        let size = 1 + kind
            .children()
            .map(|c| table.nodes[c.0 as usize].size)
            .sum::<u32>();
        let f = Formula(table.nodes.len() as u32);
        table.nodes.push(Node { kind, size });
        table.lookup.insert(kind, f);
        f
    }

    pub fn kind(self) -> Kind {
        INTERNER.read().unwrap().nodes[self.0 as usize].kind
    }

    /// Number of AST nodes.
    pub fn size(self) -> usize {
        INTERNER.read().unwrap().nodes[self.0 as usize].size as usize
    }

    pub fn atom(name: &str) -> Formula {
        Formula::intern(Kind::Atom(Sym::new(name)))
    }

    pub fn top() -> Formula {
        Formula::intern(Kind::True)
    }

    pub fn bottom() -> Formula {
        Formula::intern(Kind::False)
    }

    #[allow(clippy::should_implement_trait)]
    pub fn not(self) -> Formula {
        Formula::intern(Kind::Not(self))
    }

    pub fn and(self, rhs: Formula) -> Formula {
        Formula::intern(Kind::And(self, rhs))
    }

    pub fn or(self, rhs: Formula) -> Formula {
        Formula::intern(Kind::Or(self, rhs))
    }

    pub fn implies(self, rhs: Formula) -> Formula {
        Formula::intern(Kind::Implies(self, rhs))
    }

    pub fn iff(self, rhs: Formula) -> Formula {
        Formula::intern(Kind::Iff(self, rhs))
    }

    pub fn next(self) -> Formula {
        Formula::intern(Kind::Next(self))
    }

    pub fn until(self, rhs: Formula) -> Formula {
        Formula::intern(Kind::Until(self, rhs))
    }

    pub fn eventually(self) -> Formula {
        Formula::intern(Kind::Eventually(self))
    }

    pub fn always(self) -> Formula {
        Formula::intern(Kind::Always(self))
    }

    /// Left-nested conjunction; `None` for an empty iterator.
    pub fn conjunction(parts: impl IntoIterator<Item = Formula>) -> Option<Formula> {
        parts.into_iter().reduce(Formula::and)
    }

    pub fn atom_sym(self) -> Option<Sym> {
        match self.kind() {
            Kind::Atom(s) => Some(s),
            _ => None,
        }
    }

    /// Subformulas in pre-order, each reported once.
    pub fn subformulas(self) -> Vec<Formula> {
        let mut seen = std::collections::HashSet::new();
        let mut out = Vec::new();
        let mut stack = vec![self];
        while let Some(f) = stack.pop() {
            if !seen.insert(f) {
                continue;
            }
            out.push(f);
            let kids: Vec<_> = f.kind().children().collect();
            stack.extend(kids.into_iter().rev());
        }
        out
    }

    /// Subformulas, each once, every one after all of its children.
    pub fn bottom_up(self) -> Vec<Formula> {
        let mut all = self.subformulas();
        all.sort_by_key(|f| f.size());
        all
    }

    /// Atom names in left-to-right order of first occurrence.
    pub fn atoms(self) -> Vec<Arc<str>> {
        let mut seen = Vec::new();
        for f in self.subformulas() {
            if let Kind::Atom(s) = f.kind() {
                if !seen.contains(&s) {
                    seen.push(s);
                }
            }
        }
        seen.into_iter().map(Sym::name).collect()
    }

    /// True for formulas built only from atoms, `!`, `&`, `X` and `U`.
    pub fn is_core(self) -> bool {
        self.subformulas().into_iter().all(|f| {
            matches!(
                f.kind(),
                Kind::Atom(_) | Kind::Not(_) | Kind::And(..) | Kind::Next(_) | Kind::Until(..)
            )
        })
    }
}

impl fmt::Debug for Formula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Formula({})", self)
    }
}

impl fmt::Display for Formula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&print::render(*self))
    }
}

impl std::str::FromStr for Formula {
    type Err = ParseError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        parse(s)
    }
}
