use std::sync::Arc;

use crate::extraction::{LassoModel, Valuation};
use crate::formula::{Formula, Kind};

#[derive(Debug, Clone, Copy)]
enum Op {
    Atom(usize),
    True,
    False,
    Not(usize),
    And(usize, usize),
    Or(usize, usize),
    Implies(usize, usize),
    Iff(usize, usize),
    Next(usize),
    Until(usize, usize),
    Eventually(usize),
    Always(usize),
}

/// A formula compiled for bit-parallel evaluation on lassos of at most 64
/// positions. Bit `i` of a mask is the truth value at position `i`.
#[derive(Debug, Clone)]
pub struct Program {
    atoms: Vec<Arc<str>>,
    ops: Vec<Op>,
}

impl Program {
    pub fn compile(phi: Formula) -> Program {
        let atoms = phi.atoms();
        let order: Vec<Formula> = phi.bottom_up();
        let at = |g: Formula| order.iter().position(|&h| h == g).expect("child compiled first");
        let ops = order
            .iter()
            .map(|f| match f.kind() {
                Kind::Atom(s) => Op::Atom(atoms.iter().position(|a| **a == *s.name()).unwrap()),
                Kind::True => Op::True,
                Kind::False => Op::False,
                Kind::Not(a) => Op::Not(at(a)),
                Kind::And(a, b) => Op::And(at(a), at(b)),
                Kind::Or(a, b) => Op::Or(at(a), at(b)),
                Kind::Implies(a, b) => Op::Implies(at(a), at(b)),
                Kind::Iff(a, b) => Op::Iff(at(a), at(b)),
                Kind::Next(a) => Op::Next(at(a)),
                Kind::Until(a, b) => Op::Until(at(a), at(b)),
                Kind::Eventually(a) => Op::Eventually(at(a)),
                Kind::Always(a) => Op::Always(at(a)),
            })
            .collect();
        Program { atoms, ops }
    }

    pub fn atoms(&self) -> &[Arc<str>] {
        &self.atoms
    }

    /// Truth at position 0 on the lasso with `len` positions looping back to
    /// `start`, where `atom_masks[i]` holds the values of atom `i`.
    pub fn eval(&self, atom_masks: &[u64], len: usize, start: usize, buf: &mut Vec<u64>) -> bool {
        debug_assert!((1..=64).contains(&len) && start < len);
        let full = if len == 64 { u64::MAX } else { (1u64 << len) - 1 };
        let next = |m: u64| (m >> 1) | (((m >> start) & 1) << (len - 1));
        buf.clear();
        for op in &self.ops {
            let v = match *op {
                Op::Atom(i) => atom_masks[i],
                Op::True => full,
                Op::False => 0,
                Op::Not(a) => !buf[a] & full,
                Op::And(a, b) => buf[a] & buf[b],
                Op::Or(a, b) => buf[a] | buf[b],
                Op::Implies(a, b) => (!buf[a] | buf[b]) & full,
                Op::Iff(a, b) => !(buf[a] ^ buf[b]) & full,
                Op::Next(a) => next(buf[a]),
                Op::Until(a, b) => lfp(buf[b], buf[a], next),
                Op::Eventually(b) => lfp(buf[b], full, next),
                Op::Always(a) => {
                    let a = buf[a];
                    let mut y = a;
                    loop {
                        let y2 = a & next(y);
                        if y2 == y {
                            break y;
                        }
                        y = y2;
                    }
                }
            };
            buf.push(v);
        }
        buf.last().unwrap() & 1 == 1
    }
}

fn lfp(b: u64, a: u64, next: impl Fn(u64) -> u64) -> u64 {
    let mut y = b;
    loop {
        let y2 = b | (a & next(y));
        if y2 == y {
            return y;
        }
        y = y2;
    }
}

/// Searches every lasso over the atoms of `phi` with at most `max_prefix`
/// prefix states and between 1 and `max_period` period states, smallest
/// total length first. `None` only means no model exists within the bound.
pub fn brute_sat(phi: Formula, max_prefix: usize, max_period: usize) -> Option<LassoModel> {
    let prog = Program::compile(phi);
    let k = prog.atoms().len();
    let mut buf = Vec::new();
    let mut masks = vec![0u64; k];
    for total in 1..=max_prefix + max_period {
        assert!(total <= 64, "lassos longer than 64 states are not supported");
        for period in 1..=max_period.min(total) {
            let prefix = total - period;
            if prefix > max_prefix {
                continue;
            }
            let bits = total * k;
            assert!(bits < 64, "search space too large for exhaustive mode");
            let per_atom = (1u64 << total) - 1;
            for code in 0..(1u64 << bits) {
                for (i, m) in masks.iter_mut().enumerate() {
                    *m = (code >> (i * total)) & per_atom;
                }
                if prog.eval(&masks, total, prefix, &mut buf) {
                    let state = |pos: usize| -> Valuation {
                        (0..k)
                            .filter(|&i| masks[i] >> pos & 1 == 1)
                            .map(|i| prog.atoms()[i].to_string())
                            .collect()
                    };
                    let states: Vec<Valuation> = (0..total).map(state).collect();
                    let mut pre = states;
                    let per = pre.split_off(prefix);
                    return Some(LassoModel::new(pre, per).expect("period is nonempty"));
                }
            }
        }
    }
    None
}
