#![allow(dead_code)]

use onepass::bench::{suite, BuiltinSuite};
use onepass::formula::Formula;
use onepass::oracle::{enumerate_formulas, EnumOptions};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Random formula over all connectives with nesting depth at most `depth`.
/// Leaves are atoms, occasionally `true`; `false` is left out because
/// `... U false` subterms make the tree blow up without testing anything new.
pub fn random_formula(rng: &mut impl Rng, depth: u32, atoms: &[&str]) -> Formula {
    if depth == 0 || rng.gen_ratio(2, 5) {
        return if rng.gen_ratio(1, 25) {
            Formula::top()
        } else {
            Formula::atom(atoms[rng.gen_range(0..atoms.len())])
        };
    }
    let sub = |rng: &mut _| random_formula(rng, depth - 1, atoms);
    match rng.gen_range(0..11) {
        0 => sub(rng).not(),
        1 => sub(rng).next(),
        2 => sub(rng).eventually(),
        3 => sub(rng).always(),
        4 => sub(rng).and(sub(rng)),
        5 => sub(rng).or(sub(rng)),
        6 => sub(rng).implies(sub(rng)),
        7 => sub(rng).iff(sub(rng)),
        _ => sub(rng).until(sub(rng)),
    }
}

pub fn random_formulas(seed: u64, count: usize, depth: u32) -> Vec<Formula> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|_| random_formula(&mut rng, depth, &["p", "q", "r"]))
        .collect()
}

pub fn enumerated(max_size: usize) -> Vec<Formula> {
    let opts = EnumOptions { temporal: true, canonical: true };
    enumerate_formulas(max_size, &["p", "q"], opts).collect()
}

/// Classic examples, counters, pattern families.
pub fn builtin() -> Vec<Formula> {
    suite(BuiltinSuite::All).into_iter().map(|c| c.formula).collect()
}
