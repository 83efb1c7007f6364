use crate::formula::Formula;

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct EnumOptions {
    /// Include `F` and `G` alongside the core connectives.
    pub temporal: bool,
    /// Keep only formulas whose atoms first occur, left to right, in the
    /// order they are listed. `q U p` is then dropped in favour of `p U q`.
    pub canonical: bool,
}

/// Every formula over `atoms` built from `¬ ∧ X U` (plus `F G` when
/// enabled) with at most `max_size` nodes, smallest first, each exactly once.
pub fn enumerate_formulas(
    max_size: usize,
    atoms: &[&str],
    opts: EnumOptions,
) -> impl Iterator<Item = Formula> {
    // by_size[n] holds every formula of exactly n nodes
    let mut by_size: Vec<Vec<Formula>> = vec![Vec::new()];
    for n in 1..=max_size {
        let mut level = Vec::new();
        if n == 1 {
            level.extend(atoms.iter().map(|a| Formula::atom(a)));
        } else {
            for &a in &by_size[n - 1] {
                level.push(a.not());
                level.push(a.next());
                if opts.temporal {
                    level.push(a.eventually());
                    level.push(a.always());
                }
            }
            for left in 1..n - 1 {
                let right = n - 1 - left;
                for &a in &by_size[left] {
                    for &b in &by_size[right] {
                        level.push(a.and(b));
                        level.push(a.until(b));
                    }
                }
            }
        }
        by_size.push(level);
    }
    let names: Vec<String> = atoms.iter().map(|a| a.to_string()).collect();
    by_size
        .into_iter()
        .flatten()
        .filter(move |f| !opts.canonical || is_canonical(*f, &names))
        .collect::<Vec<_>>()
        .into_iter()
}

fn is_canonical(f: Formula, atoms: &[String]) -> bool {
    f.atoms().iter().zip(atoms).all(|(used, listed)| **used == **listed)
}
