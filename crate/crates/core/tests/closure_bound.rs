//! Every label the search visits stays inside the closure of the input,
//! and the closure stays within four times the size of the desugared input.

mod common;

use onepass::engine::{solve, SolveConfig};
use onepass::formula::{closure, desugar, Kind};

#[test]
fn closure_size_bound() {
    let mut formulas = common::builtin();
    formulas.extend(common::enumerated(6));
    formulas.extend(common::random_formulas(31, 300, 6));
    for f in formulas {
        let d = desugar(f);
        let c = closure(d);
        assert!(c.len() <= 4 * d.size(), "{f}: {} > 4 * {}", c.len(), d.size());
        assert!(c.contains(d) && c.contains(d.not()));
    }
}

#[test]
fn core_labels_stay_in_closure() {
    // On core formulas the label members are closure members, except the
    // negated-until successor X !(a U b) which the NOT-UNTIL rule introduces.
    for f in common::enumerated(5).into_iter().filter(|f| f.is_core()) {
        let c = closure(f);
        let config = SolveConfig { trace: true, ..SolveConfig::default() };
        let v = solve(f, &config);
        for e in &v.trace.unwrap().events {
            for &m in &e.label {
                let extra = match m.kind() {
                    Kind::Next(inner) => matches!(inner.kind(), Kind::Not(g) if matches!(g.kind(), Kind::Until(..))),
                    _ => false,
                };
                assert!(c.contains(m) || extra, "{m} outside closure of {f}");
            }
        }
    }
}
