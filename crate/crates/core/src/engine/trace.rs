use std::fmt;

use super::Rule;
use crate::formula::Formula;

/// One rule application, in exploration order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TraceEvent {
    /// Position of the node on its branch.
    pub index: usize,
    pub rule: Rule,
    pub pivot: Option<Formula>,
    pub loop_ancestor: Option<usize>,
    pub label: Vec<Formula>,
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Trace {
    pub events: Vec<TraceEvent>,
}

impl fmt::Display for TraceEvent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.rule == Rule::Transition {
            f.write_str("=")?;
        }
        write!(f, "{} | ", self.index)?;
        match self.rule {
            Rule::Empty => f.write_str("TICK(EMPTY)")?,
            Rule::Loop => write!(
                f,
                "TICK(LOOP -> ancestor {})",
                self.loop_ancestor.expect("loop events carry their ancestor")
            )?,
            r if r.is_cross() => write!(f, "CROSS({r})")?,
            r => write!(f, "{r}")?,
        }
        match self.pivot {
            Some(p) => write!(f, " | {p} | ")?,
            None => f.write_str(" | - | ")?,
        }
        f.write_str("{")?;
        for (i, m) in self.label.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{m}")?;
        }
        f.write_str("}")
    }
}

impl fmt::Display for Trace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for e in &self.events {
            writeln!(f, "{e}")?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::engine::StaticRule;
    use crate::formula::parse;

    #[test]
    fn line_formats() {
        let p = parse("p").unwrap();
        let e = TraceEvent {
            index: 3,
            rule: Rule::Transition,
            pivot: None,
            loop_ancestor: None,
            label: vec![p, parse("X G p").unwrap()],
        };
        assert_eq!(e.to_string(), "=3 | TRANSITION | - | {p, X G p}");
        let e = TraceEvent {
            index: 0,
            rule: Rule::Static(StaticRule::Always),
            pivot: Some(parse("G p").unwrap()),
            loop_ancestor: None,
            label: vec![parse("G p").unwrap()],
        };
        assert_eq!(e.to_string(), "0 | G | G p | {G p}");
        let e = TraceEvent {
            index: 4,
            rule: Rule::Loop,
            pivot: None,
            loop_ancestor: Some(1),
            label: vec![p],
        };
        assert_eq!(e.to_string(), "4 | TICK(LOOP -> ancestor 1) | - | {p}");
        let e = TraceEvent {
            index: 2,
            rule: Rule::Prune,
            pivot: None,
            loop_ancestor: None,
            label: vec![],
        };
        assert_eq!(e.to_string(), "2 | CROSS(PRUNE) | - | {}");
    }
}
