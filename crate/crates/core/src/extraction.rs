//! Lasso models read off a ticked branch.
//!
//! Each TRANSITION on the branch contributes one state, valued by the atoms
//! of the poised label it fired from. A branch ticked by EMPTY ends in an
//! extra empty state that loops to itself; a branch ticked by LOOP jumps
//! back to the state of the matching ancestor.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::engine::{Branch, EngineError, Rule};

/// Atoms true in one state.
pub type Valuation = BTreeSet<String>;

/// An ultimately periodic path: `prefix` once, then `period` forever.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct LassoModel {
    pub prefix: Vec<Valuation>,
    pub period: Vec<Valuation>,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ModelError {
    #[error("period must contain at least one state")]
    EmptyPeriod,
    #[error("malformed model text: {0}")]
    Syntax(String),
}

impl LassoModel {
    pub fn new(prefix: Vec<Valuation>, period: Vec<Valuation>) -> Result<Self, ModelError> {
        if period.is_empty() {
            return Err(ModelError::EmptyPeriod);
        }
        Ok(LassoModel { prefix, period })
    }

    /// Builds a model from slices of atom-name lists.
    pub fn from_atoms(prefix: &[&[&str]], period: &[&[&str]]) -> Result<Self, ModelError> {
        let conv = |states: &[&[&str]]| {
            states
                .iter()
                .map(|s| s.iter().map(|a| a.to_string()).collect())
                .collect()
        };
        LassoModel::new(conv(prefix), conv(period))
    }

    /// Number of distinct positions, `|prefix| + |period|`.
    pub fn len(&self) -> usize {
        self.prefix.len() + self.period.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn loop_start(&self) -> usize {
        self.prefix.len()
    }

    pub fn successor(&self, pos: usize) -> usize {
        if pos + 1 == self.len() {
            self.loop_start()
        } else {
            pos + 1
        }
    }

    /// Valuation at position `pos` of the induced infinite path.
    pub fn state(&self, pos: usize) -> &Valuation {
        if pos < self.prefix.len() {
            &self.prefix[pos]
        } else {
            &self.period[(pos - self.prefix.len()) % self.period.len()]
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("model serializes")
    }
}

fn write_states(f: &mut fmt::Formatter<'_>, states: &[Valuation]) -> fmt::Result {
    for (i, s) in states.iter().enumerate() {
        if i > 0 {
            f.write_str(" ;")?;
        }
        f.write_str(" {")?;
        for (j, a) in s.iter().enumerate() {
            if j > 0 {
                f.write_str(",")?;
            }
            f.write_str(a)?;
        }
        f.write_str("}")?;
    }
    Ok(())
}

/// `prefix: {a,b} ; {} | period: {a}`
impl fmt::Display for LassoModel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("prefix:")?;
        write_states(f, &self.prefix)?;
        f.write_str(" | period:")?;
        write_states(f, &self.period)
    }
}

fn parse_states(text: &str) -> Result<Vec<Valuation>, ModelError> {
    let text = text.trim();
    if text.is_empty() {
        return Ok(Vec::new());
    }
    text.split(';')
        .map(|s| {
            let inner = s
                .trim()
                .strip_prefix('{')
                .and_then(|s| s.strip_suffix('}'))
                .ok_or_else(|| ModelError::Syntax(format!("expected `{{...}}`, found `{}`", s.trim())))?;
            Ok(inner
                .split(',')
                .map(str::trim)
                .filter(|a| !a.is_empty())
                .map(String::from)
                .collect())
        })
        .collect()
}

impl FromStr for LassoModel {
    type Err = ModelError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let (pre, per) = s
            .split_once('|')
            .ok_or_else(|| ModelError::Syntax("missing `|`".into()))?;
        let pre = pre
            .trim()
            .strip_prefix("prefix:")
            .ok_or_else(|| ModelError::Syntax("missing `prefix:`".into()))?;
        let per = per
            .trim()
            .strip_prefix("period:")
            .ok_or_else(|| ModelError::Syntax("missing `period:`".into()))?;
        LassoModel::new(parse_states(pre)?, parse_states(per)?)
    }
}

/// Reads the model off a branch whose leaf was ticked by EMPTY or LOOP.
pub fn extract_model(branch: &Branch<'_>) -> Result<LassoModel, EngineError> {
    let leaf = branch.leaf().ok_or(EngineError::NotTicked)?;
    let tableau = branch.tableau();
    let valuation = |idx: usize| -> Valuation {
        let label = branch.frames()[idx]
            .label
            .as_ref()
            .expect("poised frames keep labels");
        tableau
            .atoms(label)
            .into_iter()
            .map(|s| s.name().to_string())
            .collect()
    };
    let states: Vec<Valuation> = branch.transitions().iter().map(|&j| valuation(j)).collect();
    match leaf.rule {
        Some(Rule::Empty) => Ok(LassoModel {
            prefix: states,
            period: vec![Valuation::new()],
        }),
        Some(Rule::Loop) => {
            let ancestor = leaf.loop_ancestor.ok_or(EngineError::NotTicked)?;
            let l = branch
                .transitions()
                .iter()
                .position(|&j| j == ancestor)
                .ok_or(EngineError::NotTicked)?;
            let mut prefix = states;
            let period = prefix.split_off(l);
            Ok(LassoModel { prefix, period })
        }
        _ => Err(EngineError::NotTicked),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::engine::{solve, SolveConfig, Tableau};
    use crate::formula::parse;
    use proptest::prelude::*;

    fn model(s: &str) -> LassoModel {
        solve(parse(s).unwrap(), &SolveConfig::default())
            .model()
            .cloned()
            .unwrap()
    }

    #[test]
    fn always_p_is_a_single_looping_state() {
        assert_eq!(model("G p"), LassoModel::from_atoms(&[], &[&["p"]]).unwrap());
    }

    #[test]
    fn next_p_ends_in_empty_state() {
        // {Xp} -> TRANSITION -> {p} -> TRANSITION -> {} -> EMPTY
        assert_eq!(
            model("X p"),
            LassoModel::from_atoms(&[&[], &["p"]], &[&[]]).unwrap()
        );
    }

    #[test]
    fn text_format() {
        let m = LassoModel::from_atoms(&[&["a", "b"], &[]], &[&["a"]]).unwrap();
        assert_eq!(m.to_string(), "prefix: {a,b} ; {} | period: {a}");
        let m = LassoModel::from_atoms(&[], &[&["p"]]).unwrap();
        assert_eq!(m.to_string(), "prefix: | period: {p}");
        assert_eq!(m.to_json(), r#"{"prefix":[],"period":[["p"]]}"#);
    }

    #[test]
    fn rejects_bad_text() {
        assert_eq!("prefix: | period:".parse::<LassoModel>(), Err(ModelError::EmptyPeriod));
        assert!("prefix: {a} period: {b}".parse::<LassoModel>().is_err());
        assert!("prefix: a | period: {b}".parse::<LassoModel>().is_err());
    }

    #[test]
    fn unticked_branch_is_rejected() {
        let t = Tableau::new(parse("p").unwrap());
        let b = Branch::new(&t);
        assert_eq!(extract_model(&b), Err(EngineError::NotTicked));
    }

    #[test]
    fn induced_path() {
        let m = LassoModel::from_atoms(&[&["a"]], &[&["b"], &["c"]]).unwrap();
        let names: Vec<_> = (0..6).map(|i| m.state(i).iter().next().unwrap().clone()).collect();
        assert_eq!(names, ["a", "b", "c", "b", "c", "b"]);
        assert_eq!(m.successor(2), 1);
    }

    fn valuation() -> impl Strategy<Value = Valuation> {
        proptest::collection::btree_set("[a-z][a-z0-9_]{0,3}", 0..4)
    }

    proptest! {
        #[test]
        fn text_round_trip(
            prefix in proptest::collection::vec(valuation(), 0..4),
            period in proptest::collection::vec(valuation(), 1..4),
        ) {
            let m = LassoModel::new(prefix, period).unwrap();
            prop_assert_eq!(m.to_string().parse::<LassoModel>().unwrap(), m.clone());
            let back: LassoModel = serde_json::from_str(&m.to_json()).unwrap();
            prop_assert_eq!(back, m);
        }
    }
}
