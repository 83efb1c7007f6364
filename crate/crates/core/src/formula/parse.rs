//! Recursive-descent parser for the concrete formula syntax.
//!
//! ```text
//! iff     := imp ("<->" imp)*
//! imp     := or ("->" imp)?
//! or      := and ("|" and)*
//! and     := until ("&" until)*
//! until   := unary ("U" until)?
//! unary   := ("!" | "X" | "F" | "G") unary | primary
//! primary := ident | "true" | "false" | "(" iff ")"
//! ```

use std::fmt;

use thiserror::Error;

use super::Formula;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("{line}:{column}: expected {}, found {found}", expected.join(" or "))]
pub struct ParseError {
    pub line: usize,
    pub column: usize,
    pub expected: Vec<String>,
    pub found: String,
}

#[derive(Debug, Clone, PartialEq, Eq)]
enum Tok {
    Ident(String),
    True,
    False,
    Not,
    And,
    Or,
    Implies,
    Iff,
    Next,
    Until,
    Eventually,
    Always,
    LParen,
    RParen,
    Eof,
}

impl fmt::Display for Tok {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Tok::Ident(s) => write!(f, "atom `{s}`"),
            Tok::True => f.write_str("`true`"),
            Tok::False => f.write_str("`false`"),
            Tok::Not => f.write_str("`!`"),
            Tok::And => f.write_str("`&`"),
            Tok::Or => f.write_str("`|`"),
            Tok::Implies => f.write_str("`->`"),
            Tok::Iff => f.write_str("`<->`"),
            Tok::Next => f.write_str("`X`"),
            Tok::Until => f.write_str("`U`"),
            Tok::Eventually => f.write_str("`F`"),
            Tok::Always => f.write_str("`G`"),
            Tok::LParen => f.write_str("`(`"),
            Tok::RParen => f.write_str("`)`"),
            Tok::Eof => f.write_str("end of input"),
        }
    }
}

#[derive(Debug, Clone)]
struct Spanned {
    tok: Tok,
    line: usize,
    column: usize,
}

struct Cursor<'a> {
    chars: std::iter::Peekable<std::str::Chars<'a>>,
    line: usize,
    column: usize,
}

impl Cursor<'_> {
    fn peek(&mut self) -> Option<char> {
        self.chars.peek().copied()
    }

    fn bump(&mut self) -> char {
        let c = self.chars.next().unwrap();
        if c == '\n' {
            self.line += 1;
            self.column = 1;
        } else {
            self.column += 1;
        }
        c
    }

    fn expect(&mut self, want: char) -> Result<(), ParseError> {
        if self.peek() == Some(want) {
            self.bump();
            Ok(())
        } else {
            Err(ParseError {
                line: self.line,
                column: self.column,
                expected: vec![format!("`{want}`")],
                found: describe_char(self.peek()),
            })
        }
    }
}

fn lex(text: &str) -> Result<Vec<Spanned>, ParseError> {
    let mut out = Vec::new();
    let mut cur = Cursor {
        chars: text.chars().peekable(),
        line: 1,
        column: 1,
    };
    while let Some(c) = cur.peek() {
        let (line, column) = (cur.line, cur.column);
        if c.is_whitespace() {
            cur.bump();
            continue;
        }
        let tok = if c.is_ascii_alphabetic() || c == '_' {
            let mut word = String::new();
            while matches!(cur.peek(), Some(c) if c.is_ascii_alphanumeric() || c == '_') {
                word.push(cur.bump());
            }
            match word.as_str() {
                "X" => Tok::Next,
                "U" => Tok::Until,
                "F" => Tok::Eventually,
                "G" => Tok::Always,
                "true" => Tok::True,
                "false" => Tok::False,
                _ => Tok::Ident(word),
            }
        } else {
            let tok = match c {
                '!' => Tok::Not,
                '&' => Tok::And,
                '|' => Tok::Or,
                '(' => Tok::LParen,
                ')' => Tok::RParen,
                '-' => Tok::Implies,
                '<' => Tok::Iff,
                other => {
                    return Err(ParseError {
                        line,
                        column,
                        expected: vec!["a formula token".into()],
                        found: describe_char(Some(other)),
                    })
                }
            };
            cur.bump();
            match tok {
                Tok::Implies => cur.expect('>')?,
                Tok::Iff => {
                    cur.expect('-')?;
                    cur.expect('>')?;
                }
                _ => {}
            }
            tok
        };
        out.push(Spanned { tok, line, column });
    }
    out.push(Spanned {
        tok: Tok::Eof,
        line: cur.line,
        column: cur.column,
    });
    Ok(out)
}

fn describe_char(c: Option<char>) -> String {
    match c {
        Some(c) => format!("`{c}`"),
        None => "end of input".into(),
    }
}

struct Parser {
    toks: Vec<Spanned>,
    pos: usize,
}

const PRIMARY_START: &[&str] = &["atom", "`true`", "`false`", "`(`", "`!`", "`X`", "`F`", "`G`"];

impl Parser {
    fn peek(&self) -> &Tok {
        &self.toks[self.pos].tok
    }

    fn advance(&mut self) -> Tok {
        let t = self.toks[self.pos].tok.clone();
        if self.pos + 1 < self.toks.len() {
            self.pos += 1;
        }
        t
    }

    fn error(&self, expected: &[&str]) -> ParseError {
        let here = &self.toks[self.pos];
        ParseError {
            line: here.line,
            column: here.column,
            expected: expected.iter().map(|s| s.to_string()).collect(),
            found: here.tok.to_string(),
        }
    }

    fn iff(&mut self) -> Result<Formula, ParseError> {
        let mut lhs = self.implies()?;
        while *self.peek() == Tok::Iff {
            self.advance();
            lhs = lhs.iff(self.implies()?);
        }
        Ok(lhs)
    }

    fn implies(&mut self) -> Result<Formula, ParseError> {
        let lhs = self.or()?;
        if *self.peek() == Tok::Implies {
            self.advance();
            return Ok(lhs.implies(self.implies()?));
        }
        Ok(lhs)
    }

    fn or(&mut self) -> Result<Formula, ParseError> {
        let mut lhs = self.and()?;
        while *self.peek() == Tok::Or {
            self.advance();
            lhs = lhs.or(self.and()?);
        }
        Ok(lhs)
    }

    fn and(&mut self) -> Result<Formula, ParseError> {
        let mut lhs = self.until()?;
        while *self.peek() == Tok::And {
            self.advance();
            lhs = lhs.and(self.until()?);
        }
        Ok(lhs)
    }

    fn until(&mut self) -> Result<Formula, ParseError> {
        let lhs = self.unary()?;
        if *self.peek() == Tok::Until {
            self.advance();
            return Ok(lhs.until(self.until()?));
        }
        Ok(lhs)
    }

    fn unary(&mut self) -> Result<Formula, ParseError> {
        let op: fn(Formula) -> Formula = match self.peek() {
            Tok::Not => Formula::not,
            Tok::Next => Formula::next,
            Tok::Eventually => Formula::eventually,
            Tok::Always => Formula::always,
            _ => return self.primary(),
        };
        self.advance();
        Ok(op(self.unary()?))
    }

    fn primary(&mut self) -> Result<Formula, ParseError> {
        match self.peek().clone() {
            Tok::Ident(name) => {
                self.advance();
                Ok(Formula::atom(&name))
            }
            Tok::True => {
                self.advance();
                Ok(Formula::top())
            }
            Tok::False => {
                self.advance();
                Ok(Formula::bottom())
            }
            Tok::LParen => {
                self.advance();
                let inner = self.iff()?;
                if *self.peek() != Tok::RParen {
                    return Err(self.error(&["`)`", "a binary operator"]));
                }
                self.advance();
                Ok(inner)
            }
            _ => Err(self.error(PRIMARY_START)),
        }
    }
}

/// Parses one formula. Whitespace, including newlines, is insignificant.
pub fn parse(text: &str) -> Result<Formula, ParseError> {
    let mut p = Parser {
        toks: lex(text)?,
        pos: 0,
    };
    let f = p.iff()?;
    if *p.peek() != Tok::Eof {
        return Err(p.error(&["a binary operator", "end of input"]));
    }
    Ok(f)
}

/// Parses a formula file: one formula per line, `#` comments and blank
/// lines skipped. Each item carries its 1-based line number; error
/// positions are rewritten to file coordinates.
pub fn parse_lines(text: &str) -> Vec<(usize, Result<Formula, ParseError>)> {
    text.lines()
        .enumerate()
        .filter(|(_, l)| {
            let t = l.trim();
            !t.is_empty() && !t.starts_with('#')
        })
        .map(|(i, l)| {
            let res = parse(l).map_err(|mut e| {
                e.line = i + 1;
                e
            });
            (i + 1, res)
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> Formula {
        Formula::atom(s)
    }

    #[test]
    fn contradiction_example() {
        assert_eq!(parse("p & !p").unwrap(), p("p").and(p("p").not()));
    }

    #[test]
    fn until_binds_tighter_than_and() {
        let want = p("p").not().and(p("p").not().next()).and(p("q").until(p("p")));
        assert_eq!(parse("!p & X !p & (q U p)").unwrap(), want);
        assert_eq!(parse("!p & X !p & q U p").unwrap(), want);
    }

    #[test]
    fn prune_example() {
        let want = p("p").and(p("q")).always().and(p("p").not().eventually());
        assert_eq!(parse("G (p & q) & F !p").unwrap(), want);
    }

    #[test]
    fn precedence_chain() {
        // U > & > | > -> > <->
        let (a, b, c, d) = (p("a"), p("b"), p("c"), p("d"));
        assert_eq!(
            parse("a | b & c -> d").unwrap(),
            a.or(b.and(c)).implies(d)
        );
        assert_eq!(parse("a <-> b -> c").unwrap(), a.iff(b.implies(c)));
        assert_eq!(parse("a -> b -> c").unwrap(), a.implies(b.implies(c)));
        assert_eq!(parse("a U b U c").unwrap(), a.until(b.until(c)));
        assert_eq!(parse("a & b & c").unwrap(), a.and(b).and(c));
        assert_eq!(parse("a <-> b <-> c").unwrap(), a.iff(b).iff(c));
        assert_eq!(parse("!a U X b").unwrap(), a.not().until(b.next()));
        assert_eq!(parse("G F a").unwrap(), a.eventually().always());
    }

    #[test]
    fn keywords_and_identifiers() {
        assert_eq!(parse("Xp").unwrap(), p("Xp"));
        assert_eq!(parse("X p").unwrap(), p("p").next());
        assert_eq!(parse("true & false").unwrap(), Formula::top().and(Formula::bottom()));
        assert_eq!(parse("  _a1\n&\tb2 ").unwrap(), p("_a1").and(p("b2")));
    }

    #[test]
    fn errors_carry_position_and_expectation() {
        let e = parse("p &").unwrap_err();
        assert_eq!((e.line, e.column), (1, 4));
        assert!(e.expected.contains(&"atom".to_string()));
        assert_eq!(e.found, "end of input");

        let e = parse("(p U q\n & r").unwrap_err();
        assert_eq!((e.line, e.column), (2, 5));
        assert!(e.expected.contains(&"`)`".to_string()));

        let e = parse("p q").unwrap_err();
        assert_eq!(e.column, 3);
        assert_eq!(e.found, "atom `q`");

        let e = parse("p # q").unwrap_err();
        assert_eq!(e.column, 3);

        let e = parse("p - q").unwrap_err();
        assert_eq!(e.expected, vec!["`>`".to_string()]);
        assert!(parse("U").is_err());
        assert!(parse("").is_err());
    }

    #[test]
    fn file_lines() {
        let text = "# header\n\np\n  # indented comment\nq U\nG p\n";
        let parsed = parse_lines(text);
        assert_eq!(parsed.len(), 3);
        assert_eq!(parsed[0].0, 3);
        assert_eq!(parsed[1].1.as_ref().unwrap_err().line, 5);
        assert_eq!(parsed[2].1.as_ref().unwrap(), &p("p").always());
    }
}
