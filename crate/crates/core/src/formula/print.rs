use super::{Formula, Kind};

#[derive(Clone, Copy, PartialEq, Eq)]
enum Assoc {
    Left,
    Right,
}

// Binding strength, higher binds tighter.
fn binary(kind: Kind) -> Option<(&'static str, u8, Assoc, Formula, Formula)> {
    Some(match kind {
        Kind::Iff(a, b) => ("<->", 1, Assoc::Left, a, b),
        Kind::Implies(a, b) => ("->", 2, Assoc::Right, a, b),
        Kind::Or(a, b) => ("|", 3, Assoc::Left, a, b),
        Kind::And(a, b) => ("&", 4, Assoc::Left, a, b),
        Kind::Until(a, b) => ("U", 5, Assoc::Right, a, b),
        _ => return None,
    })
}

fn strength(f: Formula) -> u8 {
    binary(f.kind()).map_or(6, |(_, p, ..)| p)
}

pub(super) fn render(f: Formula) -> String {
    let mut out = String::new();
    write(f, &mut out);
    out
}

fn write(f: Formula, out: &mut String) {
    let kind = f.kind();
    if let Some((op, prec, assoc, a, b)) = binary(kind) {
        let (pa, pb) = (strength(a), strength(b));
        let wrap_a = pa < prec || (pa == prec && assoc == Assoc::Right);
        let wrap_b = pb < prec || (pb == prec && assoc == Assoc::Left);
        operand(a, wrap_a, out);
        out.push(' ');
        out.push_str(op);
        out.push(' ');
        operand(b, wrap_b, out);
        return;
    }
    match kind {
        Kind::Atom(s) => out.push_str(&s.name()),
        Kind::True => out.push_str("true"),
        Kind::False => out.push_str("false"),
        Kind::Not(a) => {
            out.push('!');
            operand(a, strength(a) < 6, out);
        }
        Kind::Next(a) | Kind::Eventually(a) | Kind::Always(a) => {
            out.push_str(match kind {
                Kind::Next(_) => "X ",
                Kind::Eventually(_) => "F ",
                _ => "G ",
            });
            operand(a, strength(a) < 6, out);
        }
        _ => unreachable!("binary kinds handled above"),
    }
}

fn operand(f: Formula, wrap: bool, out: &mut String) {
    if wrap {
        out.push('(');
        write(f, out);
        out.push(')');
    } else {
        write(f, out);
    }
}
