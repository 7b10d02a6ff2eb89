//! Printing in the ASCII surface syntax.
//!
//! Output re-parses to the identical AST. The printer recognises the shapes
//! produced by the desugaring constructors (`¬⊤`, `¬(a ∧ ¬b)`, `¬(¬a ∧ ¬b)`
//! and the two-implication conjunction) and prints them as `false`, `->`,
//! `|` and `<->`; since the parser expands those back to the same shapes the
//! round trip is exact.

use super::Formula;

// Binding strength, loosest first.
const IFF: u8 = 0;
const IMP: u8 = 1;
const OR: u8 = 2;
const AND: u8 = 3;
const UNARY: u8 = 4;

enum View<'a> {
    Leaf(&'static str),
    Atom(&'a str),
    Unary(&'static str, &'a Formula),
    Binary(u8, &'static str, &'a Formula, &'a Formula),
}

fn view(phi: &Formula) -> View<'_> {
    match phi {
        Formula::Top => View::Leaf("true"),
        Formula::Prop(p) => View::Atom(p),
        Formula::And(a, b) => match phi.as_biconditional() {
            Some((x, y)) => View::Binary(IFF, "<->", x, y),
            None => View::Binary(AND, "&", a, b),
        },
        Formula::Not(inner) => match inner.as_ref() {
            Formula::Top => View::Leaf("false"),
            Formula::And(a, b) => match (a.as_ref(), b.as_ref()) {
                // `¬(¬x ∧ ¬y)` reads as `x | y` unless `¬x` is itself sugar.
                (Formula::Not(x), Formula::Not(y)) if matches!(view(a), View::Unary(..)) => {
                    View::Binary(OR, "|", x, y)
                }
                (_, Formula::Not(y)) => View::Binary(IMP, "->", a, y),
                _ => View::Unary("!", inner),
            },
            _ => View::Unary("!", inner),
        },
        Formula::Box(a) => View::Unary("[]", a),
        Formula::Delta(a) => View::Unary("%", a),
        Formula::Circ(a) => View::Unary("o", a),
        Formula::BlackTri(a) => View::Unary("#", a),
    }
}

fn level(v: &View<'_>) -> u8 {
    match v {
        View::Binary(l, ..) => *l,
        _ => UNARY,
    }
}

fn write(phi: &Formula, min: u8, out: &mut String) {
    let v = view(phi);
    let parens = level(&v) < min;
    if parens {
        out.push('(');
    }
    match v {
        View::Leaf(s) => out.push_str(s),
        View::Atom(p) => out.push_str(p),
        View::Unary(op, arg) => {
            out.push_str(op);
            let mut operand = String::new();
            write(arg, UNARY, &mut operand);
            // `o` is a word token: `o p`, not `op`.
            if op == "o" && operand.starts_with(|c: char| c.is_ascii_alphanumeric() || c == '_') {
                out.push(' ');
            }
            out.push_str(&operand);
        }
        View::Binary(l, op, a, b) => {
            // ↔, ∨, ∧ associate to the left; → to the right.
            let (lmin, rmin) = if l == IMP { (l + 1, l) } else { (l, l + 1) };
            write(a, lmin, out);
            out.push(' ');
            out.push_str(op);
            out.push(' ');
            write(b, rmin, out);
        }
    }
    if parens {
        out.push(')');
    }
}

/// Renders with the fewest parentheses the precedence table allows.
pub fn render(phi: &Formula) -> String {
    let mut out = String::new();
    write(phi, IFF, &mut out);
    out
}

#[cfg(test)]
mod tests {
    use super::super::parse;
    use super::*;

    fn p() -> Formula {
        Formula::atom("p")
    }
    fn q() -> Formula {
        Formula::atom("q")
    }

    #[test]
    fn simple_renderings() {
        assert_eq!(render(&p().tri()), "#p");
        assert_eq!(render(&p().and(q().not())), "p & !q");
        assert_eq!(render(&Formula::Top.not()), "false");
        assert_eq!(render(&p().circ()), "o p");
        assert_eq!(render(&p().not().circ()), "o!p");
    }

    #[test]
    fn sugar_is_restored() {
        assert_eq!(render(&parse("#(p -> q) & #p").unwrap()), "#(p -> q) & #p");
        assert_eq!(render(&parse("p | q -> r").unwrap()), "p | q -> r");
        assert_eq!(render(&parse("(p -> q) -> r").unwrap()), "(p -> q) -> r");
        assert_eq!(render(&parse("p -> q -> r").unwrap()), "p -> q -> r");
        assert_eq!(render(&parse("p <-> q").unwrap()), "p <-> q");
        assert_eq!(
            render(&parse("p <-> (q <-> r)").unwrap()),
            "p <-> (q <-> r)"
        );
        assert_eq!(render(&parse("(p <-> q) <-> r").unwrap()), "p <-> q <-> r");
        assert_eq!(render(&parse("p & (q & r)").unwrap()), "p & (q & r)");
        assert_eq!(render(&parse("!(p & q)").unwrap()), "!(p & q)");
    }

    #[test]
    fn render_is_a_normal_form() {
        for text in [
            "!p & [](p -> q)",
            "<>p | ^q",
            "@#~p <-> o o p",
            "((p))",
            "!!p -> false",
            "#(p & q) -> #p & #q | %[]true",
        ] {
            let once = render(&parse(text).unwrap());
            let twice = render(&parse(&once).unwrap());
            assert_eq!(once, twice, "{text}");
            assert_eq!(parse(&once).unwrap(), parse(text).unwrap(), "{text}");
        }
    }
}
