use alloc::string::String;

use super::Formula;

const DIV: u8 = 0;
const MEET: u8 = 1;
const PROD: u8 = 2;
const UNARY: u8 = 3;

fn level(f: &Formula) -> u8 {
    match f {
        Formula::LDiv(..) | Formula::RDiv(..) | Formula::IterLDiv(..) | Formula::IterRDiv(..) => {
            DIV
        }
        Formula::Meet(..) => MEET,
        Formula::Mul(..) => PROD,
        _ => UNARY,
    }
}

fn is_right_div(f: &Formula) -> bool {
    matches!(f, Formula::RDiv(..) | Formula::IterRDiv(..))
}

fn is_left_div(f: &Formula) -> bool {
    matches!(f, Formula::LDiv(..) | Formula::IterLDiv(..))
}

/// Print with the fewest parentheses that still parse back to the same tree.
pub fn render_formula(f: &Formula) -> String {
    let mut out = String::new();
    write(f, &mut out);
    out
}

fn at_least(f: &Formula, min: u8, out: &mut String) {
    if level(f) >= min {
        write(f, out);
    } else {
        paren(f, out);
    }
}

fn paren(f: &Formula, out: &mut String) {
    out.push('(');
    write(f, out);
    out.push(')');
}

fn starred(f: &Formula, out: &mut String) {
    at_least(f, UNARY, out);
    out.push('*');
}

fn write(f: &Formula, out: &mut String) {
    match f {
        Formula::Var(v) => out.push_str(v),
        Formula::Zero => out.push('0'),
        Formula::One => out.push('1'),
        Formula::Bang(a) => {
            out.push('!');
            at_least(a, UNARY, out);
        }
        Formula::Mul(a, b) => {
            at_least(a, PROD, out);
            out.push_str(" . ");
            at_least(b, UNARY, out);
        }
        Formula::Meet(a, b) => {
            at_least(a, MEET, out);
            out.push_str(" & ");
            at_least(b, PROD, out);
        }
        Formula::LDiv(a, b) | Formula::IterLDiv(a, b) => {
            if matches!(f, Formula::IterLDiv(..)) {
                starred(a, out);
            } else {
                at_least(a, MEET, out);
            }
            out.push('\\');
            if is_right_div(b) {
                paren(b, out);
            } else {
                write(b, out);
            }
        }
        Formula::RDiv(a, b) | Formula::IterRDiv(a, b) => {
            if is_left_div(a) {
                paren(a, out);
            } else {
                write(a, out);
            }
            out.push('/');
            if matches!(f, Formula::IterRDiv(..)) {
                starred(b, out);
            } else {
                at_least(b, MEET, out);
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::syntax::parse_formula;

    fn v(n: &str) -> Formula {
        Formula::var(n)
    }

    #[test]
    fn documented_renderings() {
        assert_eq!(
            render_formula(&Formula::meet(Formula::One, v("p"))),
            "1 & p"
        );
        assert_eq!(render_formula(&Formula::mul(v("a"), Formula::One)), "a . 1");
        assert_eq!(render_formula(&Formula::bang(v("a"))), "!a");
        assert_eq!(render_formula(&Formula::iter_ldiv(v("a"), v("b"))), "a*\\b");
        assert_eq!(render_formula(&Formula::iter_rdiv(v("b"), v("a"))), "b/a*");
    }

    #[test]
    fn minimal_parentheses() {
        for text in [
            "0/(0/p)",
            "(p\\p)\\q",
            "a\\b\\c",
            "a/b/c",
            "(a\\b)/c",
            "a\\(b/c)",
            "b . ((c . b) & 1) . c",
            "a . (b . c)",
            "(a & b) . c",
            "a & (b & c)",
            "a & b . c",
            "!(a . b)",
            "(a . b)*\\c",
            "!a*\\b",
            "(!a)*\\b",
            "b/a*/c",
            "!!a",
        ] {
            let f = parse_formula(text).unwrap();
            let printed = render_formula(&f);
            assert_eq!(parse_formula(&printed).unwrap(), f, "{}", text);
        }
        assert_eq!(
            render_formula(&parse_formula("(p\\p)\\q").unwrap()),
            "(p\\p)\\q"
        );
        assert_eq!(
            render_formula(&parse_formula("((a . b))").unwrap()),
            "a . b"
        );
        assert_eq!(render_formula(&parse_formula("(a/b)/c").unwrap()), "a/b/c");
    }
}
