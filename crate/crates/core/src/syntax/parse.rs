use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

use super::{Formula, Sequent};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ParseErrorKind {
    UnknownToken(char),
    UnexpectedToken(String),
    UnexpectedEnd,
    UnbalancedParen,
    MixedDivisions,
    MisplacedStar,
    MissingArrow,
}

/// A syntax error at a byte offset of the input.
#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
#[error("syntax error at byte {offset}: {kind}")]
pub struct ParseError {
    pub offset: usize,
    pub kind: ParseErrorKind,
}

impl fmt::Display for ParseErrorKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ParseErrorKind::UnknownToken(c) => write!(f, "unknown token `{}`", c),
            ParseErrorKind::UnexpectedToken(t) => write!(f, "unexpected `{}`", t),
            ParseErrorKind::UnexpectedEnd => f.write_str("unexpected end of input"),
            ParseErrorKind::UnbalancedParen => f.write_str("unbalanced parentheses"),
            ParseErrorKind::MixedDivisions => {
                f.write_str("`\\` and `/` cannot be mixed without parentheses")
            }
            ParseErrorKind::MisplacedStar => {
                f.write_str("`*` may only mark the denominator of a division")
            }
            ParseErrorKind::MissingArrow => f.write_str("missing `=>`"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
enum Tok {
    Ident(String),
    Zero,
    One,
    Backslash,
    Slash,
    Dot,
    Amp,
    Bang,
    Star,
    LParen,
    RParen,
    Comma,
    Arrow,
}

impl fmt::Display for Tok {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Tok::Ident(v) => return f.write_str(v),
            Tok::Zero => "0",
            Tok::One => "1",
            Tok::Backslash => "\\",
            Tok::Slash => "/",
            Tok::Dot => ".",
            Tok::Amp => "&",
            Tok::Bang => "!",
            Tok::Star => "*",
            Tok::LParen => "(",
            Tok::RParen => ")",
            Tok::Comma => ",",
            Tok::Arrow => "=>",
        };
        f.write_str(s)
    }
}

fn lex(text: &str) -> Result<Vec<(usize, Tok)>, ParseError> {
    let bytes = text.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i];
        let tok = match c {
            b' ' | b'\t' | b'\r' | b'\n' => {
                i += 1;
                continue;
            }
            b'#' => {
                while i < bytes.len() && bytes[i] != b'\n' {
                    i += 1;
                }
                continue;
            }
            b'a'..=b'z' => {
                let start = i;
                while i < bytes.len()
                    && (bytes[i].is_ascii_lowercase()
                        || bytes[i].is_ascii_digit()
                        || bytes[i] == b'_')
                {
                    i += 1;
                }
                out.push((start, Tok::Ident(String::from(&text[start..i]))));
                continue;
            }
            b'0' => Tok::Zero,
            b'1' => Tok::One,
            b'\\' => Tok::Backslash,
            b'/' => Tok::Slash,
            b'.' => Tok::Dot,
            b'&' => Tok::Amp,
            b'!' => Tok::Bang,
            b'*' => Tok::Star,
            b'(' => Tok::LParen,
            b')' => Tok::RParen,
            b',' => Tok::Comma,
            b'=' if bytes.get(i + 1) == Some(&b'>') => {
                out.push((i, Tok::Arrow));
                i += 2;
                continue;
            }
            _ => {
                let ch = text[i..].chars().next().unwrap_or('?');
                return Err(ParseError {
                    offset: i,
                    kind: ParseErrorKind::UnknownToken(ch),
                });
            }
        };
        // A digit glued to an identifier-like tail (`12`, `0p`) is not a constant.
        if matches!(tok, Tok::Zero | Tok::One)
            && bytes
                .get(i + 1)
                .is_some_and(|b| b.is_ascii_alphanumeric() || *b == b'_')
        {
            return Err(ParseError {
                offset: i + 1,
                kind: ParseErrorKind::UnknownToken(bytes[i + 1] as char),
            });
        }
        out.push((i, tok));
        i += 1;
    }
    Ok(out)
}

struct Parser {
    toks: Vec<(usize, Tok)>,
    pos: usize,
    end: usize,
}

/// An operand that may carry a trailing `*`.
struct Operand {
    formula: Formula,
    starred: bool,
    offset: usize,
}

impl Parser {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|(_, t)| t)
    }

    fn offset(&self) -> usize {
        self.toks.get(self.pos).map(|(o, _)| *o).unwrap_or(self.end)
    }

    fn bump(&mut self) -> Option<Tok> {
        let t = self.toks.get(self.pos).map(|(_, t)| t.clone());
        self.pos += 1;
        t
    }

    fn unexpected(&self) -> ParseError {
        match self.toks.get(self.pos) {
            Some((o, Tok::RParen)) => ParseError {
                offset: *o,
                kind: ParseErrorKind::UnbalancedParen,
            },
            Some((o, t)) => ParseError {
                offset: *o,
                kind: ParseErrorKind::UnexpectedToken(alloc::format!("{}", t)),
            },
            None => ParseError {
                offset: self.end,
                kind: ParseErrorKind::UnexpectedEnd,
            },
        }
    }

    fn formula(&mut self) -> Result<Formula, ParseError> {
        let first = self.meet()?;
        match self.peek() {
            Some(Tok::Backslash) => self.ldiv_chain(first),
            Some(Tok::Slash) => self.rdiv_chain(first),
            _ => plain(first),
        }
    }

    /// `a \ b \ c` is `a\(b\c)`; a starred left operand makes an iterative division.
    fn ldiv_chain(&mut self, den: Operand) -> Result<Formula, ParseError> {
        self.bump();
        let next = self.meet()?;
        let num = match self.peek() {
            Some(Tok::Backslash) => self.ldiv_chain(next)?,
            Some(Tok::Slash) => {
                return Err(ParseError {
                    offset: self.offset(),
                    kind: ParseErrorKind::MixedDivisions,
                })
            }
            _ => plain(next)?,
        };
        Ok(if den.starred {
            Formula::iter_ldiv(den.formula, num)
        } else {
            Formula::ldiv(den.formula, num)
        })
    }

    /// `a / b / c` is `(a/b)/c`; a starred right operand makes an iterative division.
    fn rdiv_chain(&mut self, first: Operand) -> Result<Formula, ParseError> {
        let mut acc = plain(first)?;
        while let Some(Tok::Slash) = self.peek() {
            self.bump();
            let den = self.meet()?;
            acc = if den.starred {
                Formula::iter_rdiv(acc, den.formula)
            } else {
                Formula::rdiv(acc, den.formula)
            };
        }
        if let Some(Tok::Backslash) = self.peek() {
            return Err(ParseError {
                offset: self.offset(),
                kind: ParseErrorKind::MixedDivisions,
            });
        }
        Ok(acc)
    }

    fn meet(&mut self) -> Result<Operand, ParseError> {
        let first = self.product()?;
        if !matches!(self.peek(), Some(Tok::Amp)) {
            return Ok(first);
        }
        let mut acc = plain(first)?;
        while let Some(Tok::Amp) = self.peek() {
            self.bump();
            let rhs = plain(self.product()?)?;
            acc = Formula::meet(acc, rhs);
        }
        Ok(Operand {
            formula: acc,
            starred: false,
            offset: 0,
        })
    }

    fn product(&mut self) -> Result<Operand, ParseError> {
        let first = self.unary()?;
        if !matches!(self.peek(), Some(Tok::Dot)) {
            return Ok(first);
        }
        let mut acc = plain(first)?;
        while let Some(Tok::Dot) = self.peek() {
            self.bump();
            let rhs = plain(self.unary()?)?;
            acc = Formula::mul(acc, rhs);
        }
        Ok(Operand {
            formula: acc,
            starred: false,
            offset: 0,
        })
    }

    fn unary(&mut self) -> Result<Operand, ParseError> {
        let offset = self.offset();
        let formula = match self.bump() {
            Some(Tok::Bang) => {
                let inner = plain(self.unary_no_star()?)?;
                Formula::bang(inner)
            }
            Some(Tok::Ident(v)) => Formula::Var(v),
            Some(Tok::Zero) => Formula::Zero,
            Some(Tok::One) => Formula::One,
            Some(Tok::LParen) => {
                let inner = self.formula()?;
                match self.bump() {
                    Some(Tok::RParen) => inner,
                    _ => {
                        return Err(ParseError {
                            offset,
                            kind: ParseErrorKind::UnbalancedParen,
                        });
                    }
                }
            }
            _ => {
                self.pos -= 1;
                return Err(self.unexpected());
            }
        };
        let starred = if let Some(Tok::Star) = self.peek() {
            self.bump();
            true
        } else {
            false
        };
        Ok(Operand {
            formula,
            starred,
            offset,
        })
    }

    fn unary_no_star(&mut self) -> Result<Operand, ParseError> {
        let op = self.unary()?;
        if op.starred {
            // `!a*` stars the whole `!a`; give the star back to the caller.
            self.pos -= 1;
            return Ok(Operand {
                starred: false,
                ..op
            });
        }
        Ok(op)
    }
}

fn plain(op: Operand) -> Result<Formula, ParseError> {
    if op.starred {
        Err(ParseError {
            offset: op.offset,
            kind: ParseErrorKind::MisplacedStar,
        })
    } else {
        Ok(op.formula)
    }
}

fn finish(p: &Parser) -> Result<(), ParseError> {
    if p.pos < p.toks.len() {
        Err(p.unexpected())
    } else {
        Ok(())
    }
}

/// Parse a single formula.
pub fn parse_formula(text: &str) -> Result<Formula, ParseError> {
    let toks = lex(text)?;
    let mut p = Parser {
        toks,
        pos: 0,
        end: text.len(),
    };
    let f = p.formula()?;
    finish(&p)?;
    Ok(f)
}

/// Parse `A1, ..., An => B`.
pub fn parse_sequent(text: &str) -> Result<Sequent, ParseError> {
    let toks = lex(text)?;
    let arrow = toks
        .iter()
        .position(|(_, t)| *t == Tok::Arrow)
        .ok_or(ParseError {
            offset: text.len(),
            kind: ParseErrorKind::MissingArrow,
        })?;
    let mut p = Parser {
        toks,
        pos: 0,
        end: text.len(),
    };
    let mut antecedent = Vec::new();
    if arrow > 0 {
        loop {
            antecedent.push(p.formula()?);
            match p.peek() {
                Some(Tok::Comma) => {
                    p.bump();
                }
                Some(Tok::Arrow) => break,
                _ => return Err(p.unexpected()),
            }
        }
    }
    if p.pos != arrow {
        return Err(p.unexpected());
    }
    p.bump();
    let succedent = p.formula()?;
    finish(&p)?;
    Ok(Sequent {
        antecedent,
        succedent,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    fn v(n: &str) -> Formula {
        Formula::var(n)
    }

    #[test]
    fn atoms_and_constants() {
        assert_eq!(parse_formula("p").unwrap(), v("p"));
        assert_eq!(parse_formula(" 0 ").unwrap(), Formula::Zero);
        assert_eq!(parse_formula("x_1").unwrap(), v("x_1"));
    }

    #[test]
    fn zero_double_division() {
        let f = parse_formula("0/(0/p)").unwrap();
        assert_eq!(
            f,
            Formula::rdiv(Formula::Zero, Formula::rdiv(Formula::Zero, v("p")))
        );
    }

    #[test]
    fn product_is_left_associative_and_binds_tighter_than_meet() {
        let f = parse_formula("b . ((c.b) & 1) . c").unwrap();
        let expected = Formula::mul(
            Formula::mul(
                v("b"),
                Formula::meet(Formula::mul(v("c"), v("b")), Formula::One),
            ),
            v("c"),
        );
        assert_eq!(f, expected);
        assert_eq!(
            parse_formula("1 & p & q").unwrap(),
            Formula::meet(Formula::meet(Formula::One, v("p")), v("q"))
        );
        assert_eq!(
            parse_formula("a & b . c").unwrap(),
            Formula::meet(v("a"), Formula::mul(v("b"), v("c")))
        );
    }

    #[test]
    fn divisions_associate_as_declared() {
        assert_eq!(
            parse_formula("a\\b\\c").unwrap(),
            Formula::ldiv(v("a"), Formula::ldiv(v("b"), v("c")))
        );
        assert_eq!(
            parse_formula("a/b/c").unwrap(),
            Formula::rdiv(Formula::rdiv(v("a"), v("b")), v("c"))
        );
        assert_eq!(
            parse_formula("a . b \\ c & d").unwrap(),
            Formula::ldiv(Formula::mul(v("a"), v("b")), Formula::meet(v("c"), v("d")))
        );
    }

    #[test]
    fn iterative_divisions() {
        assert_eq!(
            parse_formula("a*\\b").unwrap(),
            Formula::iter_ldiv(v("a"), v("b"))
        );
        assert_eq!(
            parse_formula("b / a*").unwrap(),
            Formula::iter_rdiv(v("b"), v("a"))
        );
        assert_eq!(
            parse_formula("(a.c)*\\b").unwrap(),
            Formula::iter_ldiv(Formula::mul(v("a"), v("c")), v("b"))
        );
        assert_eq!(
            parse_formula("b/a*/c").unwrap(),
            Formula::rdiv(Formula::iter_rdiv(v("b"), v("a")), v("c"))
        );
        assert_eq!(
            parse_formula("!a*\\b").unwrap(),
            Formula::iter_ldiv(Formula::bang(v("a")), v("b"))
        );
    }

    #[test]
    fn bang_prefix() {
        assert_eq!(parse_formula("!a").unwrap(), Formula::bang(v("a")));
        assert_eq!(
            parse_formula("!a . b").unwrap(),
            Formula::mul(Formula::bang(v("a")), v("b"))
        );
        assert_eq!(
            parse_formula("!!(a\\b)").unwrap(),
            Formula::bang(Formula::bang(Formula::ldiv(v("a"), v("b"))))
        );
    }

    #[test]
    fn sequents() {
        let s = parse_sequent("a\\a => b.c").unwrap();
        assert_eq!(s.antecedent, vec![Formula::ldiv(v("a"), v("a"))]);
        assert_eq!(s.succedent, Formula::mul(v("b"), v("c")));
        let s = parse_sequent("=> 1").unwrap();
        assert!(s.antecedent.is_empty());
        assert_eq!(s.succedent, Formula::One);
        let s = parse_sequent("p, q => p").unwrap();
        assert_eq!(s.antecedent, vec![v("p"), v("q")]);
        let s = parse_sequent("p => q # trailing comment").unwrap();
        assert_eq!(s.succedent, v("q"));
    }

    #[test]
    fn errors_carry_offsets() {
        let e = parse_formula("a \\ b / c").unwrap_err();
        assert_eq!(e.kind, ParseErrorKind::MixedDivisions);
        assert_eq!(e.offset, 6);
        let e = parse_formula("a / b \\ c").unwrap_err();
        assert_eq!(e.kind, ParseErrorKind::MixedDivisions);
        let e = parse_formula("(a . b").unwrap_err();
        assert_eq!(e.kind, ParseErrorKind::UnbalancedParen);
        assert_eq!(e.offset, 0);
        let e = parse_formula("a . b)").unwrap_err();
        assert_eq!(e.kind, ParseErrorKind::UnbalancedParen);
        assert_eq!(e.offset, 5);
        let e = parse_formula("a + b").unwrap_err();
        assert_eq!(e.kind, ParseErrorKind::UnknownToken('+'));
        assert_eq!(e.offset, 2);
        let e = parse_formula("P").unwrap_err();
        assert_eq!(e.kind, ParseErrorKind::UnknownToken('P'));
        let e = parse_formula("a .").unwrap_err();
        assert_eq!(e.kind, ParseErrorKind::UnexpectedEnd);
        let e = parse_formula("a* . b").unwrap_err();
        assert_eq!(e.kind, ParseErrorKind::MisplacedStar);
        let e = parse_formula("a\\b*").unwrap_err();
        assert_eq!(e.kind, ParseErrorKind::MisplacedStar);
        let e = parse_sequent("p, q").unwrap_err();
        assert_eq!(e.kind, ParseErrorKind::MissingArrow);
        assert!(parse_sequent("p, => q").is_err());
        assert!(parse_formula("12").is_err());
    }
}
