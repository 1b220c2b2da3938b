//! Formulas and sequents of the Lambek calculus with intersection, constants,
//! the exponential and iterative divisions.
//!
//! The concrete grammar, loosest binding first:
//!
//! | level | operators                         | associativity            |
//! |-------|-----------------------------------|--------------------------|
//! | 0     | `\`, `/`, `*\`, `/ A*`            | `\` right, `/` left; never mixed without parentheses |
//! | 1     | `&` (meet)                        | left                     |
//! | 2     | `.` (product)                     | left                     |
//! | 3     | prefix `!`, postfix `*` (starred denominator), atoms, `( )` | |
//!
//! Variables match `[a-z][a-z0-9_]*`; `0` and `1` are the constants. A sequent is
//! written `A1, ..., An => B`; the antecedent may be empty. `#` starts a comment
//! running to the end of the line.

mod parse;
mod render;

use alloc::boxed::Box;
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;
use core::str::FromStr;

pub use parse::{parse_formula, parse_sequent, ParseError, ParseErrorKind};
pub use render::render_formula;

/// A formula. Division constructors follow the written order:
/// `LDiv(a, b)` is `a\b` and `RDiv(b, a)` is `b/a` (numerator first).
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Formula {
    Var(String),
    Zero,
    One,
    /// `left\right`
    LDiv(Box<Formula>, Box<Formula>),
    /// `num/den`
    RDiv(Box<Formula>, Box<Formula>),
    Mul(Box<Formula>, Box<Formula>),
    Meet(Box<Formula>, Box<Formula>),
    Bang(Box<Formula>),
    /// `den*\num`
    IterLDiv(Box<Formula>, Box<Formula>),
    /// `num/den*`
    IterRDiv(Box<Formula>, Box<Formula>),
}

impl Formula {
    pub fn var(name: impl Into<String>) -> Formula {
        Formula::Var(name.into())
    }

    pub fn ldiv(den: Formula, num: Formula) -> Formula {
        Formula::LDiv(Box::new(den), Box::new(num))
    }

    pub fn rdiv(num: Formula, den: Formula) -> Formula {
        Formula::RDiv(Box::new(num), Box::new(den))
    }

    #[allow(clippy::should_implement_trait)]
    pub fn mul(left: Formula, right: Formula) -> Formula {
        Formula::Mul(Box::new(left), Box::new(right))
    }

    pub fn meet(left: Formula, right: Formula) -> Formula {
        Formula::Meet(Box::new(left), Box::new(right))
    }

    pub fn bang(inner: Formula) -> Formula {
        Formula::Bang(Box::new(inner))
    }

    pub fn iter_ldiv(den: Formula, num: Formula) -> Formula {
        Formula::IterLDiv(Box::new(den), Box::new(num))
    }

    pub fn iter_rdiv(num: Formula, den: Formula) -> Formula {
        Formula::IterRDiv(Box::new(num), Box::new(den))
    }

    /// Number of connective and atom occurrences. The star of an iterative
    /// division counts as one extra connective.
    pub fn size(&self) -> usize {
        match self {
            Formula::Var(_) | Formula::Zero | Formula::One => 1,
            Formula::Bang(a) => 1 + a.size(),
            Formula::LDiv(a, b)
            | Formula::RDiv(a, b)
            | Formula::Mul(a, b)
            | Formula::Meet(a, b) => 1 + a.size() + b.size(),
            Formula::IterLDiv(a, b) | Formula::IterRDiv(a, b) => 2 + a.size() + b.size(),
        }
    }

    /// Immediate subformulas, left to right.
    pub fn children(&self) -> Vec<&Formula> {
        match self {
            Formula::Var(_) | Formula::Zero | Formula::One => Vec::new(),
            Formula::Bang(a) => alloc::vec![&**a],
            Formula::LDiv(a, b)
            | Formula::RDiv(a, b)
            | Formula::Mul(a, b)
            | Formula::Meet(a, b)
            | Formula::IterLDiv(a, b)
            | Formula::IterRDiv(a, b) => alloc::vec![&**a, &**b],
        }
    }

    pub fn is_bang(&self) -> bool {
        matches!(self, Formula::Bang(_))
    }

    pub fn is_atomic(&self) -> bool {
        matches!(self, Formula::Var(_) | Formula::Zero | Formula::One)
    }

    /// All subformula occurrences, the formula itself included, in pre-order.
    pub fn subformulas(&self) -> Vec<&Formula> {
        let mut out = Vec::new();
        let mut stack = alloc::vec![self];
        while let Some(f) = stack.pop() {
            out.push(f);
            let ch = f.children();
            for c in ch.into_iter().rev() {
                stack.push(c);
            }
        }
        out
    }

    /// Variable names occurring in the formula, sorted and deduplicated.
    pub fn variables(&self) -> Vec<String> {
        let mut vars: Vec<String> = self
            .subformulas()
            .into_iter()
            .filter_map(|f| match f {
                Formula::Var(v) => Some(v.clone()),
                _ => None,
            })
            .collect();
        vars.sort();
        vars.dedup();
        vars
    }

    pub fn contains_var(&self, name: &str) -> bool {
        self.subformulas()
            .into_iter()
            .any(|f| matches!(f, Formula::Var(v) if v == name))
    }

    pub fn any_subformula(&self, pred: impl Fn(&Formula) -> bool) -> bool {
        self.subformulas().into_iter().any(pred)
    }

    pub fn has_product(&self) -> bool {
        self.any_subformula(|f| matches!(f, Formula::Mul(..)))
    }

    pub fn has_constants(&self) -> bool {
        self.any_subformula(|f| matches!(f, Formula::Zero | Formula::One))
    }

    /// Replace every occurrence of the variable `name` by `with`.
    pub fn substitute(&self, name: &str, with: &Formula) -> Formula {
        let sub = |f: &Formula| Box::new(f.substitute(name, with));
        match self {
            Formula::Var(v) if v == name => with.clone(),
            Formula::Var(_) | Formula::Zero | Formula::One => self.clone(),
            Formula::LDiv(a, b) => Formula::LDiv(sub(a), sub(b)),
            Formula::RDiv(a, b) => Formula::RDiv(sub(a), sub(b)),
            Formula::Mul(a, b) => Formula::Mul(sub(a), sub(b)),
            Formula::Meet(a, b) => Formula::Meet(sub(a), sub(b)),
            Formula::Bang(a) => Formula::Bang(sub(a)),
            Formula::IterLDiv(a, b) => Formula::IterLDiv(sub(a), sub(b)),
            Formula::IterRDiv(a, b) => Formula::IterRDiv(sub(a), sub(b)),
        }
    }
}

impl fmt::Display for Formula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&render_formula(self))
    }
}

impl FromStr for Formula {
    type Err = ParseError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        parse_formula(s)
    }
}

/// `antecedent => succedent`. The antecedent is ordered and may be empty.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Sequent {
    pub antecedent: Vec<Formula>,
    pub succedent: Formula,
}

impl Sequent {
    pub fn new(antecedent: Vec<Formula>, succedent: Formula) -> Sequent {
        Sequent {
            antecedent,
            succedent,
        }
    }

    pub fn size(&self) -> usize {
        self.antecedent.iter().map(Formula::size).sum::<usize>() + self.succedent.size()
    }

    pub fn formulas(&self) -> impl Iterator<Item = &Formula> {
        self.antecedent
            .iter()
            .chain(core::iter::once(&self.succedent))
    }

    pub fn variables(&self) -> Vec<String> {
        let mut vars: Vec<String> = self.formulas().flat_map(|f| f.variables()).collect();
        vars.sort();
        vars.dedup();
        vars
    }

    pub fn has_product(&self) -> bool {
        self.formulas().any(Formula::has_product)
    }

    pub fn has_bang(&self) -> bool {
        self.formulas().any(|f| f.any_subformula(Formula::is_bang))
    }

    pub fn substitute(&self, name: &str, with: &Formula) -> Sequent {
        Sequent {
            antecedent: self
                .antecedent
                .iter()
                .map(|f| f.substitute(name, with))
                .collect(),
            succedent: self.succedent.substitute(name, with),
        }
    }

    /// `A1, ..., An => B` becomes `=> An\(... \(A1\B)...)`.
    pub fn curry(&self) -> Sequent {
        let succedent = self
            .antecedent
            .iter()
            .fold(self.succedent.clone(), |acc, a| {
                Formula::ldiv(a.clone(), acc)
            });
        Sequent {
            antecedent: Vec::new(),
            succedent,
        }
    }
}

impl fmt::Display for Sequent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, a) in self.antecedent.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{}", a)?;
        }
        if self.antecedent.is_empty() {
            write!(f, "=> {}", self.succedent)
        } else {
            write!(f, " => {}", self.succedent)
        }
    }
}

impl FromStr for Sequent {
    type Err = ParseError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        parse_sequent(s)
    }
}

/// Free-function form of [`Sequent::substitute`].
pub fn substitute(s: &Sequent, var: &str, f: &Formula) -> Sequent {
    s.substitute(var, f)
}

/// Free-function form of [`Sequent::curry`].
pub fn curry(s: &Sequent) -> Sequent {
    s.curry()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn seq(s: &str) -> Sequent {
        s.parse().unwrap()
    }

    #[test]
    fn size_counts_star_as_connective() {
        assert_eq!(Formula::var("p").size(), 1);
        assert_eq!(seq("=> a*\\b").succedent.size(), 4);
        assert_eq!(seq("=> a\\b").succedent.size(), 3);
        assert_eq!(seq("=> !a").succedent.size(), 2);
    }

    #[test]
    fn substitute_examples() {
        assert_eq!(
            seq("a\\a => b.c").substitute("a", &Formula::One),
            seq("1\\1 => b.c")
        );
        assert_eq!(seq("p => p").substitute("q", &Formula::Zero), seq("p => p"));
        assert_eq!(
            seq("p & q => q").substitute("q", &Formula::var("p")),
            seq("p & p => p")
        );
    }

    #[test]
    fn curry_examples() {
        assert_eq!(seq("=> p").curry(), seq("=> p"));
        assert_eq!(seq("a => b").curry(), seq("=> a\\b"));
        assert_eq!(seq("a, b => c").curry(), seq("=> b\\(a\\c)"));
    }

    #[test]
    fn variables_sorted() {
        assert_eq!(seq("q, p.q => r & p").variables(), ["p", "q", "r"]);
    }
}
