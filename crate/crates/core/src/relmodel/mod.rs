//! Finite relational models.
//!
//! Formulas denote binary relations: product is composition, the divisions
//! are residuals relativised to a transitive universe `U`, meet is
//! intersection, and `A*\B`, `B/A*` divide by the reflexive-transitive closure.
//! Square models have `U = W×W`. Non-standard models restrict valuations to a
//! closed family and read `1` and `0` as the family's unit and least element.

mod family;
mod relation;

use alloc::collections::BTreeMap;
use alloc::string::String;
use alloc::vec::Vec;

use crate::syntax::{Formula, Sequent};

pub use family::{
    check_model, close_family, find_unit, find_zero, invariant_family, ordered_double, Closure,
    Ops, Violation,
};
pub use relation::{
    all_relations, compose, preorders, residual_left, residual_right, star, transitive_relations,
    RelError, Relation, MAX_WORLDS,
};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ConstantsMode {
    Absent,
    /// `0` is the empty relation and `1` the diagonal.
    Standard,
}

/// A relativised model; square when `U` is the full relation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RModel {
    pub universe: Relation,
    pub valuation: BTreeMap<String, Relation>,
    pub constants: ConstantsMode,
}

impl RModel {
    pub fn square(
        n: usize,
        valuation: BTreeMap<String, Relation>,
        constants: ConstantsMode,
    ) -> RModel {
        RModel {
            universe: Relation::full(n),
            valuation,
            constants,
        }
    }

    pub fn n(&self) -> usize {
        self.universe.n()
    }

    pub fn is_square(&self) -> bool {
        self.universe == Relation::full(self.n())
    }

    /// Structural problems: non-transitive universe, valuations escaping it,
    /// constants on a non-square model.
    pub fn problems(&self) -> Vec<String> {
        let mut out = Vec::new();
        if !self.universe.is_transitive() {
            out.push(String::from("universe is not transitive"));
        }
        for (v, r) in &self.valuation {
            if r.n() != self.n() {
                out.push(alloc::format!(
                    "valuation of {} has the wrong world count",
                    v
                ));
            } else if !r.is_subset(&self.universe) {
                out.push(alloc::format!("valuation of {} leaves the universe", v));
            }
        }
        if self.constants == ConstantsMode::Standard && !self.is_square() {
            out.push(String::from("standard constants need a square model"));
        }
        out
    }
}

/// A square model over a family of relations closed under the residuals and
/// meet, and under composition when `product_closed`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NSModel {
    pub n: usize,
    pub family: Vec<Relation>,
    pub unit: Relation,
    pub zero: Relation,
    pub valuation: BTreeMap<String, Relation>,
    pub product_closed: bool,
}

impl NSModel {
    /// Sort and deduplicate `family`, then locate its unit and zero.
    pub fn new(
        mut family: Vec<Relation>,
        valuation: BTreeMap<String, Relation>,
        product_closed: bool,
    ) -> Option<NSModel> {
        family.sort();
        family.dedup();
        let n = family.first()?.n();
        let unit = find_unit(&family)?;
        let zero = find_zero(&family)?;
        Some(NSModel {
            n,
            family,
            unit,
            zero,
            valuation,
            product_closed,
        })
    }

    pub fn contains(&self, r: &Relation) -> bool {
        self.family.binary_search(r).is_ok()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum EvalError {
    #[error("variable `{0}` has no value")]
    Unvaluated(String),
    #[error("the exponential has no relational interpretation")]
    Bang,
    #[error("the model does not interpret constants")]
    ConstantsAbsent,
    #[error("empty antecedents are only meaningful in square models")]
    EmptyAntecedent,
    #[error(transparent)]
    Relation(#[from] RelError),
}

/// Anything formulas can be evaluated in.
pub trait Model {
    fn n(&self) -> usize;
    fn universe(&self) -> Relation;
    fn is_square(&self) -> bool;
    fn var(&self, name: &str) -> Option<Relation>;
    fn one(&self) -> Option<Relation>;
    fn zero(&self) -> Option<Relation>;
    /// `Some(false)` when a value lies outside the model's family.
    fn in_family(&self, _r: &Relation) -> Option<bool> {
        None
    }
}

impl Model for RModel {
    fn n(&self) -> usize {
        self.universe.n()
    }
    fn universe(&self) -> Relation {
        self.universe
    }
    fn is_square(&self) -> bool {
        RModel::is_square(self)
    }
    fn var(&self, name: &str) -> Option<Relation> {
        self.valuation.get(name).copied()
    }
    fn one(&self) -> Option<Relation> {
        match self.constants {
            ConstantsMode::Standard => Some(Relation::identity(self.n())),
            ConstantsMode::Absent => None,
        }
    }
    fn zero(&self) -> Option<Relation> {
        match self.constants {
            ConstantsMode::Standard => Some(Relation::empty(self.n())),
            ConstantsMode::Absent => None,
        }
    }
}

impl Model for NSModel {
    fn n(&self) -> usize {
        self.n
    }
    fn universe(&self) -> Relation {
        Relation::full(self.n)
    }
    fn is_square(&self) -> bool {
        true
    }
    fn var(&self, name: &str) -> Option<Relation> {
        self.valuation.get(name).copied()
    }
    fn one(&self) -> Option<Relation> {
        Some(self.unit)
    }
    fn zero(&self) -> Option<Relation> {
        Some(self.zero)
    }
    fn in_family(&self, r: &Relation) -> Option<bool> {
        Some(self.contains(r))
    }
}

/// A value together with whether some product along the way left the family.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Flagged {
    pub value: Relation,
    pub outside_family: bool,
}

pub fn eval(f: &Formula, m: &impl Model) -> Result<Relation, EvalError> {
    eval_flagged(f, m).map(|e| e.value)
}

/// Evaluate and report products whose value is not a family member.
pub fn eval_flagged(f: &Formula, m: &impl Model) -> Result<Flagged, EvalError> {
    let mut outside = false;
    let value = eval_rec(f, m, &mut outside)?;
    Ok(Flagged {
        value,
        outside_family: outside,
    })
}

fn eval_rec(f: &Formula, m: &impl Model, outside: &mut bool) -> Result<Relation, EvalError> {
    let u = m.universe();
    Ok(match f {
        Formula::Var(v) => {
            let r = m.var(v).ok_or_else(|| EvalError::Unvaluated(v.clone()))?;
            if r.n() != m.n() {
                return Err(RelError::DimensionMismatch {
                    left: r.n(),
                    right: m.n(),
                }
                .into());
            }
            r
        }
        Formula::Zero => m.zero().ok_or(EvalError::ConstantsAbsent)?,
        Formula::One => m.one().ok_or(EvalError::ConstantsAbsent)?,
        Formula::Bang(_) => return Err(EvalError::Bang),
        Formula::Mul(a, b) => {
            let r = eval_rec(a, m, outside)?.then(&eval_rec(b, m, outside)?);
            if m.in_family(&r) == Some(false) {
                *outside = true;
            }
            r
        }
        Formula::Meet(a, b) => eval_rec(a, m, outside)?.intersection(&eval_rec(b, m, outside)?),
        Formula::LDiv(a, b) => eval_rec(a, m, outside)?.under(&eval_rec(b, m, outside)?, &u),
        Formula::RDiv(b, a) => eval_rec(b, m, outside)?.over(&eval_rec(a, m, outside)?, &u),
        Formula::IterLDiv(a, b) => eval_rec(a, m, outside)?
            .star()
            .under(&eval_rec(b, m, outside)?, &u),
        Formula::IterRDiv(b, a) => {
            eval_rec(b, m, outside)?.over(&eval_rec(a, m, outside)?.star(), &u)
        }
    })
}

/// Composition of the antecedent values is included in the succedent value;
/// an empty antecedent asks for the diagonal.
pub fn sequent_true(s: &Sequent, m: &impl Model) -> Result<bool, EvalError> {
    if s.antecedent.is_empty() && !m.is_square() {
        return Err(EvalError::EmptyAntecedent);
    }
    let rhs = eval(&s.succedent, m)?;
    if s.antecedent.is_empty() {
        return Ok(Relation::identity(m.n()).is_subset(&rhs));
    }
    let mut lhs = eval(&s.antecedent[0], m)?;
    for f in &s.antecedent[1..] {
        lhs = lhs.then(&eval(f, m)?);
    }
    Ok(lhs.is_subset(&rhs))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Entailment {
    HypothesisFails,
    Holds,
    CounterexampleFound,
}

/// Whether `goal` holds in `m` given that all of `hypotheses` do.
pub fn semantic_entails(
    m: &impl Model,
    hypotheses: &[Sequent],
    goal: &Sequent,
) -> Result<Entailment, EvalError> {
    for h in hypotheses {
        if !sequent_true(h, m)? {
            return Ok(Entailment::HypothesisFails);
        }
    }
    if sequent_true(goal, m)? {
        Ok(Entailment::Holds)
    } else {
        Ok(Entailment::CounterexampleFound)
    }
}
