//! Finite countermodel search.
//!
//! Models are enumerated in a fixed order: by world count, then (for the
//! relativised class) by universe in code order, then valuations as tuples
//! of relation codes in lexicographic order with the first variable most
//! significant. Random mode draws from a seeded ChaCha8 stream, so every run
//! with the same seed visits the same models.
//!
//! A missing countermodel says nothing about validity beyond the searched space.

use alloc::boxed::Box;
use alloc::collections::BTreeMap;
use alloc::string::String;
use alloc::vec::Vec;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::relmodel::{
    all_relations, check_model, close_family, eval, invariant_family, preorders, semantic_entails,
    transitive_relations, Closure, ConstantsMode, Entailment, EvalError, Model, NSModel, Ops,
    RModel, Relation,
};
use crate::syntax::Sequent;

/// World count above which exhaustive search needs an explicit override.
pub const EXHAUSTIVE_LIMIT: usize = 3;
/// Exhaustive enumeration is never attempted beyond this many worlds.
pub const EXHAUSTIVE_HARD_LIMIT: usize = 4;
pub const DEFAULT_FAMILY_CAP: usize = 4096;
const MAX_SEED_FAMILY: usize = 4;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Mode {
    Exhaustive { allow_large: bool },
    Random { samples: usize, seed: u64 },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ModelClass {
    /// Square models with `0 = ∅` and `1 = δ`.
    StandardSquare,
    /// Models over a transitive universe; constants and empty antecedents are not interpreted.
    Relativised,
    /// Square models over a closed family. Exhaustive mode uses the families
    /// of relations invariant under a preorder; random mode closes random seeds.
    NonStandard {
        product_closed: bool,
        family_cap: usize,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SearchSpec {
    pub max_n: usize,
    pub mode: Mode,
    pub class: ModelClass,
    /// Draw `∅`, `δ`, `U` and single pairs half of the time in random mode.
    pub structured_bias: bool,
}

impl SearchSpec {
    pub fn exhaustive(max_n: usize, class: ModelClass) -> SearchSpec {
        SearchSpec {
            max_n,
            mode: Mode::Exhaustive { allow_large: false },
            class,
            structured_bias: false,
        }
    }

    pub fn random(max_n: usize, samples: usize, seed: u64, class: ModelClass) -> SearchSpec {
        SearchSpec {
            max_n,
            mode: Mode::Random { samples, seed },
            class,
            structured_bias: false,
        }
    }

    pub fn check(&self) -> Result<(), SearchError> {
        if self.max_n == 0 {
            return Err(SearchError::NoWorlds);
        }
        if self.max_n > crate::relmodel::MAX_WORLDS {
            return Err(SearchError::TooManyWorlds(self.max_n));
        }
        if let Mode::Exhaustive { allow_large } = self.mode {
            let limit = if allow_large {
                EXHAUSTIVE_HARD_LIMIT
            } else {
                EXHAUSTIVE_LIMIT
            };
            if self.max_n > limit {
                return Err(SearchError::Guard {
                    max_n: self.max_n,
                    limit,
                });
            }
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum SearchError {
    #[error("exhaustive search over {max_n} worlds exceeds the limit of {limit}")]
    Guard { max_n: usize, limit: usize },
    #[error("at least one world is required")]
    NoWorlds,
    #[error("at most {max} worlds are supported, got {0}", max = crate::relmodel::MAX_WORLDS)]
    TooManyWorlds(usize),
    #[error("relativised models interpret neither constants nor empty antecedents")]
    NotRelativisable,
    #[error(transparent)]
    Eval(#[from] EvalError),
}

/// A model of any searched class.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Candidate {
    Relational(RModel),
    NonStandard(NSModel),
}

impl Candidate {
    pub fn n(&self) -> usize {
        match self {
            Candidate::Relational(m) => m.n(),
            Candidate::NonStandard(m) => m.n,
        }
    }

    pub fn valuation(&self) -> &BTreeMap<String, Relation> {
        match self {
            Candidate::Relational(m) => &m.valuation,
            Candidate::NonStandard(m) => &m.valuation,
        }
    }

    pub fn entails(&self, hypotheses: &[Sequent], goal: &Sequent) -> Result<Entailment, EvalError> {
        match self {
            Candidate::Relational(m) => semantic_entails(m, hypotheses, goal),
            Candidate::NonStandard(m) => semantic_entails(m, hypotheses, goal),
        }
    }

    fn sides(&self, s: &Sequent) -> Result<Line, EvalError> {
        match self {
            Candidate::Relational(m) => sides(m, s),
            Candidate::NonStandard(m) => sides(m, s),
        }
    }
}

/// Both sides of a sequent in a model.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Line {
    pub sequent: Sequent,
    pub antecedent: Relation,
    pub succedent: Relation,
}

impl Line {
    pub fn holds(&self) -> bool {
        self.antecedent.is_subset(&self.succedent)
    }
}

fn sides(m: &impl Model, s: &Sequent) -> Result<Line, EvalError> {
    let mut lhs = Relation::identity(m.n());
    if s.antecedent.is_empty() && !m.is_square() {
        return Err(EvalError::EmptyAntecedent);
    }
    for (i, f) in s.antecedent.iter().enumerate() {
        let v = eval(f, m)?;
        lhs = if i == 0 { v } else { lhs.then(&v) };
    }
    Ok(Line {
        sequent: s.clone(),
        antecedent: lhs,
        succedent: eval(&s.succedent, m)?,
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Certificate {
    pub hypotheses: Vec<Line>,
    pub goal: Line,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Countermodel {
    pub model: Candidate,
    pub certificate: Certificate,
    /// Models visited up to and including this one.
    pub visited: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SearchOutcome {
    Found(Box<Countermodel>),
    /// Nothing found in the searched space.
    NoneUpTo {
        visited: usize,
    },
}

impl SearchOutcome {
    pub fn countermodel(&self) -> Option<&Countermodel> {
        match self {
            SearchOutcome::Found(c) => Some(c),
            SearchOutcome::NoneUpTo { .. } => None,
        }
    }
}

/// All variables of the inputs, sorted.
pub fn variables(hypotheses: &[Sequent], goal: &Sequent) -> Vec<String> {
    let mut vars: Vec<String> = hypotheses
        .iter()
        .chain(core::iter::once(goal))
        .flat_map(|s| s.variables())
        .collect();
    vars.sort();
    vars.dedup();
    vars
}

/// A model where every hypothesis holds and `goal` fails, re-checked on both
/// the certificate and [`semantic_entails`].
pub fn find_countermodel(
    hypotheses: &[Sequent],
    goal: &Sequent,
    spec: &SearchSpec,
) -> Result<SearchOutcome, SearchError> {
    spec.check()?;
    if spec.class == ModelClass::Relativised {
        let bad = |s: &Sequent| s.antecedent.is_empty() || s.formulas().any(|f| f.has_constants());
        if hypotheses.iter().chain(core::iter::once(goal)).any(bad) {
            return Err(SearchError::NotRelativisable);
        }
    }
    let vars = variables(hypotheses, goal);
    let mut visited = 0;
    for m in enumerate_models(&vars, spec)? {
        visited += 1;
        if m.entails(hypotheses, goal)? != Entailment::CounterexampleFound {
            continue;
        }
        let certificate = Certificate {
            hypotheses: hypotheses
                .iter()
                .map(|h| m.sides(h))
                .collect::<Result<_, _>>()?,
            goal: m.sides(goal)?,
        };
        assert!(certificate.hypotheses.iter().all(Line::holds) && !certificate.goal.holds());
        return Ok(SearchOutcome::Found(Box::new(Countermodel {
            model: m,
            certificate,
            visited,
        })));
    }
    Ok(SearchOutcome::NoneUpTo { visited })
}

/// The models `spec` visits, in search order.
pub fn enumerate_models<'a>(
    vars: &'a [String],
    spec: &SearchSpec,
) -> Result<Box<dyn Iterator<Item = Candidate> + 'a>, SearchError> {
    spec.check()?;
    let spec = *spec;
    Ok(match spec.mode {
        Mode::Exhaustive { .. } => Box::new(
            (1..=spec.max_n)
                .flat_map(move |n| frames(n, spec.class))
                .flat_map(move |frame| {
                    let choices = frame.choices.clone();
                    Odometer::new(vars.len(), choices.len()).map(move |digits| {
                        let val = vars
                            .iter()
                            .cloned()
                            .zip(digits.iter().map(|&d| choices[d]))
                            .collect();
                        frame.model(val)
                    })
                }),
        ),
        Mode::Random { samples, seed } => Box::new(RandomModels {
            vars,
            spec,
            rng: ChaCha8Rng::seed_from_u64(seed),
            left: samples,
            attempts: samples.saturating_mul(20).max(64),
        }),
    })
}

#[derive(Clone)]
enum Frame {
    Square,
    Relativised(Relation),
    NonStandard(NSModel),
}

#[derive(Clone)]
struct Framed {
    kind: Frame,
    n: usize,
    choices: Vec<Relation>,
}

impl Framed {
    fn model(&self, valuation: BTreeMap<String, Relation>) -> Candidate {
        match &self.kind {
            Frame::Square => {
                Candidate::Relational(RModel::square(self.n, valuation, ConstantsMode::Standard))
            }
            Frame::Relativised(u) => Candidate::Relational(RModel {
                universe: *u,
                valuation,
                constants: ConstantsMode::Absent,
            }),
            Frame::NonStandard(m) => Candidate::NonStandard(NSModel {
                valuation,
                ..m.clone()
            }),
        }
    }
}

fn frames(n: usize, class: ModelClass) -> Vec<Framed> {
    match class {
        ModelClass::StandardSquare => {
            alloc::vec![Framed {
                kind: Frame::Square,
                n,
                choices: all_relations(n).collect()
            }]
        }
        ModelClass::Relativised => transitive_relations(n)
            .into_iter()
            .map(|u| Framed {
                kind: Frame::Relativised(u),
                n,
                choices: all_relations(n).filter(|r| r.is_subset(&u)).collect(),
            })
            .collect(),
        ModelClass::NonStandard { product_closed, .. } => preorders(n)
            .into_iter()
            .filter_map(|e| {
                let m = NSModel::new(invariant_family(&e), BTreeMap::new(), product_closed)?;
                Some(Framed {
                    kind: Frame::NonStandard(m.clone()),
                    n,
                    choices: m.family,
                })
            })
            .collect(),
    }
}

/// Digit tuples in lexicographic order, first digit most significant.
struct Odometer {
    digits: Vec<usize>,
    radix: usize,
    done: bool,
}

impl Odometer {
    fn new(len: usize, radix: usize) -> Odometer {
        Odometer {
            digits: alloc::vec![0; len],
            radix,
            done: radix == 0 && len > 0,
        }
    }
}

impl Iterator for Odometer {
    type Item = Vec<usize>;

    fn next(&mut self) -> Option<Vec<usize>> {
        if self.done {
            return None;
        }
        let out = self.digits.clone();
        self.done = true;
        for d in self.digits.iter_mut().rev() {
            *d += 1;
            if *d < self.radix {
                self.done = false;
                break;
            }
            *d = 0;
        }
        Some(out)
    }
}

struct RandomModels<'a> {
    vars: &'a [String],
    spec: SearchSpec,
    rng: ChaCha8Rng,
    left: usize,
    attempts: usize,
}

impl RandomModels<'_> {
    fn relation_within(&mut self, u: &Relation) -> Relation {
        let n = u.n();
        if self.spec.structured_bias && self.rng.gen_bool(0.5) {
            let pairs = u.pairs();
            return match self.rng.gen_range(0..4) {
                0 => Relation::empty(n),
                1 => Relation::identity(n).intersection(u),
                2 => *u,
                _ if pairs.is_empty() => Relation::empty(n),
                _ => {
                    let (i, j) = pairs[self.rng.gen_range(0..pairs.len())];
                    let mut r = Relation::empty(n);
                    r.insert(i, j);
                    r
                }
            };
        }
        let mut r = Relation::empty(n);
        for (i, j) in u.pairs() {
            if self.rng.gen_bool(0.5) {
                r.insert(i, j);
            }
        }
        r
    }

    fn valuation_within(&mut self, u: &Relation) -> BTreeMap<String, Relation> {
        let vars = self.vars;
        vars.iter()
            .map(|v| (v.clone(), self.relation_within(u)))
            .collect()
    }

    fn draw(&mut self) -> Option<Candidate> {
        let n = self.rng.gen_range(1..=self.spec.max_n);
        let full = Relation::full(n);
        match self.spec.class {
            ModelClass::StandardSquare => Some(Candidate::Relational(RModel::square(
                n,
                self.valuation_within(&full),
                ConstantsMode::Standard,
            ))),
            ModelClass::Relativised => {
                let r = self.relation_within(&full);
                let u = r.then(&r.star());
                if u.is_empty() {
                    return None;
                }
                let valuation = self.valuation_within(&u);
                Some(Candidate::Relational(RModel {
                    universe: u,
                    valuation,
                    constants: ConstantsMode::Absent,
                }))
            }
            ModelClass::NonStandard {
                product_closed,
                family_cap,
            } => {
                let k = self.rng.gen_range(1..=MAX_SEED_FAMILY);
                let seed: Vec<Relation> = (0..k).map(|_| self.relation_within(&full)).collect();
                let Closure::Closed(family) =
                    close_family(&seed, Ops::for_product(product_closed), family_cap)
                else {
                    return None;
                };
                let mut m = NSModel::new(family, BTreeMap::new(), product_closed)?;
                if !check_model(&m).is_empty() {
                    return None;
                }
                for v in self.vars {
                    let r = m.family[self.rng.gen_range(0..m.family.len())];
                    m.valuation.insert(v.clone(), r);
                }
                Some(Candidate::NonStandard(m))
            }
        }
    }
}

impl Iterator for RandomModels<'_> {
    type Item = Candidate;

    fn next(&mut self) -> Option<Candidate> {
        while self.left > 0 && self.attempts > 0 {
            self.attempts -= 1;
            if let Some(m) = self.draw() {
                self.left -= 1;
                return Some(m);
            }
        }
        None
    }
}

#[cfg(test)]
mod tests;
