//! Inference rules, fragment configuration and proof checking.
//!
//! [`backward_instances`] lists every rule application whose conclusion is a
//! given sequent. [`check_proof`] replays a proof tree against that list, so
//! anything the prover emits can be re-validated without trusting the prover.

mod config;
mod rules;

use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

use crate::syntax::{Formula, Sequent};

pub use config::{CalculusConfig, ConfigError, Connectives, Constants, Preset};
pub use rules::{backward_instances, instances_of, Instance};

/// Rule names. [`Rule::name`] gives the external spelling used in proof files.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Rule {
    Id,
    Cut,
    LDivL,
    LDivR,
    RDivL,
    RDivR,
    MulL,
    MulR,
    MeetL1,
    MeetL2,
    MeetR,
    ZeroL,
    OneL,
    OneR,
    Bc,
    IterLDivL,
    IterLDivR,
    IterRDivL,
    IterRDivR,
    BangL,
    BangR,
    BangW,
    BangP1,
    BangP2,
    BangC,
    Hyp,
}

impl Rule {
    pub const ALL: [Rule; 26] = [
        Rule::Id,
        Rule::Cut,
        Rule::LDivL,
        Rule::LDivR,
        Rule::RDivL,
        Rule::RDivR,
        Rule::MulL,
        Rule::MulR,
        Rule::MeetL1,
        Rule::MeetL2,
        Rule::MeetR,
        Rule::ZeroL,
        Rule::OneL,
        Rule::OneR,
        Rule::Bc,
        Rule::IterLDivL,
        Rule::IterLDivR,
        Rule::IterRDivL,
        Rule::IterRDivR,
        Rule::BangL,
        Rule::BangR,
        Rule::BangW,
        Rule::BangP1,
        Rule::BangP2,
        Rule::BangC,
        Rule::Hyp,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Rule::Id => "Id",
            Rule::Cut => "Cut",
            Rule::LDivL => "\\L",
            Rule::LDivR => "\\R",
            Rule::RDivL => "/L",
            Rule::RDivR => "/R",
            Rule::MulL => ".L",
            Rule::MulR => ".R",
            Rule::MeetL1 => "&L1",
            Rule::MeetL2 => "&L2",
            Rule::MeetR => "&R",
            Rule::ZeroL => "0L",
            Rule::OneL => "1L",
            Rule::OneR => "1R",
            Rule::Bc => "bc",
            Rule::IterLDivL => "*\\L",
            Rule::IterLDivR => "*\\R",
            Rule::IterRDivL => "/*L",
            Rule::IterRDivR => "/*R",
            Rule::BangL => "!L",
            Rule::BangR => "!R",
            Rule::BangW => "!W",
            Rule::BangP1 => "!P1",
            Rule::BangP2 => "!P2",
            Rule::BangC => "!C",
            Rule::Hyp => "Hyp",
        }
    }

    pub fn from_name(name: &str) -> Option<Rule> {
        Rule::ALL.iter().copied().find(|r| r.name() == name)
    }

    /// The infinitary rules, approximated by `omega_bound + 1` premises.
    pub fn is_omega(self) -> bool {
        matches!(self, Rule::IterLDivR | Rule::IterRDivR)
    }

    /// Rules that do not shrink the sequent.
    pub fn is_structural_growth(self) -> bool {
        matches!(self, Rule::Bc | Rule::BangP1 | Rule::BangP2 | Rule::BangC)
    }
}

impl fmt::Display for Rule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Extra information attached to a proof node.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct RuleData {
    /// Number of blocks of `*\L`/`/*L`, or the bound of an ω-rule.
    pub n: Option<usize>,
    /// Index into `CalculusConfig::hypotheses` for `Hyp` leaves.
    pub hypothesis: Option<usize>,
    pub cut_formula: Option<Formula>,
    pub approximate: bool,
}

impl RuleData {
    pub fn is_empty(&self) -> bool {
        *self == RuleData::default()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Proof {
    pub rule: Rule,
    pub conclusion: Sequent,
    pub premises: Vec<Proof>,
    pub data: RuleData,
}

impl Proof {
    pub fn leaf(rule: Rule, conclusion: Sequent) -> Proof {
        Proof {
            rule,
            conclusion,
            premises: Vec::new(),
            data: RuleData::default(),
        }
    }

    pub fn node(rule: Rule, conclusion: Sequent, premises: Vec<Proof>) -> Proof {
        Proof {
            rule,
            conclusion,
            premises,
            data: RuleData::default(),
        }
    }

    pub fn with_data(mut self, data: RuleData) -> Proof {
        self.data = data;
        self
    }

    /// Number of nodes.
    pub fn size(&self) -> usize {
        1 + self.premises.iter().map(Proof::size).sum::<usize>()
    }

    pub fn height(&self) -> usize {
        1 + self.premises.iter().map(Proof::height).max().unwrap_or(0)
    }

    /// Pre-order walk over all nodes.
    pub fn nodes(&self) -> Vec<&Proof> {
        let mut out = Vec::new();
        let mut stack = alloc::vec![self];
        while let Some(p) = stack.pop() {
            out.push(p);
            for q in p.premises.iter().rev() {
                stack.push(q);
            }
        }
        out
    }

    pub fn uses(&self, rule: Rule) -> bool {
        self.nodes().iter().any(|p| p.rule == rule)
    }

    pub fn uses_omega(&self) -> bool {
        self.nodes().iter().any(|p| p.rule.is_omega())
    }
}

/// The first node of a proof that is not a legal rule instance.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InvalidNode {
    /// Premise indices from the root.
    pub path: Vec<usize>,
    pub rule: Rule,
    pub conclusion: Sequent,
    pub reason: String,
}

impl fmt::Display for InvalidNode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "invalid {} node at [", self.rule)?;
        for (i, p) in self.path.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{}", p)?;
        }
        write!(f, "] concluding `{}`: {}", self.conclusion, self.reason)
    }
}

/// Validate every node of `p`; report the first bad node in pre-order.
pub fn validate_proof(p: &Proof, cfg: &CalculusConfig) -> Result<(), InvalidNode> {
    let mut path = Vec::new();
    validate_node(p, cfg, &mut path)
}

/// `true` iff every node of `p` is a legal instance under `cfg`.
pub fn check_proof(p: &Proof, cfg: &CalculusConfig) -> bool {
    validate_proof(p, cfg).is_ok()
}

fn validate_node(
    p: &Proof,
    cfg: &CalculusConfig,
    path: &mut Vec<usize>,
) -> Result<(), InvalidNode> {
    let fail = |reason: String, path: &Vec<usize>| InvalidNode {
        path: path.clone(),
        rule: p.rule,
        conclusion: p.conclusion.clone(),
        reason,
    };
    let premises: Vec<&Sequent> = p.premises.iter().map(|q| &q.conclusion).collect();
    if p.rule == Rule::Cut {
        check_cut(p, cfg).map_err(|r| fail(r, path))?;
    } else {
        let candidates = instances_of(&p.conclusion, cfg, p.rule);
        if candidates.is_empty() {
            return Err(fail(
                String::from("rule does not apply to this conclusion"),
                path,
            ));
        }
        let matched = candidates.iter().any(|inst| {
            inst.premises.len() == premises.len()
                && inst.premises.iter().zip(&premises).all(|(a, b)| a == *b)
        });
        if !matched {
            return Err(fail(
                String::from("premises do not match any instance of the rule"),
                path,
            ));
        }
    }
    for (i, q) in p.premises.iter().enumerate() {
        path.push(i);
        validate_node(q, cfg, path)?;
        path.pop();
    }
    Ok(())
}

fn check_cut(p: &Proof, cfg: &CalculusConfig) -> Result<(), String> {
    let [left, right] = match p.premises.as_slice() {
        [l, r] => [&l.conclusion, &r.conclusion],
        _ => return Err(String::from("cut needs exactly two premises")),
    };
    let a = &left.succedent;
    if let Some(cf) = &p.data.cut_formula {
        if cf != a {
            return Err(String::from(
                "cut formula differs from the left premise succedent",
            ));
        }
    }
    if cfg.lambek_restriction && left.antecedent.is_empty() {
        return Err(String::from("empty antecedent under Lambek's restriction"));
    }
    if right.succedent != p.conclusion.succedent {
        return Err(String::from("succedents differ"));
    }
    let pi = &left.antecedent;
    let found = right.antecedent.iter().enumerate().any(|(i, f)| {
        if f != a {
            return false;
        }
        let mut expect: Vec<Formula> = right.antecedent[..i].to_vec();
        expect.extend(pi.iter().cloned());
        expect.extend(right.antecedent[i + 1..].iter().cloned());
        expect == p.conclusion.antecedent
    });
    if found {
        Ok(())
    } else {
        Err(String::from("conclusion is not the cut of its premises"))
    }
}
