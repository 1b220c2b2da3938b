use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;
use core::str::FromStr;

use crate::syntax::Sequent;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Connectives {
    pub ldiv: bool,
    pub rdiv: bool,
    pub mul: bool,
    pub meet: bool,
}

impl Connectives {
    pub const ALL: Connectives = Connectives {
        ldiv: true,
        rdiv: true,
        mul: true,
        meet: true,
    };
    pub const LAMBEK: Connectives = Connectives {
        ldiv: true,
        rdiv: true,
        mul: true,
        meet: false,
    };
    pub const PRODUCT_FREE: Connectives = Connectives {
        ldiv: true,
        rdiv: true,
        mul: false,
        meet: true,
    };
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Constants {
    pub zero: bool,
    pub one: bool,
}

impl Constants {
    pub const NONE: Constants = Constants {
        zero: false,
        one: false,
    };
    pub const BOTH: Constants = Constants {
        zero: true,
        one: true,
    };
}

/// Named calculi.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Preset {
    /// `\ / .` with Lambek's restriction.
    L,
    /// `\ / .`, empty antecedents allowed.
    LLambda,
    /// `\ / . &` with Lambek's restriction.
    LMeet,
    /// `\ / . &`, empty antecedents allowed.
    LMeetLambda,
    /// `\ / . & 0 1`.
    L01,
    /// `L01` plus the structural rule inserting `b, c`.
    L01bc,
    /// `L01` plus the exponential.
    BangL01,
    /// `L01` plus iterative divisions.
    L01ItD,
    /// `\ / &`, empty antecedents allowed.
    PF,
    /// `\ / & 0 1`.
    PF01,
}

impl Preset {
    pub const ALL: [Preset; 10] = [
        Preset::L,
        Preset::LLambda,
        Preset::LMeet,
        Preset::LMeetLambda,
        Preset::L01,
        Preset::L01bc,
        Preset::BangL01,
        Preset::L01ItD,
        Preset::PF,
        Preset::PF01,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Preset::L => "L",
            Preset::LLambda => "LLambda",
            Preset::LMeet => "LMeet",
            Preset::LMeetLambda => "LMeetLambda",
            Preset::L01 => "L01",
            Preset::L01bc => "L01bc",
            Preset::BangL01 => "BangL01",
            Preset::L01ItD => "L01ItD",
            Preset::PF => "PF",
            Preset::PF01 => "PF01",
        }
    }
}

impl fmt::Display for Preset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum ConfigError {
    #[error("unknown calculus `{0}`")]
    UnknownPreset(String),
    #[error("the unit constant is incompatible with Lambek's restriction")]
    UnitUnderRestriction,
}

impl FromStr for Preset {
    type Err = ConfigError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Preset::ALL
            .iter()
            .copied()
            .find(|p| p.name().eq_ignore_ascii_case(s))
            .ok_or_else(|| ConfigError::UnknownPreset(String::from(s)))
    }
}

/// Which rules are active, plus the search budgets.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CalculusConfig {
    pub connectives: Connectives,
    pub constants: Constants,
    /// Forbid empty antecedents.
    pub lambek_restriction: bool,
    pub bc_rule: bool,
    pub bang: bool,
    pub iterative: bool,
    /// Premises `n = 0..=omega_bound` stand in for the ω-rules.
    pub omega_bound: usize,
    pub max_depth: usize,
    /// Longest antecedent the growth rules may create.
    pub max_antecedent: usize,
    /// Goal expansions before the prover gives up with `Unknown`.
    pub max_steps: u64,
    pub hypotheses: Vec<Sequent>,
}

impl Default for CalculusConfig {
    fn default() -> Self {
        CalculusConfig::preset(Preset::L01)
    }
}

impl CalculusConfig {
    pub const DEFAULT_OMEGA_BOUND: usize = 8;
    pub const DEFAULT_MAX_DEPTH: usize = 64;
    pub const DEFAULT_MAX_ANTECEDENT: usize = 12;
    pub const DEFAULT_MAX_STEPS: u64 = 2_000_000;

    pub fn preset(p: Preset) -> CalculusConfig {
        let base = CalculusConfig {
            connectives: Connectives::ALL,
            constants: Constants::BOTH,
            lambek_restriction: false,
            bc_rule: false,
            bang: false,
            iterative: false,
            omega_bound: Self::DEFAULT_OMEGA_BOUND,
            max_depth: Self::DEFAULT_MAX_DEPTH,
            max_antecedent: Self::DEFAULT_MAX_ANTECEDENT,
            max_steps: Self::DEFAULT_MAX_STEPS,
            hypotheses: Vec::new(),
        };
        match p {
            Preset::L => CalculusConfig {
                connectives: Connectives::LAMBEK,
                constants: Constants::NONE,
                lambek_restriction: true,
                ..base
            },
            Preset::LLambda => CalculusConfig {
                connectives: Connectives::LAMBEK,
                constants: Constants::NONE,
                ..base
            },
            Preset::LMeet => CalculusConfig {
                constants: Constants::NONE,
                lambek_restriction: true,
                ..base
            },
            Preset::LMeetLambda => CalculusConfig {
                constants: Constants::NONE,
                ..base
            },
            Preset::L01 => base,
            Preset::L01bc => CalculusConfig {
                bc_rule: true,
                ..base
            },
            Preset::BangL01 => CalculusConfig { bang: true, ..base },
            Preset::L01ItD => CalculusConfig {
                iterative: true,
                ..base
            },
            Preset::PF => CalculusConfig {
                connectives: Connectives::PRODUCT_FREE,
                constants: Constants::NONE,
                ..base
            },
            Preset::PF01 => CalculusConfig {
                connectives: Connectives::PRODUCT_FREE,
                ..base
            },
        }
    }

    pub fn with_hypotheses(mut self, hypotheses: Vec<Sequent>) -> CalculusConfig {
        self.hypotheses = hypotheses;
        self
    }

    pub fn validate(&self) -> Result<(), ConfigError> {
        if self.lambek_restriction && self.constants.one {
            return Err(ConfigError::UnitUnderRestriction);
        }
        Ok(())
    }

    /// Whether a search under this configuration may create new antecedent
    /// material (so only bounded answers are possible).
    pub fn has_growth(&self, goal: &Sequent) -> bool {
        self.bc_rule || !self.hypotheses.is_empty() || (self.bang && goal.has_bang())
    }
}
