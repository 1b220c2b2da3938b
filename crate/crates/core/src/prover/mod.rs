//! Cut-free backward proof search.
//!
//! Without growth rules (`bc`, the exponential, hypotheses) every backward
//! step shrinks the sequent in the multiset ordering of formula sizes, so the
//! search is a decision procedure and answers [`ProofStatus::Proved`] or
//! [`ProofStatus::Refuted`]. With growth rules the search is cut off at
//! `max_depth` and `max_antecedent` and failures are only bounded.
//!
//! Invertible rules (`1L`, `.L`, `\R`, `/R`, `&R` and the ω-rules) are applied
//! eagerly, one per goal; the remaining rules are tried in order.

mod arena;
mod explicit;
mod prune;
mod search;

use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

use crate::calculus::{CalculusConfig, Proof};
use crate::syntax::{Formula, Sequent};
use search::{Search, UNBOUNDED};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ProofStatus {
    Proved(Proof),
    /// Found a proof whose ω-rules were checked only for `n <= bound`.
    ProvedApprox {
        proof: Proof,
        bound: usize,
    },
    Refuted,
    /// No proof within the given depth and antecedent length.
    RefutedBounded {
        depth: usize,
        antecedent: usize,
    },
    Unknown(String),
}

impl ProofStatus {
    pub fn is_proved(&self) -> bool {
        matches!(
            self,
            ProofStatus::Proved(_) | ProofStatus::ProvedApprox { .. }
        )
    }

    pub fn is_refuted(&self) -> bool {
        matches!(
            self,
            ProofStatus::Refuted | ProofStatus::RefutedBounded { .. }
        )
    }

    pub fn proof(&self) -> Option<&Proof> {
        match self {
            ProofStatus::Proved(p) | ProofStatus::ProvedApprox { proof: p, .. } => Some(p),
            _ => None,
        }
    }

    /// Short status name used in reports.
    pub fn label(&self) -> &'static str {
        match self {
            ProofStatus::Proved(_) => "Proved",
            ProofStatus::ProvedApprox { .. } => "ProvedApprox",
            ProofStatus::Refuted => "Refuted",
            ProofStatus::RefutedBounded { .. } => "RefutedBounded",
            ProofStatus::Unknown(_) => "Unknown",
        }
    }
}

impl fmt::Display for ProofStatus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ProofStatus::ProvedApprox { bound, .. } => {
                write!(f, "ProvedApprox(omega <= {})", bound)
            }
            ProofStatus::RefutedBounded { depth, antecedent } => {
                write!(
                    f,
                    "RefutedBounded(depth {}, antecedent {})",
                    depth, antecedent
                )
            }
            ProofStatus::Unknown(r) => write!(f, "Unknown({})", r),
            other => f.write_str(other.label()),
        }
    }
}

/// Derivability without a proof object.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Verdict {
    Derivable,
    /// `bounded` when the search was cut off by depth or antecedent limits.
    NotDerivable {
        bounded: bool,
    },
    Unknown,
}

/// Ways to prove a sequent from the hypotheses of a configuration.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Route {
    /// Hypotheses as axioms plus cuts on hypothesis succedents.
    Direct,
    /// Internalize the hypotheses as `!`-formulas and search without them.
    /// `conservative` rejects inputs containing products.
    Bang { conservative: bool },
}

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum ProverError {
    #[error("the exponential route is restricted to product-free input")]
    ProductInBangRoute,
}

/// A prover that keeps its memo table across queries under one configuration.
pub struct Prover {
    search: Search,
}

impl Prover {
    pub fn new(cfg: CalculusConfig) -> Prover {
        Prover {
            search: Search::new(cfg),
        }
    }

    pub fn config(&self) -> &CalculusConfig {
        &self.search.cfg
    }

    pub fn prove(&mut self, s: &Sequent) -> ProofStatus {
        let root = match self.run(s) {
            Ok(root) => root,
            Err(status) => return status,
        };
        let search = &mut self.search;
        let canon = search.canonical(&root);
        let proof = explicit::chain(
            &s.antecedent,
            &canon.antecedent,
            &s.succedent,
            search.explicit(&root),
        );
        if proof.uses_omega() {
            ProofStatus::ProvedApprox {
                proof,
                bound: search.cfg.omega_bound,
            }
        } else {
            ProofStatus::Proved(proof)
        }
    }

    /// Like [`Prover::prove`] without building the proof tree.
    pub fn decide(&mut self, s: &Sequent) -> Verdict {
        match self.run(s) {
            Ok(_) => Verdict::Derivable,
            Err(ProofStatus::Refuted) => Verdict::NotDerivable { bounded: false },
            Err(ProofStatus::RefutedBounded { .. }) => Verdict::NotDerivable { bounded: true },
            Err(_) => Verdict::Unknown,
        }
    }

    /// The proved root goal, or the final status of a failed search.
    fn run(&mut self, s: &Sequent) -> Result<search::Goal, ProofStatus> {
        let cfg = &self.search.cfg;
        if let Err(e) = cfg.validate() {
            return Err(ProofStatus::Unknown(alloc::format!(
                "invalid configuration: {}",
                e
            )));
        }
        if cfg.lambek_restriction && s.antecedent.is_empty() {
            return Err(ProofStatus::Refuted);
        }
        let growth = cfg.has_growth(s);
        let (max_depth, max_antecedent, max_steps) =
            (cfg.max_depth, cfg.max_antecedent, cfg.max_steps);
        let search = &mut self.search;
        search.reset_query();
        search.prepare(s);
        let root = search.root_goal(s);
        let mut outcome = Err(0);
        for budget in depth_schedule(growth, max_depth) {
            search.hit_depth = false;
            outcome = search.solve(&root, budget);
            if outcome.is_ok() || search.aborted || !search.hit_depth {
                break;
            }
            search.learn();
        }
        match outcome {
            Ok(()) => Ok(root),
            Err(_) if search.aborted => Err(ProofStatus::Unknown(alloc::format!(
                "step budget of {} exhausted",
                max_steps
            ))),
            Err(_) if growth => Err(ProofStatus::RefutedBounded {
                depth: max_depth,
                antecedent: max_antecedent,
            }),
            Err(_) => Err(ProofStatus::Refuted),
        }
    }

    /// Goal expansions spent by the last query.
    pub fn last_steps(&self) -> u64 {
        self.search.steps
    }
}

/// Depth limits tried in turn: doubling up to `max_depth`, or unbounded.
fn depth_schedule(growth: bool, max_depth: usize) -> Vec<usize> {
    if !growth {
        return alloc::vec![UNBOUNDED];
    }
    let mut out = Vec::new();
    let mut d = 4;
    while d < max_depth {
        out.push(d);
        d *= 2;
    }
    out.push(max_depth);
    out
}

/// Decide `s` under `cfg`. Hypotheses in `cfg` are used through the direct route.
pub fn prove(s: &Sequent, cfg: &CalculusConfig) -> ProofStatus {
    Prover::new(cfg.clone()).prove(s)
}

/// Derivability of `s` from `cfg.hypotheses` along the chosen route.
pub fn prove_from_hypotheses(
    s: &Sequent,
    cfg: &CalculusConfig,
    route: Route,
) -> Result<ProofStatus, ProverError> {
    match route {
        Route::Direct => Ok(prove(s, cfg)),
        Route::Bang { conservative } => {
            if conservative && (s.has_product() || cfg.hypotheses.iter().any(Sequent::has_product))
            {
                return Err(ProverError::ProductInBangRoute);
            }
            let goal = bang_translate(&cfg.hypotheses, s);
            let bang_cfg = CalculusConfig {
                bang: true,
                hypotheses: Vec::new(),
                ..cfg.clone()
            };
            Ok(prove(&goal, &bang_cfg))
        }
    }
}

/// `!A1, ..., !An, Π => B` where `=> Ai` is the curried i-th hypothesis.
pub fn bang_translate(hypotheses: &[Sequent], s: &Sequent) -> Sequent {
    let mut antecedent: Vec<Formula> = hypotheses
        .iter()
        .map(|h| Formula::bang(h.curry().succedent))
        .collect();
    antecedent.extend(s.antecedent.iter().cloned());
    Sequent::new(antecedent, s.succedent.clone())
}

#[cfg(test)]
mod tests;
