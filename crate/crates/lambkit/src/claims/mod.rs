//! The reproduction suite run by `lambkit verify-paper`.
//!
//! Each claim is an exact decision, a bounded search outcome, or a randomized
//! property suite. Runs are deterministic for a given seed.

pub mod algebra;

use std::collections::BTreeMap;
use std::time::{Duration, Instant};

use lambkit_core::calculus::{check_proof, CalculusConfig, Preset};
use lambkit_core::countermodel::{
    enumerate_models, find_countermodel, Candidate, ModelClass, SearchOutcome, SearchSpec,
};
use lambkit_core::gen::{cut_pairs, default_vars, harvest, random_sequent};
use lambkit_core::prover::{prove, prove_from_hypotheses, ProofStatus, Prover, Route, Verdict};
use lambkit_core::relmodel::{
    all_relations, check_model, eval, find_unit, ordered_double, sequent_true, ConstantsMode,
    Entailment, RModel, Relation,
};
use lambkit_core::syntax::{Formula, Sequent};
use lambkit_core::unigraph::{label_calculus, GraphBuilder, GraphChecker, Variant};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

pub const DEFAULT_SEED: u64 = 20_190_701;

/// Sequent that is true in all standard square models yet underivable.
pub const ZERO_SEQUENT: &str = "0/(0/p), 0/(0/q) => (0/(0/q)) . (0/(0/p))";
pub const BC_HYPOTHESIS: &str = "a\\a => b . c";
pub const BC_GOAL: &str = "d => d . b . ((c . b) & (a\\a)) . c";
pub const BC_SPECIALISED: &str = "=> b . ((c . b) & 1) . c";

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Outcome {
    pub passed: bool,
    pub detail: String,
}

impl Outcome {
    fn new(passed: bool, detail: impl Into<String>) -> Outcome {
        Outcome {
            passed,
            detail: detail.into(),
        }
    }
}

pub struct Claim {
    pub id: u8,
    pub tag: &'static str,
    pub title: &'static str,
    /// Wall-clock limit for the whole claim.
    pub limit: Duration,
    run: fn(u64) -> Outcome,
}

#[derive(Clone, Debug, Serialize)]
pub struct ClaimReport {
    pub id: u8,
    pub tag: &'static str,
    pub title: &'static str,
    pub passed: bool,
    pub detail: String,
    pub millis: u128,
    pub limit_millis: u128,
}

impl Claim {
    pub fn run(&self, seed: u64) -> ClaimReport {
        let start = Instant::now();
        let out = (self.run)(seed);
        let elapsed = start.elapsed();
        let in_time = elapsed <= self.limit;
        let mut detail = out.detail;
        if !in_time {
            detail = format!("{}; over the {:?} limit", detail, self.limit);
        }
        ClaimReport {
            id: self.id,
            tag: self.tag,
            title: self.title,
            passed: out.passed && in_time,
            detail,
            millis: elapsed.as_millis(),
            limit_millis: self.limit.as_millis(),
        }
    }
}

pub fn claims() -> Vec<Claim> {
    let s = Duration::from_secs;
    vec![
        Claim {
            id: 1,
            tag: "decisions",
            title: "exact decisions on the worked sequents",
            limit: s(12),
            run: decisions,
        },
        Claim {
            id: 2,
            tag: "strong-completeness",
            title: "bc entailment holds in sampled square models",
            limit: s(10),
            run: bc_semantic,
        },
        Claim {
            id: 3,
            tag: "strong-completeness",
            title: "bc specialisation has no bounded proof",
            limit: s(5),
            run: bc_syntactic,
        },
        Claim {
            id: 4,
            tag: "zero",
            title: "zero sequent has no small standard countermodel",
            limit: s(20),
            run: zero_semantic,
        },
        Claim {
            id: 5,
            tag: "algebra",
            title: "relation algebra laws",
            limit: s(20),
            run: algebra_laws,
        },
        Claim {
            id: 6,
            tag: "soundness",
            title: "harvested theorems are true in their model classes",
            limit: s(20),
            run: soundness,
        },
        Claim {
            id: 7,
            tag: "cut",
            title: "cut is admissible on harvested pairs",
            limit: s(20),
            run: cut_admissibility,
        },
        Claim {
            id: 8,
            tag: "graph",
            title: "graph construction keeps its invariants",
            limit: s(20),
            run: graph,
        },
        Claim {
            id: 9,
            tag: "exponential",
            title: "hypotheses and their exponential translation agree",
            limit: s(20),
            run: round_trip,
        },
    ]
}

/// Claims whose id or tag equals `only`, or all of them.
pub fn select(only: Option<&str>) -> Vec<Claim> {
    let all = claims();
    match only {
        None => all,
        Some(key) => all
            .into_iter()
            .filter(|c| c.tag.eq_ignore_ascii_case(key) || c.id.to_string() == key)
            .collect(),
    }
}

pub fn tags() -> Vec<&'static str> {
    let mut t: Vec<&'static str> = claims().iter().map(|c| c.tag).collect();
    t.dedup();
    t
}

fn seq(s: &str) -> Sequent {
    s.parse().expect("built-in sequent")
}

fn cfg(p: Preset) -> CalculusConfig {
    CalculusConfig::preset(p)
}

fn decisions(_seed: u64) -> Outcome {
    let rows: Vec<(&str, Preset, Vec<&str>, &str)> = vec![
        ("(p\\p)\\q => q", Preset::LLambda, vec![], "Proved"),
        ("(p\\p)\\q => q", Preset::L, vec![], "Refuted"),
        (ZERO_SEQUENT, Preset::L01, vec![], "Refuted"),
        (
            "1 & p & q => (1 & p) . (1 & q)",
            Preset::L01,
            vec![],
            "Refuted",
        ),
        (
            "1/(p/p) => (1/(p/p)) . (1/(p/p))",
            Preset::L01,
            vec![],
            "Refuted",
        ),
        ("=> 1", Preset::L01, vec![], "Proved"),
        ("0 => p", Preset::L01, vec![], "Proved"),
        ("a . 1 => a", Preset::L01, vec![], "Proved"),
        ("a => a . 1", Preset::L01, vec![], "Proved"),
        ("1\\1 => b . c", Preset::L01, vec!["=> b . c"], "Proved"),
    ];
    let mut bad = Vec::new();
    let mut slowest = Duration::ZERO;
    for (text, preset, hyps, want) in &rows {
        let c = cfg(*preset).with_hypotheses(hyps.iter().map(|h| seq(h)).collect());
        let start = Instant::now();
        let st = prove(&seq(text), &c);
        let took = start.elapsed();
        slowest = slowest.max(took);
        let replayed = st.proof().is_none_or(|p| check_proof(p, &c));
        if st.label() != *want || !replayed || took > Duration::from_secs(1) {
            bad.push(format!("{} in {}: {} in {:?}", text, preset, st, took));
        }
    }
    if bad.is_empty() {
        Outcome::new(
            true,
            format!("{} sequents, slowest {:?}", rows.len(), slowest),
        )
    } else {
        Outcome::new(false, bad.join("; "))
    }
}

fn bc_semantic(seed: u64) -> Outcome {
    let h = [seq(BC_HYPOTHESIS)];
    let goal = seq(BC_GOAL);
    let vars = lambkit_core::countermodel::variables(&h, &goal);
    let (mut holds, mut vacuous, mut counter) = (0, 0, 0);
    let mut found = None;
    let specs = [
        SearchSpec::exhaustive(2, ModelClass::StandardSquare),
        SearchSpec {
            structured_bias: true,
            ..SearchSpec::random(5, 1000, seed, ModelClass::StandardSquare)
        },
    ];
    for spec in &specs {
        for m in enumerate_models(&vars, spec).expect("spec within guard") {
            match m.entails(&h, &goal) {
                Ok(Entailment::CounterexampleFound) => {
                    found.get_or_insert(m);
                    counter += 1;
                }
                Ok(Entailment::Holds) => holds += 1,
                Ok(Entailment::HypothesisFails) => vacuous += 1,
                Err(e) => return Outcome::new(false, e.to_string()),
            }
        }
    }
    let detail = format!(
        "{} models: hypothesis true and goal true in {}, hypothesis false in {}, countermodels {}",
        holds + vacuous + counter,
        holds,
        vacuous,
        counter
    );
    match found {
        None => Outcome::new(true, detail),
        Some(m) => Outcome::new(
            false,
            format!("{}; first countermodel {:?}", detail, m.valuation()),
        ),
    }
}

fn bc_syntactic(_seed: u64) -> Outcome {
    let c = CalculusConfig {
        max_antecedent: 8,
        max_depth: 20,
        ..cfg(Preset::L01bc)
    };
    let st = prove(&seq(BC_SPECIALISED), &c);
    let ok = st
        == ProofStatus::RefutedBounded {
            depth: 20,
            antecedent: 8,
        };
    Outcome::new(ok, st.to_string())
}

fn zero_semantic(seed: u64) -> Outcome {
    let s = seq(ZERO_SEQUENT);
    let mut notes = Vec::new();
    let mut ok = true;
    for spec in [
        SearchSpec::exhaustive(2, ModelClass::StandardSquare),
        SearchSpec::random(4, 500, seed, ModelClass::StandardSquare),
    ] {
        match find_countermodel(&[], &s, &spec) {
            Ok(SearchOutcome::NoneUpTo { visited }) => {
                notes.push(format!("none in {} models", visited))
            }
            Ok(SearchOutcome::Found(c)) => {
                ok = false;
                notes.push(format!("countermodel {:?}", c.model.valuation()));
            }
            Err(e) => {
                ok = false;
                notes.push(e.to_string());
            }
        }
    }
    let double = Formula::rdiv(
        Formula::Zero,
        Formula::rdiv(Formula::Zero, Formula::var("p")),
    );
    let mut checked = 0;
    for n in 1..=3 {
        let (empty, full) = (Relation::empty(n), Relation::full(n));
        for r in all_relations(n) {
            let m = RModel::square(
                n,
                BTreeMap::from([("p".into(), r)]),
                ConstantsMode::Standard,
            );
            let v = eval(&double, &m).expect("square model");
            checked += 1;
            if v != empty && v != full {
                ok = false;
                notes.push(format!("0/(0/R) = {} for R = {}", v, r));
                break;
            }
        }
    }
    notes.push(format!("0/(0/R) empty or full for {} relations", checked));
    Outcome::new(ok, notes.join("; "))
}

fn algebra_laws(seed: u64) -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    const CASES: usize = 10_000;
    let suites = [
        ("galois", algebra::galois(&mut rng, CASES)),
        ("star", algebra::star_fixpoint(&mut rng, CASES)),
        (
            "iterative division",
            algebra::iterative_division(&mut rng, CASES),
        ),
        ("unit membership", algebra::unit_membership(&mut rng, 50)),
        ("zero absorption", algebra::zero_absorption(&mut rng, CASES)),
    ];
    let ok = suites.iter().all(|(_, t)| t.ok());
    let detail = suites
        .iter()
        .map(|(name, t)| match t.failures.first() {
            None => format!("{} {}/{}", name, t.cases, t.cases),
            Some(f) => format!("{} failed: {}", name, f),
        })
        .collect::<Vec<_>>()
        .join(", ");
    Outcome::new(ok, detail)
}

/// Models of `class` over `p, q, r`.
fn model_pool(class: ModelClass, max_n: usize, count: usize, seed: u64) -> Vec<Candidate> {
    let vars = default_vars();
    let spec = SearchSpec {
        structured_bias: true,
        ..SearchSpec::random(max_n, count, seed, class)
    };
    enumerate_models(&vars, &spec)
        .expect("spec within guard")
        .collect()
}

fn soundness(seed: u64) -> Outcome {
    let fragments = [
        (Preset::L, ModelClass::Relativised, 4),
        (Preset::LMeet, ModelClass::StandardSquare, 4),
        (
            Preset::L01,
            ModelClass::NonStandard {
                product_closed: true,
                family_cap: 256,
            },
            3,
        ),
        (
            Preset::PF01,
            ModelClass::NonStandard {
                product_closed: false,
                family_cap: 256,
            },
            3,
        ),
    ];
    let mut ok = true;
    let mut notes = Vec::new();
    for (i, (preset, class, max_n)) in fragments.into_iter().enumerate() {
        let h = harvest(&cfg(preset), 500, seed.wrapping_add(i as u64));
        let models = model_pool(class, max_n, 60, seed ^ (0xa5a5 + i as u64));
        let mut violations = 0;
        let mut first = None;
        for s in &h.proved {
            for m in &models {
                let holds = match m {
                    Candidate::Relational(r) => sequent_true(s, r),
                    Candidate::NonStandard(r) => sequent_true(s, r),
                };
                if holds != Ok(true) {
                    violations += 1;
                    first.get_or_insert_with(|| format!("{} in {:?}", s, m.valuation()));
                }
            }
        }
        let good =
            h.proved.len() == 500 && h.missed.is_empty() && violations == 0 && !models.is_empty();
        ok &= good;
        notes.push(format!(
            "{}: {} theorems x {} models, {} missed, {} violations{}",
            preset,
            h.proved.len(),
            models.len(),
            h.missed.len(),
            violations,
            first.map(|f| format!(" ({})", f)).unwrap_or_default()
        ));
    }
    Outcome::new(ok, notes.join("; "))
}

fn cut_admissibility(seed: u64) -> Outcome {
    let c = cfg(Preset::L01);
    let pairs = cut_pairs(&c, 200, seed);
    let mut prover = Prover::new(c);
    let mut bad = Vec::new();
    for p in &pairs {
        let premises = prover.decide(&p.left) == Verdict::Derivable
            && prover.decide(&p.right) == Verdict::Derivable;
        let conclusion = prover.decide(&p.conclusion());
        if !premises || conclusion != Verdict::Derivable {
            bad.push(format!(
                "{} + {} gives {} ({:?})",
                p.left,
                p.right,
                p.conclusion(),
                conclusion
            ));
        }
    }
    let ok = pairs.len() == 200 && bad.is_empty();
    let mut detail = format!("{} pairs, {} failures", pairs.len(), bad.len());
    if let Some(b) = bad.first() {
        detail = format!("{}; {}", detail, b);
    }
    Outcome::new(ok, detail)
}

fn graph(_seed: u64) -> Outcome {
    let universe: Vec<Formula> = ["a", "b", "a\\b"]
        .iter()
        .map(|s| s.parse().unwrap())
        .collect();
    let mut notes = Vec::new();
    let mut ok = true;
    match GraphBuilder::new(universe, Variant::Full, &[]) {
        Err(e) => return Outcome::new(false, e.to_string()),
        Ok(mut b) => {
            let mut checker = GraphChecker::new(label_calculus(&[]));
            let mut witnesses = true;
            for _ in 0..30 {
                if let Err(e) = b.step() {
                    return Outcome::new(false, format!("stage {}: {}", b.graph().stage, e));
                }
                let r = checker.check_with(b.graph(), b.log());
                witnesses &= r.all_ok();
                if !r.structural_ok() {
                    ok = false;
                    notes.push(format!("stage {}: {:?}", r.stage, r));
                    break;
                }
            }
            let g = b.graph();
            notes.push(format!(
                "30 stages, {} vertices, {} edges, limit witnesses {}",
                g.vertices,
                g.edges.len(),
                if witnesses { "present" } else { "incomplete" }
            ));
        }
    }
    let family: Vec<Relation> = all_relations(2).map(|r| ordered_double(&r)).collect();
    match lambkit_core::relmodel::close_family(&family, lambkit_core::relmodel::Ops::ALL, 4096) {
        lambkit_core::relmodel::Closure::Closed(f) => {
            let unit = find_unit(&f);
            let delta_prime = ordered_double(&Relation::identity(2));
            let unit_ok = unit == Some(delta_prime) && delta_prime != Relation::identity(4);
            let model = lambkit_core::relmodel::NSModel::new(f.clone(), BTreeMap::new(), true);
            let violations = model.as_ref().map(check_model);
            let model_ok = matches!(&violations, Some(v) if v.is_empty());
            ok &= unit_ok && model_ok;
            notes.push(format!(
                "doubled family of {} members, unit {}, {} violations",
                f.len(),
                unit.map(|u| u.to_string())
                    .unwrap_or_else(|| "missing".into()),
                violations.map_or(usize::MAX, |v| v.len())
            ));
        }
        lambkit_core::relmodel::Closure::Overflow => {
            ok = false;
            notes.push("doubled family overflowed".into());
        }
    }
    Outcome::new(ok, notes.join("; "))
}

/// Small product-free hypothesis sets and goals, half of them built to chain.
pub fn round_trip_inputs(seed: u64, count: usize) -> Vec<(Vec<Sequent>, Sequent)> {
    let c = cfg(Preset::PF);
    let vars = default_vars();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|i| {
            let k = rng.gen_range(1..=2);
            let h: Vec<Sequent> = (0..k)
                .map(|_| random_sequent(&mut rng, &c, &vars, 1, 1))
                .collect();
            let s = if i % 2 == 0 {
                let first = &h[0];
                let last = &h[k - 1];
                Sequent::new(first.antecedent.clone(), last.succedent.clone())
            } else {
                random_sequent(&mut rng, &c, &vars, 2, 1)
            };
            (h, s)
        })
        .collect()
}

fn round_trip(seed: u64) -> Outcome {
    let inputs = round_trip_inputs(seed, 50);
    let (mut agree_proved, mut agree_refuted, mut unknown) = (0, 0, 0);
    let mut bad = Vec::new();
    for (h, s) in &inputs {
        let c = cfg(Preset::PF).with_hypotheses(h.clone());
        let direct = prove_from_hypotheses(s, &c, Route::Direct).expect("direct route");
        let bang = match prove_from_hypotheses(s, &c, Route::Bang { conservative: true }) {
            Ok(st) => st,
            Err(e) => return Outcome::new(false, e.to_string()),
        };
        match (direct.is_proved(), bang.is_proved()) {
            (true, true) => agree_proved += 1,
            _ if matches!(direct, ProofStatus::Unknown(_))
                || matches!(bang, ProofStatus::Unknown(_)) =>
            {
                unknown += 1
            }
            (false, false) => agree_refuted += 1,
            _ => bad.push(format!(
                "{:?} / {}: direct {}, exponential {}",
                h, s, direct, bang
            )),
        }
    }
    let ok = bad.is_empty() && unknown * 10 < inputs.len();
    let mut detail = format!(
        "{} cases: {} proved both ways, {} refuted both ways, {} unknown, {} disagreements",
        inputs.len(),
        agree_proved,
        agree_refuted,
        unknown,
        bad.len()
    );
    if let Some(b) = bad.first() {
        detail = format!("{}; {}", detail, b);
    }
    Outcome::new(ok, detail)
}
