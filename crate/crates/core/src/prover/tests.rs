use super::*;
use crate::calculus::{check_proof, validate_proof, Preset, Rule};

fn seq(s: &str) -> Sequent {
    s.parse().unwrap()
}

fn cfg(p: Preset) -> CalculusConfig {
    CalculusConfig::preset(p)
}

fn replay(status: &ProofStatus, c: &CalculusConfig) {
    let proof = status.proof().expect("a proof");
    if let Err(e) = validate_proof(proof, c) {
        panic!("{}", e);
    }
}

#[test]
fn identity() {
    let st = prove(&seq("p => p"), &cfg(Preset::L));
    assert!(matches!(st, ProofStatus::Proved(_)));
    replay(&st, &cfg(Preset::L));
}

#[test]
fn empty_antecedent_inside_derivation() {
    let s = seq("(p\\p)\\q => q");
    let st = prove(&s, &cfg(Preset::LLambda));
    assert!(matches!(st, ProofStatus::Proved(_)));
    replay(&st, &cfg(Preset::LLambda));
    assert_eq!(prove(&s, &cfg(Preset::L)), ProofStatus::Refuted);
}

#[test]
fn zero_double_negation_is_not_derivable() {
    let s = seq("0/(0/p), 0/(0/q) => (0/(0/q)) . (0/(0/p))");
    assert_eq!(prove(&s, &cfg(Preset::L01)), ProofStatus::Refuted);
}

#[test]
fn unit_examples_are_not_derivable() {
    assert_eq!(
        prove(&seq("1 & p & q => (1 & p) . (1 & q)"), &cfg(Preset::L01)),
        ProofStatus::Refuted
    );
    assert_eq!(
        prove(&seq("1/(p/p) => (1/(p/p)) . (1/(p/p))"), &cfg(Preset::L01)),
        ProofStatus::Refuted
    );
}

#[test]
fn constants_and_unit_laws() {
    let c = cfg(Preset::L01);
    for s in [
        "=> 1",
        "0 => p",
        "a . 1 => a",
        "a => a . 1",
        "1 . a => a",
        "a => 1 . a",
        "1 => 1 . 1",
    ] {
        let st = prove(&seq(s), &c);
        assert!(matches!(st, ProofStatus::Proved(_)), "{}: {}", s, st);
        replay(&st, &c);
    }
}

#[test]
fn iterative_left_rule() {
    let c = cfg(Preset::L01ItD);
    let st = prove(&seq("a, a*\\b => b"), &c);
    assert!(matches!(st, ProofStatus::Proved(_)), "{}", st);
    replay(&st, &c);
    assert!(st.proof().unwrap().uses(Rule::IterLDivL));
}

#[test]
fn omega_refutation_by_single_premise() {
    let c = cfg(Preset::L01ItD);
    assert_eq!(prove(&seq("b => a*\\b"), &c), ProofStatus::Refuted);
    // The n = 1 premise alone is refuted.
    assert_eq!(prove(&seq("a, b => b"), &c), ProofStatus::Refuted);
}

#[test]
fn omega_success_is_approximate() {
    let c = cfg(Preset::L01ItD);
    let st = prove(&seq("b => a*\\(a*\\b)"), &c);
    assert!(!st.is_proved());
    let st = prove(&seq("a*\\b => a*\\b"), &c);
    assert!(matches!(st, ProofStatus::Proved(_)));
    let st = prove(&seq("a*\\b => a\\(a*\\b)"), &c);
    assert!(
        matches!(st, ProofStatus::ProvedApprox { bound: 8, .. }),
        "{}",
        st
    );
    replay(&st, &c);
}

#[test]
fn hypothesis_axiom() {
    let c = cfg(Preset::L01).with_hypotheses(alloc::vec![seq("p => q")]);
    let st = prove_from_hypotheses(&seq("p => q"), &c, Route::Direct).unwrap();
    assert!(matches!(st, ProofStatus::Proved(_)));
    replay(&st, &c);
}

#[test]
fn chained_hypotheses_through_the_exponential() {
    let c = cfg(Preset::L01).with_hypotheses(alloc::vec![seq("p => q"), seq("q => r")]);
    let translated = bang_translate(&c.hypotheses, &seq("p => r"));
    assert_eq!(translated, seq("!(p\\q), !(q\\r), p => r"));
    let st = prove_from_hypotheses(&seq("p => r"), &c, Route::Bang { conservative: true }).unwrap();
    assert!(matches!(st, ProofStatus::Proved(_)), "{}", st);
    let bang_cfg = CalculusConfig {
        bang: true,
        hypotheses: Vec::new(),
        ..c.clone()
    };
    replay(&st, &bang_cfg);
    let direct = prove_from_hypotheses(&seq("p => r"), &c, Route::Direct).unwrap();
    assert!(direct.is_proved());
    replay(&direct, &c);
}

#[test]
fn bc_rule_gives_the_product() {
    let c = cfg(Preset::L01bc);
    let st = prove(&seq("=> b . c"), &c);
    assert!(matches!(st, ProofStatus::Proved(_)));
    replay(&st, &c);
    let h = cfg(Preset::L01).with_hypotheses(alloc::vec![seq("=> b . c")]);
    let st = prove(&seq("=> b . c"), &h);
    assert!(st.is_proved());
}

#[test]
fn bc_counterexample_is_bounded_refuted() {
    let c = CalculusConfig {
        max_antecedent: 8,
        max_depth: 20,
        ..cfg(Preset::L01bc)
    };
    let st = prove(&seq("=> b . ((c . b) & 1) . c"), &c);
    assert_eq!(
        st,
        ProofStatus::RefutedBounded {
            depth: 20,
            antecedent: 8
        }
    );
}

#[test]
fn hypothesis_counterexample_is_bounded_refuted() {
    let c = cfg(Preset::L01).with_hypotheses(alloc::vec![seq("a\\a => b . c")]);
    let st = prove_from_hypotheses(
        &seq("d => d . b . ((c . b) & (a\\a)) . c"),
        &c,
        Route::Direct,
    )
    .unwrap();
    assert_eq!(
        st,
        ProofStatus::RefutedBounded {
            depth: 64,
            antecedent: 12
        }
    );
}

#[test]
fn bang_translation_examples() {
    assert_eq!(bang_translate(&[seq("=> a")], &seq("=> a")), seq("!a => a"));
    assert_eq!(bang_translate(&[], &seq("p => p")), seq("p => p"));
    assert_eq!(
        bang_translate(&[seq("a => b")], &seq("=> c")),
        seq("!(a\\b) => c")
    );
    let c = cfg(Preset::BangL01);
    let st = prove(&seq("!a => a"), &c);
    assert!(st.is_proved());
    replay(&st, &c);
}

#[test]
fn bang_route_rejects_products_when_conservative() {
    let c = cfg(Preset::L01).with_hypotheses(alloc::vec![seq("a => b . c")]);
    assert_eq!(
        prove_from_hypotheses(&seq("a => b"), &c, Route::Bang { conservative: true }),
        Err(ProverError::ProductInBangRoute)
    );
    assert!(prove_from_hypotheses(
        &seq("a => b"),
        &c,
        Route::Bang {
            conservative: false
        }
    )
    .is_ok());
}

#[test]
fn exponential_structural_moves_replay() {
    let c = cfg(Preset::BangL01);
    for s in [
        "!q, q\\r => r",
        "!p, !p\\q => q",
        "!a, !b => !a . !b",
        "!(p\\q), !(q\\r), p => r",
        "!a, !a, b => b . a . a",
        "!a => !!a",
    ] {
        let st = prove(&seq(s), &c);
        assert!(st.is_proved(), "{}: {}", s, st);
        replay(&st, &c);
    }
    assert!(prove(&seq("!a, b => b . b"), &c).is_refuted());
}

#[test]
fn reusable_prover() {
    let mut p = Prover::new(cfg(Preset::L01));
    assert!(p.prove(&seq("a . 1 => a")).is_proved());
    assert_eq!(p.prove(&seq("a => b")), ProofStatus::Refuted);
    assert!(p.prove(&seq("a, a\\b => b")).is_proved());
    assert!(check_proof(
        p.prove(&seq("a => a . 1")).proof().unwrap(),
        &cfg(Preset::L01)
    ));
}

#[test]
fn step_budget_gives_unknown() {
    let c = CalculusConfig {
        max_steps: 3,
        ..cfg(Preset::L01)
    };
    let st = prove(&seq("p/q, q/r, r/s, s => p"), &c);
    assert!(matches!(st, ProofStatus::Unknown(_)), "{}", st);
}
