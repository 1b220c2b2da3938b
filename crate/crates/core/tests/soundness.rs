//! Theorems of each fragment hold in the matching model class.

use lambkit_core::calculus::{CalculusConfig, Preset};
use lambkit_core::countermodel::{
    enumerate_models, find_countermodel, variables, Candidate, ModelClass, SearchSpec,
};
use lambkit_core::gen::harvest;
use lambkit_core::relmodel::{check_model, semantic_entails, sequent_true, Entailment};
use lambkit_core::syntax::Sequent;

fn pool(vars: &[String], class: ModelClass, max_n: usize) -> Vec<Candidate> {
    let mut spec = SearchSpec::random(max_n, 80, 17, class);
    spec.structured_bias = true;
    enumerate_models(vars, &spec).unwrap().collect()
}

fn check(preset: Preset, class: ModelClass, max_n: usize) {
    let h = harvest(&CalculusConfig::preset(preset), 300, 21);
    assert!(
        h.proved.len() >= 250,
        "{}: only {} theorems",
        preset,
        h.proved.len()
    );
    let vars = variables(&[], &h.proved[0]);
    let all: Vec<String> = ["p", "q", "r"].iter().map(|s| s.to_string()).collect();
    assert!(vars.iter().all(|v| all.contains(v)));
    let models = pool(&all, class, max_n);
    assert!(models.len() >= 40);
    for m in &models {
        if let Candidate::NonStandard(ns) = m {
            assert!(check_model(ns).is_empty());
        }
        for s in &h.proved {
            let ok = match m {
                Candidate::Relational(r) => sequent_true(s, r),
                Candidate::NonStandard(ns) => sequent_true(s, ns),
            };
            assert!(ok.unwrap(), "{} fails in {:?}", s, m);
        }
    }
}

#[test]
fn lambek_theorems_hold_in_relativised_models() {
    check(Preset::L, ModelClass::Relativised, 4);
}

#[test]
fn meet_theorems_hold_in_square_models() {
    check(Preset::LMeet, ModelClass::StandardSquare, 4);
}

#[test]
fn constant_theorems_hold_in_nonstandard_models() {
    check(
        Preset::L01,
        ModelClass::NonStandard {
            product_closed: true,
            family_cap: 512,
        },
        3,
    );
}

#[test]
fn product_free_theorems_hold_without_product_closure() {
    check(
        Preset::PF01,
        ModelClass::NonStandard {
            product_closed: false,
            family_cap: 512,
        },
        3,
    );
}

#[test]
fn countermodels_are_certified() {
    let goal: Sequent = "p.q => q.p".parse().unwrap();
    let out = find_countermodel(
        &[],
        &goal,
        &SearchSpec::exhaustive(3, ModelClass::StandardSquare),
    )
    .unwrap();
    let cm = out.countermodel().expect("commutativity fails");
    assert!(!cm.certificate.goal.holds());
    assert!(!cm
        .certificate
        .goal
        .antecedent
        .is_subset(&cm.certificate.goal.succedent));
    assert_eq!(
        cm.model.entails(&[], &goal).unwrap(),
        Entailment::CounterexampleFound
    );
    let Candidate::Relational(m) = &cm.model else {
        panic!()
    };
    assert!(!sequent_true(&goal, m).unwrap());
}

#[test]
fn bc_hypothesis_entails_its_goal_on_small_models() {
    let h: Sequent = "a\\a => b.c".parse().unwrap();
    let goal: Sequent = "=> b.((c.b)&(a\\a)).c".parse().unwrap();
    let vars = variables(std::slice::from_ref(&h), &goal);
    let spec = SearchSpec::exhaustive(2, ModelClass::StandardSquare);
    for m in enumerate_models(&vars, &spec).unwrap() {
        let Candidate::Relational(r) = m else {
            unreachable!()
        };
        assert_ne!(
            semantic_entails(&r, std::slice::from_ref(&h), &goal).unwrap(),
            Entailment::CounterexampleFound
        );
    }
}
