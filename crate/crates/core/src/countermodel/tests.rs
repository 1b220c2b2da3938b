use super::*;
use crate::relmodel::sequent_true;

fn seq(s: &str) -> Sequent {
    s.parse().unwrap()
}

fn vars(v: &[&str]) -> Vec<String> {
    v.iter().map(|s| String::from(*s)).collect()
}

const PROPOSITION: &str = "0/(0/p), 0/(0/q) => (0/(0/q)) . (0/(0/p))";

#[test]
fn first_enumerated_countermodel() {
    let spec = SearchSpec::exhaustive(1, ModelClass::StandardSquare);
    let out = find_countermodel(&[], &seq("p => q"), &spec).unwrap();
    let c = out.countermodel().unwrap();
    assert_eq!(c.model.valuation()["p"], Relation::identity(1));
    assert_eq!(c.model.valuation()["q"], Relation::empty(1));
}

#[test]
fn commutativity_fails_on_three_worlds() {
    let spec = SearchSpec::exhaustive(3, ModelClass::StandardSquare);
    let s = seq("p . q => q . p");
    let c = find_countermodel(&[], &s, &spec).unwrap();
    let c = c.countermodel().unwrap();
    let Candidate::Relational(m) = &c.model else {
        panic!()
    };
    assert!(!sequent_true(&s, m).unwrap());
    assert!(!c
        .certificate
        .goal
        .antecedent
        .is_subset(&c.certificate.goal.succedent));
}

#[test]
fn proposition_has_no_small_countermodel() {
    let s = seq(PROPOSITION);
    let spec = SearchSpec::exhaustive(2, ModelClass::StandardSquare);
    assert_eq!(
        find_countermodel(&[], &s, &spec).unwrap(),
        SearchOutcome::NoneUpTo {
            visited: 2 * 2 + 16 * 16
        }
    );
    let spec = SearchSpec::random(4, 200, 7, ModelClass::StandardSquare);
    assert!(find_countermodel(&[], &s, &spec)
        .unwrap()
        .countermodel()
        .is_none());
}

#[test]
fn enumeration_counts() {
    let p = vars(&["p"]);
    let count = |n, class| {
        enumerate_models(&p, &SearchSpec::exhaustive(n, class))
            .unwrap()
            .count()
    };
    assert_eq!(count(1, ModelClass::StandardSquare), 2);
    assert_eq!(count(2, ModelClass::StandardSquare), 2 + 16);
    let two: Vec<Candidate> =
        enumerate_models(&p, &SearchSpec::exhaustive(2, ModelClass::StandardSquare))
            .unwrap()
            .filter(|m| m.n() == 2)
            .collect();
    let mut codes: Vec<u64> = two.iter().map(|m| m.valuation()["p"].code()).collect();
    codes.dedup();
    assert_eq!(codes, (0..16).collect::<Vec<u64>>());
}

#[test]
fn relativised_universes() {
    let none: Vec<String> = Vec::new();
    let spec = SearchSpec::exhaustive(2, ModelClass::Relativised);
    let universes: Vec<Relation> = enumerate_models(&none, &spec)
        .unwrap()
        .filter_map(|m| match m {
            Candidate::Relational(r) if r.n() == 2 => Some(r.universe),
            _ => None,
        })
        .collect();
    let brute: Vec<Relation> = all_relations(2)
        .filter(|u| u.then(u).is_subset(u))
        .collect();
    assert_eq!(brute.len(), 13);
    assert_eq!(universes, brute);
}

#[test]
fn relativised_rejects_constants() {
    let spec = SearchSpec::exhaustive(2, ModelClass::Relativised);
    assert_eq!(
        find_countermodel(&[], &seq("p => 1"), &spec),
        Err(SearchError::NotRelativisable)
    );
    assert_eq!(
        find_countermodel(&[], &seq("=> p\\p"), &spec),
        Err(SearchError::NotRelativisable)
    );
    let c = find_countermodel(&[], &seq("p => p . p"), &spec).unwrap();
    assert!(c.countermodel().is_some());
}

#[test]
fn guard() {
    let spec = SearchSpec::exhaustive(4, ModelClass::StandardSquare);
    assert_eq!(
        find_countermodel(&[], &seq("p => p"), &spec),
        Err(SearchError::Guard { max_n: 4, limit: 3 })
    );
    let spec = SearchSpec {
        mode: Mode::Exhaustive { allow_large: true },
        ..spec
    };
    assert!(spec.check().is_ok());
    let spec = SearchSpec { max_n: 5, ..spec };
    assert!(spec.check().is_err());
}

#[test]
fn random_is_reproducible() {
    let v = vars(&["p", "q"]);
    for class in [
        ModelClass::StandardSquare,
        ModelClass::Relativised,
        ModelClass::NonStandard {
            product_closed: true,
            family_cap: 256,
        },
    ] {
        let spec = SearchSpec::random(3, 40, 99, class);
        let a: Vec<Candidate> = enumerate_models(&v, &spec).unwrap().collect();
        let b: Vec<Candidate> = enumerate_models(&v, &spec).unwrap().collect();
        assert!(!a.is_empty());
        assert_eq!(a, b);
    }
}

#[test]
fn nonstandard_models_are_lawful() {
    let v = vars(&["p"]);
    for product_closed in [true, false] {
        let class = ModelClass::NonStandard {
            product_closed,
            family_cap: 64,
        };
        for spec in [
            SearchSpec::exhaustive(2, class),
            SearchSpec::random(3, 30, 5, class),
        ] {
            for m in enumerate_models(&v, &spec).unwrap() {
                let Candidate::NonStandard(m) = m else {
                    panic!()
                };
                assert!(check_model(&m).is_empty());
                assert!(m.contains(&m.valuation["p"]));
            }
        }
    }
}

#[test]
fn unit_membership_in_exhaustive_families() {
    // `=> p` gives δ ⊆ p, hence unit ⊆ p in every lawful family.
    let spec = SearchSpec::exhaustive(
        2,
        ModelClass::NonStandard {
            product_closed: true,
            family_cap: 64,
        },
    );
    let c = find_countermodel(&[seq("=> p")], &seq("1 => p"), &spec).unwrap();
    assert!(c.countermodel().is_none());
}

#[test]
fn hypotheses_filter_models() {
    let spec = SearchSpec::exhaustive(2, ModelClass::StandardSquare);
    let out = find_countermodel(&[seq("p => q")], &seq("p => q"), &spec).unwrap();
    assert_eq!(out.countermodel(), None);
    let out = find_countermodel(&[seq("p => q")], &seq("q => p"), &spec).unwrap();
    let c = out.countermodel().unwrap();
    assert!(c.certificate.hypotheses[0].holds());
}
