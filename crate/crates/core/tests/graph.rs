use lambkit_core::calculus::{CalculusConfig, Preset};
use lambkit_core::relmodel::{
    check_model, close_family, find_unit, find_zero, ordered_double, preorders, Closure, NSModel,
    Ops, Relation,
};
use lambkit_core::syntax::Formula;
use lambkit_core::unigraph::{
    graph_valuation, label_calculus, GraphBuilder, GraphChecker, Transition, Variant,
};

fn f(s: &str) -> Formula {
    s.parse().unwrap()
}

#[test]
fn every_stage_keeps_the_structural_properties() {
    let mut b = GraphBuilder::new(vec![f("a"), f("b"), f("a\\b")], Variant::Full, &[]).unwrap();
    let mut checker = GraphChecker::new(label_calculus(&[]));
    for stage in 1..=30 {
        b.step().unwrap();
        let report = checker.check_with(b.graph(), b.log());
        assert!(report.structural_ok(), "stage {}: {:?}", stage, report);
        assert_eq!(report.stage, stage);
    }
    let g = b.graph();
    for (x, y) in g.edges.keys() {
        assert!(x == y || !g.has_edge(*y, *x));
    }
    assert!(b
        .log()
        .iter()
        .any(|t| matches!(t, Transition::Between { .. })));
}

#[test]
fn product_free_stages_skip_midpoints() {
    let mut b = GraphBuilder::new(vec![f("a"), f("a\\b")], Variant::ProductFree, &[]).unwrap();
    b.run(20).unwrap();
    assert!(!b
        .log()
        .iter()
        .any(|t| matches!(t, Transition::Between { .. })));
    let mut checker = GraphChecker::new(label_calculus(&[]));
    assert!(checker.check(b.graph()).structural_ok());
}

#[test]
fn valuation_respects_meet_and_product() {
    let cfg = label_calculus(&[]);
    let mut b = GraphBuilder::new(vec![f("a"), f("b")], Variant::Full, &[]).unwrap();
    b.run(12).unwrap();
    let g = b.graph();
    let va = graph_valuation(g, &f("a"), &cfg).unwrap().relation;
    let vb = graph_valuation(g, &f("b"), &cfg).unwrap().relation;
    assert_eq!(
        graph_valuation(g, &f("a & b"), &cfg).unwrap().relation,
        va.intersection(&vb)
    );
    assert!(va
        .then(&vb)
        .is_subset(&graph_valuation(g, &f("a . b"), &cfg).unwrap().relation));
    let one = graph_valuation(g, &Formula::One, &cfg).unwrap().relation;
    assert!(Relation::identity(g.vertices).is_subset(&one));
}

#[test]
fn doubled_preorder_family_has_a_nondiagonal_unit() {
    let seed: Vec<Relation> = lambkit_core::relmodel::all_relations(2)
        .map(|r| ordered_double(&r))
        .collect();
    let Closure::Closed(fam) = close_family(&seed, Ops::ALL, 4096) else {
        panic!("overflow")
    };
    let unit = find_unit(&fam).unwrap();
    let delta = Relation::identity(4);
    assert_eq!(unit, ordered_double(&Relation::identity(2)));
    assert_ne!(unit, delta);
    assert!(delta.is_subset(&unit));
    assert_eq!(find_zero(&fam), Some(Relation::empty(4)));
    let m = NSModel::new(fam, Default::default(), true).unwrap();
    assert!(check_model(&m).is_empty());
}

#[test]
fn dropping_a_member_breaks_closure() {
    let e = preorders(2)
        .into_iter()
        .find(|e| *e != Relation::identity(2))
        .unwrap();
    let fam = lambkit_core::relmodel::invariant_family(&e);
    let m = NSModel::new(fam.clone(), Default::default(), true).unwrap();
    assert!(check_model(&m).is_empty());
    let unit = m.unit;
    let broken: Vec<Relation> = fam
        .into_iter()
        .filter(|r| *r != unit.under(&unit, &Relation::full(2)))
        .collect();
    let fewer = NSModel {
        family: broken,
        ..m
    };
    assert!(!check_model(&fewer).is_empty());
}

#[test]
fn label_calculus_is_the_constant_fragment() {
    assert_eq!(label_calculus(&[]), CalculusConfig::preset(Preset::L01));
}
