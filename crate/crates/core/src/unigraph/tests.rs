use super::*;

fn f(s: &str) -> Formula {
    s.parse().unwrap()
}

fn cfg() -> CalculusConfig {
    label_calculus(&[])
}

#[test]
fn initial_graph() {
    let g = build(0, alloc::vec![f("a")], Variant::Full, &[]).unwrap();
    assert_eq!(g.vertices, 1);
    assert_eq!(g.label(0, 0), Some(&Formula::One));
    let mut ch = GraphChecker::new(cfg());
    assert!(ch.check(&g).all_ok());
    assert_eq!(
        ch.derivable(&"1 => 1 . 1".parse().unwrap()),
        Verdict::Derivable
    );
}

#[test]
fn first_stage_adds_a_prefix_vertex() {
    let g = build(1, alloc::vec![f("a")], Variant::Full, &[]).unwrap();
    assert_eq!(g.vertices, 2);
    assert_eq!(g.label(1, 0), Some(&f("a . 1")));
    assert_eq!(g.label(1, 1), Some(&Formula::One));
    let mut ch = GraphChecker::new(cfg());
    assert!(ch.check(&g).structural_ok());
    assert_eq!(
        ch.derivable(&"a . 1 => (a . 1) . 1".parse().unwrap()),
        Verdict::Derivable
    );
    let v = ch.valuation(&g, &f("a")).unwrap();
    assert_eq!(v.relation, Relation::from_pairs(2, &[(1, 0)]).unwrap());
    assert_eq!(
        ch.valuation(&g, &Formula::One).unwrap().relation,
        Relation::from_pairs(2, &[(0, 0), (1, 1)]).unwrap()
    );
    assert!(ch
        .valuation(&g, &Formula::Zero)
        .unwrap()
        .relation
        .is_empty());
}

#[test]
fn midpoint_labels() {
    let mut b = GraphBuilder::new(alloc::vec![f("b . c")], Variant::Full, &[]).unwrap();
    let t = b.after(0, f("b . c"));
    assert_eq!(
        t,
        Transition::After {
            vertex: 1,
            y: 0,
            formula: f("b . c")
        }
    );
    let t = b.between(0, 1, f("b"), f("c")).unwrap();
    assert!(
        matches!(t, Transition::Between { vertex: 2, .. }),
        "{:?}",
        t
    );
    let g = b.graph();
    assert_eq!(g.label(0, 2), Some(&f("1 . b")));
    assert_eq!(g.label(2, 1), Some(&f("c . 1")));
    let log = b.log().to_vec();
    assert!(log.is_empty());
    let report = GraphChecker::new(cfg()).check_with(g, &[t]);
    assert!(report.all_ok(), "{:?}", report);
}

#[test]
fn skips() {
    let mut b = GraphBuilder::new(alloc::vec![f("a")], Variant::Full, &[]).unwrap();
    assert_eq!(
        b.before(3, f("a")),
        Transition::Skipped {
            kind: 0,
            reason: Skip::MissingVertex
        }
    );
    assert_eq!(
        b.between(0, 0, f("a"), f("a")).unwrap(),
        Transition::Skipped {
            kind: 2,
            reason: Skip::SameEnds
        }
    );
    b.after(0, f("a"));
    assert_eq!(
        b.between(0, 1, f("b"), f("a")).unwrap(),
        Transition::Skipped {
            kind: 2,
            reason: Skip::NotDerivable
        }
    );
}

#[test]
fn staged_invariants_hold() {
    let universe = alloc::vec![f("a"), f("b"), f("a\\b")];
    let mut b = GraphBuilder::new(universe, Variant::Full, &[]).unwrap();
    let mut ch = GraphChecker::new(cfg());
    for _ in 0..12 {
        b.step().unwrap();
        let r = ch.check_with(b.graph(), b.log());
        assert!(r.all_ok(), "stage {}: {:?}", r.stage, r);
    }
}

#[test]
fn product_free_variant_never_adds_midpoints() {
    let mut b = GraphBuilder::new(alloc::vec![f("a"), f("b")], Variant::ProductFree, &[]).unwrap();
    b.run(10).unwrap();
    assert!(b.log().iter().all(|t| !matches!(
        t,
        Transition::Between { .. } | Transition::Skipped { kind: 2, .. }
    )));
    assert!(GraphChecker::new(cfg())
        .check_with(b.graph(), b.log())
        .all_ok());
    let bad = GraphBuilder::new(
        alloc::vec![f("a")],
        Variant::ProductFree,
        &["a . b => c".parse().unwrap()],
    );
    assert!(matches!(bad, Err(GraphError::ProductInHypotheses)));
}

#[test]
fn broken_antisymmetry_is_reported() {
    let mut g = build(1, alloc::vec![f("a")], Variant::Full, &[]).unwrap();
    g.edges.insert((0, 1), f("a"));
    let r = check_graph(&g, &cfg());
    assert_eq!(r.antisymmetric, Check::Fail(alloc::vec![0, 1]));
}

#[test]
fn meet_is_intersection_on_edges() {
    let g = build(
        9,
        alloc::vec![f("a"), f("b"), f("a & b")],
        Variant::Full,
        &[],
    )
    .unwrap();
    let mut ch = GraphChecker::new(cfg());
    let va = ch.valuation(&g, &f("a")).unwrap().relation;
    let vb = ch.valuation(&g, &f("b")).unwrap().relation;
    let vab = ch.valuation(&g, &f("a & b")).unwrap().relation;
    assert_eq!(vab, va.intersection(&vb));
}

#[test]
fn empty_universe_is_rejected() {
    assert_eq!(
        build(1, Vec::new(), Variant::Full, &[]),
        Err(GraphError::EmptyUniverse)
    );
}
