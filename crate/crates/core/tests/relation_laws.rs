//! Relation algebra checked against a plain boolean-matrix oracle.

use std::collections::BTreeMap;

use lambkit_core::relmodel::{
    close_family, compose, eval, find_unit, find_zero, residual_left, residual_right, star,
    Closure, ConstantsMode, Ops, RModel, Relation,
};
use lambkit_core::syntax::Formula;
use proptest::prelude::*;

type Matrix = Vec<Vec<bool>>;

fn matrix(r: &Relation) -> Matrix {
    let n = r.n();
    (0..n)
        .map(|i| (0..n).map(|j| r.contains(i, j)).collect())
        .collect()
}

fn from_matrix(m: &Matrix) -> Relation {
    let n = m.len();
    let pairs: Vec<(usize, usize)> = (0..n)
        .flat_map(|i| (0..n).map(move |j| (i, j)))
        .filter(|&(i, j)| m[i][j])
        .collect();
    Relation::from_pairs(n, &pairs).unwrap()
}

fn naive_compose(a: &Matrix, b: &Matrix) -> Matrix {
    let n = a.len();
    (0..n)
        .map(|i| (0..n).map(|k| (0..n).any(|j| a[i][j] && b[j][k])).collect())
        .collect()
}

/// `(y, z) ∈ U` with every `x R y` giving `x S z`.
fn naive_under(r: &Matrix, s: &Matrix, u: &Matrix) -> Matrix {
    let n = r.len();
    (0..n)
        .map(|y| {
            (0..n)
                .map(|z| u[y][z] && (0..n).all(|x| !r[x][y] || s[x][z]))
                .collect()
        })
        .collect()
}

/// `(x, y) ∈ U` with every `y T z` giving `x S z`.
fn naive_over(s: &Matrix, t: &Matrix, u: &Matrix) -> Matrix {
    let n = s.len();
    (0..n)
        .map(|x| {
            (0..n)
                .map(|y| u[x][y] && (0..n).all(|z| !t[y][z] || s[x][z]))
                .collect()
        })
        .collect()
}

fn naive_star(r: &Matrix) -> Matrix {
    let n = r.len();
    let mut c: Matrix = (0..n)
        .map(|i| (0..n).map(|j| i == j || r[i][j]).collect())
        .collect();
    for k in 0..n {
        for i in 0..n {
            for j in 0..n {
                c[i][j] = c[i][j] || (c[i][k] && c[k][j]);
            }
        }
    }
    c
}

fn leq(a: &Matrix, b: &Matrix) -> bool {
    a.iter()
        .zip(b)
        .all(|(x, y)| x.iter().zip(y).all(|(p, q)| !p || *q))
}

fn relation(n: usize) -> impl Strategy<Value = Relation> {
    prop::collection::vec(any::<bool>(), n * n).prop_map(move |bits| {
        let m: Matrix = bits.chunks(n).map(|c| c.to_vec()).collect();
        from_matrix(&m)
    })
}

fn triple(max: usize) -> impl Strategy<Value = (Relation, Relation, Relation)> {
    (1..=max).prop_flat_map(|n| (relation(n), relation(n), relation(n)))
}

fn square(n: usize, vals: &[(&str, Relation)]) -> RModel {
    let valuation: BTreeMap<String, Relation> =
        vals.iter().map(|(k, v)| (k.to_string(), *v)).collect();
    RModel::square(n, valuation, ConstantsMode::Standard)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(10_000))]

    #[test]
    fn operations_match_the_oracle((r, s, t) in triple(5)) {
        let u = naive_star(&naive_compose(&matrix(&t), &matrix(&t)));
        let ur = from_matrix(&u);
        prop_assert_eq!(matrix(&compose(&r, &s).unwrap()), naive_compose(&matrix(&r), &matrix(&s)));
        prop_assert_eq!(matrix(&residual_left(&r, &s, &ur).unwrap()), naive_under(&matrix(&r), &matrix(&s), &u));
        prop_assert_eq!(matrix(&residual_right(&s, &r, &ur).unwrap()), naive_over(&matrix(&s), &matrix(&r), &u));
        prop_assert_eq!(matrix(&star(&r)), naive_star(&matrix(&r)));
    }

    #[test]
    fn square_residuation((r, s, t) in triple(5)) {
        let full = Relation::full(r.n());
        let rt = r.then(&t);
        prop_assert_eq!(t.is_subset(&r.under(&s, &full)), rt.is_subset(&s));
        prop_assert_eq!(r.is_subset(&s.over(&t, &full)), rt.is_subset(&s));
    }

    #[test]
    fn relativised_results_stay_inside_the_universe((r, s, t) in triple(5)) {
        let u = star(&t).then(&t);
        prop_assert!(u.is_transitive());
        let (r, s) = (r.intersection(&u), s.intersection(&u));
        prop_assert!(r.then(&s).is_subset(&u));
        prop_assert!(residual_left(&r, &s, &u).unwrap().is_subset(&u));
        prop_assert!(residual_right(&s, &r, &u).unwrap().is_subset(&u));
    }

    #[test]
    fn star_is_the_least_fixpoint((r, s, _) in triple(5)) {
        let n = r.n();
        let st = star(&r);
        prop_assert_eq!(st, Relation::identity(n).union(&r.then(&st)));
        // Any other solution of X ⊇ δ ∪ R∘X contains R*.
        let x = star(&r.union(&s));
        prop_assert!(st.is_subset(&x));
    }

    #[test]
    fn iterative_division_is_an_intersection((a, b, _) in triple(5)) {
        let n = a.n();
        let m = square(n, &[("a", a), ("b", b)]);
        let full = Relation::full(n);
        let (ma, mb) = (matrix(&a), matrix(&b));
        let fm = matrix(&full);
        let mut acc = mb.clone();
        let mut power = mb.clone();
        for _ in 0..=n * n {
            power = naive_over(&power, &ma, &fm);
            acc = acc.iter().zip(&power).map(|(x, y)| x.iter().zip(y).map(|(p, q)| *p && *q).collect()).collect();
        }
        let f: Formula = "b/a*".parse().unwrap();
        prop_assert_eq!(matrix(&eval(&f, &m).unwrap()), acc.clone());
        let g: Formula = "a*\\b".parse().unwrap();
        let mut acc = mb.clone();
        let mut power = mb;
        for _ in 0..=n * n {
            power = naive_under(&ma, &power, &fm);
            acc = acc.iter().zip(&power).map(|(x, y)| x.iter().zip(y).map(|(p, q)| *p && *q).collect()).collect();
        }
        prop_assert_eq!(matrix(&eval(&g, &m).unwrap()), acc);
    }
}

#[test]
fn double_zero_division_is_empty_or_full() {
    let f: Formula = "0/(0/r)".parse().unwrap();
    for n in 1..=3 {
        for code in 0..1u64 << (n * n) {
            let r = Relation::from_code(n, code);
            let v = eval(&f, &square(n, &[("r", r)])).unwrap();
            assert!(
                v.is_empty() || v == Relation::full(n),
                "n = {}, r = {}",
                n,
                r
            );
        }
    }
}

/// Closed families from random seeds, with unit and zero located by search.
fn families(count: usize, product_closed: bool) -> Vec<(Vec<Relation>, Relation, Relation)> {
    use rand::{Rng, SeedableRng};
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(if product_closed { 7 } else { 8 });
    let mut out = Vec::new();
    while out.len() < count {
        let n = rng.gen_range(1..=3);
        let seed: Vec<Relation> = (0..rng.gen_range(1..=3))
            .map(|_| Relation::from_code(n, rng.gen_range(0..1u64 << (n * n))))
            .collect();
        let Closure::Closed(fam) = close_family(&seed, Ops::for_product(product_closed), 512)
        else {
            continue;
        };
        let (Some(unit), Some(zero)) = (find_unit(&fam), find_zero(&fam)) else {
            continue;
        };
        out.push((fam, unit, zero));
    }
    out
}

#[test]
fn family_units_contain_exactly_the_diagonal_members() {
    for (fam, unit, _) in families(50, true) {
        let delta = Relation::identity(unit.n());
        assert!(delta.is_subset(&unit));
        for r in &fam {
            let m = matrix(r);
            // Neutrality checked directly on the oracle.
            assert_eq!(naive_compose(&matrix(&unit), &m), m);
            assert_eq!(naive_compose(&m, &matrix(&unit)), m);
            assert_eq!(unit.is_subset(r), delta.is_subset(r));
        }
    }
}

#[test]
fn zero_absorbs() {
    for (fam, _, zero) in families(50, true) {
        for r in &fam {
            assert!(zero.is_subset(r));
            assert_eq!(zero.then(r), zero);
            assert_eq!(r.then(&zero), zero);
        }
    }
    for (fam, _, zero) in families(50, false) {
        let z = matrix(&zero);
        for r in &fam {
            assert!(leq(&naive_compose(&z, &matrix(r)), &z));
            assert!(leq(&naive_compose(&matrix(r), &z), &z));
        }
    }
}
