//! Randomized law checks on finite relations and closed families.

use std::collections::BTreeMap;

use lambkit_core::relmodel::{
    close_family, eval, find_unit, find_zero, Closure, ConstantsMode, Ops, RModel, Relation,
};
use lambkit_core::syntax::Formula;
use rand::Rng;
use rand_chacha::ChaCha8Rng;

/// Failures found, out of `cases` checked.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Tally {
    pub cases: usize,
    pub failures: Vec<String>,
}

impl Tally {
    fn record(&mut self, ok: bool, what: impl FnOnce() -> String) {
        self.cases += 1;
        if !ok && self.failures.len() < 5 {
            self.failures.push(what());
        }
    }

    pub fn ok(&self) -> bool {
        self.failures.is_empty()
    }
}

pub fn random_relation(rng: &mut ChaCha8Rng, n: usize) -> Relation {
    let bits = n * n;
    let mask = if bits == 64 {
        u64::MAX
    } else {
        (1u64 << bits) - 1
    };
    Relation::from_code(n, rng.gen::<u64>() & mask)
}

fn random_transitive(rng: &mut ChaCha8Rng, n: usize) -> Relation {
    let r = random_relation(rng, n);
    r.then(&r.star())
}

/// `R∘S ⊆ T  ⟺  S ⊆ R\T  ⟺  R ⊆ T/S`, square and relativised.
pub fn galois(rng: &mut ChaCha8Rng, cases: usize) -> Tally {
    let mut t = Tally::default();
    for i in 0..cases {
        let n = rng.gen_range(1..=5);
        let u = if i % 2 == 0 {
            Relation::full(n)
        } else {
            random_transitive(rng, n)
        };
        let r = random_relation(rng, n).intersection(&u);
        let s = random_relation(rng, n).intersection(&u);
        let c = random_relation(rng, n).intersection(&u);
        let a = r.then(&s).is_subset(&c);
        let b = s.is_subset(&r.under(&c, &u));
        let d = r.is_subset(&c.over(&s, &u));
        t.record(a == b && b == d, || {
            format!("R={} S={} T={} U={}", r, s, c, u)
        });
    }
    t
}

/// `R* = δ ∪ R∘R*`.
pub fn star_fixpoint(rng: &mut ChaCha8Rng, cases: usize) -> Tally {
    let mut t = Tally::default();
    for _ in 0..cases {
        let n = rng.gen_range(1..=5);
        let r = random_relation(rng, n);
        let s = r.star();
        t.record(s == Relation::identity(n).union(&r.then(&s)), || {
            format!("R={}", r)
        });
    }
    t
}

/// Distinct powers `A^0, A^1, ...` until they repeat.
fn powers(a: &Relation) -> Vec<Relation> {
    let mut out = vec![Relation::identity(a.n())];
    loop {
        let next = out.last().unwrap().then(a);
        if out.contains(&next) {
            return out;
        }
        out.push(next);
    }
}

/// `v(B/A*) = ⋂ v(B)/v(A)^n` and `v(A*\B) = ⋂ v(A)^n\v(B)` in square models.
pub fn iterative_division(rng: &mut ChaCha8Rng, cases: usize) -> Tally {
    let mut t = Tally::default();
    let right = Formula::iter_rdiv(Formula::var("b"), Formula::var("a"));
    let left = Formula::iter_ldiv(Formula::var("a"), Formula::var("b"));
    for _ in 0..cases {
        let n = rng.gen_range(1..=5);
        let a = random_relation(rng, n);
        let b = random_relation(rng, n);
        let full = Relation::full(n);
        let m = RModel::square(
            n,
            BTreeMap::from([("a".into(), a), ("b".into(), b)]),
            ConstantsMode::Standard,
        );
        let mut want_r = full;
        let mut want_l = full;
        for p in powers(&a) {
            want_r = want_r.intersection(&b.over(&p, &full));
            want_l = want_l.intersection(&p.under(&b, &full));
        }
        let ok = eval(&right, &m).ok() == Some(want_r) && eval(&left, &m).ok() == Some(want_l);
        t.record(ok, || format!("A={} B={}", a, b));
    }
    t
}

/// A closed family with a unit, from 1-3 random seeds on at most 3 worlds.
pub fn random_family(rng: &mut ChaCha8Rng, ops: Ops) -> Vec<Relation> {
    loop {
        let n = rng.gen_range(1..=3);
        let k = rng.gen_range(1..=3);
        let seed: Vec<Relation> = (0..k).map(|_| random_relation(rng, n)).collect();
        if let Closure::Closed(f) = close_family(&seed, ops, 512) {
            if !ops.compose || find_unit(&f).is_some() {
                return f;
            }
        }
    }
}

/// `unit ⊆ R ⟺ δ ⊆ R` over every member of `families` closed families.
pub fn unit_membership(rng: &mut ChaCha8Rng, families: usize) -> Tally {
    let mut t = Tally::default();
    for _ in 0..families {
        let f = random_family(rng, Ops::ALL);
        let unit = find_unit(&f).unwrap();
        let delta = Relation::identity(unit.n());
        for r in &f {
            t.record(unit.is_subset(r) == delta.is_subset(r), || {
                format!("unit={} R={}", unit, r)
            });
        }
    }
    t
}

/// `0∘R = R∘0 = 0` in product-closed families, `0∘R ⊆ 0 ⊇ R∘0` otherwise.
/// Alternates the two kinds until `cases` members were checked.
pub fn zero_absorption(rng: &mut ChaCha8Rng, cases: usize) -> Tally {
    let mut t = Tally::default();
    let mut product_closed = true;
    while t.cases < cases {
        let f = random_family(rng, Ops::for_product(product_closed));
        let z = find_zero(&f).expect("closed under meet");
        for r in &f {
            let (zr, rz) = (z.then(r), r.then(&z));
            let ok = if product_closed {
                zr == z && rz == z
            } else {
                zr.is_subset(&z) && rz.is_subset(&z)
            };
            t.record(ok, || {
                format!("product_closed={} zero={} R={}", product_closed, z, r)
            });
        }
        product_closed = !product_closed;
    }
    t
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;

    #[test]
    fn small_runs_pass() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        assert!(galois(&mut rng, 200).ok());
        assert!(star_fixpoint(&mut rng, 200).ok());
        assert!(iterative_division(&mut rng, 200).ok());
        assert!(unit_membership(&mut rng, 5).ok());
        let z = zero_absorption(&mut rng, 200);
        assert!(z.ok() && z.cases >= 200);
    }

    #[test]
    fn powers_cycle() {
        let a = Relation::from_pairs(3, &[(0, 1), (1, 2), (2, 0)]).unwrap();
        assert_eq!(powers(&a).len(), 3);
        assert_eq!(powers(&Relation::empty(2)).len(), 2);
    }

    #[test]
    fn a_broken_law_is_caught() {
        let mut t = Tally::default();
        t.record(false, || "x".into());
        assert!(!t.ok() && t.cases == 1);
    }
}
