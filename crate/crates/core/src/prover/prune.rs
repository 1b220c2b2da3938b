//! Refutation by small square models.
//!
//! A goal that is false in a square model satisfying every hypothesis (and
//! `δ ⊆ b∘c` when `bc` is on) has no derivation. `!A` is read as `δ` when
//! `δ ⊆ v(A)` and as `∅` otherwise, which validates all exponential rules.
//! Models have at most `omega_bound + 1` worlds, so the truncated ω-rules are
//! sound in them as well.
//!
//! Relations on at most four worlds are packed into a `u16`, row `i` in bits
//! `4i..4i+4`.

use alloc::collections::BTreeSet;
use alloc::string::String;
use alloc::vec::Vec;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::arena::{Arena, Fid, Node};
use super::search::{Goal, HypForm};
use crate::syntax::Formula;

const SEED: u64 = 0x1a3b_5c7d;
const MAX_WORLDS: usize = 3;
const PER_SIZE: usize = 24;
/// Valuation counts up to which a size is enumerated completely.
const EXHAUSTIVE: u64 = 4096;
const ATTEMPTS: usize = 1500;
/// Random valuations tried per goal when learning.
const LEARN_ATTEMPTS: usize = 20_000;
const LEARN_GOALS: usize = 8;

type Tiny = u16;

fn row(r: Tiny, i: usize) -> Tiny {
    (r >> (4 * i)) & 0xf
}

fn identity(n: usize) -> Tiny {
    (0..n).fold(0, |acc, i| acc | 1 << (5 * i))
}

fn full(n: usize) -> Tiny {
    let m = (1 << n) - 1;
    (0..n).fold(0, |acc, i| acc | m << (4 * i))
}

fn then(a: Tiny, b: Tiny, n: usize) -> Tiny {
    let mut out = 0;
    for i in 0..n {
        let mut r = row(a, i);
        let mut acc = 0;
        while r != 0 {
            acc |= row(b, r.trailing_zeros() as usize);
            r &= r - 1;
        }
        out |= acc << (4 * i);
    }
    out
}

/// `a\s` on the full square.
fn under(a: Tiny, s: Tiny, n: usize) -> Tiny {
    let mut out = full(n);
    for x in 0..n {
        let mut ys = row(a, x);
        while ys != 0 {
            let y = ys.trailing_zeros() as usize;
            out &= !((!row(s, x) & 0xf) << (4 * y));
            ys &= ys - 1;
        }
    }
    out
}

/// `b/a` on the full square.
fn over(b: Tiny, a: Tiny, n: usize) -> Tiny {
    let mut out = 0;
    for x in 0..n {
        for y in 0..n {
            if row(a, y) & !row(b, x) & 0xf == 0 {
                out |= 1 << (4 * x + y);
            }
        }
    }
    out
}

fn star(a: Tiny, n: usize) -> Tiny {
    let mut r = a | identity(n);
    for k in 0..n {
        for i in 0..n {
            if row(r, i) >> k & 1 == 1 {
                r |= row(r, k) << (4 * i);
            }
        }
    }
    r
}

fn subset(a: Tiny, b: Tiny) -> bool {
    a & !b == 0
}

struct Small {
    n: usize,
    vars: Vec<(String, Tiny)>,
    values: Vec<Option<Tiny>>,
}

impl Small {
    fn new(n: usize, names: &[String], vals: &[Tiny]) -> Small {
        let vars = names.iter().cloned().zip(vals.iter().copied()).collect();
        Small {
            n,
            vars,
            values: Vec::new(),
        }
    }

    fn value(&mut self, arena: &Arena, f: Fid) -> Option<Tiny> {
        if let Some(Some(r)) = self.values.get(f as usize) {
            return Some(*r);
        }
        let n = self.n;
        let r = match arena.node(f) {
            Node::Var => match arena.formula(f) {
                Formula::Var(v) => self.vars.iter().find(|(k, _)| k == v)?.1,
                _ => return None,
            },
            Node::Zero => 0,
            Node::One => identity(n),
            Node::Mul(a, b) => then(self.value(arena, a)?, self.value(arena, b)?, n),
            Node::Meet(a, b) => self.value(arena, a)? & self.value(arena, b)?,
            Node::LDiv(a, b) => under(self.value(arena, a)?, self.value(arena, b)?, n),
            Node::RDiv(b, a) => over(self.value(arena, b)?, self.value(arena, a)?, n),
            Node::IterLDiv(a, b) => under(star(self.value(arena, a)?, n), self.value(arena, b)?, n),
            Node::IterRDiv(b, a) => over(self.value(arena, b)?, star(self.value(arena, a)?, n), n),
            Node::Bang(a) => {
                if subset(identity(n), self.value(arena, a)?) {
                    identity(n)
                } else {
                    0
                }
            }
        };
        if self.values.len() <= f as usize {
            self.values.resize(f as usize + 1, None);
        }
        self.values[f as usize] = Some(r);
        Some(r)
    }

    /// `Some(false)` when the model falsifies `ctx, ant => succ`.
    fn holds(&mut self, arena: &Arena, ctx: &[Fid], ant: &[Fid], succ: Fid) -> Option<bool> {
        for &c in ctx {
            if self.value(arena, c)? == 0 {
                return Some(true);
            }
        }
        let mut lhs = identity(self.n);
        for &a in ant {
            lhs = then(lhs, self.value(arena, a)?, self.n);
        }
        Some(subset(lhs, self.value(arena, succ)?))
    }
}

/// What every pruning model must satisfy.
#[derive(Default)]
struct Theory {
    hyps: Vec<(Vec<Fid>, Fid)>,
    units: Vec<Fid>,
    bc: Option<(Fid, Fid)>,
}

impl Theory {
    fn admits(&self, m: &mut Small, arena: &Arena) -> bool {
        let delta = identity(m.n);
        if !self
            .units
            .iter()
            .all(|&u| matches!(m.value(arena, u), Some(v) if subset(delta, v)))
        {
            return false;
        }
        if !self
            .hyps
            .iter()
            .all(|(ant, succ)| m.holds(arena, &[], ant, *succ) == Some(true))
        {
            return false;
        }
        match self.bc {
            Some((b, c)) => match (m.value(arena, b), m.value(arena, c)) {
                (Some(vb), Some(vc)) => subset(delta, then(vb, vc, m.n)),
                _ => false,
            },
            None => true,
        }
    }
}

#[derive(Default)]
pub(crate) struct Pruner {
    models: Vec<Small>,
    theory: Theory,
    names: Vec<String>,
    max_worlds: usize,
    rng: Option<ChaCha8Rng>,
}

impl Pruner {
    /// Sample models over `vars` that satisfy the hypotheses, contain `δ` in
    /// every `units` formula, and satisfy the bc axiom. Small sizes are
    /// enumerated and reservoir-sampled, larger ones drawn at random.
    pub fn build(
        arena: &Arena,
        vars: &BTreeSet<String>,
        hyps: &[HypForm],
        units: &[Fid],
        bc: Option<(Fid, Fid)>,
        max_worlds: usize,
    ) -> Pruner {
        let mut rng = ChaCha8Rng::seed_from_u64(SEED);
        let theory = Theory {
            hyps: hyps.iter().map(|h| (h.ant.clone(), h.succ)).collect(),
            units: units.to_vec(),
            bc,
        };
        let max_worlds = max_worlds.min(MAX_WORLDS);
        let names: Vec<String> = vars.iter().cloned().collect();
        let mut models = Vec::new();
        for n in 1..=max_worlds {
            let bits = (n * n) as u32;
            let total = (bits as usize)
                .checked_mul(names.len())
                .filter(|&b| b < 64)
                .map(|b| 1u64 << b);
            let mut kept: Vec<Small> = Vec::new();
            let mut admitted = 0usize;
            let mut consider = |vals: &[Tiny], rng: &mut ChaCha8Rng| {
                let mut m = Small::new(n, &names, vals);
                if !theory.admits(&mut m, arena) {
                    return;
                }
                admitted += 1;
                if kept.len() < PER_SIZE {
                    kept.push(m);
                } else {
                    let j = rng.gen_range(0..admitted);
                    if j < PER_SIZE {
                        kept[j] = m;
                    }
                }
            };
            let mut vals: Vec<Tiny> = alloc::vec![0; names.len()];
            match total {
                Some(total) if total <= EXHAUSTIVE => {
                    let mask = (1u64 << bits) - 1;
                    for code in 0..total {
                        for (i, v) in vals.iter_mut().enumerate() {
                            *v = spread((code >> (i as u32 * bits)) & mask, n);
                        }
                        consider(&vals, &mut rng);
                    }
                }
                _ => {
                    for _ in 0..ATTEMPTS {
                        for v in vals.iter_mut() {
                            *v = random_relation(n, &mut rng);
                        }
                        consider(&vals, &mut rng);
                    }
                }
            }
            models.extend(kept);
        }
        Pruner {
            models,
            theory,
            names,
            max_worlds,
            rng: Some(rng),
        }
    }

    /// Whether some model falsifies the goal.
    pub fn refutes(&mut self, arena: &Arena, g: &Goal) -> bool {
        for i in 0..self.models.len() {
            if self.models[i].holds(arena, &g.ctx, &g.ant, g.succ) == Some(false) {
                if i > 0 {
                    self.models.swap(0, i);
                }
                return true;
            }
        }
        false
    }

    /// Search for models refuting the smallest of `goals` that no pooled
    /// model refutes, and add them to the pool. Returns how many were found.
    pub fn learn<'a>(&mut self, arena: &Arena, goals: impl Iterator<Item = &'a Goal>) -> usize {
        let Some(mut rng) = self.rng.take() else {
            return 0;
        };
        let mut pending: Vec<&Goal> = goals.collect();
        pending.sort_by_key(|g| goal_size(arena, g));
        let sizes: Vec<usize> = (2.min(self.max_worlds)..=self.max_worlds).collect();
        let mut vals: Vec<Tiny> = alloc::vec![0; self.names.len()];
        let (mut found, mut tried) = (0, 0);
        for g in pending {
            if tried == LEARN_GOALS || sizes.is_empty() {
                break;
            }
            if self.refutes(arena, g) {
                continue;
            }
            tried += 1;
            for k in 0..LEARN_ATTEMPTS {
                let n = sizes[k % sizes.len()];
                for v in vals.iter_mut() {
                    *v = random_relation(n, &mut rng);
                }
                let mut m = Small::new(n, &self.names, &vals);
                if m.holds(arena, &g.ctx, &g.ant, g.succ) == Some(false)
                    && self.theory.admits(&mut m, arena)
                {
                    self.models.insert(0, m);
                    found += 1;
                    break;
                }
            }
        }
        self.rng = Some(rng);
        found
    }
}

fn goal_size(arena: &Arena, g: &Goal) -> usize {
    g.ctx
        .iter()
        .chain(&g.ant)
        .chain(core::iter::once(&g.succ))
        .map(|&f| arena.formula(f).size())
        .sum()
}

/// Re-pack an `n*n`-bit row-major code with stride 4.
fn spread(code: u64, n: usize) -> Tiny {
    let mask = (1 << n) - 1;
    (0..n).fold(0, |acc, i| {
        acc | (((code >> (i * n)) as Tiny) & mask) << (4 * i)
    })
}

fn random_relation(n: usize, rng: &mut ChaCha8Rng) -> Tiny {
    if rng.gen_bool(0.3) {
        return [0, identity(n), full(n)][rng.gen_range(0..3)];
    }
    let density = [0.25, 0.5, 0.75][rng.gen_range(0..3)];
    let mut r = 0;
    for i in 0..n {
        for j in 0..n {
            if rng.gen_bool(density) {
                r |= 1 << (4 * i + j);
            }
        }
    }
    r
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::relmodel::Relation;

    fn unpack(r: Tiny, n: usize) -> Relation {
        let mut out = Relation::empty(n);
        for i in 0..n {
            for j in 0..n {
                if r >> (4 * i + j) & 1 == 1 {
                    out.insert(i, j);
                }
            }
        }
        out
    }

    #[test]
    fn packed_operations_agree_with_relations() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        for _ in 0..2000 {
            let n = rng.gen_range(1..=4);
            let (a, b) = (random_relation(n, &mut rng), random_relation(n, &mut rng));
            let (ra, rb) = (unpack(a, n), unpack(b, n));
            let f = Relation::full(n);
            assert_eq!(unpack(then(a, b, n), n), ra.then(&rb));
            assert_eq!(unpack(under(a, b, n), n), ra.under(&rb, &f));
            assert_eq!(unpack(over(a, b, n), n), ra.over(&rb, &f));
            assert_eq!(unpack(star(a, n), n), ra.star());
            assert_eq!(unpack(identity(n), n), Relation::identity(n));
            assert_eq!(unpack(full(n), n), f);
            assert_eq!(unpack(spread(ra.code(), n), n), ra);
            assert_eq!(subset(a, b), ra.is_subset(&rb));
        }
    }
}
