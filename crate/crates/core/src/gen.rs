//! Random formulas and sequents, and derivable sequents built forward from
//! axioms by the rules of a calculus.

use alloc::string::String;
use alloc::vec::Vec;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::calculus::CalculusConfig;
use crate::prover::{Prover, Verdict};
use crate::syntax::{Formula, Sequent};

pub fn default_vars() -> Vec<String> {
    ["p", "q", "r"].iter().map(|s| String::from(*s)).collect()
}

/// A formula of depth at most `depth` over `vars`, using only what `cfg` allows.
pub fn random_formula(
    rng: &mut impl Rng,
    cfg: &CalculusConfig,
    vars: &[String],
    depth: usize,
) -> Formula {
    let mut leaves: Vec<Formula> = vars.iter().map(|v| Formula::var(v.clone())).collect();
    if cfg.constants.one && rng.gen_bool(0.15) {
        leaves.push(Formula::One);
    }
    if cfg.constants.zero && rng.gen_bool(0.1) {
        leaves.push(Formula::Zero);
    }
    if depth == 0 || rng.gen_bool(0.35) {
        return leaves.choose(rng).unwrap().clone();
    }
    let c = cfg.connectives;
    let mut ops: Vec<u8> = Vec::new();
    if c.ldiv {
        ops.push(0);
    }
    if c.rdiv {
        ops.push(1);
    }
    if c.mul {
        ops.push(2);
    }
    if c.meet {
        ops.push(3);
    }
    let Some(&op) = ops.choose(rng) else {
        return leaves.choose(rng).unwrap().clone();
    };
    let a = random_formula(rng, cfg, vars, depth - 1);
    let b = random_formula(rng, cfg, vars, depth - 1);
    match op {
        0 => Formula::ldiv(a, b),
        1 => Formula::rdiv(a, b),
        2 => Formula::mul(a, b),
        _ => Formula::meet(a, b),
    }
}

/// A sequent with `1..=max_len` antecedent formulas (`0..` without Lambek's restriction).
pub fn random_sequent(
    rng: &mut impl Rng,
    cfg: &CalculusConfig,
    vars: &[String],
    max_len: usize,
    depth: usize,
) -> Sequent {
    let lo = if cfg.lambek_restriction { 1 } else { 0 };
    let len = rng.gen_range(lo..=max_len.max(lo));
    let ant = (0..len)
        .map(|_| random_formula(rng, cfg, vars, depth))
        .collect();
    Sequent::new(ant, random_formula(rng, cfg, vars, depth))
}

/// Forward derivation: every sequent in the pool is derivable by construction.
pub struct Forward {
    cfg: CalculusConfig,
    vars: Vec<String>,
    rng: ChaCha8Rng,
    pool: Vec<Sequent>,
    /// Upper bound on the total size of generated sequents.
    pub max_size: usize,
}

impl Forward {
    pub fn new(cfg: CalculusConfig, vars: Vec<String>, seed: u64) -> Forward {
        Forward {
            cfg,
            vars,
            rng: ChaCha8Rng::seed_from_u64(seed),
            pool: Vec::new(),
            max_size: 14,
        }
    }

    pub fn pool(&self) -> &[Sequent] {
        &self.pool
    }

    fn pick(&mut self) -> Option<Sequent> {
        self.pool.choose(&mut self.rng).cloned()
    }

    fn axiom(&mut self) -> Sequent {
        let depth = self.rng.gen_range(0..=1);
        let f = random_formula(&mut self.rng, &self.cfg, &self.vars, depth);
        Sequent::new(alloc::vec![f.clone()], f)
    }

    fn restricted(&self, ant: &[Formula]) -> bool {
        self.cfg.lambek_restriction && ant.is_empty()
    }

    /// Apply one random rule, returning the new conclusion.
    pub fn step(&mut self) -> Option<Sequent> {
        if self.pool.len() < 4 || self.rng.gen_bool(0.15) {
            let s = self.axiom();
            self.pool.push(s.clone());
            return Some(s);
        }
        let c = self.cfg.connectives;
        let k = self.cfg.constants;
        let s = self.pick()?;
        let n = s.antecedent.len();
        let out = match self.rng.gen_range(0..11) {
            0 if c.mul => {
                let t = self.pick()?;
                let mut ant = s.antecedent.clone();
                ant.extend(t.antecedent.iter().cloned());
                Sequent::new(ant, Formula::mul(s.succedent.clone(), t.succedent.clone()))
            }
            1 if c.mul && n >= 2 => {
                let i = self.rng.gen_range(0..n - 1);
                let mut ant = s.antecedent.clone();
                let b = ant.remove(i + 1);
                ant[i] = Formula::mul(ant[i].clone(), b);
                Sequent::new(ant, s.succedent.clone())
            }
            2 if c.ldiv && n >= 1 && !self.restricted(&s.antecedent[1..]) => {
                let a = s.antecedent[0].clone();
                Sequent::new(
                    s.antecedent[1..].to_vec(),
                    Formula::ldiv(a, s.succedent.clone()),
                )
            }
            3 if c.rdiv && n >= 1 && !self.restricted(&s.antecedent[..n - 1]) => {
                let a = s.antecedent[n - 1].clone();
                Sequent::new(
                    s.antecedent[..n - 1].to_vec(),
                    Formula::rdiv(s.succedent.clone(), a),
                )
            }
            4 if c.ldiv && n >= 1 => {
                let pi = self.pick()?;
                if self.restricted(&pi.antecedent) {
                    return None;
                }
                let i = self.rng.gen_range(0..n);
                let mut ant = s.antecedent[..i].to_vec();
                ant.extend(pi.antecedent.iter().cloned());
                ant.push(Formula::ldiv(pi.succedent.clone(), s.antecedent[i].clone()));
                ant.extend(s.antecedent[i + 1..].iter().cloned());
                Sequent::new(ant, s.succedent.clone())
            }
            5 if c.rdiv && n >= 1 => {
                let pi = self.pick()?;
                if self.restricted(&pi.antecedent) {
                    return None;
                }
                let i = self.rng.gen_range(0..n);
                let mut ant = s.antecedent[..i].to_vec();
                ant.push(Formula::rdiv(s.antecedent[i].clone(), pi.succedent.clone()));
                ant.extend(pi.antecedent.iter().cloned());
                ant.extend(s.antecedent[i + 1..].iter().cloned());
                Sequent::new(ant, s.succedent.clone())
            }
            6 if c.meet && n >= 1 => {
                let i = self.rng.gen_range(0..n);
                let x = random_formula(&mut self.rng, &self.cfg, &self.vars, 1);
                let mut ant = s.antecedent.clone();
                ant[i] = if self.rng.gen_bool(0.5) {
                    Formula::meet(ant[i].clone(), x)
                } else {
                    Formula::meet(x, ant[i].clone())
                };
                Sequent::new(ant, s.succedent.clone())
            }
            7 if c.meet => {
                let same: Vec<Sequent> = self
                    .pool
                    .iter()
                    .filter(|t| t.antecedent == s.antecedent)
                    .cloned()
                    .collect();
                let t = same.choose(&mut self.rng)?.clone();
                Sequent::new(
                    s.antecedent.clone(),
                    Formula::meet(s.succedent.clone(), t.succedent),
                )
            }
            8 if k.one => {
                let i = self.rng.gen_range(0..=n);
                let mut ant = s.antecedent.clone();
                ant.insert(i, Formula::One);
                Sequent::new(ant, s.succedent.clone())
            }
            9 if k.one && !self.cfg.lambek_restriction => Sequent::new(Vec::new(), Formula::One),
            10 if k.zero => {
                let i = self.rng.gen_range(0..=n);
                let mut ant = s.antecedent.clone();
                ant.insert(i, Formula::Zero);
                let succ = random_formula(&mut self.rng, &self.cfg, &self.vars, 1);
                Sequent::new(ant, succ)
            }
            _ => return None,
        };
        if out.size() > self.max_size {
            return None;
        }
        self.pool.push(out.clone());
        Some(out)
    }

    /// `count` distinct derived sequents that are not axioms, or fewer if
    /// generation stalls.
    pub fn derive(&mut self, count: usize) -> Vec<Sequent> {
        let mut out: Vec<Sequent> = Vec::new();
        let mut tries = count * 200;
        while out.len() < count && tries > 0 {
            tries -= 1;
            if let Some(s) = self.step() {
                let trivial = s.antecedent.len() == 1 && s.antecedent[0] == s.succedent;
                if !trivial && !out.contains(&s) {
                    out.push(s);
                }
            }
        }
        out
    }
}

/// Result of [`harvest`]: sequents the prover proved, and derived sequents it did not.
#[derive(Clone, Debug, Default)]
pub struct Harvest {
    pub proved: Vec<Sequent>,
    pub missed: Vec<Sequent>,
}

/// Forward-derive `count` sequents of `cfg` and decide each of them.
pub fn harvest(cfg: &CalculusConfig, count: usize, seed: u64) -> Harvest {
    let mut fwd = Forward::new(cfg.clone(), default_vars(), seed);
    let mut prover = Prover::new(cfg.clone());
    let mut h = Harvest::default();
    for s in fwd.derive(count) {
        if prover.decide(&s) == Verdict::Derivable {
            h.proved.push(s);
        } else {
            h.missed.push(s);
        }
    }
    h
}

/// `Π => A` and `Γ, A, Δ => C`, both derivable, with `A` at `position`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CutPair {
    pub left: Sequent,
    pub right: Sequent,
    pub position: usize,
}

impl CutPair {
    /// `Γ, Π, Δ => C`.
    pub fn conclusion(&self) -> Sequent {
        let mut ant = self.right.antecedent[..self.position].to_vec();
        ant.extend(self.left.antecedent.iter().cloned());
        ant.extend(self.right.antecedent[self.position + 1..].iter().cloned());
        Sequent::new(ant, self.right.succedent.clone())
    }
}

/// Up to `count` cut pairs drawn from one forward pool.
pub fn cut_pairs(cfg: &CalculusConfig, count: usize, seed: u64) -> Vec<CutPair> {
    let mut fwd = Forward::new(cfg.clone(), default_vars(), seed);
    fwd.derive(count * 6);
    let pool = fwd.pool().to_vec();
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x9e37_79b9);
    let mut out: Vec<CutPair> = Vec::new();
    let mut order: Vec<usize> = (0..pool.len()).collect();
    order.shuffle(&mut rng);
    'left: for &i in &order {
        let left = &pool[i];
        let mut rights: Vec<(usize, usize)> = Vec::new();
        for (j, r) in pool.iter().enumerate() {
            if j == i {
                continue;
            }
            for (p, f) in r.antecedent.iter().enumerate() {
                if *f == left.succedent {
                    rights.push((j, p));
                }
            }
        }
        if let Some(&(j, position)) = rights.choose(&mut rng) {
            let pair = CutPair {
                left: left.clone(),
                right: pool[j].clone(),
                position,
            };
            let trivial = pair.conclusion() == pair.right || pair.conclusion() == *left;
            if !trivial && pair.conclusion().size() <= fwd.max_size + 6 && !out.contains(&pair) {
                out.push(pair);
                if out.len() == count {
                    break 'left;
                }
            }
        }
    }
    out
}
