//! Turning normalized search steps into explicit proof trees.
//!
//! A goal `(ctx, ant, succ)` stands for the sequent `ctx..., ant... => succ`.
//! Each step is replayed as one explicit rule instance whose conclusion may
//! carry extra copies of the context; chains of `!C`, `!W`, `!P1` and `!P2`
//! connect those instances to the canonical sequents.

use alloc::vec::Vec;

use super::arena::{Fid, Node};
use super::search::{Goal, Search, Step};
use crate::calculus::{Proof, Rule, RuleData};
use crate::syntax::{Formula, Sequent};

impl Search {
    fn fs(&self, ids: &[Fid]) -> Vec<Formula> {
        ids.iter().map(|&i| self.arena.formula(i).clone()).collect()
    }

    fn f(&self, id: Fid) -> Formula {
        self.arena.formula(id).clone()
    }

    pub fn canonical(&self, g: &Goal) -> Sequent {
        let mut ant = self.fs(&g.ctx);
        ant.extend(self.fs(&g.ant));
        Sequent::new(ant, self.f(g.succ))
    }

    /// Explicit proof of `canonical(g)`; `g` must be proved.
    pub fn explicit(&self, g: &Goal) -> Proof {
        let (step, prem_goals) = self.proved.get(g).expect("goal is proved");
        let theta = self.fs(&g.ctx);
        let succ = self.f(g.succ);
        let ant = &g.ant;
        let cat = |parts: &[&[Formula]]| -> Vec<Formula> {
            parts.iter().flat_map(|p| p.iter().cloned()).collect()
        };
        let lin = |r: core::ops::Range<usize>| self.fs(&ant[r]);
        let all = self.fs(ant);
        let with_theta = |xs: Vec<Formula>| -> Vec<Formula> { cat(&[&theta, &xs]) };

        // (conclusion antecedent, rule, explicit premises, data)
        let mut data = RuleData::default();
        let (conc, rule, prems): (Vec<Formula>, Rule, Vec<Sequent>) = match step {
            Step::Id | Step::IdCtx => (alloc::vec![succ.clone()], Rule::Id, Vec::new()),
            Step::ZeroL => (with_theta(all.clone()), Rule::ZeroL, Vec::new()),
            Step::OneR => (Vec::new(), Rule::OneR, Vec::new()),
            Step::Hyp { index, curried } => {
                data.hypothesis = Some(*index);
                let h = &self.cfg.hypotheses[*index];
                let form = if *curried { h.curry() } else { h.clone() };
                (form.antecedent, Rule::Hyp, Vec::new())
            }
            Step::OneL { pos } => {
                let p = with_theta(cat(&[&lin(0..*pos), &lin(pos + 1..ant.len())]));
                (
                    with_theta(all.clone()),
                    Rule::OneL,
                    alloc::vec![Sequent::new(p, succ.clone())],
                )
            }
            Step::MulL { pos } => {
                let (a, b) = match self.arena.node(ant[*pos]) {
                    Node::Mul(a, b) => (self.f(a), self.f(b)),
                    _ => unreachable!(),
                };
                let p = with_theta(cat(&[&lin(0..*pos), &[a, b], &lin(pos + 1..ant.len())]));
                (
                    with_theta(all.clone()),
                    Rule::MulL,
                    alloc::vec![Sequent::new(p, succ.clone())],
                )
            }
            Step::MeetL { pos, second } => {
                let pick = match self.arena.node(ant[*pos]) {
                    Node::Meet(a, b) => self.f(if *second { b } else { a }),
                    _ => unreachable!(),
                };
                let p = with_theta(cat(&[&lin(0..*pos), &[pick], &lin(pos + 1..ant.len())]));
                let rule = if *second { Rule::MeetL2 } else { Rule::MeetL1 };
                (
                    with_theta(all.clone()),
                    rule,
                    alloc::vec![Sequent::new(p, succ.clone())],
                )
            }
            Step::LDivL { start, pos } => {
                let (a, b) = match self.arena.node(ant[*pos]) {
                    Node::LDiv(a, b) => (self.f(a), self.f(b)),
                    _ => unreachable!(),
                };
                let pi = with_theta(lin(*start..*pos));
                let conc = cat(&[
                    &theta,
                    &lin(0..*start),
                    &pi,
                    &[self.f(ant[*pos])],
                    &lin(pos + 1..ant.len()),
                ]);
                let right = cat(&[&theta, &lin(0..*start), &[b], &lin(pos + 1..ant.len())]);
                (
                    conc,
                    Rule::LDivL,
                    alloc::vec![Sequent::new(pi, a), Sequent::new(right, succ.clone())],
                )
            }
            Step::RDivL { pos, end } => {
                let (b, a) = match self.arena.node(ant[*pos]) {
                    Node::RDiv(b, a) => (self.f(b), self.f(a)),
                    _ => unreachable!(),
                };
                let pi = with_theta(lin(pos + 1..*end));
                let conc = cat(&[
                    &theta,
                    &lin(0..*pos),
                    &[self.f(ant[*pos])],
                    &pi,
                    &lin(*end..ant.len()),
                ]);
                let right = cat(&[&theta, &lin(0..*pos), &[b], &lin(*end..ant.len())]);
                (
                    conc,
                    Rule::RDivL,
                    alloc::vec![Sequent::new(pi, a), Sequent::new(right, succ.clone())],
                )
            }
            Step::IterLDivL { start, pos, cuts } => {
                let (a, b) = match self.arena.node(ant[*pos]) {
                    Node::IterLDiv(a, b) => (self.f(a), self.f(b)),
                    _ => unreachable!(),
                };
                let blocks = blocks(*start, *pos, cuts);
                data.n = Some(blocks.len());
                let mut conc = cat(&[&theta, &lin(0..*start)]);
                let mut prems = Vec::new();
                for r in blocks {
                    let pi = with_theta(lin(r));
                    conc.extend(pi.iter().cloned());
                    prems.push(Sequent::new(pi, a.clone()));
                }
                conc.push(self.f(ant[*pos]));
                conc.extend(lin(pos + 1..ant.len()));
                let right = cat(&[&theta, &lin(0..*start), &[b], &lin(pos + 1..ant.len())]);
                prems.push(Sequent::new(right, succ.clone()));
                (conc, Rule::IterLDivL, prems)
            }
            Step::IterRDivL { pos, end, cuts } => {
                let (b, a) = match self.arena.node(ant[*pos]) {
                    Node::IterRDiv(b, a) => (self.f(b), self.f(a)),
                    _ => unreachable!(),
                };
                let blocks = blocks(pos + 1, *end, cuts);
                data.n = Some(blocks.len());
                let mut conc = cat(&[&theta, &lin(0..*pos), &[self.f(ant[*pos])]]);
                let mut prems = Vec::new();
                for r in blocks {
                    let pi = with_theta(lin(r));
                    conc.extend(pi.iter().cloned());
                    prems.push(Sequent::new(pi, a.clone()));
                }
                conc.extend(lin(*end..ant.len()));
                let right = cat(&[&theta, &lin(0..*pos), &[b], &lin(*end..ant.len())]);
                prems.push(Sequent::new(right, succ.clone()));
                (conc, Rule::IterRDivL, prems)
            }
            Step::LDivR => {
                let (a, b) = match self.arena.node(g.succ) {
                    Node::LDiv(a, b) => (self.f(a), self.f(b)),
                    _ => unreachable!(),
                };
                let p = cat(&[&[a], &theta, &all]);
                (
                    with_theta(all.clone()),
                    Rule::LDivR,
                    alloc::vec![Sequent::new(p, b)],
                )
            }
            Step::RDivR => {
                let (b, a) = match self.arena.node(g.succ) {
                    Node::RDiv(b, a) => (self.f(b), self.f(a)),
                    _ => unreachable!(),
                };
                let p = cat(&[&theta, &all, &[a]]);
                (
                    with_theta(all.clone()),
                    Rule::RDivR,
                    alloc::vec![Sequent::new(p, b)],
                )
            }
            Step::MeetR => {
                let (a, b) = match self.arena.node(g.succ) {
                    Node::Meet(a, b) => (self.f(a), self.f(b)),
                    _ => unreachable!(),
                };
                let c = with_theta(all.clone());
                (
                    c.clone(),
                    Rule::MeetR,
                    alloc::vec![Sequent::new(c.clone(), a), Sequent::new(c, b)],
                )
            }
            Step::MulR { split } => {
                let (a, b) = match self.arena.node(g.succ) {
                    Node::Mul(a, b) => (self.f(a), self.f(b)),
                    _ => unreachable!(),
                };
                let l = with_theta(lin(0..*split));
                let r = with_theta(lin(*split..ant.len()));
                (
                    cat(&[&l, &r]),
                    Rule::MulR,
                    alloc::vec![Sequent::new(l, a), Sequent::new(r, b)],
                )
            }
            Step::IterLDivR | Step::IterRDivR => {
                let (num, den, left) = match self.arena.node(g.succ) {
                    Node::IterLDiv(a, b) => (self.f(b), self.f(a), true),
                    Node::IterRDiv(b, a) => (self.f(b), self.f(a), false),
                    _ => unreachable!(),
                };
                let base = with_theta(all.clone());
                let prems = (0..=self.cfg.omega_bound)
                    .map(|n| {
                        let pow: Vec<Formula> = core::iter::repeat_n(den.clone(), n).collect();
                        let p = if left {
                            cat(&[&pow, &base])
                        } else {
                            cat(&[&base, &pow])
                        };
                        Sequent::new(p, num.clone())
                    })
                    .collect();
                data.n = Some(self.cfg.omega_bound);
                data.approximate = true;
                (
                    base,
                    if left {
                        Rule::IterLDivR
                    } else {
                        Rule::IterRDivR
                    },
                    prems,
                )
            }
            Step::BangR => {
                let a = match self.arena.node(g.succ) {
                    Node::Bang(a) => self.f(a),
                    _ => unreachable!(),
                };
                (
                    theta.clone(),
                    Rule::BangR,
                    alloc::vec![Sequent::new(theta.clone(), a)],
                )
            }
            Step::Derelict { bang, pos } => {
                let inner = match self.arena.node(*bang) {
                    Node::Bang(a) => self.f(a),
                    _ => unreachable!(),
                };
                let conc = cat(&[
                    &theta,
                    &lin(0..*pos),
                    &[self.f(*bang)],
                    &lin(*pos..ant.len()),
                ]);
                let p = cat(&[&theta, &lin(0..*pos), &[inner], &lin(*pos..ant.len())]);
                (
                    conc,
                    Rule::BangL,
                    alloc::vec![Sequent::new(p, succ.clone())],
                )
            }
            Step::Bc { pos } => {
                let bc = [Formula::var("b"), Formula::var("c")];
                let p = cat(&[&theta, &lin(0..*pos), &bc, &lin(*pos..ant.len())]);
                (
                    with_theta(all.clone()),
                    Rule::Bc,
                    alloc::vec![Sequent::new(p, succ.clone())],
                )
            }
            Step::HypCut { index, start, len } => {
                let h = self
                    .hyps
                    .iter()
                    .find(|h| h.index == *index)
                    .expect("hypothesis");
                let hsucc = h.explicit.succedent.clone();
                let right = cat(&[
                    &theta,
                    &lin(0..*start),
                    core::slice::from_ref(&hsucc),
                    &lin(start + len..ant.len()),
                ]);
                let conc = with_theta(all.clone());
                let left_leaf = Proof::leaf(Rule::Hyp, h.explicit.clone()).with_data(RuleData {
                    hypothesis: Some(*index),
                    ..RuleData::default()
                });
                let right_goal = &prem_goals[0];
                let right_proof = chain(
                    &right,
                    &self.canonical(right_goal).antecedent,
                    &succ,
                    self.explicit(right_goal),
                );
                let cut = Proof::node(
                    Rule::Cut,
                    Sequent::new(conc.clone(), succ.clone()),
                    alloc::vec![left_leaf, right_proof],
                )
                .with_data(RuleData {
                    cut_formula: Some(hsucc),
                    ..RuleData::default()
                });
                return chain(&self.canonical(g).antecedent, &conc, &succ, cut);
            }
        };
        let premises = prems
            .into_iter()
            .zip(prem_goals)
            .map(|(p, pg)| {
                let top = self.explicit(pg);
                chain(
                    &p.antecedent,
                    &self.canonical(pg).antecedent,
                    &p.succedent,
                    top,
                )
            })
            .collect();
        let node =
            Proof::node(rule, Sequent::new(conc.clone(), succ.clone()), premises).with_data(data);
        chain(&self.canonical(g).antecedent, &conc, &succ, node)
    }
}

fn blocks(lo: usize, hi: usize, cuts: &[usize]) -> Vec<core::ops::Range<usize>> {
    let mut out = Vec::new();
    let mut start = lo;
    for &c in cuts.iter().chain(core::iter::once(&hi)) {
        if start < c {
            out.push(start..c);
        }
        start = c;
    }
    out
}

/// Derive the sequent `from => succ` from `top`, whose conclusion is
/// `to => succ`, using only exponential structural rules. The two antecedents
/// must agree on their non-`!` formulas, and every `!`-formula of `to` must
/// occur in `from`.
pub(crate) fn chain(from: &[Formula], to: &[Formula], succ: &Formula, top: Proof) -> Proof {
    let steps = rearrange(from, to);
    let mut proof = top;
    for (rule, conc) in steps.into_iter().rev() {
        proof = Proof::node(rule, Sequent::new(conc, succ.clone()), alloc::vec![proof]);
    }
    proof
}

/// Structural steps `(rule, conclusion)` leading upward from `from` to `to`.
pub(crate) fn rearrange(from: &[Formula], to: &[Formula]) -> Vec<(Rule, Vec<Formula>)> {
    let mut steps = Vec::new();
    let mut w: Vec<Formula> = from.to_vec();
    let count = |xs: &[Formula], f: &Formula| xs.iter().filter(|x| *x == f).count();
    let mut kinds: Vec<Formula> = to
        .iter()
        .chain(from.iter())
        .filter(|f| f.is_bang())
        .cloned()
        .collect();
    kinds.sort();
    kinds.dedup();
    for f in &kinds {
        while count(&w, f) < count(to, f) {
            let i = w
                .iter()
                .position(|x| x == f)
                .expect("bang formula present below");
            steps.push((Rule::BangC, w.clone()));
            w.insert(i + 1, f.clone());
        }
    }
    for f in &kinds {
        while count(&w, f) > count(to, f) {
            let i = w.iter().rposition(|x| x == f).unwrap();
            steps.push((Rule::BangW, w.clone()));
            w.remove(i);
        }
    }
    for (k, target) in to.iter().enumerate() {
        let j = (k..w.len())
            .find(|&j| w[j] == *target)
            .expect("same multiset");
        let mut i = j;
        while i > k {
            let rule = if w[i].is_bang() {
                Rule::BangP2
            } else {
                Rule::BangP1
            };
            steps.push((rule, w.clone()));
            w.swap(i - 1, i);
            i -= 1;
        }
    }
    debug_assert_eq!(w, to);
    steps
}
