//! Backward search over normalized goals.
//!
//! When the exponential is active, `!`-formulas in the antecedent can be
//! moved, copied and dropped freely, so a goal keeps them as a sorted set
//! `ctx` next to the ordered linear part `ant`. Without the exponential `ctx`
//! stays empty and goals are plain sequents.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::string::String;
use alloc::vec::Vec;

use super::arena::{Arena, Fid, Node};
use super::prune::Pruner;
use crate::calculus::CalculusConfig;
use crate::syntax::{Formula, Sequent};

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub(crate) struct Goal {
    pub ctx: Vec<Fid>,
    pub ant: Vec<Fid>,
    pub succ: Fid,
}

/// How a goal was closed. Positions index `Goal::ant`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub(crate) enum Step {
    Id,
    /// `ant` empty and the succedent is a member of `ctx`.
    IdCtx,
    ZeroL,
    OneR,
    Hyp {
        index: usize,
        curried: bool,
    },
    OneL {
        pos: usize,
    },
    MulL {
        pos: usize,
    },
    MeetL {
        pos: usize,
        second: bool,
    },
    LDivL {
        start: usize,
        pos: usize,
    },
    RDivL {
        pos: usize,
        end: usize,
    },
    /// Block boundaries are absolute positions in `ant`, `start..pos` split at `cuts`.
    IterLDivL {
        start: usize,
        pos: usize,
        cuts: Vec<usize>,
    },
    IterRDivL {
        pos: usize,
        end: usize,
        cuts: Vec<usize>,
    },
    LDivR,
    RDivR,
    MeetR,
    MulR {
        split: usize,
    },
    IterLDivR,
    IterRDivR,
    BangR,
    Derelict {
        bang: Fid,
        pos: usize,
    },
    /// Replace `ant[start..start + len]` by the succedent of a hypothesis.
    HypCut {
        index: usize,
        start: usize,
        len: usize,
    },
    Bc {
        pos: usize,
    },
}

/// A hypothesis in the form used for cuts.
pub(crate) struct HypForm {
    pub index: usize,
    pub ant: Vec<Fid>,
    pub succ: Fid,
    pub explicit: Sequent,
    /// Original (uncurried) shape for axiom matching.
    pub plain_ant: Vec<Fid>,
    pub plain_succ: Fid,
    pub curried: bool,
}

const NO_LOOP: usize = usize::MAX;
pub(crate) const UNBOUNDED: usize = usize::MAX;

pub(crate) struct Search {
    pub cfg: CalculusConfig,
    pub arena: Arena,
    pub hyps: Vec<HypForm>,
    pub bc: Option<(Fid, Fid)>,
    pub proved: BTreeMap<Goal, (Step, Vec<Goal>)>,
    failed: BTreeMap<Goal, usize>,
    pruner: Pruner,
    pruner_key: Option<(BTreeSet<String>, Vec<Fid>)>,
    path: BTreeMap<Goal, usize>,
    pub steps: u64,
    pub aborted: bool,
    pub hit_depth: bool,
    pub hit_antecedent: bool,
}

impl Search {
    pub fn new(cfg: CalculusConfig) -> Search {
        let mut arena = Arena::default();
        let mut hyps = Vec::new();
        for (index, h) in cfg.hypotheses.iter().enumerate() {
            let curried = !cfg.lambek_restriction;
            let explicit = if curried { h.curry() } else { h.clone() };
            let ant = explicit
                .antecedent
                .iter()
                .map(|f| arena.intern(f))
                .collect();
            let succ = arena.intern(&explicit.succedent);
            let plain_ant = h.antecedent.iter().map(|f| arena.intern(f)).collect();
            let plain_succ = arena.intern(&h.succedent);
            hyps.push(HypForm {
                index,
                ant,
                succ,
                explicit,
                plain_ant,
                plain_succ,
                curried,
            });
        }
        let bc = if cfg.bc_rule {
            Some((
                arena.intern(&Formula::var("b")),
                arena.intern(&Formula::var("c")),
            ))
        } else {
            None
        };
        Search {
            cfg,
            arena,
            hyps,
            bc,
            proved: BTreeMap::new(),
            failed: BTreeMap::new(),
            pruner: Pruner::default(),
            pruner_key: None,
            path: BTreeMap::new(),
            steps: 0,
            aborted: false,
            hit_depth: false,
            hit_antecedent: false,
        }
    }

    /// Grow the pruning pool from goals that failed only for lack of depth.
    pub fn learn(&mut self) -> usize {
        let goals = self
            .failed
            .iter()
            .filter(|(_, &b)| b != UNBOUNDED)
            .map(|(g, _)| g);
        self.pruner.learn(&self.arena, goals)
    }

    pub fn reset_query(&mut self) {
        self.path.clear();
        self.steps = 0;
        self.aborted = false;
        self.hit_depth = false;
        self.hit_antecedent = false;
    }

    /// Build a normalized goal, moving `!`-formulas of `ant` into `ctx`.
    pub fn goal(&self, ctx: &[Fid], ant: Vec<Fid>, succ: Fid) -> Goal {
        if !self.cfg.bang || !ant.iter().any(|&f| self.arena.is_bang(f)) {
            return Goal {
                ctx: ctx.to_vec(),
                ant,
                succ,
            };
        }
        let mut c: BTreeSet<Fid> = ctx.iter().copied().collect();
        let mut lin = Vec::with_capacity(ant.len());
        for f in ant {
            if self.arena.is_bang(f) {
                c.insert(f);
            } else {
                lin.push(f);
            }
        }
        Goal {
            ctx: c.into_iter().collect(),
            ant: lin,
            succ,
        }
    }

    /// Sample refuting models for a query about `s`.
    pub fn prepare(&mut self, s: &Sequent) {
        let mut vars: BTreeSet<String> = s.variables().into_iter().collect();
        for h in &self.cfg.hypotheses {
            vars.extend(h.variables());
        }
        if self.bc.is_some() {
            vars.insert(String::from("b"));
            vars.insert(String::from("c"));
        }
        // Models that empty a banged formula of the query refute nothing.
        let mut banged: Vec<Fid> = Vec::new();
        for f in &s.antecedent {
            if let Formula::Bang(a) = f {
                banged.push(self.arena.intern(a));
            }
        }
        banged.sort();
        banged.dedup();
        let key = (vars, banged);
        if self.pruner_key.as_ref() == Some(&key) {
            return;
        }
        let worlds = self.cfg.omega_bound.saturating_add(1);
        self.pruner = Pruner::build(&self.arena, &key.0, &self.hyps, &key.1, self.bc, worlds);
        self.pruner_key = Some(key);
    }

    pub fn root_goal(&mut self, s: &Sequent) -> Goal {
        let ant: Vec<Fid> = s.antecedent.iter().map(|f| self.arena.intern(f)).collect();
        let succ = self.arena.intern(&s.succedent);
        self.goal(&[], ant, succ)
    }

    /// Under Lambek's restriction no sequent may have an empty antecedent.
    fn empty(&self, ctx: &[Fid], ant_len: usize) -> bool {
        self.cfg.lambek_restriction && ctx.is_empty() && ant_len == 0
    }

    /// `true` if the goal was proved; failures report the shallowest ancestor
    /// they depended on through the loop check.
    pub fn solve(&mut self, g: &Goal, budget: usize) -> Result<(), usize> {
        if self.proved.contains_key(g) {
            return Ok(());
        }
        if let Some(&b) = self.failed.get(g) {
            if b >= budget {
                if b != UNBOUNDED {
                    self.hit_depth = true;
                }
                return Err(NO_LOOP);
            }
        }
        if let Some(&idx) = self.path.get(g) {
            return Err(idx);
        }
        if self.aborted {
            return Err(NO_LOOP);
        }
        self.steps += 1;
        if self.steps > self.cfg.max_steps {
            self.aborted = true;
            return Err(NO_LOOP);
        }
        if let Some(step) = self.axiom(g) {
            self.proved.insert(g.clone(), (step, Vec::new()));
            return Ok(());
        }
        if self.pruner.refutes(&self.arena, g) {
            self.failed.insert(g.clone(), UNBOUNDED);
            return Err(NO_LOOP);
        }
        if budget == 0 {
            self.hit_depth = true;
            self.failed.insert(g.clone(), 0);
            return Err(NO_LOOP);
        }
        let next = if budget == UNBOUNDED {
            UNBOUNDED
        } else {
            budget - 1
        };
        let idx = self.path.len();
        self.path.insert(g.clone(), idx);
        let mut low = NO_LOOP;
        let mut found = None;
        if let Some((step, prems)) = self.invertible(g) {
            if self.all(&prems, next, &mut low) {
                found = Some((step, prems));
            }
        } else {
            for (step, prems) in self.alternatives(g) {
                if self.all(&prems, next, &mut low) {
                    found = Some((step, prems));
                    break;
                }
                if self.aborted {
                    break;
                }
            }
        }
        self.path.remove(g);
        match found {
            Some(entry) => {
                self.proved.insert(g.clone(), entry);
                Ok(())
            }
            None if self.aborted => Err(NO_LOOP),
            None if low >= idx => {
                self.failed.insert(g.clone(), budget);
                Err(NO_LOOP)
            }
            None => Err(low),
        }
    }

    fn all(&mut self, prems: &[Goal], budget: usize, low: &mut usize) -> bool {
        for p in prems {
            if let Err(l) = self.solve(p, budget) {
                *low = (*low).min(l);
                return false;
            }
        }
        true
    }

    fn axiom(&self, g: &Goal) -> Option<Step> {
        if g.ant.len() == 1 && g.ant[0] == g.succ {
            return Some(Step::Id);
        }
        if g.ant.is_empty() && g.ctx.binary_search(&g.succ).is_ok() {
            return Some(Step::IdCtx);
        }
        if self.cfg.constants.zero && g.ant.iter().any(|&f| self.arena.node(f) == Node::Zero) {
            return Some(Step::ZeroL);
        }
        if self.cfg.constants.one && g.ant.is_empty() && self.arena.node(g.succ) == Node::One {
            return Some(Step::OneR);
        }
        for h in &self.hyps {
            if h.plain_ant == g.ant && h.plain_succ == g.succ {
                return Some(Step::Hyp {
                    index: h.index,
                    curried: false,
                });
            }
            if h.curried && g.ant.is_empty() && h.succ == g.succ {
                return Some(Step::Hyp {
                    index: h.index,
                    curried: true,
                });
            }
        }
        None
    }

    fn replace(&self, g: &Goal, start: usize, end: usize, with: &[Fid]) -> Goal {
        let mut ant = Vec::with_capacity(g.ant.len() + with.len());
        ant.extend_from_slice(&g.ant[..start]);
        ant.extend_from_slice(with);
        ant.extend_from_slice(&g.ant[end..]);
        self.goal(&g.ctx, ant, g.succ)
    }

    fn with_succ(&self, g: &Goal, ant: Vec<Fid>, succ: Fid) -> Goal {
        self.goal(&g.ctx, ant, succ)
    }

    /// The first applicable invertible rule, if any.
    fn invertible(&self, g: &Goal) -> Option<(Step, Vec<Goal>)> {
        let cfg = &self.cfg;
        for (pos, &f) in g.ant.iter().enumerate() {
            match self.arena.node(f) {
                Node::One if cfg.constants.one => {
                    if self.empty(&g.ctx, g.ant.len() - 1) {
                        continue;
                    }
                    return Some((
                        Step::OneL { pos },
                        alloc::vec![self.replace(g, pos, pos + 1, &[])],
                    ));
                }
                Node::Mul(a, b) if cfg.connectives.mul => {
                    return Some((
                        Step::MulL { pos },
                        alloc::vec![self.replace(g, pos, pos + 1, &[a, b])],
                    ));
                }
                _ => {}
            }
        }
        match self.arena.node(g.succ) {
            Node::LDiv(a, b) if cfg.connectives.ldiv && !self.empty(&g.ctx, g.ant.len()) => {
                let mut ant = alloc::vec![a];
                ant.extend_from_slice(&g.ant);
                Some((Step::LDivR, alloc::vec![self.with_succ(g, ant, b)]))
            }
            Node::RDiv(b, a) if cfg.connectives.rdiv && !self.empty(&g.ctx, g.ant.len()) => {
                let mut ant = g.ant.clone();
                ant.push(a);
                Some((Step::RDivR, alloc::vec![self.with_succ(g, ant, b)]))
            }
            Node::Meet(a, b) if cfg.connectives.meet => Some((
                Step::MeetR,
                alloc::vec![
                    self.with_succ(g, g.ant.clone(), a),
                    self.with_succ(g, g.ant.clone(), b)
                ],
            )),
            Node::IterLDiv(a, b) if cfg.iterative => {
                let prems = (0..=cfg.omega_bound)
                    .map(|n| {
                        let mut ant: Vec<Fid> = core::iter::repeat_n(a, n).collect();
                        ant.extend_from_slice(&g.ant);
                        self.with_succ(g, ant, b)
                    })
                    .filter(|p| !self.empty(&p.ctx, p.ant.len()))
                    .collect::<Vec<_>>();
                if prems.len() == cfg.omega_bound + 1 {
                    Some((Step::IterLDivR, prems))
                } else {
                    None
                }
            }
            Node::IterRDiv(b, a) if cfg.iterative => {
                let prems = (0..=cfg.omega_bound)
                    .map(|n| {
                        let mut ant = g.ant.clone();
                        ant.extend(core::iter::repeat_n(a, n));
                        self.with_succ(g, ant, b)
                    })
                    .filter(|p| !self.empty(&p.ctx, p.ant.len()))
                    .collect::<Vec<_>>();
                if prems.len() == cfg.omega_bound + 1 {
                    Some((Step::IterRDivR, prems))
                } else {
                    None
                }
            }
            _ => None,
        }
    }

    /// Non-invertible rules, then the rules that grow the antecedent.
    fn alternatives(&mut self, g: &Goal) -> Vec<(Step, Vec<Goal>)> {
        let mut out = Vec::new();
        let cfg = self.cfg.clone();
        let n = g.ant.len();
        for (pos, &f) in g.ant.iter().enumerate() {
            match self.arena.node(f) {
                Node::LDiv(a, b) if cfg.connectives.ldiv => {
                    for start in 0..=pos {
                        if self.empty(&g.ctx, pos - start) {
                            continue;
                        }
                        let left = self.with_succ(g, g.ant[start..pos].to_vec(), a);
                        let right = self.replace(g, start, pos + 1, &[b]);
                        out.push((Step::LDivL { start, pos }, alloc::vec![left, right]));
                    }
                }
                Node::RDiv(b, a) if cfg.connectives.rdiv => {
                    for end in (pos + 1..=n).rev() {
                        if self.empty(&g.ctx, end - pos - 1) {
                            continue;
                        }
                        let left = self.with_succ(g, g.ant[pos + 1..end].to_vec(), a);
                        let right = self.replace(g, pos, end, &[b]);
                        out.push((Step::RDivL { pos, end }, alloc::vec![left, right]));
                    }
                }
                Node::Meet(a, b) if cfg.connectives.meet => {
                    out.push((
                        Step::MeetL { pos, second: false },
                        alloc::vec![self.replace(g, pos, pos + 1, &[a])],
                    ));
                    out.push((
                        Step::MeetL { pos, second: true },
                        alloc::vec![self.replace(g, pos, pos + 1, &[b])],
                    ));
                }
                Node::IterLDiv(a, b) if cfg.iterative => {
                    for start in 0..=pos {
                        for cuts in cut_sets(start, pos) {
                            let mut prems = Vec::new();
                            let mut lo = start;
                            for &c in cuts.iter().chain(core::iter::once(&pos)) {
                                if lo < c {
                                    prems.push(self.with_succ(g, g.ant[lo..c].to_vec(), a));
                                }
                                lo = c;
                            }
                            prems.push(self.replace(g, start, pos + 1, &[b]));
                            out.push((Step::IterLDivL { start, pos, cuts }, prems));
                        }
                    }
                }
                Node::IterRDiv(b, a) if cfg.iterative => {
                    for end in (pos + 1..=n).rev() {
                        for cuts in cut_sets(pos + 1, end) {
                            let mut prems = Vec::new();
                            let mut lo = pos + 1;
                            for &c in cuts.iter().chain(core::iter::once(&end)) {
                                if lo < c {
                                    prems.push(self.with_succ(g, g.ant[lo..c].to_vec(), a));
                                }
                                lo = c;
                            }
                            prems.push(self.replace(g, pos, end, &[b]));
                            out.push((Step::IterRDivL { pos, end, cuts }, prems));
                        }
                    }
                }
                _ => {}
            }
        }
        match self.arena.node(g.succ) {
            Node::Mul(a, b) if cfg.connectives.mul => {
                for split in (0..=n).rev() {
                    if self.empty(&g.ctx, split) || self.empty(&g.ctx, n - split) {
                        continue;
                    }
                    let left = self.with_succ(g, g.ant[..split].to_vec(), a);
                    let right = self.with_succ(g, g.ant[split..].to_vec(), b);
                    out.push((Step::MulR { split }, alloc::vec![left, right]));
                }
            }
            Node::Bang(a) if cfg.bang && g.ant.is_empty() => {
                out.push((Step::BangR, alloc::vec![self.with_succ(g, Vec::new(), a)]));
            }
            _ => {}
        }
        self.growth(g, &mut out);
        out
    }

    fn growth(&mut self, g: &Goal, out: &mut Vec<(Step, Vec<Goal>)>) {
        let n = g.ant.len();
        let room = n < self.cfg.max_antecedent;
        let mut seen: BTreeSet<Goal> = BTreeSet::new();
        let mut blocked = false;
        if self.cfg.bang {
            for &c in &g.ctx {
                let inner = match self.arena.node(c) {
                    Node::Bang(a) => a,
                    _ => continue,
                };
                if self.arena.is_bang(inner) && g.ctx.binary_search(&inner).is_ok() {
                    continue;
                }
                if !room {
                    blocked = true;
                    continue;
                }
                for pos in 0..=n {
                    let p = self.replace(g, pos, pos, &[inner]);
                    if seen.insert(p.clone()) {
                        out.push((Step::Derelict { bang: c, pos }, alloc::vec![p]));
                    }
                }
            }
        }
        for hi in 0..self.hyps.len() {
            let (index, len, succ) = {
                let h = &self.hyps[hi];
                (h.index, h.ant.len(), h.succ)
            };
            if len == 0 {
                if !room {
                    blocked = true;
                    continue;
                }
                for pos in 0..=n {
                    let p = self.replace(g, pos, pos, &[succ]);
                    if seen.insert(p.clone()) {
                        out.push((
                            Step::HypCut {
                                index,
                                start: pos,
                                len: 0,
                            },
                            alloc::vec![p],
                        ));
                    }
                }
            } else {
                for start in 0..n.saturating_sub(len - 1) {
                    if g.ant[start..start + len] == self.hyps[hi].ant[..] {
                        let p = self.replace(g, start, start + len, &[succ]);
                        if seen.insert(p.clone()) {
                            out.push((Step::HypCut { index, start, len }, alloc::vec![p]));
                        }
                    }
                }
            }
        }
        if let Some((b, c)) = self.bc {
            if n + 2 <= self.cfg.max_antecedent {
                for pos in 0..=n {
                    let p = self.replace(g, pos, pos, &[b, c]);
                    if seen.insert(p.clone()) {
                        out.push((Step::Bc { pos }, alloc::vec![p]));
                    }
                }
            } else {
                blocked = true;
            }
        }
        if blocked {
            self.hit_antecedent = true;
        }
    }
}

/// All sets of interior cut points of `lo..hi`, as sorted position lists.
fn cut_sets(lo: usize, hi: usize) -> Vec<Vec<usize>> {
    if hi <= lo + 1 {
        return alloc::vec![Vec::new()];
    }
    let inner = hi - lo - 1;
    (0u64..(1u64 << inner))
        .map(|mask| {
            (0..inner)
                .filter(|k| mask & (1 << k) != 0)
                .map(|k| lo + 1 + k)
                .collect()
        })
        .collect()
}
