//! Staged construction of a formula-labelled graph.
//!
//! Starting from one reflexive vertex labelled `1`, each stage adds a vertex
//! in front of an existing one (type 0), behind one (type 1), or between the
//! ends of an edge whose label proves a product (type 2). The schedules
//! [`sigma`] and [`varsigma`] decide which vertex and formulas a stage uses;
//! a stage whose scheduled vertex or formula does not exist yet is skipped.
//!
//! Vertices are numbered in creation order, `0` being the initial one.

mod schedule;

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::vec::Vec;
use core::fmt;

use crate::calculus::{CalculusConfig, Preset};
use crate::prover::{Prover, Verdict};
use crate::relmodel::{Relation, MAX_WORLDS};
use crate::syntax::{Formula, Sequent};

pub use schedule::{pair, sigma, unpair, varsigma};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Variant {
    Full,
    /// Only transitions of types 0 and 1, alternating.
    ProductFree,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LabeledGraph {
    pub vertices: usize,
    pub edges: BTreeMap<(usize, usize), Formula>,
    pub stage: usize,
}

impl LabeledGraph {
    pub fn initial() -> LabeledGraph {
        let mut edges = BTreeMap::new();
        edges.insert((0, 0), Formula::One);
        LabeledGraph {
            vertices: 1,
            edges,
            stage: 0,
        }
    }

    pub fn label(&self, x: usize, y: usize) -> Option<&Formula> {
        self.edges.get(&(x, y))
    }

    pub fn has_edge(&self, x: usize, y: usize) -> bool {
        self.edges.contains_key(&(x, y))
    }

    pub fn successors(&self, y: usize) -> Vec<usize> {
        self.edges
            .range((y, 0)..(y + 1, 0))
            .map(|(&(_, z), _)| z)
            .collect()
    }

    pub fn predecessors(&self, y: usize) -> Vec<usize> {
        self.edges
            .keys()
            .filter(|&&(_, t)| t == y)
            .map(|&(x, _)| x)
            .collect()
    }

    fn add_vertex(&mut self) -> usize {
        let v = self.vertices;
        self.vertices += 1;
        self.edges.insert((v, v), Formula::One);
        v
    }
}

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum GraphError {
    #[error("the formula universe is empty")]
    EmptyUniverse,
    #[error("the product-free construction needs product-free hypotheses")]
    ProductInHypotheses,
    #[error("the prover could not decide {0}")]
    Undecided(Sequent),
    #[error("valuations are limited to {max} vertices, the graph has {0}", max = MAX_WORLDS)]
    TooManyVertices(usize),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Skip {
    MissingVertex,
    MissingFormula,
    NotDerivable,
    SameEnds,
}

/// What one stage did.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Transition {
    Skipped {
        kind: u8,
        reason: Skip,
    },
    /// Type 0: `vertex` placed before `y` with prefix `formula`.
    Before {
        vertex: usize,
        y: usize,
        formula: Formula,
    },
    /// Type 1: `vertex` placed after `y` with suffix `formula`.
    After {
        vertex: usize,
        y: usize,
        formula: Formula,
    },
    /// Type 2: `vertex` placed between `x` and `z`.
    Between {
        vertex: usize,
        x: usize,
        z: usize,
        b: Formula,
        c: Formula,
    },
}

/// Drives the construction and keeps the witnesses for the limit properties.
pub struct GraphBuilder {
    graph: LabeledGraph,
    universe: Vec<Formula>,
    known: BTreeSet<Formula>,
    variant: Variant,
    prover: Prover,
    log: Vec<Transition>,
}

/// The calculus graph labels are judged in: `L^∧01` plus the hypotheses.
pub fn label_calculus(hypotheses: &[Sequent]) -> CalculusConfig {
    CalculusConfig::preset(Preset::L01).with_hypotheses(hypotheses.to_vec())
}

impl GraphBuilder {
    pub fn new(
        universe: Vec<Formula>,
        variant: Variant,
        hypotheses: &[Sequent],
    ) -> Result<GraphBuilder, GraphError> {
        if universe.is_empty() {
            return Err(GraphError::EmptyUniverse);
        }
        if variant == Variant::ProductFree && hypotheses.iter().any(Sequent::has_product) {
            return Err(GraphError::ProductInHypotheses);
        }
        let known = universe.iter().cloned().collect();
        Ok(GraphBuilder {
            graph: LabeledGraph::initial(),
            universe,
            known,
            variant,
            prover: Prover::new(label_calculus(hypotheses)),
            log: Vec::new(),
        })
    }

    pub fn graph(&self) -> &LabeledGraph {
        &self.graph
    }

    pub fn universe(&self) -> &[Formula] {
        &self.universe
    }

    pub fn log(&self) -> &[Transition] {
        &self.log
    }

    pub fn into_graph(self) -> LabeledGraph {
        self.graph
    }

    /// Perform the next scheduled stage.
    pub fn step(&mut self) -> Result<Transition, GraphError> {
        let s = self.graph.stage;
        let (kind, i) = match self.variant {
            Variant::Full => ((s % 3) as u8, s / 3),
            Variant::ProductFree => ((s % 2) as u8, s / 2),
        };
        let t = match kind {
            0 | 1 => {
                let (slot, fi, _) = sigma(i);
                match self.universe.get(fi).cloned() {
                    None => Transition::Skipped {
                        kind,
                        reason: Skip::MissingFormula,
                    },
                    Some(a) if kind == 0 => self.before(slot, a),
                    Some(a) => self.after(slot, a),
                }
            }
            _ => {
                let (x, z, bi, ci, _) = varsigma(i);
                match (
                    self.universe.get(bi).cloned(),
                    self.universe.get(ci).cloned(),
                ) {
                    (Some(b), Some(c)) => self.between(x, z, b, c)?,
                    _ => Transition::Skipped {
                        kind,
                        reason: Skip::MissingFormula,
                    },
                }
            }
        };
        self.graph.stage += 1;
        self.log.push(t.clone());
        Ok(t)
    }

    pub fn run(&mut self, steps: usize) -> Result<(), GraphError> {
        for _ in 0..steps {
            self.step()?;
        }
        Ok(())
    }

    fn learn(&mut self, f: &Formula) {
        if self.known.insert(f.clone()) {
            self.universe.push(f.clone());
        }
    }

    /// Type 0: a new `x` with `ℓ(x,z) = A · ℓ(y,z)` for every edge `(y,z)`.
    pub fn before(&mut self, y: usize, a: Formula) -> Transition {
        if y >= self.graph.vertices {
            return Transition::Skipped {
                kind: 0,
                reason: Skip::MissingVertex,
            };
        }
        let targets: Vec<(usize, Formula)> = self
            .graph
            .successors(y)
            .into_iter()
            .map(|z| (z, self.graph.edges[&(y, z)].clone()))
            .collect();
        let x = self.graph.add_vertex();
        for (z, l) in targets {
            let label = Formula::mul(a.clone(), l);
            self.learn(&label);
            self.graph.edges.insert((x, z), label);
        }
        Transition::Before {
            vertex: x,
            y,
            formula: a,
        }
    }

    /// Type 1: a new `z` with `ℓ(x,z) = ℓ(x,y) · A` for every edge `(x,y)`.
    pub fn after(&mut self, y: usize, a: Formula) -> Transition {
        if y >= self.graph.vertices {
            return Transition::Skipped {
                kind: 1,
                reason: Skip::MissingVertex,
            };
        }
        let sources: Vec<(usize, Formula)> = self
            .graph
            .predecessors(y)
            .into_iter()
            .map(|x| (x, self.graph.edges[&(x, y)].clone()))
            .collect();
        let z = self.graph.add_vertex();
        for (x, l) in sources {
            let label = Formula::mul(l, a.clone());
            self.learn(&label);
            self.graph.edges.insert((x, z), label);
        }
        Transition::After {
            vertex: z,
            y,
            formula: a,
        }
    }

    /// Type 2: a midpoint for `ℓ(x,z) → B · C`.
    pub fn between(
        &mut self,
        x: usize,
        z: usize,
        b: Formula,
        c: Formula,
    ) -> Result<Transition, GraphError> {
        let skip = |reason| Ok(Transition::Skipped { kind: 2, reason });
        if x >= self.graph.vertices || z >= self.graph.vertices {
            return skip(Skip::MissingVertex);
        }
        let Some(l) = self.graph.label(x, z).cloned() else {
            return skip(Skip::NotDerivable);
        };
        if x == z {
            return skip(Skip::SameEnds);
        }
        let s = Sequent::new(alloc::vec![l], Formula::mul(b.clone(), c.clone()));
        match self.prover.decide(&s) {
            Verdict::Derivable => {}
            Verdict::NotDerivable { .. } => return skip(Skip::NotDerivable),
            Verdict::Unknown => return Err(GraphError::Undecided(s)),
        }
        let sources: Vec<(usize, Formula)> = self
            .graph
            .predecessors(x)
            .into_iter()
            .map(|r| (r, self.graph.edges[&(r, x)].clone()))
            .collect();
        let targets: Vec<(usize, Formula)> = self
            .graph
            .successors(z)
            .into_iter()
            .map(|t| (t, self.graph.edges[&(z, t)].clone()))
            .collect();
        let y = self.graph.add_vertex();
        for (r, l) in sources {
            let label = Formula::mul(l, b.clone());
            self.learn(&label);
            self.graph.edges.insert((r, y), label);
        }
        for (t, l) in targets {
            let label = Formula::mul(c.clone(), l);
            self.learn(&label);
            self.graph.edges.insert((y, t), label);
        }
        Ok(Transition::Between {
            vertex: y,
            x,
            z,
            b,
            c,
        })
    }
}

/// `build(steps, …)`: the graph after `steps` scheduled stages.
pub fn build(
    steps: usize,
    universe: Vec<Formula>,
    variant: Variant,
    hypotheses: &[Sequent],
) -> Result<LabeledGraph, GraphError> {
    let mut b = GraphBuilder::new(universe, variant, hypotheses)?;
    b.run(steps)?;
    Ok(b.into_graph())
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Check {
    Pass,
    Fail(Vec<usize>),
    /// The prover gave no answer for the listed vertices.
    Indeterminate(Vec<usize>),
}

impl Check {
    pub fn passed(&self) -> bool {
        *self == Check::Pass
    }
}

impl fmt::Display for Check {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Check::Pass => f.write_str("pass"),
            Check::Fail(w) => write!(f, "fail at {:?}", w),
            Check::Indeterminate(w) => write!(f, "undecided at {:?}", w),
        }
    }
}

/// Properties 1-4 of a stage plus the witnessed limit properties.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GraphReport {
    pub stage: usize,
    pub transitive: Check,
    pub reflexive: Check,
    pub antisymmetric: Check,
    /// `ℓ(x,z) → ℓ(x,y) · ℓ(y,z)` for composable edges.
    pub composition: Check,
    /// Midpoint witnesses of type 2 stages.
    pub midpoints: Check,
    /// Type 0 witnesses, up to interderivability of labels.
    pub prefixes: Check,
    /// Type 1 witnesses, up to interderivability of labels.
    pub suffixes: Check,
}

impl GraphReport {
    pub fn structural_ok(&self) -> bool {
        self.transitive.passed()
            && self.reflexive.passed()
            && self.antisymmetric.passed()
            && self.composition.passed()
    }

    pub fn all_ok(&self) -> bool {
        self.structural_ok()
            && self.midpoints.passed()
            && self.prefixes.passed()
            && self.suffixes.passed()
    }
}

/// Caches derivability of label sequents across checks.
pub struct GraphChecker {
    prover: Prover,
    cache: BTreeMap<Sequent, Verdict>,
}

impl GraphChecker {
    pub fn new(cfg: CalculusConfig) -> GraphChecker {
        GraphChecker {
            prover: Prover::new(cfg),
            cache: BTreeMap::new(),
        }
    }

    pub fn derivable(&mut self, s: &Sequent) -> Verdict {
        if let Some(v) = self.cache.get(s) {
            return *v;
        }
        let v = self.prover.decide(s);
        self.cache.insert(s.clone(), v);
        v
    }

    fn entails(&mut self, a: &Formula, b: &Formula) -> Verdict {
        self.derivable(&Sequent::new(alloc::vec![a.clone()], b.clone()))
    }

    /// Structural properties of `g`, without the limit witnesses.
    pub fn check(&mut self, g: &LabeledGraph) -> GraphReport {
        self.check_with(g, &[])
    }

    /// All properties; `log` lists the transitions that produced `g`.
    pub fn check_with(&mut self, g: &LabeledGraph, log: &[Transition]) -> GraphReport {
        let n = g.vertices;
        let mut transitive = Check::Pass;
        let mut composition = Check::Pass;
        let mut undecided = None;
        'outer: for (&(x, y), lxy) in &g.edges {
            for z in g.successors(y) {
                let Some(lxz) = g.label(x, z) else {
                    if transitive.passed() {
                        transitive = Check::Fail(alloc::vec![x, y, z]);
                    }
                    continue;
                };
                if !composition.passed() {
                    continue;
                }
                let lyz = &g.edges[&(y, z)];
                match self.entails(lxz, &Formula::mul(lxy.clone(), lyz.clone())) {
                    Verdict::Derivable => {}
                    Verdict::NotDerivable { .. } => composition = Check::Fail(alloc::vec![x, y, z]),
                    Verdict::Unknown => {
                        undecided = Some(alloc::vec![x, y, z]);
                    }
                }
                if !transitive.passed() && !composition.passed() {
                    break 'outer;
                }
            }
        }
        if composition.passed() {
            if let Some(w) = undecided {
                composition = Check::Indeterminate(w);
            }
        }
        let reflexive = match (0..n).find(|&x| g.label(x, x) != Some(&Formula::One)) {
            Some(x) => Check::Fail(alloc::vec![x]),
            None => Check::Pass,
        };
        let antisymmetric = match g.edges.keys().find(|&&(x, y)| x != y && g.has_edge(y, x)) {
            Some(&(x, y)) => Check::Fail(alloc::vec![x, y]),
            None => Check::Pass,
        };
        let (mut midpoints, mut prefixes, mut suffixes) = (Check::Pass, Check::Pass, Check::Pass);
        for t in log {
            match t {
                Transition::Between { vertex, x, z, b, c } if midpoints.passed() => {
                    let ok = match (g.label(*x, *vertex), g.label(*vertex, *z)) {
                        (Some(l1), Some(l2)) => {
                            self.entails(l1, b) == Verdict::Derivable
                                && self.entails(l2, c) == Verdict::Derivable
                        }
                        _ => false,
                    };
                    if !ok {
                        midpoints = Check::Fail(alloc::vec![*x, *vertex, *z]);
                    }
                }
                Transition::Before { vertex, y, formula } if prefixes.passed() => {
                    for z in g.successors(*y) {
                        let want = Formula::mul(formula.clone(), g.edges[&(*y, z)].clone());
                        if !self.equivalent(g.label(*vertex, z), &want) {
                            prefixes = Check::Fail(alloc::vec![*vertex, *y, z]);
                            break;
                        }
                    }
                }
                Transition::After { vertex, y, formula } if suffixes.passed() => {
                    for x in g.predecessors(*y) {
                        let want = Formula::mul(g.edges[&(x, *y)].clone(), formula.clone());
                        if !self.equivalent(g.label(x, *vertex), &want) {
                            suffixes = Check::Fail(alloc::vec![x, *y, *vertex]);
                            break;
                        }
                    }
                }
                _ => {}
            }
        }
        GraphReport {
            stage: g.stage,
            transitive,
            reflexive,
            antisymmetric,
            composition,
            midpoints,
            prefixes,
            suffixes,
        }
    }

    fn equivalent(&mut self, have: Option<&Formula>, want: &Formula) -> bool {
        match have {
            Some(h) if h == want => true,
            Some(h) => {
                self.entails(h, want) == Verdict::Derivable
                    && self.entails(want, h) == Verdict::Derivable
            }
            None => false,
        }
    }
}

/// One-shot [`GraphChecker::check`].
pub fn check_graph(g: &LabeledGraph, cfg: &CalculusConfig) -> GraphReport {
    GraphChecker::new(cfg.clone()).check(g)
}

/// Edges whose label proves `f`; `indeterminate` lists edges the prover left open.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GraphValuation {
    pub relation: Relation,
    pub indeterminate: Vec<(usize, usize)>,
}

pub fn graph_valuation(
    g: &LabeledGraph,
    f: &Formula,
    cfg: &CalculusConfig,
) -> Result<GraphValuation, GraphError> {
    GraphChecker::new(cfg.clone()).valuation(g, f)
}

impl GraphChecker {
    pub fn valuation(
        &mut self,
        g: &LabeledGraph,
        f: &Formula,
    ) -> Result<GraphValuation, GraphError> {
        if g.vertices > MAX_WORLDS {
            return Err(GraphError::TooManyVertices(g.vertices));
        }
        let mut relation = Relation::empty(g.vertices);
        let mut indeterminate = Vec::new();
        for (&(x, y), l) in &g.edges {
            match self.entails(l, f) {
                Verdict::Derivable => relation.insert(x, y),
                Verdict::NotDerivable { .. } => {}
                Verdict::Unknown => indeterminate.push((x, y)),
            }
        }
        Ok(GraphValuation {
            relation,
            indeterminate,
        })
    }
}

#[cfg(test)]
mod tests;
