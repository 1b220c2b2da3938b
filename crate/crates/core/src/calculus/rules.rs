use alloc::vec::Vec;

use super::{CalculusConfig, Rule, RuleData};
use crate::syntax::{Formula, Sequent};

/// One backward application: the rule, its premises and attached data.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Instance {
    pub rule: Rule,
    pub premises: Vec<Sequent>,
    pub data: RuleData,
}

impl Instance {
    fn new(rule: Rule, premises: Vec<Sequent>) -> Instance {
        Instance {
            rule,
            premises,
            data: RuleData::default(),
        }
    }

    fn with_n(mut self, n: usize) -> Instance {
        self.data.n = Some(n);
        self
    }
}

/// Every cut-free rule application concluding `s` under `cfg`.
pub fn backward_instances(s: &Sequent, cfg: &CalculusConfig) -> Vec<Instance> {
    let mut out = Vec::new();
    for rule in Rule::ALL {
        if rule != Rule::Cut {
            collect(s, cfg, rule, &mut out);
        }
    }
    out
}

/// The instances of a single rule concluding `s`. Empty for `Cut`.
pub fn instances_of(s: &Sequent, cfg: &CalculusConfig, rule: Rule) -> Vec<Instance> {
    let mut out = Vec::new();
    if rule != Rule::Cut {
        collect(s, cfg, rule, &mut out);
    }
    out
}

fn splice(ant: &[Formula], start: usize, end: usize, insert: &[Formula]) -> Vec<Formula> {
    let mut v = Vec::with_capacity(ant.len() + insert.len());
    v.extend_from_slice(&ant[..start]);
    v.extend_from_slice(insert);
    v.extend_from_slice(&ant[end..]);
    v
}

fn sequent(ant: Vec<Formula>, succ: &Formula) -> Sequent {
    Sequent::new(ant, succ.clone())
}

/// All ways to cut `seg` into non-empty consecutive blocks.
fn compositions(seg: &[Formula]) -> Vec<Vec<&[Formula]>> {
    if seg.is_empty() {
        return alloc::vec![Vec::new()];
    }
    let m = seg.len();
    let mut out = Vec::new();
    for mask in 0u64..(1u64 << (m - 1)) {
        let mut blocks = Vec::new();
        let mut start = 0;
        for k in 1..m {
            if mask & (1 << (k - 1)) != 0 {
                blocks.push(&seg[start..k]);
                start = k;
            }
        }
        blocks.push(&seg[start..]);
        out.push(blocks);
    }
    out
}

fn collect(s: &Sequent, cfg: &CalculusConfig, rule: Rule, out: &mut Vec<Instance>) {
    let before = out.len();
    raw(s, cfg, rule, out);
    if cfg.lambek_restriction {
        let mut i = before;
        while i < out.len() {
            let bad = s.antecedent.is_empty() && out[i].rule != Rule::Hyp
                || out[i].premises.iter().any(|p| p.antecedent.is_empty());
            if bad {
                out.remove(i);
            } else {
                i += 1;
            }
        }
    }
}

fn raw(s: &Sequent, cfg: &CalculusConfig, rule: Rule, out: &mut Vec<Instance>) {
    let ant = &s.antecedent;
    let succ = &s.succedent;
    let conn = cfg.connectives;
    match rule {
        Rule::Id => {
            if ant.len() == 1 && ant[0] == *succ {
                out.push(Instance::new(Rule::Id, Vec::new()));
            }
        }
        Rule::Cut => {}
        Rule::Hyp => {
            for (k, h) in cfg.hypotheses.iter().enumerate() {
                if h == s || h.curry() == *s {
                    let mut inst = Instance::new(Rule::Hyp, Vec::new());
                    inst.data.hypothesis = Some(k);
                    out.push(inst);
                }
            }
        }
        Rule::ZeroL => {
            if cfg.constants.zero && ant.contains(&Formula::Zero) {
                out.push(Instance::new(Rule::ZeroL, Vec::new()));
            }
        }
        Rule::OneR => {
            if cfg.constants.one && ant.is_empty() && *succ == Formula::One {
                out.push(Instance::new(Rule::OneR, Vec::new()));
            }
        }
        Rule::OneL => {
            if cfg.constants.one {
                for (i, f) in ant.iter().enumerate() {
                    if *f == Formula::One {
                        out.push(Instance::new(
                            Rule::OneL,
                            alloc::vec![sequent(splice(ant, i, i + 1, &[]), succ)],
                        ));
                    }
                }
            }
        }
        Rule::MulL => {
            if conn.mul {
                for (i, f) in ant.iter().enumerate() {
                    if let Formula::Mul(a, b) = f {
                        let parts = [(**a).clone(), (**b).clone()];
                        out.push(Instance::new(
                            Rule::MulL,
                            alloc::vec![sequent(splice(ant, i, i + 1, &parts), succ)],
                        ));
                    }
                }
            }
        }
        Rule::MeetL1 | Rule::MeetL2 => {
            if conn.meet {
                for (i, f) in ant.iter().enumerate() {
                    if let Formula::Meet(a, b) = f {
                        let pick = if rule == Rule::MeetL1 { a } else { b };
                        out.push(Instance::new(
                            rule,
                            alloc::vec![sequent(splice(ant, i, i + 1, &[(**pick).clone()]), succ)],
                        ));
                    }
                }
            }
        }
        Rule::LDivL => {
            if conn.ldiv {
                for (j, f) in ant.iter().enumerate() {
                    if let Formula::LDiv(a, b) = f {
                        for i in 0..=j {
                            let pi = sequent(ant[i..j].to_vec(), a);
                            let rest = sequent(splice(ant, i, j + 1, &[(**b).clone()]), succ);
                            out.push(Instance::new(Rule::LDivL, alloc::vec![pi, rest]));
                        }
                    }
                }
            }
        }
        Rule::RDivL => {
            if conn.rdiv {
                for (j, f) in ant.iter().enumerate() {
                    if let Formula::RDiv(b, a) = f {
                        for k in (j + 1..=ant.len()).rev() {
                            let pi = sequent(ant[j + 1..k].to_vec(), a);
                            let rest = sequent(splice(ant, j, k, &[(**b).clone()]), succ);
                            out.push(Instance::new(Rule::RDivL, alloc::vec![pi, rest]));
                        }
                    }
                }
            }
        }
        Rule::LDivR => {
            if let (true, Formula::LDiv(a, b)) = (conn.ldiv, succ) {
                if !(cfg.lambek_restriction && ant.is_empty()) {
                    let mut p = alloc::vec![(**a).clone()];
                    p.extend(ant.iter().cloned());
                    out.push(Instance::new(Rule::LDivR, alloc::vec![sequent(p, b)]));
                }
            }
        }
        Rule::RDivR => {
            if let (true, Formula::RDiv(b, a)) = (conn.rdiv, succ) {
                if !(cfg.lambek_restriction && ant.is_empty()) {
                    let mut p = ant.clone();
                    p.push((**a).clone());
                    out.push(Instance::new(Rule::RDivR, alloc::vec![sequent(p, b)]));
                }
            }
        }
        Rule::MulR => {
            if let (true, Formula::Mul(a, b)) = (conn.mul, succ) {
                for k in (0..=ant.len()).rev() {
                    out.push(Instance::new(
                        Rule::MulR,
                        alloc::vec![sequent(ant[..k].to_vec(), a), sequent(ant[k..].to_vec(), b)],
                    ));
                }
            }
        }
        Rule::MeetR => {
            if let (true, Formula::Meet(a, b)) = (conn.meet, succ) {
                out.push(Instance::new(
                    Rule::MeetR,
                    alloc::vec![sequent(ant.clone(), a), sequent(ant.clone(), b)],
                ));
            }
        }
        Rule::Bc => {
            if cfg.bc_rule {
                let bc = [Formula::var("b"), Formula::var("c")];
                for i in 0..=ant.len() {
                    out.push(Instance::new(
                        Rule::Bc,
                        alloc::vec![sequent(splice(ant, i, i, &bc), succ)],
                    ));
                }
            }
        }
        Rule::IterLDivL => {
            if cfg.iterative {
                for (j, f) in ant.iter().enumerate() {
                    if let Formula::IterLDiv(a, b) = f {
                        for i in 0..=j {
                            for blocks in compositions(&ant[i..j]) {
                                let n = blocks.len();
                                let mut premises: Vec<Sequent> = blocks
                                    .into_iter()
                                    .map(|bl| sequent(bl.to_vec(), a))
                                    .collect();
                                premises
                                    .push(sequent(splice(ant, i, j + 1, &[(**b).clone()]), succ));
                                out.push(Instance::new(Rule::IterLDivL, premises).with_n(n));
                            }
                        }
                    }
                }
            }
        }
        Rule::IterRDivL => {
            if cfg.iterative {
                for (j, f) in ant.iter().enumerate() {
                    if let Formula::IterRDiv(b, a) = f {
                        for k in (j + 1..=ant.len()).rev() {
                            for blocks in compositions(&ant[j + 1..k]) {
                                let n = blocks.len();
                                let mut premises: Vec<Sequent> = blocks
                                    .into_iter()
                                    .map(|bl| sequent(bl.to_vec(), a))
                                    .collect();
                                premises.push(sequent(splice(ant, j, k, &[(**b).clone()]), succ));
                                out.push(Instance::new(Rule::IterRDivL, premises).with_n(n));
                            }
                        }
                    }
                }
            }
        }
        Rule::IterLDivR => {
            if let (true, Formula::IterLDiv(a, b)) = (cfg.iterative, succ) {
                let premises = (0..=cfg.omega_bound)
                    .map(|n| {
                        let mut p: Vec<Formula> = core::iter::repeat_n((**a).clone(), n).collect();
                        p.extend(ant.iter().cloned());
                        sequent(p, b)
                    })
                    .collect();
                let mut inst = Instance::new(Rule::IterLDivR, premises).with_n(cfg.omega_bound);
                inst.data.approximate = true;
                out.push(inst);
            }
        }
        Rule::IterRDivR => {
            if let (true, Formula::IterRDiv(b, a)) = (cfg.iterative, succ) {
                let premises = (0..=cfg.omega_bound)
                    .map(|n| {
                        let mut p = ant.clone();
                        p.extend(core::iter::repeat_n((**a).clone(), n));
                        sequent(p, b)
                    })
                    .collect();
                let mut inst = Instance::new(Rule::IterRDivR, premises).with_n(cfg.omega_bound);
                inst.data.approximate = true;
                out.push(inst);
            }
        }
        Rule::BangL => {
            if cfg.bang {
                for (i, f) in ant.iter().enumerate() {
                    if let Formula::Bang(a) = f {
                        out.push(Instance::new(
                            Rule::BangL,
                            alloc::vec![sequent(splice(ant, i, i + 1, &[(**a).clone()]), succ)],
                        ));
                    }
                }
            }
        }
        Rule::BangR => {
            if let (true, Formula::Bang(a)) = (cfg.bang, succ) {
                if ant.iter().all(Formula::is_bang) {
                    out.push(Instance::new(
                        Rule::BangR,
                        alloc::vec![sequent(ant.clone(), a)],
                    ));
                }
            }
        }
        Rule::BangW => {
            if cfg.bang {
                for (i, f) in ant.iter().enumerate() {
                    if f.is_bang() {
                        out.push(Instance::new(
                            Rule::BangW,
                            alloc::vec![sequent(splice(ant, i, i + 1, &[]), succ)],
                        ));
                    }
                }
            }
        }
        Rule::BangC => {
            if cfg.bang {
                for (i, f) in ant.iter().enumerate() {
                    if f.is_bang() {
                        out.push(Instance::new(
                            Rule::BangC,
                            alloc::vec![sequent(splice(ant, i, i, core::slice::from_ref(f)), succ)],
                        ));
                    }
                }
            }
        }
        Rule::BangP1 => {
            // Conclusion `G, !A, F, D`; premise `G, F, !A, D`.
            if cfg.bang {
                for (i, f) in ant.iter().enumerate() {
                    if f.is_bang() {
                        for k in i + 2..=ant.len() {
                            let mut p = ant[..i].to_vec();
                            p.extend_from_slice(&ant[i + 1..k]);
                            p.push(f.clone());
                            p.extend_from_slice(&ant[k..]);
                            out.push(Instance::new(Rule::BangP1, alloc::vec![sequent(p, succ)]));
                        }
                    }
                }
            }
        }
        Rule::BangP2 => {
            // Conclusion `G, F, !A, D`; premise `G, !A, F, D`.
            if cfg.bang {
                for (j, f) in ant.iter().enumerate() {
                    if f.is_bang() {
                        for i in 0..j {
                            let mut p = ant[..i].to_vec();
                            p.push(f.clone());
                            p.extend_from_slice(&ant[i..j]);
                            p.extend_from_slice(&ant[j + 1..]);
                            out.push(Instance::new(Rule::BangP2, alloc::vec![sequent(p, succ)]));
                        }
                    }
                }
            }
        }
    }
}
