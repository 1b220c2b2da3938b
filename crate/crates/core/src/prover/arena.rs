use alloc::collections::BTreeMap;
use alloc::vec::Vec;

use crate::syntax::Formula;

pub(crate) type Fid = u32;

/// A formula with its children replaced by ids.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub(crate) enum Node {
    Var,
    Zero,
    One,
    LDiv(Fid, Fid),
    /// numerator, denominator
    RDiv(Fid, Fid),
    Mul(Fid, Fid),
    Meet(Fid, Fid),
    Bang(Fid),
    /// denominator, numerator
    IterLDiv(Fid, Fid),
    /// numerator, denominator
    IterRDiv(Fid, Fid),
}

/// Hash-consed formulas.
#[derive(Default)]
pub(crate) struct Arena {
    nodes: Vec<Node>,
    formulas: Vec<Formula>,
    index: BTreeMap<Formula, Fid>,
}

impl Arena {
    pub fn intern(&mut self, f: &Formula) -> Fid {
        if let Some(&id) = self.index.get(f) {
            return id;
        }
        let node = match f {
            Formula::Var(_) => Node::Var,
            Formula::Zero => Node::Zero,
            Formula::One => Node::One,
            Formula::LDiv(a, b) => Node::LDiv(self.intern(a), self.intern(b)),
            Formula::RDiv(a, b) => Node::RDiv(self.intern(a), self.intern(b)),
            Formula::Mul(a, b) => Node::Mul(self.intern(a), self.intern(b)),
            Formula::Meet(a, b) => Node::Meet(self.intern(a), self.intern(b)),
            Formula::Bang(a) => Node::Bang(self.intern(a)),
            Formula::IterLDiv(a, b) => Node::IterLDiv(self.intern(a), self.intern(b)),
            Formula::IterRDiv(a, b) => Node::IterRDiv(self.intern(a), self.intern(b)),
        };
        let id = self.nodes.len() as Fid;
        self.nodes.push(node);
        self.formulas.push(f.clone());
        self.index.insert(f.clone(), id);
        id
    }

    pub fn node(&self, id: Fid) -> Node {
        self.nodes[id as usize]
    }

    pub fn formula(&self, id: Fid) -> &Formula {
        &self.formulas[id as usize]
    }

    pub fn is_bang(&self, id: Fid) -> bool {
        matches!(self.node(id), Node::Bang(_))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sharing() {
        let mut a = Arena::default();
        let f: Formula = "(p . q)\\(p . q)".parse().unwrap();
        let id = a.intern(&f);
        match a.node(id) {
            Node::LDiv(x, y) => assert_eq!(x, y),
            n => panic!("{:?}", n),
        }
        assert_eq!(a.formula(id), &f);
        assert_eq!(a.intern(&f), id);
    }
}
