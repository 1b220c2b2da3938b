use alloc::collections::BTreeSet;
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

use super::relation::{all_relations, Relation};
use super::NSModel;

/// Operations a family must be closed under. Residuals are square.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Ops {
    pub compose: bool,
    pub ldiv: bool,
    pub rdiv: bool,
    pub meet: bool,
}

impl Ops {
    pub const ALL: Ops = Ops {
        compose: true,
        ldiv: true,
        rdiv: true,
        meet: true,
    };
    pub const PRODUCT_FREE: Ops = Ops {
        compose: false,
        ldiv: true,
        rdiv: true,
        meet: true,
    };

    pub fn for_product(product_closed: bool) -> Ops {
        if product_closed {
            Ops::ALL
        } else {
            Ops::PRODUCT_FREE
        }
    }

    fn apply(
        self,
        x: &Relation,
        y: &Relation,
        full: &Relation,
        out: &mut Vec<(&'static str, Relation)>,
    ) {
        if self.compose {
            out.push(("compose", x.then(y)));
        }
        if self.ldiv {
            out.push(("\\", x.under(y, full)));
        }
        if self.rdiv {
            out.push(("/", x.over(y, full)));
        }
        if self.meet {
            out.push(("meet", x.intersection(y)));
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Closure {
    /// Sorted, deduplicated closed family.
    Closed(Vec<Relation>),
    Overflow,
}

/// Least superset of `seed` closed under `ops`, unless it exceeds `cap` members.
pub fn close_family(seed: &[Relation], ops: Ops, cap: usize) -> Closure {
    let mut members: Vec<Relation> = Vec::new();
    let mut seen = BTreeSet::new();
    for r in seed {
        if seen.insert(*r) {
            members.push(*r);
        }
    }
    if members.len() > cap {
        return Closure::Overflow;
    }
    let Some(first) = members.first() else {
        return Closure::Closed(members);
    };
    let full = Relation::full(first.n());
    let mut scratch = Vec::new();
    let mut i = 0;
    while i < members.len() {
        for j in 0..=i {
            let (x, y) = (members[i], members[j]);
            scratch.clear();
            ops.apply(&x, &y, &full, &mut scratch);
            ops.apply(&y, &x, &full, &mut scratch);
            for (_, r) in scratch.drain(..) {
                if seen.insert(r) {
                    members.push(r);
                    if members.len() > cap {
                        return Closure::Overflow;
                    }
                }
            }
        }
        i += 1;
    }
    members.sort();
    Closure::Closed(members)
}

/// The member `E` with `E∘R = R∘E = R` for every member `R`.
pub fn find_unit(family: &[Relation]) -> Option<Relation> {
    family
        .iter()
        .find(|e| family.iter().all(|r| e.then(r) == *r && r.then(e) == *r))
        .copied()
}

/// The member included in every member.
pub fn find_zero(family: &[Relation]) -> Option<Relation> {
    family
        .iter()
        .find(|z| family.iter().all(|r| z.is_subset(r)))
        .copied()
}

/// All relations `R` on `e.n() <= 4` worlds with `E∘R∘E = R`. For a preorder
/// `E` these are closed under composition, both residuals and meet, with unit
/// `E` and zero `∅`.
pub fn invariant_family(e: &Relation) -> Vec<Relation> {
    all_relations(e.n())
        .filter(|r| e.then(r).then(e) == *r)
        .collect()
}

/// `R′` on `W × {1,2}`: `(x,i) R′ (y,j)` iff `x R y` and `i <= j`. World
/// `(x, i)` is numbered `2x + (i - 1)`.
pub fn ordered_double(r: &Relation) -> Relation {
    let n = r.n();
    let mut out = Relation::empty(2 * n);
    for (x, y) in r.pairs() {
        for i in 0..2 {
            for j in i..2 {
                out.insert(2 * x + i, 2 * y + j);
            }
        }
    }
    out
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Violation {
    NotClosed {
        op: &'static str,
        left: Relation,
        right: Relation,
        result: Relation,
    },
    UnitNotInFamily,
    UnitLaw {
        member: Relation,
    },
    DiagonalNotInUnit,
    ZeroNotInFamily,
    ZeroNotLeast {
        member: Relation,
    },
    ZeroAbsorption {
        member: Relation,
    },
    UnitMembership {
        member: Relation,
    },
    ValuationOutside {
        var: String,
    },
    WorldCount,
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::NotClosed {
                op,
                left,
                right,
                result,
            } => {
                write!(
                    f,
                    "family not closed: {} {} {} = {} is missing",
                    left, op, right, result
                )
            }
            Violation::UnitNotInFamily => f.write_str("unit is not a member"),
            Violation::UnitLaw { member } => write!(f, "unit is not neutral for {}", member),
            Violation::DiagonalNotInUnit => f.write_str("diagonal is not included in the unit"),
            Violation::ZeroNotInFamily => f.write_str("zero is not a member"),
            Violation::ZeroNotLeast { member } => write!(f, "zero is not below {}", member),
            Violation::ZeroAbsorption { member } => write!(f, "zero does not absorb {}", member),
            Violation::UnitMembership { member } => {
                write!(
                    f,
                    "unit inclusion and diagonal inclusion disagree on {}",
                    member
                )
            }
            Violation::ValuationOutside { var } => {
                write!(f, "valuation of {} is not a member", var)
            }
            Violation::WorldCount => f.write_str("relations over different world counts"),
        }
    }
}

/// Every law of a non-standard model that `m` violates.
pub fn check_model(m: &NSModel) -> Vec<Violation> {
    let mut out = Vec::new();
    let fam = &m.family;
    if fam.iter().any(|r| r.n() != m.n) || m.unit.n() != m.n || m.zero.n() != m.n {
        out.push(Violation::WorldCount);
        return out;
    }
    let members: BTreeSet<Relation> = fam.iter().copied().collect();
    let full = Relation::full(m.n);
    let ops = Ops::for_product(m.product_closed);
    let mut scratch = Vec::new();
    'outer: for x in fam {
        for y in fam {
            scratch.clear();
            ops.apply(x, y, &full, &mut scratch);
            for (op, r) in scratch.drain(..) {
                if !members.contains(&r) {
                    out.push(Violation::NotClosed {
                        op,
                        left: *x,
                        right: *y,
                        result: r,
                    });
                    break 'outer;
                }
            }
        }
    }
    if !members.contains(&m.unit) {
        out.push(Violation::UnitNotInFamily);
    }
    for r in fam {
        if m.unit.then(r) != *r || r.then(&m.unit) != *r {
            out.push(Violation::UnitLaw { member: *r });
        }
    }
    let delta = Relation::identity(m.n);
    if !delta.is_subset(&m.unit) {
        out.push(Violation::DiagonalNotInUnit);
    }
    if !members.contains(&m.zero) {
        out.push(Violation::ZeroNotInFamily);
    }
    for r in fam {
        if !m.zero.is_subset(r) {
            out.push(Violation::ZeroNotLeast { member: *r });
        }
        let (left, right) = (m.zero.then(r), r.then(&m.zero));
        let absorbs = if m.product_closed {
            left == m.zero && right == m.zero
        } else {
            left.is_subset(&m.zero) && right.is_subset(&m.zero)
        };
        if !absorbs {
            out.push(Violation::ZeroAbsorption { member: *r });
        }
        if m.unit.is_subset(r) != delta.is_subset(r) {
            out.push(Violation::UnitMembership { member: *r });
        }
    }
    for (v, r) in &m.valuation {
        if !members.contains(r) {
            out.push(Violation::ValuationOutside { var: v.clone() });
        }
    }
    out
}
