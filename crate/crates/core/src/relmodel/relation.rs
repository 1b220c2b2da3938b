use alloc::vec::Vec;
use core::fmt;

/// Largest supported world count.
pub const MAX_WORLDS: usize = 32;

/// A binary relation on `{0, ..., n-1}` as a bit matrix; bit `j` of `rows[i]`
/// is the pair `(i, j)`. Ordering is by `n`, then row words in row order.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Relation {
    n: u8,
    rows: [u32; MAX_WORLDS],
}

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum RelError {
    #[error("relations over {left} and {right} worlds cannot be combined")]
    DimensionMismatch { left: usize, right: usize },
    #[error("pair ({0}, {1}) is outside the world set")]
    OutOfRange(usize, usize),
    #[error("at most {MAX_WORLDS} worlds are supported, got {0}")]
    TooManyWorlds(usize),
}

impl Relation {
    fn check_n(n: usize) {
        assert!(
            (1..=MAX_WORLDS).contains(&n),
            "world count {} out of 1..={}",
            n,
            MAX_WORLDS
        );
    }

    fn mask(n: usize) -> u32 {
        if n == 32 {
            u32::MAX
        } else {
            (1u32 << n) - 1
        }
    }

    pub fn empty(n: usize) -> Relation {
        Self::check_n(n);
        Relation {
            n: n as u8,
            rows: [0; MAX_WORLDS],
        }
    }

    pub fn identity(n: usize) -> Relation {
        let mut r = Relation::empty(n);
        for i in 0..n {
            r.rows[i] = 1 << i;
        }
        r
    }

    pub fn full(n: usize) -> Relation {
        let mut r = Relation::empty(n);
        for i in 0..n {
            r.rows[i] = Self::mask(n);
        }
        r
    }

    pub fn from_pairs(n: usize, pairs: &[(usize, usize)]) -> Result<Relation, RelError> {
        if n == 0 || n > MAX_WORLDS {
            return Err(RelError::TooManyWorlds(n));
        }
        let mut r = Relation::empty(n);
        for &(i, j) in pairs {
            if i >= n || j >= n {
                return Err(RelError::OutOfRange(i, j));
            }
            r.rows[i] |= 1 << j;
        }
        Ok(r)
    }

    /// The relation whose pair `(i, j)` is bit `i * n + j` of `code` (`n <= 8`).
    pub fn from_code(n: usize, code: u64) -> Relation {
        assert!(n <= 8);
        let mut r = Relation::empty(n);
        for i in 0..n {
            r.rows[i] = ((code >> (i * n)) as u32) & Self::mask(n);
        }
        r
    }

    pub fn code(&self) -> u64 {
        let n = self.n();
        assert!(n <= 8);
        (0..n).fold(0u64, |acc, i| acc | ((self.rows[i] as u64) << (i * n)))
    }

    pub fn n(&self) -> usize {
        self.n as usize
    }

    pub fn row(&self, i: usize) -> u32 {
        self.rows[i]
    }

    pub fn contains(&self, i: usize, j: usize) -> bool {
        i < self.n() && j < self.n() && self.rows[i] >> j & 1 == 1
    }

    pub fn insert(&mut self, i: usize, j: usize) {
        assert!(i < self.n() && j < self.n());
        self.rows[i] |= 1 << j;
    }

    pub fn remove(&mut self, i: usize, j: usize) {
        assert!(i < self.n() && j < self.n());
        self.rows[i] &= !(1 << j);
    }

    pub fn pairs(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for i in 0..self.n() {
            for j in 0..self.n() {
                if self.contains(i, j) {
                    out.push((i, j));
                }
            }
        }
        out
    }

    pub fn len(&self) -> usize {
        self.rows.iter().map(|r| r.count_ones() as usize).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.rows.iter().all(|&r| r == 0)
    }

    fn same(&self, other: &Relation) -> Result<(), RelError> {
        if self.n == other.n {
            Ok(())
        } else {
            Err(RelError::DimensionMismatch {
                left: self.n(),
                right: other.n(),
            })
        }
    }

    pub fn is_subset(&self, other: &Relation) -> bool {
        debug_assert_eq!(self.n, other.n);
        self.rows
            .iter()
            .zip(other.rows.iter())
            .all(|(a, b)| a & !b == 0)
    }

    pub fn union(&self, other: &Relation) -> Relation {
        debug_assert_eq!(self.n, other.n);
        let mut r = *self;
        for i in 0..self.n() {
            r.rows[i] |= other.rows[i];
        }
        r
    }

    pub fn intersection(&self, other: &Relation) -> Relation {
        debug_assert_eq!(self.n, other.n);
        let mut r = *self;
        for i in 0..self.n() {
            r.rows[i] &= other.rows[i];
        }
        r
    }

    pub fn converse(&self) -> Relation {
        let mut r = Relation::empty(self.n());
        for (i, j) in self.pairs() {
            r.rows[j] |= 1 << i;
        }
        r
    }

    /// `self ∘ other`: pairs `(x, z)` with `(x, y) ∈ self` and `(y, z) ∈ other`.
    pub fn then(&self, other: &Relation) -> Relation {
        debug_assert_eq!(self.n, other.n);
        let mut r = Relation::empty(self.n());
        for i in 0..self.n() {
            let mut row = self.rows[i];
            let mut acc = 0;
            while row != 0 {
                let j = row.trailing_zeros() as usize;
                acc |= other.rows[j];
                row &= row - 1;
            }
            r.rows[i] = acc;
        }
        r
    }

    /// `self \_U s`: pairs `(y, z) ∈ U` with `(x, y) ∈ self ⇒ (x, z) ∈ s` for all `x`.
    pub fn under(&self, s: &Relation, u: &Relation) -> Relation {
        let n = self.n();
        let mut r = *u;
        for x in 0..n {
            let mut ys = self.rows[x];
            while ys != 0 {
                let y = ys.trailing_zeros() as usize;
                r.rows[y] &= s.rows[x];
                ys &= ys - 1;
            }
        }
        r
    }

    /// `self /_U r`: pairs `(x, y) ∈ U` with `(y, z) ∈ r ⇒ (x, z) ∈ self` for all `z`.
    pub fn over(&self, r: &Relation, u: &Relation) -> Relation {
        let n = self.n();
        let mut out = Relation::empty(n);
        for x in 0..n {
            let mut row = 0;
            for y in 0..n {
                if r.rows[y] & !self.rows[x] == 0 {
                    row |= 1 << y;
                }
            }
            out.rows[x] = row & u.rows[x];
        }
        out
    }

    /// Reflexive-transitive closure.
    pub fn star(&self) -> Relation {
        let n = self.n();
        let mut r = self.union(&Relation::identity(n));
        for k in 0..n {
            for i in 0..n {
                if r.rows[i] >> k & 1 == 1 {
                    r.rows[i] |= r.rows[k];
                }
            }
        }
        r
    }

    pub fn is_transitive(&self) -> bool {
        self.then(self).is_subset(self)
    }

    pub fn is_reflexive(&self) -> bool {
        Relation::identity(self.n()).is_subset(self)
    }

    pub fn is_preorder(&self) -> bool {
        self.is_reflexive() && self.is_transitive()
    }
}

impl fmt::Debug for Relation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Relation(n={}, {:?})", self.n, self.pairs())
    }
}

impl fmt::Display for Relation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (k, (i, j)) in self.pairs().into_iter().enumerate() {
            if k > 0 {
                f.write_str(", ")?;
            }
            write!(f, "({},{})", i, j)?;
        }
        f.write_str("}")
    }
}

/// `r ∘ s`.
pub fn compose(r: &Relation, s: &Relation) -> Result<Relation, RelError> {
    r.same(s)?;
    Ok(r.then(s))
}

/// `r \_U s`.
pub fn residual_left(r: &Relation, s: &Relation, u: &Relation) -> Result<Relation, RelError> {
    r.same(s)?;
    r.same(u)?;
    Ok(r.under(s, u))
}

/// `s /_U r`.
pub fn residual_right(s: &Relation, r: &Relation, u: &Relation) -> Result<Relation, RelError> {
    r.same(s)?;
    r.same(u)?;
    Ok(s.over(r, u))
}

pub fn star(r: &Relation) -> Relation {
    r.star()
}

/// Every relation on `n` worlds in code order (`n <= 4`).
pub fn all_relations(n: usize) -> impl Iterator<Item = Relation> {
    assert!(n <= 4, "exhaustive enumeration is limited to 4 worlds");
    (0u64..(1u64 << (n * n))).map(move |c| Relation::from_code(n, c))
}

/// Transitive relations on `n` worlds in code order.
pub fn transitive_relations(n: usize) -> Vec<Relation> {
    all_relations(n).filter(Relation::is_transitive).collect()
}

/// Reflexive transitive relations on `n` worlds in code order.
pub fn preorders(n: usize) -> Vec<Relation> {
    all_relations(n).filter(Relation::is_preorder).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rel(n: usize, p: &[(usize, usize)]) -> Relation {
        Relation::from_pairs(n, p).unwrap()
    }

    #[test]
    fn composition_examples() {
        assert_eq!(
            compose(&Relation::empty(2), &Relation::full(2)).unwrap(),
            Relation::empty(2)
        );
        assert_eq!(
            compose(&rel(2, &[(0, 1)]), &rel(2, &[(1, 0)])).unwrap(),
            rel(2, &[(0, 0)])
        );
        assert!(compose(&Relation::empty(2), &Relation::empty(3)).is_err());
    }

    #[test]
    fn residual_examples() {
        let full = Relation::full(2);
        for s in all_relations(2) {
            assert_eq!(residual_left(&Relation::empty(2), &s, &full).unwrap(), full);
            assert_eq!(
                residual_right(&s, &Relation::empty(2), &full).unwrap(),
                full
            );
        }
        let r = rel(3, &[(1, 2)]);
        let got = residual_right(&Relation::empty(3), &r, &Relation::full(3)).unwrap();
        let want: Vec<(usize, usize)> = (0..3).flat_map(|x| [0, 2].map(|y| (x, y))).collect();
        assert_eq!(got, rel(3, &want));
    }

    #[test]
    fn star_examples() {
        assert_eq!(Relation::empty(3).star(), Relation::identity(3));
        let chain = rel(3, &[(0, 1), (1, 2)]);
        assert_eq!(
            chain.star(),
            rel(3, &[(0, 0), (1, 1), (2, 2), (0, 1), (1, 2), (0, 2)])
        );
    }

    #[test]
    fn codes_round_trip() {
        for r in all_relations(3) {
            assert_eq!(Relation::from_code(3, r.code()), r);
        }
        assert_eq!(Relation::from_code(1, 1), Relation::identity(1));
    }

    #[test]
    fn thirteen_transitive_relations_on_two_points() {
        let brute = all_relations(2)
            .filter(|r| {
                r.pairs()
                    .iter()
                    .all(|&(x, y)| r.pairs().iter().all(|&(y2, z)| y != y2 || r.contains(x, z)))
            })
            .count();
        assert_eq!(brute, 13);
        assert_eq!(transitive_relations(2).len(), 13);
        assert_eq!(preorders(2).len(), 4);
        assert_eq!(preorders(3).len(), 29);
    }

    #[test]
    fn large_world_counts() {
        let r = Relation::full(32);
        assert_eq!(r.len(), 1024);
        assert_eq!(r.then(&r), r);
        assert_eq!(Relation::identity(32).star(), Relation::identity(32));
    }
}
