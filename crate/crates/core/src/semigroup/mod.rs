//! Finite inverse semigroups by Cayley table.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::group::{FiniteGroup, GroupError};

pub mod enumerate;
mod munn;
mod universal;

pub use munn::{munn_prime_verdict, munn_semiprime_verdict, replay_obstruction};
pub use universal::{
    semigroup_algebra_iso, semigroup_algebra_iso_with_cap, universal_groupoid, AlgebraIso,
    UniversalGroupoid, DEFAULT_ISO_CAP,
};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SemigroupError {
    #[error("table is not square or is empty")]
    BadShape,
    #[error("entry {value} at ({row}, {col}) is out of range")]
    EntryOutOfRange { row: usize, col: usize, value: usize },
    #[error("not associative: ({0}*{1})*{2} != {0}*({1}*{2})")]
    NotAssociative(usize, usize, usize),
    #[error("element {0} has no inverse")]
    NoInverse(usize),
    #[error("element {0} has inverses {1:?}")]
    NonUniqueInverse(usize, Vec<usize>),
    #[error("declared zero {0} is not a zero element")]
    BadZero(usize),
    #[error("idempotents {0} and {1} do not commute")]
    IdempotentsDoNotCommute(usize, usize),
    #[error("element {0} is not idempotent")]
    NotIdempotent(usize),
    #[error("the semigroup has no zero")]
    NoZero,
    #[error("semigroup of order {order} exceeds the cap {cap}")]
    CapExceeded { order: usize, cap: usize },
    #[error("independent evaluations disagree: {0}")]
    InternalDisagreement(String),
    #[error(transparent)]
    Group(#[from] GroupError),
    #[error(transparent)]
    Groupoid(#[from] crate::groupoid::GroupoidError),
}

/// JSON form: `{"order": m, "table": [[...]], "zero": k | null}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SemigroupData {
    pub order: usize,
    pub table: Vec<Vec<usize>>,
    #[serde(default)]
    pub zero: Option<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InverseSemigroup {
    order: usize,
    table: Vec<usize>,
    inverse: Vec<usize>,
    zero: Option<usize>,
    idempotents: Vec<usize>,
}

/// Idempotents with their natural order and meets.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Semilattice {
    /// Semigroup indices of the idempotents, ascending.
    pub elements: Vec<usize>,
    /// `leq[i][j]` iff `elements[i] <= elements[j]`.
    pub leq: Vec<Vec<bool>>,
    /// `meet[i][j]` is the position of `elements[i] * elements[j]`.
    pub meet: Vec<Vec<usize>>,
    /// Position of the zero, when there is one.
    pub zero: Option<usize>,
}

/// A character of a finite semilattice. Every one is principal: it is the
/// indicator of the filter above its minimum `idempotent`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Character {
    /// Semigroup index of the minimum of the filter.
    pub idempotent: usize,
    /// Semigroup indices of the filter, ascending.
    pub filter: Vec<usize>,
    /// `Some(true)` when it vanishes at zero; `None` without a zero.
    pub proper: Option<bool>,
}

impl InverseSemigroup {
    pub fn from_table(table: &[Vec<usize>], zero: Option<usize>) -> Result<Self, SemigroupError> {
        let m = table.len();
        if m == 0 || table.iter().any(|r| r.len() != m) {
            return Err(SemigroupError::BadShape);
        }
        for (i, row) in table.iter().enumerate() {
            for (j, &v) in row.iter().enumerate() {
                if v >= m {
                    return Err(SemigroupError::EntryOutOfRange { row: i, col: j, value: v });
                }
            }
        }
        let mul = |a: usize, b: usize| table[a][b];
        for i in 0..m {
            for j in 0..m {
                for k in 0..m {
                    if mul(mul(i, j), k) != mul(i, mul(j, k)) {
                        return Err(SemigroupError::NotAssociative(i, j, k));
                    }
                }
            }
        }
        let mut inverse = Vec::with_capacity(m);
        for s in 0..m {
            let cands: Vec<usize> = (0..m)
                .filter(|&t| mul(mul(s, t), s) == s && mul(mul(t, s), t) == t)
                .collect();
            match cands.len() {
                0 => return Err(SemigroupError::NoInverse(s)),
                1 => inverse.push(cands[0]),
                _ => return Err(SemigroupError::NonUniqueInverse(s, cands)),
            }
        }
        let is_zero = |z: usize| (0..m).all(|s| mul(z, s) == z && mul(s, z) == z);
        let zero = match zero {
            Some(z) if z >= m || !is_zero(z) => return Err(SemigroupError::BadZero(z)),
            Some(z) => Some(z),
            None => (0..m).find(|&z| is_zero(z)),
        };
        let idempotents: Vec<usize> = (0..m).filter(|&e| mul(e, e) == e).collect();
        for &e in &idempotents {
            for &f in &idempotents {
                if mul(e, f) != mul(f, e) {
                    return Err(SemigroupError::IdempotentsDoNotCommute(e, f));
                }
            }
        }
        Ok(InverseSemigroup {
            order: m,
            table: table.iter().flatten().copied().collect(),
            inverse,
            zero,
            idempotents,
        })
    }

    pub fn from_data(data: &SemigroupData) -> Result<Self, SemigroupError> {
        if data.table.len() != data.order {
            return Err(SemigroupError::BadShape);
        }
        Self::from_table(&data.table, data.zero)
    }

    pub fn to_data(&self) -> SemigroupData {
        SemigroupData { order: self.order, table: self.table(), zero: self.zero }
    }

    pub fn from_group(g: &FiniteGroup) -> Self {
        Self::from_table(&g.table(), None).expect("groups are inverse semigroups")
    }

    /// Chain `0 < 1 < ... < n-1` under `min`.
    pub fn chain(n: usize) -> Self {
        let t: Vec<Vec<usize>> = (0..n).map(|i| (0..n).map(|j| i.min(j)).collect()).collect();
        Self::from_table(&t, None).expect("chains are semilattices")
    }

    /// Subsets of `0..n` under intersection (the Boolean semilattice of
    /// order `2^n`), indexed by bitmask.
    pub fn boolean(n: u32) -> Self {
        let m = 1usize << n;
        let t: Vec<Vec<usize>> = (0..m).map(|i| (0..m).map(|j| i & j).collect()).collect();
        Self::from_table(&t, None).expect("intersection is a semilattice operation")
    }

    /// The Brandt semigroup of 2×2 matrix units with zero. Elements:
    /// `0 = 0`, `1 = e11`, `2 = e12`, `3 = e21`, `4 = e22`.
    pub fn brandt2() -> Self {
        let unit = [(0usize, 0usize), (0, 1), (1, 0), (1, 1)];
        let idx = |p: (usize, usize)| 1 + unit.iter().position(|&q| q == p).unwrap();
        let t: Vec<Vec<usize>> = (0..5)
            .map(|a| {
                (0..5)
                    .map(|b| {
                        if a == 0 || b == 0 {
                            return 0;
                        }
                        let ((i, j), (k, l)) = (unit[a - 1], unit[b - 1]);
                        if j == k {
                            idx((i, l))
                        } else {
                            0
                        }
                    })
                    .collect()
            })
            .collect();
        Self::from_table(&t, None).expect("matrix units with zero form an inverse semigroup")
    }

    pub fn order(&self) -> usize {
        self.order
    }

    #[inline]
    pub fn mul(&self, s: usize, t: usize) -> usize {
        self.table[s * self.order + t]
    }

    pub fn star(&self, s: usize) -> usize {
        self.inverse[s]
    }

    pub fn zero(&self) -> Option<usize> {
        self.zero
    }

    pub fn table(&self) -> Vec<Vec<usize>> {
        self.table.chunks(self.order).map(<[usize]>::to_vec).collect()
    }

    pub fn idempotents(&self) -> &[usize] {
        &self.idempotents
    }

    pub fn is_idempotent(&self, e: usize) -> bool {
        self.mul(e, e) == e
    }

    pub fn nonzero_idempotents(&self) -> Vec<usize> {
        self.idempotents.iter().copied().filter(|&e| Some(e) != self.zero).collect()
    }

    /// Natural partial order: `s <= t` iff `s = t e` for an idempotent `e`.
    pub fn leq(&self, s: usize, t: usize) -> bool {
        self.idempotents.iter().any(|&e| self.mul(t, e) == s)
    }

    pub fn domain_idempotent(&self, s: usize) -> usize {
        self.mul(self.star(s), s)
    }

    pub fn range_idempotent(&self, s: usize) -> usize {
        self.mul(s, self.star(s))
    }

    pub fn semilattice(&self) -> Semilattice {
        let elements = self.idempotents.clone();
        let pos = |e: usize| elements.iter().position(|&x| x == e).unwrap();
        let k = elements.len();
        let leq = (0..k)
            .map(|i| (0..k).map(|j| self.mul(elements[i], elements[j]) == elements[i]).collect())
            .collect();
        let meet: Vec<Vec<usize>> = (0..k)
            .map(|i| (0..k).map(|j| pos(self.mul(elements[i], elements[j]))).collect())
            .collect();
        for i in 0..k {
            assert_eq!(meet[i][i], i);
            for j in 0..k {
                assert_eq!(meet[i][j], meet[j][i]);
                for l in 0..k {
                    assert_eq!(meet[meet[i][j]][l], meet[i][meet[j][l]]);
                }
            }
        }
        let zero = self.zero.map(pos);
        Semilattice { elements, leq, meet, zero }
    }

    /// Maximal subgroup at `e` together with the semigroup elements that
    /// realise it (group element `i` is `elements[i]`).
    pub fn maximal_subgroup(&self, e: usize) -> Result<(FiniteGroup, Vec<usize>), SemigroupError> {
        if !self.is_idempotent(e) {
            return Err(SemigroupError::NotIdempotent(e));
        }
        let elements: Vec<usize> = (0..self.order)
            .filter(|&s| self.domain_idempotent(s) == e && self.range_idempotent(s) == e)
            .collect();
        let pos = |s: usize| elements.iter().position(|&x| x == s).unwrap();
        let table: Vec<Vec<usize>> = elements
            .iter()
            .map(|&s| elements.iter().map(|&t| pos(self.mul(s, t))).collect())
            .collect();
        Ok((FiniteGroup::from_table(&table)?, elements))
    }

    /// First pair of idempotents `(e, f)`, drawn from `candidates`, with no
    /// `s` such that `s*s = e` and `ss* = f`.
    fn unlinked_pair(&self, candidates: &[usize]) -> Option<(usize, usize)> {
        for &e in candidates {
            for &f in candidates {
                let linked = (0..self.order)
                    .any(|s| self.domain_idempotent(s) == e && self.range_idempotent(s) == f);
                if !linked {
                    return Some((e, f));
                }
            }
        }
        None
    }

    /// `None` when bisimple, otherwise an unlinked pair of idempotents.
    pub fn bisimple_witness(&self) -> Option<(usize, usize)> {
        self.unlinked_pair(&self.idempotents)
    }

    pub fn is_bisimple(&self) -> bool {
        self.bisimple_witness().is_none()
    }

    pub fn zero_bisimple_witness(&self) -> Result<Option<(usize, usize)>, SemigroupError> {
        self.zero.ok_or(SemigroupError::NoZero)?;
        Ok(self.unlinked_pair(&self.nonzero_idempotents()))
    }

    pub fn is_0_bisimple(&self) -> Result<bool, SemigroupError> {
        Ok(self.zero_bisimple_witness()?.is_none())
    }
}

impl Semilattice {
    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    /// All nonzero homomorphisms to `({0, 1}, ·)`, found by enumerating
    /// every 0/1 labelling. Each one is checked to be principal.
    pub fn characters(&self) -> Vec<Character> {
        let k = self.len();
        assert!(k <= 24, "semilattice too large for exhaustive character search");
        let mut out = Vec::new();
        for mask in 1u32..(1 << k) {
            let theta = |i: usize| mask >> i & 1 == 1;
            let hom = (0..k).all(|i| (0..k).all(|j| theta(self.meet[i][j]) == (theta(i) && theta(j))));
            if !hom {
                continue;
            }
            let filter: Vec<usize> = (0..k).filter(|&i| theta(i)).collect();
            let min = filter.iter().copied().reduce(|a, b| self.meet[a][b]).unwrap();
            assert!(theta(min), "meet of a filter stays in the filter");
            assert!(
                (0..k).all(|f| theta(f) == self.leq[min][f]),
                "character is not principal"
            );
            out.push(Character {
                idempotent: self.elements[min],
                filter: filter.iter().map(|&i| self.elements[i]).collect(),
                proper: self.zero.map(|z| !theta(z)),
            });
        }
        out.sort_by_key(|c| c.idempotent);
        out
    }

    /// Literal check: for every `e`, the set strictly below `e` is the lower
    /// set generated by its (finitely many) maximal elements.
    pub fn is_pseudofinite(&self) -> bool {
        let k = self.len();
        (0..k).all(|e| {
            let below: Vec<usize> = (0..k).filter(|&f| f != e && self.leq[f][e]).collect();
            let maximal: Vec<usize> = below
                .iter()
                .copied()
                .filter(|&f| !below.iter().any(|&g| g != f && self.leq[f][g]))
                .collect();
            let generated: Vec<usize> = (0..k)
                .filter(|&f| maximal.iter().any(|&g| self.leq[f][g]))
                .collect();
            generated == below
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn groups_are_inverse_semigroups() {
        let s = InverseSemigroup::from_group(&FiniteGroup::symmetric(3));
        assert_eq!(s.idempotents(), &[0]);
        assert!(s.is_bisimple());
        let (g, _) = s.maximal_subgroup(0).unwrap();
        assert_eq!(g.order(), 6);
    }

    #[test]
    fn two_chain() {
        let s = InverseSemigroup::chain(2);
        assert_eq!(s.zero(), Some(0));
        let e = s.semilattice();
        assert!(e.leq[0][1] && !e.leq[1][0]);
        assert!(!s.is_bisimple());
        assert_eq!(s.bisimple_witness(), Some((0, 1)));
        let chars = e.characters();
        assert_eq!(chars.len(), 2);
        assert_eq!(chars[0].filter, vec![0, 1]);
        assert_eq!(chars[1].filter, vec![1]);
        assert!(e.is_pseudofinite());
        assert!(s.maximal_subgroup(1).unwrap().0.is_trivial());
    }

    #[test]
    fn brandt_semigroup() {
        let b = InverseSemigroup::brandt2();
        assert_eq!(b.order(), 5);
        assert_eq!(b.zero(), Some(0));
        assert_eq!(b.idempotents(), &[0, 1, 4]);
        assert_eq!(b.star(2), 3);
        let e = b.semilattice();
        assert!(e.leq[0][1] && e.leq[0][2] && !e.leq[1][2] && !e.leq[2][1]);
        let chars = e.characters();
        assert_eq!(chars.len(), 3);
        assert_eq!(chars.iter().filter(|c| c.proper == Some(true)).count(), 2);
        assert!(b.is_0_bisimple().unwrap());
        assert!(!b.is_bisimple());
        let (g, elems) = b.maximal_subgroup(1).unwrap();
        assert!(g.is_trivial());
        assert_eq!(elems, vec![1]);
        assert!(e.is_pseudofinite());
    }

    #[test]
    fn boolean_semilattice_is_pseudofinite() {
        let s = InverseSemigroup::boolean(3);
        let e = s.semilattice();
        assert_eq!(e.len(), 8);
        assert!(e.is_pseudofinite());
        assert_eq!(e.characters().len(), 8);
    }

    #[test]
    fn validation_errors() {
        // left-zero band: x*y = x, every element is an inverse of every other
        let t = vec![vec![0, 0], vec![1, 1]];
        assert!(matches!(
            InverseSemigroup::from_table(&t, None),
            Err(SemigroupError::NonUniqueInverse(0, _))
        ));
        let t = vec![vec![0, 1], vec![0, 1]];
        assert!(InverseSemigroup::from_table(&t, None).is_err());
        // null semigroup on {0, 1}: 1*1 = 0, 1 has no inverse
        let t = vec![vec![0, 0], vec![0, 0]];
        assert_eq!(InverseSemigroup::from_table(&t, None), Err(SemigroupError::NoInverse(1)));
        let s = InverseSemigroup::chain(2);
        assert_eq!(
            InverseSemigroup::from_table(&s.table(), Some(1)),
            Err(SemigroupError::BadZero(1))
        );
        let t: Vec<Vec<usize>> = (0..3).map(|x| (0..3).map(|y| (x + 3 - y) % 3).collect()).collect();
        assert!(matches!(
            InverseSemigroup::from_table(&t, None),
            Err(SemigroupError::NotAssociative(..))
        ));
        let z2 = InverseSemigroup::from_group(&FiniteGroup::cyclic(2));
        assert_eq!(z2.maximal_subgroup(1).unwrap_err(), SemigroupError::NotIdempotent(1));
    }

    #[test]
    fn zero_variant_requires_zero() {
        let s = InverseSemigroup::from_group(&FiniteGroup::cyclic(2));
        assert_eq!(s.is_0_bisimple(), Err(SemigroupError::NoZero));
    }
}
