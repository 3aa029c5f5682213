//! Finite groups given by Cayley tables, plus the symbolic infinite cyclic
//! group, and the primeness criteria for their group algebras.

use std::collections::{BTreeSet, HashSet, VecDeque};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::ring::RingSpec;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GroupError {
    #[error("table is not square or is empty")]
    BadShape,
    #[error("entry {value} at ({row}, {col}) is out of range")]
    EntryOutOfRange { row: usize, col: usize, value: usize },
    #[error("not associative: ({0}*{1})*{2} != {0}*({1}*{2})")]
    NotAssociative(usize, usize, usize),
    #[error("no identity element")]
    NoIdentity,
    #[error("element {0} has no inverse")]
    NoInverse(usize),
}

/// A certified finite group. Elements are `0..order`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct FiniteGroup {
    order: usize,
    table: Vec<usize>,
    identity: usize,
    inverse: Vec<usize>,
}

impl FiniteGroup {
    /// Validates a multiplication table; `table[i][j]` is `i * j`.
    pub fn from_table(table: &[Vec<usize>]) -> Result<Self, GroupError> {
        let m = table.len();
        if m == 0 || table.iter().any(|r| r.len() != m) {
            return Err(GroupError::BadShape);
        }
        for (i, row) in table.iter().enumerate() {
            for (j, &v) in row.iter().enumerate() {
                if v >= m {
                    return Err(GroupError::EntryOutOfRange { row: i, col: j, value: v });
                }
            }
        }
        for i in 0..m {
            for j in 0..m {
                for k in 0..m {
                    if table[table[i][j]][k] != table[i][table[j][k]] {
                        return Err(GroupError::NotAssociative(i, j, k));
                    }
                }
            }
        }
        let identity = (0..m)
            .find(|&e| (0..m).all(|x| table[e][x] == x && table[x][e] == x))
            .ok_or(GroupError::NoIdentity)?;
        let mut inverse = Vec::with_capacity(m);
        for x in 0..m {
            let y = (0..m)
                .find(|&y| table[x][y] == identity && table[y][x] == identity)
                .ok_or(GroupError::NoInverse(x))?;
            inverse.push(y);
        }
        Ok(FiniteGroup {
            order: m,
            table: table.iter().flatten().copied().collect(),
            identity,
            inverse,
        })
    }

    pub fn trivial() -> Self {
        Self::cyclic(1)
    }

    pub fn cyclic(n: usize) -> Self {
        assert!(n >= 1);
        let t: Vec<Vec<usize>> = (0..n).map(|i| (0..n).map(|j| (i + j) % n).collect()).collect();
        Self::from_table(&t).expect("cyclic table is a group")
    }

    /// The group generated by permutations of `0..degree`, composed right to
    /// left (`(p * q)(i) = p(q(i))`). Element 0 is the identity; the rest are
    /// numbered in breadth-first discovery order.
    pub fn from_permutations(degree: usize, generators: &[Vec<usize>]) -> Self {
        let id: Vec<usize> = (0..degree).collect();
        let mut elems = vec![id.clone()];
        let mut seen: HashSet<Vec<usize>> = HashSet::from([id]);
        let mut queue = VecDeque::from([0usize]);
        while let Some(i) = queue.pop_front() {
            for g in generators {
                let p: Vec<usize> = (0..degree).map(|k| g[elems[i][k]]).collect();
                if seen.insert(p.clone()) {
                    elems.push(p);
                    queue.push_back(elems.len() - 1);
                }
            }
        }
        let index = |p: &Vec<usize>| elems.iter().position(|q| q == p).unwrap();
        let table: Vec<Vec<usize>> = elems
            .iter()
            .map(|p| {
                elems
                    .iter()
                    .map(|q| index(&(0..degree).map(|k| p[q[k]]).collect()))
                    .collect()
            })
            .collect();
        Self::from_table(&table).expect("permutation closure is a group")
    }

    pub fn direct_product(a: &FiniteGroup, b: &FiniteGroup) -> Self {
        let n = a.order * b.order;
        let table: Vec<Vec<usize>> = (0..n)
            .map(|x| {
                (0..n)
                    .map(|y| {
                        let (xa, xb) = (x / b.order, x % b.order);
                        let (ya, yb) = (y / b.order, y % b.order);
                        a.mul(xa, ya) * b.order + b.mul(xb, yb)
                    })
                    .collect()
            })
            .collect();
        Self::from_table(&table).expect("product of groups is a group")
    }

    pub fn symmetric(n: usize) -> Self {
        if n <= 1 {
            return Self::trivial();
        }
        let cycle: Vec<usize> = (0..n).map(|i| (i + 1) % n).collect();
        let mut swap: Vec<usize> = (0..n).collect();
        swap.swap(0, 1);
        Self::from_permutations(n, &[cycle, swap])
    }

    /// Symmetries of the regular `n`-gon, of order `2n`.
    pub fn dihedral(n: usize) -> Self {
        assert!(n >= 3);
        let rot: Vec<usize> = (0..n).map(|i| (i + 1) % n).collect();
        let refl: Vec<usize> = (0..n).map(|i| (n - i) % n).collect();
        Self::from_permutations(n, &[rot, refl])
    }

    /// The quaternion group `{±1, ±i, ±j, ±k}`; index `2u + s` encodes the
    /// unit `u` in `1, i, j, k` and the sign bit `s`.
    pub fn quaternion() -> Self {
        // unit products: (result unit, negate?)
        const UNIT: [[(usize, bool); 4]; 4] = [
            [(0, false), (1, false), (2, false), (3, false)],
            [(1, false), (0, true), (3, false), (2, true)],
            [(2, false), (3, true), (0, true), (1, false)],
            [(3, false), (2, false), (1, true), (0, true)],
        ];
        let table: Vec<Vec<usize>> = (0..8)
            .map(|x| {
                (0..8)
                    .map(|y| {
                        let (u, neg) = UNIT[x / 2][y / 2];
                        let sign = (x % 2) ^ (y % 2) ^ usize::from(neg);
                        2 * u + sign
                    })
                    .collect()
            })
            .collect();
        Self::from_table(&table).expect("quaternion table is a group")
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn identity(&self) -> usize {
        self.identity
    }

    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.table[a * self.order + b]
    }

    pub fn inv(&self, a: usize) -> usize {
        self.inverse[a]
    }

    pub fn is_trivial(&self) -> bool {
        self.order == 1
    }

    pub fn table(&self) -> Vec<Vec<usize>> {
        self.table.chunks(self.order).map(<[usize]>::to_vec).collect()
    }

    /// Smallest subgroup containing `seed`.
    pub fn closure(&self, seed: &BTreeSet<usize>) -> BTreeSet<usize> {
        let mut set = seed.clone();
        set.insert(self.identity);
        let mut frontier: Vec<usize> = set.iter().copied().collect();
        while let Some(x) = frontier.pop() {
            let current: Vec<usize> = set.iter().copied().collect();
            for y in current {
                for z in [self.mul(x, y), self.mul(y, x)] {
                    if set.insert(z) {
                        frontier.push(z);
                    }
                }
            }
        }
        set
    }

    /// All subgroups, sorted by size and then lexicographically.
    pub fn subgroups(&self) -> Vec<Vec<usize>> {
        let trivial: BTreeSet<usize> = BTreeSet::from([self.identity]);
        let mut found: HashSet<BTreeSet<usize>> = HashSet::from([trivial.clone()]);
        let mut queue = vec![trivial];
        while let Some(h) = queue.pop() {
            for g in 0..self.order {
                if h.contains(&g) {
                    continue;
                }
                let mut seed = h.clone();
                seed.insert(g);
                let k = self.closure(&seed);
                // Lagrange: anything else means the closure routine is wrong.
                assert_eq!(self.order % k.len(), 0);
                if found.insert(k.clone()) && k.len() < self.order {
                    queue.push(k);
                }
            }
        }
        let mut out: Vec<Vec<usize>> = found.into_iter().map(|s| s.into_iter().collect()).collect();
        out.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
        out
    }

    pub fn is_normal(&self, subgroup: &[usize]) -> bool {
        let set: HashSet<usize> = subgroup.iter().copied().collect();
        (0..self.order).all(|g| {
            subgroup
                .iter()
                .all(|&n| set.contains(&self.mul(self.mul(g, n), self.inv(g))))
        })
    }

    pub fn normal_subgroups(&self) -> Vec<Vec<usize>> {
        self.subgroups().into_iter().filter(|h| self.is_normal(h)).collect()
    }
}

/// A group whose group algebra is examined: either a finite Cayley table or
/// the infinite cyclic group, which is never materialised.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum GroupSpec {
    Finite(FiniteGroup),
    InfiniteCyclic,
}

/// JSON form of a finite group: `{"order": m, "table": [[...]]}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GroupData {
    pub order: usize,
    pub table: Vec<Vec<usize>>,
}

#[derive(Deserialize)]
#[serde(untagged)]
enum GroupSpecRepr {
    Named(String),
    Table(GroupData),
}

impl GroupSpec {
    pub fn from_data(data: &GroupData) -> Result<Self, GroupError> {
        if data.table.len() != data.order {
            return Err(GroupError::BadShape);
        }
        Ok(GroupSpec::Finite(FiniteGroup::from_table(&data.table)?))
    }
}

/// `{"order": m, "table": [[...]]}` or the string `"InfiniteCyclic"`.
impl Serialize for GroupSpec {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        match self {
            GroupSpec::InfiniteCyclic => s.serialize_str("InfiniteCyclic"),
            GroupSpec::Finite(g) => GroupData { order: g.order(), table: g.table() }.serialize(s),
        }
    }
}

impl<'de> Deserialize<'de> for GroupSpec {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        use serde::de::Error;
        match GroupSpecRepr::deserialize(d)? {
            GroupSpecRepr::Named(n) if n == "InfiniteCyclic" => Ok(GroupSpec::InfiniteCyclic),
            GroupSpecRepr::Named(n) => Err(D::Error::custom(format!("unknown group {n:?}"))),
            GroupSpecRepr::Table(data) => GroupSpec::from_data(&data).map_err(D::Error::custom),
        }
    }
}

/// Why a group algebra fails to be prime or semiprime.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum GroupAlgebraObstruction {
    /// The coefficient ring has zero divisors.
    NotADomain,
    /// The coefficient ring has nonzero nilpotents.
    NotReduced,
    /// A nontrivial finite normal subgroup exists.
    FiniteNormalSubgroup { elements: Vec<usize> },
    /// The order of this finite normal subgroup is a zero divisor in `R`.
    ZeroDivisorOrder { elements: Vec<usize>, order: usize },
}

/// Connell: `RG` is prime iff `R` is a domain and `G` has no nontrivial
/// finite normal subgroup. Returns the obstruction when it is not.
pub fn group_algebra_prime_obstruction(
    group: &GroupSpec,
    ring: &RingSpec,
) -> Option<GroupAlgebraObstruction> {
    if !ring.is_integral_domain() {
        return Some(GroupAlgebraObstruction::NotADomain);
    }
    match group {
        GroupSpec::InfiniteCyclic => None,
        // G itself is a finite normal subgroup, so only the trivial group passes.
        GroupSpec::Finite(g) if g.is_trivial() => None,
        GroupSpec::Finite(g) => {
            let n = g
                .normal_subgroups()
                .into_iter()
                .find(|n| n.len() > 1)
                .expect("a nontrivial group is normal in itself");
            Some(GroupAlgebraObstruction::FiniteNormalSubgroup { elements: n })
        }
    }
}

/// Passman: `RG` is semiprime iff `R` is reduced and no finite normal
/// subgroup has order a zero divisor in `R`.
pub fn group_algebra_semiprime_obstruction(
    group: &GroupSpec,
    ring: &RingSpec,
) -> Option<GroupAlgebraObstruction> {
    if !ring.is_reduced() {
        return Some(GroupAlgebraObstruction::NotReduced);
    }
    match group {
        // Z is torsion free: its only finite subgroup is trivial.
        GroupSpec::InfiniteCyclic => None,
        GroupSpec::Finite(g) => g.normal_subgroups().into_iter().find_map(|n| {
            ring.is_zero_divisor(n.len() as u64).then(|| {
                GroupAlgebraObstruction::ZeroDivisorOrder { order: n.len(), elements: n }
            })
        }),
    }
}

pub fn group_algebra_is_prime(group: &GroupSpec, ring: &RingSpec) -> bool {
    group_algebra_prime_obstruction(group, ring).is_none()
}

pub fn group_algebra_is_semiprime(group: &GroupSpec, ring: &RingSpec) -> bool {
    group_algebra_semiprime_obstruction(group, ring).is_none()
}
