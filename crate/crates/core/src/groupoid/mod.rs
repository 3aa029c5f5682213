//! Finite discrete groupoids.
//!
//! A finite ample groupoid has a finite Hausdorff unit space with a basis of
//! compact open sets, which forces the discrete topology. Every subset is
//! then compact open, "dense" means "everything", effectiveness means all
//! isotropy is trivial, and topological transitivity means a single orbit.
//! The routines below compute these notions from their definitions and the
//! tests check the collapsed forms.
//!
//! Arrows are numbered `0..arrow_count()`. For arrows `g: y -> z` and
//! `h: x -> y` the composite `g ∘ h: x -> z` is defined exactly when
//! `src(g) == dst(h)`.

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::group::{FiniteGroup, GroupError};

mod bisection;
mod germ;

pub use bisection::Bisection;
pub use germ::{action_groupoid, germ_groupoid, Germ, GermGroupoid};

const UNDEFINED: u32 = u32::MAX;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GroupoidError {
    #[error("malformed groupoid data: {0}")]
    BadShape(String),
    #[error("composability violated at ({g}, {h}): {detail}")]
    BadComposability { g: usize, h: usize, detail: &'static str },
    #[error("not associative at ({0}, {1}, {2})")]
    NotAssociative(usize, usize, usize),
    #[error("object {0} has no identity arrow")]
    MissingIdentity(usize),
    #[error("arrow {0} has no inverse")]
    MissingInverse(usize),
    #[error("arrows {0:?} do not form a bisection")]
    NotABisection(Vec<usize>),
    #[error("not an action: {0}")]
    NotAnAction(String),
    #[error("some point lies in no idempotent domain: {0}")]
    Degenerate(usize),
    #[error("independent evaluations disagree: {0}")]
    InternalDisagreement(String),
    #[error(transparent)]
    Group(#[from] GroupError),
}

/// Raw, unvalidated groupoid description. This is also the JSON file format:
/// `{"objects": n, "arrows": [{"src": i, "dst": j}], "compose": [[...]]}`
/// where `compose[g][h]` is the arrow `g ∘ h` or `null`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GroupoidData {
    pub objects: usize,
    pub arrows: Vec<ArrowData>,
    pub compose: Vec<Vec<Option<usize>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub identities: Option<Vec<usize>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub inverses: Option<Vec<usize>>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct ArrowData {
    pub src: usize,
    pub dst: usize,
}

/// A validated finite groupoid.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiniteGroupoid {
    objects: usize,
    src: Vec<usize>,
    dst: Vec<usize>,
    comp: Vec<u32>,
    identity: Vec<usize>,
    inverse: Vec<usize>,
    out_of: Vec<Vec<usize>>,
    into: Vec<Vec<usize>>,
}

/// Isotropy group at an object together with the arrows realising it:
/// group element `i` is arrow `arrows[i]`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Isotropy {
    pub object: usize,
    pub group: FiniteGroup,
    pub arrows: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct OrbitPartition {
    /// Blocks sorted by their smallest object; each block is sorted.
    pub blocks: Vec<Vec<usize>>,
    /// Smallest object of each block.
    pub representatives: Vec<usize>,
    #[serde(skip)]
    pub block_of: Vec<usize>,
}

impl FiniteGroupoid {
    pub fn validate(data: &GroupoidData) -> Result<Self, GroupoidError> {
        let n = data.objects;
        let a = data.arrows.len();
        if a > UNDEFINED as usize {
            return Err(GroupoidError::BadShape("too many arrows".into()));
        }
        for (i, arr) in data.arrows.iter().enumerate() {
            if arr.src >= n || arr.dst >= n {
                return Err(GroupoidError::BadShape(format!(
                    "arrow {i} has an endpoint outside 0..{n}"
                )));
            }
        }
        if data.compose.len() != a || data.compose.iter().any(|r| r.len() != a) {
            return Err(GroupoidError::BadShape(format!(
                "compose must be a {a}x{a} table"
            )));
        }
        let src: Vec<usize> = data.arrows.iter().map(|x| x.src).collect();
        let dst: Vec<usize> = data.arrows.iter().map(|x| x.dst).collect();
        let mut comp = vec![UNDEFINED; a * a];
        for g in 0..a {
            for h in 0..a {
                match (data.compose[g][h], src[g] == dst[h]) {
                    (Some(_), false) => {
                        return Err(GroupoidError::BadComposability {
                            g,
                            h,
                            detail: "composite given for non-matching endpoints",
                        })
                    }
                    (None, true) => {
                        return Err(GroupoidError::BadComposability {
                            g,
                            h,
                            detail: "composite missing for matching endpoints",
                        })
                    }
                    (Some(c), true) => {
                        if c >= a {
                            return Err(GroupoidError::BadShape(format!(
                                "composite {c} out of range"
                            )));
                        }
                        if src[c] != src[h] || dst[c] != dst[g] {
                            return Err(GroupoidError::BadComposability {
                                g,
                                h,
                                detail: "composite has the wrong endpoints",
                            });
                        }
                        comp[g * a + h] = c as u32;
                    }
                    (None, false) => {}
                }
            }
        }
        let mut out_of = vec![Vec::new(); n];
        let mut into = vec![Vec::new(); n];
        for g in 0..a {
            out_of[src[g]].push(g);
            into[dst[g]].push(g);
        }
        let c = |g: usize, h: usize| comp[g * a + h] as usize;
        // f ∘ (g ∘ h) == (f ∘ g) ∘ h over composable triples only
        for g in 0..a {
            for &f in &out_of[dst[g]] {
                for &h in &into[src[g]] {
                    if c(c(f, g), h) != c(f, c(g, h)) {
                        return Err(GroupoidError::NotAssociative(f, g, h));
                    }
                }
            }
        }
        let is_identity_at = |x: usize, i: usize| {
            src[i] == x
                && dst[i] == x
                && into[x].iter().all(|&g| c(i, g) == g)
                && out_of[x].iter().all(|&g| c(g, i) == g)
        };
        let identity: Vec<usize> = match &data.identities {
            Some(ids) => {
                if ids.len() != n {
                    return Err(GroupoidError::BadShape("identities has wrong length".into()));
                }
                for (x, &i) in ids.iter().enumerate() {
                    if i >= a || !is_identity_at(x, i) {
                        return Err(GroupoidError::MissingIdentity(x));
                    }
                }
                ids.clone()
            }
            None => (0..n)
                .map(|x| {
                    into[x]
                        .iter()
                        .copied()
                        .find(|&i| is_identity_at(x, i))
                        .ok_or(GroupoidError::MissingIdentity(x))
                })
                .collect::<Result<_, _>>()?,
        };
        let is_inverse = |g: usize, h: usize| {
            src[h] == dst[g]
                && dst[h] == src[g]
                && c(g, h) == identity[dst[g]]
                && c(h, g) == identity[src[g]]
        };
        let inverse: Vec<usize> = match &data.inverses {
            Some(inv) => {
                if inv.len() != a {
                    return Err(GroupoidError::BadShape("inverses has wrong length".into()));
                }
                for (g, &h) in inv.iter().enumerate() {
                    if h >= a || !is_inverse(g, h) {
                        return Err(GroupoidError::MissingInverse(g));
                    }
                }
                inv.clone()
            }
            None => (0..a)
                .map(|g| {
                    out_of[dst[g]]
                        .iter()
                        .copied()
                        .find(|&h| is_inverse(g, h))
                        .ok_or(GroupoidError::MissingInverse(g))
                })
                .collect::<Result<_, _>>()?,
        };
        Ok(FiniteGroupoid { objects: n, src, dst, comp, identity, inverse, out_of, into })
    }

    /// Builds from arrow endpoints and a composition rule, then validates.
    pub fn from_rule(
        objects: usize,
        arrows: &[(usize, usize)],
        mut rule: impl FnMut(usize, usize) -> usize,
    ) -> Result<Self, GroupoidError> {
        let a = arrows.len();
        let compose = (0..a)
            .map(|g| {
                (0..a)
                    .map(|h| (arrows[g].0 == arrows[h].1).then(|| rule(g, h)))
                    .collect()
            })
            .collect();
        Self::validate(&GroupoidData {
            objects,
            arrows: arrows.iter().map(|&(src, dst)| ArrowData { src, dst }).collect(),
            compose,
            identities: None,
            inverses: None,
        })
    }

    /// Disjoint union of connected pieces `(k, G)`: the pair groupoid on `k`
    /// objects times `G`. Arrow `(i <- j, g)` of a piece is numbered
    /// `offset + (i * k + j) * |G| + g`.
    pub fn from_components(components: &[(usize, &FiniteGroup)]) -> Self {
        let mut arrows = Vec::new();
        let mut labels = Vec::new(); // (piece, dst, src, g)
        let mut obj_offset = 0;
        for (p, &(k, grp)) in components.iter().enumerate() {
            for i in 0..k {
                for j in 0..k {
                    for g in 0..grp.order() {
                        arrows.push((obj_offset + j, obj_offset + i));
                        labels.push((p, i, j, g));
                    }
                }
            }
            obj_offset += k;
        }
        let mut arrow_offset = vec![0; components.len()];
        for p in 1..components.len() {
            let (k, g) = components[p - 1];
            arrow_offset[p] = arrow_offset[p - 1] + k * k * g.order();
        }
        Self::from_rule(obj_offset, &arrows, |x, y| {
            let (p, i, _, g) = labels[x];
            let (_, _, l, h) = labels[y];
            let (k, grp) = components[p];
            arrow_offset[p] + (i * k + l) * grp.order() + grp.mul(g, h)
        })
        .expect("products of pair groupoids and groups are groupoids")
    }

    /// Pair groupoid on `n` objects: exactly one arrow between any two.
    pub fn pair(n: usize) -> Self {
        Self::from_components(&[(n, &FiniteGroup::trivial())])
    }

    /// A group as a one-object groupoid; arrow `i` is group element `i`.
    pub fn from_group(g: &FiniteGroup) -> Self {
        Self::from_components(&[(1, g)])
    }

    /// Only identity arrows on `n` objects.
    pub fn discrete(n: usize) -> Self {
        let t = FiniteGroup::trivial();
        let parts: Vec<(usize, &FiniteGroup)> = (0..n).map(|_| (1, &t)).collect();
        Self::from_components(&parts)
    }

    pub fn disjoint_union(parts: &[&FiniteGroupoid]) -> Self {
        let mut arrows = Vec::new();
        let mut offsets = Vec::new(); // (object offset, arrow offset)
        let (mut ob, mut ar) = (0, 0);
        for p in parts {
            offsets.push((ob, ar));
            for g in 0..p.arrow_count() {
                arrows.push((p.src[g] + ob, p.dst[g] + ob));
            }
            ob += p.objects;
            ar += p.arrow_count();
        }
        let owner: Vec<usize> = parts
            .iter()
            .enumerate()
            .flat_map(|(i, p)| std::iter::repeat_n(i, p.arrow_count()))
            .collect();
        Self::from_rule(ob, &arrows, |g, h| {
            let p = owner[g];
            let off = offsets[p].1;
            parts[p].compose(g - off, h - off).unwrap() + off
        })
        .expect("disjoint union of groupoids is a groupoid")
    }

    /// Renumbers arrows and objects: old arrow `g` becomes `arrow_perm[g]`,
    /// old object `x` becomes `object_perm[x]`. Validates the result.
    pub fn relabel(
        &self,
        arrow_perm: &[usize],
        object_perm: &[usize],
    ) -> Result<Self, GroupoidError> {
        let a = self.arrow_count();
        let mut inv = vec![0; a];
        for (old, &new) in arrow_perm.iter().enumerate() {
            inv[new] = old;
        }
        let arrows: Vec<(usize, usize)> = (0..a)
            .map(|new| {
                let g = inv[new];
                (object_perm[self.src[g]], object_perm[self.dst[g]])
            })
            .collect();
        Self::from_rule(self.objects, &arrows, |g, h| {
            arrow_perm[self.compose(inv[g], inv[h]).unwrap()]
        })
    }

    /// Canonical raw form, including identities and inverses.
    pub fn to_data(&self) -> GroupoidData {
        let a = self.arrow_count();
        GroupoidData {
            objects: self.objects,
            arrows: (0..a).map(|g| ArrowData { src: self.src[g], dst: self.dst[g] }).collect(),
            compose: (0..a).map(|g| (0..a).map(|h| self.compose(g, h)).collect()).collect(),
            identities: Some(self.identity.clone()),
            inverses: Some(self.inverse.clone()),
        }
    }

    pub fn object_count(&self) -> usize {
        self.objects
    }

    pub fn arrow_count(&self) -> usize {
        self.src.len()
    }

    pub fn src(&self, g: usize) -> usize {
        self.src[g]
    }

    pub fn dst(&self, g: usize) -> usize {
        self.dst[g]
    }

    /// `g ∘ h` when `src(g) == dst(h)`.
    #[inline]
    pub fn compose(&self, g: usize, h: usize) -> Option<usize> {
        let c = self.comp[g * self.arrow_count() + h];
        (c != UNDEFINED).then_some(c as usize)
    }

    pub fn identity(&self, x: usize) -> usize {
        self.identity[x]
    }

    pub fn inverse(&self, g: usize) -> usize {
        self.inverse[g]
    }

    pub fn is_identity(&self, g: usize) -> bool {
        self.identity[self.src[g]] == g
    }

    pub fn arrows_from(&self, x: usize) -> &[usize] {
        &self.out_of[x]
    }

    pub fn arrows_to(&self, x: usize) -> &[usize] {
        &self.into[x]
    }

    /// All composable pairs `(g, h, g ∘ h)`.
    pub fn composable_pairs(&self) -> Vec<(usize, usize, usize)> {
        let mut out = Vec::new();
        for h in 0..self.arrow_count() {
            for &g in &self.out_of[self.dst[h]] {
                out.push((g, h, self.compose(g, h).unwrap()));
            }
        }
        out.sort_unstable();
        out
    }

    /// Connected components of the object graph induced by the arrows.
    pub fn orbits(&self) -> OrbitPartition {
        let n = self.objects;
        let mut block_of = vec![usize::MAX; n];
        let mut blocks = Vec::new();
        for start in 0..n {
            if block_of[start] != usize::MAX {
                continue;
            }
            let id = blocks.len();
            let mut block = vec![start];
            block_of[start] = id;
            let mut stack = vec![start];
            while let Some(x) = stack.pop() {
                for &g in &self.out_of[x] {
                    let y = self.dst[g];
                    if block_of[y] == usize::MAX {
                        block_of[y] = id;
                        block.push(y);
                        stack.push(y);
                    }
                }
            }
            block.sort_unstable();
            blocks.push(block);
        }
        let representatives = blocks.iter().map(|b| b[0]).collect();
        OrbitPartition { blocks, representatives, block_of }
    }

    pub fn isotropy_arrows(&self, x: usize) -> Vec<usize> {
        self.out_of[x].iter().copied().filter(|&g| self.dst[g] == x).collect()
    }

    pub fn isotropy_group(&self, x: usize) -> Isotropy {
        let arrows = self.isotropy_arrows(x);
        let index = |g: usize| arrows.iter().position(|&a| a == g).unwrap();
        let table: Vec<Vec<usize>> = arrows
            .iter()
            .map(|&g| arrows.iter().map(|&h| index(self.compose(g, h).unwrap())).collect())
            .collect();
        let group = FiniteGroup::from_table(&table)
            .expect("isotropy of a validated groupoid is a group");
        Isotropy { object: x, group, arrows }
    }

    pub fn is_invariant(&self, set: &BTreeSet<usize>) -> bool {
        set.iter().all(|&x| self.out_of[x].iter().all(|&g| set.contains(&self.dst[g])))
    }

    /// `r(d⁻¹(U))`: the smallest invariant set containing `U`.
    pub fn invariant_saturation(&self, set: &BTreeSet<usize>) -> BTreeSet<usize> {
        let forward: BTreeSet<usize> = (0..self.arrow_count())
            .filter(|&g| set.contains(&self.src[g]))
            .map(|g| self.dst[g])
            .collect();
        debug_assert_eq!(forward, self.saturation_by_range(set));
        forward
    }

    /// `d(r⁻¹(U))`, the mirror-image computation.
    pub fn saturation_by_range(&self, set: &BTreeSet<usize>) -> BTreeSet<usize> {
        (0..self.arrow_count())
            .filter(|&g| set.contains(&self.dst[g]))
            .map(|g| self.src[g])
            .collect()
    }

    pub fn is_effective(&self) -> bool {
        (0..self.objects).all(|x| self.isotropy_arrows(x).len() == 1)
    }

    /// The unit space is nonempty and every two nonempty invariant sets meet.
    pub fn transitivity_by_invariant_sets(&self) -> bool {
        let n = self.objects;
        if n == 0 {
            return false;
        }
        if n <= 12 {
            let sets: Vec<BTreeSet<usize>> = (1u32..(1 << n))
                .map(|mask| (0..n).filter(|&i| mask >> i & 1 == 1).collect())
                .filter(|s| self.is_invariant(s))
                .collect();
            sets.iter().all(|u| sets.iter().all(|v| !u.is_disjoint(v)))
        } else {
            // Each nonempty invariant set contains the saturation of each
            // of its points, so singleton saturations decide the question.
            let sats: Vec<BTreeSet<usize>> =
                (0..n).map(|x| self.invariant_saturation(&BTreeSet::from([x]))).collect();
            sats.iter().all(|u| sats.iter().all(|v| !u.is_disjoint(v)))
        }
    }

    /// `d⁻¹(U) ∩ r⁻¹(V)` is nonempty for all nonempty `U`, `V`. In the
    /// discrete topology singletons are open and the condition is monotone,
    /// so it suffices to find an arrow `x -> y` for every pair.
    pub fn transitivity_by_arrow_sets(&self) -> bool {
        let n = self.objects;
        let mut joined = vec![false; n * n];
        for g in 0..self.arrow_count() {
            joined[self.src[g] * n + self.dst[g]] = true;
        }
        n > 0 && joined.iter().all(|&b| b)
    }

    /// The unit space is not the union of two proper invariant (closed) sets.
    pub fn transitivity_by_invariant_covers(&self) -> bool {
        let n = self.objects;
        if n == 0 {
            return false;
        }
        let all: BTreeSet<usize> = (0..n).collect();
        for x in 0..n {
            // forward closure of {x} under arrows, by fixpoint iteration
            let mut a = BTreeSet::from([x]);
            loop {
                let next: BTreeSet<usize> = a
                    .iter()
                    .flat_map(|&y| self.out_of[y].iter().map(|&g| self.dst[g]))
                    .chain(a.iter().copied())
                    .collect();
                if next == a {
                    break;
                }
                a = next;
            }
            let b: BTreeSet<usize> = all.difference(&a).copied().collect();
            if !b.is_empty() && self.is_invariant(&a) && self.is_invariant(&b) {
                return false;
            }
        }
        true
    }

    /// Topological transitivity, computed three independent ways.
    pub fn is_topologically_transitive(&self) -> Result<bool, GroupoidError> {
        let one = self.transitivity_by_invariant_sets();
        let four = self.transitivity_by_arrow_sets();
        let five = self.transitivity_by_invariant_covers();
        if one != four || four != five {
            return Err(GroupoidError::InternalDisagreement(format!(
                "transitivity: invariant sets {one}, arrow sets {four}, covers {five}"
            )));
        }
        Ok(one)
    }
}
