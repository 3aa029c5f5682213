//! Groupoids of germs of inverse semigroup actions, and action groupoids of
//! group actions, on finite discrete spaces.

use std::collections::{BTreeMap, HashMap};

use super::{FiniteGroupoid, GroupoidError};
use crate::group::FiniteGroup;
use crate::semigroup::InverseSemigroup;

/// Transformation groupoid of a group acting on `0..points`; `act[g][x]` is
/// `g·x`. Arrow `(g, x): x -> g·x` is numbered `g * points + x`.
pub fn action_groupoid(
    group: &FiniteGroup,
    points: usize,
    act: &[Vec<usize>],
) -> Result<FiniteGroupoid, GroupoidError> {
    let m = group.order();
    if act.len() != m || act.iter().any(|r| r.len() != points || r.iter().any(|&y| y >= points))
    {
        return Err(GroupoidError::NotAnAction("action table has the wrong shape".into()));
    }
    for x in 0..points {
        if act[group.identity()][x] != x {
            return Err(GroupoidError::NotAnAction(format!("identity moves point {x}")));
        }
        for g in 0..m {
            for h in 0..m {
                if act[g][act[h][x]] != act[group.mul(g, h)][x] {
                    return Err(GroupoidError::NotAnAction(format!(
                        "g={g}, h={h}: g·(h·{x}) != (gh)·{x}"
                    )));
                }
            }
        }
    }
    let arrows: Vec<(usize, usize)> = (0..m * points)
        .map(|i| (i % points, act[i / points][i % points]))
        .collect();
    // (g, h·y) ∘ (h, y) = (gh, y)
    FiniteGroupoid::from_rule(points, &arrows, |a, b| {
        let (g, h, y) = (a / points, b / points, b % points);
        group.mul(g, h) * points + y
    })
}

/// One arrow `[s, x]` of a groupoid of germs.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Germ {
    /// Smallest semigroup element in the class.
    pub rep: usize,
    pub point: usize,
    /// All `s` with `(s, x)` in the class, sorted.
    pub members: Vec<usize>,
}

#[derive(Debug, Clone)]
pub struct GermGroupoid {
    pub groupoid: FiniteGroupoid,
    pub germs: Vec<Germ>,
    lookup: HashMap<(usize, usize), usize>,
}

impl GermGroupoid {
    /// Arrow id of `[s, x]`, if `x` lies in the domain of `s`.
    pub fn arrow_of(&self, s: usize, x: usize) -> Option<usize> {
        self.lookup.get(&(s, x)).copied()
    }
}

fn find(parent: &mut [usize], mut i: usize) -> usize {
    while parent[i] != i {
        parent[i] = parent[parent[i]];
        i = parent[i];
    }
    i
}

/// Groupoid of germs `S ⋉ X` for an action of `S` on `0..points` by partial
/// bijections; `act[s][x]` is `s·x` or `None` outside the domain of `s`.
///
/// Germs are identified by exhaustive search: `(s, x) ~ (t, x)` iff some
/// `u ≤ s, t` has `x` in the domain of `u*u`.
pub fn germ_groupoid(
    semigroup: &InverseSemigroup,
    points: usize,
    act: &[Vec<Option<usize>>],
) -> Result<GermGroupoid, GroupoidError> {
    let m = semigroup.order();
    if act.len() != m
        || act
            .iter()
            .any(|r| r.len() != points || r.iter().flatten().any(|&y| y >= points))
    {
        return Err(GroupoidError::NotAnAction("action table has the wrong shape".into()));
    }
    for (s, row) in act.iter().enumerate() {
        let mut hit = vec![false; points];
        for &y in row.iter().flatten() {
            if std::mem::replace(&mut hit[y], true) {
                return Err(GroupoidError::NotAnAction(format!("{s} is not injective")));
            }
        }
    }
    for s in 0..m {
        for t in 0..m {
            let st = semigroup.mul(s, t);
            for x in 0..points {
                let composed = act[t][x].and_then(|y| act[s][y]);
                if composed != act[st][x] {
                    return Err(GroupoidError::NotAnAction(format!(
                        "s={s}, t={t} at point {x}: s·(t·x) != (st)·x"
                    )));
                }
            }
        }
    }
    for x in 0..points {
        if !semigroup.idempotents().iter().any(|&e| act[e][x].is_some()) {
            return Err(GroupoidError::Degenerate(x));
        }
    }

    // pairs (s, x) with x in dom(s), indexed densely
    let pairs: Vec<(usize, usize)> = (0..points)
        .flat_map(|x| (0..m).filter(move |&s| act[s][x].is_some()).map(move |s| (s, x)))
        .collect();
    let index: HashMap<(usize, usize), usize> =
        pairs.iter().enumerate().map(|(i, &p)| (p, i)).collect();
    let mut parent: Vec<usize> = (0..pairs.len()).collect();
    for (i, &(s, x)) in pairs.iter().enumerate() {
        for &(t, y) in &pairs[i + 1..] {
            if y != x {
                continue;
            }
            let witnessed = (0..m).any(|u| {
                semigroup.leq(u, s)
                    && semigroup.leq(u, t)
                    && act[semigroup.mul(semigroup.star(u), u)][x].is_some()
            });
            if witnessed {
                let (a, b) = (find(&mut parent, i), find(&mut parent, index[&(t, y)]));
                parent[a] = b;
            }
        }
    }
    let mut classes: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
    for i in 0..pairs.len() {
        let r = find(&mut parent, i);
        classes.entry(r).or_default().push(i);
    }
    let mut germs: Vec<Germ> = classes
        .values()
        .map(|members| {
            let mut ss: Vec<usize> = members.iter().map(|&i| pairs[i].0).collect();
            ss.sort_unstable();
            Germ { rep: ss[0], point: pairs[members[0]].1, members: ss }
        })
        .collect();
    germs.sort_by_key(|g| (g.rep, g.point));
    let mut lookup = HashMap::new();
    for (id, g) in germs.iter().enumerate() {
        for &s in &g.members {
            lookup.insert((s, g.point), id);
        }
    }
    let arrows: Vec<(usize, usize)> = germs
        .iter()
        .map(|g| (g.point, act[g.rep][g.point].unwrap()))
        .collect();
    // [s, t·y] ∘ [t, y] = [st, y]
    let groupoid = FiniteGroupoid::from_rule(points, &arrows, |a, b| {
        let (s, t, y) = (germs[a].rep, germs[b].rep, germs[b].point);
        lookup[&(semigroup.mul(s, t), y)]
    })?;
    Ok(GermGroupoid { groupoid, germs, lookup })
}
