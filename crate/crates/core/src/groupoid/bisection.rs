use std::collections::BTreeSet;

use rand::Rng;

use super::{FiniteGroupoid, GroupoidError};

/// A set of arrows on which both `src` and `dst` are injective.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Bisection {
    arrows: BTreeSet<usize>,
}

impl Bisection {
    pub fn new(
        groupoid: &FiniteGroupoid,
        arrows: impl IntoIterator<Item = usize>,
    ) -> Result<Self, GroupoidError> {
        let arrows: BTreeSet<usize> = arrows.into_iter().collect();
        let mut srcs = BTreeSet::new();
        let mut dsts = BTreeSet::new();
        for &g in &arrows {
            if g >= groupoid.arrow_count()
                || !srcs.insert(groupoid.src(g))
                || !dsts.insert(groupoid.dst(g))
            {
                return Err(GroupoidError::NotABisection(arrows.into_iter().collect()));
            }
        }
        Ok(Bisection { arrows })
    }

    pub fn empty() -> Self {
        Bisection { arrows: BTreeSet::new() }
    }

    /// The unit of the inverse monoid: every identity arrow.
    pub fn units(groupoid: &FiniteGroupoid) -> Self {
        Bisection {
            arrows: (0..groupoid.object_count()).map(|x| groupoid.identity(x)).collect(),
        }
    }

    /// A random bisection, built by scanning arrows in random order and
    /// keeping those whose endpoints are still free.
    pub fn random<R: Rng>(groupoid: &FiniteGroupoid, rng: &mut R) -> Self {
        let mut order: Vec<usize> = (0..groupoid.arrow_count()).collect();
        for i in (1..order.len()).rev() {
            order.swap(i, rng.gen_range(0..=i));
        }
        let keep = rng.gen_range(0..=groupoid.object_count());
        let mut srcs = BTreeSet::new();
        let mut dsts = BTreeSet::new();
        let mut arrows = BTreeSet::new();
        for g in order {
            if arrows.len() == keep {
                break;
            }
            if !srcs.contains(&groupoid.src(g)) && !dsts.contains(&groupoid.dst(g)) {
                srcs.insert(groupoid.src(g));
                dsts.insert(groupoid.dst(g));
                arrows.insert(g);
            }
        }
        Bisection { arrows }
    }

    pub fn arrows(&self) -> &BTreeSet<usize> {
        &self.arrows
    }

    pub fn is_empty(&self) -> bool {
        self.arrows.is_empty()
    }

    /// `UV = {u ∘ v : d(u) = r(v)}`.
    pub fn compose(&self, other: &Bisection, groupoid: &FiniteGroupoid) -> Bisection {
        let arrows = self
            .arrows
            .iter()
            .flat_map(|&u| other.arrows.iter().filter_map(move |&v| groupoid.compose(u, v)))
            .collect();
        let out = Bisection { arrows };
        debug_assert!(Bisection::new(groupoid, out.arrows.iter().copied()).is_ok());
        out
    }

    /// `U* = {u⁻¹ : u ∈ U}`.
    pub fn star(&self, groupoid: &FiniteGroupoid) -> Bisection {
        Bisection { arrows: self.arrows.iter().map(|&u| groupoid.inverse(u)).collect() }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::FiniteGroup;

    #[test]
    fn arrow_times_inverse_is_identity() {
        let g = FiniteGroupoid::pair(2);
        // arrow 1 is 0 <- 1 (from object 1 to object 0)
        let u = Bisection::new(&g, [1]).unwrap();
        let v = u.star(&g);
        assert_eq!(u.compose(&v, &g).arrows(), &BTreeSet::from([g.identity(0)]));
    }

    #[test]
    fn units_are_neutral() {
        let g = FiniteGroupoid::from_components(&[(2, &FiniteGroup::cyclic(2))]);
        let e = Bisection::units(&g);
        let v = Bisection::new(&g, [3, 4]).unwrap();
        assert_eq!(e.compose(&v, &g), v);
        assert_eq!(v.compose(&e, &g), v);
    }

    #[test]
    fn disjoint_endpoints_compose_to_empty() {
        let g = FiniteGroupoid::discrete(2);
        let u = Bisection::new(&g, [0]).unwrap();
        let v = Bisection::new(&g, [1]).unwrap();
        assert!(u.compose(&v, &g).is_empty());
    }

    #[test]
    fn non_bisections_rejected() {
        let g = FiniteGroupoid::from_group(&FiniteGroup::cyclic(2));
        assert!(Bisection::new(&g, [0, 1]).is_err());
        assert!(Bisection::new(&g, [5]).is_err());
    }
}
