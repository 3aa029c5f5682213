//! `RG ≅ ⊕_O M_|O|(R G_x)` for a finite discrete groupoid.

use std::collections::BTreeMap;

use serde::Serialize;

use super::{AlgebraElem, AlgebraError};
use crate::groupoid::{FiniteGroupoid, Isotropy};
use crate::ring::{RingElem, RingSpec};

/// One orbit with representative `x`, objects `y_0 = x, y_1, …` and chosen
/// arrows `t_y : x -> y`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MatrixBlock {
    pub representative: usize,
    pub objects: Vec<usize>,
    pub transversal: Vec<usize>,
    pub isotropy: Isotropy,
}

/// `δ_g ↦ E_{row,col} ⊗ group_element` inside block `block`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct BasisImage {
    pub block: usize,
    pub row: usize,
    pub col: usize,
    pub group_element: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Decomposition {
    pub blocks: Vec<MatrixBlock>,
    /// Indexed by arrow id.
    pub images: Vec<BasisImage>,
}

/// A sparse element of `⊕ M_n(R G_x)`.
pub type MatrixImage = BTreeMap<BasisImage, RingElem>;

fn group_name(iso: &Isotropy) -> String {
    let g = &iso.group;
    let m = g.order();
    let cyclic = (0..m).any(|a| {
        let mut p = a;
        let mut k = 1;
        while p != g.identity() {
            p = g.mul(p, a);
            k += 1;
        }
        k == m
    });
    if cyclic {
        format!("C_{m}")
    } else {
        format!("G_{}(order {m})", iso.object)
    }
}

impl Decomposition {
    /// For example `M_2(Q) ⊕ Q[C_2]`.
    pub fn summary(&self, ring: &RingSpec) -> String {
        if self.blocks.is_empty() {
            return "0".into();
        }
        let parts: Vec<String> = self
            .blocks
            .iter()
            .map(|b| {
                let n = b.objects.len();
                let coeffs = if b.isotropy.group.is_trivial() {
                    ring.to_string()
                } else {
                    format!("{ring}[{}]", group_name(&b.isotropy))
                };
                if n == 1 {
                    coeffs
                } else {
                    format!("M_{n}({coeffs})")
                }
            })
            .collect();
        parts.join(" ⊕ ")
    }

    /// Total rank `Σ |O|² |G_x|`, which equals the number of arrows.
    pub fn dimension(&self) -> usize {
        self.blocks
            .iter()
            .map(|b| b.objects.len().pow(2) * b.isotropy.group.order())
            .sum()
    }

    pub fn apply(&self, f: &AlgebraElem) -> MatrixImage {
        f.support().map(|(g, c)| (self.images[g], c.clone())).collect()
    }

    /// Product in `⊕ M_n(R G_x)`.
    pub fn multiply(&self, x: &MatrixImage, y: &MatrixImage, ring: &RingSpec) -> MatrixImage {
        let mut out: MatrixImage = BTreeMap::new();
        for (p, a) in x {
            for (q, b) in y {
                if p.block != q.block || p.col != q.row {
                    continue;
                }
                let group = &self.blocks[p.block].isotropy.group;
                let key = BasisImage {
                    block: p.block,
                    row: p.row,
                    col: q.col,
                    group_element: group.mul(p.group_element, q.group_element),
                };
                let ab = a.mul_unchecked(b);
                let entry = out.entry(key).or_insert_with(|| ring.zero());
                *entry = entry.add_unchecked(&ab);
            }
        }
        out.retain(|_, c| !c.is_zero());
        out
    }
}

/// Builds the decomposition, taking `t_y` to be the lowest arrow id from the
/// representative to `y`, and verifies that the basis map is bijective and
/// multiplicative on all pairs.
pub fn matrix_decomposition(
    groupoid: &FiniteGroupoid,
    _ring: &RingSpec,
) -> Result<Decomposition, AlgebraError> {
    let orbits = groupoid.orbits();
    let mut blocks = Vec::new();
    let mut slot = vec![(0usize, 0usize); groupoid.object_count()];
    for (bi, block) in orbits.blocks.iter().enumerate() {
        let x = orbits.representatives[bi];
        let transversal: Vec<usize> = block
            .iter()
            .map(|&y| {
                groupoid
                    .arrows_from(x)
                    .iter()
                    .copied()
                    .filter(|&g| groupoid.dst(g) == y)
                    .min()
                    .expect("orbit members are reachable")
            })
            .collect();
        for (i, &y) in block.iter().enumerate() {
            slot[y] = (bi, i);
        }
        blocks.push(MatrixBlock {
            representative: x,
            objects: block.clone(),
            transversal,
            isotropy: groupoid.isotropy_group(x),
        });
    }
    let images: Vec<BasisImage> = (0..groupoid.arrow_count())
        .map(|g| {
            let (y, z) = (groupoid.src(g), groupoid.dst(g));
            let (bi, col) = slot[y];
            let (_, row) = slot[z];
            let b = &blocks[bi];
            let (ty, tz) = (b.transversal[col], b.transversal[row]);
            let loop_at_x = groupoid
                .compose(groupoid.inverse(tz), groupoid.compose(g, ty).unwrap())
                .unwrap();
            let group_element =
                b.isotropy.arrows.iter().position(|&a| a == loop_at_x).unwrap();
            BasisImage { block: bi, row, col, group_element }
        })
        .collect();
    let decomposition = Decomposition { blocks, images };

    let mut sorted = decomposition.images.clone();
    sorted.sort_unstable();
    sorted.dedup();
    if sorted.len() != groupoid.arrow_count() || decomposition.dimension() != sorted.len() {
        return Err(AlgebraError::CheckFailed("basis map is not bijective".into()));
    }
    for g in 0..groupoid.arrow_count() {
        for h in 0..groupoid.arrow_count() {
            let (p, q) = (decomposition.images[g], decomposition.images[h]);
            let meets = p.block == q.block && p.col == q.row;
            match groupoid.compose(g, h) {
                Some(gh) => {
                    let group = &decomposition.blocks[p.block].isotropy.group;
                    let expect = BasisImage {
                        block: p.block,
                        row: p.row,
                        col: q.col,
                        group_element: group.mul(p.group_element, q.group_element),
                    };
                    if !meets || decomposition.images[gh] != expect {
                        return Err(AlgebraError::CheckFailed(format!(
                            "image of δ_{g} δ_{h} is not the matrix product"
                        )));
                    }
                }
                None if meets => {
                    return Err(AlgebraError::CheckFailed(format!(
                        "δ_{g} δ_{h} = 0 but the matrix images multiply to nonzero"
                    )))
                }
                None => {}
            }
        }
    }
    Ok(decomposition)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::FiniteGroup;

    #[test]
    fn summaries() {
        let q = RingSpec::Rationals;
        let d = matrix_decomposition(&FiniteGroupoid::pair(2), &q).unwrap();
        assert_eq!(d.summary(&q), "M_2(Q)");
        assert_eq!(d.dimension(), 4);

        let z2 = FiniteGroupoid::from_group(&FiniteGroup::cyclic(2));
        assert_eq!(matrix_decomposition(&z2, &q).unwrap().summary(&q), "Q[C_2]");

        let u = FiniteGroupoid::disjoint_union(&[&FiniteGroupoid::pair(2), &z2]);
        let d = matrix_decomposition(&u, &q).unwrap();
        assert_eq!(d.summary(&q), "M_2(Q) ⊕ Q[C_2]");
        assert_eq!(d.blocks.len(), 2);

        let s3 = FiniteGroupoid::from_components(&[(2, &FiniteGroup::symmetric(3))]);
        let d = matrix_decomposition(&s3, &RingSpec::IntegersMod(2)).unwrap();
        assert_eq!(d.summary(&RingSpec::IntegersMod(2)), "M_2(Z/2[G_0(order 6)])");
    }
}
