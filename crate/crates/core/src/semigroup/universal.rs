//! The universal groupoid of a finite inverse semigroup and the isomorphism
//! `RS ≅ R𝒢(S)` (or `R₀S ≅ R𝒢₀(S)`).

use std::sync::Arc;

use super::{Character, InverseSemigroup, SemigroupError};
use crate::algebra::{AlgebraElem, AlgebraHandle, ConvolutionAlgebra};
use crate::groupoid::{germ_groupoid, FiniteGroupoid, GermGroupoid};
use crate::ring::RingSpec;

pub const DEFAULT_ISO_CAP: usize = 64;

/// `S ⋉ Ê`, with object `i` the character `characters[i]`.
#[derive(Debug, Clone)]
pub struct UniversalGroupoid {
    pub germs: GermGroupoid,
    pub characters: Vec<Character>,
    pub contracted: bool,
}

impl UniversalGroupoid {
    pub fn groupoid(&self) -> &FiniteGroupoid {
        &self.germs.groupoid
    }

    /// The object of the principal character `θ_e`.
    pub fn object_of(&self, e: usize) -> Option<usize> {
        self.characters.iter().position(|c| c.idempotent == e)
    }
}

/// Builds the groupoid of germs of `S` acting on its characters (the proper
/// ones when `contracted`). The action is computed from the definition:
/// `θ ∈ D(s*s)` iff `θ(s*s) = 1`, and `(sθ)(e) = θ(s*es)`.
pub fn universal_groupoid(
    s: &InverseSemigroup,
    contracted: bool,
) -> Result<UniversalGroupoid, SemigroupError> {
    if contracted && s.zero().is_none() {
        return Err(SemigroupError::NoZero);
    }
    let characters: Vec<Character> = s
        .semilattice()
        .characters()
        .into_iter()
        .filter(|c| !contracted || c.proper == Some(true))
        .collect();
    let idempotents = s.idempotents();
    let act: Vec<Vec<Option<usize>>> = (0..s.order())
        .map(|a| {
            let a_star = s.star(a);
            characters
                .iter()
                .map(|theta| {
                    if theta.filter.binary_search(&s.domain_idempotent(a)).is_err() {
                        return None;
                    }
                    let image: Vec<usize> = idempotents
                        .iter()
                        .copied()
                        .filter(|&e| {
                            let conj = s.mul(s.mul(a_star, e), a);
                            theta.filter.binary_search(&conj).is_ok()
                        })
                        .collect();
                    let y = characters
                        .iter()
                        .position(|c| c.filter == image)
                        .expect("the action permutes characters");
                    Some(y)
                })
                .collect()
        })
        .collect();
    let germs = germ_groupoid(s, characters.len(), &act)?;
    Ok(UniversalGroupoid { germs, characters, contracted })
}

/// A verified isomorphism `RS -> R𝒢(S)` with its inverse.
#[derive(Debug, Clone)]
pub struct AlgebraIso {
    pub universal: UniversalGroupoid,
    pub ring: RingSpec,
    /// Semigroup elements spanning the (contracted) algebra, ascending.
    pub basis: Vec<usize>,
    /// `lead[i] = [basis[i], θ_{s*s}]`, the diagonal arrow of the
    /// triangular change of basis.
    pub lead: Vec<usize>,
    /// Basis positions sorted along a linear extension of the natural order.
    pub linear_extension: Vec<usize>,
    /// `forward[arrow][i]`: coefficient of `δ_arrow` in the image of `basis[i]`.
    pub forward: Vec<Vec<i64>>,
    /// `inverse[i][arrow]`: coefficient of `basis[i]` in the preimage of `δ_arrow`.
    pub inverse: Vec<Vec<i64>>,
    algebra: Arc<ConvolutionAlgebra>,
}

impl AlgebraIso {
    pub fn algebra(&self) -> &Arc<ConvolutionAlgebra> {
        &self.algebra
    }

    /// Image of the basis element `s`: `Σ_{θ ∈ D(s*s)} δ_{[s, θ]}`.
    pub fn image(&self, s: usize) -> AlgebraElem {
        match self.basis.iter().position(|&b| b == s) {
            None => self.algebra.zero(),
            Some(i) => self.column(i),
        }
    }

    fn column(&self, i: usize) -> AlgebraElem {
        let ring = self.algebra.ring();
        self.algebra
            .element(
                self.forward
                    .iter()
                    .enumerate()
                    .filter(|(_, row)| row[i] != 0)
                    .map(|(g, row)| (g, ring.from_i64(row[i]))),
            )
            .expect("forward entries index arrows")
    }

    /// Preimage of `δ_g` as integer coefficients on the basis.
    pub fn preimage(&self, g: usize) -> Vec<(usize, i64)> {
        self.inverse
            .iter()
            .enumerate()
            .filter(|(_, row)| row[g] != 0)
            .map(|(i, row)| (self.basis[i], row[g]))
            .collect()
    }
}

pub fn semigroup_algebra_iso(
    s: &InverseSemigroup,
    ring: &RingSpec,
    contracted: bool,
) -> Result<AlgebraIso, SemigroupError> {
    semigroup_algebra_iso_with_cap(s, ring, contracted, DEFAULT_ISO_CAP)
}

/// Materialises `s ↦ χ_{(s, D(s*s))}`, checks it is multiplicative on all
/// pairs, and inverts it by back-substitution along a linear extension of
/// the natural partial order, where it is unitriangular.
pub fn semigroup_algebra_iso_with_cap(
    s: &InverseSemigroup,
    ring: &RingSpec,
    contracted: bool,
    cap: usize,
) -> Result<AlgebraIso, SemigroupError> {
    if s.order() > cap {
        return Err(SemigroupError::CapExceeded { order: s.order(), cap });
    }
    let universal = universal_groupoid(s, contracted)?;
    let disagree = |m: String| Err(SemigroupError::InternalDisagreement(m));
    let gpd = universal.groupoid().clone();
    let arrows = gpd.arrow_count();
    let zero = if contracted { s.zero() } else { None };
    let basis: Vec<usize> = (0..s.order()).filter(|&t| Some(t) != zero).collect();
    let k = basis.len();
    if k != arrows {
        return disagree(format!("{k} basis elements but {arrows} germs"));
    }

    let mut forward = vec![vec![0i64; k]; arrows];
    let mut lead = Vec::with_capacity(k);
    for (i, &t) in basis.iter().enumerate() {
        for (x, theta) in universal.characters.iter().enumerate() {
            if theta.filter.binary_search(&s.domain_idempotent(t)).is_ok() {
                let g = universal.germs.arrow_of(t, x).expect("x lies in D(t*t)");
                forward[g][i] += 1;
            }
        }
        let x = universal.object_of(s.domain_idempotent(t)).expect("principal character");
        lead.push(universal.germs.arrow_of(t, x).expect("θ_{t*t} lies in D(t*t)"));
    }

    // Unitriangularity: the image of t is δ_lead(t) plus terms δ_lead(u), u < t.
    let below = |i: usize| (0..k).filter(|&j| s.leq(basis[j], basis[i])).count();
    let mut linear_extension: Vec<usize> = (0..k).collect();
    linear_extension.sort_by_key(|&i| (below(i), basis[i]));
    let pos_of_lead = |g: usize| lead.iter().position(|&l| l == g);
    for i in 0..k {
        if forward[lead[i]][i] != 1 {
            return disagree(format!("diagonal entry for {} is not 1", basis[i]));
        }
        for (g, row) in forward.iter().enumerate() {
            if row[i] == 0 || g == lead[i] {
                continue;
            }
            match pos_of_lead(g) {
                Some(j) if s.leq(basis[j], basis[i]) && j != i => {}
                _ => return disagree(format!("image of {} is not triangular", basis[i])),
            }
        }
    }

    // ψ(δ_lead(t)) = t - Σ_{g ≠ lead(t)} forward[g][t] ψ(δ_g), processed upward.
    let mut inverse = vec![vec![0i64; arrows]; k];
    for &i in &linear_extension {
        let mut col = vec![0i64; k];
        col[i] = 1;
        for g in 0..arrows {
            let c = forward[g][i];
            if c == 0 || g == lead[i] {
                continue;
            }
            for (r, cr) in col.iter_mut().enumerate() {
                *cr -= c * inverse[r][g];
            }
        }
        for (r, &v) in col.iter().enumerate() {
            inverse[r][lead[i]] = v;
        }
    }
    for a in 0..arrows {
        for b in 0..arrows {
            let fi: i64 = (0..k).map(|i| forward[a][i] * inverse[i][b]).sum();
            if fi != (a == b) as i64 {
                return disagree("forward ∘ inverse is not the identity".into());
            }
        }
    }
    for i in 0..k {
        for j in 0..k {
            let inf: i64 = (0..arrows).map(|g| inverse[i][g] * forward[g][j]).sum();
            if inf != (i == j) as i64 {
                return disagree("inverse ∘ forward is not the identity".into());
            }
        }
    }

    let algebra = ConvolutionAlgebra::new(gpd, ring.clone());
    let iso = AlgebraIso {
        universal,
        ring: ring.clone(),
        basis,
        lead,
        linear_extension,
        forward,
        inverse,
        algebra,
    };
    let images: Vec<AlgebraElem> = (0..k).map(|i| iso.column(i)).collect();
    for (i, &a) in iso.basis.iter().enumerate() {
        for (j, &b) in iso.basis.iter().enumerate() {
            let lhs = images[i].convolve(&images[j]).expect("same carrier");
            if lhs != iso.image(s.mul(a, b)) {
                return disagree(format!("φ({a})φ({b}) != φ({a}{b})"));
            }
        }
    }
    Ok(iso)
}
