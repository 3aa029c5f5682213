//! Structural primeness and semiprimeness of `RG` for a finite discrete
//! groupoid `G`.
//!
//! Discretely `RG` is the direct sum over orbits `O` of `M_|O|(R G_x)`, with
//! `x` a representative of `O`. A direct sum of two nonzero rings is never
//! prime, a matrix ring over `A` is prime iff `A` is, and semiprimeness passes
//! through both constructions. What remains are the group-ring criteria of
//! Connell and Passman at each representative.

use super::{
    AlgebraElem, AlgebraHandle, ConvolutionAlgebra, ElementWitness, Method, Obstruction,
    PrimenessVerdict, Property,
};
use crate::group::{
    group_algebra_prime_obstruction, group_algebra_semiprime_obstruction,
    GroupAlgebraObstruction, GroupSpec,
};
use crate::groupoid::{FiniteGroupoid, Isotropy};
use crate::ring::RingSpec;

/// `Σ_{n ∈ N} δ_n` for a subgroup `N` of the isotropy at `iso.object`.
fn subgroup_sum(
    alg: &std::sync::Arc<ConvolutionAlgebra>,
    iso: &Isotropy,
    elements: &[usize],
) -> AlgebraElem {
    let one = alg.ring().one();
    alg.element(elements.iter().map(|&i| (iso.arrows[i], one.clone())))
        .expect("isotropy arrows are arrows")
}

/// Element witness for a failing group-ring criterion at `iso.object`.
fn isotropy_witness(
    gpd: &FiniteGroupoid,
    ring: &RingSpec,
    iso: &Isotropy,
    cause: &GroupAlgebraObstruction,
) -> ElementWitness {
    let alg = ConvolutionAlgebra::new(gpd.clone(), ring.clone());
    let id = alg.delta(gpd.identity(iso.object));
    match cause {
        GroupAlgebraObstruction::NotADomain => {
            let (p, q) = ring.zero_divisor_pair().expect("not a domain");
            ElementWitness::from_elems(
                &id.scale(&p).unwrap(),
                Some(&id.scale(&q).unwrap()),
            )
        }
        GroupAlgebraObstruction::NotReduced => {
            let r = ring.square_zero_element().expect("not reduced");
            ElementWitness::from_elems(&id.scale(&r).unwrap(), None)
        }
        // N̂ * x * (δ_e - δ_n) = 0 because N̂ is central in the corner and
        // absorbs n.
        GroupAlgebraObstruction::FiniteNormalSubgroup { elements } => {
            let n_hat = subgroup_sum(&alg, iso, elements);
            let n0 = *elements.iter().find(|&&i| i != iso.group.identity()).unwrap();
            let b = id.sub(&alg.delta(iso.arrows[n0])).unwrap();
            ElementWitness::from_elems(&n_hat, Some(&b))
        }
        // (cN̂) x (cN̂) = c² |N| x' N̂ = 0 when c|N| = 0.
        GroupAlgebraObstruction::ZeroDivisorOrder { elements, order } => {
            let c = ring.annihilator_of(*order as u64).expect("zero divisor order");
            let a = subgroup_sum(&alg, iso, elements).scale(&c).unwrap();
            ElementWitness::from_elems(&a, None)
        }
    }
}

fn isotropy_reason(cause: &GroupAlgebraObstruction, object: usize) -> String {
    match cause {
        GroupAlgebraObstruction::NotADomain => "coefficient ring is not an integral domain".into(),
        GroupAlgebraObstruction::NotReduced => "coefficient ring is not reduced".into(),
        GroupAlgebraObstruction::FiniteNormalSubgroup { elements } => format!(
            "isotropy group at object {object} has a nontrivial finite normal subgroup of order {}",
            elements.len()
        ),
        GroupAlgebraObstruction::ZeroDivisorOrder { order, .. } => format!(
            "isotropy group at object {object} has a finite normal subgroup of order {order}, a zero divisor in R"
        ),
    }
}

fn isotropy_failure(
    gpd: &FiniteGroupoid,
    ring: &RingSpec,
    property: Property,
    iso: Isotropy,
    cause: GroupAlgebraObstruction,
) -> PrimenessVerdict {
    let witness = isotropy_witness(gpd, ring, &iso, &cause);
    let reason = isotropy_reason(&cause, iso.object);
    let obstruction = match cause {
        GroupAlgebraObstruction::NotADomain => Obstruction::NotADomain,
        GroupAlgebraObstruction::NotReduced => Obstruction::NotReduced,
        cause => Obstruction::Isotropy { object: iso.object, arrows: iso.arrows, cause },
    };
    PrimenessVerdict::fails(property, Method::Structural, reason, obstruction).with_witness(witness)
}

/// Prime iff there is exactly one orbit and `R G_x` is prime at its
/// representative.
pub fn structural_is_prime(groupoid: &FiniteGroupoid, ring: &RingSpec) -> PrimenessVerdict {
    let p = Property::Prime;
    if groupoid.object_count() == 0 {
        return PrimenessVerdict::fails(
            p,
            Method::Structural,
            "the zero algebra is not prime",
            Obstruction::ZeroAlgebra,
        );
    }
    let orbits = groupoid.orbits();
    let x = orbits.representatives[0];
    if !ring.is_integral_domain() {
        return isotropy_failure(groupoid, ring, p, groupoid.isotropy_group(x), GroupAlgebraObstruction::NotADomain)
            .justify("a prime groupoid algebra forces an integral domain of coefficients");
    }
    if orbits.blocks.len() > 1 {
        let y = orbits.representatives[1];
        let alg = ConvolutionAlgebra::new(groupoid.clone(), ring.clone());
        let witness = ElementWitness::from_elems(
            &alg.delta(groupoid.identity(x)),
            Some(&alg.delta(groupoid.identity(y))),
        );
        return PrimenessVerdict::fails(
            p,
            Method::Structural,
            format!("not transitive: {} orbits", orbits.blocks.len()),
            Obstruction::NotTransitive { orbits: orbits.blocks },
        )
        .with_witness(witness)
        .justify("a prime groupoid algebra forces topological transitivity, which is a single orbit here");
    }
    let iso = groupoid.isotropy_group(x);
    let group = GroupSpec::Finite(iso.group.clone());
    let verdict = match group_algebra_prime_obstruction(&group, ring) {
        Some(cause) => isotropy_failure(groupoid, ring, p, iso, cause),
        None => PrimenessVerdict::holds(
            p,
            Method::Structural,
            format!("single orbit and the isotropy group at object {x} is trivial over a domain"),
        ),
    };
    verdict
        .justify("single orbit ⇔ topologically transitive ⇔ the orbit is dense, and every orbit is R-dense")
        .justify(format!(
            "RG ≅ M_{}(R G_{x}), which is prime iff R G_{x} is (Connell)",
            orbits.blocks[0].len()
        ))
}

/// Semiprime iff `R G_x` is semiprime at every orbit representative.
pub fn structural_is_semiprime(groupoid: &FiniteGroupoid, ring: &RingSpec) -> PrimenessVerdict {
    let p = Property::Semiprime;
    let orbits = groupoid.orbits();
    let just = "RG ≅ ⊕ M_|O|(R G_x) over orbits; each block is semiprime iff R G_x is (Passman)";
    for &x in &orbits.representatives {
        let iso = groupoid.isotropy_group(x);
        let group = GroupSpec::Finite(iso.group.clone());
        if let Some(cause) = group_algebra_semiprime_obstruction(&group, ring) {
            return isotropy_failure(groupoid, ring, p, iso, cause).justify(just);
        }
    }
    PrimenessVerdict::holds(
        p,
        Method::Structural,
        format!(
            "R is reduced and no isotropy group over {} orbit(s) has a finite normal subgroup of zero-divisor order",
            orbits.blocks.len()
        ),
    )
    .justify(just)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::FiniteGroup;

    fn replay(v: &PrimenessVerdict, g: &FiniteGroupoid, r: &RingSpec) {
        v.replay(&ConvolutionAlgebra::new(g.clone(), r.clone())).unwrap();
    }

    #[test]
    fn fixtures() {
        let q = RingSpec::Rationals;
        let pair = FiniteGroupoid::pair(2);
        assert!(structural_is_prime(&pair, &q).holds);

        let two = FiniteGroupoid::discrete(2);
        let v = structural_is_prime(&two, &q);
        assert!(!v.holds);
        assert!(matches!(v.obstruction, Some(Obstruction::NotTransitive { .. })));
        replay(&v, &two, &q);

        let z2 = FiniteGroupoid::from_group(&FiniteGroup::cyclic(2));
        let v = structural_is_prime(&z2, &q);
        assert!(!v.holds);
        replay(&v, &z2, &q);
        assert!(structural_is_semiprime(&z2, &q).holds);
        let v = structural_is_semiprime(&z2, &RingSpec::IntegersMod(2));
        assert!(!v.holds);
        replay(&v, &z2, &RingSpec::IntegersMod(2));

        let v = structural_is_semiprime(&pair, &RingSpec::IntegersMod(4));
        assert!(!v.holds);
        replay(&v, &pair, &RingSpec::IntegersMod(4));
        let v = structural_is_prime(&pair, &RingSpec::IntegersMod(6));
        assert_eq!(v.obstruction, Some(Obstruction::NotADomain));
        replay(&v, &pair, &RingSpec::IntegersMod(6));
    }

    #[test]
    fn zero_algebra() {
        let empty = FiniteGroupoid::discrete(0);
        assert!(!structural_is_prime(&empty, &RingSpec::Rationals).holds);
        assert!(structural_is_semiprime(&empty, &RingSpec::Rationals).holds);
    }

    #[test]
    fn connell_witness_on_a_transitive_groupoid() {
        let g = FiniteGroupoid::from_components(&[(2, &FiniteGroup::symmetric(3))]);
        let q = RingSpec::Rationals;
        let v = structural_is_prime(&g, &q);
        assert!(!v.holds);
        replay(&v, &g, &q);
        let z6 = RingSpec::IntegersMod(6);
        let v = structural_is_semiprime(&g, &z6);
        assert!(!v.holds);
        replay(&v, &g, &z6);
    }
}
