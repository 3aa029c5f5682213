//! Munn's criteria for prime and semiprime inverse semigroup algebras.
//!
//! A finite semilattice is pseudofinite, so both directions of each
//! criterion apply and the verdict is always decided. Each verdict is
//! cross-checked against the structural verdict on the universal groupoid,
//! and any element witness it carries lives in that groupoid's algebra.

use super::universal::universal_groupoid;
use super::{InverseSemigroup, SemigroupError};
use crate::algebra::{
    structural_is_prime, structural_is_semiprime, Method, Obstruction, PrimenessVerdict, Property,
};
use crate::group::{
    group_algebra_prime_obstruction, group_algebra_semiprime_obstruction,
    GroupAlgebraObstruction, GroupSpec,
};
use crate::ring::RingSpec;

const PSEUDOFINITE: &str =
    "E(S) is finite, hence pseudofinite, so the converse direction applies";

fn idempotent_candidates(s: &InverseSemigroup, contracted: bool) -> Result<Vec<usize>, SemigroupError> {
    if contracted {
        s.zero().ok_or(SemigroupError::NoZero)?;
        Ok(s.nonzero_idempotents())
    } else {
        Ok(s.idempotents().to_vec())
    }
}

fn assert_pseudofinite(s: &InverseSemigroup) -> Result<(), SemigroupError> {
    if s.semilattice().is_pseudofinite() {
        Ok(())
    } else {
        Err(SemigroupError::InternalDisagreement("finite semilattice is not pseudofinite".into()))
    }
}

fn subgroup_failure(
    property: Property,
    e: usize,
    elements: Vec<usize>,
    cause: GroupAlgebraObstruction,
) -> PrimenessVerdict {
    let (reason, obstruction) = match cause {
        GroupAlgebraObstruction::NotADomain => {
            ("coefficient ring is not an integral domain".to_string(), Obstruction::NotADomain)
        }
        GroupAlgebraObstruction::NotReduced => {
            ("coefficient ring is not reduced".to_string(), Obstruction::NotReduced)
        }
        cause => (
            format!("the group algebra of the maximal subgroup at idempotent {e} fails"),
            Obstruction::MaximalSubgroup { idempotent: e, elements, cause },
        ),
    };
    PrimenessVerdict::fails(property, Method::Structural, reason, obstruction)
}

/// Attaches the element witness of the groupoid verdict and checks that
/// both verdicts agree.
fn cross_check(
    mut verdict: PrimenessVerdict,
    groupoid_verdict: PrimenessVerdict,
) -> Result<PrimenessVerdict, SemigroupError> {
    if verdict.holds != groupoid_verdict.holds {
        return Err(SemigroupError::InternalDisagreement(format!(
            "semigroup criterion says {}, universal groupoid says {}",
            verdict.holds, groupoid_verdict.holds
        )));
    }
    verdict.witness = groupoid_verdict.witness;
    Ok(verdict.justify("agrees with the structural verdict on the universal groupoid"))
}

/// `RS` (or `R₀S` when `contracted`) is prime iff `S` is (0-)bisimple and
/// `RG` is prime for its maximal subgroup `G`.
pub fn munn_prime_verdict(
    s: &InverseSemigroup,
    ring: &RingSpec,
    contracted: bool,
) -> Result<PrimenessVerdict, SemigroupError> {
    let p = Property::Prime;
    let cands = idempotent_candidates(s, contracted)?;
    assert_pseudofinite(s)?;
    let universal = universal_groupoid(s, contracted)?;
    let groupoid_verdict = structural_is_prime(universal.groupoid(), ring);
    if cands.is_empty() {
        let v = PrimenessVerdict::fails(
            p,
            Method::Structural,
            "the contracted algebra is zero",
            Obstruction::ZeroAlgebra,
        );
        return cross_check(v, groupoid_verdict);
    }
    let unlinked = if contracted { s.zero_bisimple_witness()? } else { s.bisimple_witness() };
    let verdict = if let Some((e, f)) = unlinked {
        PrimenessVerdict::fails(
            p,
            Method::Structural,
            format!("not bisimple: no s with s*s = {e} and ss* = {f}"),
            Obstruction::NotBisimple { e, f },
        )
        .justify(PSEUDOFINITE)
    } else {
        let e = cands[0];
        let (group, elements) = s.maximal_subgroup(e)?;
        match group_algebra_prime_obstruction(&GroupSpec::Finite(group), ring) {
            Some(cause) => subgroup_failure(p, e, elements, cause).justify(PSEUDOFINITE),
            None => PrimenessVerdict::holds(
                p,
                Method::Structural,
                "bisimple with a maximal subgroup whose group algebra is prime",
            )
            .justify("sufficient direction: the principal characters form one dense orbit"),
        }
    };
    cross_check(verdict, groupoid_verdict)
}

/// `RS` (or `R₀S`) is semiprime iff `R G_e` is semiprime for every
/// (nonzero) idempotent `e`.
pub fn munn_semiprime_verdict(
    s: &InverseSemigroup,
    ring: &RingSpec,
    contracted: bool,
) -> Result<PrimenessVerdict, SemigroupError> {
    let p = Property::Semiprime;
    let cands = idempotent_candidates(s, contracted)?;
    assert_pseudofinite(s)?;
    let universal = universal_groupoid(s, contracted)?;
    let groupoid_verdict = structural_is_semiprime(universal.groupoid(), ring);
    for &e in &cands {
        let (group, elements) = s.maximal_subgroup(e)?;
        if let Some(cause) = group_algebra_semiprime_obstruction(&GroupSpec::Finite(group), ring) {
            let v = subgroup_failure(p, e, elements, cause).justify(PSEUDOFINITE);
            return cross_check(v, groupoid_verdict);
        }
    }
    let v = PrimenessVerdict::holds(
        p,
        Method::Structural,
        "every maximal subgroup has a semiprime group algebra",
    )
    .justify("sufficient direction: each principal character is isolated");
    cross_check(v, groupoid_verdict)
}

/// Re-derives a semigroup-level obstruction from the table.
pub fn replay_obstruction(
    s: &InverseSemigroup,
    ring: &RingSpec,
    verdict: &PrimenessVerdict,
) -> Result<(), SemigroupError> {
    let fail = |m: &str| Err(SemigroupError::InternalDisagreement(m.into()));
    match &verdict.obstruction {
        Some(Obstruction::NotBisimple { e, f }) => {
            let linked = (0..s.order())
                .any(|t| s.domain_idempotent(t) == *e && s.range_idempotent(t) == *f);
            if linked || !s.is_idempotent(*e) || !s.is_idempotent(*f) {
                return fail("idempotents are linked");
            }
        }
        Some(Obstruction::MaximalSubgroup { idempotent, elements, cause }) => {
            let (group, els) = s.maximal_subgroup(*idempotent)?;
            let group = GroupSpec::Finite(group);
            let again = match verdict.property {
                Property::Prime => group_algebra_prime_obstruction(&group, ring),
                _ => group_algebra_semiprime_obstruction(&group, ring),
            };
            if els != *elements || again.as_ref() != Some(cause) {
                return fail("maximal subgroup obstruction not reproduced");
            }
        }
        Some(Obstruction::NotADomain) if ring.is_integral_domain() => return fail("domain"),
        Some(Obstruction::NotReduced) if ring.is_reduced() => return fail("reduced"),
        _ => {}
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::ConvolutionAlgebra;
    use crate::group::FiniteGroup;

    #[test]
    fn fixtures() {
        let q = RingSpec::Rationals;
        let b2 = InverseSemigroup::brandt2();
        assert!(munn_prime_verdict(&b2, &q, true).unwrap().holds);
        assert!(!munn_prime_verdict(&b2, &q, false).unwrap().holds);

        let chain = InverseSemigroup::chain(2);
        let v = munn_prime_verdict(&chain, &q, false).unwrap();
        assert!(!v.holds);
        assert!(matches!(v.obstruction, Some(Obstruction::NotBisimple { .. })));
        replay_obstruction(&chain, &q, &v).unwrap();
        let u = universal_groupoid(&chain, false).unwrap();
        v.witness.as_ref().unwrap().replay(&ConvolutionAlgebra::new(u.groupoid().clone(), q.clone())).unwrap();

        let z2 = InverseSemigroup::from_group(&FiniteGroup::cyclic(2));
        let v = munn_prime_verdict(&z2, &q, false).unwrap();
        assert!(!v.holds);
        replay_obstruction(&z2, &q, &v).unwrap();

        let f2 = RingSpec::IntegersMod(2);
        assert!(munn_semiprime_verdict(&b2, &f2, true).unwrap().holds);
        assert!(!munn_semiprime_verdict(&z2, &f2, false).unwrap().holds);
        assert!(!munn_semiprime_verdict(&b2, &RingSpec::IntegersMod(4), false).unwrap().holds);
        assert_eq!(
            munn_prime_verdict(&z2, &q, true).unwrap_err(),
            SemigroupError::NoZero
        );
    }

    #[test]
    fn zero_semigroup_contracted() {
        let zero = InverseSemigroup::chain(1);
        let q = RingSpec::Rationals;
        assert!(!munn_prime_verdict(&zero, &q, true).unwrap().holds);
        assert!(munn_semiprime_verdict(&zero, &q, true).unwrap().holds);
        assert!(munn_prime_verdict(&zero, &q, false).unwrap().holds);
    }
}
