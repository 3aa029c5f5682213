use super::{AlgebraHandle, ConvolutionAlgebra};
use crate::groupoid::FiniteGroupoid;
use crate::ring::RingSpec;

/// Checks that the corner `e RG e`, `e = δ_{id_x}`, is spanned by the point
/// masses of the isotropy group at `x` and that convolution there is the
/// group algebra `R G_x`.
pub fn corner_iso_check(groupoid: &FiniteGroupoid, x: usize, ring: &RingSpec) -> bool {
    let alg = ConvolutionAlgebra::new(groupoid.clone(), ring.clone());
    let e = alg.delta(groupoid.identity(x));
    let iso = groupoid.isotropy_group(x);
    for g in 0..groupoid.arrow_count() {
        let corner = e.convolve(&alg.delta(g)).and_then(|v| v.convolve(&e)).unwrap();
        let expected = if iso.arrows.contains(&g) { alg.delta(g) } else { alg.zero() };
        if corner != expected {
            return false;
        }
    }
    let group = &iso.group;
    for (i, &a) in iso.arrows.iter().enumerate() {
        for (j, &b) in iso.arrows.iter().enumerate() {
            let prod = alg.delta(a).convolve(&alg.delta(b)).unwrap();
            if prod != alg.delta(iso.arrows[group.mul(i, j)]) {
                return false;
            }
        }
    }
    e.convolve(&e).unwrap() == e
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::FiniteGroup;

    #[test]
    fn corners() {
        let q = RingSpec::Rationals;
        assert!(corner_iso_check(&FiniteGroupoid::pair(2), 1, &q));
        let z2 = FiniteGroupoid::from_group(&FiniteGroup::cyclic(2));
        assert!(corner_iso_check(&z2, 0, &q));
        let u = FiniteGroupoid::disjoint_union(&[&FiniteGroupoid::pair(2), &z2]);
        assert!(corner_iso_check(&u, 2, &RingSpec::IntegersMod(3)));
        assert_eq!(u.isotropy_group(2).group.order(), 2);
    }
}
