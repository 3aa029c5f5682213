//! The convolution algebra `RG` of a finite discrete groupoid.
//!
//! Elements are finitely supported functions on arrows. With the discrete
//! topology every function is locally constant, so `RG` is free on the point
//! masses `δ_g` and `δ_g * δ_h = δ_{g∘h}` when `g ∘ h` is defined.

use std::collections::BTreeMap;
use std::sync::Arc;

use thiserror::Error;

use crate::groupoid::{Bisection, FiniteGroupoid};
use crate::ring::{RingElem, RingError, RingSpec};

pub mod bruteforce;
mod corner;
mod kernel;
mod matrix;
mod structural;
mod verdict;

pub use bruteforce::{bruteforce_is_prime, bruteforce_is_semiprime, Caps, DEFAULT_MAX_PAIRS};
pub use corner::corner_iso_check;
pub use kernel::ModKernel;
pub use matrix::{matrix_decomposition, BasisImage, Decomposition, MatrixBlock, MatrixImage};
pub use structural::{structural_is_prime, structural_is_semiprime};
pub use verdict::{
    ElementWitness, Method, Obstruction, PrimenessVerdict, Property, WitnessTerm,
};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AlgebraError {
    #[error("operands live in different convolution algebras")]
    MismatchedCarrier,
    #[error("arrow {0} is not an arrow of the groupoid")]
    BadArrow(usize),
    #[error("brute force needs a finite ring Z/n, got {0}")]
    UnsupportedRing(String),
    #[error("search needs {required} candidates but the cap is {cap}")]
    CapExceeded { required: u128, cap: u128 },
    #[error("verification failed: {0}")]
    CheckFailed(String),
    #[error(transparent)]
    Ring(#[from] RingError),
}

/// `RG` for a fixed groupoid and coefficient ring.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConvolutionAlgebra {
    groupoid: FiniteGroupoid,
    ring: RingSpec,
}

/// An element of `RG`: arrow id to nonzero coefficient.
#[derive(Debug, Clone)]
pub struct AlgebraElem {
    carrier: Arc<ConvolutionAlgebra>,
    coeffs: BTreeMap<usize, RingElem>,
}

impl PartialEq for AlgebraElem {
    fn eq(&self, other: &Self) -> bool {
        self.same_carrier(other) && self.coeffs == other.coeffs
    }
}

impl Eq for AlgebraElem {}

impl ConvolutionAlgebra {
    pub fn new(groupoid: FiniteGroupoid, ring: RingSpec) -> Arc<Self> {
        Arc::new(ConvolutionAlgebra { groupoid, ring })
    }

    pub fn groupoid(&self) -> &FiniteGroupoid {
        &self.groupoid
    }

    pub fn ring(&self) -> &RingSpec {
        &self.ring
    }

    pub fn dimension(&self) -> usize {
        self.groupoid.arrow_count()
    }
}

/// Constructors take the shared algebra handle.
pub trait AlgebraHandle {
    fn zero(&self) -> AlgebraElem;
    fn delta(&self, g: usize) -> AlgebraElem;
    fn element(
        &self,
        terms: impl IntoIterator<Item = (usize, RingElem)>,
    ) -> Result<AlgebraElem, AlgebraError>;
    fn indicator(&self, u: &Bisection) -> AlgebraElem;
    /// `χ` of the unit space, the identity of `RG`.
    fn unit(&self) -> AlgebraElem;
}

impl AlgebraHandle for Arc<ConvolutionAlgebra> {
    fn zero(&self) -> AlgebraElem {
        AlgebraElem { carrier: Arc::clone(self), coeffs: BTreeMap::new() }
    }

    fn delta(&self, g: usize) -> AlgebraElem {
        assert!(g < self.dimension(), "arrow {g} out of range");
        let mut coeffs = BTreeMap::new();
        coeffs.insert(g, self.ring.one());
        AlgebraElem { carrier: Arc::clone(self), coeffs }
    }

    fn element(
        &self,
        terms: impl IntoIterator<Item = (usize, RingElem)>,
    ) -> Result<AlgebraElem, AlgebraError> {
        let mut out = self.zero();
        for (g, c) in terms {
            if g >= self.dimension() {
                return Err(AlgebraError::BadArrow(g));
            }
            let prev = out.coeff(g);
            let sum = self.ring.add(&prev, &c)?;
            out.set(g, sum);
        }
        Ok(out)
    }

    fn indicator(&self, u: &Bisection) -> AlgebraElem {
        let coeffs = u.arrows().iter().map(|&g| (g, self.ring.one())).collect();
        AlgebraElem { carrier: Arc::clone(self), coeffs }
    }

    fn unit(&self) -> AlgebraElem {
        self.indicator(&Bisection::units(&self.groupoid))
    }
}

impl AlgebraElem {
    pub fn algebra(&self) -> &Arc<ConvolutionAlgebra> {
        &self.carrier
    }

    fn ring(&self) -> &RingSpec {
        &self.carrier.ring
    }

    fn same_carrier(&self, other: &AlgebraElem) -> bool {
        Arc::ptr_eq(&self.carrier, &other.carrier) || self.carrier == other.carrier
    }

    fn check_carrier(&self, other: &AlgebraElem) -> Result<(), AlgebraError> {
        if self.same_carrier(other) {
            Ok(())
        } else {
            Err(AlgebraError::MismatchedCarrier)
        }
    }

    fn set(&mut self, g: usize, c: RingElem) {
        if c.is_zero() {
            self.coeffs.remove(&g);
        } else {
            self.coeffs.insert(g, c);
        }
    }

    pub fn coeff(&self, g: usize) -> RingElem {
        self.coeffs.get(&g).cloned().unwrap_or_else(|| self.ring().zero())
    }

    pub fn support(&self) -> impl Iterator<Item = (usize, &RingElem)> {
        self.coeffs.iter().map(|(&g, c)| (g, c))
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn add(&self, other: &AlgebraElem) -> Result<AlgebraElem, AlgebraError> {
        self.check_carrier(other)?;
        let mut out = self.clone();
        for (&g, c) in &other.coeffs {
            let s = self.ring().add(&out.coeff(g), c)?;
            out.set(g, s);
        }
        Ok(out)
    }

    pub fn neg(&self) -> AlgebraElem {
        let mut out = self.clone();
        for c in out.coeffs.values_mut() {
            *c = c.neg_unchecked();
        }
        out
    }

    pub fn sub(&self, other: &AlgebraElem) -> Result<AlgebraElem, AlgebraError> {
        self.add(&other.neg())
    }

    pub fn scale(&self, r: &RingElem) -> Result<AlgebraElem, AlgebraError> {
        let mut out = self.carrier.zero();
        for (&g, c) in &self.coeffs {
            out.set(g, self.ring().mul(r, c)?);
        }
        Ok(out)
    }

    /// `(φ * ψ)(g) = Σ_{d(h) = d(g)} φ(g h⁻¹) ψ(h)`.
    pub fn convolve(&self, other: &AlgebraElem) -> Result<AlgebraElem, AlgebraError> {
        self.check_carrier(other)?;
        let gpd = &self.carrier.groupoid;
        let ring = self.ring();
        let mut out = self.carrier.zero();
        if self.is_zero() || other.is_zero() {
            return Ok(out);
        }
        for g in 0..gpd.arrow_count() {
            let mut acc = ring.zero();
            for &h in gpd.arrows_from(gpd.src(g)) {
                let Some(psi) = other.coeffs.get(&h) else { continue };
                let gh = gpd.compose(g, gpd.inverse(h)).expect("d(g) = r(h⁻¹)");
                if let Some(phi) = self.coeffs.get(&gh) {
                    acc = acc.add_unchecked(&phi.mul_unchecked(psi));
                }
            }
            out.set(g, acc);
        }
        Ok(out)
    }

    /// Dense coefficient vector over `Z/n` (residues), for the kernel.
    pub fn to_residues(&self) -> Option<Vec<u32>> {
        let RingSpec::IntegersMod(_) = self.ring() else { return None };
        let mut v = vec![0u32; self.carrier.dimension()];
        for (&g, c) in &self.coeffs {
            let RingElem::Mod { value, .. } = c else { return None };
            v[g] = *value as u32;
        }
        Some(v)
    }

    pub fn from_residues(alg: &Arc<ConvolutionAlgebra>, v: &[u32]) -> AlgebraElem {
        let mut out = alg.zero();
        for (g, &x) in v.iter().enumerate() {
            out.set(g, alg.ring.from_i64(x as i64));
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::FiniteGroup;

    #[test]
    fn point_masses_follow_composition() {
        let alg = ConvolutionAlgebra::new(FiniteGroupoid::pair(2), RingSpec::Rationals);
        let gpd = alg.groupoid().clone();
        for g in 0..4 {
            for h in 0..4 {
                let p = alg.delta(g).convolve(&alg.delta(h)).unwrap();
                match gpd.compose(g, h) {
                    Some(gh) => assert_eq!(p, alg.delta(gh)),
                    None => assert!(p.is_zero()),
                }
            }
        }
    }

    #[test]
    fn group_algebra_square() {
        let ring = RingSpec::Integers;
        let alg = ConvolutionAlgebra::new(FiniteGroupoid::from_group(&FiniteGroup::cyclic(2)), ring.clone());
        let x = alg.delta(0).add(&alg.delta(1)).unwrap();
        let two = ring.from_i64(2);
        let expect = alg.element([(0, two.clone()), (1, two)]).unwrap();
        assert_eq!(x.convolve(&x).unwrap(), expect);
    }

    #[test]
    fn indicators() {
        let alg = ConvolutionAlgebra::new(FiniteGroupoid::pair(2), RingSpec::IntegersMod(3));
        assert!(alg.indicator(&Bisection::empty()).is_zero());
        let one = alg.unit();
        let x = alg.element([(1, RingSpec::IntegersMod(3).from_i64(2)), (2, RingSpec::IntegersMod(3).one())]).unwrap();
        assert_eq!(one.convolve(&x).unwrap(), x);
        assert_eq!(x.convolve(&one).unwrap(), x);
        let u = Bisection::new(alg.groupoid(), [3]).unwrap();
        assert_eq!(alg.indicator(&u), alg.delta(3));
    }

    #[test]
    fn mismatched_carriers() {
        let a = ConvolutionAlgebra::new(FiniteGroupoid::pair(2), RingSpec::Rationals);
        let b = ConvolutionAlgebra::new(FiniteGroupoid::pair(2), RingSpec::Integers);
        assert_eq!(
            a.delta(0).convolve(&b.delta(0)).unwrap_err(),
            AlgebraError::MismatchedCarrier
        );
        // structurally equal carriers are the same algebra
        let c = ConvolutionAlgebra::new(FiniteGroupoid::pair(2), RingSpec::Rationals);
        assert!(a.delta(0).convolve(&c.delta(0)).is_ok());
        assert!(a.element([(9, RingSpec::Rationals.one())]).is_err());
    }
}
