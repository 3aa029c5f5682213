use std::sync::Arc;

use serde::ser::{SerializeMap, Serializer};
use serde::Serialize;

use super::{AlgebraElem, AlgebraError, AlgebraHandle, ConvolutionAlgebra};
use crate::group::{GroupAlgebraObstruction, GroupSpec};
use crate::group::{group_algebra_prime_obstruction, group_algebra_semiprime_obstruction};
use crate::ring::RingElem;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Property {
    Prime,
    Semiprime,
    Primitive,
}

impl Property {
    pub fn key(self) -> &'static str {
        match self {
            Property::Prime => "prime",
            Property::Semiprime => "semiprime",
            Property::Primitive => "primitive",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Method {
    Structural,
    Bruteforce,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct WitnessTerm {
    pub arrow: usize,
    pub coeff: RingElem,
}

/// Elements `a`, `b` with `a * x * b = 0` for every `x`. For semiprimeness
/// `b` is omitted and taken to be `a`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ElementWitness {
    pub a: Vec<WitnessTerm>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub b: Option<Vec<WitnessTerm>>,
}

impl ElementWitness {
    pub fn from_elems(a: &AlgebraElem, b: Option<&AlgebraElem>) -> Self {
        let terms = |x: &AlgebraElem| {
            x.support().map(|(arrow, c)| WitnessTerm { arrow, coeff: c.clone() }).collect()
        };
        ElementWitness { a: terms(a), b: b.map(terms) }
    }

    pub fn elements(
        &self,
        alg: &Arc<ConvolutionAlgebra>,
    ) -> Result<(AlgebraElem, AlgebraElem), AlgebraError> {
        let build = |ts: &[WitnessTerm]| alg.element(ts.iter().map(|t| (t.arrow, t.coeff.clone())));
        let a = build(&self.a)?;
        let b = match &self.b {
            Some(b) => build(b)?,
            None => a.clone(),
        };
        Ok((a, b))
    }

    /// Checks `a, b ≠ 0` and `a * δ_g * b = 0` for every arrow `g`.
    pub fn replay(&self, alg: &Arc<ConvolutionAlgebra>) -> Result<(), AlgebraError> {
        let (a, b) = self.elements(alg)?;
        if a.is_zero() || b.is_zero() {
            return Err(AlgebraError::CheckFailed("witness has a zero factor".into()));
        }
        for g in 0..alg.dimension() {
            if !a.convolve(&alg.delta(g))?.convolve(&b)?.is_zero() {
                return Err(AlgebraError::CheckFailed(format!(
                    "a * δ_{g} * b is nonzero"
                )));
            }
        }
        Ok(())
    }
}

/// The structural reason behind a verdict.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Obstruction {
    /// No arrows: the zero ring is never prime.
    ZeroAlgebra,
    NotADomain,
    NotReduced,
    NotTransitive { orbits: Vec<Vec<usize>> },
    /// The isotropy group algebra at `object` fails; `arrows[i]` realises
    /// group element `i`.
    Isotropy { object: usize, arrows: Vec<usize>, cause: GroupAlgebraObstruction },
    /// Found by exhaustive search; the element witness is the proof.
    Exhaustive,
    /// No element links these idempotents.
    NotBisimple { e: usize, f: usize },
    /// The maximal subgroup at `idempotent` fails; `elements[i]` realises
    /// group element `i`.
    MaximalSubgroup { idempotent: usize, elements: Vec<usize>, cause: GroupAlgebraObstruction },
    /// No vertex is reachable from both.
    NotDownwardDirected { u: usize, v: usize },
    /// A cycle, as an edge list, with no exit.
    CycleWithoutExit { edges: Vec<usize> },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PrimenessVerdict {
    pub property: Property,
    pub holds: bool,
    pub method: Method,
    pub reason: String,
    pub obstruction: Option<Obstruction>,
    pub witness: Option<ElementWitness>,
    /// The chain of facts the decision rests on, in order.
    pub justification: Vec<String>,
}

impl Serialize for PrimenessVerdict {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let mut m = s.serialize_map(Some(6))?;
        m.serialize_entry(self.property.key(), &self.holds)?;
        m.serialize_entry("method", &self.method)?;
        m.serialize_entry("witness", &self.witness)?;
        m.serialize_entry("reason", &self.reason)?;
        m.serialize_entry("obstruction", &self.obstruction)?;
        m.serialize_entry("justification", &self.justification)?;
        m.end()
    }
}

impl PrimenessVerdict {
    pub fn holds(property: Property, method: Method, reason: impl Into<String>) -> Self {
        PrimenessVerdict {
            property,
            holds: true,
            method,
            reason: reason.into(),
            obstruction: None,
            witness: None,
            justification: Vec::new(),
        }
    }

    pub fn fails(
        property: Property,
        method: Method,
        reason: impl Into<String>,
        obstruction: Obstruction,
    ) -> Self {
        PrimenessVerdict {
            holds: false,
            obstruction: Some(obstruction),
            ..PrimenessVerdict::holds(property, method, reason)
        }
    }

    pub fn with_witness(mut self, w: ElementWitness) -> Self {
        self.witness = Some(w);
        self
    }

    pub fn justify(mut self, step: impl Into<String>) -> Self {
        self.justification.push(step.into());
        self
    }

    /// Re-derives a negative verdict on the groupoid algebra it was issued
    /// for: the element witness is checked by convolution and any
    /// groupoid-level obstruction is recomputed. Obstructions that refer to
    /// a semigroup or graph are checked by their own modules.
    pub fn replay(&self, alg: &Arc<ConvolutionAlgebra>) -> Result<(), AlgebraError> {
        if self.holds {
            return Ok(());
        }
        let fail = |msg: &str| Err(AlgebraError::CheckFailed(msg.into()));
        let gpd = alg.groupoid();
        let ring = alg.ring();
        match &self.obstruction {
            Some(Obstruction::ZeroAlgebra) if gpd.arrow_count() != 0 => {
                return fail("algebra is not zero")
            }
            Some(Obstruction::NotADomain) if ring.is_integral_domain() => {
                return fail("ring is a domain")
            }
            Some(Obstruction::NotReduced) if ring.is_reduced() => return fail("ring is reduced"),
            Some(Obstruction::NotTransitive { orbits }) => {
                if orbits.len() < 2 || *orbits != gpd.orbits().blocks {
                    return fail("orbit partition does not match");
                }
            }
            Some(Obstruction::Isotropy { object, arrows, cause }) => {
                let iso = gpd.isotropy_group(*object);
                if iso.arrows != *arrows {
                    return fail("isotropy arrows do not match");
                }
                let group = GroupSpec::Finite(iso.group);
                let again = match self.property {
                    Property::Prime => group_algebra_prime_obstruction(&group, ring),
                    _ => group_algebra_semiprime_obstruction(&group, ring),
                };
                if again.as_ref() != Some(cause) {
                    return fail("isotropy obstruction not reproduced");
                }
            }
            _ => {}
        }
        match &self.witness {
            Some(w) => w.replay(alg),
            None if self.obstruction == Some(Obstruction::ZeroAlgebra) => Ok(()),
            None if self.obstruction.is_none() => fail("negative verdict without a reason"),
            None => Ok(()),
        }
    }
}
