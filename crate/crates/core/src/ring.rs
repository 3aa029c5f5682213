//! Coefficient rings with exact arithmetic.
//!
//! Four families are supported: the integers, the rationals, the residue
//! rings `Z/n`, and Laurent polynomials `B[x, x^-1]` over one of the other
//! three. Elements are kept in a canonical form so that structural equality
//! coincides with ring equality.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::Zero;
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RingError {
    #[error("operand {elem} does not belong to ring {ring}")]
    MismatchedRing { ring: String, elem: String },
    #[error("modulus must be at least 2, got {0}")]
    BadModulus(u64),
    #[error("Laurent rings may not be nested")]
    NestedLaurent,
    #[error("cannot parse ring descriptor {0:?}")]
    Parse(String),
}

/// Descriptor of a commutative coefficient ring.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum RingSpec {
    Integers,
    Rationals,
    IntegersMod(u64),
    Laurent(Box<RingSpec>),
}

/// An element of some [`RingSpec`], in canonical form.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum RingElem {
    Int(BigInt),
    Rat(BigRational),
    Mod { value: u64, modulus: u64 },
    /// Exponent to coefficient, zero coefficients omitted.
    Laurent(BTreeMap<i64, RingElem>),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ArithOp {
    Add,
    Mul,
    Neg,
}

fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u64;
    while d.saturating_mul(d) <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

fn is_squarefree(n: u64) -> bool {
    let mut m = n;
    let mut d = 2u64;
    while d.saturating_mul(d) <= m {
        if m % d == 0 {
            m /= d;
            if m % d == 0 {
                return false;
            }
        }
        d += 1;
    }
    true
}

impl RingSpec {
    pub fn integers_mod(n: u64) -> Result<Self, RingError> {
        if n < 2 {
            return Err(RingError::BadModulus(n));
        }
        Ok(RingSpec::IntegersMod(n))
    }

    pub fn laurent(base: RingSpec) -> Result<Self, RingError> {
        if matches!(base, RingSpec::Laurent(_)) {
            return Err(RingError::NestedLaurent);
        }
        base.validate()?;
        Ok(RingSpec::Laurent(Box::new(base)))
    }

    /// Checks the construction invariants (used for values built by hand).
    pub fn validate(&self) -> Result<(), RingError> {
        match self {
            RingSpec::IntegersMod(n) if *n < 2 => Err(RingError::BadModulus(*n)),
            RingSpec::Laurent(b) if matches!(**b, RingSpec::Laurent(_)) => {
                Err(RingError::NestedLaurent)
            }
            RingSpec::Laurent(b) => b.validate(),
            _ => Ok(()),
        }
    }

    pub fn is_integral_domain(&self) -> bool {
        match self {
            RingSpec::Integers | RingSpec::Rationals => true,
            RingSpec::IntegersMod(n) => is_prime(*n),
            RingSpec::Laurent(b) => b.is_integral_domain(),
        }
    }

    pub fn is_reduced(&self) -> bool {
        match self {
            RingSpec::Integers | RingSpec::Rationals => true,
            RingSpec::IntegersMod(n) => is_squarefree(*n),
            RingSpec::Laurent(b) => b.is_reduced(),
        }
    }

    pub fn is_field(&self) -> bool {
        match self {
            RingSpec::Rationals => true,
            RingSpec::IntegersMod(n) => is_prime(*n),
            _ => false,
        }
    }

    /// Whether multiplication by the image of `m` is non-injective.
    ///
    /// Every ring here is nonzero, so an `m` that maps to zero counts.
    pub fn is_zero_divisor(&self, m: u64) -> bool {
        debug_assert!(m >= 1);
        match self {
            RingSpec::Integers | RingSpec::Rationals => m == 0,
            RingSpec::IntegersMod(n) => m.gcd(n) > 1,
            RingSpec::Laurent(b) => b.is_zero_divisor(m),
        }
    }

    /// Number of elements, if finite.
    pub fn cardinality(&self) -> Option<u64> {
        match self {
            RingSpec::IntegersMod(n) => Some(*n),
            _ => None,
        }
    }

    pub fn zero(&self) -> RingElem {
        self.from_i64(0)
    }

    pub fn one(&self) -> RingElem {
        self.from_i64(1)
    }

    /// Image of an integer under the unique unital map `Z -> R`.
    pub fn from_i64(&self, k: i64) -> RingElem {
        match self {
            RingSpec::Integers => RingElem::Int(BigInt::from(k)),
            RingSpec::Rationals => RingElem::Rat(BigRational::from_integer(BigInt::from(k))),
            RingSpec::IntegersMod(n) => RingElem::Mod {
                value: (k as i128).rem_euclid(*n as i128) as u64,
                modulus: *n,
            },
            RingSpec::Laurent(b) => RingElem::laurent_from_terms([(0, b.from_i64(k))]),
        }
    }

    /// The monomial `c x^e` of a Laurent ring.
    pub fn monomial(&self, coeff: RingElem, exponent: i64) -> Result<RingElem, RingError> {
        match self {
            RingSpec::Laurent(b) => {
                b.check(&coeff)?;
                Ok(RingElem::laurent_from_terms([(exponent, coeff)]))
            }
            _ => Err(RingError::MismatchedRing {
                ring: self.to_string(),
                elem: format!("monomial x^{exponent}"),
            }),
        }
    }

    pub fn contains(&self, elem: &RingElem) -> bool {
        match (self, elem) {
            (RingSpec::Integers, RingElem::Int(_)) => true,
            (RingSpec::Rationals, RingElem::Rat(_)) => true,
            (RingSpec::IntegersMod(n), RingElem::Mod { value, modulus }) => {
                n == modulus && value < n
            }
            (RingSpec::Laurent(b), RingElem::Laurent(terms)) => terms
                .values()
                .all(|c| b.contains(c) && !c.is_zero()),
            _ => false,
        }
    }

    fn check(&self, elem: &RingElem) -> Result<(), RingError> {
        if self.contains(elem) {
            Ok(())
        } else {
            Err(RingError::MismatchedRing {
                ring: self.to_string(),
                elem: elem.to_string(),
            })
        }
    }

    pub fn arith(
        &self,
        op: ArithOp,
        a: &RingElem,
        b: &RingElem,
    ) -> Result<RingElem, RingError> {
        self.check(a)?;
        match op {
            ArithOp::Neg => Ok(a.neg_unchecked()),
            ArithOp::Add => {
                self.check(b)?;
                Ok(a.add_unchecked(b))
            }
            ArithOp::Mul => {
                self.check(b)?;
                Ok(a.mul_unchecked(b))
            }
        }
    }

    pub fn add(&self, a: &RingElem, b: &RingElem) -> Result<RingElem, RingError> {
        self.arith(ArithOp::Add, a, b)
    }

    pub fn mul(&self, a: &RingElem, b: &RingElem) -> Result<RingElem, RingError> {
        self.arith(ArithOp::Mul, a, b)
    }

    pub fn neg(&self, a: &RingElem) -> Result<RingElem, RingError> {
        self.arith(ArithOp::Neg, a, a)
    }

    pub fn sub(&self, a: &RingElem, b: &RingElem) -> Result<RingElem, RingError> {
        self.add(a, &self.neg(b)?)
    }

    /// A pair of nonzero elements with zero product, when one exists.
    pub fn zero_divisor_pair(&self) -> Option<(RingElem, RingElem)> {
        match self {
            RingSpec::Integers | RingSpec::Rationals => None,
            RingSpec::IntegersMod(n) => {
                let p = smallest_prime_factor(*n);
                if p == *n {
                    None
                } else {
                    Some((self.from_i64(p as i64), self.from_i64((*n / p) as i64)))
                }
            }
            RingSpec::Laurent(b) => {
                let (x, y) = b.zero_divisor_pair()?;
                Some((
                    RingElem::laurent_from_terms([(0, x)]),
                    RingElem::laurent_from_terms([(0, y)]),
                ))
            }
        }
    }

    /// A nonzero element squaring to zero, when the ring is not reduced.
    pub fn square_zero_element(&self) -> Option<RingElem> {
        match self {
            RingSpec::Integers | RingSpec::Rationals => None,
            RingSpec::IntegersMod(n) => {
                let mut d = 2u64;
                while d * d <= *n {
                    if n % (d * d) == 0 {
                        return Some(self.from_i64((n / d) as i64));
                    }
                    d += 1;
                }
                None
            }
            RingSpec::Laurent(b) => b
                .square_zero_element()
                .map(|c| RingElem::laurent_from_terms([(0, c)])),
        }
    }

    /// A nonzero `c` with `c * m = 0`, when `m` is a zero divisor.
    pub fn annihilator_of(&self, m: u64) -> Option<RingElem> {
        match self {
            RingSpec::Integers | RingSpec::Rationals => None,
            RingSpec::IntegersMod(n) => {
                let g = m.gcd(n);
                (g > 1).then(|| self.from_i64((n / g) as i64))
            }
            RingSpec::Laurent(b) => b
                .annihilator_of(m)
                .map(|c| RingElem::laurent_from_terms([(0, c)])),
        }
    }
}

fn smallest_prime_factor(n: u64) -> u64 {
    let mut d = 2u64;
    while d * d <= n {
        if n % d == 0 {
            return d;
        }
        d += 1;
    }
    n
}

impl RingElem {
    fn laurent_from_terms(terms: impl IntoIterator<Item = (i64, RingElem)>) -> RingElem {
        RingElem::Laurent(terms.into_iter().filter(|(_, c)| !c.is_zero()).collect())
    }

    pub fn is_zero(&self) -> bool {
        match self {
            RingElem::Int(v) => v.is_zero(),
            RingElem::Rat(v) => v.is_zero(),
            RingElem::Mod { value, .. } => *value == 0,
            RingElem::Laurent(t) => t.is_empty(),
        }
    }

    // The `_unchecked` operations assume both operands live in the same ring.

    pub(crate) fn neg_unchecked(&self) -> RingElem {
        match self {
            RingElem::Int(v) => RingElem::Int(-v),
            RingElem::Rat(v) => RingElem::Rat(-v),
            RingElem::Mod { value, modulus } => RingElem::Mod {
                value: (modulus - value) % modulus,
                modulus: *modulus,
            },
            RingElem::Laurent(t) => {
                RingElem::Laurent(t.iter().map(|(e, c)| (*e, c.neg_unchecked())).collect())
            }
        }
    }

    pub(crate) fn add_unchecked(&self, other: &RingElem) -> RingElem {
        match (self, other) {
            (RingElem::Int(a), RingElem::Int(b)) => RingElem::Int(a + b),
            (RingElem::Rat(a), RingElem::Rat(b)) => RingElem::Rat(a + b),
            (RingElem::Mod { value: a, modulus }, RingElem::Mod { value: b, .. }) => {
                RingElem::Mod {
                    value: ((*a as u128 + *b as u128) % *modulus as u128) as u64,
                    modulus: *modulus,
                }
            }
            (RingElem::Laurent(a), RingElem::Laurent(b)) => {
                let mut out = a.clone();
                for (e, c) in b {
                    match out.get(e) {
                        Some(prev) => {
                            let s = prev.add_unchecked(c);
                            if s.is_zero() {
                                out.remove(e);
                            } else {
                                out.insert(*e, s);
                            }
                        }
                        None => {
                            out.insert(*e, c.clone());
                        }
                    }
                }
                RingElem::Laurent(out)
            }
            _ => unreachable!("operands from different rings"),
        }
    }

    pub(crate) fn mul_unchecked(&self, other: &RingElem) -> RingElem {
        match (self, other) {
            (RingElem::Int(a), RingElem::Int(b)) => RingElem::Int(a * b),
            (RingElem::Rat(a), RingElem::Rat(b)) => RingElem::Rat(a * b),
            (RingElem::Mod { value: a, modulus }, RingElem::Mod { value: b, .. }) => {
                RingElem::Mod {
                    value: ((*a as u128 * *b as u128) % *modulus as u128) as u64,
                    modulus: *modulus,
                }
            }
            (RingElem::Laurent(a), RingElem::Laurent(b)) => {
                let mut out: BTreeMap<i64, RingElem> = BTreeMap::new();
                for (ea, ca) in a {
                    for (eb, cb) in b {
                        let term = ca.mul_unchecked(cb);
                        let e = ea + eb;
                        let next = match out.get(&e) {
                            Some(prev) => prev.add_unchecked(&term),
                            None => term,
                        };
                        out.insert(e, next);
                    }
                }
                out.retain(|_, c| !c.is_zero());
                RingElem::Laurent(out)
            }
            _ => unreachable!("operands from different rings"),
        }
    }
}

impl fmt::Display for RingSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RingSpec::Integers => write!(f, "Z"),
            RingSpec::Rationals => write!(f, "Q"),
            RingSpec::IntegersMod(n) => write!(f, "Z/{n}"),
            RingSpec::Laurent(b) => write!(f, "Laurent({b})"),
        }
    }
}

impl FromStr for RingSpec {
    type Err = RingError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let t = s.trim();
        let err = || RingError::Parse(s.to_string());
        match t {
            "Z" => Ok(RingSpec::Integers),
            "Q" => Ok(RingSpec::Rationals),
            _ => {
                if let Some(n) = t.strip_prefix("Z/") {
                    let n: u64 = n.trim().parse().map_err(|_| err())?;
                    RingSpec::integers_mod(n)
                } else if let Some(inner) =
                    t.strip_prefix("Laurent(").and_then(|r| r.strip_suffix(')'))
                {
                    RingSpec::laurent(inner.parse()?)
                } else {
                    Err(err())
                }
            }
        }
    }
}

impl Serialize for RingSpec {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for RingSpec {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

impl fmt::Display for RingElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RingElem::Int(v) => write!(f, "{v}"),
            RingElem::Rat(v) => write!(f, "{v}"),
            RingElem::Mod { value, .. } => write!(f, "{value}"),
            RingElem::Laurent(t) if t.is_empty() => write!(f, "0"),
            RingElem::Laurent(t) => {
                let mut first = true;
                for (e, c) in t {
                    if !first {
                        write!(f, " + ")?;
                    }
                    first = false;
                    match *e {
                        0 => write!(f, "{c}")?,
                        1 => write!(f, "({c})x")?,
                        _ => write!(f, "({c})x^{e}")?,
                    }
                }
                Ok(())
            }
        }
    }
}

impl Serialize for RingElem {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rat(n: i64, d: i64) -> RingElem {
        RingElem::Rat(BigRational::new(BigInt::from(n), BigInt::from(d)))
    }

    #[test]
    fn mod_six_product_vanishes() {
        let r = RingSpec::IntegersMod(6);
        assert_eq!(r.mul(&r.from_i64(2), &r.from_i64(3)).unwrap(), r.zero());
    }

    #[test]
    fn fraction_sum() {
        let q = RingSpec::Rationals;
        assert_eq!(q.add(&rat(1, 2), &rat(1, 3)).unwrap(), rat(5, 6));
    }

    #[test]
    fn laurent_exponents_cancel() {
        let l = RingSpec::laurent(RingSpec::Integers).unwrap();
        let one = RingSpec::Integers.one();
        let x = l.monomial(one.clone(), 1).unwrap();
        let xinv = l.monomial(one, -1).unwrap();
        assert_eq!(l.mul(&x, &xinv).unwrap(), l.one());
    }

    #[test]
    fn laurent_sum_drops_zero_terms() {
        let l = RingSpec::laurent(RingSpec::IntegersMod(3)).unwrap();
        let x = l.monomial(RingSpec::IntegersMod(3).one(), 2).unwrap();
        let s = l.add(&x, &l.add(&x, &x).unwrap()).unwrap();
        assert!(s.is_zero());
        assert_eq!(s, l.zero());
    }

    #[test]
    fn mismatched_operands_rejected() {
        let z6 = RingSpec::IntegersMod(6);
        let z5 = RingSpec::IntegersMod(5);
        let err = z6.add(&z6.one(), &z5.one()).unwrap_err();
        assert!(matches!(err, RingError::MismatchedRing { .. }));
        assert!(RingSpec::Integers.mul(&RingSpec::Integers.one(), &rat(1, 2)).is_err());
    }

    #[test]
    fn domain_and_reduced_predicates() {
        assert!(!RingSpec::IntegersMod(6).is_integral_domain());
        assert!(RingSpec::IntegersMod(5).is_integral_domain());
        assert!(RingSpec::laurent(RingSpec::Integers).unwrap().is_integral_domain());
        assert!(!RingSpec::IntegersMod(4).is_reduced());
        assert!(RingSpec::IntegersMod(6).is_reduced());
        assert!(RingSpec::laurent(RingSpec::Rationals).unwrap().is_reduced());
    }

    #[test]
    fn zero_divisor_images() {
        assert!(RingSpec::IntegersMod(6).is_zero_divisor(2));
        assert!(RingSpec::IntegersMod(3).is_zero_divisor(3));
        assert!(!RingSpec::Rationals.is_zero_divisor(2));
        assert!(!RingSpec::Integers.is_zero_divisor(7));
        assert!(!RingSpec::IntegersMod(5).is_zero_divisor(1));
    }

    #[test]
    fn parse_and_display_round_trip() {
        for s in ["Z", "Q", "Z/6", "Laurent(Z)", "Laurent(Z/4)"] {
            let r: RingSpec = s.parse().unwrap();
            assert_eq!(r.to_string(), s);
        }
        assert_eq!(" Z/7 ".parse::<RingSpec>().unwrap(), RingSpec::IntegersMod(7));
        assert!(matches!(
            "Laurent(Laurent(Z))".parse::<RingSpec>(),
            Err(RingError::NestedLaurent)
        ));
        assert!(matches!("Z/1".parse::<RingSpec>(), Err(RingError::BadModulus(1))));
        assert!("R".parse::<RingSpec>().is_err());
        assert!(RingSpec::laurent(RingSpec::laurent(RingSpec::Integers).unwrap()).is_err());
    }

    #[test]
    fn witnesses_for_failures() {
        let z12 = RingSpec::IntegersMod(12);
        let (a, b) = z12.zero_divisor_pair().unwrap();
        assert!(!a.is_zero() && !b.is_zero());
        assert!(z12.mul(&a, &b).unwrap().is_zero());
        let r = z12.square_zero_element().unwrap();
        assert!(!r.is_zero() && z12.mul(&r, &r).unwrap().is_zero());
        let c = z12.annihilator_of(8).unwrap();
        assert!(z12.mul(&c, &z12.from_i64(8)).unwrap().is_zero());
        assert!(RingSpec::IntegersMod(7).zero_divisor_pair().is_none());
        assert!(RingSpec::IntegersMod(6).square_zero_element().is_none());
    }

    /// Exhaustive search is the reference for the closed-form predicates.
    #[test]
    fn small_moduli_agree_with_exhaustive_search() {
        for n in 2..=30u64 {
            let r = RingSpec::IntegersMod(n);
            let has_zd = (1..n).any(|a| (1..n).any(|b| (a * b) % n == 0));
            let has_nil = (1..n).any(|a| {
                let mut p = a;
                (0..n).any(|_| {
                    p = (p * a) % n;
                    p == 0
                })
            });
            assert_eq!(r.is_integral_domain(), !has_zd, "n = {n}");
            assert_eq!(r.is_reduced(), !has_nil, "n = {n}");
            for m in 1..=2 * n {
                let non_injective = (0..n).any(|x| x != 0 && (m * x) % n == 0);
                assert_eq!(r.is_zero_divisor(m), non_injective, "m = {m}, n = {n}");
            }
        }
    }
}
