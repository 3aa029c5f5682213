//! Exhaustive primeness and semiprimeness tests over `Z/n`.
//!
//! `x ↦ a * x * b` is linear and the point masses span `RG`, so `a RG b = 0`
//! iff `a * δ_g * b = 0` for every arrow `g`. Candidates are residue vectors
//! read as base-`n` numerals with arrow 0 the least significant digit; the
//! canonical witness is the first one in that order. Over a field, only
//! vectors whose lowest nonzero coordinate is 1 are tried, since scaling
//! does not change whether a pair annihilates.

use std::sync::Arc;

use super::kernel::ModKernel;
use super::{
    AlgebraElem, AlgebraError, ConvolutionAlgebra, ElementWitness, Method, Obstruction,
    PrimenessVerdict, Property,
};
use crate::groupoid::FiniteGroupoid;
use crate::par::{find_map_first, ExecMode};
use crate::ring::RingSpec;

pub const DEFAULT_MAX_PAIRS: u128 = 1 << 24;

const MIDDLE_FACTORS: &str =
    "point masses span the algebra and x ↦ a*x*b is linear, so testing x = δ_g suffices";

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Caps {
    /// Budget on candidate pairs (prime) or candidate elements (semiprime).
    pub max_pairs: u128,
    pub mode: ExecMode,
}

impl Default for Caps {
    fn default() -> Self {
        Caps { max_pairs: DEFAULT_MAX_PAIRS, mode: ExecMode::default() }
    }
}

struct Candidates {
    n: u32,
    len: usize,
    field: bool,
}

impl Candidates {
    fn new(ring: &RingSpec, len: usize) -> Result<Self, AlgebraError> {
        match ring {
            RingSpec::IntegersMod(n) if *n <= u16::MAX as u64 => {
                Ok(Candidates { n: *n as u32, len, field: ring.is_field() })
            }
            _ => Err(AlgebraError::UnsupportedRing(ring.to_string())),
        }
    }

    fn total(&self) -> u128 {
        (self.n as u128).saturating_pow(self.len as u32)
    }

    fn count(&self) -> u128 {
        let t = self.total() - 1;
        if self.field {
            t / (self.n as u128 - 1)
        } else {
            t
        }
    }

    /// Digits of `idx`; `false` if the vector is zero or pruned.
    fn decode(&self, mut idx: u64, out: &mut [u32]) -> bool {
        let n = self.n as u64;
        for d in out.iter_mut() {
            *d = (idx % n) as u32;
            idx /= n;
        }
        match out.iter().find(|&&d| d != 0) {
            None => false,
            Some(&lead) => !self.field || lead == 1,
        }
    }

    fn all(&self) -> Vec<Vec<u32>> {
        (1..self.total() as u64)
            .filter_map(|i| {
                let mut buf = vec![0u32; self.len];
                self.decode(i, &mut buf).then_some(buf)
            })
            .collect()
    }
}

fn check_cap(required: u128, cap: u128) -> Result<(), AlgebraError> {
    if required > cap {
        Err(AlgebraError::CapExceeded { required, cap })
    } else {
        Ok(())
    }
}

fn witness_elem(gpd: &FiniteGroupoid, ring: &RingSpec, v: &[u32]) -> (Arc<ConvolutionAlgebra>, AlgebraElem) {
    let alg = ConvolutionAlgebra::new(gpd.clone(), ring.clone());
    let e = AlgebraElem::from_residues(&alg, v);
    (alg, e)
}

/// Prime iff for all nonzero `a`, `b` some arrow `g` has `a * δ_g * b ≠ 0`.
pub fn bruteforce_is_prime(
    groupoid: &FiniteGroupoid,
    ring: &RingSpec,
    caps: &Caps,
) -> Result<PrimenessVerdict, AlgebraError> {
    let cand = Candidates::new(ring, groupoid.arrow_count())?;
    if groupoid.arrow_count() == 0 {
        return Ok(PrimenessVerdict::fails(
            Property::Prime,
            Method::Bruteforce,
            "the zero algebra is not prime",
            Obstruction::ZeroAlgebra,
        ));
    }
    check_cap(cand.count().saturating_mul(cand.count()), caps.max_pairs)?;
    let k = ModKernel::new(groupoid, cand.n);
    let bs = cand.all();
    let arrows = groupoid.arrow_count();
    let found = find_map_first(caps.mode, 1..cand.total() as u64, |i| {
        let mut a = vec![0u32; arrows];
        if !cand.decode(i, &mut a) {
            return None;
        }
        let mut rows = Vec::new();
        for g in 0..arrows {
            k.left_rows(&k.times_delta(&a, g), &mut rows);
        }
        rows.sort_unstable();
        rows.dedup();
        let b = bs.iter().find(|b| rows.iter().all(|r| k.dot(r, b) == 0))?;
        Some((a, b.clone()))
    });
    let verdict = match found {
        None => PrimenessVerdict::holds(
            Property::Prime,
            Method::Bruteforce,
            format!("every nonzero pair over {ring} is joined by some a*δ_g*b ≠ 0"),
        ),
        Some((a, b)) => {
            let (alg, ea) = witness_elem(groupoid, ring, &a);
            let eb = AlgebraElem::from_residues(&alg, &b);
            PrimenessVerdict::fails(
                Property::Prime,
                Method::Bruteforce,
                "nonzero a, b with a*δ_g*b = 0 for every arrow g",
                Obstruction::Exhaustive,
            )
            .with_witness(ElementWitness::from_elems(&ea, Some(&eb)))
        }
    };
    Ok(verdict.justify(MIDDLE_FACTORS))
}

/// Semiprime iff for every nonzero `a` some arrow `g` has `a * δ_g * a ≠ 0`.
pub fn bruteforce_is_semiprime(
    groupoid: &FiniteGroupoid,
    ring: &RingSpec,
    caps: &Caps,
) -> Result<PrimenessVerdict, AlgebraError> {
    let cand = Candidates::new(ring, groupoid.arrow_count())?;
    check_cap(cand.count(), caps.max_pairs)?;
    let k = ModKernel::new(groupoid, cand.n);
    let arrows = groupoid.arrow_count();
    let found = find_map_first(caps.mode, 1..cand.total() as u64, |i| {
        let mut a = vec![0u32; arrows];
        if !cand.decode(i, &mut a) {
            return None;
        }
        let annihilates = (0..arrows)
            .all(|g| k.convolve(&k.times_delta(&a, g), &a).iter().all(|&v| v == 0));
        annihilates.then_some(a)
    });
    let verdict = match found {
        None => PrimenessVerdict::holds(
            Property::Semiprime,
            Method::Bruteforce,
            format!("every nonzero a over {ring} has some a*δ_g*a ≠ 0"),
        ),
        Some(a) => {
            let (_, ea) = witness_elem(groupoid, ring, &a);
            PrimenessVerdict::fails(
                Property::Semiprime,
                Method::Bruteforce,
                "nonzero a with a*δ_g*a = 0 for every arrow g",
                Obstruction::Exhaustive,
            )
            .with_witness(ElementWitness::from_elems(&ea, None))
        }
    };
    Ok(verdict.justify(MIDDLE_FACTORS))
}
