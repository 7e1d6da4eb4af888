//! Numerical evidence for E1[p] = E2[p]: compare traces of Frobenius mod p
//! up to the Sturm bound for the level lcm(N1, N2).

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{ToPrimitive, Zero};
use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

use crate::curve::{trace_of_frobenius, CurveError, WeierstrassCurve};
use crate::numtheory::{is_prime, prime_divisors, primes_up_to};

#[derive(Debug, Error)]
pub enum CongruenceError {
    #[error("p = {0} must be an odd prime")]
    BadPrime(u64),
    #[error("conductor too large for a Sturm bound: {0}")]
    TooLarge(String),
    #[error(transparent)]
    Curve(#[from] CurveError),
}

/// ceil(N prod_{q|N} (1 + 1/q) / 6), N = lcm(N1, N2): the Sturm bound for
/// weight 2 on Gamma_0(N).
pub fn sturm_bound(n1: &BigInt, n2: &BigInt) -> Result<u64, CongruenceError> {
    let n = n1.lcm(n2);
    let mut psi: BigInt = n.clone();
    for q in prime_divisors(&n) {
        psi = psi / q * (q + 1);
    }
    let b: BigInt = (psi + 5u32) / 6u32;
    b.to_u64().ok_or_else(|| CongruenceError::TooLarge(n.to_string()))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "status", rename_all = "snake_case")]
pub enum CongruenceStatus {
    /// a_l(E1) = a_l(E2) mod p for every compared l up to the bound.
    Supported { bound: u64 },
    Refuted { ell: u64, a1: i64, a2: i64 },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CongruenceResult {
    pub p: u64,
    pub bound: u64,
    #[serde(flatten)]
    pub status: CongruenceStatus,
    pub compared: usize,
    /// Primes up to the bound dividing p N1 N2.
    pub skipped: Vec<u64>,
}

impl CongruenceResult {
    pub fn is_supported(&self) -> bool {
        matches!(self.status, CongruenceStatus::Supported { .. })
    }
}

/// Compare a_l mod p for l <= bound (Sturm bound if None), l not dividing p N1 N2.
pub fn check_congruence(
    e1: &WeierstrassCurve,
    e2: &WeierstrassCurve,
    p: u64,
    bound: Option<u64>,
) -> Result<CongruenceResult, CongruenceError> {
    if p < 3 || !is_prime(p) {
        return Err(CongruenceError::BadPrime(p));
    }
    let (n1, n2) = (e1.conductor(), e2.conductor());
    let bound = match bound {
        Some(b) => b,
        None => sturm_bound(&n1, &n2)?,
    };
    let bad = |l: u64| l == p || (&n1 % l).is_zero() || (&n2 % l).is_zero();
    let primes = primes_up_to(bound);
    let skipped: Vec<u64> = primes.iter().copied().filter(|&l| bad(l)).collect();
    let todo: Vec<u64> = primes.into_iter().filter(|&l| !bad(l)).collect();
    let traces: Vec<(u64, i64, i64)> = todo
        .par_iter()
        .map(|&l| Ok((l, trace_of_frobenius(e1, l)?, trace_of_frobenius(e2, l)?)))
        .collect::<Result<_, CurveError>>()?;
    let pi = p as i64;
    let status = traces
        .iter()
        .find(|(_, a1, a2)| (a1 - a2).rem_euclid(pi) != 0)
        .map(|&(ell, a1, a2)| CongruenceStatus::Refuted { ell, a1, a2 })
        .unwrap_or(CongruenceStatus::Supported { bound });
    let compared = match status {
        CongruenceStatus::Refuted { ell, .. } => traces.iter().filter(|t| t.0 <= ell).count(),
        CongruenceStatus::Supported { .. } => traces.len(),
    };
    Ok(CongruenceResult { p, bound, status, compared, skipped })
}
