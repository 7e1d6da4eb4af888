//! Arithmetic local constants for trivial sigma: delta_{E,v}(1) from the
//! closed formulas, compared with the local root-number ratio.

use std::collections::BTreeSet;

use num_traits::ToPrimitive;
use serde::Serialize;
use thiserror::Error;

use crate::curve::{local_curve_data, CurveError, CurveOverride, RedClass, WeierstrassCurve};
use crate::galoislocal::{DatumInput, GaloisError, LocalContext, LocalGaloisDatum, SigmaSpec};
use crate::numtheory::{is_prime, prime_divisors};
use crate::parity::{direct_delta, evaluate_prime, CurveAtV, Mults, ParityError, Row};
use crate::reptheory::{cyclic, Character};

#[derive(Debug, Error)]
pub enum AlcError {
    #[error("v = {0} lies above p")]
    AboveP(u64),
    #[error("p = {0} must be an odd prime")]
    BadPrime(u64),
    #[error("good reduction at {0} but no trace of Frobenius")]
    NoTrace(u64),
    #[error(transparent)]
    Curve(#[from] CurveError),
    #[error(transparent)]
    Parity(#[from] ParityError),
    #[error(transparent)]
    Galois(#[from] GaloisError),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AlcRecord {
    pub ell: u64,
    pub class1: RedClass,
    pub class2: RedClass,
    pub row: Row,
    pub delta1: i64,
    pub delta2: i64,
    pub parity: u8,
    pub local_root_ratio: i8,
    pub consistent: bool,
    /// delta_{E_i,v}(1) from the general engine, where it applies.
    pub engine_delta: [Option<i64>; 2],
    pub engine_agrees: bool,
}

/// delta_{E,v}(1): the number of constituents of rho_{E,v} that become
/// trivial over F_cyc,v.
pub fn delta_trivial(c: &CurveAtV, p: u64) -> Result<i64, AlcError> {
    if c.ell == p {
        return Err(AlcError::AboveP(c.ell));
    }
    let pi = p as i64;
    let q = (c.q % p) as i64;
    Ok(match c.class {
        RedClass::Good => {
            let a = c.trace.as_ref().ok_or(AlcError::NoTrace(c.ell))?;
            let a = (a % pi).to_i64().expect("small").rem_euclid(pi);
            // eigenvalues alpha, beta with alpha + beta = a, alpha beta = q
            if (1 - a + q).rem_euclid(pi) != 0 {
                0
            } else if a == 2 % pi && q == 1 % pi {
                2
            } else {
                1
            }
        }
        RedClass::Split => (q == 1) as i64,
        RedClass::Nonsplit => (q == pi - 1) as i64,
        // every additive constituent is ramified
        _ => 0,
    })
}

fn trivial_datum(ell: u64, q: u64) -> Result<LocalGaloisDatum, GaloisError> {
    LocalGaloisDatum::new(DatumInput {
        group: cyclic(1),
        ell,
        q,
        count: 1,
        d_gens: vec![],
        i_gens: vec![],
        frob: 0,
        quad: vec![],
        cubic: None,
    })
}

/// Compare delta_{E1,v}(1) - delta_{E2,v}(1) with the local root-number
/// ratio at v (over Q_l).
pub fn alc_parity(
    e1: &WeierstrassCurve,
    e2: &WeierstrassCurve,
    ell: u64,
    p: u64,
    overrides: [Option<&CurveOverride>; 2],
) -> Result<AlcRecord, AlcError> {
    if p < 3 || !is_prime(p) {
        return Err(AlcError::BadPrime(p));
    }
    if ell == p {
        return Err(AlcError::AboveP(ell));
    }
    let c1 = CurveAtV::from(&local_curve_data(e1, ell, 1, overrides[0])?);
    let c2 = CurveAtV::from(&local_curve_data(e2, ell, 1, overrides[1])?);
    let delta1 = delta_trivial(&c1, p)?;
    let delta2 = delta_trivial(&c2, p)?;

    let datum = trivial_datum(ell, c1.q)?;
    let g = cyclic(1);
    let sigma = SigmaSpec::new(Character::trivial(&g))?;
    let ctx = LocalContext::new(&datum, &sigma, p)?;
    let m = Mults::new(ctx);
    let eval = evaluate_prime(&c1, &c2, &m, p)?;
    let engine_delta = [direct_delta(&c1, &m, p), direct_delta(&c2, &m, p)];
    let engine_agrees = engine_delta[0].map_or(true, |d| d == delta1) && engine_delta[1].map_or(true, |d| d == delta2);

    let parity = (delta1 - delta2).rem_euclid(2) as u8;
    let consistent = (if parity == 0 { 1 } else { -1 }) == eval.local_root_ratio;
    Ok(AlcRecord {
        ell,
        class1: c1.class,
        class2: c2.class,
        row: eval.row,
        delta1,
        delta2,
        parity,
        local_root_ratio: eval.local_root_ratio,
        consistent,
        engine_delta,
        engine_agrees,
    })
}

/// Records at every bad prime of E1 or E2 other than p.
pub fn alc_report(e1: &WeierstrassCurve, e2: &WeierstrassCurve, p: u64) -> Result<Vec<AlcRecord>, AlcError> {
    let mut primes: BTreeSet<u64> = prime_divisors(&e1.conductor()).into_iter().collect();
    primes.extend(prime_divisors(&e2.conductor()));
    primes.remove(&p);
    primes
        .into_iter()
        .map(|ell| alc_parity(e1, e2, ell, p, [None, None]))
        .collect()
}
