//! Weierstrass models over Q: invariants, Tate's algorithm, point counts and
//! the refined reduction classes used by the parity engine.

mod classify;
mod points;
mod record;
mod tate;

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::numtheory::{factor, NumError};

pub use classify::{
    classify_reduction, local_curve_data, CurveOverride, LocalCurveData, PgKind, RedClass,
};
pub use record::{bundled_curve, bundled_curves, parse_ainvs, CurveRecord, JsonInt};
pub use points::{trace_of_frobenius, trace_of_frobenius_naive, trace_over_extension};
pub use tate::{tate_local, Kodaira, LocalReductionData, Reduction};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CurveError {
    #[error("singular Weierstrass model: discriminant is zero")]
    Singular,
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("curve has bad reduction at {0}")]
    BadReduction(u64),
    #[error("potentially good reduction at the wild prime {0} needs an explicit override (e and PGA/PGNA)")]
    NeedsOverride(u64),
    #[error("override at {ell} conflicts with the computed reduction: {detail}")]
    OverrideConflict { ell: u64, detail: String },
    #[error("{0}")]
    Unsupported(String),
    #[error(transparent)]
    Num(#[from] NumError),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Invariants {
    pub b2: BigInt,
    pub b4: BigInt,
    pub b6: BigInt,
    pub b8: BigInt,
    pub c4: BigInt,
    pub c6: BigInt,
    pub disc: BigInt,
    pub j: BigRational,
}

/// y^2 + a1 xy + a3 y = x^3 + a2 x^2 + a4 x + a6 with integral coefficients.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WeierstrassCurve {
    pub a: [BigInt; 5],
    pub label: Option<String>,
    inv: Invariants,
}

fn raw_invariants(a: &[BigInt; 5]) -> (BigInt, BigInt, BigInt, BigInt, BigInt, BigInt, BigInt) {
    let [a1, a2, a3, a4, a6] = a;
    let b2 = a1 * a1 + 4 * a2;
    let b4 = 2 * a4 + a1 * a3;
    let b6 = a3 * a3 + 4 * a6;
    let b8 = a1 * a1 * a6 + 4 * a2 * a6 - a1 * a3 * a4 + a2 * a3 * a3 - a4 * a4;
    let c4 = &b2 * &b2 - 24 * &b4;
    let b2cube: BigInt = &b2 * &b2 * &b2;
    let c6: BigInt = -b2cube + 36 * &b2 * &b4 - 216 * &b6;
    let b2b2b8: BigInt = &b2 * &b2 * &b8;
    let disc: BigInt = -b2b2b8 - 8 * &b4 * &b4 * &b4 - 27 * &b6 * &b6 + 9 * &b2 * &b4 * &b6;
    (b2, b4, b6, b8, c4, c6, disc)
}

impl WeierstrassCurve {
    pub fn new(a: [BigInt; 5], label: Option<String>) -> Result<Self, CurveError> {
        let (b2, b4, b6, b8, c4, c6, disc) = raw_invariants(&a);
        if disc.is_zero() {
            return Err(CurveError::Singular);
        }
        let j = BigRational::new(&c4 * &c4 * &c4, disc.clone());
        let inv = Invariants { b2, b4, b6, b8, c4, c6, disc, j };
        Ok(WeierstrassCurve { a, label, inv })
    }

    pub fn from_ints(a: [i64; 5]) -> Result<Self, CurveError> {
        Self::new(a.map(BigInt::from), None)
    }

    pub fn with_label(mut self, label: impl Into<String>) -> Self {
        self.label = Some(label.into());
        self
    }

    pub fn invariants(&self) -> &Invariants {
        &self.inv
    }

    pub fn disc(&self) -> &BigInt {
        &self.inv.disc
    }

    /// Image under (x, y) -> (u^2 x + r, u^3 y + u^2 s x + t); the new model
    /// must still be integral.
    pub fn transform(&self, u: &BigInt, r: &BigInt, s: &BigInt, t: &BigInt) -> Option<Self> {
        let [a1, a2, a3, a4, a6] = &self.a;
        let n1 = a1 + 2 * s;
        let n2 = a2 - s * a1 + 3 * r - s * s;
        let n3 = a3 + r * a1 + 2 * t;
        let n4 = a4 - s * a3 + 2 * r * a2 - (t + r * s) * a1 + 3 * r * r - 2 * s * t;
        let n6 = a6 + r * a4 + r * r * a2 + r * r * r - t * a3 - t * t - r * t * a1;
        let mut out = [n1, n2, n3, n4, n6];
        for (k, w) in [1u32, 2, 3, 4, 6].into_iter().enumerate() {
            let d = u.pow(w);
            if !(&out[k] % &d).is_zero() {
                return None;
            }
            out[k] = &out[k] / &d;
        }
        WeierstrassCurve::new(out, self.label.clone()).ok()
    }

    pub fn bad_primes(&self) -> Vec<u64> {
        let mut out = Vec::new();
        for (q, _) in factor(&self.inv.disc) {
            let l: u64 = q.try_into().expect("prime divisor exceeds 64 bits");
            let data = tate_local(self, l).expect("prime from factorisation");
            if data.f > 0 {
                out.push(l);
            }
        }
        out
    }

    pub fn conductor(&self) -> BigInt {
        let mut n = BigInt::one();
        for (q, _) in factor(&self.inv.disc) {
            let l: u64 = (&q).try_into().expect("prime divisor exceeds 64 bits");
            let data = tate_local(self, l).expect("prime from factorisation");
            n *= q.pow(data.f);
        }
        n
    }

    pub fn ainvs_i64(&self) -> Option<[i64; 5]> {
        let mut out = [0i64; 5];
        for (k, x) in self.a.iter().enumerate() {
            out[k] = x.try_into().ok()?;
        }
        Some(out)
    }
}

impl fmt::Display for WeierstrassCurve {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let [a1, a2, a3, a4, a6] = &self.a;
        write!(f, "[{a1},{a2},{a3},{a4},{a6}]")?;
        if let Some(l) = &self.label {
            write!(f, " ({l})")?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn invariant_identities() {
        for a in [[0, -1, 1, -7820, -263580], [0, 0, 0, 0, 1], [1, -1, 1, -29, -53], [0, -1, 0, -16, 29]] {
            let e = WeierstrassCurve::from_ints(a).unwrap();
            let i = e.invariants();
            assert_eq!(BigInt::from(1728) * &i.disc, &i.c4 * &i.c4 * &i.c4 - &i.c6 * &i.c6);
            assert_eq!(BigInt::from(4) * &i.b8, &i.b2 * &i.b6 - &i.b4 * &i.b4);
        }
    }

    #[test]
    fn x3_plus_1() {
        let e = WeierstrassCurve::from_ints([0, 0, 0, 0, 1]).unwrap();
        let i = e.invariants();
        assert_eq!(i.c4, BigInt::from(0));
        assert_eq!(i.c6, BigInt::from(-864));
        assert_eq!(i.disc, BigInt::from(-432));
        assert_eq!(WeierstrassCurve::from_ints([0, 0, 0, 0, 0]), Err(CurveError::Singular));
    }
}
