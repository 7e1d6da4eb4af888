use num_bigint::BigInt;

use super::{tate_local, CurveError, Reduction, WeierstrassCurve};
use crate::numtheory::{is_prime, mod_u64};

fn reduce(curve: &WeierstrassCurve, l: u64) -> [u64; 5] {
    let mut out = [0u64; 5];
    for (k, x) in curve.a.iter().enumerate() {
        out[k] = mod_u64(x, l);
    }
    out
}

/// a_l on a model known to be smooth mod l, by the Legendre-sum loop.
pub(crate) fn trace_on_model(curve: &WeierstrassCurve, l: u64) -> i64 {
    let [a1, a2, a3, a4, a6] = reduce(curve, l);
    if l == 2 {
        return l as i64 + 1 - count_points(&[a1, a2, a3, a4, a6], l) as i64;
    }
    let mut is_sq = vec![false; l as usize];
    for y in 0..l {
        is_sq[(y * y % l) as usize] = true;
    }
    let mut sum: i64 = 0;
    for x in 0..l {
        let lin = (a1 * x + a3) % l;
        let cub = (((x + a2) * x % l + a4) * x % l + a6) % l;
        let d = (lin * lin + 4 * cub) % l;
        if d != 0 {
            sum += if is_sq[d as usize] { 1 } else { -1 };
        }
    }
    -sum
}

fn count_points(a: &[u64; 5], l: u64) -> u64 {
    let [a1, a2, a3, a4, a6] = *a;
    let mut n = 1;
    for x in 0..l {
        for y in 0..l {
            let lhs = (y * y + a1 * x % l * y + a3 * y) % l;
            let rhs = ((x * x % l) * x + a2 * x % l * x + a4 * x + a6) % l;
            if lhs == rhs {
                n += 1;
            }
        }
    }
    n
}

/// a_l = l + 1 - #E(F_l) for l of good reduction (computed on a minimal model).
pub fn trace_of_frobenius(curve: &WeierstrassCurve, l: u64) -> Result<i64, CurveError> {
    if !is_prime(l) {
        return Err(CurveError::NotPrime(l));
    }
    if mod_u64(curve.disc(), l) != 0 {
        return Ok(trace_on_model(curve, l));
    }
    let data = tate_local(curve, l)?;
    match data.reduction {
        Reduction::Good => Ok(data.a_ell.expect("good reduction carries a_l")),
        _ => Err(CurveError::BadReduction(l)),
    }
}

/// Enumeration of all affine pairs; O(l^2), used as an oracle.
pub fn trace_of_frobenius_naive(curve: &WeierstrassCurve, l: u64) -> Result<i64, CurveError> {
    let data = tate_local(curve, l)?;
    if data.reduction != Reduction::Good {
        return Err(CurveError::BadReduction(l));
    }
    let min = WeierstrassCurve::new(data.minimal_model.clone(), None)?;
    Ok(l as i64 + 1 - count_points(&reduce(&min, l), l) as i64)
}

/// Trace of Frobenius over F_{l^r} from a_l: t_k = a t_{k-1} - l t_{k-2}.
pub fn trace_over_extension(a: i64, l: u64, r: u32) -> BigInt {
    let (mut t0, mut t1) = (BigInt::from(2), BigInt::from(a));
    if r == 0 {
        return t0;
    }
    for _ in 1..r {
        let t2 = a * &t1 - BigInt::from(l) * &t0;
        t0 = t1;
        t1 = t2;
    }
    t1
}
