use num_bigint::BigInt;

use super::{DatumInput, GaloisError, LocalGaloisDatum};
use crate::numtheory::{is_prime, pow_mod, split_off, SquareClass};
use crate::reptheory::dihedral;

// S3 as dihedral(3): index i + 3j is r^i s^j
const R: usize = 1;
const S: usize = 3;

fn is_rational_cube(m: i64) -> bool {
    let a = m.unsigned_abs();
    let c = (a as f64).cbrt().round() as u64;
    (c.saturating_sub(1)..=c + 1).any(|x| x.checked_pow(3) == Some(a))
}

/// Local datum at a prime above l of K = Q(mu_3, m^(1/3)), over the
/// unramified extension F_v/Q_l of degree r (Delta = S3, r = rotation,
/// s = complex conjugation).
///
/// At l = 3 only r = 1 is handled: the extension is Q_3(sqrt(-3)) when m is
/// a 3-adic cube (m^2 = 1 mod 9), and totally ramified S3 otherwise.
pub fn s3_kummer_local_datum(m: i64, ell: u64, r: u32) -> Result<LocalGaloisDatum, GaloisError> {
    if m == 0 || is_rational_cube(m) {
        return Err(GaloisError::Field(format!("{m} is a cube; Q(mu_3, m^(1/3)) is not an S3 field")));
    }
    if !is_prime(ell) || r == 0 {
        return Err(GaloisError::Invalid { ell, detail: "need a prime and a positive residue degree".into() });
    }
    let q = ell
        .checked_pow(r)
        .ok_or_else(|| GaloisError::Unsupported(format!("{ell}^{r} overflows")))?;
    let g = dihedral(3);
    let e = g.identity();
    let input = |d: Vec<usize>, i: Vec<usize>, frob: usize, quad: Vec<(Vec<usize>, SquareClass)>| DatumInput {
        group: g.clone(),
        ell,
        q,
        count: 1,
        d_gens: d,
        i_gens: i,
        frob,
        quad,
        cubic: None,
    };
    let datum = if ell == 3 {
        if r != 1 {
            return Err(GaloisError::Unsupported("at l = 3 only F_v = Q_3 is handled".into()));
        }
        // -3 = 3 * (-1), and -1 is not a square mod 3
        let minus3 = SquareClass::Odd { ell: 3, q: 3, val_parity: 1, unit_square: false };
        let mut m = m;
        while m % 27 == 0 {
            m /= 27;
        }
        let m9 = m.rem_euclid(9);
        if (m9 * m9) % 9 == 1 {
            input(vec![S], vec![S], e, vec![(vec![], minus3)])
        } else {
            input(vec![R, S], vec![R, S], e, vec![(vec![R], minus3)])
        }
    } else {
        let (v, unit) = split_off(&BigInt::from(m), ell);
        if v % 3 != 0 {
            if q % 3 == 1 {
                input(vec![R], vec![R], e, vec![])
            } else {
                input(vec![R, S], vec![R], S, vec![])
            }
        } else if q % 3 == 2 {
            input(vec![S], vec![], S, vec![])
        } else {
            let u = unit.to_string().parse::<i64>().expect("fits");
            let u = u.rem_euclid(ell as i64) as u64;
            // u is a unit mod l, q = 1 mod 3: cube in F_q iff u^((q-1)/3) = 1
            let cube = q % 3 == 1 && {
                let k = ((q - 1) / 3) % (ell - 1).max(1);
                pow_mod(u, k, ell) == 1 % ell
            };
            if cube {
                input(vec![], vec![], e, vec![])
            } else {
                input(vec![R], vec![], R, vec![])
            }
        }
    };
    LocalGaloisDatum::new(datum)
}
