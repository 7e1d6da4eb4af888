use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::arith::{is_prime, legendre, mod_u64, split_off};
use super::fp2::Fp2;
use super::NumError;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Place {
    Finite(u64),
    Real,
}

impl Place {
    pub fn finite(l: u64) -> Result<Place, NumError> {
        if is_prime(l) {
            Ok(Place::Finite(l))
        } else {
            Err(NumError::NotPrime(l))
        }
    }
}

impl fmt::Display for Place {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Place::Finite(l) => write!(f, "{l}"),
            Place::Real => write!(f, "inf"),
        }
    }
}

/// A class in F_v^x / (F_v^x)^2.
///
/// `Odd` carries the residue cardinality q so the same type serves
/// unramified extensions of Q_l (q = l^f) as well as Q_l itself.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum SquareClass {
    Real { negative: bool },
    Odd { ell: u64, q: u64, val_parity: u8, unit_square: bool },
    /// Q_2 only; `rep` is one of ±1, ±2, ±5, ±10.
    Dyadic { rep: i8 },
}

const DYADIC_REPS: [i8; 8] = [1, -1, 2, -2, 5, -5, 10, -10];

impl SquareClass {
    pub fn place(&self) -> Place {
        match self {
            SquareClass::Real { .. } => Place::Real,
            SquareClass::Odd { ell, .. } => Place::Finite(*ell),
            SquareClass::Dyadic { .. } => Place::Finite(2),
        }
    }

    pub fn trivial(place: Place) -> SquareClass {
        match place {
            Place::Real => SquareClass::Real { negative: false },
            Place::Finite(2) => SquareClass::Dyadic { rep: 1 },
            Place::Finite(l) => SquareClass::Odd { ell: l, q: l, val_parity: 0, unit_square: true },
        }
    }

    /// The class cutting out the unramified quadratic extension.
    pub fn unramified_nonsquare(&self) -> Option<SquareClass> {
        match *self {
            SquareClass::Real { .. } => None,
            SquareClass::Odd { ell, q, .. } => {
                Some(SquareClass::Odd { ell, q, val_parity: 0, unit_square: false })
            }
            SquareClass::Dyadic { .. } => Some(SquareClass::Dyadic { rep: 5 }),
        }
    }

    pub fn is_trivial(&self) -> bool {
        match *self {
            SquareClass::Real { negative } => !negative,
            SquareClass::Odd { val_parity, unit_square, .. } => val_parity == 0 && unit_square,
            SquareClass::Dyadic { rep } => rep == 1,
        }
    }

    /// True when F_v(sqrt d)/F_v is unramified (including the trivial class).
    pub fn is_unramified(&self) -> bool {
        match *self {
            SquareClass::Real { .. } => true,
            SquareClass::Odd { val_parity, .. } => val_parity == 0,
            SquareClass::Dyadic { rep } => rep == 1 || rep == 5,
        }
    }

    fn dyadic_bits(rep: i8) -> (bool, bool, bool) {
        let neg = rep < 0;
        let a = rep.unsigned_abs();
        (neg, a == 2 || a == 10, a == 5 || a == 10)
    }

    fn dyadic_from_bits(neg: bool, two: bool, five: bool) -> i8 {
        let mut r: i8 = 1;
        if two {
            r *= 2;
        }
        if five {
            r *= 5;
        }
        if neg {
            -r
        } else {
            r
        }
    }

    pub fn mul(&self, other: &SquareClass) -> Result<SquareClass, NumError> {
        match (*self, *other) {
            (SquareClass::Real { negative: a }, SquareClass::Real { negative: b }) => {
                Ok(SquareClass::Real { negative: a ^ b })
            }
            (
                SquareClass::Odd { ell, q, val_parity: va, unit_square: ua },
                SquareClass::Odd { ell: l2, q: q2, val_parity: vb, unit_square: ub },
            ) if ell == l2 && q == q2 => Ok(SquareClass::Odd {
                ell,
                q,
                val_parity: va ^ vb,
                unit_square: ua == ub,
            }),
            (SquareClass::Dyadic { rep: a }, SquareClass::Dyadic { rep: b }) => {
                let (n1, t1, f1) = Self::dyadic_bits(a);
                let (n2, t2, f2) = Self::dyadic_bits(b);
                Ok(SquareClass::Dyadic { rep: Self::dyadic_from_bits(n1 ^ n2, t1 ^ t2, f1 ^ f2) })
            }
            _ => Err(NumError::PlaceMismatch),
        }
    }

    /// Every class at the place (4, 8 or 2 of them).
    pub fn all_at(place: Place) -> Vec<SquareClass> {
        match place {
            Place::Real => vec![SquareClass::Real { negative: false }, SquareClass::Real { negative: true }],
            Place::Finite(2) => DYADIC_REPS.iter().map(|&rep| SquareClass::Dyadic { rep }).collect(),
            Place::Finite(l) => {
                let mut v = Vec::new();
                for val_parity in 0..2 {
                    for unit_square in [true, false] {
                        v.push(SquareClass::Odd { ell: l, q: l, val_parity, unit_square });
                    }
                }
                v
            }
        }
    }
}

impl fmt::Display for SquareClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SquareClass::Real { negative } => write!(f, "{}1 at inf", if *negative { "-" } else { "+" }),
            SquareClass::Odd { ell, q, val_parity, unit_square } => {
                let u = if *unit_square { "u" } else { "n" };
                let pi = if *val_parity == 1 { "pi*" } else { "" };
                if q == ell {
                    write!(f, "{pi}{u} at {ell}")
                } else {
                    write!(f, "{pi}{u} at {ell} (q={q})")
                }
            }
            SquareClass::Dyadic { rep } => write!(f, "{rep} at 2"),
        }
    }
}

/// Record form: {"v": 7 | "real", "q"?: n, "val_parity": 0|1, "unit": "sq"|"nsq"},
/// {"v": 2, "rep": -5} or {"v": "real", "sign": "-"}.
#[derive(Serialize, Deserialize)]
struct SquareClassRecord {
    v: serde_json::Value,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    q: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    val_parity: Option<u8>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    unit: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    rep: Option<i8>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    sign: Option<String>,
}

impl Serialize for SquareClass {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let rec = match *self {
            SquareClass::Real { negative } => SquareClassRecord {
                v: "real".into(),
                q: None,
                val_parity: None,
                unit: None,
                rep: None,
                sign: Some(if negative { "-" } else { "+" }.into()),
            },
            SquareClass::Odd { ell, q, val_parity, unit_square } => SquareClassRecord {
                v: ell.into(),
                q: (q != ell).then_some(q),
                val_parity: Some(val_parity),
                unit: Some(if unit_square { "sq" } else { "nsq" }.into()),
                rep: None,
                sign: None,
            },
            SquareClass::Dyadic { rep } => SquareClassRecord {
                v: 2.into(),
                q: None,
                val_parity: None,
                unit: None,
                rep: Some(rep),
                sign: None,
            },
        };
        rec.serialize(s)
    }
}

impl<'de> Deserialize<'de> for SquareClass {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        use serde::de::Error;
        let rec = SquareClassRecord::deserialize(d)?;
        if rec.v.as_str() == Some("real") {
            let negative = match rec.sign.as_deref() {
                Some("-") => true,
                Some("+") | None => false,
                Some(other) => return Err(D::Error::custom(format!("bad sign {other:?}"))),
            };
            return Ok(SquareClass::Real { negative });
        }
        let ell = rec
            .v
            .as_u64()
            .ok_or_else(|| D::Error::custom("square class place must be a prime or \"real\""))?;
        if !is_prime(ell) {
            return Err(D::Error::custom(format!("{ell} is not prime")));
        }
        if ell == 2 {
            let rep = rec.rep.ok_or_else(|| D::Error::custom("2-adic class needs \"rep\""))?;
            if !DYADIC_REPS.contains(&rep) {
                return Err(D::Error::custom(format!("{rep} is not one of ±1,±2,±5,±10")));
            }
            if rec.q.is_some_and(|q| q != 2) {
                return Err(D::Error::custom("2-adic classes are only modelled over Q_2"));
            }
            return Ok(SquareClass::Dyadic { rep });
        }
        let val_parity = rec.val_parity.ok_or_else(|| D::Error::custom("missing val_parity"))?;
        if val_parity > 1 {
            return Err(D::Error::custom("val_parity must be 0 or 1"));
        }
        let unit_square = match rec.unit.as_deref() {
            Some("sq") => true,
            Some("nsq") => false,
            _ => return Err(D::Error::custom("unit must be \"sq\" or \"nsq\"")),
        };
        let q = rec.q.unwrap_or(ell);
        Ok(SquareClass::Odd { ell, q, val_parity, unit_square })
    }
}

/// Class of x in Q_v^x / squares.
pub fn square_class(x: &BigRational, v: Place) -> Result<SquareClass, NumError> {
    if x.is_zero() {
        return Err(NumError::Zero);
    }
    match v {
        Place::Real => Ok(SquareClass::Real { negative: x.is_negative() }),
        Place::Finite(l) => {
            if !is_prime(l) {
                return Err(NumError::NotPrime(l));
            }
            let (vn, n) = split_off(x.numer(), l);
            let (vd, d) = split_off(x.denom(), l);
            let val_parity = ((vn + vd) % 2) as u8;
            // 1/d and d have the same square class
            let unit = n * d;
            if l == 2 {
                let u = mod_u64(&unit, 8);
                let base: i8 = match u {
                    1 => 1,
                    3 => -5,
                    5 => 5,
                    7 => -1,
                    _ => unreachable!("odd residue"),
                };
                let rep = if val_parity == 1 { base * 2 } else { base };
                Ok(SquareClass::Dyadic { rep })
            } else {
                Ok(SquareClass::Odd { ell: l, q: l, val_parity, unit_square: legendre(&unit, l) == 1 })
            }
        }
    }
}

pub fn square_class_int(x: i64, v: Place) -> Result<SquareClass, NumError> {
    square_class(&BigRational::from_integer(BigInt::from(x)), v)
}

/// Hilbert symbol of two classes at the same place.
pub fn hilbert_classes(a: &SquareClass, b: &SquareClass) -> Result<i8, NumError> {
    match (*a, *b) {
        (SquareClass::Real { negative: x }, SquareClass::Real { negative: y }) => {
            Ok(if x && y { -1 } else { 1 })
        }
        (
            SquareClass::Odd { ell, q, val_parity: al, unit_square: ua },
            SquareClass::Odd { ell: l2, q: q2, val_parity: be, unit_square: ub },
        ) if ell == l2 && q == q2 => {
            let eps = ((q - 1) / 2) % 2;
            let mut e = (al as u64 * be as u64 * eps) % 2;
            if be == 1 && !ua {
                e ^= 1;
            }
            if al == 1 && !ub {
                e ^= 1;
            }
            Ok(if e == 0 { 1 } else { -1 })
        }
        (SquareClass::Dyadic { rep: x }, SquareClass::Dyadic { rep: y }) => {
            let split = |r: i8| -> (u8, i8) {
                let al = (r.unsigned_abs() == 2 || r.unsigned_abs() == 10) as u8;
                (al, if al == 1 { r / 2 } else { r })
            };
            let (al, u) = split(x);
            let (be, w) = split(y);
            // eps(u) = (u-1)/2 mod 2, omega(u) = (u^2-1)/8 mod 2 on u in {±1, ±5}
            let eps = |u: i8| ((u as i32 - 1).div_euclid(2)).rem_euclid(2) as u8;
            let omega = |u: i8| (((u as i32 * u as i32 - 1) / 8) % 2) as u8;
            let e = (eps(u) * eps(w) + al * omega(w) + be * omega(u)) % 2;
            Ok(if e == 0 { 1 } else { -1 })
        }
        _ => Err(NumError::PlaceMismatch),
    }
}

pub fn hilbert_symbol(a: &BigRational, b: &BigRational, v: Place) -> Result<i8, NumError> {
    hilbert_classes(&square_class(a, v)?, &square_class(b, v)?)
}

pub fn hilbert_int(a: i64, b: i64, v: Place) -> Result<i8, NumError> {
    hilbert_classes(&square_class_int(a, v)?, &square_class_int(b, v)?)
}

/// Class of x in F(mu_3)^x / cubes for F an unramified extension of Q_l with
/// residue cardinality q = 2 mod 3. The unit class is an exponent relative to
/// a fixed generator of the residue field of F(mu_3).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct CubeClassMu3 {
    pub ell: u64,
    pub q: u64,
    pub valuation_mod_3: u8,
    pub unit_class: u8,
}

impl CubeClassMu3 {
    pub fn mul(&self, other: &CubeClassMu3) -> Result<CubeClassMu3, NumError> {
        if self.ell != other.ell || self.q != other.q {
            return Err(NumError::PlaceMismatch);
        }
        Ok(CubeClassMu3 {
            ell: self.ell,
            q: self.q,
            valuation_mod_3: (self.valuation_mod_3 + other.valuation_mod_3) % 3,
            unit_class: (self.unit_class + other.unit_class) % 3,
        })
    }

    pub fn pow(&self, k: u8) -> CubeClassMu3 {
        CubeClassMu3 {
            valuation_mod_3: (self.valuation_mod_3 * k) % 3,
            unit_class: (self.unit_class * k) % 3,
            ..*self
        }
    }

    pub fn is_trivial(&self) -> bool {
        self.valuation_mod_3 == 0 && self.unit_class == 0
    }

    /// Same Kummer line: the two classes generate the same subgroup.
    pub fn same_line(&self, other: &CubeClassMu3) -> bool {
        !self.is_trivial() && (*self == *other || *self == other.pow(2))
    }
}

pub fn cube_class_mu3(x: &BigRational, l: u64) -> Result<CubeClassMu3, NumError> {
    if x.is_zero() {
        return Err(NumError::Zero);
    }
    if !is_prime(l) {
        return Err(NumError::NotPrime(l));
    }
    if l % 3 != 2 {
        return Err(NumError::CubeModel(l));
    }
    let (vn, n) = split_off(x.numer(), l);
    let (vd, d) = split_off(x.denom(), l);
    let val = (vn as i64 - vd as i64).rem_euclid(3) as u8;
    let f = Fp2::new(l);
    // u = n / d; d^{-1} has class -class(d), so use n * d^2
    let u = mod_u64(&(n * &d * &d), l);
    let w = f.pow((u, 0), (l * l - 1) / 3);
    let g = f.normalized_generator();
    let zeta = f.pow(g, (l * l - 1) / 3);
    let unit_class = if w == (1 % l, 0) {
        0
    } else if w == zeta {
        1
    } else {
        2
    };
    Ok(CubeClassMu3 { ell: l, q: l, valuation_mod_3: val, unit_class })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(n: i64, d: i64) -> BigRational {
        BigRational::new(BigInt::from(n), BigInt::from(d))
    }

    #[test]
    fn square_class_examples() {
        let c = square_class_int(-1, Place::Finite(3)).unwrap();
        assert_eq!(c, SquareClass::Odd { ell: 3, q: 3, val_parity: 0, unit_square: false });
        assert!(square_class_int(4, Place::Finite(7)).unwrap().is_trivial());
        assert_eq!(square_class_int(-11, Place::Real).unwrap(), SquareClass::Real { negative: true });
        assert_eq!(square_class_int(0, Place::Real), Err(NumError::Zero));
    }

    #[test]
    fn dyadic_classes() {
        assert_eq!(square_class_int(3, Place::Finite(2)).unwrap(), SquareClass::Dyadic { rep: -5 });
        assert_eq!(square_class_int(-3, Place::Finite(2)).unwrap(), SquareClass::Dyadic { rep: 5 });
        assert_eq!(square_class_int(12, Place::Finite(2)).unwrap(), SquareClass::Dyadic { rep: -5 });
        assert_eq!(square_class(&r(7, 2), Place::Finite(2)).unwrap(), SquareClass::Dyadic { rep: -2 });
        assert_eq!(square_class_int(17, Place::Finite(2)).unwrap(), SquareClass::Dyadic { rep: 1 });
    }

    #[test]
    fn square_factor_invariance() {
        for v in [Place::Real, Place::Finite(2), Place::Finite(3), Place::Finite(13)] {
            for x in [-30i64, -7, 2, 5, 12, 99] {
                for y in [1i64, 2, 3, 6, 13] {
                    let a = square_class_int(x, v).unwrap();
                    let b = square_class(&r(x * y * y, 1), v).unwrap();
                    let c = square_class(&r(x, y * y), v).unwrap();
                    assert_eq!(a, b);
                    assert_eq!(a, c);
                }
            }
        }
    }

    #[test]
    fn hilbert_known_values() {
        assert_eq!(hilbert_int(-1, -1, Place::Real).unwrap(), -1);
        assert_eq!(hilbert_int(-1, -1, Place::Finite(2)).unwrap(), -1);
        assert_eq!(hilbert_int(2, 3, Place::Finite(3)).unwrap(), -1);
        assert_eq!(hilbert_int(1, 7, Place::Finite(7)).unwrap(), 1);
        // -1 is a square mod 5, so (-1, 5)_5 = 1; -1 is not a square mod 7
        assert_eq!(hilbert_int(-1, 5, Place::Finite(5)).unwrap(), 1);
        assert_eq!(hilbert_int(-1, 7, Place::Finite(7)).unwrap(), -1);
    }

    #[test]
    fn cube_class_examples() {
        let c = cube_class_mu3(&r(2, 1), 5).unwrap();
        assert_eq!((c.valuation_mod_3, c.unit_class), (0, 0));
        let c = cube_class_mu3(&r(5, 1), 5).unwrap();
        assert_eq!(c.valuation_mod_3, 1);
        assert!(cube_class_mu3(&r(27 * 8, 1), 11).unwrap().is_trivial());
        assert_eq!(cube_class_mu3(&r(2, 1), 7), Err(NumError::CubeModel(7)));
        assert_eq!(cube_class_mu3(&r(2, 1), 3), Err(NumError::CubeModel(3)));
        let c = cube_class_mu3(&r(1, 25), 5).unwrap();
        assert_eq!(c.valuation_mod_3, 1);
    }

    #[test]
    fn square_class_json_roundtrip() {
        for v in [Place::Real, Place::Finite(2), Place::Finite(7)] {
            for c in SquareClass::all_at(v) {
                let s = serde_json::to_string(&c).unwrap();
                let back: SquareClass = serde_json::from_str(&s).unwrap();
                assert_eq!(c, back);
            }
        }
        let c: SquareClass = serde_json::from_str(r#"{"v":1093,"val_parity":1,"unit":"sq"}"#).unwrap();
        assert_eq!(c, SquareClass::Odd { ell: 1093, q: 1093, val_parity: 1, unit_square: true });
    }
}
