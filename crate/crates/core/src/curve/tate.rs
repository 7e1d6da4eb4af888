use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};
use serde::{Serialize, Serializer};

use super::{CurveError, WeierstrassCurve};
use crate::numtheory::{is_prime, legendre, mod_u64, square_class, valuation, Place, SquareClass};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Kodaira {
    I0,
    In(u32),
    II,
    III,
    IV,
    I0Star,
    InStar(u32),
    IVStar,
    IIIStar,
    IIStar,
}

impl fmt::Display for Kodaira {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Kodaira::I0 => write!(f, "I0"),
            Kodaira::In(n) => write!(f, "I{n}"),
            Kodaira::II => write!(f, "II"),
            Kodaira::III => write!(f, "III"),
            Kodaira::IV => write!(f, "IV"),
            Kodaira::I0Star => write!(f, "I0*"),
            Kodaira::InStar(n) => write!(f, "I{n}*"),
            Kodaira::IVStar => write!(f, "IV*"),
            Kodaira::IIIStar => write!(f, "III*"),
            Kodaira::IIStar => write!(f, "II*"),
        }
    }
}

impl Serialize for Kodaira {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

/// Reduction type over Q_l. For potentially good additive reduction at
/// l >= 5 the inertia order e and the abelian/non-abelian split over Q_l
/// are determined; at l in {2, 3} they are left open.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "type", rename_all = "snake_case")]
pub enum Reduction {
    Good,
    SplitMult,
    NonsplitMult,
    AdditivePmr,
    AdditivePga { e: u32 },
    AdditivePgna { e: u32 },
    AdditivePgWild,
}

impl Reduction {
    pub fn is_additive(&self) -> bool {
        !matches!(self, Reduction::Good | Reduction::SplitMult | Reduction::NonsplitMult)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LocalReductionData {
    pub ell: u64,
    pub kodaira: Kodaira,
    pub f: u32,
    pub v_disc_min: u32,
    /// None when j = 0.
    pub vj: Option<i64>,
    pub a_ell: Option<i64>,
    pub minus_c6_class: Option<SquareClass>,
    pub reduction: Reduction,
    pub e: Option<u32>,
    /// Split test through "-c6 is a square", recorded for l >= 5.
    pub split_by_c6: Option<bool>,
    #[serde(skip)]
    pub minimal_model: [BigInt; 5],
}

struct Local {
    p: BigInt,
    pu: u64,
}

impl Local {
    fn val(&self, x: &BigInt) -> u32 {
        valuation(x, self.pu).unwrap_or(u32::MAX / 2)
    }
    fn div(&self, x: &BigInt) -> bool {
        x.is_multiple_of(&self.p)
    }
    fn red(&self, x: &BigInt) -> BigInt {
        x.mod_floor(&self.p)
    }
    fn inv(&self, x: &BigInt) -> BigInt {
        let r = mod_u64(x, self.pu);
        let i = crate::numtheory::inv_mod(r, self.pu).expect("unit mod p");
        BigInt::from(i)
    }
    /// Square root mod 2 or cube root mod 3: the Frobenius is the identity.
    fn root(&self, x: &BigInt) -> BigInt {
        self.red(x)
    }
    /// Does a X^2 + b X + c have a root mod p?
    fn quadroots(&self, a: &BigInt, b: &BigInt, c: &BigInt) -> bool {
        let (a, b, c) = (self.red(a), self.red(b), self.red(c));
        if self.pu == 2 {
            return c.is_zero() || ((&a + &b + &c) % 2u32).is_zero();
        }
        if a.is_zero() {
            return !b.is_zero() || c.is_zero();
        }
        legendre(&(&b * &b - 4 * &a * &c), self.pu) >= 0
    }
}

fn rst(a: &[BigInt; 5], r: &BigInt, s: &BigInt, t: &BigInt) -> [BigInt; 5] {
    let [a1, a2, a3, a4, a6] = a;
    [
        a1 + 2 * s,
        a2 - s * a1 + 3 * r - s * s,
        a3 + r * a1 + 2 * t,
        a4 - s * a3 + 2 * r * a2 - (t + r * s) * a1 + 3 * r * r - 2 * s * t,
        a6 + r * a4 + r * r * a2 + r * r * r - t * a3 - t * t - r * t * a1,
    ]
}

fn bs(a: &[BigInt; 5]) -> [BigInt; 4] {
    let [a1, a2, a3, a4, a6] = a;
    [
        a1 * a1 + 4 * a2,
        2 * a4 + a1 * a3,
        a3 * a3 + 4 * a6,
        a1 * a1 * a6 + 4 * a2 * a6 - a1 * a3 * a4 + a2 * a3 * a3 - a4 * a4,
    ]
}

struct TateOut {
    kodaira: Kodaira,
    f: u32,
    vd: u32,
    split: Option<bool>,
    model: [BigInt; 5],
}

fn tate_core(curve: &WeierstrassCurve, l: u64) -> TateOut {
    let lc = Local { p: BigInt::from(l), pu: l };
    let p = &lc.p;
    let p2 = p * p;
    let p3 = &p2 * p;
    let p4 = &p2 * &p2;
    let zero = BigInt::zero();
    let half = if l == 2 { BigInt::zero() } else { lc.inv(&BigInt::from(2)) };
    let mut a = curve.a.clone();
    let mut vd = lc.val(curve.disc());
    loop {
        if vd == 0 {
            return TateOut { kodaira: Kodaira::I0, f: 0, vd: 0, split: None, model: a };
        }
        let [b2, b4, b6, _] = bs(&a);
        // move the singular point to (0, 0)
        let (r, t) = if l == 2 {
            if lc.div(&b2) {
                let r = lc.root(&a[3]);
                let t = lc.root(&(((&r + &a[1]) * &r + &a[3]) * &r + &a[4]));
                (r, t)
            } else {
                let ai = lc.inv(&a[0]);
                let r = &ai * &a[2];
                let t = &ai * (&a[3] + &r * &r);
                (r, t)
            }
        } else if l == 3 {
            let r = if lc.div(&b2) { lc.root(&(-&b6)) } else { -lc.inv(&b2) * &b4 };
            let t = &a[0] * &r + &a[2];
            (r, t)
        } else {
            // c4, c6 scale by units along the loop; only their residues matter
            let cur = bs(&a);
            let cc4 = &cur[0] * &cur[0] - 24 * &cur[1];
            let cube: BigInt = &cur[0] * &cur[0] * &cur[0];
            let cc6 = -cube + 36 * &cur[0] * &cur[1] - 216 * &cur[2];
            let r = if lc.div(&cc4) {
                -lc.inv(&BigInt::from(12)) * &cur[0]
            } else {
                -lc.inv(&(12 * &cc4)) * (&cc6 + &cur[0] * &cc4)
            };
            let t = -&half * (&a[0] * &r + &a[2]);
            (r, t)
        };
        let (r, t) = (lc.red(&r), lc.red(&t));
        a = rst(&a, &r, &zero, &t);
        let [b2, _, b6, b8] = bs(&a);
        debug_assert!(lc.div(&a[2]) && lc.div(&a[3]) && lc.div(&a[4]));

        if !lc.div(&b2) {
            let split = lc.quadroots(&BigInt::one(), &a[0], &(-&a[1]));
            return TateOut { kodaira: Kodaira::In(vd), f: 1, vd, split: Some(split), model: a };
        }
        if lc.val(&a[4]) < 2 {
            return TateOut { kodaira: Kodaira::II, f: vd, vd, split: None, model: a };
        }
        if lc.val(&b8) < 3 {
            return TateOut { kodaira: Kodaira::III, f: vd - 1, vd, split: None, model: a };
        }
        if lc.val(&b6) < 3 {
            return TateOut { kodaira: Kodaira::IV, f: vd - 2, vd, split: None, model: a };
        }
        // p | a1, a2; p^2 | a3, a4; p^3 | a6
        let (s, t) = if l == 2 {
            (lc.root(&a[1]), p * lc.root(&(&a[4] / &p2)))
        } else if l == 3 {
            (a[0].clone(), a[2].clone())
        } else {
            (-&a[0] * &half, -&a[2] * &half)
        };
        a = rst(&a, &zero, &s, &t);
        let b = &a[1] / p;
        let c = &a[3] / &p2;
        let d = &a[4] / &p3;
        let w = 27 * &d * &d - &b * &b * &c * &c + 4 * &b * &b * &b * &d - 18 * &b * &c * &d
            + 4 * &c * &c * &c;
        let x = 3 * &c - &b * &b;
        let sw = if lc.div(&w) {
            if lc.div(&x) {
                3
            } else {
                2
            }
        } else {
            1
        };
        if sw == 1 {
            return TateOut { kodaira: Kodaira::I0Star, f: vd - 4, vd, split: None, model: a };
        }
        if sw == 2 {
            let r = if l == 2 {
                lc.root(&c)
            } else if l == 3 {
                &c * lc.inv(&b)
            } else {
                (&b * &c - 9 * &d) * lc.inv(&(2 * &x))
            };
            let r = p * lc.red(&r);
            a = rst(&a, &r, &zero, &zero);
            let (mut ix, mut iy) = (3u32, 3u32);
            let (mut mx, mut my) = (p2.clone(), p2.clone());
            loop {
                let a3t = &a[2] / &my;
                let a6t = &a[4] / (&mx * &my);
                if !lc.div(&(&a3t * &a3t + 4 * &a6t)) {
                    break;
                }
                let t = if l == 2 { &my * lc.root(&a6t) } else { &my * lc.red(&(-&a3t * &half)) };
                a = rst(&a, &zero, &zero, &t);
                my = &my * p;
                iy += 1;
                let a2t = &a[1] / p;
                let a4t = &a[3] / (p * &mx);
                let a6t = &a[4] / (&mx * &my);
                if !lc.div(&(&a4t * &a4t - 4 * &a6t * &a2t)) {
                    break;
                }
                let r = if l == 2 {
                    &mx * lc.root(&(&a6t * lc.inv(&a2t)))
                } else {
                    &mx * lc.red(&(-&a4t * lc.inv(&(2 * &a2t))))
                };
                a = rst(&a, &r, &zero, &zero);
                mx = &mx * p;
                ix += 1;
            }
            let m = ix + iy - 5;
            return TateOut { kodaira: Kodaira::InStar(m), f: vd - ix - iy + 1, vd, split: None, model: a };
        }
        // triple root
        let r = if l == 2 {
            b.clone()
        } else if l == 3 {
            lc.root(&(-&d))
        } else {
            -&b * lc.inv(&BigInt::from(3))
        };
        let r = p * lc.red(&r);
        a = rst(&a, &r, &zero, &zero);
        let x3 = &a[2] / &p2;
        let x6 = &a[4] / &p4;
        if !lc.div(&(&x3 * &x3 + 4 * &x6)) {
            return TateOut { kodaira: Kodaira::IVStar, f: vd - 6, vd, split: None, model: a };
        }
        let t = if l == 2 { -&p2 * lc.root(&x6) } else { &p2 * lc.red(&(-&x3 * &half)) };
        a = rst(&a, &zero, &zero, &t);
        if lc.val(&a[3]) < 4 {
            return TateOut { kodaira: Kodaira::IIIStar, f: vd - 7, vd, split: None, model: a };
        }
        if lc.val(&a[4]) < 6 {
            return TateOut { kodaira: Kodaira::IIStar, f: vd - 8, vd, split: None, model: a };
        }
        // non-minimal: scale down by p and start again
        a = [&a[0] / p, &a[1] / &p2, &a[2] / &p3, &a[3] / &p4, &a[4] / (&p3 * &p3)];
        vd -= 12;
    }
}

/// Tate's algorithm at l with the refined classification.
pub fn tate_local(curve: &WeierstrassCurve, l: u64) -> Result<LocalReductionData, CurveError> {
    if !is_prime(l) {
        return Err(CurveError::NotPrime(l));
    }
    let out = tate_core(curve, l);
    let inv = curve.invariants();
    let vj = if inv.c4.is_zero() {
        None
    } else {
        Some(3 * valuation(&inv.c4, l).unwrap() as i64 - valuation(&inv.disc, l).unwrap() as i64)
    };
    let minimal = WeierstrassCurve::new(out.model.clone(), None).expect("minimal model is nonsingular");
    let c6 = &minimal.invariants().c6;
    let mut data = LocalReductionData {
        ell: l,
        kodaira: out.kodaira,
        f: out.f,
        v_disc_min: out.vd,
        vj,
        a_ell: None,
        minus_c6_class: None,
        reduction: Reduction::Good,
        e: None,
        split_by_c6: None,
        minimal_model: out.model,
    };
    match out.f {
        0 => {
            data.a_ell = Some(super::points::trace_on_model(&minimal, l));
            data.e = Some(1);
        }
        1 => {
            let split = out.split.expect("multiplicative");
            data.reduction = if split { Reduction::SplitMult } else { Reduction::NonsplitMult };
            data.minus_c6_class = Some(minus_c6(c6, l)?);
            if l >= 5 {
                data.split_by_c6 = Some(legendre(&(-c6), l) == 1);
            }
        }
        _ => {
            if vj.is_some_and(|v| v < 0) {
                data.reduction = Reduction::AdditivePmr;
                data.minus_c6_class = Some(minus_c6(c6, l)?);
            } else if l >= 5 {
                let e = 12 / (out.vd as u64).gcd(&12) as u32;
                data.e = Some(e);
                data.reduction = if (l - 1) % e as u64 == 0 {
                    Reduction::AdditivePga { e }
                } else {
                    Reduction::AdditivePgna { e }
                };
            } else {
                data.reduction = Reduction::AdditivePgWild;
            }
        }
    }
    Ok(data)
}

fn minus_c6(c6: &BigInt, l: u64) -> Result<SquareClass, CurveError> {
    let x = num_rational::BigRational::from_integer(-c6);
    Ok(square_class(&x, Place::Finite(l))?)
}
