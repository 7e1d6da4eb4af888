use std::cell::RefCell;

use num_traits::ToPrimitive;
use serde::Serialize;

use super::table::{classify_pair, correction_terms, CurveAtV, PairRow, Row};
use super::ParityError;
use crate::curve::RedClass;
use crate::galoislocal::{GaloisError, LocalCharSpec, LocalContext, Side};
use crate::numtheory::{hilbert_classes, Fp2, SquareClass};

/// Memoised multiplicities <sigma_v, chi> at one context.
pub struct Mults<'a> {
    ctx: LocalContext<'a>,
    cache: RefCell<Vec<(LocalCharSpec, Side, i64)>>,
}

impl<'a> Mults<'a> {
    pub fn new(ctx: LocalContext<'a>) -> Self {
        Mults { ctx, cache: RefCell::new(Vec::new()) }
    }

    pub fn ctx(&self) -> &LocalContext<'a> {
        &self.ctx
    }

    pub fn get(&self, chi: &LocalCharSpec, side: Side) -> Result<i64, GaloisError> {
        if let Some(&(_, _, m)) = self.cache.borrow().iter().find(|(c, s, _)| c == chi && *s == side) {
            return Ok(m);
        }
        let m = self.ctx.multiplicity(chi, side)?;
        self.cache.borrow_mut().push((chi.clone(), side, m));
        Ok(m)
    }

    fn sum(&self, chis: &[LocalCharSpec], side: Side) -> Result<Vec<TermValue>, GaloisError> {
        chis.iter()
            .map(|c| Ok(TermValue { name: c.name.clone(), multiplicity: self.get(c, side)? }))
            .collect()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TermValue {
    pub name: String,
    pub multiplicity: i64,
}

fn total(terms: &[TermValue]) -> i64 {
    terms.iter().map(|t| t.multiplicity).sum()
}

fn sign(n: i64) -> i8 {
    if n.rem_euclid(2) == 0 {
        1
    } else {
        -1
    }
}

/// Membership of v in the sets S_i, N_i, W, X, Y3, Z3 (before
/// intersecting with Sigma_0).
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
pub struct Membership {
    pub s1: bool,
    pub n1: bool,
    pub s2: bool,
    pub n2: bool,
    pub w: bool,
    pub x: bool,
    pub y3: bool,
    pub z3: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BranchFlags {
    pub mu_p_in_fv: bool,
    pub sigma_ramified: bool,
    /// Only for pmr / pmr pairs.
    pub theta_equal: Option<bool>,
    pub wild: bool,
}

/// m1, m2 and T restricted to one prime.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
pub struct Bookkeeping {
    pub m1: i64,
    pub m2: i64,
    pub t: i64,
}

impl Bookkeeping {
    pub fn exponent(&self) -> i64 {
        self.m1 - self.m2 + self.t
    }

    pub fn scaled(&self, k: i64) -> Bookkeeping {
        Bookkeeping { m1: self.m1 * k, m2: self.m2 * k, t: self.t * k }
    }

    pub fn add(&self, o: &Bookkeeping) -> Bookkeeping {
        Bookkeeping { m1: self.m1 + o.m1, m2: self.m2 + o.m2, t: self.t + o.t }
    }
}

/// Everything computed at one prime of F (values per place; `count` places
/// share them).
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PrimeEval {
    pub ell: u64,
    pub q: u64,
    pub count: u32,
    pub class1: RedClass,
    pub class2: RedClass,
    pub row: Row,
    pub swapped: bool,
    pub flags: BranchFlags,
    pub sets: Membership,
    /// Table terms with multiplicities over D_cyc.
    pub correction_terms: Vec<TermValue>,
    pub delta_contribution: u8,
    /// Root-side terms with multiplicities over D.
    pub ratio_terms: Vec<TermValue>,
    pub local_root_ratio: i8,
    pub w1: Option<i8>,
    pub w2: Option<i8>,
    /// delta_{E_i,v}(sigma) from the constituents of rho_{E_i,v}, when known.
    pub direct_delta: Option<[i64; 2]>,
    pub bookkeeping_cyc: Bookkeeping,
    pub bookkeeping_d: Bookkeeping,
}

fn theta_of(c: &CurveAtV) -> Option<SquareClass> {
    match c.class {
        RedClass::Pmr { theta } => Some(theta),
        _ => None,
    }
}

/// The local root-number ratio W(E1 x sigma_v) / W(E2 x sigma_v) from the
/// case formulas, read over D. Returns the terms whose multiplicities make
/// up the exponent.
fn root_ratio_terms(c1: &CurveAtV, c2: &CurveAtV, p: u64) -> Result<Vec<LocalCharSpec>, ParityError> {
    use RedClass::*;
    let q = c1.q;
    let one = LocalCharSpec::one;
    let kappa = LocalCharSpec::kappa;
    let omega = || LocalCharSpec::omega(p, q);
    let th3 = |c: &CurveAtV| {
        c.disc_cube_class
            .map(LocalCharSpec::theta3)
            .ok_or(ParityError::ImpossiblePair { ell: c.ell, detail: "pgna curve without a cube class".into() })
    };
    let terms = match (&c1.class, &c2.class) {
        (Good, Good) | (Split, Split) | (Nonsplit, Nonsplit) => vec![],
        (Pga { .. } | Pgna { .. } | PgUnknown, Pga { .. } | Pgna { .. } | PgUnknown) => vec![],
        (Good, Split) | (Split, Good) => vec![one()],
        (Good, Nonsplit) | (Nonsplit, Good) => vec![kappa()],
        (Split, Nonsplit) | (Nonsplit, Split) => vec![one(), kappa()],
        (Split, Pga { .. }) | (Pga { .. }, Split) => vec![one()],
        (Nonsplit, Pga { .. }) | (Pga { .. }, Nonsplit) => vec![kappa()],
        (Split, Pgna { .. }) => vec![kappa(), th3(c2)?],
        (Pgna { .. }, Split) => vec![kappa(), th3(c1)?],
        (Nonsplit, Pgna { .. }) => vec![one(), th3(c2)?],
        (Pgna { .. }, Nonsplit) => vec![one(), th3(c1)?],
        (Pmr { theta: a }, Pmr { theta: b }) => {
            if a == b {
                vec![]
            } else {
                let t = LocalCharSpec::theta(*a);
                vec![t.clone(), omega().twist(&t)?]
            }
        }
        (Pmr { theta }, Pga { .. }) | (Pga { .. }, Pmr { theta }) => vec![LocalCharSpec::theta(*theta)],
        (Pmr { theta }, Pgna { .. }) | (Pgna { .. }, Pmr { theta }) => {
            let t = LocalCharSpec::theta(*theta);
            let pg = if matches!(c1.class, Pgna { .. }) { c1 } else { c2 };
            vec![omega().twist(&t)?, th3(pg)?.twist(&t)?]
        }
        _ => {
            return Err(ParityError::ImpossiblePair {
                ell: c1.ell,
                detail: format!("no root-number case for {} / {}", c1.class.name(), c2.class.name()),
            })
        }
    };
    Ok(terms)
}

fn quad_at_minus_one(d: &SquareClass, ell: u64, q: u64) -> Result<i8, ParityError> {
    if d.is_unramified() {
        return Ok(1);
    }
    let minus_one = if ell == 2 {
        SquareClass::Dyadic { rep: -1 }
    } else {
        SquareClass::Odd { ell, q, val_parity: 0, unit_square: q % 4 == 1 }
    };
    Ok(hilbert_classes(d, &minus_one)?)
}

/// W(E x sigma_v) at one place, or None when the local formulas do not
/// determine it.
pub fn absolute_w(c: &CurveAtV, m: &Mults) -> Option<i8> {
    let ctx = m.ctx();
    let det_m1 = ctx.det_sigma_minus_one().ok()?;
    let dim = ctx.sigma().dim();
    let pow = |x: i8| if dim % 2 == 0 { 1 } else { x };
    let side = Side::Decomposition;
    let w = match c.class {
        RedClass::Good => det_m1,
        RedClass::Split => det_m1 * sign(m.get(&LocalCharSpec::one(), side).ok()?),
        RedClass::Nonsplit => det_m1 * sign(m.get(&LocalCharSpec::kappa(), side).ok()?),
        RedClass::Pmr { theta } => {
            let phi_m1 = quad_at_minus_one(&theta, c.ell, c.q).ok()?;
            det_m1 * pow(phi_m1) * sign(m.get(&LocalCharSpec::theta(theta), side).ok()?)
        }
        RedClass::Pga { e: Some(e) } if c.ell >= 5 => {
            let e = e as u64;
            let eps = if e % 2 == 0 && ((c.q - 1) / e) % 2 == 1 { -1 } else { 1 };
            det_m1 * pow(eps)
        }
        _ => {
            // sigma_v unramified of even dimension: W(E)^dim = 1
            if ctx.sigma_ramified() || dim % 2 != 0 {
                return None;
            }
            let d = ctx.det_sigma_frob()?;
            let d = d.to_i8()?;
            if c.conductor_exponent % 2 == 0 {
                1
            } else {
                d
            }
        }
    };
    Some(w)
}

/// The constituents chi of rho_{E,v} seen over F_{cyc,v}, as characters.
fn constituents(c: &CurveAtV, p: u64) -> Option<Vec<LocalCharSpec>> {
    let q = c.q;
    let omega = LocalCharSpec::omega(p, q);
    match c.class {
        RedClass::Good => {
            let a = c.trace.as_ref()?;
            let pi = p as i64;
            let a = (a % pi).to_i64()?.rem_euclid(pi) as u64;
            let f = Fp2::new(p);
            let [x, y] = f.quadratic_roots(a, q % p);
            Some(vec![
                LocalCharSpec::teichmuller("phi", &f, x)?,
                LocalCharSpec::teichmuller("psi", &f, y)?,
            ])
        }
        RedClass::Split => Some(vec![omega]),
        RedClass::Nonsplit => omega.twist(&LocalCharSpec::kappa()).ok().map(|c| vec![c]),
        RedClass::Pmr { theta } => omega.twist(&LocalCharSpec::theta(theta)).ok().map(|c| vec![c]),
        _ => None,
    }
}

/// delta_{E,v}(sigma) = sum over chi of <sigma_v, chi><rho_{E,v}, chi> over D_cyc.
pub fn direct_delta(c: &CurveAtV, m: &Mults, p: u64) -> Option<i64> {
    let chis = constituents(c, p)?;
    chis.iter().map(|x| m.get(x, Side::Cyclotomic).ok()).sum()
}

fn membership(c1: &CurveAtV, c2: &CurveAtV, p: u64, mu_p: bool, sigma_ram: bool) -> Membership {
    use RedClass::*;
    let pair = |a: &RedClass, b: &RedClass, f: &dyn Fn(&RedClass, &RedClass) -> bool| f(a, b) || f(b, a);
    let (a, b) = (&c1.class, &c2.class);
    let p3 = p == 3 && !mu_p;
    Membership {
        s1: *a == Split,
        n1: *a == Nonsplit,
        s2: *b == Split,
        n2: *b == Nonsplit,
        w: matches!((a, b), (Pmr { theta: x }, Pmr { theta: y }) if x != y) && !mu_p && sigma_ram,
        x: pair(a, b, &|x, y| matches!((x, y), (Pmr { .. }, Pga { .. }))) && sigma_ram,
        y3: p3 && pair(a, b, &|x, y| x.is_mult() && matches!(y, Pgna { .. })),
        z3: p3 && pair(a, b, &|x, y| matches!((x, y), (Pmr { .. }, Pgna { .. }))) && sigma_ram,
    }
}

fn bookkeeping(
    c1: &CurveAtV,
    c2: &CurveAtV,
    s: &Membership,
    m: &Mults,
    p: u64,
    side: Side,
) -> Result<Bookkeeping, ParityError> {
    let mult = |chi: &LocalCharSpec| -> Result<i64, ParityError> { Ok(m.get(chi, side)?) };
    let one = LocalCharSpec::one();
    let kappa = LocalCharSpec::kappa();
    let omega = LocalCharSpec::omega(p, c1.q);
    let mut b = Bookkeeping::default();
    if s.s1 {
        b.m1 += mult(&one)?;
    }
    if s.n1 {
        b.m1 += mult(&kappa)?;
    }
    if s.s2 {
        b.m2 += mult(&one)?;
    }
    if s.n2 {
        b.m2 += mult(&kappa)?;
    }
    let pmr_theta = theta_of(c1).or(theta_of(c2)).map(LocalCharSpec::theta);
    let pgna_theta3 = || {
        [c1, c2]
            .iter()
            .find(|c| matches!(c.class, RedClass::Pgna { .. }))
            .and_then(|c| c.disc_cube_class)
            .map(LocalCharSpec::theta3)
            .ok_or(ParityError::ImpossiblePair { ell: c1.ell, detail: "pgna curve without a cube class".into() })
    };
    if s.w {
        let t = LocalCharSpec::theta(theta_of(c1).expect("pmr"));
        b.t += mult(&t)? + mult(&omega.twist(&t)?)?;
    }
    if s.x {
        b.t += mult(pmr_theta.as_ref().expect("pmr"))?;
    }
    if s.y3 {
        b.t += mult(&kappa)? + mult(&one)? + mult(&pgna_theta3()?)?;
    }
    if s.z3 {
        let t = pmr_theta.expect("pmr");
        b.t += mult(&omega.twist(&t)?)? + mult(&t.twist(&pgna_theta3()?)?)?;
    }
    Ok(b)
}

/// Evaluate one prime v (not above p) for the pair (E1, E2).
pub fn evaluate_prime(c1: &CurveAtV, c2: &CurveAtV, m: &Mults, p: u64) -> Result<PrimeEval, ParityError> {
    let ctx = m.ctx();
    let datum = ctx.datum();
    let q = datum.q();
    if c1.q != q || c2.q != q {
        return Err(ParityError::Mismatch(format!(
            "residue field sizes differ at {}: curves {} / {}, field {}",
            datum.ell(),
            c1.q,
            c2.q,
            q
        )));
    }
    let row: PairRow = classify_pair(c1, c2, p)?;
    let terms = correction_terms(&row, p, q)?;
    let correction_terms = m.sum(&terms, Side::Cyclotomic)?;
    let delta_contribution = total(&correction_terms).rem_euclid(2) as u8;
    let ratio_terms = m.sum(&root_ratio_terms(c1, c2, p)?, Side::Decomposition)?;
    let local_root_ratio = sign(total(&ratio_terms));
    let mu_p = datum.mu_p_in_fv(p);
    let sigma_ram = ctx.sigma_ramified();
    let sets = membership(c1, c2, p, mu_p, sigma_ram);
    let bookkeeping_cyc = bookkeeping(c1, c2, &sets, m, p, Side::Cyclotomic)?;
    let bookkeeping_d = bookkeeping(c1, c2, &sets, m, p, Side::Decomposition)?;
    let direct_delta = match (direct_delta(c1, m, p), direct_delta(c2, m, p)) {
        (Some(a), Some(b)) => Some([a, b]),
        _ => None,
    };
    let theta_equal = match (theta_of(c1), theta_of(c2)) {
        (Some(a), Some(b)) => Some(a == b),
        _ => None,
    };
    Ok(PrimeEval {
        ell: datum.ell(),
        q,
        count: datum.count(),
        class1: c1.class,
        class2: c2.class,
        row: row.row,
        swapped: row.swapped,
        flags: BranchFlags { mu_p_in_fv: mu_p, sigma_ramified: sigma_ram, theta_equal, wild: c1.ell <= 3 },
        sets,
        correction_terms,
        delta_contribution,
        ratio_terms,
        local_root_ratio,
        w1: absolute_w(c1, m),
        w2: absolute_w(c2, m),
        direct_delta,
        bookkeeping_cyc,
        bookkeeping_d,
    })
}
