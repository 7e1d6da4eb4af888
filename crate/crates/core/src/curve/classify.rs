use num_bigint::BigInt;
use num_rational::BigRational;
use serde::{Deserialize, Serialize};

use super::{tate_local, trace_over_extension, CurveError, Kodaira, Reduction, WeierstrassCurve};
use crate::numtheory::{cube_class_mu3, CubeClassMu3, SquareClass};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum PgKind {
    #[serde(rename = "PGA")]
    Pga,
    #[serde(rename = "PGNA")]
    Pgna,
}

/// Reduction class over the cyclotomic line at v.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "class", rename_all = "snake_case")]
pub enum RedClass {
    Good,
    Split,
    Nonsplit,
    Pmr { theta: SquareClass },
    Pga { e: Option<u32> },
    Pgna { e: Option<u32> },
    /// Potentially good at a wild prime with no override supplied.
    PgUnknown,
}

impl RedClass {
    pub fn is_mult(&self) -> bool {
        matches!(self, RedClass::Split | RedClass::Nonsplit)
    }
    pub fn is_pg(&self) -> bool {
        matches!(self, RedClass::Pga { .. } | RedClass::Pgna { .. } | RedClass::PgUnknown)
    }
    pub fn is_additive(&self) -> bool {
        self.is_pg() || matches!(self, RedClass::Pmr { .. })
    }
    pub fn e(&self) -> Option<u32> {
        match self {
            RedClass::Pga { e } | RedClass::Pgna { e } => *e,
            _ => None,
        }
    }
    pub fn name(&self) -> &'static str {
        match self {
            RedClass::Good => "good",
            RedClass::Split => "split",
            RedClass::Nonsplit => "nonsplit",
            RedClass::Pmr { .. } => "pmr",
            RedClass::Pga { .. } => "pga",
            RedClass::Pgna { .. } => "pgna",
            RedClass::PgUnknown => "pg",
        }
    }
}

/// Per-prime refinement supplied by the user where the built-in rules stop.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CurveOverride {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub reduction: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub e: Option<u32>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub pg_kind: Option<PgKind>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub theta: Option<SquareClass>,
}

/// Curve-side local inputs at a prime v of F above l, where F_v/Q_l is
/// unramified of residue degree r.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LocalCurveData {
    pub ell: u64,
    pub q: u64,
    pub residue_degree: u32,
    pub class: RedClass,
    pub kodaira: Kodaira,
    pub conductor_exponent: u32,
    pub v_disc_min: u32,
    pub ord_j: Option<i64>,
    /// a_v = q + 1 - #E(F_q), for good reduction.
    pub trace: Option<BigInt>,
    /// Cube class of the minimal discriminant in F_v(mu_3), when q = 2 mod 3.
    pub disc_cube_class: Option<CubeClassMu3>,
    pub override_used: bool,
}

impl LocalCurveData {
    pub fn mu_p_in_fv(&self, p: u64) -> bool {
        self.q % p == 1
    }
}

const PG_ORDERS: [u32; 6] = [2, 3, 4, 6, 8, 24];

fn conflict(ell: u64, detail: impl Into<String>) -> CurveError {
    CurveError::OverrideConflict { ell, detail: detail.into() }
}

/// Local data of E over F_v, F_v/Q_l unramified of degree r.
pub fn local_curve_data(
    curve: &WeierstrassCurve,
    ell: u64,
    residue_degree: u32,
    over: Option<&CurveOverride>,
) -> Result<LocalCurveData, CurveError> {
    if residue_degree == 0 {
        return Err(CurveError::Unsupported("residue degree must be positive".into()));
    }
    let q = ell
        .checked_pow(residue_degree)
        .ok_or_else(|| CurveError::Unsupported(format!("{ell}^{residue_degree} overflows")))?;
    let base = tate_local(curve, ell)?;
    let r = residue_degree;
    let mut class = match base.reduction {
        Reduction::Good => RedClass::Good,
        Reduction::SplitMult => RedClass::Split,
        Reduction::NonsplitMult if r % 2 == 0 => RedClass::Split,
        Reduction::NonsplitMult => RedClass::Nonsplit,
        Reduction::AdditivePmr => {
            let c = base.minus_c6_class.expect("pmr carries -c6");
            let theta = match c {
                SquareClass::Odd { ell, val_parity, unit_square, .. } => SquareClass::Odd {
                    ell,
                    q,
                    val_parity,
                    unit_square: unit_square || r % 2 == 0,
                },
                SquareClass::Dyadic { .. } if r == 1 => c,
                _ => {
                    if over.and_then(|o| o.theta).is_none() {
                        return Err(CurveError::Unsupported(
                            "2-adic square classes over extensions of Q_2 need an explicit theta override".into(),
                        ));
                    }
                    c
                }
            };
            RedClass::Pmr { theta }
        }
        Reduction::AdditivePga { e } | Reduction::AdditivePgna { e } => {
            if (q - 1) % e as u64 == 0 {
                RedClass::Pga { e: Some(e) }
            } else {
                RedClass::Pgna { e: Some(e) }
            }
        }
        Reduction::AdditivePgWild => RedClass::PgUnknown,
    };
    let mut override_used = false;
    if let Some(o) = over {
        if let Some(red) = o.reduction.as_deref() {
            let ok = match red {
                "good" => class == RedClass::Good,
                "split" => class == RedClass::Split,
                "nonsplit" => class == RedClass::Nonsplit,
                "pmr" => matches!(class, RedClass::Pmr { .. }),
                "pg" => class.is_pg(),
                "pga" => class.is_pg() && !matches!(class, RedClass::Pgna { .. }),
                "pgna" => class.is_pg() && !matches!(class, RedClass::Pga { .. }),
                other => return Err(conflict(ell, format!("unknown reduction {other:?}"))),
            };
            if !ok {
                return Err(conflict(ell, format!("override says {red}, Tate's algorithm gives {}", class.name())));
            }
            match red {
                "pga" if class == RedClass::PgUnknown => class = RedClass::Pga { e: None },
                "pgna" if class == RedClass::PgUnknown => class = RedClass::Pgna { e: None },
                _ => {}
            }
        }
        if let Some(e) = o.e {
            if !class.is_pg() {
                return Err(conflict(ell, "inertia order given for a prime that is not potentially good"));
            }
            if !PG_ORDERS.contains(&e) {
                return Err(conflict(ell, format!("inertia order {e} is not one of 2,3,4,6,8,24")));
            }
            match class {
                RedClass::Pga { e: Some(e0) } | RedClass::Pgna { e: Some(e0) } if e0 != e => {
                    return Err(conflict(ell, format!("override e={e}, computed e={e0}")));
                }
                RedClass::Pga { .. } => class = RedClass::Pga { e: Some(e) },
                RedClass::Pgna { .. } => class = RedClass::Pgna { e: Some(e) },
                _ => {}
            }
            override_used = true;
        }
        if let Some(kind) = o.pg_kind {
            let e = class.e().or(o.e);
            class = match (class, kind) {
                (RedClass::Pga { .. } | RedClass::PgUnknown, PgKind::Pga) => RedClass::Pga { e },
                (RedClass::Pgna { .. } | RedClass::PgUnknown, PgKind::Pgna) => RedClass::Pgna { e },
                (RedClass::Pga { .. } | RedClass::Pgna { .. }, _) => {
                    return Err(conflict(ell, format!("override {kind:?} contradicts computed {}", class.name())));
                }
                _ => return Err(conflict(ell, "pg_kind given for a prime that is not potentially good")),
            };
            override_used = true;
        }
        if let Some(theta) = o.theta {
            match class {
                RedClass::Pmr { theta: t0 } if r == 1 && t0 != theta => {
                    return Err(conflict(ell, format!("override theta {theta}, computed {t0}")));
                }
                RedClass::Pmr { .. } => class = RedClass::Pmr { theta },
                _ => return Err(conflict(ell, "theta given for a prime that is not potentially multiplicative")),
            }
            override_used = true;
        }
        if o.reduction.is_some() {
            override_used = true;
        }
    }
    let trace = base.a_ell.map(|a| trace_over_extension(a, ell, r));
    let disc_cube_class = if ell != 3 && q % 3 == 2 {
        let min = WeierstrassCurve::new(base.minimal_model.clone(), None)?;
        let mut c = cube_class_mu3(&BigRational::from_integer(min.disc().clone()), ell)?;
        c.q = q;
        Some(c)
    } else {
        None
    };
    Ok(LocalCurveData {
        ell,
        q,
        residue_degree: r,
        class,
        kodaira: base.kodaira,
        conductor_exponent: base.f,
        v_disc_min: base.v_disc_min,
        ord_j: base.vj,
        trace,
        disc_cube_class,
        override_used,
    })
}

/// Classification over Q_l as seen from the cyclotomic Z_p-extension.
pub fn classify_reduction(
    curve: &WeierstrassCurve,
    ell: u64,
    p: u64,
    over: Option<&CurveOverride>,
) -> Result<LocalCurveData, CurveError> {
    if ell == p {
        return Err(CurveError::Unsupported(format!("classification at l = p = {p} is not defined")));
    }
    local_curve_data(curve, ell, 1, over)
}
