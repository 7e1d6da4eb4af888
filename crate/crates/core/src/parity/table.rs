use std::fmt;

use num_bigint::BigInt;
use serde::Serialize;

use super::ParityError;
use crate::curve::{LocalCurveData, RedClass};
use crate::galoislocal::LocalCharSpec;
use crate::numtheory::{CubeClassMu3, SquareClass};

/// The curve-side inputs at v that the parity engine reads.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CurveAtV {
    pub ell: u64,
    pub q: u64,
    pub class: RedClass,
    pub ord_j: Option<i64>,
    pub conductor_exponent: u32,
    pub trace: Option<BigInt>,
    pub disc_cube_class: Option<CubeClassMu3>,
}

impl From<&LocalCurveData> for CurveAtV {
    fn from(d: &LocalCurveData) -> Self {
        CurveAtV {
            ell: d.ell,
            q: d.q,
            class: d.class,
            ord_j: d.ord_j,
            conductor_exponent: d.conductor_exponent,
            trace: d.trace.clone(),
            disc_cube_class: d.disc_cube_class,
        }
    }
}

impl CurveAtV {
    /// v divides N / N(E[p]): the conductor drops on passing to E[p].
    pub fn conductor_drops(&self, p: u64) -> bool {
        let divides = |x: i64| x % p as i64 == 0;
        match self.class {
            RedClass::Good => false,
            RedClass::Split | RedClass::Nonsplit | RedClass::Pmr { .. } => {
                self.ord_j.map_or(false, |j| divides(j.abs()))
            }
            _ if self.ell <= 3 => true,
            RedClass::Pga { e } | RedClass::Pgna { e } => e.map_or(true, |e| e as u64 % p == 0),
            RedClass::PgUnknown => true,
        }
    }
}

/// Rows of the local comparison table (E1 column first). `Equal` covers
/// every pair of the same type, which contributes nothing.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum Row {
    GoodSplit,
    GoodNonsplit,
    SplitNonsplit,
    PmrPmr,
    PmrPga,
    SplitPga,
    NonsplitPga,
    SplitPgna,
    NonsplitPgna,
    PmrPgna,
    Equal,
}

impl Row {
    pub const NONTRIVIAL: [Row; 10] = [
        Row::GoodSplit,
        Row::GoodNonsplit,
        Row::SplitNonsplit,
        Row::PmrPmr,
        Row::PmrPga,
        Row::SplitPga,
        Row::NonsplitPga,
        Row::SplitPgna,
        Row::NonsplitPgna,
        Row::PmrPgna,
    ];

    pub fn label(&self) -> &'static str {
        match self {
            Row::GoodSplit => "good / split",
            Row::GoodNonsplit => "good / nonsplit",
            Row::SplitNonsplit => "split / nonsplit",
            Row::PmrPmr => "pmr / pmr (theta differs)",
            Row::PmrPga => "pmr / pga",
            Row::SplitPga => "split / pga",
            Row::NonsplitPga => "nonsplit / pga",
            Row::SplitPgna => "split / pgna",
            Row::NonsplitPgna => "nonsplit / pgna",
            Row::PmrPgna => "pmr / pgna",
            Row::Equal => "same type",
        }
    }
}

impl fmt::Display for Row {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

/// A classified pair: the row, whether E1 sits in the second column, and
/// the twisting data the row needs.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PairRow {
    pub row: Row,
    pub swapped: bool,
    pub theta: Option<SquareClass>,
    pub theta3: Option<CubeClassMu3>,
}

fn impossible(ell: u64, detail: impl Into<String>) -> ParityError {
    ParityError::ImpossiblePair { ell, detail: detail.into() }
}

fn theta3_of(c: &CurveAtV) -> Result<CubeClassMu3, ParityError> {
    match c.disc_cube_class {
        Some(k) if k.valuation_mod_3 != 0 => Ok(k),
        _ => Err(impossible(c.ell, "no cube class of valuation prime to 3 for the potentially good curve")),
    }
}

/// Identify the table row for (E1, E2) at v, rejecting pairs that cannot
/// occur for congruent curves.
pub fn classify_pair(c1: &CurveAtV, c2: &CurveAtV, p: u64) -> Result<PairRow, ParityError> {
    use RedClass::*;
    let q = c1.q;
    let ell = c1.ell;
    let plain = |row, swapped| Ok(PairRow { row, swapped, theta: None, theta3: None });
    let (a, b) = (&c1.class, &c2.class);
    // put the "left column" curve first
    let order = |x: &RedClass| match x {
        Good => 0,
        Split => 1,
        Nonsplit => 2,
        Pmr { .. } => 3,
        Pga { .. } => 4,
        Pgna { .. } => 5,
        PgUnknown => 6,
    };
    let swapped = order(a) > order(b);
    let (l, r) = if swapped { (c2, c1) } else { (c1, c2) };
    match (&l.class, &r.class) {
        (Good, Good) | (Split, Split) | (Nonsplit, Nonsplit) => plain(Row::Equal, false),
        (Good, Split) => plain(Row::GoodSplit, swapped),
        (Good, Nonsplit) => plain(Row::GoodNonsplit, swapped),
        (Good, _) => Err(impossible(ell, "good against additive reduction")),
        (Split, Nonsplit) => {
            if (q + 1) % p != 0 {
                return Err(impossible(ell, "split against nonsplit needs q = -1 mod p"));
            }
            plain(Row::SplitNonsplit, swapped)
        }
        (Split | Nonsplit, Pmr { .. }) => Err(impossible(ell, "multiplicative against potentially multiplicative")),
        (Pmr { theta: t1 }, Pmr { theta: t2 }) => {
            if t1 == t2 {
                return plain(Row::Equal, false);
            }
            let prod = t1.mul(t2)?;
            if (q + 1) % p != 0 || !prod.is_unramified() || prod.is_trivial() {
                return Err(impossible(ell, "pmr twists differing by a character other than omega = kappa"));
            }
            // theta of E1, whichever column it is in
            Ok(PairRow { row: Row::PmrPmr, swapped, theta: Some(c1_theta(c1)), theta3: None })
        }
        (Split | Nonsplit, Pga { e }) => {
            if p != 3 || q % 3 != 1 || !matches!(e, None | Some(3)) {
                return Err(impossible(ell, "multiplicative against pga needs p = 3, mu_3 in F_v, e = 3"));
            }
            let row = if l.class == Split { Row::SplitPga } else { Row::NonsplitPga };
            plain(row, swapped)
        }
        (Split | Nonsplit, Pgna { e }) => {
            if p != 3 || q % 3 != 2 || !matches!(e, None | Some(3)) {
                return Err(impossible(ell, "multiplicative against pgna needs p = 3, mu_3 not in F_v, e = 3"));
            }
            let row = if l.class == Split { Row::SplitPgna } else { Row::NonsplitPgna };
            Ok(PairRow { row, swapped, theta: None, theta3: Some(theta3_of(r)?) })
        }
        (Pmr { theta }, Pga { e }) => {
            let ok = match e {
                None | Some(2) => true,
                Some(6) => p == 3 && q % 3 == 1,
                _ => false,
            };
            if !ok {
                return Err(impossible(ell, "pmr against pga needs e = 2 (or e = 6 with p = 3)"));
            }
            Ok(PairRow { row: Row::PmrPga, swapped, theta: Some(*theta), theta3: None })
        }
        (Pmr { theta }, Pgna { e }) => {
            if p != 3 || q % 3 != 2 || !matches!(e, None | Some(6)) {
                return Err(impossible(ell, "pmr against pgna needs p = 3, mu_3 not in F_v, e = 6"));
            }
            Ok(PairRow { row: Row::PmrPgna, swapped, theta: Some(*theta), theta3: Some(theta3_of(r)?) })
        }
        (Pga { .. }, Pgna { .. }) => Err(impossible(ell, "pga against pgna")),
        (Pga { .. } | Pgna { .. } | PgUnknown, Pga { .. } | Pgna { .. } | PgUnknown) => plain(Row::Equal, false),
        (Split | Nonsplit | Pmr { .. }, PgUnknown) => Err(ParityError::Curve(crate::curve::CurveError::NeedsOverride(ell))),
        _ => unreachable!("pairs are ordered"),
    }
}

fn c1_theta(c: &CurveAtV) -> SquareClass {
    match c.class {
        RedClass::Pmr { theta } => theta,
        _ => unreachable!("called on pmr only"),
    }
}

/// The correction terms of a row: the delta-side contribution is the sum
/// of sigma's multiplicities in them.
pub fn correction_terms(row: &PairRow, p: u64, q: u64) -> Result<Vec<LocalCharSpec>, ParityError> {
    let one = LocalCharSpec::one();
    let kappa = LocalCharSpec::kappa();
    let omega = LocalCharSpec::omega(p, q);
    let th = || LocalCharSpec::theta(row.theta.expect("row carries theta"));
    let th3 = || LocalCharSpec::theta3(row.theta3.expect("row carries theta3"));
    Ok(match row.row {
        Row::Equal => vec![],
        Row::GoodSplit | Row::SplitPga => vec![one],
        Row::GoodNonsplit | Row::NonsplitPga => vec![kappa],
        Row::SplitNonsplit => vec![one, kappa],
        Row::PmrPmr => vec![th(), omega.twist(&th())?],
        Row::PmrPga => vec![th()],
        Row::SplitPgna => vec![kappa, th3()],
        Row::NonsplitPgna => vec![one, th3()],
        Row::PmrPgna => vec![omega.twist(&th())?, th3().twist(&th())?],
    })
}
