use std::collections::{BTreeMap, BTreeSet};
use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::Ratio;
use num_traits::ToPrimitive;
use rayon::prelude::*;
use serde::Serialize;

use super::local::{evaluate_prime, Mults};
use super::table::{CurveAtV, Row};
use super::ParityError;
use crate::curve::RedClass;
use crate::galoislocal::{DatumInput, LocalCharSpec, LocalContext, LocalGaloisDatum, Side, SigmaSpec};
use crate::numtheory::{is_prime, CubeClassMu3, SquareClass};
use crate::reptheory::{character_table, FiniteGroup};

#[derive(Clone, Debug)]
pub struct SweepConfig {
    pub groups: Vec<Arc<FiniteGroup>>,
    pub primes: Vec<u64>,
    pub max_f: usize,
    pub inertia_orders: Vec<usize>,
}

impl SweepConfig {
    /// Every built-in group of order at most 24 plus GL2(F3), p in {3, 5, 7},
    /// f <= 6, |I| in {1, 2, 3}.
    pub fn standard() -> Self {
        use crate::reptheory::{cyclic, dihedral, gl2f3, sl2f3};
        let mut groups: Vec<Arc<FiniteGroup>> = (3..=12).map(dihedral).collect();
        groups.extend([2, 3, 4, 6].into_iter().map(cyclic));
        groups.push(sl2f3());
        groups.push(gl2f3());
        SweepConfig { groups, primes: vec![3, 5, 7], max_f: 6, inertia_orders: vec![1, 2, 3] }
    }
}

#[derive(Clone, Debug, Default, Serialize)]
pub struct SweepReport {
    /// Local configurations (datum, sigma, p, q) visited.
    pub contexts: u64,
    /// Admissible reduction pairs evaluated.
    pub cases: u64,
    pub row_coverage: BTreeMap<Row, u64>,
    pub absolute_checks: u64,
    pub direct_checks: u64,
    pub failures: Vec<String>,
}

impl SweepReport {
    fn merge(mut self, o: SweepReport) -> SweepReport {
        self.contexts += o.contexts;
        self.cases += o.cases;
        for (k, v) in o.row_coverage {
            *self.row_coverage.entry(k).or_default() += v;
        }
        self.absolute_checks += o.absolute_checks;
        self.direct_checks += o.direct_checks;
        self.failures.extend(o.failures);
        self
    }

    pub fn uncovered_rows(&self) -> Vec<Row> {
        Row::NONTRIVIAL
            .iter()
            .copied()
            .filter(|r| self.row_coverage.get(r).copied().unwrap_or(0) == 0)
            .collect()
    }
}

// (D, I, Frobenius coset representative), canonical up to conjugation
type Shape = (Vec<usize>, Vec<usize>, usize);

fn coset_min(g: &FiniteGroup, x: usize, i: &[usize]) -> usize {
    i.iter().map(|&a| g.mul(x, a)).min().expect("I is nonempty")
}

fn shapes(g: &FiniteGroup, cfg: &SweepConfig) -> Vec<Shape> {
    let subs = g.subgroups();
    let mut seen: BTreeSet<Shape> = BTreeSet::new();
    let mut out = Vec::new();
    for d in &subs {
        for i in subs.iter().filter(|i| {
            cfg.inertia_orders.contains(&i.len())
                && d.len() % i.len() == 0
                && d.len() / i.len() <= cfg.max_f
                && i.iter().all(|a| d.binary_search(a).is_ok())
                && g.normalizes(d, i)
        }) {
            let f = d.len() / i.len();
            for &x in d {
                // x must generate D/I
                let mut span: BTreeSet<usize> = i.iter().copied().collect();
                let mut y = x;
                for _ in 0..f {
                    span.extend(i.iter().map(|&a| g.mul(y, a)));
                    y = g.mul(y, x);
                }
                if span.len() != d.len() {
                    continue;
                }
                let key = (d.clone(), i.clone(), coset_min(g, x, i));
                if seen.contains(&key) {
                    continue;
                }
                for h in 0..g.order() {
                    let mut dd: Vec<usize> = d.iter().map(|&a| g.conj(h, a)).collect();
                    let mut ii: Vec<usize> = i.iter().map(|&a| g.conj(h, a)).collect();
                    dd.sort_unstable();
                    ii.sort_unstable();
                    let xx = coset_min(g, g.conj(h, x), &ii);
                    seen.insert((dd, ii, xx));
                }
                out.push(key);
            }
        }
    }
    out
}

/// One prime q per class of q mod lcm(12, p) among q >= 5; the
/// multiplicities only see q through these residues.
fn sample_primes(p: u64) -> Vec<u64> {
    let m = if p == 3 { 12 } else { 12 * p };
    let mut by_class: BTreeMap<u64, u64> = BTreeMap::new();
    let mut q = 5;
    while by_class.len() < (1..m).filter(|a| num_integer::gcd(*a, m) == 1).count() {
        if is_prime(q) && q != p {
            by_class.entry(q % m).or_insert(q);
        }
        q += 1;
    }
    by_class.into_values().collect()
}

fn ramified_quad_kernels(g: &FiniteGroup, d: &[usize], i: &[usize]) -> Vec<Vec<usize>> {
    let (h, emb) = g.subgroup_group(d).expect("D is a subgroup");
    h.subgroups()
        .into_iter()
        .map(|s| {
            let mut v: Vec<usize> = s.into_iter().map(|k| emb[k]).collect();
            v.sort_unstable();
            v
        })
        .filter(|k| 2 * k.len() == d.len() && !i.iter().all(|a| k.binary_search(a).is_ok()))
        .collect()
}

fn curve(q: u64, class: RedClass, trace: Option<i64>, cube_val: u8) -> CurveAtV {
    let e = class.e();
    let cube = match e {
        Some(3) | Some(6) if q % 3 == 2 => {
            Some(CubeClassMu3 { ell: q, q, valuation_mod_3: cube_val, unit_class: 0 })
        }
        _ => None,
    };
    CurveAtV {
        ell: q,
        q,
        class,
        ord_j: None,
        conductor_exponent: match class {
            RedClass::Good => 0,
            RedClass::Split | RedClass::Nonsplit => 1,
            _ => 2,
        },
        trace: trace.map(BigInt::from),
        disc_cube_class: cube,
    }
}

fn candidate_classes(q: u64, p: u64) -> Vec<CurveAtV> {
    let pi = p as i64;
    let qi = q as i64;
    let mut out = vec![
        // eigenvalues {1, q} and {-1, -q} mod p
        curve(q, RedClass::Good, Some((1 + qi).rem_euclid(pi)), 1),
        curve(q, RedClass::Good, Some((-(1 + qi)).rem_euclid(pi)), 1),
        curve(q, RedClass::Split, None, 1),
        curve(q, RedClass::Nonsplit, None, 1),
    ];
    for unit_square in [true, false] {
        let theta = SquareClass::Odd { ell: q, q, val_parity: 1, unit_square };
        out.push(curve(q, RedClass::Pmr { theta }, None, 1));
    }
    for e in [2u32, 3, 4, 6] {
        if (q - 1) % e as u64 == 0 {
            out.push(curve(q, RedClass::Pga { e: Some(e) }, None, 1));
        } else {
            for val in [1, 2] {
                out.push(curve(q, RedClass::Pgna { e: Some(e) }, None, val));
            }
        }
    }
    out
}

// The synthetic good curves carry eigenvalues {1, q} (partner split) or
// {-1, -q} (partner nonsplit) mod p; pair them only where that holds.
fn congruent_synthetic(c1: &CurveAtV, c2: &CurveAtV, p: u64) -> bool {
    let pi = p as i64;
    let qi = c1.q as i64;
    let tr = |c: &CurveAtV| c.trace.as_ref().and_then(|t| (t % pi).to_i64()).map(|t| t.rem_euclid(pi));
    let want = |other: &RedClass| match other {
        RedClass::Split => Some((1 + qi).rem_euclid(pi)),
        RedClass::Nonsplit => Some((-(1 + qi)).rem_euclid(pi)),
        _ => None,
    };
    match (c1.class, c2.class) {
        (RedClass::Good, RedClass::Good) => tr(c1) == tr(c2),
        (RedClass::Good, o) => want(&o).map_or(true, |w| tr(c1) == Some(w)),
        (o, RedClass::Good) => want(&o).map_or(true, |w| tr(c2) == Some(w)),
        // congruent potentially good curves have the same inertia image mod p
        (a, b) if a.is_pg() && b.is_pg() => {
            let prime_to_p = |e: Option<u32>| {
                let mut e = e.unwrap_or(0) as u64;
                while e > 0 && e % p == 0 {
                    e /= p;
                }
                e
            };
            prime_to_p(a.e()) == prime_to_p(b.e())
        }
        _ => true,
    }
}

fn check_context(
    datum: &LocalGaloisDatum,
    sigma: &SigmaSpec,
    p: u64,
    classes: &[CurveAtV],
    rep: &mut SweepReport,
) -> Result<(), ParityError> {
    let ctx = LocalContext::new(datum, sigma, p)?;
    let m = Mults::new(ctx);
    rep.contexts += 1;
    let tag = || {
        format!(
            "{} D={:?} I={:?} frob={} q={} p={p} sigma={}",
            datum.group().name(),
            datum.d(),
            datum.i(),
            datum.frob(),
            datum.q(),
            sigma.name()
        )
    };
    // self-duality of the multiplicities under chi -> chi^-1
    let omega = LocalCharSpec::omega(p, datum.q());
    let omega_inv = LocalCharSpec::unramified("omega^-1", Ratio::from_integer(0) - omega.unram);
    for side in [Side::Decomposition, Side::Cyclotomic] {
        if m.get(&omega, side)? != m.get(&omega_inv, side)? {
            rep.failures.push(format!("{}: <sigma, omega> != <sigma, omega^-1>", tag()));
        }
    }
    for c1 in classes {
        for c2 in classes.iter().filter(|c2| congruent_synthetic(c1, c2, p)) {
            let e = match evaluate_prime(c1, c2, &m, p) {
                Ok(e) => e,
                Err(ParityError::ImpossiblePair { .. }) => continue,
                Err(err) => {
                    rep.failures.push(format!("{}: {} / {}: {err}", tag(), c1.class.name(), c2.class.name()));
                    continue;
                }
            };
            rep.cases += 1;
            *rep.row_coverage.entry(e.row).or_default() += 1;
            let delta_sign = if e.delta_contribution == 0 { 1 } else { -1 };
            let what = || format!("{}: {:?} / {:?} ({})", tag(), c1.class, c2.class, e.row);
            if delta_sign != e.local_root_ratio {
                rep.failures.push(format!("{}: delta {} vs ratio {}", what(), e.delta_contribution, e.local_root_ratio));
            }
            if e.row == Row::Equal && (e.delta_contribution != 0 || e.local_root_ratio != 1) {
                rep.failures.push(format!("{}: a same-type pair contributes", what()));
            }
            if e.bookkeeping_cyc.exponent().rem_euclid(2) != e.delta_contribution as i64 {
                rep.failures.push(format!("{}: bookkeeping over D_cyc disagrees", what()));
            }
            let book_sign = if e.bookkeeping_d.exponent().rem_euclid(2) == 0 { 1 } else { -1 };
            if book_sign != e.local_root_ratio {
                rep.failures.push(format!("{}: bookkeeping over D disagrees", what()));
            }
            if let (Some(w1), Some(w2)) = (e.w1, e.w2) {
                rep.absolute_checks += 1;
                if w1 * w2 != e.local_root_ratio {
                    rep.failures.push(format!("{}: absolute W {w1}, {w2} vs ratio {}", what(), e.local_root_ratio));
                }
            }
            if let Some([d1, d2]) = e.direct_delta {
                rep.direct_checks += 1;
                if (d1 - d2 - e.delta_contribution as i64).rem_euclid(2) != 0 {
                    rep.failures.push(format!("{}: direct delta {d1} - {d2}", what()));
                }
            }
        }
    }
    Ok(())
}

fn sweep_group(g: &Arc<FiniteGroup>, cfg: &SweepConfig) -> SweepReport {
    let mut rep = SweepReport::default();
    let sigmas: Vec<SigmaSpec> = match character_table(g) {
        Ok(t) => t.irreducibles().iter().filter_map(|c| SigmaSpec::new(c.clone()).ok()).collect(),
        Err(e) => {
            rep.failures.push(format!("{}: {e}", g.name()));
            return rep;
        }
    };
    let shapes = shapes(g, cfg);
    for &p in &cfg.primes {
        let qs = sample_primes(p);
        let classes: Vec<(u64, Vec<CurveAtV>)> = qs.iter().map(|&q| (q, candidate_classes(q, p))).collect();
        for (d, i, frob) in &shapes {
            let kernels = ramified_quad_kernels(g, d, i);
            for (q, cls) in &classes {
                let mut annotations: Vec<Vec<(Vec<usize>, SquareClass)>> = Vec::new();
                match kernels.first() {
                    None => annotations.push(vec![]),
                    Some(k) => {
                        for unit_square in [true, false] {
                            let c = SquareClass::Odd { ell: *q, q: *q, val_parity: 1, unit_square };
                            annotations.push(vec![(k.clone(), c)]);
                        }
                    }
                }
                for quad in annotations {
                    let input = DatumInput {
                        group: g.clone(),
                        ell: *q,
                        q: *q,
                        count: 1,
                        d_gens: d.clone(),
                        i_gens: i.clone(),
                        frob: *frob,
                        quad,
                        cubic: None,
                    };
                    // data incompatible with q (Frobenius action on tame
                    // inertia) are simply not realised
                    let Ok(datum) = LocalGaloisDatum::new(input) else { continue };
                    for sigma in &sigmas {
                        if let Err(e) = check_context(&datum, sigma, p, cls, &mut rep) {
                            rep.failures.push(format!("{} D={d:?} q={q} p={p}: {e}", g.name()));
                        }
                    }
                }
            }
        }
    }
    rep
}

/// Check the per-prime identity (-1)^delta = W1/W2 on every admissible
/// reduction pair over every synthetic local datum of the configured groups.
pub fn localized_sweep(cfg: &SweepConfig) -> SweepReport {
    cfg.groups
        .par_iter()
        .map(|g| sweep_group(g, cfg))
        .reduce(SweepReport::default, SweepReport::merge)
}
