use std::collections::BTreeSet;

use num_traits::Zero;
use serde::Serialize;

use super::local::{evaluate_prime, Bookkeeping, Mults, PrimeEval};
use super::table::CurveAtV;
use super::ParityError;
use crate::congruence::{check_congruence, CongruenceResult, CongruenceStatus};
use crate::curve::{local_curve_data, trace_of_frobenius, WeierstrassCurve};
use crate::galoislocal::{FieldSpec, LocalContext, SigmaSpec};
use crate::numtheory::{is_prime, prime_divisors, primes_up_to};

pub const REPORT_VERSION: u32 = 1;

#[derive(Clone, Debug, Serialize)]
pub struct CurveSummary {
    pub label: Option<String>,
    pub ainvs: Vec<String>,
    pub conductor: String,
    pub bad_primes: Vec<u64>,
}

impl CurveSummary {
    pub fn of(e: &WeierstrassCurve) -> Self {
        let n = e.conductor();
        CurveSummary {
            label: e.label.clone(),
            ainvs: e.a.iter().map(|x| x.to_string()).collect(),
            conductor: n.to_string(),
            bad_primes: prime_divisors(&n),
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct FieldSummary {
    pub name: String,
    pub base: String,
    pub group: String,
    pub archimedean_places: u32,
    pub ramified_primes: Vec<u64>,
    pub sigma: String,
    pub sigma_dim: i64,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum AssumptionStatus {
    Checked,
    Declared,
    Unverified,
}

#[derive(Clone, Debug, Serialize)]
pub struct Assumption {
    pub name: String,
    pub status: AssumptionStatus,
    pub detail: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct Sigma0Entry {
    pub ell: u64,
    pub reasons: Vec<String>,
}

#[derive(Clone, Debug, Serialize)]
pub struct PrimeEntry {
    pub in_sigma0: bool,
    #[serde(flatten)]
    pub eval: PrimeEval,
}

/// The primes of Sigma_0 in each of the sets S_i, N_i, W, X, Y3, Z3.
#[derive(Clone, Debug, Default, Serialize)]
pub struct AggregateSets {
    pub s1: Vec<u64>,
    pub s2: Vec<u64>,
    pub n1: Vec<u64>,
    pub n2: Vec<u64>,
    pub w: Vec<u64>,
    pub x: Vec<u64>,
    pub y3: Vec<u64>,
    pub z3: Vec<u64>,
}

#[derive(Clone, Debug, Serialize)]
pub struct Check {
    pub name: String,
    pub ok: bool,
    pub detail: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct ParityReport {
    pub version: u32,
    pub p: u64,
    pub e1: CurveSummary,
    pub e2: CurveSummary,
    pub field: FieldSummary,
    pub congruence: Option<CongruenceResult>,
    /// Finite primes of Sigma not above p.
    pub sigma_primes: Vec<u64>,
    pub sigma0: Vec<Sigma0Entry>,
    pub per_prime: Vec<PrimeEntry>,
    pub delta_side_parity: u8,
    pub root_side_ratio: i8,
    pub aggregate_sets: AggregateSets,
    pub m1: i64,
    pub m2: i64,
    pub t: i64,
    /// W(E_i/F_v, sigma) over the places above p, when determined.
    pub w_above_p: Option<i8>,
    pub w_archimedean: i8,
    pub w1: Option<i8>,
    pub w2: Option<i8>,
    pub thm4_consistent: bool,
    pub checks: Vec<Check>,
    pub assumptions: Vec<Assumption>,
    pub overrides_used: Vec<String>,
}

impl ParityReport {
    pub fn all_checks_pass(&self) -> bool {
        self.checks.iter().all(|c| c.ok)
    }
}

#[derive(Clone, Debug)]
pub struct ReportOptions {
    pub check_congruence: bool,
    pub bound: Option<u64>,
}

impl Default for ReportOptions {
    fn default() -> Self {
        ReportOptions { check_congruence: true, bound: None }
    }
}

fn sign(n: i64) -> i8 {
    if n.rem_euclid(2) == 0 {
        1
    } else {
        -1
    }
}

fn pow(x: i8, k: u32) -> i8 {
    if k % 2 == 0 {
        1
    } else {
        x
    }
}

// E[p](Q) = 0 as soon as #E(F_l) is prime to p for one good l.
fn no_rational_p_torsion(e: &WeierstrassCurve, p: u64) -> Result<Option<u64>, ParityError> {
    let n = e.conductor();
    for l in primes_up_to(500) {
        if l == p || (&n % l).is_zero() {
            continue;
        }
        let a = trace_of_frobenius(e, l)?;
        if (l as i64 + 1 - a).rem_euclid(p as i64) != 0 {
            return Ok(Some(l));
        }
    }
    Ok(None)
}

fn sigma0_reasons(c: &CurveAtV, which: usize, p: u64) -> Option<String> {
    if !c.conductor_drops(p) {
        return None;
    }
    let why = match c.class {
        crate::curve::RedClass::Split | crate::curve::RedClass::Nonsplit => {
            format!("E{which} multiplicative, p | ord j = {}", c.ord_j.unwrap_or(0))
        }
        crate::curve::RedClass::Pmr { .. } => format!("E{which} pmr, p | ord j = {}", c.ord_j.unwrap_or(0)),
        _ if c.ell <= 3 => format!("E{which} additive at a wild prime (included conservatively)"),
        cl => format!("E{which} potentially good, p | e = {}", cl.e().unwrap_or(0)),
    };
    Some(why)
}

/// Both sides of the parity identity for (E1, E2, sigma) over the field K/F.
pub fn global_report(
    e1: &WeierstrassCurve,
    e2: &WeierstrassCurve,
    p: u64,
    field: &FieldSpec,
    sigma: &SigmaSpec,
    opts: &ReportOptions,
) -> Result<ParityReport, ParityError> {
    if p < 3 || !is_prime(p) {
        return Err(ParityError::BadPrime(p));
    }
    let (n1, n2) = (e1.conductor(), e2.conductor());
    let mut assumptions = Vec::new();

    // H1: good reduction above p
    if (&n1 % p).is_zero() || (&n2 % p).is_zero() {
        return Err(ParityError::Hypothesis {
            name: "H1",
            detail: format!("p = {p} divides a conductor ({n1}, {n2})"),
        });
    }
    assumptions.push(Assumption {
        name: "H1".into(),
        status: AssumptionStatus::Checked,
        detail: format!("E1 and E2 have good reduction at {p}"),
    });
    // H2: ordinary at p
    let ap = trace_of_frobenius(e1, p)?;
    if ap.rem_euclid(p as i64) == 0 {
        return Err(ParityError::Hypothesis { name: "H2", detail: format!("a_{p}(E1) = {ap} is divisible by p") });
    }
    assumptions.push(Assumption {
        name: "H2".into(),
        status: AssumptionStatus::Checked,
        detail: format!("E1 ordinary at {p}: a_{p} = {ap}"),
    });

    let congruence = if opts.check_congruence {
        let c = check_congruence(e1, e2, p, opts.bound)?;
        if let CongruenceStatus::Refuted { ell, a1, a2 } = c.status {
            return Err(ParityError::NotCongruent { p, ell, a1, a2 });
        }
        Some(c)
    } else {
        None
    };
    let torsion = no_rational_p_torsion(e1, p)?;
    assumptions.push(Assumption {
        name: "H3".into(),
        status: match torsion {
            Some(_) => AssumptionStatus::Checked,
            None => AssumptionStatus::Unverified,
        },
        detail: match torsion {
            Some(l) => format!("E1[{p}](Q) = 0 (#E1(F_{l}) prime to {p}); E1[{p}](K) = 0 is declared"),
            None => format!("no prime below 500 rules out rational {p}-torsion; E1[{p}](K) = 0 is declared"),
        },
    });
    assumptions.push(Assumption {
        name: "H4".into(),
        status: AssumptionStatus::Declared,
        detail: "the twisted Selmer groups over the cyclotomic tower are cotorsion with mu = 0".into(),
    });
    assumptions.push(Assumption {
        name: "Syl".into(),
        status: AssumptionStatus::Declared,
        detail: "a p-Sylow subgroup of Gal(K/F) is normal with abelian quotient".into(),
    });
    if let Some(c) = &congruence {
        assumptions.push(Assumption {
            name: "congruence".into(),
            status: AssumptionStatus::Checked,
            detail: format!("a_l(E1) = a_l(E2) mod {p} for {} primes up to {}", c.compared, c.bound),
        });
    } else {
        assumptions.push(Assumption {
            name: "congruence".into(),
            status: AssumptionStatus::Declared,
            detail: format!("E1[{p}] = E2[{p}] taken on trust"),
        });
    }

    let mut sigma_set: BTreeSet<u64> = BTreeSet::new();
    sigma_set.extend(prime_divisors(&n1));
    sigma_set.extend(prime_divisors(&n2));
    sigma_set.extend(field.ramified_primes.iter().copied());
    sigma_set.remove(&p);

    let mut per_prime = Vec::new();
    let mut sigma0 = Vec::new();
    let mut overrides_used = Vec::new();
    for &ell in &sigma_set {
        let (datum, ov) = field.datum_at(ell)?.ok_or(ParityError::MissingData(ell))?;
        let r = datum.residue_degree();
        let l1 = local_curve_data(e1, ell, r, ov.for_curve(1))?;
        let l2 = local_curve_data(e2, ell, r, ov.for_curve(2))?;
        for (i, l) in [(1, &l1), (2, &l2)] {
            if l.override_used {
                overrides_used.push(format!("E{i} at {ell}: {:?}", ov.for_curve(i).expect("override")));
            }
        }
        let (c1, c2) = (CurveAtV::from(&l1), CurveAtV::from(&l2));
        let ctx = LocalContext::new(&datum, sigma, p)?;
        let mults = Mults::new(ctx);
        let eval = evaluate_prime(&c1, &c2, &mults, p)?;
        let mut reasons: Vec<String> =
            [(1, &c1), (2, &c2)].iter().filter_map(|(i, c)| sigma0_reasons(c, *i, p)).collect();
        if datum.e() as u64 % p == 0 {
            reasons.push(format!("p | e_v(K/F) = {}", datum.e()));
        }
        let in_sigma0 = !reasons.is_empty();
        if in_sigma0 {
            sigma0.push(Sigma0Entry { ell, reasons });
        }
        per_prime.push(PrimeEntry { in_sigma0, eval });
    }

    let mut delta: i64 = 0;
    let mut book_cyc = Bookkeeping::default();
    let mut book_d = Bookkeeping::default();
    let mut root_exp: i64 = 0;
    let mut sets = AggregateSets::default();
    let mut checks = Vec::new();
    let mut outside = Vec::new();
    let mut direct_bad = Vec::new();
    for pe in &per_prime {
        let e = &pe.eval;
        let k = e.count as i64;
        if e.local_root_ratio == -1 {
            root_exp += k;
        }
        if let Some([d1, d2]) = e.direct_delta {
            if (d1 - d2 - e.delta_contribution as i64).rem_euclid(2) != 0 {
                direct_bad.push(e.ell);
            }
        }
        if !pe.in_sigma0 {
            if e.local_root_ratio == -1 && k % 2 == 1 {
                outside.push(e.ell);
            }
            continue;
        }
        delta += k * e.delta_contribution as i64;
        book_cyc = book_cyc.add(&e.bookkeeping_cyc.scaled(k));
        book_d = book_d.add(&e.bookkeeping_d.scaled(k));
        let s = &e.sets;
        for (flag, list) in [
            (s.s1, &mut sets.s1),
            (s.s2, &mut sets.s2),
            (s.n1, &mut sets.n1),
            (s.n2, &mut sets.n2),
            (s.w, &mut sets.w),
            (s.x, &mut sets.x),
            (s.y3, &mut sets.y3),
            (s.z3, &mut sets.z3),
        ] {
            if flag {
                list.push(e.ell);
            }
        }
    }
    let delta_side_parity = delta.rem_euclid(2) as u8;
    let root_side_ratio = sign(root_exp);

    checks.push(Check {
        name: "delta side equals S/N/W/X/Y3/Z3 bookkeeping".into(),
        ok: book_cyc.exponent().rem_euclid(2) == delta_side_parity as i64,
        detail: format!("per-prime sum {delta}, bookkeeping exponent {}", book_cyc.exponent()),
    });
    checks.push(Check {
        name: "root side equals (-1)^(m1 - m2 + T)".into(),
        ok: sign(book_d.exponent()) == root_side_ratio,
        detail: format!("m1 = {}, m2 = {}, T = {}", book_d.m1, book_d.m2, book_d.t),
    });
    checks.push(Check {
        name: "local root ratio is +1 outside Sigma_0".into(),
        ok: outside.is_empty(),
        detail: if outside.is_empty() { "ok".into() } else { format!("ratio -1 at {outside:?}") },
    });
    checks.push(Check {
        name: "direct delta difference matches the table".into(),
        ok: direct_bad.is_empty(),
        detail: if direct_bad.is_empty() { "ok".into() } else { format!("mismatch at {direct_bad:?}") },
    });

    // places above p: both curves good, W = det sigma_v(-1)
    let w_above_p = match field.datum_at(p)? {
        Some((datum, _)) => LocalContext::new(&datum, sigma, p)?
            .det_sigma_minus_one()
            .ok()
            .map(|w| pow(w, datum.count())),
        None if !field.is_ramified(p) => Some(1),
        None => None,
    };
    let w_archimedean = pow(if sigma.dim() % 2 == 0 { 1 } else { -1 }, field.archimedean_places);
    let global_w = |pick: &dyn Fn(&PrimeEval) -> Option<i8>| -> Option<i8> {
        let mut w = w_archimedean * w_above_p?;
        for pe in &per_prime {
            w *= pow(pick(&pe.eval)?, pe.eval.count);
        }
        Some(w)
    };
    let w1 = global_w(&|e| e.w1);
    let w2 = global_w(&|e| e.w2);
    // the per-prime absolute ratios are available even where W_v|p is not
    let abs_ratio: Option<i8> = per_prime
        .iter()
        .map(|pe| match (pe.eval.w1, pe.eval.w2) {
            (Some(a), Some(b)) => Some(pow(a * b, pe.eval.count)),
            _ => None,
        })
        .product();
    checks.push(Check {
        name: "absolute root numbers agree with the ratio".into(),
        ok: abs_ratio.map_or(true, |r| r == root_side_ratio),
        detail: match abs_ratio {
            Some(r) => format!("product of W1/W2 over Sigma: {r}"),
            None => "undetermined at some prime".into(),
        },
    });

    let thm4_consistent = (if delta_side_parity == 0 { 1 } else { -1 }) == root_side_ratio;
    Ok(ParityReport {
        version: REPORT_VERSION,
        p,
        e1: CurveSummary::of(e1),
        e2: CurveSummary::of(e2),
        field: FieldSummary {
            name: field.name.clone(),
            base: field.base.clone(),
            group: field.group().name().to_string(),
            archimedean_places: field.archimedean_places,
            ramified_primes: field.ramified_primes.clone(),
            sigma: sigma.name().to_string(),
            sigma_dim: sigma.dim(),
        },
        congruence,
        sigma_primes: sigma_set.into_iter().collect(),
        sigma0,
        per_prime,
        delta_side_parity,
        root_side_ratio,
        aggregate_sets: sets,
        m1: book_d.m1,
        m2: book_d.m2,
        t: book_d.t,
        w_above_p,
        w_archimedean,
        w1,
        w2,
        thm4_consistent,
        checks,
        assumptions,
        overrides_used,
    })
}
