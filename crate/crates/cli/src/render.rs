//! Plain-text renderers. The JSON output is the reference format.

use std::fmt::Write;

use twistparity::alc::AlcRecord;
use twistparity::congruence::{CongruenceResult, CongruenceStatus};
use twistparity::parity::{ParityReport, SweepReport};

use crate::CurveInfo;

fn sign(x: i8) -> &'static str {
    if x > 0 {
        "+1"
    } else {
        "-1"
    }
}

fn opt_sign(x: Option<i8>) -> &'static str {
    x.map_or("undetermined", sign)
}

fn label(l: &Option<String>) -> &str {
    l.as_deref().unwrap_or("(unlabelled)")
}

pub fn curve_info(c: &CurveInfo) -> String {
    let mut s = String::new();
    let e = &c.curve;
    writeln!(s, "curve {} [{}]", label(&e.label), e.ainvs.join(",")).unwrap();
    writeln!(s, "  conductor {}  bad primes {:?}", e.conductor, e.bad_primes).unwrap();
    writeln!(s, "  c4 = {}  c6 = {}", c.c4, c.c6).unwrap();
    writeln!(s, "  disc = {}  j = {}", c.disc, c.j).unwrap();
    for l in &c.local {
        let class = l.class.map_or("needs override", |c| c.name());
        writeln!(
            s,
            "  l = {:<5} {:<5} f = {}  v(disc) = {:<3} {:?}  [{}]",
            l.ell, l.kodaira.to_string(), l.conductor_exponent, l.v_disc_min, l.reduction, class
        )
        .unwrap();
    }
    if !c.traces.is_empty() {
        let ts: Vec<String> = c.traces.iter().map(|(l, a)| format!("a{l}={a}")).collect();
        writeln!(s, "  traces: {}", ts.join(" ")).unwrap();
    }
    s
}

pub fn congruence(r: &CongruenceResult) -> String {
    match &r.status {
        CongruenceStatus::Supported { bound } => format!(
            "supported mod {}: a_l agree for all {} good l <= {} (skipped {:?})\n",
            r.p, r.compared, bound, r.skipped
        ),
        CongruenceStatus::Refuted { ell, a1, a2 } => {
            format!("refuted mod {}: a_{ell} = {a1} vs {a2}\n", r.p)
        }
    }
}

pub fn parity(r: &ParityReport) -> String {
    let mut s = String::new();
    writeln!(
        s,
        "E1 = {} (N = {}), E2 = {} (N = {}), p = {}",
        label(&r.e1.label),
        r.e1.conductor,
        label(&r.e2.label),
        r.e2.conductor,
        r.p
    )
    .unwrap();
    writeln!(
        s,
        "field {} over {}, group {}, sigma {} (dim {})",
        r.field.name, r.field.base, r.field.group, r.field.sigma, r.field.sigma_dim
    )
    .unwrap();
    if let Some(c) = &r.congruence {
        s.push_str(&congruence(c));
    }
    let s0: Vec<u64> = r.sigma0.iter().map(|e| e.ell).collect();
    writeln!(s, "Sigma = {:?}, Sigma_0 = {:?}", r.sigma_primes, s0).unwrap();
    writeln!(s, "{:>6} {:>3} {:>14} {:>14} {:>14}  {:>5} {:>5}  terms", "l", "#v", "E1", "E2", "row", "delta", "ratio").unwrap();
    for e in &r.per_prime {
        let v = &e.eval;
        let terms: Vec<String> = v.correction_terms.iter().map(|t| format!("<{}>={}", t.name, t.multiplicity)).collect();
        writeln!(
            s,
            "{:>6} {:>3} {:>14} {:>14} {:>14}  {:>5} {:>5}  {}{}",
            v.ell,
            v.count,
            v.class1.name(),
            v.class2.name(),
            v.row.to_string(),
            v.delta_contribution,
            sign(v.local_root_ratio),
            terms.join(" "),
            if e.in_sigma0 { "" } else { "  (outside Sigma_0)" }
        )
        .unwrap();
    }
    writeln!(s, "delta parity {}  root ratio {}  (m1, m2, T) = ({}, {}, {})", r.delta_side_parity, sign(r.root_side_ratio), r.m1, r.m2, r.t).unwrap();
    writeln!(s, "W(E1, sigma) = {}  W(E2, sigma) = {}", opt_sign(r.w1), opt_sign(r.w2)).unwrap();
    for c in &r.checks {
        writeln!(s, "  [{}] {}: {}", if c.ok { "ok" } else { "FAIL" }, c.name, c.detail).unwrap();
    }
    for a in &r.assumptions {
        writeln!(s, "  {} {:?}: {}", a.name, a.status, a.detail).unwrap();
    }
    for o in &r.overrides_used {
        writeln!(s, "  override: {o}").unwrap();
    }
    writeln!(s, "{}", if r.thm4_consistent { "consistent" } else { "INCONSISTENT" }).unwrap();
    s
}

pub fn alc(recs: &[AlcRecord]) -> String {
    let mut s = String::new();
    for r in recs {
        writeln!(
            s,
            "l = {:<6} {:>14} {:>14} delta = ({}, {})  ratio {}  {}{}",
            r.ell,
            r.class1.name(),
            r.class2.name(),
            r.delta1,
            r.delta2,
            sign(r.local_root_ratio),
            if r.consistent { "consistent" } else { "INCONSISTENT" },
            if r.engine_agrees { "" } else { "  (engine disagrees)" }
        )
        .unwrap();
    }
    s
}

pub fn selftest(r: &SweepReport) -> String {
    let mut s = String::new();
    writeln!(s, "{} contexts, {} cases, {} failures", r.contexts, r.cases, r.failures.len()).unwrap();
    writeln!(s, "absolute W checks {}, direct delta checks {}", r.absolute_checks, r.direct_checks).unwrap();
    for (row, n) in &r.row_coverage {
        writeln!(s, "  {row:<14} {n}").unwrap();
    }
    for f in r.failures.iter().take(20) {
        writeln!(s, "  FAIL {f}").unwrap();
    }
    s
}
