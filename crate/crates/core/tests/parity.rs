use twistparity::curve::{bundled_curve, RedClass, WeierstrassCurve};
use twistparity::galoislocal::{DatumInput, FieldSpec, LocalContext, LocalGaloisDatum, SigmaSpec};
use twistparity::numtheory::{CubeClassMu3, SquareClass};
use twistparity::parity::*;
use twistparity::reptheory::{character_table, cyclic, dihedral, Character};

fn curve(label: &str) -> WeierstrassCurve {
    bundled_curve(label).unwrap()
}

fn at(q: u64, class: RedClass) -> CurveAtV {
    CurveAtV {
        ell: q,
        q,
        class,
        ord_j: None,
        conductor_exponent: 1,
        trace: None,
        disc_cube_class: None,
    }
}

fn pmr(q: u64, unit_square: bool) -> RedClass {
    RedClass::Pmr { theta: SquareClass::Odd { ell: q, q, val_parity: 1, unit_square } }
}

fn report(a: &str, b: &str, p: u64, field: &str) -> ParityReport {
    let f = FieldSpec::load(field).unwrap();
    let s = SigmaSpec::by_name(f.group(), f.default_sigma.as_deref().unwrap()).unwrap();
    global_report(&curve(a), &curve(b), p, &f, &s, &ReportOptions::default()).unwrap()
}

// S3 datum: D = <s> unramified at q (f = 2)
fn s3_reflection_datum(q: u64) -> LocalGaloisDatum {
    LocalGaloisDatum::new(DatumInput {
        group: dihedral(3),
        ell: q,
        q,
        count: 1,
        d_gens: vec![3],
        i_gens: vec![],
        frob: 3,
        quad: vec![],
        cubic: None,
    })
    .unwrap()
}

#[test]
fn table_rows_and_terms() {
    let (good, split, nonsplit) = (at(7, RedClass::Good), at(7, RedClass::Split), at(7, RedClass::Nonsplit));
    let r = classify_pair(&good, &split, 5).unwrap();
    assert_eq!(r.row, Row::GoodSplit);
    let names: Vec<String> = correction_terms(&r, 5, 7).unwrap().into_iter().map(|c| c.name).collect();
    assert_eq!(names, ["1"]);
    let r = classify_pair(&split, &good, 5).unwrap();
    assert_eq!((r.row, r.swapped), (Row::GoodSplit, true));
    // split / nonsplit needs q = -1 mod p
    assert!(matches!(classify_pair(&split, &nonsplit, 5), Err(ParityError::ImpossiblePair { .. })));
    let (s19, n19) = (at(19, RedClass::Split), at(19, RedClass::Nonsplit));
    let r = classify_pair(&s19, &n19, 5).unwrap();
    let names: Vec<String> = correction_terms(&r, 5, 19).unwrap().into_iter().map(|c| c.name).collect();
    assert_eq!(names, ["1", "kappa"]);
    assert_eq!(classify_pair(&split, &split, 5).unwrap().row, Row::Equal);
}

#[test]
fn impossible_pairs_are_rejected() {
    let imp = |a: CurveAtV, b: CurveAtV, p| matches!(classify_pair(&a, &b, p), Err(ParityError::ImpossiblePair { .. }));
    assert!(imp(at(7, RedClass::Good), at(7, RedClass::Pga { e: Some(2) }), 3));
    assert!(imp(at(7, RedClass::Good), at(7, pmr(7, true)), 3));
    assert!(imp(at(7, RedClass::Split), at(7, pmr(7, true)), 3));
    assert!(imp(at(7, RedClass::Pga { e: Some(3) }), at(7, RedClass::Pgna { e: Some(4) }), 3));
    // split / pga needs mu_3 in F_v
    assert!(imp(at(11, RedClass::Split), at(11, RedClass::Pga { e: Some(2) }), 3));
    assert!(imp(at(7, RedClass::Split), at(7, RedClass::Pga { e: Some(3) }), 5));
    assert!(!imp(at(7, RedClass::Split), at(7, RedClass::Pga { e: Some(3) }), 3));
    // pmr / pmr with equal theta is a same-type pair
    assert_eq!(classify_pair(&at(7, pmr(7, true)), &at(7, pmr(7, true)), 3).unwrap().row, Row::Equal);
    // pgna rows need the cube class
    assert!(imp(at(5, RedClass::Split), at(5, RedClass::Pgna { e: Some(3) }), 3));
    let mut pg = at(5, RedClass::Pgna { e: Some(3) });
    pg.disc_cube_class = Some(CubeClassMu3 { ell: 5, q: 5, valuation_mod_3: 1, unit_class: 0 });
    assert_eq!(classify_pair(&at(5, RedClass::Split), &pg, 3).unwrap().row, Row::SplitPgna);
}

#[test]
fn sigma0_membership_for_multiplicative_primes() {
    let mut c = at(7, RedClass::Split);
    c.ord_j = Some(-5);
    assert!(!c.conductor_drops(3));
    c.ord_j = Some(-6);
    assert!(c.conductor_drops(3));
    let pg = |e| at(7, RedClass::Pga { e: Some(e) });
    assert!(pg(3).conductor_drops(3));
    assert!(!pg(2).conductor_drops(3));
    assert!(at(2, RedClass::PgUnknown).conductor_drops(5));
}

#[test]
fn local_ratio_and_absolute_root_numbers() {
    let datum = s3_reflection_datum(7);
    let sigma = SigmaSpec::by_name(&dihedral(3), "2dim").unwrap();
    let m = Mults::new(LocalContext::new(&datum, &sigma, 5).unwrap());
    let mut good = at(7, RedClass::Good);
    good.trace = Some(3.into());
    let e = evaluate_prime(&good, &at(7, RedClass::Split), &m, 5).unwrap();
    // <sigma_v, 1> = 1 over D = <s>
    assert_eq!(e.local_root_ratio, -1);
    assert_eq!(e.delta_contribution, 1);
    assert_eq!((e.w1, e.w2), (Some(1), Some(-1)));
    let e = evaluate_prime(&good, &good, &m, 5).unwrap();
    assert_eq!((e.local_root_ratio, e.delta_contribution), (1, 0));

    // split multiplicative with sigma trivial: W = -1
    let g = cyclic(1);
    let triv = SigmaSpec::new(Character::trivial(&g)).unwrap();
    let d1 = LocalGaloisDatum::new(DatumInput {
        group: g.clone(),
        ell: 7,
        q: 7,
        count: 1,
        d_gens: vec![],
        i_gens: vec![],
        frob: 0,
        quad: vec![],
        cubic: None,
    })
    .unwrap();
    let m = Mults::new(LocalContext::new(&d1, &triv, 5).unwrap());
    assert_eq!(absolute_w(&at(7, RedClass::Split), &m), Some(-1));
    assert_eq!(absolute_w(&at(7, RedClass::Nonsplit), &m), Some(1));
    assert_eq!(absolute_w(&at(7, RedClass::Good), &m), Some(1));
}

#[test]
fn identical_curves_are_consistent() {
    let f = FieldSpec::builtin("s3-257").unwrap();
    let s = SigmaSpec::by_name(f.group(), "2dim").unwrap();
    let e = curve("52.a1");
    let r = global_report(&e, &e, 5, &f, &s, &ReportOptions::default()).unwrap();
    assert_eq!((r.delta_side_parity, r.root_side_ratio), (0, 1));
    assert!(r.thm4_consistent && r.all_checks_pass());
}

#[test]
fn example_two_report() {
    let r = report("52.a1", "364.a1", 5, "builtin:s3-257");
    assert_eq!(r.sigma_primes, [2, 7, 13, 257]);
    let s0: Vec<u64> = r.sigma0.iter().map(|e| e.ell).collect();
    // 2 is wild additive; 7 has ord j = -5 on 364.a1
    assert_eq!(s0, [2, 7]);
    let at7 = r.per_prime.iter().find(|p| p.eval.ell == 7).unwrap();
    assert_eq!(at7.eval.row, Row::GoodSplit);
    assert_eq!(r.aggregate_sets.s2, [7]);
    assert_eq!((r.m1, r.m2, r.t), (0, 1, 0));
    assert_eq!((r.delta_side_parity, r.root_side_ratio), (1, -1));
    assert!(r.thm4_consistent && r.all_checks_pass());
    assert_eq!((r.w1, r.w2), (Some(1), Some(-1)));
}

#[test]
fn example_one_report() {
    let r = report("11.a2", "737.a1", 3, "builtin:d5-1093");
    let s0: Vec<u64> = r.sigma0.iter().map(|e| e.ell).collect();
    assert_eq!(s0, [67]);
    assert!(!s0.contains(&1093));
    assert_eq!((r.delta_side_parity, r.root_side_ratio), (0, 1));
    assert!(r.thm4_consistent && r.all_checks_pass());
    assert_eq!(r.w2, Some(1));
}

#[test]
fn example_three_reports() {
    for (field, mult) in [("builtin:zeta19-m2", 2), ("builtin:zeta19-m7", 0)] {
        let r = report("56.b1", "392.c1", 3, field);
        let at7 = r.per_prime.iter().find(|p| p.eval.ell == 7).unwrap();
        assert_eq!(at7.eval.count, 3);
        assert_eq!(at7.eval.row, Row::SplitPga);
        assert_eq!(at7.eval.correction_terms[0].multiplicity, mult, "{field}");
        let at2 = r.per_prime.iter().find(|p| p.eval.ell == 2).unwrap();
        assert_eq!(at2.eval.row, Row::Equal);
        assert_eq!((r.delta_side_parity, r.root_side_ratio), (0, 1));
        assert!(r.thm4_consistent && r.all_checks_pass(), "{field}");
    }
}

#[test]
fn kummer_fields_over_q() {
    for m in [2, 3, 7, 12] {
        let f = FieldSpec::load(&format!("kummer:{m}")).unwrap();
        let s = SigmaSpec::by_name(f.group(), "2dim").unwrap();
        let r = global_report(&curve("56.b1"), &curve("392.c1"), 3, &f, &s, &ReportOptions::default()).unwrap();
        assert!(r.thm4_consistent && r.all_checks_pass(), "m = {m}");
    }
}

#[test]
fn hypotheses_are_enforced() {
    let f = FieldSpec::builtin("d5-1093").unwrap();
    let s = SigmaSpec::by_name(f.group(), "2dim-a").unwrap();
    let opts = ReportOptions::default();
    // 11 divides the conductor
    let err = global_report(&curve("11.a2"), &curve("737.a1"), 11, &f, &s, &opts).unwrap_err();
    assert!(matches!(err, ParityError::Hypothesis { name: "H1", .. }));
    let err = global_report(&curve("11.a2"), &curve("52.a1"), 3, &f, &s, &opts).unwrap_err();
    assert!(matches!(err, ParityError::NotCongruent { .. }));
    let err = global_report(&curve("11.a2"), &curve("737.a1"), 4, &f, &s, &opts).unwrap_err();
    assert!(matches!(err, ParityError::BadPrime(4)));
}

#[test]
fn report_serialises_with_version() {
    let r = report("52.a1", "364.a1", 5, "builtin:s3-257");
    let v: serde_json::Value = serde_json::to_value(&r).unwrap();
    assert_eq!(v["version"], REPORT_VERSION);
    assert_eq!(v["per_prime"][1]["row"], "GoodSplit");
    assert!(v["assumptions"].as_array().unwrap().iter().any(|a| a["name"] == "H4"));
}

#[test]
fn small_sweep_has_no_failures() {
    let cfg = SweepConfig { groups: vec![dihedral(3), cyclic(6)], primes: vec![3, 5], max_f: 6, inertia_orders: vec![1, 2, 3] };
    let r = localized_sweep(&cfg);
    assert!(r.failures.is_empty(), "{:?}", &r.failures[..r.failures.len().min(5)]);
    assert!(r.cases > 0 && r.contexts > 0);
    let _ = character_table(&dihedral(3)).unwrap();
}
