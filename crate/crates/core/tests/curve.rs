use num_bigint::BigInt;
use proptest::prelude::*;
use serde::Deserialize;

use twistparity::curve::{
    classify_reduction, local_curve_data, tate_local, trace_of_frobenius, trace_of_frobenius_naive,
    trace_over_extension, CurveError, CurveOverride, Kodaira, PgKind, RedClass, Reduction,
    WeierstrassCurve,
};
use twistparity::numtheory::primes_up_to;

const NAMED: [(&str, [i64; 5], u64, &[u64]); 6] = [
    ("11.a2", [0, -1, 1, -7820, -263580], 11, &[11]),
    ("737.a1", [0, -1, 1, 406, -686], 737, &[11, 67]),
    ("52.a1", [0, 0, 0, 1, -10], 52, &[2, 13]),
    ("364.a1", [0, 0, 0, -584, 5444], 364, &[2, 7, 13]),
    ("56.b1", [0, -1, 0, 0, -4], 56, &[2, 7]),
    ("392.c1", [0, -1, 0, -16, 29], 392, &[2, 7]),
];

#[derive(Deserialize)]
struct OracleRow {
    ell: u64,
    kodaira: String,
    f: u32,
    v_disc_min: u32,
    split: Option<bool>,
}

#[derive(Deserialize)]
struct OracleCurve {
    ainvs: [i64; 5],
    conductor: u64,
    local: Vec<OracleRow>,
    note: String,
}

fn oracle() -> Vec<OracleCurve> {
    let path = concat!(env!("CARGO_MANIFEST_DIR"), "/tests/data/tate_oracle.json");
    serde_json::from_str(&std::fs::read_to_string(path).unwrap()).unwrap()
}

fn curve(a: [i64; 5]) -> WeierstrassCurve {
    WeierstrassCurve::from_ints(a).unwrap()
}

#[test]
fn tate_matches_independent_oracle() {
    let data = oracle();
    assert!(data.len() > 100);
    for c in &data {
        let e = curve(c.ainvs);
        for row in &c.local {
            let t = tate_local(&e, row.ell).unwrap();
            let ctx = format!("{:?} at {} ({})", c.ainvs, row.ell, c.note);
            assert_eq!(t.kodaira.to_string(), row.kodaira, "{}", ctx);
            assert_eq!(t.f, row.f, "{}", ctx);
            assert_eq!(t.v_disc_min, row.v_disc_min, "{}", ctx);
            if let Some(split) = row.split {
                if row.f == 1 {
                    let want = if split { Reduction::SplitMult } else { Reduction::NonsplitMult };
                    assert_eq!(t.reduction, want, "{}", ctx);
                }
            }
        }
        assert_eq!(e.conductor(), BigInt::from(c.conductor), "{:?} ({})", c.ainvs, c.note);
    }
}

#[test]
fn named_conductors_and_bad_primes() {
    for (label, a, n, bad) in NAMED {
        let e = curve(a);
        assert_eq!(e.conductor(), BigInt::from(n), "{}", label);
        let conductor_primes: Vec<u64> = e
            .bad_primes()
            .into_iter()
            .filter(|&l| tate_local(&e, l).unwrap().f > 0)
            .collect();
        assert_eq!(conductor_primes, bad.to_vec(), "{}", label);
    }
}

#[test]
fn named_reduction_types() {
    let red = |i: usize, l: u64| tate_local(&curve(NAMED[i].1), l).unwrap();
    assert_eq!(red(0, 11).reduction, Reduction::SplitMult);
    assert_eq!(red(1, 11).kodaira, Kodaira::In(4));
    assert_eq!(red(1, 67).reduction, Reduction::SplitMult);
    assert_eq!(red(2, 2).kodaira, Kodaira::IVStar);
    assert_eq!(red(2, 13).reduction, Reduction::NonsplitMult);
    assert_eq!(red(3, 7).reduction, Reduction::SplitMult);
    assert_eq!(red(3, 13).reduction, Reduction::NonsplitMult);
    assert_eq!(red(4, 2).kodaira, Kodaira::IIIStar);
    assert_eq!(red(4, 7).reduction, Reduction::SplitMult);
    assert_eq!(red(5, 2).kodaira, Kodaira::III);
    let r = red(5, 7);
    assert_eq!(r.kodaira, Kodaira::IV);
    assert_eq!(r.reduction, Reduction::AdditivePga { e: 3 });
}

#[test]
fn small_traces_and_hasse() {
    let e = curve(NAMED[0].1);
    assert_eq!(trace_of_frobenius(&e, 3).unwrap(), -1);
    let want = [
        [-2, -1, 1, -2, 1, 4],
        [-2, 2, -2, -2, 1, -2],
        [0, 0, 2, -2, -2, -1],
        [0, 0, -3, 1, -2, -1],
        [0, 2, -4, 1, 0, 0],
        [0, -1, -1, 0, 3, -6],
    ];
    for ((label, a, n, _), row) in NAMED.iter().zip(want) {
        let e = curve(*a);
        for (l, w) in [2u64, 3, 5, 7, 11, 13].into_iter().zip(row) {
            if n % l != 0 {
                assert_eq!(trace_of_frobenius(&e, l).unwrap(), w, "{} a_{}", label, l);
            }
        }
        for l in primes_up_to(1000) {
            if n % l == 0 {
                assert!(matches!(trace_of_frobenius(&e, l), Err(CurveError::BadReduction(_))));
                continue;
            }
            let a = trace_of_frobenius(&e, l).unwrap();
            assert!(a * a <= 4 * l as i64, "{} a_{} = {}", label, l, a);
        }
    }
}

#[test]
fn fast_and_naive_counts_agree() {
    let mut curves: Vec<[i64; 5]> = NAMED.iter().map(|x| x.1).collect();
    curves.extend(oracle().iter().take(40).map(|c| c.ainvs));
    for a in curves {
        let e = curve(a);
        for l in primes_up_to(50) {
            if tate_local(&e, l).unwrap().reduction == Reduction::Good {
                assert_eq!(trace_of_frobenius(&e, l).unwrap(), trace_of_frobenius_naive(&e, l).unwrap());
            }
        }
    }
}

#[test]
fn c6_split_test_agrees() {
    for c in oracle() {
        let e = curve(c.ainvs);
        for l in e.bad_primes().into_iter().filter(|&l| l >= 5) {
            let t = tate_local(&e, l).unwrap();
            if let Some(s) = t.split_by_c6 {
                assert_eq!(s, t.reduction == Reduction::SplitMult, "{:?} at {}", c.ainvs, l);
            }
        }
    }
}

#[test]
fn conductor_exponent_bounds() {
    for c in oracle() {
        for row in c.local {
            let cap = match row.ell {
                2 => 8,
                3 => 5,
                _ => 2,
            };
            assert!(row.f <= cap);
            let t = tate_local(&curve(c.ainvs), row.ell).unwrap();
            assert!(t.f <= cap);
        }
    }
}

#[test]
fn supersingular_cm_curve() {
    let e = curve([0, 0, 0, 0, 1]);
    assert_eq!(e.conductor(), BigInt::from(36));
    assert_eq!(trace_of_frobenius(&e, 5).unwrap(), 0);
    assert_eq!(trace_of_frobenius(&e, 11).unwrap(), 0);
    assert_eq!(trace_of_frobenius(&e, 7).unwrap(), -4);
}

#[test]
fn base_change_rules() {
    let e = curve(NAMED[2].1);
    let d = local_curve_data(&e, 13, 2, None).unwrap();
    assert_eq!(d.class, RedClass::Split);
    assert_eq!(d.q, 169);
    let d = local_curve_data(&e, 13, 3, None).unwrap();
    assert_eq!(d.class, RedClass::Nonsplit);
    let e = curve(NAMED[0].1);
    let d = local_curve_data(&e, 3, 2, None).unwrap();
    assert_eq!(d.trace, Some(BigInt::from(1 - 6)));
    assert_eq!(trace_over_extension(-1, 3, 3), BigInt::from(-1 + 9));
    // PGA over Q_7, stays PGA upstairs since 7^r = 1 mod 3
    let e = curve(NAMED[5].1);
    let d = local_curve_data(&e, 7, 3, None).unwrap();
    assert_eq!(d.class, RedClass::Pga { e: Some(3) });
}

#[test]
fn overrides_at_wild_primes() {
    let e = curve(NAMED[4].1);
    let d = classify_reduction(&e, 2, 3, None).unwrap();
    assert_eq!(d.class, RedClass::PgUnknown);
    let o = CurveOverride { e: Some(24), pg_kind: Some(PgKind::Pgna), ..Default::default() };
    let d = classify_reduction(&e, 2, 3, Some(&o)).unwrap();
    assert_eq!(d.class, RedClass::Pgna { e: Some(24) });
    assert!(d.override_used);
    let bad = CurveOverride { e: Some(5), ..Default::default() };
    assert!(matches!(classify_reduction(&e, 2, 3, Some(&bad)), Err(CurveError::OverrideConflict { .. })));
    let bad = CurveOverride { reduction: Some("split".into()), ..Default::default() };
    assert!(classify_reduction(&e, 2, 3, Some(&bad)).is_err());
    let bad = CurveOverride { e: Some(6), ..Default::default() };
    assert!(classify_reduction(&e, 7, 3, Some(&bad)).is_err());
    assert!(classify_reduction(&e, 3, 3, None).is_err());
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]
    #[test]
    fn model_changes_preserve_local_data(
        idx in 0usize..6,
        u in prop::sample::select(vec![1i64, -1, 2, 3, -5]),
        r in -4i64..5, s in -3i64..4, t in -4i64..5,
    ) {
        let e = curve(NAMED[idx].1);
        // scale by u (non-minimal when |u| > 1), then shift
        let mut a = NAMED[idx].1;
        for (k, w) in [1u32, 2, 3, 4, 6].into_iter().enumerate() {
            a[k] *= u.pow(w);
        }
        let one = BigInt::from(1);
        let e2 = curve(a)
            .transform(&one, &BigInt::from(r), &BigInt::from(s), &BigInt::from(t))
            .unwrap();
        prop_assert_eq!(e.conductor(), e2.conductor());
        for l in [2u64, 3, 5, 7, 11, 13, 67] {
            let (a, b) = (tate_local(&e, l).unwrap(), tate_local(&e2, l).unwrap());
            prop_assert_eq!(a.kodaira, b.kodaira);
            prop_assert_eq!(a.f, b.f);
            prop_assert_eq!(a.v_disc_min, b.v_disc_min);
            prop_assert_eq!(a.reduction, b.reduction);
            prop_assert_eq!(a.a_ell, b.a_ell);
        }
    }
}
