use num_bigint::BigInt;
use twistparity::congruence::{check_congruence, sturm_bound, CongruenceStatus};
use twistparity::curve::WeierstrassCurve;

fn curve(a: [i64; 5]) -> WeierstrassCurve {
    WeierstrassCurve::from_ints(a).unwrap()
}

const E11: [i64; 5] = [0, -1, 1, -7820, -263580];
const E737: [i64; 5] = [0, -1, 1, 406, -686];
const E52: [i64; 5] = [0, 0, 0, 1, -10];
const E364: [i64; 5] = [0, 0, 0, -584, 5444];
const E56: [i64; 5] = [0, -1, 0, 0, -4];
const E392: [i64; 5] = [0, -1, 0, -16, 29];

#[test]
fn sturm_bounds() {
    let b = |x: u64, y: u64| sturm_bound(&BigInt::from(x), &BigInt::from(y)).unwrap();
    assert_eq!(b(11, 737), 136);
    assert_eq!(b(52, 364), 112);
    assert_eq!(b(56, 392), 112);
    assert_eq!(b(11, 11), 2);
    assert_eq!(b(1, 1), 1);
}

#[test]
fn example_pairs_are_supported() {
    for (a, b, p) in [(E11, E737, 3), (E52, E364, 5), (E56, E392, 3)] {
        let r = check_congruence(&curve(a), &curve(b), p, None).unwrap();
        assert!(r.is_supported(), "{:?} {:?} {}: {:?}", a, b, p, r);
        assert!(r.compared > 10);
        assert!(r.skipped.contains(&p));
    }
}

#[test]
fn mismatched_pairs_are_refuted_early() {
    let r = check_congruence(&curve(E11), &curve(E52), 3, None).unwrap();
    assert_eq!(r.status, CongruenceStatus::Refuted { ell: 5, a1: 1, a2: 2 });
    let r = check_congruence(&curve(E52), &curve(E364), 3, None).unwrap();
    match r.status {
        CongruenceStatus::Refuted { ell, .. } => assert!(ell < 50),
        _ => panic!("52.a1 and 364.a1 are not congruent mod 3"),
    }
}

#[test]
fn symmetric_and_validated() {
    let pairs = [(E11, E737), (E11, E52), (E56, E392), (E737, E364)];
    for (a, b) in pairs {
        for p in [3, 5, 7] {
            let x = check_congruence(&curve(a), &curve(b), p, Some(60)).unwrap();
            let y = check_congruence(&curve(b), &curve(a), p, Some(60)).unwrap();
            assert_eq!(x.is_supported(), y.is_supported());
            assert_eq!(x.skipped, y.skipped);
        }
    }
    assert!(check_congruence(&curve(E11), &curve(E737), 2, None).is_err());
    assert!(check_congruence(&curve(E11), &curve(E737), 9, None).is_err());
}
