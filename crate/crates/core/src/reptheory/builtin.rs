//! Built-in groups: cyclic, dihedral, SL2(F3), GL2(F3), with explicit
//! character tables.

use std::sync::Arc;

use super::character::{Character, CharacterTable};
use super::cyclotomic::Cyclo;
use super::group::{Family, FiniteGroup};
use super::RepError;

/// Cyclic group; index k is g^k.
pub fn cyclic(n: u32) -> Arc<FiniteGroup> {
    let n_ = n as usize;
    let table = (0..n_)
        .map(|a| (0..n_).map(|b| (a + b) % n_).collect())
        .collect();
    let labels = (0..n_).map(|k| format!("g^{}", k)).collect();
    Arc::new(
        FiniteGroup::from_table(format!("C{}", n), Family::Cyclic(n), table, labels)
            .expect("cyclic table"),
    )
}

/// Dihedral group of order 2n; index i + n*j is r^i s^j.
pub fn dihedral(n: u32) -> Arc<FiniteGroup> {
    assert!(n >= 2);
    let n_ = n as usize;
    let mul = |x: usize, y: usize| {
        let (a, b) = (x % n_, x / n_);
        let (c, d) = (y % n_, y / n_);
        let i = if b == 0 { a + c } else { a + n_ - c } % n_;
        i + n_ * ((b + d) % 2)
    };
    let table = (0..2 * n_)
        .map(|x| (0..2 * n_).map(|y| mul(x, y)).collect())
        .collect();
    let labels = (0..2 * n_)
        .map(|x| {
            let (i, j) = (x % n_, x / n_);
            match j {
                0 => format!("r^{}", i),
                _ => format!("r^{} s", i),
            }
        })
        .collect();
    let name = if n == 3 { "S3".to_string() } else { format!("D{}", 2 * n) };
    Arc::new(FiniteGroup::from_table(name, Family::Dihedral(n), table, labels).expect("dihedral table"))
}

type Mat = [u8; 4];

fn mat_mul(x: &Mat, y: &Mat) -> Mat {
    let m = |a: u8, b: u8, c: u8, d: u8| ((a * b + c * d) % 3) as u8;
    [
        m(x[0], y[0], x[1], y[2]),
        m(x[0], y[1], x[1], y[3]),
        m(x[2], y[0], x[3], y[2]),
        m(x[2], y[1], x[3], y[3]),
    ]
}

fn det(x: &Mat) -> u8 {
    ((x[0] * x[3] + 2 * ((x[1] * x[2]) % 3)) % 3) as u8
}

fn matrices(special: bool) -> Vec<Mat> {
    let mut out = Vec::new();
    for a in 0..3u8 {
        for b in 0..3u8 {
            for c in 0..3u8 {
                for d in 0..3u8 {
                    let m = [a, b, c, d];
                    let dt = det(&m);
                    if dt != 0 && (!special || dt == 1) {
                        out.push(m);
                    }
                }
            }
        }
    }
    out
}

fn matrix_group(special: bool) -> Arc<FiniteGroup> {
    let els = matrices(special);
    let pos = |m: &Mat| els.iter().position(|x| x == m).expect("closed");
    let table = els
        .iter()
        .map(|x| els.iter().map(|y| pos(&mat_mul(x, y))).collect())
        .collect();
    let labels = els
        .iter()
        .map(|m| format!("[{},{};{},{}]", m[0], m[1], m[2], m[3]))
        .collect();
    let (name, fam) = if special { ("SL2F3", Family::Sl2F3) } else { ("GL2F3", Family::Gl2F3) };
    Arc::new(FiniteGroup::from_table(name, fam, table, labels).expect("matrix table"))
}

pub fn sl2f3() -> Arc<FiniteGroup> {
    matrix_group(true)
}

pub fn gl2f3() -> Arc<FiniteGroup> {
    matrix_group(false)
}

/// Look up a built-in group by name: `S3`, `D<2n>`, `C<n>`, `SL2F3`, `GL2F3`.
pub fn builtin_group(name: &str) -> Result<Arc<FiniteGroup>, RepError> {
    let unknown = || RepError::UnknownGroup(name.to_string());
    match name {
        "S3" => Ok(dihedral(3)),
        "SL2F3" => Ok(sl2f3()),
        "GL2F3" => Ok(gl2f3()),
        _ => {
            let (head, num) = name.split_at(1.min(name.len()));
            let k: u32 = num.parse().map_err(|_| unknown())?;
            match head {
                "C" if (1..=64).contains(&k) => Ok(cyclic(k)),
                "D" if k >= 4 && k % 2 == 0 && k <= 64 => Ok(dihedral(k / 2)),
                _ => Err(unknown()),
            }
        }
    }
}

fn entry(g: &FiniteGroup, a: usize) -> Mat {
    let l = g.label(a);
    let digits: Vec<u8> = l.bytes().filter(u8::is_ascii_digit).map(|b| b - b'0').collect();
    [digits[0], digits[1], digits[2], digits[3]]
}

/// Character table of a built-in group.
pub fn character_table(g: &Arc<FiniteGroup>) -> Result<CharacterTable, RepError> {
    let nn = g.exponent();
    let mk = |name: &str, f: &dyn Fn(usize) -> Cyclo| Character::from_fn(g, name, f);
    let mut chars = Vec::new();
    match g.family().clone() {
        Family::Cyclic(n) => {
            for j in 0..n {
                let name = if j == 0 { "triv".to_string() } else { format!("chi{}", j) };
                chars.push(mk(&name, &|a| Cyclo::root(n, (j as i64) * a as i64).lift(nn))?);
            }
        }
        Family::Dihedral(n) => {
            let n_ = n as usize;
            let rot = |a: usize| (a % n_) as i64;
            let refl = |a: usize| a >= n_;
            let pm = |b: bool| Cyclo::int(nn, if b { -1 } else { 1 });
            chars.push(mk("triv", &|_| Cyclo::one(nn))?);
            chars.push(mk("sign", &|a| pm(refl(a)))?);
            if n % 2 == 0 {
                chars.push(mk("eps_r", &|a| pm(rot(a) % 2 == 1))?);
                chars.push(mk("eps_rs", &|a| pm((rot(a) % 2 == 1) != refl(a)))?);
            }
            for h in 1..=((n - 1) / 2) {
                let name = format!("2dim-{}", (b'a' + (h - 1) as u8) as char);
                chars.push(mk(&name, &|a| {
                    if refl(a) {
                        Cyclo::zero(nn)
                    } else {
                        let k = h as i64 * rot(a);
                        (&Cyclo::root(n, k) + &Cyclo::root(n, -k)).lift(nn)
                    }
                })?);
            }
        }
        Family::Sl2F3 => {
            // the quotient by Q8 is cyclic of order 3, generated by u
            let u = g.element_by_label("[1,1;0,1]").expect("u");
            let q8: Vec<usize> = (0..g.order()).filter(|&a| matches!(g.elt_order(a), 1 | 2 | 4)).collect();
            let lam_exp = |a: usize| -> i64 {
                (0..3)
                    .find(|&k| q8.contains(&g.mul(g.pow(u, -k), a)))
                    .expect("coset") as i64
            };
            let two = |a: usize| -> i64 {
                match g.elt_order(a) {
                    1 => 2,
                    2 => -2,
                    4 => 0,
                    3 => -1,
                    _ => 1,
                }
            };
            let lam = |a: usize, m: i64| Cyclo::root(3, m * lam_exp(a)).lift(nn);
            chars.push(mk("triv", &|_| Cyclo::one(nn))?);
            chars.push(mk("lambda", &|a| lam(a, 1))?);
            chars.push(mk("lambda2", &|a| lam(a, 2))?);
            chars.push(mk("2dim-real", &|a| Cyclo::int(nn, two(a)))?);
            chars.push(mk("2dim-lambda", &|a| lam(a, 1).scale(two(a)))?);
            chars.push(mk("2dim-lambda2", &|a| lam(a, 2).scale(two(a)))?);
            chars.push(mk("3dim", &|a| {
                Cyclo::int(nn, match g.elt_order(a) {
                    1 | 2 => 3,
                    4 => -1,
                    _ => 0,
                })
            })?);
        }
        Family::Gl2F3 => {
            // classes: 1, -1, ord4, ord3, ord6, det -1 involution, 8a (trace 1), 8b (trace 2)
            let cls = |a: usize| -> usize {
                let m = entry(g, a);
                match (g.elt_order(a), det(&m)) {
                    (1, _) => 0,
                    (2, 1) => 1,
                    (4, _) => 2,
                    (3, _) => 3,
                    (6, _) => 4,
                    (2, _) => 5,
                    _ => {
                        if (m[0] + m[3]) % 3 == 1 {
                            6
                        } else {
                            7
                        }
                    }
                }
            };
            let ints = |v: [i64; 8]| move |a: usize| Cyclo::int(nn, v[cls(a)]);
            let isqrt2 = &Cyclo::root(8, 1) + &Cyclo::root(8, 3);
            chars.push(mk("triv", &ints([1; 8]))?);
            chars.push(mk("det", &ints([1, 1, 1, 1, 1, -1, -1, -1]))?);
            chars.push(mk("2dim-s3", &ints([2, 2, 2, -1, -1, 0, 0, 0]))?);
            chars.push(mk("3dim", &ints([3, 3, -1, 0, 0, 1, -1, -1]))?);
            chars.push(mk("3dim-det", &ints([3, 3, -1, 0, 0, -1, 1, 1]))?);
            for (name, sgn) in [("2dim-faithful-a", 1i64), ("2dim-faithful-b", -1)] {
                let v = [2i64, -2, 0, -1, 1, 0, 0, 0];
                chars.push(mk(name, &|a| match cls(a) {
                    6 => isqrt2.scale(sgn).lift(nn),
                    7 => isqrt2.scale(-sgn).lift(nn),
                    c => Cyclo::int(nn, v[c]),
                })?);
            }
            chars.push(mk("4dim", &ints([4, -4, 0, 1, -1, 0, 0, 0]))?);
        }
        Family::Generic => return Err(RepError::NoTable(g.name().to_string())),
    }
    Ok(CharacterTable::new(g.clone(), chars))
}
