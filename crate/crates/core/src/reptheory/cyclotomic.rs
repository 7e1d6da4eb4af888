//! Exact arithmetic in cyclotomic fields Q(zeta_n).
//!
//! A value is stored as an integer vector in the power basis
//! 1, z, ..., z^(phi(n)-1) together with a positive common denominator.
//! Mixed-level operations lift both operands to the lcm level.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::{Arc, OnceLock};

use num_integer::Integer;

const CACHE_MAX: usize = 256;

struct Level {
    n: u32,
    deg: usize,
    /// `pow[j]` is z^j reduced modulo Phi_n, for 0 <= j < 2n.
    pow: Vec<Vec<i64>>,
}

fn poly_div_exact(num: &[i64], den: &[i64]) -> Vec<i64> {
    // both little-endian, den monic
    let mut r = num.to_vec();
    let dd = den.len() - 1;
    if r.len() <= dd {
        return vec![0];
    }
    let mut q = vec![0i64; r.len() - dd];
    for i in (0..q.len()).rev() {
        let c = r[i + dd];
        q[i] = c;
        if c != 0 {
            for (j, d) in den.iter().enumerate() {
                r[i + j] -= c * d;
            }
        }
    }
    debug_assert!(r.iter().all(|&x| x == 0));
    q
}

fn cyclotomic_poly(n: u32) -> Vec<i64> {
    let mut num = vec![0i64; n as usize + 1];
    num[0] = -1;
    num[n as usize] = 1;
    for d in 1..n {
        if n % d == 0 {
            num = poly_div_exact(&num, &cyclotomic_poly(d));
        }
    }
    num
}

fn build_level(n: u32) -> Level {
    let phi = cyclotomic_poly(n);
    let deg = phi.len() - 1;
    let mut pow = Vec::with_capacity(2 * n as usize);
    let mut cur = vec![0i64; deg];
    cur[0] = 1;
    for _ in 0..2 * n {
        pow.push(cur.clone());
        // multiply by z: shift, then fold the top coefficient
        let top = cur[deg - 1];
        let mut next = vec![0i64; deg];
        next[1..deg].copy_from_slice(&cur[..(deg - 1)]);
        if top != 0 {
            for (j, c) in phi.iter().take(deg).enumerate() {
                next[j] -= top * c;
            }
        }
        cur = next;
    }
    Level { n, deg, pow }
}

fn level(n: u32) -> Arc<Level> {
    static CACHE: OnceLock<Vec<OnceLock<Arc<Level>>>> = OnceLock::new();
    let n = n.max(1);
    if (n as usize) < CACHE_MAX {
        let cache = CACHE.get_or_init(|| (0..CACHE_MAX).map(|_| OnceLock::new()).collect());
        cache[n as usize]
            .get_or_init(|| Arc::new(build_level(n)))
            .clone()
    } else {
        Arc::new(build_level(n))
    }
}

/// An element of Q(zeta_n).
#[derive(Clone)]
pub struct Cyclo {
    n: u32,
    c: Vec<i64>,
    den: i64,
}

impl Cyclo {
    pub fn zero(n: u32) -> Self {
        let lv = level(n);
        Cyclo { n: lv.n, c: vec![0; lv.deg], den: 1 }
    }

    pub fn int(n: u32, k: i64) -> Self {
        let mut z = Cyclo::zero(n);
        z.c[0] = k;
        z
    }

    pub fn one(n: u32) -> Self {
        Cyclo::int(n, 1)
    }

    pub fn rational(n: u32, num: i64, den: i64) -> Self {
        assert!(den != 0, "zero denominator");
        let mut z = Cyclo::int(n, num);
        z.den = den;
        z.normalize();
        z
    }

    /// zeta_n^k.
    pub fn root(n: u32, k: i64) -> Self {
        let lv = level(n);
        let e = k.rem_euclid(lv.n as i64) as usize;
        Cyclo { n: lv.n, c: lv.pow[e].clone(), den: 1 }
    }

    pub fn level(&self) -> u32 {
        self.n
    }

    fn normalize(&mut self) {
        if self.den < 0 {
            self.den = -self.den;
            self.c.iter_mut().for_each(|x| *x = -*x);
        }
        let mut g = self.den;
        for &x in &self.c {
            g = g.gcd(&x);
            if g == 1 {
                return;
            }
        }
        if g > 1 {
            self.den /= g;
            self.c.iter_mut().for_each(|x| *x /= g);
        }
    }

    /// Re-express in Q(zeta_m); requires n | m.
    pub fn lift(&self, m: u32) -> Self {
        if m == self.n {
            return self.clone();
        }
        assert!(m % self.n == 0, "cannot lift level {} to {}", self.n, m);
        let lv = level(m);
        let step = (m / self.n) as usize;
        let mut c = vec![0i64; lv.deg];
        for (k, &x) in self.c.iter().enumerate() {
            if x != 0 {
                for (acc, y) in c.iter_mut().zip(&lv.pow[k * step]) {
                    *acc += x * y;
                }
            }
        }
        Cyclo { n: m, c, den: self.den }
    }

    fn common(a: &Cyclo, b: &Cyclo) -> (Cyclo, Cyclo) {
        if a.n == b.n {
            (a.clone(), b.clone())
        } else {
            let m = a.n.lcm(&b.n);
            (a.lift(m), b.lift(m))
        }
    }

    pub fn is_zero(&self) -> bool {
        self.c.iter().all(|&x| x == 0)
    }

    /// Rational value, if any, as (numerator, denominator).
    pub fn as_rational(&self) -> Option<(i64, i64)> {
        if self.c[1..].iter().all(|&x| x == 0) {
            Some((self.c[0], self.den))
        } else {
            None
        }
    }

    pub fn as_integer(&self) -> Option<i64> {
        match self.as_rational() {
            Some((a, 1)) => Some(a),
            _ => None,
        }
    }

    /// Complex conjugate: zeta -> zeta^-1.
    pub fn conj(&self) -> Self {
        let lv = level(self.n);
        let n = lv.n as usize;
        let mut c = vec![0i64; lv.deg];
        for (k, &x) in self.c.iter().enumerate() {
            if x != 0 {
                for (acc, y) in c.iter_mut().zip(&lv.pow[(n - k) % n]) {
                    *acc += x * y;
                }
            }
        }
        Cyclo { n: self.n, c, den: self.den }
    }

    /// Galois action zeta -> zeta^a, gcd(a, n) = 1.
    pub fn galois(&self, a: i64) -> Self {
        let lv = level(self.n);
        let n = lv.n as i64;
        let mut c = vec![0i64; lv.deg];
        for (k, &x) in self.c.iter().enumerate() {
            if x != 0 {
                let e = (a * k as i64).rem_euclid(n) as usize;
                for (acc, y) in c.iter_mut().zip(&lv.pow[e]) {
                    *acc += x * y;
                }
            }
        }
        Cyclo { n: self.n, c, den: self.den }
    }

    pub fn div_int(&self, k: i64) -> Self {
        assert!(k != 0, "division by zero");
        let mut z = self.clone();
        z.den *= k;
        z.normalize();
        z
    }

    pub fn scale(&self, k: i64) -> Self {
        let mut z = self.clone();
        z.c.iter_mut().for_each(|x| *x *= k);
        z.normalize();
        z
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Cyclo::one(self.n);
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    /// Numerical value, for display and sanity checks.
    pub fn to_complex(&self) -> (f64, f64) {
        let n = self.n as f64;
        let (mut re, mut im) = (0.0, 0.0);
        for (k, &x) in self.c.iter().enumerate() {
            let t = 2.0 * std::f64::consts::PI * k as f64 / n;
            re += x as f64 * t.cos();
            im += x as f64 * t.sin();
        }
        (re / self.den as f64, im / self.den as f64)
    }

    /// If this is a root of unity zeta_n^k, return k mod n.
    pub fn root_index(&self) -> Option<u32> {
        (0..self.n).find(|&k| *self == Cyclo::root(self.n, k as i64))
    }
}

impl PartialEq for Cyclo {
    fn eq(&self, other: &Self) -> bool {
        let (a, b) = Cyclo::common(self, other);
        a.den == b.den && a.c == b.c
    }
}

impl Eq for Cyclo {}

impl fmt::Debug for Cyclo {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

impl fmt::Display for Cyclo {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if let Some((a, b)) = self.as_rational() {
            return if b == 1 { write!(f, "{}", a) } else { write!(f, "{}/{}", a, b) };
        }
        let mut terms = Vec::new();
        for (k, &x) in self.c.iter().enumerate() {
            if x == 0 {
                continue;
            }
            let mono = match k {
                0 => String::new(),
                1 => format!("z{}", self.n),
                _ => format!("z{}^{}", self.n, k),
            };
            let coef = match (x, k) {
                (1, k) if k > 0 => String::new(),
                (-1, k) if k > 0 => "-".to_string(),
                _ => x.to_string(),
            };
            terms.push(format!("{}{}", coef, mono));
        }
        let body = terms.join(" + ").replace("+ -", "- ");
        if self.den == 1 {
            write!(f, "{}", body)
        } else {
            write!(f, "({})/{}", body, self.den)
        }
    }
}

impl<'a> Add<&'a Cyclo> for &'a Cyclo {
    type Output = Cyclo;
    fn add(self, rhs: &Cyclo) -> Cyclo {
        let (a, b) = Cyclo::common(self, rhs);
        let l = a.den.lcm(&b.den);
        let (fa, fb) = (l / a.den, l / b.den);
        let c = a.c.iter().zip(&b.c).map(|(x, y)| x * fa + y * fb).collect();
        let mut z = Cyclo { n: a.n, c, den: l };
        z.normalize();
        z
    }
}

impl<'a> Sub<&'a Cyclo> for &'a Cyclo {
    type Output = Cyclo;
    fn sub(self, rhs: &Cyclo) -> Cyclo {
        self + &(-rhs)
    }
}

impl Neg for &Cyclo {
    type Output = Cyclo;
    fn neg(self) -> Cyclo {
        let mut z = self.clone();
        z.c.iter_mut().for_each(|x| *x = -*x);
        z
    }
}

impl<'a> Mul<&'a Cyclo> for &'a Cyclo {
    type Output = Cyclo;
    fn mul(self, rhs: &Cyclo) -> Cyclo {
        let (a, b) = Cyclo::common(self, rhs);
        let lv = level(a.n);
        let d = lv.deg;
        let mut prod = vec![0i64; 2 * d - 1];
        for (i, &x) in a.c.iter().enumerate() {
            if x == 0 {
                continue;
            }
            for (j, &y) in b.c.iter().enumerate() {
                prod[i + j] += x * y;
            }
        }
        let mut c = prod[..d].to_vec();
        for (j, &x) in prod.iter().enumerate().skip(d) {
            if x != 0 {
                for (acc, y) in c.iter_mut().zip(&lv.pow[j]) {
                    *acc += x * y;
                }
            }
        }
        let mut z = Cyclo { n: a.n, c, den: a.den * b.den };
        z.normalize();
        z
    }
}

impl Add for Cyclo {
    type Output = Cyclo;
    fn add(self, rhs: Cyclo) -> Cyclo {
        &self + &rhs
    }
}

impl Sub for Cyclo {
    type Output = Cyclo;
    fn sub(self, rhs: Cyclo) -> Cyclo {
        &self - &rhs
    }
}

impl Mul for Cyclo {
    type Output = Cyclo;
    fn mul(self, rhs: Cyclo) -> Cyclo {
        &self * &rhs
    }
}

impl Neg for Cyclo {
    type Output = Cyclo;
    fn neg(self) -> Cyclo {
        -&self
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cyclotomic_polys() {
        assert_eq!(cyclotomic_poly(1), vec![-1, 1]);
        assert_eq!(cyclotomic_poly(4), vec![1, 0, 1]);
        assert_eq!(cyclotomic_poly(6), vec![1, -1, 1]);
        assert_eq!(cyclotomic_poly(8), vec![1, 0, 0, 0, 1]);
        assert_eq!(cyclotomic_poly(12), vec![1, 0, -1, 0, 1]);
    }

    #[test]
    fn roots_sum_to_mobius() {
        for n in 1..40u32 {
            let s = (0..n).fold(Cyclo::zero(n), |acc, k| &acc + &Cyclo::root(n, k as i64));
            assert_eq!(s.as_integer(), Some(if n == 1 { 1 } else { 0 }), "n={}", n);
        }
    }

    #[test]
    fn mixed_levels_and_sqrt() {
        let i = Cyclo::root(4, 1);
        let w = Cyclo::root(3, 1);
        assert_eq!((&i * &i).as_integer(), Some(-1));
        let prod = &i * &w;
        assert_eq!(prod.level(), 12);
        assert_eq!(prod, Cyclo::root(12, 3 + 4));
        // (z8 + z8^3)^2 = -2
        let s = &Cyclo::root(8, 1) + &Cyclo::root(8, 3);
        assert_eq!((&s * &s).as_integer(), Some(-2));
        assert_eq!(s.conj(), -&s);
        assert_eq!(Cyclo::root(6, 1).root_index(), Some(1));
        let half = Cyclo::rational(5, 3, 6);
        assert_eq!(half.as_rational(), Some((1, 2)));
    }
}
