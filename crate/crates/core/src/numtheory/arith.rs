use num_bigint::{BigInt, BigUint, Sign};
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

/// Deterministic Miller-Rabin for 64-bit inputs.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for p in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n % p == 0 {
            return n == p;
        }
    }
    let mut d = n - 1;
    let mut s = 0;
    while d % 2 == 0 {
        d /= 2;
        s += 1;
    }
    'witness: for a in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

pub fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

pub fn pow_mod(mut b: u64, mut e: u64, m: u64) -> u64 {
    if m == 1 {
        return 0;
    }
    let mut r = 1u64;
    b %= m;
    while e > 0 {
        if e & 1 == 1 {
            r = mul_mod(r, b, m);
        }
        b = mul_mod(b, b, m);
        e >>= 1;
    }
    r
}

pub fn inv_mod(a: u64, m: u64) -> Option<u64> {
    let (g, x, _) = ext_gcd(a as i128 % m as i128, m as i128);
    if g != 1 {
        return None;
    }
    Some(x.rem_euclid(m as i128) as u64)
}

fn ext_gcd(a: i128, b: i128) -> (i128, i128, i128) {
    if b == 0 {
        (a, 1, 0)
    } else {
        let (g, x, y) = ext_gcd(b, a % b);
        (g, y, x - (a / b) * y)
    }
}

pub fn primes_up_to(n: u64) -> Vec<u64> {
    if n < 2 {
        return Vec::new();
    }
    let n = n as usize;
    let mut sieve = vec![true; n + 1];
    sieve[0] = false;
    sieve[1] = false;
    let mut i = 2;
    while i * i <= n {
        if sieve[i] {
            let mut j = i * i;
            while j <= n {
                sieve[j] = false;
                j += i;
            }
        }
        i += 1;
    }
    sieve
        .iter()
        .enumerate()
        .filter_map(|(k, &b)| b.then_some(k as u64))
        .collect()
}

/// Legendre symbol (a/l) for an odd prime l, as -1, 0 or 1.
pub fn legendre(a: &BigInt, l: u64) -> i8 {
    let r = mod_u64(a, l);
    legendre_u64(r, l)
}

pub fn legendre_u64(a: u64, l: u64) -> i8 {
    let a = a % l;
    if a == 0 {
        return 0;
    }
    if pow_mod(a, (l - 1) / 2, l) == 1 {
        1
    } else {
        -1
    }
}

/// Least nonnegative residue of a BigInt modulo m.
pub fn mod_u64(a: &BigInt, m: u64) -> u64 {
    a.mod_floor(&BigInt::from(m)).to_u64().expect("residue fits")
}

/// l-adic valuation of a nonzero integer; None for zero.
pub fn valuation(a: &BigInt, l: u64) -> Option<u32> {
    if a.is_zero() {
        return None;
    }
    let lb = BigInt::from(l);
    let mut v = 0;
    let mut x = a.clone();
    loop {
        let (q, r) = x.div_rem(&lb);
        if !r.is_zero() {
            return Some(v);
        }
        x = q;
        v += 1;
    }
}

/// Strip every factor of l, returning (valuation, cofactor).
pub fn split_off(a: &BigInt, l: u64) -> (u32, BigInt) {
    let lb = BigInt::from(l);
    let mut v = 0;
    let mut x = a.clone();
    while !x.is_zero() && x.is_multiple_of(&lb) {
        x /= &lb;
        v += 1;
    }
    (v, x)
}

/// Smallest primitive root modulo an odd prime.
pub fn primitive_root(p: u64) -> u64 {
    if p == 2 {
        return 1;
    }
    let fs = factor_u64(p - 1);
    (2..p)
        .find(|&g| fs.iter().all(|&(q, _)| pow_mod(g, (p - 1) / q, p) != 1))
        .expect("primitive root exists")
}

/// Discrete logarithm of a modulo p with respect to the smallest primitive root.
pub fn discrete_log(a: u64, p: u64) -> u64 {
    let g = primitive_root(p);
    let a = a % p;
    let mut x = 1u64;
    for k in 0..p - 1 {
        if x == a {
            return k;
        }
        x = mul_mod(x, g, p);
    }
    panic!("{a} is not a unit mod {p}")
}

/// Multiplicative order of a modulo m.
pub fn mult_order(a: u64, m: u64) -> u64 {
    let a = a % m;
    let mut x = a;
    let mut k = 1;
    while x != 1 {
        x = mul_mod(x, a, m);
        k += 1;
        assert!(k <= m, "{a} is not a unit mod {m}");
    }
    k
}

pub fn factor_u64(mut n: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            let mut e = 0;
            while n % d == 0 {
                n /= d;
                e += 1;
            }
            out.push((d, e));
        }
        d += 1;
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

fn is_probable_prime_big(n: &BigUint) -> bool {
    if let Some(s) = n.to_u64() {
        return is_prime(s);
    }
    let one = BigUint::one();
    let two = BigUint::from(2u32);
    let nm1 = n - &one;
    let mut d = nm1.clone();
    let mut s = 0;
    while d.is_even() {
        d >>= 1;
        s += 1;
    }
    'w: for a in [2u32, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47] {
        let mut x = BigUint::from(a).modpow(&d, n);
        if x == one || x == nm1 {
            continue;
        }
        for _ in 1..s {
            x = x.modpow(&two, n);
            if x == nm1 {
                continue 'w;
            }
        }
        return false;
    }
    true
}

fn pollard_brent(n: &BigUint) -> BigUint {
    let one = BigUint::one();
    for c in 1u32.. {
        let c = BigUint::from(c);
        let f = |x: &BigUint| (x * x + &c) % n;
        let (mut x, mut y) = (BigUint::from(2u32), BigUint::from(2u32));
        let mut d = one.clone();
        while d == one {
            x = f(&x);
            y = f(&f(&y));
            let diff = if x > y { &x - &y } else { &y - &x };
            d = diff.gcd(n);
        }
        if &d != n {
            return d;
        }
    }
    unreachable!()
}

/// Prime factorisation of |n| for n nonzero, sorted by prime.
pub fn factor(n: &BigInt) -> Vec<(BigInt, u32)> {
    assert!(!n.is_zero(), "factor of zero");
    let mut m = n.abs().to_biguint().expect("nonnegative");
    let mut out: Vec<(BigUint, u32)> = Vec::new();
    let mut d = 2u64;
    while d < 100_000 {
        let db = BigUint::from(d);
        if &db * &db > m {
            break;
        }
        if (&m % &db).is_zero() {
            let mut e = 0;
            while (&m % &db).is_zero() {
                m /= &db;
                e += 1;
            }
            out.push((db, e));
        }
        d += if d == 2 { 1 } else { 2 };
    }
    let mut stack = vec![m];
    while let Some(x) = stack.pop() {
        if x.is_one() {
            continue;
        }
        if is_probable_prime_big(&x) {
            match out.iter_mut().find(|(q, _)| *q == x) {
                Some(slot) => slot.1 += 1,
                None => out.push((x, 1)),
            }
            continue;
        }
        let f = pollard_brent(&x);
        stack.push(&x / &f);
        stack.push(f);
    }
    out.sort();
    out.into_iter()
        .map(|(q, e)| (BigInt::from_biguint(Sign::Plus, q), e))
        .collect()
}

/// Prime divisors of a nonzero integer that fit in u64.
pub fn prime_divisors(n: &BigInt) -> Vec<u64> {
    factor(n)
        .into_iter()
        .map(|(q, _)| q.to_u64().expect("prime divisor exceeds 64 bits"))
        .collect()
}
