use super::arith::{factor_u64, primitive_root};

/// The field with p^2 elements as F_p[t]/(t^2 - c1 t - c0).
#[derive(Clone, Debug)]
pub struct Fp2 {
    pub p: u64,
    c1: u64,
    c0: u64,
}

pub type Fp2Elt = (u64, u64);

impl Fp2 {
    /// Uses the lexicographically first irreducible t^2 - c1 t - c0.
    pub fn new(p: u64) -> Self {
        for c1 in 0..p {
            for c0 in 1..p {
                // irreducible iff t^2 - c1 t - c0 has no root in F_p
                let has_root = (0..p).any(|x| (x * x + p * p - c1 * x % p - c0) % p == 0);
                if !has_root {
                    return Fp2 { p, c1, c0 };
                }
            }
        }
        unreachable!("an irreducible quadratic always exists")
    }

    pub fn mul(&self, a: Fp2Elt, b: Fp2Elt) -> Fp2Elt {
        let p = self.p as u128;
        let (a0, a1, b0, b1) = (a.0 as u128, a.1 as u128, b.0 as u128, b.1 as u128);
        // (a0 + a1 t)(b0 + b1 t) with t^2 = c1 t + c0
        let tt = a1 * b1 % p;
        let r0 = (a0 * b0 + tt * self.c0 as u128) % p;
        let r1 = (a0 * b1 + a1 * b0 + tt * self.c1 as u128) % p;
        (r0 as u64, r1 as u64)
    }

    pub fn pow(&self, mut b: Fp2Elt, mut e: u64) -> Fp2Elt {
        let mut r = (1 % self.p, 0);
        while e > 0 {
            if e & 1 == 1 {
                r = self.mul(r, b);
            }
            b = self.mul(b, b);
            e >>= 1;
        }
        r
    }

    pub fn order(&self) -> u64 {
        self.p * self.p - 1
    }

    pub fn is_generator(&self, g: Fp2Elt) -> bool {
        let n = self.order();
        g != (0, 0) && factor_u64(n).iter().all(|&(q, _)| self.pow(g, n / q) != (1 % self.p, 0))
    }

    /// A generator G of the unit group with G^(p+1) equal to the smallest
    /// primitive root mod p, so discrete logs restrict compatibly to F_p.
    pub fn normalized_generator(&self) -> Fp2Elt {
        let g = primitive_root(self.p) % self.p;
        for b in 0..self.p {
            for a in 0..self.p {
                let x = (a, b);
                if self.is_generator(x) && self.pow(x, self.p + 1) == (g, 0) {
                    return x;
                }
            }
        }
        unreachable!("norm is surjective on generators")
    }

    /// Discrete log with respect to `normalized_generator`, by enumeration.
    pub fn dlog(&self, x: Fp2Elt) -> Option<u64> {
        let g = self.normalized_generator();
        let mut y = (1 % self.p, 0);
        for k in 0..self.order() {
            if y == x {
                return Some(k);
            }
            y = self.mul(y, g);
        }
        None
    }

    /// Roots of x^2 - a x + b in this field (with multiplicity), a, b in F_p.
    pub fn quadratic_roots(&self, a: u64, b: u64) -> [Fp2Elt; 2] {
        let p = self.p;
        let mut found = Vec::new();
        for y in 0..p {
            for x in 0..p {
                let z = (x, y);
                let z2 = self.mul(z, z);
                let az = self.mul((a % p, 0), z);
                let val = ((z2.0 + p - az.0 + b % p) % p, (z2.1 + p - az.1) % p);
                if val == (0, 0) {
                    found.push(z);
                }
            }
        }
        match found.len() {
            2 => [found[0], found[1]],
            1 => [found[0], found[0]],
            _ => unreachable!("a quadratic over F_p splits in F_p^2"),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn generator_norm_is_primitive_root() {
        for p in [2u64, 3, 5, 7, 11] {
            let f = Fp2::new(p);
            let g = f.normalized_generator();
            assert!(f.is_generator(g));
            assert_eq!(f.pow(g, p + 1).0, primitive_root(p) % p);
        }
    }

    #[test]
    fn roots_multiply_out() {
        let f = Fp2::new(7);
        for a in 0..7 {
            for b in 1..7 {
                let [r, s] = f.quadratic_roots(a, b);
                assert_eq!(f.mul(r, s), (b, 0));
            }
        }
    }
}
