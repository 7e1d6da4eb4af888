use std::fmt;

use num_integer::Integer;
use num_rational::Ratio;
use num_traits::Zero;

use super::{GaloisError, LocalGaloisDatum};
use crate::numtheory::{discrete_log, CubeClassMu3, Fp2, Fp2Elt, SquareClass};
use crate::reptheory::Cyclo;

/// A representation of G_{F_v} of the shape unram(t) * theta_d * theta_3,
/// each factor optional. `unram` sends Frobenius to exp(2 pi i t).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LocalCharSpec {
    pub name: String,
    pub unram: Ratio<i64>,
    pub quad: Option<SquareClass>,
    pub theta3: Option<CubeClassMu3>,
}

fn frac(t: Ratio<i64>) -> Ratio<i64> {
    t - t.floor()
}

impl fmt::Display for LocalCharSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.name)
    }
}

impl LocalCharSpec {
    pub fn one() -> Self {
        LocalCharSpec { name: "1".into(), unram: Ratio::zero(), quad: None, theta3: None }
    }

    pub fn kappa() -> Self {
        Self::unramified("kappa", Ratio::new(1, 2))
    }

    pub fn unramified(name: &str, t: Ratio<i64>) -> Self {
        LocalCharSpec { name: name.into(), unram: frac(t), quad: None, theta3: None }
    }

    /// Teichmuller lift of the mod-p cyclotomic character: Frob -> q mod p.
    pub fn omega(p: u64, q: u64) -> Self {
        let k = discrete_log(q % p, p);
        Self::unramified("omega", Ratio::new(k as i64, p as i64 - 1))
    }

    /// Unramified character Frob -> Teichmuller(alpha), alpha in F_{p^2}^x.
    pub fn teichmuller(name: &str, field: &Fp2, alpha: Fp2Elt) -> Option<Self> {
        let k = field.dlog(alpha)?;
        Some(Self::unramified(name, Ratio::new(k as i64, field.order() as i64)))
    }

    /// theta_d = (d, .)_v; folds unramified classes into 1 or kappa.
    pub fn theta(d: SquareClass) -> Self {
        if d.is_trivial() {
            return Self::one();
        }
        if d.is_unramified() {
            return Self::kappa();
        }
        LocalCharSpec { name: format!("theta[{d}]"), unram: Ratio::zero(), quad: Some(d), theta3: None }
    }

    pub fn theta3(c: CubeClassMu3) -> Self {
        LocalCharSpec { name: "theta3".into(), unram: Ratio::zero(), quad: None, theta3: Some(c) }
    }

    pub fn dim(&self) -> u32 {
        if self.theta3.is_some() {
            2
        } else {
            1
        }
    }

    pub fn is_ramified(&self) -> bool {
        self.quad.is_some() || self.theta3.is_some()
    }

    /// Tensor product; at most one factor may carry theta3.
    pub fn twist(&self, other: &LocalCharSpec) -> Result<LocalCharSpec, GaloisError> {
        let mut t = self.unram + other.unram;
        let quad = match (self.quad, other.quad) {
            (None, x) | (x, None) => x,
            (Some(a), Some(b)) => {
                let c = a.mul(&b)?;
                if c.is_trivial() {
                    None
                } else if c.is_unramified() {
                    t += Ratio::new(1, 2);
                    None
                } else {
                    Some(c)
                }
            }
        };
        let theta3 = match (self.theta3, other.theta3) {
            (Some(_), Some(_)) => {
                return Err(GaloisError::Unsupported("product of two S3-type characters".into()));
            }
            (x, None) | (None, x) => x,
        };
        let name = match (self.name.as_str(), other.name.as_str()) {
            ("1", n) | (n, "1") => n.to_string(),
            (a, b) => format!("{a}*{b}"),
        };
        Ok(LocalCharSpec { name, unram: frac(t), quad, theta3 })
    }

    /// Values on the elements of D (in the order of `datum.d()`), or None
    /// when the representation does not factor through D.
    pub fn eval_on_d(&self, datum: &LocalGaloisDatum) -> Result<Option<Vec<Cyclo>>, GaloisError> {
        let ell = datum.ell();
        let g = datum.group();
        let mut t = self.unram;
        let mut quad_kernel: Option<&[usize]> = None;
        if let Some(d) = self.quad {
            let u = d.unramified_nonsquare().expect("finite place");
            let du = d.mul(&u)?;
            let hit = datum.quad_annotations().iter().find_map(|a| {
                if a.class == d {
                    Some((a, Ratio::zero()))
                } else if a.class == du {
                    Some((a, Ratio::new(1, 2)))
                } else {
                    None
                }
            });
            match hit {
                Some((a, shift)) => {
                    quad_kernel = Some(&a.kernel);
                    t = frac(t + shift);
                }
                None if datum.is_partial() => {
                    return Err(GaloisError::Unannotated {
                        ell,
                        detail: format!("cannot tell whether {} factors through D", self.name),
                    });
                }
                None if datum.ambiguous_twists() && *(t * 2).denom() != 1 => {
                    return Err(GaloisError::Unsupported(format!(
                        "{} at {ell}: D has a ramified character of order > 2 that is not annotated",
                        self.name
                    )));
                }
                None => return Ok(None),
            }
        }
        let f = datum.f() as i64;
        let tf = t * f;
        if !tf.is_integer() {
            return Ok(None);
        }
        let k = tf.to_integer();
        let mut cubic_kernel: Option<&[usize]> = None;
        if let Some(c) = self.theta3 {
            if c.valuation_mod_3 == 0 || datum.q() % 3 != 2 {
                return Err(GaloisError::Invalid {
                    ell,
                    detail: "theta3 needs q = 2 mod 3 and a class of valuation prime to 3".into(),
                });
            }
            match datum.cubic() {
                Some(ann) if ann.class.map_or(true, |c0| c0.same_line(&c)) => cubic_kernel = Some(&ann.kernel),
                _ => return Ok(None),
            }
        }
        let level = (f as u32).lcm(&6);
        let mut out = Vec::with_capacity(datum.d().len());
        for &a in datum.d() {
            let j = datum.frob_exponent(a).expect("a in D") as i64;
            let mut v = Cyclo::root(f as u32, k * j).lift(level);
            if let Some(ker) = quad_kernel {
                if ker.binary_search(&a).is_err() {
                    v = -v;
                }
            }
            if let Some(n) = cubic_kernel {
                let inn = |x: usize| n.binary_search(&x).is_ok();
                let c = if inn(a) {
                    2
                } else if inn(g.pow(a, 3)) {
                    -1
                } else {
                    0
                };
                v = v.scale(c);
            }
            out.push(v);
        }
        Ok(Some(out))
    }
}
