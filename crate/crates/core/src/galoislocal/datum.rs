use std::sync::Arc;

use serde::{Deserialize, Serialize};

use super::GaloisError;
use crate::numtheory::{is_prime, CubeClassMu3, SquareClass};
use crate::reptheory::{builtin_group, character_table, FiniteGroup};

/// A quadratic character of D (given by its kernel, an index-2 subgroup of
/// D) together with the square class d with psi = (d, .)_v.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuadAnnotation {
    pub kernel: Vec<usize>,
    pub class: SquareClass,
    /// True when the class was derived from a kappa-twist rather than given.
    pub derived: bool,
}

/// A normal subgroup N of D with D/N = S3, tied to a cube class.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CubicAnnotation {
    pub kernel: Vec<usize>,
    pub class: Option<CubeClassMu3>,
}

/// Raw input for [`LocalGaloisDatum::new`]. Subgroups are given by generators.
#[derive(Clone, Debug)]
pub struct DatumInput {
    pub group: Arc<FiniteGroup>,
    pub ell: u64,
    pub q: u64,
    pub count: u32,
    pub d_gens: Vec<usize>,
    pub i_gens: Vec<usize>,
    pub frob: usize,
    pub quad: Vec<(Vec<usize>, SquareClass)>,
    pub cubic: Option<(Vec<usize>, Option<CubeClassMu3>)>,
}

/// Local Galois datum at the primes of F above a rational prime l.
/// All `count` primes above l are assumed to share it (they are conjugate
/// when F/Q is Galois).
#[derive(Clone, Debug)]
pub struct LocalGaloisDatum {
    group: Arc<FiniteGroup>,
    ell: u64,
    q: u64,
    count: u32,
    d: Vec<usize>,
    i: Vec<usize>,
    frob: usize,
    f: usize,
    // j with g in frob^j I, per position in d
    frob_exp: Vec<usize>,
    quad: Vec<QuadAnnotation>,
    cubic: Option<CubicAnnotation>,
    partial: bool,
    ambiguous_twists: bool,
    wild: bool,
}

fn invalid(ell: u64, detail: impl Into<String>) -> GaloisError {
    GaloisError::Invalid { ell, detail: detail.into() }
}

fn is_subset(a: &[usize], b: &[usize]) -> bool {
    a.iter().all(|x| b.binary_search(x).is_ok())
}

impl LocalGaloisDatum {
    pub fn new(input: DatumInput) -> Result<Self, GaloisError> {
        let DatumInput { group: g, ell, q, count, d_gens, i_gens, frob, quad, cubic } = input;
        if !is_prime(ell) {
            return Err(invalid(ell, format!("{ell} is not prime")));
        }
        let mut qq = ell;
        while qq < q {
            qq = qq.checked_mul(ell).ok_or_else(|| invalid(ell, "q overflows"))?;
        }
        if qq != q {
            return Err(invalid(ell, format!("q = {q} is not a power of {ell}")));
        }
        if count == 0 {
            return Err(invalid(ell, "count must be positive"));
        }
        for &x in d_gens.iter().chain(&i_gens).chain(std::iter::once(&frob)) {
            g.check_index(x)?;
        }
        let d = g.generate(&d_gens);
        let i = g.generate(&i_gens);
        if !is_subset(&i, &d) {
            return Err(invalid(ell, "I is not contained in D"));
        }
        if d.binary_search(&frob).is_err() {
            return Err(invalid(ell, "Frobenius is not in D"));
        }
        if !g.normalizes(&d, &i) {
            return Err(invalid(ell, "I is not normal in D"));
        }
        let f = d.len() / i.len();
        let mut frob_exp = vec![usize::MAX; d.len()];
        let mut x = g.identity();
        for j in 0..f {
            for &a in &i {
                let y = g.mul(x, a);
                let pos = d.binary_search(&y).expect("frob^j I lies in D");
                if frob_exp[pos] != usize::MAX {
                    return Err(invalid(ell, "Frobenius does not generate D/I"));
                }
                frob_exp[pos] = j;
            }
            x = g.mul(x, frob);
        }
        if frob_exp.contains(&usize::MAX) || i.binary_search(&x).is_err() {
            return Err(invalid(ell, "Frobenius does not generate D/I"));
        }
        let wild = i.len() as u64 % ell == 0;
        if !wild {
            // tame inertia is cyclic and Frobenius acts on it by the q-th power
            let tau = i
                .iter()
                .copied()
                .find(|&a| g.elt_order(a) as usize == i.len())
                .ok_or_else(|| invalid(ell, "tame inertia must be cyclic"))?;
            if g.conj(frob, tau) != g.pow(tau, (q % i.len() as u64) as i64) {
                return Err(invalid(ell, "Frobenius does not act on inertia by the q-th power"));
            }
        }
        let mut datum = LocalGaloisDatum {
            group: g,
            ell,
            q,
            count,
            d,
            i,
            frob,
            f,
            frob_exp,
            quad: Vec::new(),
            cubic: None,
            partial: false,
            ambiguous_twists: false,
            wild,
        };
        let subs = datum.subgroups_of_d()?;
        datum.set_quad(quad, &subs)?;
        datum.set_cubic(cubic, &subs)?;
        datum.ambiguous_twists = datum.compute_ambiguity();
        Ok(datum)
    }

    fn subgroups_of_d(&self) -> Result<Vec<Vec<usize>>, GaloisError> {
        let (h, emb) = self.group.subgroup_group(&self.d)?;
        Ok(h.subgroups()
            .into_iter()
            .map(|s| {
                let mut v: Vec<usize> = s.into_iter().map(|k| emb[k]).collect();
                v.sort_unstable();
                v
            })
            .collect())
    }

    /// Kernel of kappa_D, the unramified quadratic character, if it factors through D.
    pub fn kappa_kernel(&self) -> Option<Vec<usize>> {
        if self.f % 2 == 1 {
            return None;
        }
        Some(
            self.d
                .iter()
                .enumerate()
                .filter(|(k, _)| self.frob_exp[*k] % 2 == 0)
                .map(|(_, &a)| a)
                .collect(),
        )
    }

    fn kernel_product(&self, a: &[usize], b: &[usize]) -> Vec<usize> {
        // kernel of psi_a psi_b: elements where both or neither lie in the kernels
        self.d
            .iter()
            .copied()
            .filter(|x| (a.binary_search(x).is_ok()) == (b.binary_search(x).is_ok()))
            .collect()
    }

    fn fit_class(&self, c: SquareClass) -> Result<SquareClass, GaloisError> {
        let ell = self.ell;
        match c {
            SquareClass::Odd { ell: l, q, val_parity, unit_square } if l == ell => {
                if q != ell && q != self.q {
                    return Err(invalid(ell, format!("square class over q = {q}, datum has q = {}", self.q)));
                }
                Ok(SquareClass::Odd { ell, q: self.q, val_parity, unit_square })
            }
            SquareClass::Dyadic { .. } if ell == 2 => {
                if self.q != 2 {
                    return Err(GaloisError::Unsupported(
                        "2-adic square classes are only modelled over Q_2".into(),
                    ));
                }
                Ok(c)
            }
            _ => Err(invalid(ell, format!("square class {c} is not at this place"))),
        }
    }

    fn set_quad(&mut self, quad: Vec<(Vec<usize>, SquareClass)>, subs: &[Vec<usize>]) -> Result<(), GaloisError> {
        let ell = self.ell;
        let index_two: Vec<Vec<usize>> = subs.iter().filter(|h| h.len() * 2 == self.d.len()).cloned().collect();
        let kappa = self.kappa_kernel();
        let ramified = |h: &Vec<usize>| !is_subset(&self.i, h);
        let mut given: Vec<QuadAnnotation> = Vec::new();
        for (gens, class) in quad {
            let class = self.fit_class(class)?;
            let kernel = self.group.generate(&gens);
            if !index_two.contains(&kernel) {
                return Err(invalid(ell, "annotated kernel is not an index-2 subgroup of D"));
            }
            if ramified(&kernel) {
                if class.is_unramified() {
                    return Err(invalid(ell, format!("ramified character annotated with unramified class {class}")));
                }
            } else {
                let unr = class.unramified_nonsquare().expect("finite place");
                if Some(&kernel) != kappa.as_ref() || class != unr {
                    return Err(invalid(ell, "unramified quadratic character must be kappa with the unramified class"));
                }
                continue;
            }
            if let Some(prev) = given.iter().find(|a| a.kernel == kernel) {
                if prev.class != class {
                    return Err(invalid(ell, "one character annotated with two classes"));
                }
                continue;
            }
            if given.iter().any(|a| a.class == class) {
                return Err(invalid(ell, format!("two characters annotated with the class {class}")));
            }
            given.push(QuadAnnotation { kernel, class, derived: false });
        }
        let ram: Vec<&Vec<usize>> = index_two.iter().filter(|h| ramified(h)).collect();
        if ell != 2 && ram.len() > 2 {
            return Err(invalid(ell, "more ramified quadratic characters than F_v has"));
        }
        // pairs of annotated characters must be compatible
        for (x, a) in given.iter().enumerate() {
            for b in &given[x + 1..] {
                let prod = self.kernel_product(&a.kernel, &b.kernel);
                let cls = a.class.mul(&b.class)?;
                let unr = a.class.unramified_nonsquare().expect("finite place");
                if Some(&prod) == kappa.as_ref() && cls != unr {
                    return Err(invalid(ell, "characters differing by kappa must have classes differing by the unramified class"));
                }
                if ell != 2 && Some(&prod) != kappa.as_ref() {
                    return Err(invalid(ell, "two ramified quadratic characters must differ by kappa"));
                }
            }
        }
        // derive kappa-twists
        if let Some(k) = &kappa {
            let extra: Vec<QuadAnnotation> = given
                .iter()
                .filter_map(|a| {
                    let kernel = self.kernel_product(&a.kernel, k);
                    if given.iter().any(|b| b.kernel == kernel) {
                        return None;
                    }
                    let class = a.class.mul(&a.class.unramified_nonsquare()?).ok()?;
                    Some(QuadAnnotation { kernel, class, derived: true })
                })
                .collect();
            given.extend(extra);
        }
        self.partial = ram.iter().any(|h| !given.iter().any(|a| &a.kernel == *h));
        self.quad = given;
        Ok(())
    }

    /// Normal subgroups N of D with D/N = S3, sign of D/N equal to kappa_D
    /// and inertia mapping onto the 3-cycles.
    fn s3_quotients(&self, subs: &[Vec<usize>]) -> Vec<Vec<usize>> {
        let g = &self.group;
        let kappa = match self.kappa_kernel() {
            Some(k) => k,
            None => return Vec::new(),
        };
        if self.d.len() % 6 != 0 || self.q % 3 != 2 {
            return Vec::new();
        }
        subs.iter()
            .filter(|n| n.len() * 6 == self.d.len() && g.normalizes(&self.d, n))
            .filter(|n| {
                let inn = |x: usize| n.binary_search(&x).is_ok();
                let nonabelian = self.d.iter().any(|&a| {
                    self.d.iter().any(|&b| !inn(g.mul(g.mul(a, b), g.inv(g.mul(b, a)))))
                });
                // elements mapping to transpositions are exactly those off kappa's kernel
                let sign_ok = self.d.iter().all(|&a| {
                    let transposition = !inn(a) && inn(g.mul(a, a));
                    transposition == kappa.binary_search(&a).is_err()
                });
                let mut in_image = self.i.clone();
                in_image.extend(n.iter().copied());
                let image = g.generate(&in_image).len() / n.len();
                nonabelian && sign_ok && image == 3
            })
            .cloned()
            .collect()
    }

    fn set_cubic(
        &mut self,
        cubic: Option<(Vec<usize>, Option<CubeClassMu3>)>,
        subs: &[Vec<usize>],
    ) -> Result<(), GaloisError> {
        let ell = self.ell;
        let found = self.s3_quotients(subs);
        if found.len() > 1 {
            return Err(invalid(ell, "D has two S3 quotients of tame type; F_v has only one such extension"));
        }
        match cubic {
            None => {
                self.cubic = found.into_iter().next().map(|kernel| CubicAnnotation { kernel, class: None });
            }
            Some((gens, class)) => {
                let kernel = self.group.generate(&gens);
                if !found.contains(&kernel) {
                    return Err(invalid(ell, "cubic annotation kernel does not give an S3 quotient with sign kappa and inertia C3"));
                }
                if let Some(c) = class {
                    if c.ell != ell || (c.q != self.q && c.q != ell) {
                        return Err(invalid(ell, "cube class is not at this place"));
                    }
                    if c.valuation_mod_3 == 0 {
                        return Err(invalid(ell, "the S3 extension is ramified, so its Kummer class has valuation prime to 3"));
                    }
                }
                self.cubic = Some(CubicAnnotation { kernel, class: class.map(|c| CubeClassMu3 { q: self.q, ..c }) });
            }
        }
        Ok(())
    }

    // D has a character whose restriction to I has order 2 but no ramified
    // quadratic character; then theta-type products of order > 2 cannot be
    // located without more data.
    fn compute_ambiguity(&self) -> bool {
        let g = &self.group;
        let mut comms = Vec::new();
        for &a in &self.d {
            for &b in &self.d {
                comms.push(g.mul(g.mul(a, b), g.inv(g.mul(b, a))));
            }
        }
        let c = g.generate(&comms);
        let mut ic = c.clone();
        ic.extend(self.i.iter().copied());
        let image = g.generate(&ic).len() / c.len();
        let mut sq = c.clone();
        sq.extend(self.d.iter().map(|&a| g.mul(a, a)));
        let s = g.generate(&sq);
        image % 2 == 0 && is_subset(&self.i, &s)
    }

    pub fn group(&self) -> &Arc<FiniteGroup> {
        &self.group
    }
    pub fn ell(&self) -> u64 {
        self.ell
    }
    pub fn q(&self) -> u64 {
        self.q
    }
    pub fn count(&self) -> u32 {
        self.count
    }
    pub fn with_count(mut self, count: u32) -> Self {
        self.count = count.max(1);
        self
    }
    pub fn residue_degree(&self) -> u32 {
        let (mut r, mut x) = (0, 1u64);
        while x < self.q {
            x *= self.ell;
            r += 1;
        }
        r
    }
    pub fn d(&self) -> &[usize] {
        &self.d
    }
    pub fn i(&self) -> &[usize] {
        &self.i
    }
    pub fn frob(&self) -> usize {
        self.frob
    }
    /// Residue degree of K_w/F_v.
    pub fn f(&self) -> usize {
        self.f
    }
    /// Ramification index of K_w/F_v.
    pub fn e(&self) -> usize {
        self.i.len()
    }
    /// j with g in frob^j I, for g in D (as a group element index).
    pub fn frob_exponent(&self, g: usize) -> Option<usize> {
        self.d.binary_search(&g).ok().map(|k| self.frob_exp[k])
    }
    pub fn quad_annotations(&self) -> &[QuadAnnotation] {
        &self.quad
    }
    pub fn cubic(&self) -> Option<&CubicAnnotation> {
        self.cubic.as_ref()
    }
    /// Some ramified quadratic character of D has no class attached.
    pub fn is_partial(&self) -> bool {
        self.partial
    }
    pub fn ambiguous_twists(&self) -> bool {
        self.ambiguous_twists
    }
    pub fn is_wild(&self) -> bool {
        self.wild
    }
    pub fn mu_p_in_fv(&self, p: u64) -> bool {
        self.q % p == 1
    }
    /// D_cyc: generated by I and frob^(p^a), p^a the p-part of f.
    pub fn d_cyc(&self, p: u64) -> Vec<usize> {
        let mut pa = 1usize;
        while self.f % (pa * p as usize) == 0 {
            pa *= p as usize;
        }
        let mut gens = self.i.clone();
        gens.push(self.group.pow(self.frob, pa as i64));
        self.group.generate(&gens)
    }

    /// Build from the JSON record form.
    pub fn from_record(rec: &LocalDatumRecord, group: Option<&Arc<FiniteGroup>>) -> Result<Self, GaloisError> {
        let ell = rec.p;
        let g = match (&rec.group, group) {
            (Some(name), Some(g)) if name != g.name() => {
                return Err(invalid(ell, format!("record group {name} differs from {}", g.name())));
            }
            (_, Some(g)) => g.clone(),
            (Some(name), None) => builtin_group(name)?,
            (None, None) => return Err(invalid(ell, "no group given")),
        };
        let mut quad = Vec::new();
        for a in &rec.quad_annotations {
            let gens = match (&a.char, &a.kernel) {
                (Some(name), None) => {
                    let table = character_table(&g)?;
                    let chi = table.get(name)?;
                    if chi.dim() != 1 {
                        return Err(invalid(ell, format!("{name} is not a linear character")));
                    }
                    let ker = chi.kernel();
                    let d = g.generate(&rec.d);
                    d.into_iter().filter(|x| ker.binary_search(x).is_ok()).collect()
                }
                (None, Some(k)) => k.clone(),
                _ => return Err(invalid(ell, "quadratic annotation needs exactly one of \"char\" and \"kernel\"")),
            };
            for &x in &gens {
                g.check_index(x)?;
            }
            quad.push((gens, a.square_class));
        }
        let cubic = match &rec.cubic_annotation {
            None => None,
            Some(c) => {
                for &x in &c.kernel {
                    g.check_index(x)?;
                }
                let class = c.valuation_mod_3.map(|v| CubeClassMu3 {
                    ell,
                    q: rec.q,
                    valuation_mod_3: v % 3,
                    unit_class: 0,
                });
                Some((c.kernel.clone(), class))
            }
        };
        LocalGaloisDatum::new(DatumInput {
            group: g,
            ell,
            q: rec.q,
            count: rec.count.unwrap_or(1),
            d_gens: rec.d.clone(),
            i_gens: rec.i.clone(),
            frob: rec.frobenius,
            quad,
            cubic,
        })
    }

    /// Record form, with subgroups written by their full element lists.
    pub fn to_record(&self) -> LocalDatumRecord {
        LocalDatumRecord {
            p: self.ell,
            q: self.q,
            group: Some(self.group.name().to_string()),
            d: self.d.clone(),
            i: self.i.clone(),
            frobenius: self.frob,
            count: Some(self.count),
            quad_annotations: self
                .quad
                .iter()
                .filter(|a| !a.derived)
                .map(|a| QuadRecord { char: None, kernel: Some(a.kernel.clone()), square_class: a.class })
                .collect(),
            cubic_annotation: self.cubic.as_ref().map(|c| CubicRecord {
                kernel: c.kernel.clone(),
                valuation_mod_3: c.class.map(|c| c.valuation_mod_3),
            }),
            overrides: None,
            note: None,
        }
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct QuadRecord {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub char: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub kernel: Option<Vec<usize>>,
    pub square_class: SquareClass,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct CubicRecord {
    pub kernel: Vec<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub valuation_mod_3: Option<u8>,
}

/// JSON form of a local datum. `p` is the residue characteristic of v
/// (`ell` is accepted too); element indices refer to the built-in group.
#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct LocalDatumRecord {
    #[serde(alias = "ell")]
    pub p: u64,
    pub q: u64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub group: Option<String>,
    #[serde(rename = "D")]
    pub d: Vec<usize>,
    #[serde(rename = "I")]
    pub i: Vec<usize>,
    pub frobenius: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub count: Option<u32>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub quad_annotations: Vec<QuadRecord>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub cubic_annotation: Option<CubicRecord>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub overrides: Option<serde_json::Value>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}
