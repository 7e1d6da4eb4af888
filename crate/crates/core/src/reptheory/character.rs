use std::sync::Arc;

use super::cyclotomic::Cyclo;
use super::group::FiniteGroup;
use super::RepError;

/// A class function with exact values, stored per conjugacy class.
#[derive(Clone, Debug)]
pub struct Character {
    group: Arc<FiniteGroup>,
    name: String,
    values: Vec<Cyclo>,
}

impl Character {
    /// Build from per-element values; fails if they are not class functions.
    pub fn from_fn(
        group: &Arc<FiniteGroup>,
        name: &str,
        f: &dyn Fn(usize) -> Cyclo,
    ) -> Result<Self, RepError> {
        let mut values = Vec::with_capacity(group.classes().len());
        for cls in group.classes() {
            let v = f(cls[0]);
            for &a in &cls[1..] {
                if f(a) != v {
                    return Err(RepError::NotClassFunction(name.to_string()));
                }
            }
            values.push(v);
        }
        Ok(Character { group: group.clone(), name: name.to_string(), values })
    }

    pub fn from_class_values(group: &Arc<FiniteGroup>, name: &str, values: Vec<Cyclo>) -> Self {
        assert_eq!(values.len(), group.classes().len());
        Character { group: group.clone(), name: name.to_string(), values }
    }

    pub fn trivial(group: &Arc<FiniteGroup>) -> Self {
        let n = group.exponent();
        Character::from_class_values(group, "triv", vec![Cyclo::one(n); group.classes().len()])
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn renamed(mut self, name: impl Into<String>) -> Self {
        self.name = name.into();
        self
    }

    pub fn group(&self) -> &Arc<FiniteGroup> {
        &self.group
    }

    pub fn value(&self, a: usize) -> &Cyclo {
        &self.values[self.group.class_of(a)]
    }

    pub fn class_values(&self) -> &[Cyclo] {
        &self.values
    }

    pub fn dim(&self) -> i64 {
        self.value(self.group.identity())
            .as_integer()
            .expect("degree is an integer")
    }

    fn same_group(&self, other: &Character) -> Result<(), RepError> {
        if Arc::ptr_eq(&self.group, &other.group) || *self.group == *other.group {
            Ok(())
        } else {
            Err(RepError::GroupMismatch)
        }
    }

    /// <self, other> = |G|^-1 sum chi(g) conj(psi(g)).
    pub fn inner(&self, other: &Character) -> Result<Cyclo, RepError> {
        self.same_group(other)?;
        let mut acc = Cyclo::zero(self.group.exponent());
        for (i, cls) in self.group.classes().iter().enumerate() {
            let t = &self.values[i] * &other.values[i].conj();
            acc = &acc + &t.scale(cls.len() as i64);
        }
        Ok(acc.div_int(self.group.order() as i64))
    }

    /// Inner product that must be a non-negative integer.
    pub fn multiplicity(&self, other: &Character) -> Result<i64, RepError> {
        let v = self.inner(other)?;
        match v.as_integer() {
            Some(k) if k >= 0 => Ok(k),
            _ => Err(RepError::NonIntegral(format!("<{}, {}> = {}", self.name, other.name, v))),
        }
    }

    pub fn is_irreducible(&self) -> bool {
        matches!(self.inner(self).ok().and_then(|v| v.as_integer()), Some(1))
    }

    pub fn conj(&self) -> Character {
        Character {
            group: self.group.clone(),
            name: format!("conj({})", self.name),
            values: self.values.iter().map(Cyclo::conj).collect(),
        }
    }

    pub fn is_real(&self) -> bool {
        self.values.iter().all(|v| *v == v.conj())
    }

    pub fn add(&self, other: &Character) -> Result<Character, RepError> {
        self.same_group(other)?;
        Ok(Character {
            group: self.group.clone(),
            name: format!("{}+{}", self.name, other.name),
            values: self.values.iter().zip(&other.values).map(|(a, b)| a + b).collect(),
        })
    }

    pub fn tensor(&self, other: &Character) -> Result<Character, RepError> {
        self.same_group(other)?;
        Ok(Character {
            group: self.group.clone(),
            name: format!("{}*{}", self.name, other.name),
            values: self.values.iter().zip(&other.values).map(|(a, b)| a * b).collect(),
        })
    }

    /// Restriction along an embedding H -> G (indices of H mapped into G).
    pub fn restrict(&self, sub: &Arc<FiniteGroup>, emb: &[usize]) -> Character {
        let values = sub
            .classes()
            .iter()
            .map(|cls| self.value(emb[cls[0]]).clone())
            .collect();
        Character { group: sub.clone(), name: self.name.clone(), values }
    }

    /// Induction from a subgroup H (given by embedding) to `big`.
    pub fn induce(&self, big: &Arc<FiniteGroup>, emb: &[usize]) -> Character {
        let h = self.group.order() as i64;
        let pos: std::collections::HashMap<usize, usize> =
            emb.iter().enumerate().map(|(i, &g)| (g, i)).collect();
        let n = big.exponent();
        let values = big
            .classes()
            .iter()
            .map(|cls| {
                let x = cls[0];
                let mut acc = Cyclo::zero(n);
                for g in 0..big.order() {
                    if let Some(&i) = pos.get(&big.conj(big.inv(g), x)) {
                        acc = &acc + self.value(i);
                    }
                }
                acc.div_int(h)
            })
            .collect();
        Character { group: big.clone(), name: format!("Ind({})", self.name), values }
    }

    /// Frobenius-Schur indicator |G|^-1 sum chi(g^2).
    pub fn frobenius_schur(&self) -> Result<i64, RepError> {
        let g = &self.group;
        let mut acc = Cyclo::zero(g.exponent());
        for a in 0..g.order() {
            acc = &acc + self.value(g.mul(a, a));
        }
        let v = acc.div_int(g.order() as i64);
        v.as_integer()
            .ok_or_else(|| RepError::NonIntegral(format!("indicator of {} = {}", self.name, v)))
    }

    /// Kernel as a sorted element list.
    pub fn kernel(&self) -> Vec<usize> {
        let d = self.value(self.group.identity()).clone();
        (0..self.group.order()).filter(|&a| *self.value(a) == d).collect()
    }

    /// Determinant character, via Newton's identities on chi(g^k).
    pub fn det(&self) -> Result<Character, RepError> {
        let g = &self.group;
        let d = self.dim();
        if d <= 0 {
            return Err(RepError::NotACharacter(self.name.clone()));
        }
        let d = d as usize;
        let n = g.exponent();
        let mut values = Vec::with_capacity(g.classes().len());
        for cls in g.classes() {
            let x = cls[0];
            let p: Vec<Cyclo> = (0..=d).map(|k| self.value(g.pow(x, k as i64)).clone()).collect();
            // e_0 = 1, k e_k = sum_{i=1..k} (-1)^(i-1) e_{k-i} p_i
            let mut e = vec![Cyclo::one(n)];
            for k in 1..=d {
                let mut acc = Cyclo::zero(n);
                for i in 1..=k {
                    let t = &e[k - i] * &p[i];
                    acc = if i % 2 == 1 { &acc + &t } else { &acc - &t };
                }
                e.push(acc.div_int(k as i64));
            }
            values.push(e[d].clone());
        }
        let det = Character { group: g.clone(), name: format!("det({})", self.name), values };
        for a in 0..g.order() {
            if det.value(a).root_index().is_none() {
                return Err(RepError::NotACharacter(self.name.clone()));
            }
            for b in 0..g.order() {
                if det.value(g.mul(a, b)) != &(det.value(a) * det.value(b)) {
                    return Err(RepError::NotACharacter(self.name.clone()));
                }
            }
        }
        Ok(det)
    }

    /// For a linear character, the value as an exponent k/m of a root of unity
    /// (k mod m, with m the group exponent).
    pub fn linear_exponent(&self, a: usize) -> Option<u32> {
        self.value(a).lift(self.group.exponent()).root_index()
    }
}

/// The irreducible characters of a group.
#[derive(Clone, Debug)]
pub struct CharacterTable {
    group: Arc<FiniteGroup>,
    chars: Vec<Character>,
}

impl CharacterTable {
    pub fn new(group: Arc<FiniteGroup>, chars: Vec<Character>) -> Self {
        CharacterTable { group, chars }
    }

    pub fn group(&self) -> &Arc<FiniteGroup> {
        &self.group
    }

    pub fn irreducibles(&self) -> &[Character] {
        &self.chars
    }

    /// Look up by name. `2dim` is accepted when there is exactly one 2-dimensional irreducible.
    pub fn get(&self, name: &str) -> Result<&Character, RepError> {
        if let Some(c) = self.chars.iter().find(|c| c.name() == name) {
            return Ok(c);
        }
        if name == "2dim" {
            let two: Vec<&Character> = self.chars.iter().filter(|c| c.dim() == 2).collect();
            if two.len() == 1 {
                return Ok(two[0]);
            }
        }
        Err(RepError::UnknownCharacter(name.to_string()))
    }

    /// Checks both orthogonality relations and the degree sum.
    pub fn check_orthogonality(&self) -> Result<(), RepError> {
        let fail = |m: String| Err(RepError::Orthogonality(m));
        for (i, a) in self.chars.iter().enumerate() {
            for (j, b) in self.chars.iter().enumerate() {
                let v = a.inner(b)?;
                let want = if i == j { 1 } else { 0 };
                if v.as_integer() != Some(want) {
                    return fail(format!("<{}, {}> = {}", a.name(), b.name(), v));
                }
            }
        }
        let g = &self.group;
        let nc = g.classes().len();
        if self.chars.len() != nc {
            return fail(format!("{} characters for {} classes", self.chars.len(), nc));
        }
        for x in 0..nc {
            for y in 0..nc {
                let mut acc = Cyclo::zero(g.exponent());
                for c in &self.chars {
                    acc = &acc + &(&c.class_values()[x] * &c.class_values()[y].conj());
                }
                let want = if x == y { (g.order() / g.classes()[x].len()) as i64 } else { 0 };
                if acc.as_integer() != Some(want) {
                    return fail(format!("column relation at classes {} and {}", x, y));
                }
            }
        }
        let sq: i64 = self.chars.iter().map(|c| c.dim() * c.dim()).sum();
        if sq != g.order() as i64 {
            return fail(format!("degree squares sum to {}", sq));
        }
        Ok(())
    }
}
