use std::collections::BTreeSet;
use std::fmt;

use num_integer::Integer;

use super::RepError;

/// Family tag used to pick the character table construction.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Family {
    Cyclic(u32),
    /// Dihedral group of order 2n, stored as n.
    Dihedral(u32),
    Sl2F3,
    Gl2F3,
    /// Subgroup given by its Cayley table only.
    Generic,
}

/// A finite group given by its multiplication table.
#[derive(Clone)]
pub struct FiniteGroup {
    name: String,
    family: Family,
    n: usize,
    table: Vec<u16>,
    identity: usize,
    inv: Vec<usize>,
    order: Vec<u32>,
    classes: Vec<Vec<usize>>,
    class_of: Vec<usize>,
    exponent: u32,
    labels: Vec<String>,
}

impl fmt::Debug for FiniteGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "FiniteGroup({}, order {})", self.name, self.n)
    }
}

impl PartialEq for FiniteGroup {
    fn eq(&self, other: &Self) -> bool {
        self.n == other.n && self.table == other.table && self.name == other.name
    }
}

impl FiniteGroup {
    pub fn from_table(
        name: impl Into<String>,
        family: Family,
        table: Vec<Vec<usize>>,
        labels: Vec<String>,
    ) -> Result<Self, RepError> {
        let n = table.len();
        let bad = |m: &str| RepError::NotAGroup(m.to_string());
        if n == 0 || n > u16::MAX as usize || labels.len() != n {
            return Err(bad("empty table or label mismatch"));
        }
        if table.iter().any(|row| row.len() != n || row.iter().any(|&x| x >= n)) {
            return Err(bad("table is not square"));
        }
        let identity = (0..n)
            .find(|&e| (0..n).all(|x| table[e][x] == x && table[x][e] == x))
            .ok_or_else(|| bad("no identity"))?;
        for a in 0..n {
            for b in 0..n {
                let ab = table[a][b];
                for c in 0..n {
                    if table[ab][c] != table[a][table[b][c]] {
                        return Err(bad("not associative"));
                    }
                }
            }
        }
        let mut inv = vec![0; n];
        for (a, slot) in inv.iter_mut().enumerate() {
            *slot = (0..n)
                .find(|&b| table[a][b] == identity)
                .ok_or_else(|| bad("missing inverse"))?;
        }
        let flat: Vec<u16> = table.iter().flatten().map(|&x| x as u16).collect();
        let mut g = FiniteGroup {
            name: name.into(),
            family,
            n,
            table: flat,
            identity,
            inv,
            order: vec![0; n],
            classes: Vec::new(),
            class_of: vec![usize::MAX; n],
            exponent: 1,
            labels,
        };
        for a in 0..n {
            let (mut x, mut k) = (a, 1u32);
            while x != identity {
                x = g.mul(x, a);
                k += 1;
            }
            g.order[a] = k;
        }
        g.exponent = g.order.iter().fold(1u32, |acc, &o| acc.lcm(&o));
        for a in 0..n {
            if g.class_of[a] != usize::MAX {
                continue;
            }
            let cls: BTreeSet<usize> = (0..n).map(|h| g.conj(h, a)).collect();
            let idx = g.classes.len();
            for &x in &cls {
                g.class_of[x] = idx;
            }
            g.classes.push(cls.into_iter().collect());
        }
        Ok(g)
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn family(&self) -> &Family {
        &self.family
    }

    pub fn order(&self) -> usize {
        self.n
    }

    pub fn identity(&self) -> usize {
        self.identity
    }

    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.table[a * self.n + b] as usize
    }

    pub fn inv(&self, a: usize) -> usize {
        self.inv[a]
    }

    pub fn pow(&self, a: usize, k: i64) -> usize {
        let o = self.order[a] as i64;
        let mut e = k.rem_euclid(o);
        let mut x = self.identity;
        while e > 0 {
            x = self.mul(x, a);
            e -= 1;
        }
        x
    }

    /// h a h^-1
    pub fn conj(&self, h: usize, a: usize) -> usize {
        self.mul(self.mul(h, a), self.inv[h])
    }

    pub fn elt_order(&self, a: usize) -> u32 {
        self.order[a]
    }

    pub fn exponent(&self) -> u32 {
        self.exponent
    }

    pub fn classes(&self) -> &[Vec<usize>] {
        &self.classes
    }

    pub fn class_of(&self, a: usize) -> usize {
        self.class_of[a]
    }

    pub fn label(&self, a: usize) -> &str {
        &self.labels[a]
    }

    pub fn element_by_label(&self, s: &str) -> Option<usize> {
        self.labels.iter().position(|l| l == s)
    }

    pub fn check_index(&self, a: usize) -> Result<usize, RepError> {
        if a < self.n {
            Ok(a)
        } else {
            Err(RepError::BadElement { index: a, order: self.n })
        }
    }

    /// Subgroup generated by `gens`, as a sorted element list.
    pub fn generate(&self, gens: &[usize]) -> Vec<usize> {
        let mut set = BTreeSet::new();
        set.insert(self.identity);
        let mut frontier = vec![self.identity];
        while let Some(x) = frontier.pop() {
            for &g in gens {
                let y = self.mul(x, g);
                if set.insert(y) {
                    frontier.push(y);
                }
            }
        }
        set.into_iter().collect()
    }

    pub fn is_subgroup(&self, elems: &[usize]) -> bool {
        let set: BTreeSet<usize> = elems.iter().copied().collect();
        set.contains(&self.identity)
            && elems
                .iter()
                .all(|&a| elems.iter().all(|&b| set.contains(&self.mul(a, b))))
    }

    /// Whether `sub` is normalised by every element of `sup`.
    pub fn normalizes(&self, sup: &[usize], sub: &[usize]) -> bool {
        let set: BTreeSet<usize> = sub.iter().copied().collect();
        sup.iter()
            .all(|&h| sub.iter().all(|&a| set.contains(&self.conj(h, a))))
    }

    /// All subgroups, each as a sorted element list.
    pub fn subgroups(&self) -> Vec<Vec<usize>> {
        let mut found: BTreeSet<Vec<usize>> = BTreeSet::new();
        found.insert(vec![self.identity]);
        let mut frontier = vec![vec![self.identity]];
        while let Some(h) = frontier.pop() {
            for g in 0..self.n {
                if h.binary_search(&g).is_ok() {
                    continue;
                }
                let mut gens = h.clone();
                gens.push(g);
                let s = self.generate(&gens);
                if found.insert(s.clone()) {
                    frontier.push(s);
                }
            }
        }
        found.into_iter().collect()
    }

    /// The subgroup on `elems` as a group in its own right, with the
    /// embedding of its indices back into `self`.
    pub fn subgroup_group(&self, elems: &[usize]) -> Result<(FiniteGroup, Vec<usize>), RepError> {
        let mut emb: Vec<usize> = elems.to_vec();
        emb.sort_unstable();
        emb.dedup();
        if !self.is_subgroup(&emb) {
            return Err(RepError::NotSubgroup);
        }
        let pos = |x: usize| emb.binary_search(&x).expect("closed");
        let table: Vec<Vec<usize>> = emb
            .iter()
            .map(|&a| emb.iter().map(|&b| pos(self.mul(a, b))).collect())
            .collect();
        let labels = emb.iter().map(|&a| self.labels[a].clone()).collect();
        let name = format!("{}<{}>", self.name, emb.len());
        let sub = FiniteGroup::from_table(name, Family::Generic, table, labels)?;
        Ok((sub, emb))
    }
}
