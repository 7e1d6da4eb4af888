use std::sync::Arc;

use super::{GaloisError, LocalCharSpec, LocalGaloisDatum};
use crate::numtheory::{hilbert_classes, SquareClass};
use crate::reptheory::{character_table, Character, FiniteGroup};

/// The twisting representation: a self-dual character of Delta.
#[derive(Clone, Debug)]
pub struct SigmaSpec {
    sigma: Character,
    det: Character,
}

impl SigmaSpec {
    /// Irreducible and orthogonal (Frobenius-Schur indicator +1).
    pub fn new(sigma: Character) -> Result<Self, GaloisError> {
        if !sigma.is_irreducible() {
            return Err(GaloisError::Sigma(format!("{} is reducible", sigma.name())));
        }
        match sigma.frobenius_schur()? {
            1 => Self::self_dual(sigma),
            0 => Err(GaloisError::Sigma(format!("{} is not self-dual", sigma.name()))),
            _ => Err(GaloisError::Sigma(format!("{} is symplectic", sigma.name()))),
        }
    }

    /// Any real-valued character; used for additivity checks.
    pub fn self_dual(sigma: Character) -> Result<Self, GaloisError> {
        if !sigma.is_real() {
            return Err(GaloisError::Sigma(format!("{} is not self-dual", sigma.name())));
        }
        let det = sigma.det()?;
        Ok(SigmaSpec { sigma, det })
    }

    pub fn by_name(group: &Arc<FiniteGroup>, name: &str) -> Result<Self, GaloisError> {
        let table = character_table(group)?;
        Self::new(table.get(name)?.clone())
    }

    pub fn character(&self) -> &Character {
        &self.sigma
    }

    pub fn det(&self) -> &Character {
        &self.det
    }

    pub fn dim(&self) -> i64 {
        self.sigma.dim()
    }

    pub fn name(&self) -> &str {
        self.sigma.name()
    }
}

/// Which local group multiplicities are taken over.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Side {
    /// D = Gal(K_w/F_v).
    Decomposition,
    /// D_cyc, the image of G_{F_cyc,v}.
    Cyclotomic,
}

#[derive(Clone, Debug)]
struct View {
    group: Arc<FiniteGroup>,
    // positions in datum.d() of the subgroup's elements
    pos: Vec<usize>,
    sigma: Character,
}

impl View {
    fn new(datum: &LocalGaloisDatum, elems: &[usize], sigma: &Character) -> Result<Self, GaloisError> {
        let (h, emb) = datum.group().subgroup_group(elems)?;
        let h = Arc::new(h);
        let pos = emb
            .iter()
            .map(|a| datum.d().binary_search(a).expect("subgroup of D"))
            .collect();
        let sigma = sigma.restrict(&h, &emb);
        Ok(View { group: h, pos, sigma })
    }
}

/// sigma restricted to D and D_cyc at one datum, for a fixed p.
#[derive(Clone, Debug)]
pub struct LocalContext<'a> {
    datum: &'a LocalGaloisDatum,
    sigma: &'a SigmaSpec,
    p: u64,
    full: View,
    cyc: View,
}

impl<'a> LocalContext<'a> {
    pub fn new(datum: &'a LocalGaloisDatum, sigma: &'a SigmaSpec, p: u64) -> Result<Self, GaloisError> {
        if **sigma.character().group() != **datum.group() {
            return Err(GaloisError::Sigma(format!(
                "sigma lives on {}, the datum at {} on {}",
                sigma.character().group().name(),
                datum.ell(),
                datum.group().name()
            )));
        }
        let full = View::new(datum, datum.d(), sigma.character())?;
        let dc = datum.d_cyc(p);
        let cyc = if dc.len() == datum.d().len() {
            full.clone()
        } else {
            View::new(datum, &dc, sigma.character())?
        };
        Ok(LocalContext { datum, sigma, p, full, cyc })
    }

    pub fn datum(&self) -> &LocalGaloisDatum {
        self.datum
    }

    pub fn sigma(&self) -> &SigmaSpec {
        self.sigma
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    /// <sigma_v, chi> over D or D_cyc; 0 when chi does not factor.
    pub fn multiplicity(&self, chi: &LocalCharSpec, side: Side) -> Result<i64, GaloisError> {
        let view = match side {
            Side::Decomposition => &self.full,
            Side::Cyclotomic => &self.cyc,
        };
        let values = match chi.eval_on_d(self.datum)? {
            Some(v) => v,
            None => return Ok(0),
        };
        let c = Character::from_fn(&view.group, &chi.name, &|k| values[view.pos[k]].clone())?;
        Ok(view.sigma.multiplicity(&c)?)
    }

    /// sigma is ramified at v: I acts non-trivially.
    pub fn sigma_ramified(&self) -> bool {
        let d = self.sigma.dim();
        self.datum
            .i()
            .iter()
            .any(|&a| self.sigma.character().value(a).as_integer() != Some(d))
    }

    fn det_on_inertia_trivial(&self) -> bool {
        self.datum
            .i()
            .iter()
            .all(|&a| self.sigma.det().value(a).as_integer() == Some(1))
    }

    /// det sigma_v(Frob) when det sigma_v is unramified.
    pub fn det_sigma_frob(&self) -> Option<i64> {
        if !self.det_on_inertia_trivial() {
            return None;
        }
        self.sigma.det().value(self.datum.frob()).as_integer()
    }

    /// det sigma_v(-1), read through local class field theory.
    pub fn det_sigma_minus_one(&self) -> Result<i8, GaloisError> {
        if self.det_on_inertia_trivial() {
            return Ok(1);
        }
        let det = self.sigma.det();
        let ell = self.datum.ell();
        let mut kernel = Vec::new();
        for &a in self.datum.d() {
            match det.value(a).as_integer() {
                Some(1) => kernel.push(a),
                Some(-1) => {}
                _ => return Err(GaloisError::Sigma("det sigma is not quadratic on D".into())),
            }
        }
        let q = self.datum.q();
        let minus_one = if ell == 2 {
            SquareClass::Dyadic { rep: -1 }
        } else {
            SquareClass::Odd { ell, q, val_parity: 0, unit_square: q % 4 == 1 }
        };
        if let Some(a) = self.datum.quad_annotations().iter().find(|a| a.kernel == kernel) {
            return Ok(hilbert_classes(&a.class, &minus_one)?);
        }
        if ell == 2 {
            return Err(GaloisError::Unannotated {
                ell,
                detail: "det sigma is a ramified quadratic character with no square class".into(),
            });
        }
        // a ramified quadratic character of odd residue characteristic is tame
        Ok(if (q - 1) / 2 % 2 == 0 { 1 } else { -1 })
    }
}
