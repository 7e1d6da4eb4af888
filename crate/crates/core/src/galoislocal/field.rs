use std::sync::Arc;

use num_bigint::BigInt;
use serde::Deserialize;

use super::{s3_kummer_local_datum, GaloisError, LocalDatumRecord, LocalGaloisDatum};
use crate::curve::CurveOverride;
use crate::numtheory::{prime_divisors, split_off};
use crate::reptheory::{builtin_group, dihedral, FiniteGroup};

/// Bundled field descriptions: name and JSON text.
pub const BUILTIN_FIELDS: [(&str, &str); 4] = [
    ("d5-1093", include_str!("../../fixtures/field_d5_1093.json")),
    ("s3-257", include_str!("../../fixtures/field_s3_257.json")),
    ("zeta19-m2", include_str!("../../fixtures/field_zeta19_m2.json")),
    ("zeta19-m7", include_str!("../../fixtures/field_zeta19_m7.json")),
];

/// Per-curve overrides attached to a local record.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct RecordOverrides {
    pub e1: Option<CurveOverride>,
    pub e2: Option<CurveOverride>,
}

impl RecordOverrides {
    fn parse(v: &serde_json::Value) -> Result<Self, GaloisError> {
        let bad = |e: serde_json::Error| GaloisError::Field(format!("overrides: {e}"));
        let obj = v
            .as_object()
            .ok_or_else(|| GaloisError::Field("overrides must be an object".into()))?;
        if !obj.is_empty() && obj.keys().all(|k| k == "e1" || k == "e2") {
            let get = |k: &str| -> Result<Option<CurveOverride>, GaloisError> {
                obj.get(k).map(|x| CurveOverride::deserialize(x).map_err(bad)).transpose()
            };
            Ok(RecordOverrides { e1: get("e1")?, e2: get("e2")? })
        } else {
            let o = CurveOverride::deserialize(v).map_err(bad)?;
            Ok(RecordOverrides { e1: Some(o.clone()), e2: Some(o) })
        }
    }

    pub fn for_curve(&self, which: usize) -> Option<&CurveOverride> {
        match which {
            1 => self.e1.as_ref(),
            _ => self.e2.as_ref(),
        }
    }
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct FieldSpecRecord {
    name: String,
    #[serde(default)]
    provenance: Option<String>,
    group: String,
    #[serde(default = "default_base")]
    base: String,
    #[serde(default = "one")]
    archimedean_places: u32,
    #[serde(default)]
    ramified_primes: Vec<u64>,
    #[serde(default)]
    sigma: Option<String>,
    records: Vec<LocalDatumRecord>,
}

fn default_base() -> String {
    "Q".into()
}

fn one() -> u32 {
    1
}

/// K/F with Delta = Gal(K/F): local data at the relevant primes of F.
#[derive(Clone, Debug)]
pub struct FieldSpec {
    pub name: String,
    pub provenance: Option<String>,
    pub base: String,
    pub archimedean_places: u32,
    pub ramified_primes: Vec<u64>,
    pub default_sigma: Option<String>,
    group: Arc<FiniteGroup>,
    records: Vec<(LocalGaloisDatum, RecordOverrides)>,
    // K = Q(mu_3, m^(1/3)) over Q, data computed on demand
    kummer: Option<i64>,
}

impl FieldSpec {
    pub fn from_json(text: &str) -> Result<Self, GaloisError> {
        let rec: FieldSpecRecord =
            serde_json::from_str(text).map_err(|e| GaloisError::Field(e.to_string()))?;
        let group = builtin_group(&rec.group)?;
        let mut records = Vec::new();
        for r in &rec.records {
            if records.iter().any(|(d, _): &(LocalGaloisDatum, _)| d.ell() == r.p) {
                return Err(GaloisError::Field(format!("two records at {}", r.p)));
            }
            let d = LocalGaloisDatum::from_record(r, Some(&group))?;
            let o = match &r.overrides {
                Some(v) => RecordOverrides::parse(v)?,
                None => RecordOverrides::default(),
            };
            records.push((d, o));
        }
        Ok(FieldSpec {
            name: rec.name,
            provenance: rec.provenance,
            base: rec.base,
            archimedean_places: rec.archimedean_places,
            ramified_primes: rec.ramified_primes,
            default_sigma: rec.sigma,
            group,
            records,
            kummer: None,
        })
    }

    pub fn builtin(name: &str) -> Result<Self, GaloisError> {
        let (_, text) = BUILTIN_FIELDS
            .iter()
            .find(|(n, _)| *n == name)
            .ok_or_else(|| GaloisError::Field(format!("no built-in field {name:?}")))?;
        Self::from_json(text)
    }

    /// K = Q(mu_3, m^(1/3)) over F = Q.
    pub fn s3_kummer(m: i64) -> Result<Self, GaloisError> {
        s3_kummer_local_datum(m, 2, 1)?;
        let mut ram = vec![3u64];
        for l in prime_divisors(&BigInt::from(m)) {
            let (v, _) = split_off(&BigInt::from(m), l);
            if l != 3 && v % 3 != 0 {
                ram.push(l);
            }
        }
        ram.sort_unstable();
        Ok(FieldSpec {
            name: format!("Q(mu_3, {m}^(1/3))"),
            provenance: Some("local data computed from the Kummer generator".into()),
            base: "Q".into(),
            archimedean_places: 1,
            ramified_primes: ram,
            default_sigma: Some("2dim".into()),
            group: dihedral(3),
            records: Vec::new(),
            kummer: Some(m),
        })
    }

    /// Accepts `builtin:<name>`, `kummer:<m>`, `custom:<path>` or a bare path.
    pub fn load(arg: &str) -> Result<Self, GaloisError> {
        if let Some(name) = arg.strip_prefix("builtin:") {
            return Self::builtin(name);
        }
        if let Some(m) = arg.strip_prefix("kummer:") {
            let m: i64 = m
                .trim()
                .parse()
                .map_err(|_| GaloisError::Field(format!("bad Kummer generator {m:?}")))?;
            return Self::s3_kummer(m);
        }
        let path = arg.strip_prefix("custom:").unwrap_or(arg);
        let text = std::fs::read_to_string(path)
            .map_err(|e| GaloisError::Field(format!("cannot read {path}: {e}")))?;
        Self::from_json(&text)
    }

    pub fn group(&self) -> &Arc<FiniteGroup> {
        &self.group
    }

    /// Rational primes with an explicit record.
    pub fn record_primes(&self) -> Vec<u64> {
        self.records.iter().map(|(d, _)| d.ell()).collect()
    }

    pub fn is_ramified(&self, ell: u64) -> bool {
        self.ramified_primes.contains(&ell)
    }

    /// The datum at the primes above l, if known.
    pub fn datum_at(&self, ell: u64) -> Result<Option<(LocalGaloisDatum, RecordOverrides)>, GaloisError> {
        if let Some((d, o)) = self.records.iter().find(|(d, _)| d.ell() == ell) {
            return Ok(Some((d.clone(), o.clone())));
        }
        match self.kummer {
            Some(m) => Ok(Some((s3_kummer_local_datum(m, ell, 1)?, RecordOverrides::default()))),
            None => Ok(None),
        }
    }

    /// Add or replace the record at a prime.
    pub fn with_record(mut self, datum: LocalGaloisDatum, overrides: RecordOverrides) -> Self {
        self.records.retain(|(d, _)| d.ell() != datum.ell());
        self.records.push((datum, overrides));
        self
    }
}
