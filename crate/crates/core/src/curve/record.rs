use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use super::{CurveError, WeierstrassCurve};

const BUNDLED: &str = include_str!("../../fixtures/curves.json");

/// An a-invariant as it appears in JSON: a number or a decimal string.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum JsonInt {
    Int(i64),
    Str(String),
}

impl JsonInt {
    fn to_bigint(&self) -> Result<BigInt, CurveError> {
        match self {
            JsonInt::Int(n) => Ok(BigInt::from(*n)),
            JsonInt::Str(s) => s
                .trim()
                .parse()
                .map_err(|_| CurveError::Unsupported(format!("{s:?} is not a decimal integer"))),
        }
    }
}

/// `{"label": "11.a2", "ainvs": [a1, a2, a3, a4, a6]}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CurveRecord {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub label: Option<String>,
    pub ainvs: Vec<JsonInt>,
}

impl CurveRecord {
    pub fn from_json(text: &str) -> Result<Self, CurveError> {
        serde_json::from_str(text).map_err(|e| CurveError::Unsupported(format!("curve record: {e}")))
    }

    pub fn of(curve: &WeierstrassCurve) -> Self {
        CurveRecord {
            label: curve.label.clone(),
            ainvs: curve.a.iter().map(|x| JsonInt::Str(x.to_string())).collect(),
        }
    }

    pub fn to_curve(&self) -> Result<WeierstrassCurve, CurveError> {
        if self.ainvs.len() != 5 {
            return Err(CurveError::Unsupported(format!(
                "expected 5 a-invariants [a1, a2, a3, a4, a6], got {}",
                self.ainvs.len()
            )));
        }
        let mut a: [BigInt; 5] = Default::default();
        for (k, x) in self.ainvs.iter().enumerate() {
            a[k] = x.to_bigint()?;
        }
        WeierstrassCurve::new(a, self.label.clone())
    }
}

/// Parse `[a1,a2,a3,a4,a6]` (or the same without brackets).
pub fn parse_ainvs(s: &str) -> Result<WeierstrassCurve, CurveError> {
    let inner = s.trim().trim_start_matches('[').trim_end_matches(']');
    let ainvs = inner
        .split(',')
        .map(|t| JsonInt::Str(t.trim().to_string()))
        .collect();
    CurveRecord { label: None, ainvs }.to_curve()
}

#[derive(Deserialize)]
struct Bundle {
    #[allow(dead_code)]
    provenance: String,
    curves: Vec<CurveRecord>,
}

/// The example curves shipped with the crate.
pub fn bundled_curves() -> Vec<WeierstrassCurve> {
    let b: Bundle = serde_json::from_str(BUNDLED).expect("bundled curves parse");
    b.curves.iter().map(|r| r.to_curve().expect("bundled curve is valid")).collect()
}

pub fn bundled_curve(label: &str) -> Option<WeierstrassCurve> {
    bundled_curves().into_iter().find(|c| c.label.as_deref() == Some(label))
}
