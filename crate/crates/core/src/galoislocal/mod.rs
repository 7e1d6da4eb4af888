//! Local Galois data at a prime v of F: the decomposition and inertia
//! subgroups of Delta = Gal(K/F), a Frobenius, and the annotations needed to
//! recognise ramified quadratic and S3-type characters of D.

mod datum;
mod engine;
mod field;
mod kummer;
mod localchar;

use thiserror::Error;

use crate::curve::CurveError;
use crate::numtheory::NumError;
use crate::reptheory::RepError;

pub use datum::{CubicAnnotation, DatumInput, LocalDatumRecord, LocalGaloisDatum, QuadAnnotation};
pub use engine::{LocalContext, Side, SigmaSpec};
pub use field::{FieldSpec, RecordOverrides, BUILTIN_FIELDS};
pub use kummer::s3_kummer_local_datum;
pub use localchar::LocalCharSpec;

#[derive(Debug, Error)]
pub enum GaloisError {
    #[error(transparent)]
    Rep(#[from] RepError),
    #[error(transparent)]
    Num(#[from] NumError),
    #[error(transparent)]
    Curve(#[from] CurveError),
    #[error("invalid local datum at {ell}: {detail}")]
    Invalid { ell: u64, detail: String },
    #[error("local datum at {ell} lacks an annotation: {detail}")]
    Unannotated { ell: u64, detail: String },
    #[error("sigma is not admissible: {0}")]
    Sigma(String),
    #[error("{0}")]
    Unsupported(String),
    #[error("field spec: {0}")]
    Field(String),
}
