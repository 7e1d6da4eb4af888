//! Parity of the twisted Selmer corank difference against the ratio of
//! twisted root numbers, one prime at a time and globally.

mod local;
mod report;
mod sweep;
mod table;

use thiserror::Error;

use crate::congruence::CongruenceError;
use crate::curve::CurveError;
use crate::galoislocal::GaloisError;
use crate::numtheory::NumError;

pub use local::{
    absolute_w, direct_delta, evaluate_prime, Bookkeeping, BranchFlags, Membership, Mults, PrimeEval, TermValue,
};
pub use report::{
    global_report, AggregateSets, Assumption, AssumptionStatus, Check, CurveSummary, FieldSummary, PrimeEntry,
    ParityReport, ReportOptions, Sigma0Entry, REPORT_VERSION,
};
pub use sweep::{localized_sweep, SweepConfig, SweepReport};
pub use table::{classify_pair, correction_terms, CurveAtV, PairRow, Row};

#[derive(Debug, Error)]
pub enum ParityError {
    #[error("impossible reduction pair at {ell}: {detail}")]
    ImpossiblePair { ell: u64, detail: String },
    #[error("no local Galois data at {0}")]
    MissingData(u64),
    #[error("hypothesis {name} fails: {detail}")]
    Hypothesis { name: &'static str, detail: String },
    #[error("E1[{p}] and E2[{p}] are not isomorphic: a_{ell} = {a1} vs {a2}")]
    NotCongruent { p: u64, ell: u64, a1: i64, a2: i64 },
    #[error("p = {0} must be an odd prime")]
    BadPrime(u64),
    #[error("{0}")]
    Mismatch(String),
    #[error(transparent)]
    Galois(#[from] GaloisError),
    #[error(transparent)]
    Curve(#[from] CurveError),
    #[error(transparent)]
    Congruence(#[from] CongruenceError),
    #[error(transparent)]
    Num(#[from] NumError),
}
