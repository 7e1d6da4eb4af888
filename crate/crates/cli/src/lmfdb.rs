//! Curve lookup by label: bundled fixtures, then the on-disk cache, then the
//! LMFDB API (write-through into the cache).

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use serde_json::Value;
use thiserror::Error;
use twistparity::curve::{bundled_curve, CurveRecord, JsonInt, WeierstrassCurve};

pub const CACHE_ENV: &str = "TWISTPARITY_CACHE_DIR";
/// Overrides the API root, for tests against a local server.
pub const URL_ENV: &str = "TWISTPARITY_LMFDB_URL";
const DEFAULT_URL: &str = "https://www.lmfdb.org/api/ec_curvedata/";

#[derive(Debug, Error)]
pub enum FetchError {
    #[error("{0:?} is not an LMFDB elliptic curve label (expected e.g. 11.a2)")]
    BadLabel(String),
    #[error("{0} is not cached and --offline forbids network access")]
    CacheMiss(String),
    #[error("network error fetching {label}: {detail}")]
    Network { label: String, detail: String },
    #[error("LMFDB has no curve labelled {0}")]
    UnknownLabel(String),
    #[error("malformed LMFDB response for {label}: {detail}")]
    Malformed { label: String, detail: String },
    #[error("cache {path}: {detail}")]
    Cache { path: PathBuf, detail: String },
}

pub fn valid_label(label: &str) -> bool {
    let Some((n, iso)) = label.split_once('.') else { return false };
    let letters = iso.trim_end_matches(|c: char| c.is_ascii_digit());
    let num = &iso[letters.len()..];
    !n.is_empty()
        && n.bytes().all(|b| b.is_ascii_digit())
        && !letters.is_empty()
        && letters.bytes().all(|b| b.is_ascii_lowercase())
        && !num.is_empty()
}

pub fn default_cache_dir() -> PathBuf {
    if let Some(d) = std::env::var_os(CACHE_ENV) {
        return PathBuf::from(d);
    }
    if let Some(d) = std::env::var_os("XDG_CACHE_HOME") {
        return PathBuf::from(d).join("twistparity");
    }
    match std::env::var_os("HOME") {
        Some(h) => PathBuf::from(h).join(".cache").join("twistparity"),
        None => std::env::temp_dir().join("twistparity-cache"),
    }
}

pub struct Fetcher {
    pub cache_dir: PathBuf,
    pub offline: bool,
}

impl Fetcher {
    fn cache_path(&self, label: &str) -> PathBuf {
        self.cache_dir.join(format!("{label}.json"))
    }

    pub fn lookup(&self, label: &str) -> Result<WeierstrassCurve, Box<dyn std::error::Error>> {
        if let Some(c) = bundled_curve(label) {
            return Ok(c);
        }
        Ok(self.fetch(label)?.to_curve()?)
    }

    /// Cache first; network only when allowed.
    pub fn fetch(&self, label: &str) -> Result<CurveRecord, FetchError> {
        if !valid_label(label) {
            return Err(FetchError::BadLabel(label.into()));
        }
        let path = self.cache_path(label);
        if path.exists() {
            let cache_err = |detail: String| FetchError::Cache { path: path.clone(), detail };
            let text = fs::read_to_string(&path).map_err(|e| cache_err(e.to_string()))?;
            return CurveRecord::from_json(&text).map_err(|e| cache_err(e.to_string()));
        }
        if self.offline {
            return Err(FetchError::CacheMiss(label.into()));
        }
        let rec = download(label)?;
        write_atomic(&self.cache_dir, &path, &rec)?;
        Ok(rec)
    }
}

fn download(label: &str) -> Result<CurveRecord, FetchError> {
    let root = std::env::var(URL_ENV).unwrap_or_else(|_| DEFAULT_URL.into());
    let resp = ureq::get(&root)
        .query("label", label)
        .query("_format", "json")
        .call()
        .map_err(|e| FetchError::Network { label: label.into(), detail: e.to_string() })?;
    let body = resp
        .into_string()
        .map_err(|e| FetchError::Network { label: label.into(), detail: e.to_string() })?;
    parse_response(label, &body)
}

pub fn parse_response(label: &str, body: &str) -> Result<CurveRecord, FetchError> {
    let bad = |detail: &str| FetchError::Malformed { label: label.into(), detail: detail.into() };
    let v: Value = serde_json::from_str(body).map_err(|e| bad(&e.to_string()))?;
    let rows = v.get("data").and_then(Value::as_array).ok_or_else(|| bad("no data array"))?;
    let row = rows.first().ok_or_else(|| FetchError::UnknownLabel(label.into()))?;
    let ainvs = match row.get("ainvs") {
        Some(Value::Array(xs)) => xs.clone(),
        // some endpoints serialise the list as a string
        Some(Value::String(s)) => serde_json::from_str::<Vec<Value>>(s).map_err(|e| bad(&e.to_string()))?,
        _ => return Err(bad("no ainvs")),
    };
    let ainvs = ainvs
        .iter()
        .map(|x| match x {
            Value::Number(n) => n.as_i64().map(JsonInt::Int).ok_or_else(|| bad("non-integral a-invariant")),
            Value::String(s) => Ok(JsonInt::Str(s.clone())),
            _ => Err(bad("non-integral a-invariant")),
        })
        .collect::<Result<Vec<_>, _>>()?;
    let rec = CurveRecord { label: Some(label.into()), ainvs };
    rec.to_curve().map_err(|e| bad(&e.to_string()))?;
    Ok(rec)
}

fn write_atomic(dir: &Path, path: &Path, rec: &CurveRecord) -> Result<(), FetchError> {
    let err = |detail: String| FetchError::Cache { path: path.to_path_buf(), detail };
    fs::create_dir_all(dir).map_err(|e| err(e.to_string()))?;
    let mut tmp = tempfile::NamedTempFile::new_in(dir).map_err(|e| err(e.to_string()))?;
    let text = serde_json::to_string_pretty(rec).expect("record serialises");
    tmp.write_all(text.as_bytes()).map_err(|e| err(e.to_string()))?;
    tmp.persist(path).map_err(|e| err(e.to_string()))?;
    Ok(())
}
