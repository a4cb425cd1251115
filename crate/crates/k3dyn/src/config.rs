//! JSON ingestion for curve configurations, fibration descriptors, and
//! polynomials. Every file format carries `"format_version": 1` and rejects
//! unknown keys; the slice-level parsers are the untrusted entry points.

use std::collections::BTreeMap;
use std::path::Path;

use num_bigint::BigInt;
use serde::Deserialize;

use crate::curveconf::{CurveConfig, Divisor};
use crate::exactla::Poly;

pub const FORMAT_VERSION: u64 = 1;

#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("read {path}: {source}")]
    Io {
        path: String,
        source: std::io::Error,
    },
    #[error("parse: {0}")]
    Parse(#[from] serde_json::Error),
    #[error("unsupported format_version {0}, expected {FORMAT_VERSION}")]
    FormatVersion(u64),
    #[error("{0}")]
    Config(#[from] crate::curveconf::Error),
    #[error("validation: {0}")]
    Validation(String),
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct ConfigFile {
    format_version: u64,
    name: String,
    curves: Vec<String>,
    /// Self-intersection applied to every curve.
    #[serde(rename = "self", default = "default_self")]
    self_int: i64,
    #[serde(default)]
    edges: Vec<Edge>,
    #[serde(default)]
    coincidences: Vec<(String, String, String)>,
}

fn default_self() -> i64 {
    -2
}

#[derive(Debug, Deserialize)]
#[serde(untagged)]
enum Edge {
    Pair(String, String),
    Weighted(String, String, u32),
}

fn check_version(v: u64) -> Result<(), Error> {
    if v == FORMAT_VERSION {
        Ok(())
    } else {
        Err(Error::FormatVersion(v))
    }
}

/// Parses a curve configuration from raw JSON bytes.
pub fn config_from_slice(data: &[u8]) -> Result<CurveConfig, Error> {
    let file: ConfigFile = serde_json::from_slice(data)?;
    check_version(file.format_version)?;
    let curves: Vec<(&str, i64)> = file
        .curves
        .iter()
        .map(|name| (name.as_str(), file.self_int))
        .collect();
    let edges: Vec<(&str, &str, u32)> = file
        .edges
        .iter()
        .map(|e| match e {
            Edge::Pair(a, b) => (a.as_str(), b.as_str(), 1),
            Edge::Weighted(a, b, w) => (a.as_str(), b.as_str(), *w),
        })
        .collect();
    let coincidences: Vec<(&str, &str, &str)> = file
        .coincidences
        .iter()
        .map(|(a, b, c)| (a.as_str(), b.as_str(), c.as_str()))
        .collect();
    Ok(CurveConfig::build(
        &file.name,
        &curves,
        &edges,
        &coincidences,
    )?)
}

pub fn load_config(path: &Path) -> Result<CurveConfig, Error> {
    let data = std::fs::read(path).map_err(|source| Error::Io {
        path: path.display().to_string(),
        source,
    })?;
    config_from_slice(&data)
}

/// One fibration: a fiber divisor plus the sections a translation needs.
#[derive(Debug, Clone)]
pub struct FibrationSpec {
    pub divisor: Divisor,
    pub zero_section: Option<String>,
    pub section: Option<String>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct DivisorFile {
    format_version: u64,
    fiber: BTreeMap<String, i64>,
    #[serde(default)]
    zero_section: Option<String>,
    #[serde(default)]
    section: Option<String>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct DivisorBody {
    fiber: BTreeMap<String, i64>,
    #[serde(default)]
    zero_section: Option<String>,
    #[serde(default)]
    section: Option<String>,
}

impl DivisorBody {
    fn into_spec(self) -> Result<FibrationSpec, Error> {
        if self.fiber.is_empty() {
            return Err(Error::Validation("fiber must name at least one curve".into()));
        }
        for (name, mult) in &self.fiber {
            if *mult < 1 {
                return Err(Error::Validation(format!(
                    "multiplicity of {name} must be positive, got {mult}"
                )));
            }
        }
        let map: BTreeMap<String, BigInt> = self
            .fiber
            .into_iter()
            .map(|(name, mult)| (name, BigInt::from(mult)))
            .collect();
        Ok(FibrationSpec {
            divisor: Divisor::from_map(map),
            zero_section: self.zero_section,
            section: self.section,
        })
    }
}

/// Parses a single fibration descriptor from raw JSON bytes.
pub fn divisor_from_slice(data: &[u8]) -> Result<FibrationSpec, Error> {
    let file: DivisorFile = serde_json::from_slice(data)?;
    check_version(file.format_version)?;
    DivisorBody {
        fiber: file.fiber,
        zero_section: file.zero_section,
        section: file.section,
    }
    .into_spec()
}

pub fn load_divisor(path: &Path) -> Result<FibrationSpec, Error> {
    let data = std::fs::read(path).map_err(|source| Error::Io {
        path: path.display().to_string(),
        source,
    })?;
    divisor_from_slice(&data)
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct FibrationsFile {
    format_version: u64,
    fibrations: Vec<DivisorBody>,
}

/// Parses a list of fibration descriptors from raw JSON bytes.
pub fn fibrations_from_slice(data: &[u8]) -> Result<Vec<FibrationSpec>, Error> {
    let file: FibrationsFile = serde_json::from_slice(data)?;
    check_version(file.format_version)?;
    if file.fibrations.is_empty() {
        return Err(Error::Validation("fibrations must not be empty".into()));
    }
    file.fibrations
        .into_iter()
        .map(DivisorBody::into_spec)
        .collect()
}

pub fn load_fibrations(path: &Path) -> Result<Vec<FibrationSpec>, Error> {
    let data = std::fs::read(path).map_err(|source| Error::Io {
        path: path.display().to_string(),
        source,
    })?;
    fibrations_from_slice(&data)
}

/// Integer coefficient list, constant term first; either a bare array or an
/// object `{"format_version": 1, "coeffs": [...]}`.
#[derive(Debug, Deserialize)]
#[serde(untagged)]
enum PolyFile {
    Bare(Vec<i64>),
    Versioned(VersionedPoly),
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct VersionedPoly {
    format_version: u64,
    coeffs: Vec<i64>,
}

/// Parses a polynomial from raw JSON bytes.
pub fn poly_from_slice(data: &[u8]) -> Result<Poly, Error> {
    let file: PolyFile = serde_json::from_slice(data)?;
    let coeffs = match file {
        PolyFile::Bare(coeffs) => coeffs,
        PolyFile::Versioned(v) => {
            check_version(v.format_version)?;
            v.coeffs
        }
    };
    if coeffs.is_empty() {
        return Err(Error::Validation("polynomial must have coefficients".into()));
    }
    Ok(Poly::from_i64(&coeffs))
}

pub fn load_poly(path: &Path) -> Result<Poly, Error> {
    let data = std::fs::read(path).map_err(|source| Error::Io {
        path: path.display().to_string(),
        source,
    })?;
    poly_from_slice(&data)
}
