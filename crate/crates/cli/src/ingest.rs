//! Structured-text ingestion of newform and half-integral-weight data.
//!
//! The file format is TOML with the fields `level` (integer), `weight`
//! (integer), `atkin_lehner` (map from prime strings to signs), `ap` (map
//! from prime strings to rational strings "num/den"), `c_fund` (map from
//! discriminant strings to rational strings), and `d` (integer). The maps
//! and `d` are optional when only Hecke data is needed.

use serde::Deserialize;
use sl2period::forms::{HalfIntegralData, NewformData};
use sl2period::{Error, Rational};
use std::collections::BTreeMap;

#[derive(Debug, Deserialize)]
pub struct RawNewformFile {
    pub level: u64,
    pub weight: u32,
    #[serde(default)]
    pub atkin_lehner: BTreeMap<String, i32>,
    #[serde(default)]
    pub ap: BTreeMap<String, String>,
    #[serde(default)]
    pub c_fund: BTreeMap<String, String>,
    pub d: Option<i64>,
}

pub fn parse_rational(s: &str) -> Result<Rational, Error> {
    s.trim()
        .parse::<Rational>()
        .map_err(|_| Error::Parse(format!("bad rational: {s}")))
}

fn parse_key<T: std::str::FromStr>(k: &str, what: &str) -> Result<T, Error> {
    k.trim()
        .parse::<T>()
        .map_err(|_| Error::Parse(format!("bad {what} key: {k}")))
}

/// Parse and validate a newform file.
pub fn load_newform(path: &str) -> Result<NewformData, Error> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Error::Parse(format!("cannot read {path}: {e}")))?;
    let raw: RawNewformFile = toml::from_str(&text)
        .map_err(|e| Error::Parse(format!("{path}: {e}")))?;
    build_newform(&raw)
}

pub fn build_newform(raw: &RawNewformFile) -> Result<NewformData, Error> {
    let mut al = BTreeMap::new();
    for (k, v) in &raw.atkin_lehner {
        al.insert(parse_key::<u64>(k, "atkin_lehner")?, *v);
    }
    let mut hecke = BTreeMap::new();
    for (k, v) in &raw.ap {
        hecke.insert(parse_key::<u64>(k, "ap")?, parse_rational(v)?);
    }
    NewformData::new(raw.level, raw.weight, al, hecke)
}

/// Parse and validate a file carrying half-integral-weight data.
pub fn load_half_integral(path: &str) -> Result<HalfIntegralData, Error> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Error::Parse(format!("cannot read {path}: {e}")))?;
    let raw: RawNewformFile = toml::from_str(&text)
        .map_err(|e| Error::Parse(format!("{path}: {e}")))?;
    let nf = build_newform(&raw)?;
    let d = raw
        .d
        .ok_or_else(|| Error::Validation("missing auxiliary discriminant field d".into()))?;
    let mut c = BTreeMap::new();
    for (k, v) in &raw.c_fund {
        c.insert(parse_key::<u64>(k, "c_fund")?, parse_rational(v)?);
    }
    HalfIntegralData::new(nf, c, d)
}

#[derive(Debug, Deserialize)]
pub struct RawCentralValueFile {
    pub nf_level: u64,
    pub ng_level: u64,
    pub k: u32,
    pub ell: u32,
    pub petersson_f: String,
    pub petersson_h: String,
    pub petersson_g: String,
    pub pairing_sq: String,
    #[serde(default)]
    pub atkin_lehner: BTreeMap<String, i32>,
}

pub fn load_central_value(path: &str) -> Result<sl2period::lfn::CentralValueInput, Error> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Error::Parse(format!("cannot read {path}: {e}")))?;
    let raw: RawCentralValueFile = toml::from_str(&text)
        .map_err(|e| Error::Parse(format!("{path}: {e}")))?;
    let parse_f = |s: &String, what: &str| -> Result<f64, Error> {
        s.trim()
            .parse::<f64>()
            .map_err(|_| Error::Parse(format!("bad decimal for {what}: {s}")))
    };
    let mut al = BTreeMap::new();
    for (k, v) in &raw.atkin_lehner {
        al.insert(parse_key::<u64>(k, "atkin_lehner")?, *v);
    }
    Ok(sl2period::lfn::CentralValueInput {
        nf_level: raw.nf_level,
        ng_level: raw.ng_level,
        k: raw.k,
        ell: raw.ell,
        petersson_f: parse_f(&raw.petersson_f, "petersson_f")?,
        petersson_h: parse_f(&raw.petersson_h, "petersson_h")?,
        petersson_g: parse_f(&raw.petersson_g, "petersson_g")?,
        pairing_sq: parse_f(&raw.pairing_sq, "pairing_sq")?,
        atkin_lehner: al,
    })
}
