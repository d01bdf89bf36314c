//! The JSON document every command can emit.
//!
//! Field order is fixed by the struct definitions and polynomials serialize
//! with numerically sorted exponents, so decoding an emitted document and
//! encoding it again reproduces the same bytes.

use runslab_core::RunPolynomial;
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize};

pub const SCHEMA_VERSION: &str = "1";

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Ok,
    Failed,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct OutputDocument {
    pub schema_version: String,
    pub command: String,
    pub payload: Payload,
    pub status: Status,
}

impl OutputDocument {
    pub fn new(command: &str, payload: Payload, status: Status) -> Self {
        OutputDocument {
            schema_version: SCHEMA_VERSION.to_owned(),
            command: command.to_owned(),
            payload,
            status,
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("document always serializes")
    }

    pub fn from_json(text: &str) -> Result<Self, serde_json::Error> {
        serde_json::from_str(text)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(untagged)]
pub enum Payload {
    Dist(DistPayload),
    Quotient(QuotientPayload),
    Orbit(OrbitPayload),
    Canon(CanonPayload),
    Verify(VerifyPayload),
    Error(ErrorPayload),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DistPayload {
    pub n: usize,
    pub m: usize,
    pub method: String,
    pub polynomial: RunPolynomial,
    pub quotient: Option<RunPolynomial>,
    pub multiplicity_at_minus_one: u32,
    pub workers: usize,
    pub elapsed_us: u64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct QuotientPayload {
    pub n: usize,
    pub m: usize,
    pub quotient: RunPolynomial,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MemberRow {
    pub mask: u32,
    pub applied: Vec<usize>,
    pub permutation: String,
    pub runs: u32,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct OrbitPayload {
    pub permutation: String,
    pub n: usize,
    pub m: usize,
    pub generators: Vec<usize>,
    pub members: Vec<MemberRow>,
    pub minimal: MemberRow,
    pub a: u32,
    pub polynomial: RunPolynomial,
    pub factored: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CanonPayload {
    pub input: String,
    pub input_runs: u32,
    pub canonical: String,
    pub runs: u32,
    pub mask: u32,
    pub applied: Vec<usize>,
    pub is_minimal: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CounterexampleRow {
    pub permutation: Option<String>,
    pub detail: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ReportRow {
    pub property: String,
    pub n_min: usize,
    pub n_max: usize,
    pub passed: bool,
    pub checked: u64,
    pub counterexample: Option<CounterexampleRow>,
    pub notes: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct VerifyPayload {
    pub n_min: usize,
    pub n_max: usize,
    pub reports: Vec<ReportRow>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ErrorPayload {
    pub error: String,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawDocument {
    schema_version: String,
    command: String,
    payload: serde_json::Value,
    status: Status,
}

impl<'de> Deserialize<'de> for OutputDocument {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let raw = RawDocument::deserialize(deserializer)?;
        if raw.schema_version != SCHEMA_VERSION {
            return Err(D::Error::custom(format!(
                "unsupported schema_version {:?}",
                raw.schema_version
            )));
        }
        let is_error = raw.status == Status::Failed
            && raw
                .payload
                .as_object()
                .is_some_and(|o| o.len() == 1 && o.contains_key("error"));
        let value = raw.payload;
        let payload = if is_error {
            serde_json::from_value(value).map(Payload::Error)
        } else {
            match raw.command.as_str() {
                "dist" => serde_json::from_value(value).map(Payload::Dist),
                "quotient" => serde_json::from_value(value).map(Payload::Quotient),
                "orbit" => serde_json::from_value(value).map(Payload::Orbit),
                "canon" => serde_json::from_value(value).map(Payload::Canon),
                "verify" => serde_json::from_value(value).map(Payload::Verify),
                other => return Err(D::Error::custom(format!("unknown command {other:?}"))),
            }
        }
        .map_err(D::Error::custom)?;
        Ok(OutputDocument {
            schema_version: raw.schema_version,
            command: raw.command,
            payload,
            status: raw.status,
        })
    }
}
