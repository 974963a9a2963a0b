//! Row types emitted by the subcommands.
//!
//! JSON has no infinities: a non-finite float is written as `null` and a
//! companion boolean says which infinity was meant. Indices are decimal
//! strings because they overflow every common integer type on the wire.

use serde::{Deserialize, Serialize};

use super::output::{Cell, Record};
use crate::asymptotics::DeviationRow;

/// `null` for non-finite values; `null` reads back as the given default.
macro_rules! nullable_float {
    ($name:ident, $missing:expr) => {
        pub mod $name {
            use serde::{Deserialize, Deserializer, Serializer};

            pub fn serialize<S: Serializer>(v: &f64, s: S) -> Result<S::Ok, S::Error> {
                if v.is_finite() {
                    s.serialize_f64(*v)
                } else {
                    s.serialize_none()
                }
            }

            pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<f64, D::Error> {
                Ok(Option::<f64>::deserialize(d)?.unwrap_or($missing))
            }
        }
    };
}

nullable_float!(nan_as_null, f64::NAN);
nullable_float!(inf_as_null, f64::INFINITY);
nullable_float!(neg_inf_as_null, f64::NEG_INFINITY);

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GeometryRow {
    pub n: u32,
    #[serde(rename = "W", with = "nan_as_null")]
    pub w: f64,
    #[serde(rename = "H", with = "nan_as_null")]
    pub h: f64,
    /// `+inf` for `n = 2`.
    #[serde(rename = "L", with = "inf_as_null")]
    pub l: f64,
    #[serde(rename = "L_infinite")]
    pub l_infinite: bool,
    #[serde(rename = "R", with = "nan_as_null")]
    pub r: f64,
    pub error: Option<String>,
}

impl Record for GeometryRow {
    fn header() -> &'static [&'static str] {
        &["n", "W", "H", "L", "R", "error"]
    }

    fn cells(&self) -> Vec<Cell> {
        vec![
            self.n.into(),
            self.w.into(),
            self.h.into(),
            self.l.into(),
            self.r.into(),
            self.error.clone().into(),
        ]
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EigenvalueRow {
    pub n: u32,
    pub m: u32,
    pub parity: String,
    /// `-inf` for the even zero mode.
    #[serde(with = "neg_inf_as_null")]
    pub lambda: f64,
    pub lambda_neg_infinite: bool,
    pub error: Option<String>,
}

impl Record for EigenvalueRow {
    fn header() -> &'static [&'static str] {
        &["n", "m", "parity", "lambda", "error"]
    }

    fn cells(&self) -> Vec<Cell> {
        vec![
            self.n.into(),
            self.m.into(),
            self.parity.clone().into(),
            self.lambda.into(),
            self.error.clone().into(),
        ]
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct IndexRow {
    pub n: u32,
    #[serde(rename = "K0")]
    pub k0: u32,
    #[serde(rename = "K1")]
    pub k1: u32,
    #[serde(rename = "SI")]
    pub si: Option<String>,
    /// Left out above the exact limit or under `--log-only`.
    #[serde(rename = "MI")]
    pub mi: Option<String>,
    #[serde(rename = "logMI", with = "nan_as_null")]
    pub log_mi: f64,
    #[serde(with = "nan_as_null")]
    pub margin: f64,
    #[serde(with = "nan_as_null")]
    pub error_estimate: f64,
    pub certified: bool,
    pub error: Option<String>,
}

impl Record for IndexRow {
    fn header() -> &'static [&'static str] {
        &["n", "K0", "K1", "SI", "MI", "logMI", "margin", "error_estimate", "certified", "error"]
    }

    fn cells(&self) -> Vec<Cell> {
        vec![
            self.n.into(),
            self.k0.into(),
            self.k1.into(),
            self.si.clone().into(),
            self.mi.clone().into(),
            self.log_mi.into(),
            self.margin.into(),
            self.error_estimate.into(),
            self.certified.into(),
            self.error.clone().into(),
        ]
    }
}

impl Record for DeviationRow {
    fn header() -> &'static [&'static str] {
        &[
            "n",
            "m",
            "quantity",
            "computed",
            "predicted",
            "scaled_error",
            "scaling_label",
            "ratio_error",
            "spike",
            "certified",
        ]
    }

    fn cells(&self) -> Vec<Cell> {
        vec![
            self.n.into(),
            self.m.into(),
            self.quantity.clone().into(),
            self.computed.into(),
            self.predicted.into(),
            self.scaled_error.into(),
            self.scaling_label.clone().into(),
            self.ratio_error.into(),
            self.spike.into(),
            self.certified.into(),
        ]
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SphereRow {
    pub p: u32,
    pub q: u32,
    /// Index by enumerating modes.
    #[serde(rename = "MI")]
    pub mi: String,
    /// Index from the two axis rows.
    #[serde(rename = "MI_rows")]
    pub mi_rows: String,
    /// `(i, j)` of each negative mode, `;`-separated.
    pub negative_modes: String,
    #[serde(rename = "p_plus_q_plus_3")]
    pub expected: u32,
    pub matches: bool,
}

impl Record for SphereRow {
    fn header() -> &'static [&'static str] {
        &["p", "q", "MI", "MI_rows", "negative_modes", "p_plus_q_plus_3", "matches"]
    }

    fn cells(&self) -> Vec<Cell> {
        vec![
            self.p.into(),
            self.q.into(),
            self.mi.clone().into(),
            self.mi_rows.clone().into(),
            self.negative_modes.clone().into(),
            self.expected.into(),
            self.matches.into(),
        ]
    }
}

/// One line of `selftest`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CheckRow {
    pub check: String,
    pub passed: bool,
    pub detail: String,
}

impl Record for CheckRow {
    fn header() -> &'static [&'static str] {
        &["check", "passed", "detail"]
    }

    fn cells(&self) -> Vec<Cell> {
        vec![self.check.clone().into(), self.passed.into(), self.detail.clone().into()]
    }
}
