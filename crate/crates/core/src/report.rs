//! Inequality reports and the serialization helpers shared by all outputs.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

/// Serializes `f64` as a JSON number when finite and as `"inf"`, `"-inf"`
/// or `"nan"` otherwise.
pub mod finite_or_string {
    use serde::{de, Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(v: &f64, s: S) -> Result<S::Ok, S::Error> {
        if v.is_finite() {
            s.serialize_f64(*v)
        } else if v.is_nan() {
            s.serialize_str("nan")
        } else if *v > 0.0 {
            s.serialize_str("inf")
        } else {
            s.serialize_str("-inf")
        }
    }

    #[derive(Deserialize)]
    #[serde(untagged)]
    enum Repr {
        Num(f64),
        Str(String),
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<f64, D::Error> {
        match Repr::deserialize(d)? {
            Repr::Num(v) => Ok(v),
            Repr::Str(s) => match s.as_str() {
                "inf" => Ok(f64::INFINITY),
                "-inf" => Ok(f64::NEG_INFINITY),
                "nan" => Ok(f64::NAN),
                other => Err(de::Error::custom(format!("expected a number, got {other:?}"))),
            },
        }
    }
}

/// [`finite_or_string`] for `BTreeMap<String, f64>`.
pub mod finite_map {
    use std::collections::BTreeMap;

    use serde::ser::SerializeMap;
    use serde::{Deserialize, Deserializer, Serialize, Serializer};

    #[derive(Serialize, Deserialize)]
    struct W(#[serde(with = "super::finite_or_string")] f64);

    pub fn serialize<S: Serializer>(m: &BTreeMap<String, f64>, s: S) -> Result<S::Ok, S::Error> {
        let mut map = s.serialize_map(Some(m.len()))?;
        for (k, v) in m {
            map.serialize_entry(k, &W(*v))?;
        }
        map.end()
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<BTreeMap<String, f64>, D::Error> {
        let raw = BTreeMap::<String, W>::deserialize(d)?;
        Ok(raw.into_iter().map(|(k, w)| (k, w.0)).collect())
    }
}

/// Hex SHA-256 of the canonical JSON encoding of `value`.
pub fn digest<T: Serialize + ?Sized>(value: &T) -> String {
    let bytes = serde_json::to_vec(value).expect("serializable value");
    hex::encode(Sha256::digest(bytes))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    /// The right-hand side diverged or could not be computed; never a pass.
    Inconclusive,
}

/// Outcome of checking `lhs ≤ rhs`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct InequalityReport {
    pub name: String,
    #[serde(with = "finite_or_string")]
    pub lhs: f64,
    #[serde(with = "finite_or_string")]
    pub rhs: f64,
    #[serde(with = "finite_or_string")]
    pub constant_used: f64,
    #[serde(with = "finite_or_string")]
    pub slack: f64,
    #[serde(with = "finite_or_string")]
    pub relative_slack: f64,
    pub pass: bool,
    pub status: Status,
    pub inputs_digest: String,
    #[serde(with = "finite_or_string")]
    pub tolerance: f64,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub seed: Option<u64>,
    #[serde(with = "finite_map", skip_serializing_if = "BTreeMap::is_empty", default)]
    pub extra: BTreeMap<String, f64>,
    #[serde(skip_serializing_if = "Vec::is_empty", default)]
    pub notes: Vec<String>,
}

impl InequalityReport {
    /// `pass ⇔ lhs ≤ rhs·(1 + tolerance)`. A non-finite or undefined
    /// right-hand side makes the report inconclusive.
    pub fn new(name: impl Into<String>, lhs: f64, rhs: f64, constant_used: f64, tolerance: f64, inputs_digest: String) -> Self {
        let slack = rhs - lhs;
        let relative_slack = if rhs.abs() > 0.0 {
            slack / rhs.abs()
        } else if lhs == 0.0 {
            0.0
        } else {
            f64::NEG_INFINITY
        };
        let status = if lhs.is_nan() || !rhs.is_finite() {
            Status::Inconclusive
        } else if lhs <= rhs * (1.0 + tolerance) {
            Status::Pass
        } else {
            Status::Fail
        };
        Self {
            name: name.into(),
            lhs,
            rhs,
            constant_used,
            slack,
            relative_slack,
            pass: status == Status::Pass,
            status,
            inputs_digest,
            tolerance,
            seed: None,
            extra: BTreeMap::new(),
            notes: Vec::new(),
        }
    }

    pub fn inconclusive(name: impl Into<String>, reason: impl Into<String>, inputs_digest: String) -> Self {
        let mut r = Self::new(name, f64::NAN, f64::NAN, f64::NAN, 0.0, inputs_digest);
        r.notes.push(reason.into());
        r
    }

    /// Re-evaluates `lhs ≤ rhs·(1 + tolerance)`; inconclusive reports and
    /// failures of auxiliary checks (`extra["auxiliary_failure"]`) stay.
    pub fn with_tolerance(mut self, tolerance: f64) -> Self {
        self.tolerance = tolerance;
        if self.status == Status::Inconclusive || self.extra.contains_key("auxiliary_failure") {
            return self;
        }
        self.status = if self.lhs <= self.rhs * (1.0 + tolerance) {
            Status::Pass
        } else {
            Status::Fail
        };
        self.pass = self.status == Status::Pass;
        self
    }

    pub fn with_seed(mut self, seed: u64) -> Self {
        self.seed = Some(seed);
        self
    }

    pub fn with_extra(mut self, key: &str, value: f64) -> Self {
        self.extra.insert(key.to_string(), value);
        self
    }

    pub fn with_note(mut self, note: impl Into<String>) -> Self {
        self.notes.push(note.into());
        self
    }
}
