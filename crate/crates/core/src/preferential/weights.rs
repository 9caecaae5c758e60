use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::WeightError;

/// Priority weights for the power, throughput and resource terms.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct WeightVector {
    #[serde(rename = "w_p")]
    power: f64,
    #[serde(rename = "w_t")]
    throughput: f64,
    #[serde(rename = "w_r")]
    resource: f64,
}

/// Priority category derived from a weight vector.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum PriorityClass {
    /// All three weights equal.
    Equal,
    /// Exactly one nonzero weight.
    Single,
    /// Two or more nonzero weights, not all equal.
    Multiple,
}

impl fmt::Display for PriorityClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            PriorityClass::Equal => "equal",
            PriorityClass::Single => "single",
            PriorityClass::Multiple => "multiple",
        })
    }
}

impl FromStr for PriorityClass {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.to_ascii_lowercase().as_str() {
            "equal" => Ok(PriorityClass::Equal),
            "single" => Ok(PriorityClass::Single),
            "multiple" => Ok(PriorityClass::Multiple),
            other => Err(format!("unknown priority class `{other}`")),
        }
    }
}

impl WeightVector {
    /// Sum tolerance for weights built in code.
    pub const SUM_TOLERANCE: f64 = 1e-9;

    /// Sum tolerance for weights read from text. Three weights printed to
    /// three decimals (`0.333,0.333,0.333`) can miss 1 by up to 1.5e-3.
    pub const PRINTED_SUM_TOLERANCE: f64 = 1.5e-3;

    pub fn new(power: f64, throughput: f64, resource: f64) -> Result<Self, WeightError> {
        Self::with_tolerance(power, throughput, resource, Self::SUM_TOLERANCE)
    }

    /// Accepts weights whose sum is within `tolerance` of 1. The weights are
    /// stored as given, never renormalized.
    pub fn with_tolerance(
        power: f64,
        throughput: f64,
        resource: f64,
        tolerance: f64,
    ) -> Result<Self, WeightError> {
        for (name, value) in [("w_p", power), ("w_t", throughput), ("w_r", resource)] {
            if !(value.is_finite() && value >= 0.0) {
                return Err(WeightError::Negative { name, value });
            }
        }
        let sum = power + throughput + resource;
        if (sum - 1.0).abs() > tolerance {
            return Err(WeightError::Sum { sum, tolerance });
        }
        Ok(Self {
            power,
            throughput,
            resource,
        })
    }

    /// `(1/3, 1/3, 1/3)`.
    pub fn equal() -> Self {
        let third = 1.0 / 3.0;
        Self {
            power: third,
            throughput: third,
            resource: third,
        }
    }

    pub fn power(&self) -> f64 {
        self.power
    }

    pub fn throughput(&self) -> f64 {
        self.throughput
    }

    pub fn resource(&self) -> f64 {
        self.resource
    }

    pub fn as_array(&self) -> [f64; 3] {
        [self.power, self.throughput, self.resource]
    }

    pub fn priority(&self) -> PriorityClass {
        let w = self.as_array();
        if w[0] == w[1] && w[1] == w[2] {
            PriorityClass::Equal
        } else if w.iter().filter(|&&x| x != 0.0).count() == 1 {
            PriorityClass::Single
        } else {
            PriorityClass::Multiple
        }
    }
}

impl fmt::Display for WeightVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{},{},{}", self.power, self.throughput, self.resource)
    }
}

/// Parses `w_p,w_t,w_r` with [`WeightVector::PRINTED_SUM_TOLERANCE`].
impl FromStr for WeightVector {
    type Err = WeightError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let parts: Vec<&str> = s.split(',').map(str::trim).collect();
        if parts.len() != 3 {
            return Err(WeightError::Syntax(s.to_string()));
        }
        let mut values = [0.0; 3];
        for (slot, part) in values.iter_mut().zip(&parts) {
            *slot = part
                .parse::<f64>()
                .map_err(|_| WeightError::Syntax(s.to_string()))?;
        }
        Self::with_tolerance(values[0], values[1], values[2], Self::PRINTED_SUM_TOLERANCE)
    }
}

/// Header of a weight sweep file.
pub const WEIGHTS_HEADER: [&str; 3] = ["w_p", "w_t", "w_r"];

/// The 46 published weight instances, in order.
pub const TABLE1_WEIGHTS_CSV: &str = include_str!("../../data/table1_weights.csv");

/// Parses a sweep input file: header `w_p,w_t,w_r`, one weight vector per row,
/// `#` comment lines.
pub fn load_weights(source: &str) -> Result<Vec<WeightVector>, WeightError> {
    let mut reader = csv::ReaderBuilder::new()
        .has_headers(true)
        .comment(Some(b'#'))
        .trim(csv::Trim::All)
        .from_reader(source.as_bytes());
    let file_err = |err: csv::Error| WeightError::File {
        line: err.position().map_or(0, |p| p.line()),
        message: err.to_string(),
    };
    let header = reader.headers().map_err(file_err)?.clone();
    if header.iter().ne(WEIGHTS_HEADER.iter().copied()) {
        return Err(WeightError::File {
            line: 1,
            message: format!(
                "expected header `w_p,w_t,w_r`, found `{}`",
                header.iter().collect::<Vec<_>>().join(",")
            ),
        });
    }
    let mut out = Vec::new();
    for record in reader.records() {
        let record = record.map_err(file_err)?;
        let line = record.position().map_or(0, |p| p.line());
        let joined = record.iter().collect::<Vec<_>>().join(",");
        let weights = joined.parse().map_err(|e: WeightError| WeightError::File {
            line,
            message: e.to_string(),
        })?;
        out.push(weights);
    }
    Ok(out)
}

/// The bundled 46-row sweep input.
pub fn table1_weights() -> Vec<WeightVector> {
    load_weights(TABLE1_WEIGHTS_CSV).expect("bundled weights are valid")
}
