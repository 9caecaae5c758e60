use thiserror::Error;

/// Failure to ingest or validate a metric catalog.
#[derive(Debug, Error, PartialEq)]
pub enum CatalogError {
    #[error("line {line}: {message}")]
    Parse { line: u64, message: String },
    #[error("bad header: expected `{expected}`, found `{found}`")]
    Header { expected: String, found: String },
    #[error("{row}: {field} must be a finite value > 0 (got {value})")]
    NonPositive {
        row: String,
        field: &'static str,
        value: String,
    },
    #[error("{row}: duplicate {class} algorithm name")]
    Duplicate { row: String, class: String },
    #[error("{row}: invalid algorithm name ({reason})")]
    InvalidName { row: String, reason: &'static str },
    #[error("{row}: entry is listed under {found} but belongs to {expected}")]
    WrongClass {
        row: String,
        expected: String,
        found: String,
    },
    #[error("catalog has no {0} algorithms")]
    EmptyClass(String),
    #[error("cannot read catalog: {0}")]
    Io(String),
}

/// Invalid priority weights.
#[derive(Debug, Error, PartialEq)]
pub enum WeightError {
    #[error("weight {name} must be finite and >= 0 (got {value})")]
    Negative { name: &'static str, value: f64 },
    #[error("weights must sum to 1 (got {sum}, tolerance {tolerance:e})")]
    Sum { sum: f64, tolerance: f64 },
    #[error("weights must be three comma-separated numbers `w_p,w_t,w_r` (got `{0}`)")]
    Syntax(String),
    #[error("line {line}: {message}")]
    File { line: u64, message: String },
}

/// Invalid budget for suite filtering.
#[derive(Debug, Error, PartialEq)]
pub enum BudgetError {
    #[error("budget sets no bound; give at least one of max power, min throughput, max slices")]
    Vacuous,
    #[error("budget bound {name} must be a finite value >= 0 (got {value})")]
    InvalidBound { name: &'static str, value: f64 },
}

/// Failure to read the published-results transcription.
#[derive(Debug, Error, PartialEq)]
pub enum TableError {
    #[error("line {line}: {message}")]
    Parse { line: u64, message: String },
    #[error("row {row}: {source}")]
    Weights {
        row: u32,
        #[source]
        source: WeightError,
    },
}

/// Invalid simulator configuration.
#[derive(Debug, Error, PartialEq)]
pub enum SimConfigError {
    #[error("cannot parse simulation config: {0}")]
    Parse(String),
    #[error("{field} must be a finite value > 0 (got {value})")]
    NonPositive { field: &'static str, value: String },
    #[error("{field} = {value} exceeds the supported maximum of {max}")]
    TooLarge {
        field: &'static str,
        value: u64,
        max: u64,
    },
    #[error("simulated horizon would exceed {max_ns} ns")]
    Horizon { max_ns: u64 },
}
