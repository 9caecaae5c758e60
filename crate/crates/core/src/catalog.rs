//! Algorithm metric catalog.
//!
//! A catalog holds three ordered lists of measured algorithms (encryption,
//! hash, key exchange). List order defines the row index used when suites are
//! composed, so loading preserves document order exactly.
//!
//! File format: UTF-8 CSV with the header
//! `class,name,power_mw,throughput_gbps,slices,critical_path_ns`, one row per
//! algorithm, `#` starting a comment line.

use std::collections::HashSet;
use std::fmt;
use std::path::Path;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::CatalogError;

/// Header line every catalog document starts with.
pub const CATALOG_HEADER: [&str; 6] = [
    "class",
    "name",
    "power_mw",
    "throughput_gbps",
    "slices",
    "critical_path_ns",
];

/// The bundled catalog as shipped in `data/default_catalog.csv`.
pub const DEFAULT_CATALOG_CSV: &str = include_str!("../data/default_catalog.csv");

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum AlgorithmClass {
    Encryption,
    Hash,
    KeyExchange,
}

impl AlgorithmClass {
    pub const ALL: [AlgorithmClass; 3] = [
        AlgorithmClass::Encryption,
        AlgorithmClass::Hash,
        AlgorithmClass::KeyExchange,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            AlgorithmClass::Encryption => "encryption",
            AlgorithmClass::Hash => "hash",
            AlgorithmClass::KeyExchange => "key_exchange",
        }
    }
}

impl fmt::Display for AlgorithmClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for AlgorithmClass {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "encryption" => Ok(AlgorithmClass::Encryption),
            "hash" => Ok(AlgorithmClass::Hash),
            "key_exchange" => Ok(AlgorithmClass::KeyExchange),
            other => Err(format!(
                "unknown algorithm class `{other}` (expected encryption, hash or key_exchange)"
            )),
        }
    }
}

/// One measured algorithm.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AlgorithmMetrics {
    pub name: String,
    pub class: AlgorithmClass,
    pub power_mw: f64,
    pub throughput_gbps: f64,
    pub slices: u64,
    /// Informational only; takes no part in scoring.
    pub critical_path_ns: f64,
}

impl AlgorithmMetrics {
    pub fn new(
        class: AlgorithmClass,
        name: impl Into<String>,
        power_mw: f64,
        throughput_gbps: f64,
        slices: u64,
        critical_path_ns: f64,
    ) -> Self {
        Self {
            name: name.into(),
            class,
            power_mw,
            throughput_gbps,
            slices,
            critical_path_ns,
        }
    }

    fn validate(&self, row: &str) -> Result<(), CatalogError> {
        if self.name.trim().is_empty() {
            return Err(CatalogError::InvalidName {
                row: row.to_string(),
                reason: "empty",
            });
        }
        if self.name.contains('+') {
            return Err(CatalogError::InvalidName {
                row: row.to_string(),
                reason: "`+` is reserved as the suite separator",
            });
        }
        if self.name.trim() != self.name {
            return Err(CatalogError::InvalidName {
                row: row.to_string(),
                reason: "leading or trailing whitespace",
            });
        }
        let reals = [
            ("power_mw", self.power_mw),
            ("throughput_gbps", self.throughput_gbps),
            ("critical_path_ns", self.critical_path_ns),
        ];
        for (field, value) in reals {
            if !(value.is_finite() && value > 0.0) {
                return Err(CatalogError::NonPositive {
                    row: row.to_string(),
                    field,
                    value: value.to_string(),
                });
            }
        }
        if self.slices == 0 {
            return Err(CatalogError::NonPositive {
                row: row.to_string(),
                field: "slices",
                value: "0".to_string(),
            });
        }
        Ok(())
    }
}

/// Validated, immutable set of algorithm lists.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct MetricCatalog {
    encryption: Vec<AlgorithmMetrics>,
    hash: Vec<AlgorithmMetrics>,
    key_exchange: Vec<AlgorithmMetrics>,
}

impl MetricCatalog {
    /// Builds a catalog from three lists, applying the same validation as
    /// [`load_catalog`].
    pub fn new(
        encryption: Vec<AlgorithmMetrics>,
        hash: Vec<AlgorithmMetrics>,
        key_exchange: Vec<AlgorithmMetrics>,
    ) -> Result<Self, CatalogError> {
        let catalog = Self {
            encryption,
            hash,
            key_exchange,
        };
        for class in AlgorithmClass::ALL {
            let mut seen = HashSet::new();
            let list = catalog.list(class);
            if list.is_empty() {
                return Err(CatalogError::EmptyClass(class.to_string()));
            }
            for (index, entry) in list.iter().enumerate() {
                let row = format!("{class}[{index}] {}", entry.name);
                if entry.class != class {
                    return Err(CatalogError::WrongClass {
                        row,
                        expected: class.to_string(),
                        found: entry.class.to_string(),
                    });
                }
                entry.validate(&row)?;
                if !seen.insert(entry.name.as_str()) {
                    return Err(CatalogError::Duplicate {
                        row,
                        class: class.to_string(),
                    });
                }
            }
        }
        Ok(catalog)
    }

    pub fn encryption(&self) -> &[AlgorithmMetrics] {
        &self.encryption
    }

    pub fn hash(&self) -> &[AlgorithmMetrics] {
        &self.hash
    }

    pub fn key_exchange(&self) -> &[AlgorithmMetrics] {
        &self.key_exchange
    }

    pub fn list(&self, class: AlgorithmClass) -> &[AlgorithmMetrics] {
        match class {
            AlgorithmClass::Encryption => &self.encryption,
            AlgorithmClass::Hash => &self.hash,
            AlgorithmClass::KeyExchange => &self.key_exchange,
        }
    }

    /// `(n, m, l)`: encryption, hash and key-exchange counts.
    pub fn dimensions(&self) -> (usize, usize, usize) {
        (
            self.encryption.len(),
            self.hash.len(),
            self.key_exchange.len(),
        )
    }

    /// Number of composable suites, `n * m * l`.
    pub fn suite_count(&self) -> usize {
        let (n, m, l) = self.dimensions();
        n * m * l
    }

    /// All entries in file order: encryption, then hash, then key exchange.
    pub fn entries(&self) -> impl Iterator<Item = &AlgorithmMetrics> {
        self.encryption
            .iter()
            .chain(self.hash.iter())
            .chain(self.key_exchange.iter())
    }

    /// Serializes to the catalog CSV format. Reloading the output with
    /// [`load_catalog`] yields an identical catalog.
    pub fn to_csv(&self) -> String {
        let mut writer = csv::Writer::from_writer(Vec::new());
        writer
            .write_record(CATALOG_HEADER)
            .expect("writing to memory");
        for entry in self.entries() {
            writer
                .write_record([
                    entry.class.as_str().to_string(),
                    entry.name.clone(),
                    entry.power_mw.to_string(),
                    entry.throughput_gbps.to_string(),
                    entry.slices.to_string(),
                    entry.critical_path_ns.to_string(),
                ])
                .expect("writing to memory");
        }
        let bytes = writer.into_inner().expect("flushing to memory");
        String::from_utf8(bytes).expect("csv output is utf-8")
    }

    pub fn from_path(path: impl AsRef<Path>) -> Result<Self, CatalogError> {
        let path = path.as_ref();
        let text = std::fs::read_to_string(path)
            .map_err(|e| CatalogError::Io(format!("{}: {e}", path.display())))?;
        load_catalog(&text)
    }
}

/// Parses and validates a catalog document.
pub fn load_catalog(source: &str) -> Result<MetricCatalog, CatalogError> {
    let mut reader = csv::ReaderBuilder::new()
        .has_headers(true)
        .comment(Some(b'#'))
        .trim(csv::Trim::All)
        .from_reader(source.as_bytes());

    let header = reader.headers().map_err(csv_error)?.clone();
    if header.iter().ne(CATALOG_HEADER.iter().copied()) {
        return Err(CatalogError::Header {
            expected: CATALOG_HEADER.join(","),
            found: header.iter().collect::<Vec<_>>().join(","),
        });
    }

    let mut lists: [Vec<AlgorithmMetrics>; 3] = Default::default();
    let mut seen: [HashSet<String>; 3] = Default::default();
    for record in reader.records() {
        let record = record.map_err(csv_error)?;
        let line = record.position().map_or(0, |p| p.line());
        let parse_err = |message: String| CatalogError::Parse { line, message };

        let class: AlgorithmClass = record[0].parse().map_err(parse_err)?;
        let name = record[1].to_string();
        let row = format!("line {line} ({class} {name})");
        let real = |idx: usize, field: &str| -> Result<f64, CatalogError> {
            record[idx].parse::<f64>().map_err(|_| CatalogError::Parse {
                line,
                message: format!("{field} `{}` is not a number", &record[idx]),
            })
        };
        let power_mw = real(2, "power_mw")?;
        let throughput_gbps = real(3, "throughput_gbps")?;
        let slices = record[4].parse::<u64>().map_err(|_| CatalogError::Parse {
            line,
            message: format!("slices `{}` is not a non-negative integer", &record[4]),
        })?;
        let critical_path_ns = real(5, "critical_path_ns")?;

        let entry = AlgorithmMetrics {
            name,
            class,
            power_mw,
            throughput_gbps,
            slices,
            critical_path_ns,
        };
        entry.validate(&row)?;
        let slot = class as usize;
        if !seen[slot].insert(entry.name.clone()) {
            return Err(CatalogError::Duplicate {
                row,
                class: class.to_string(),
            });
        }
        lists[slot].push(entry);
    }

    let [encryption, hash, key_exchange] = lists;
    MetricCatalog::new(encryption, hash, key_exchange)
}

fn csv_error(err: csv::Error) -> CatalogError {
    let line = err.position().map_or(0, |p| p.line());
    CatalogError::Parse {
        line,
        message: err.to_string(),
    }
}

/// The 7 + 3 + 3 catalog of measured encryption, hash and key-exchange cores.
pub fn default_catalog() -> MetricCatalog {
    load_catalog(DEFAULT_CATALOG_CSV).expect("bundled catalog is valid")
}
