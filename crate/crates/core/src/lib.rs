//! Cipher-suite selection by efficient system index (ESI) and a timing model of
//! a dual-interface pipelined network security processor (NSP).
//!
//! The crate has three parts:
//!
//! - [`catalog`]: measured power / throughput / slice metrics for every
//!   encryption, hash and key-exchange algorithm, with CSV ingestion and the
//!   bundled 7 + 3 + 3 default catalog.
//! - [`preferential`]: composition of all `n * m * l` suites, weighted ESI
//!   scoring, the mean cut-off `ESI_t`, eligibility, budget filtering, weight
//!   sweeps, and the diff harness against the published 46-instance table.
//! - [`sim`]: a deterministic discrete-event simulator comparing the proposed
//!   dual-interface dataflow with a split-bus single-PCI design and a shared
//!   bidirectional bus.
//!
//! ```
//! use nsp_core::catalog::default_catalog;
//! use nsp_core::preferential::{select, WeightVector};
//!
//! let catalog = default_catalog();
//! let report = select(&catalog, &WeightVector::new(1.0, 0.0, 0.0).unwrap());
//! assert_eq!(report.best.label, "Idea+MD5+RSA");
//! ```

pub mod catalog;
pub mod error;
pub mod preferential;
pub mod sim;

pub use error::{BudgetError, CatalogError, SimConfigError, TableError, WeightError};

/// Version tag written into every machine-readable report.
pub const SCHEMA_VERSION: u32 = 1;
