use serde::{Deserialize, Serialize};

use crate::catalog::MetricCatalog;

/// How a suite's throughput is composed from its three algorithms.
///
/// Power and slices are always summed.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ThroughputComposition {
    /// Sum of the three throughputs.
    #[default]
    Additive,
    /// Extension: minimum of the three throughputs, i.e. the slowest stage of
    /// a pipeline. Not used for the published table.
    Bottleneck,
}

/// Row indices of one `(encryption, hash, key exchange)` suite.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct SuiteIndex {
    pub enc: usize,
    pub hash: usize,
    pub kex: usize,
}

/// Composed power / throughput / slices of one suite.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ComposedMetrics {
    pub index: SuiteIndex,
    pub power_mw: f64,
    pub throughput_gbps: f64,
    pub slices: u64,
}

/// Per-metric aggregate (maximum or mean) over all composed suites.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct MetricTriple {
    pub power_mw: f64,
    pub throughput_gbps: f64,
    pub slices: f64,
}

/// Every suite of a catalog with its composed metrics, plus the maxima and
/// means used for normalization and the cut-off.
#[derive(Debug, Clone)]
pub struct CompositionSpace<'a> {
    catalog: &'a MetricCatalog,
    mode: ThroughputComposition,
    cells: Vec<ComposedMetrics>,
    max: MetricTriple,
    avg: MetricTriple,
}

/// Builds the additive composition space.
pub fn compose_space(catalog: &MetricCatalog) -> CompositionSpace<'_> {
    CompositionSpace::new(catalog, ThroughputComposition::Additive)
}

impl<'a> CompositionSpace<'a> {
    pub fn new(catalog: &'a MetricCatalog, mode: ThroughputComposition) -> Self {
        let (n, m, l) = catalog.dimensions();
        let mut cells = Vec::with_capacity(n * m * l);
        for (i, e) in catalog.encryption().iter().enumerate() {
            for (j, h) in catalog.hash().iter().enumerate() {
                for (k, x) in catalog.key_exchange().iter().enumerate() {
                    let throughput_gbps = match mode {
                        ThroughputComposition::Additive => {
                            e.throughput_gbps + h.throughput_gbps + x.throughput_gbps
                        }
                        ThroughputComposition::Bottleneck => e
                            .throughput_gbps
                            .min(h.throughput_gbps)
                            .min(x.throughput_gbps),
                    };
                    cells.push(ComposedMetrics {
                        index: SuiteIndex {
                            enc: i,
                            hash: j,
                            kex: k,
                        },
                        power_mw: e.power_mw + h.power_mw + x.power_mw,
                        throughput_gbps,
                        slices: e.slices + h.slices + x.slices,
                    });
                }
            }
        }

        let mut max = MetricTriple {
            power_mw: f64::MIN,
            throughput_gbps: f64::MIN,
            slices: f64::MIN,
        };
        let mut sum = MetricTriple {
            power_mw: 0.0,
            throughput_gbps: 0.0,
            slices: 0.0,
        };
        for c in &cells {
            max.power_mw = max.power_mw.max(c.power_mw);
            max.throughput_gbps = max.throughput_gbps.max(c.throughput_gbps);
            max.slices = max.slices.max(c.slices as f64);
            sum.power_mw += c.power_mw;
            sum.throughput_gbps += c.throughput_gbps;
            sum.slices += c.slices as f64;
        }
        let count = cells.len() as f64;
        let avg = MetricTriple {
            power_mw: sum.power_mw / count,
            throughput_gbps: sum.throughput_gbps / count,
            slices: sum.slices / count,
        };

        Self {
            catalog,
            mode,
            cells,
            max,
            avg,
        }
    }

    pub fn catalog(&self) -> &'a MetricCatalog {
        self.catalog
    }

    pub fn mode(&self) -> ThroughputComposition {
        self.mode
    }

    /// Cells in lexicographic `(enc, hash, kex)` order.
    pub fn cells(&self) -> &[ComposedMetrics] {
        &self.cells
    }

    pub fn max(&self) -> MetricTriple {
        self.max
    }

    pub fn avg(&self) -> MetricTriple {
        self.avg
    }

    pub fn cell(&self, index: SuiteIndex) -> Option<&ComposedMetrics> {
        let (n, m, l) = self.catalog.dimensions();
        if index.enc >= n || index.hash >= m || index.kex >= l {
            return None;
        }
        self.cells.get((index.enc * m + index.hash) * l + index.kex)
    }

    /// `Enc+Hash+Kex` label using catalog names.
    pub fn label(&self, index: SuiteIndex) -> String {
        format!(
            "{}+{}+{}",
            self.catalog.encryption()[index.enc].name,
            self.catalog.hash()[index.hash].name,
            self.catalog.key_exchange()[index.kex].name
        )
    }

    /// Resolves a `Enc+Hash+Kex` label. Matching ignores ASCII case and `-`,
    /// so `AES+SHA256+DH_RSA` resolves to `AES+SHA-256+DH_RSA`.
    pub fn find_label(&self, label: &str) -> Option<SuiteIndex> {
        let parts: Vec<&str> = label.split('+').map(str::trim).collect();
        let [enc, hash, kex] = parts.as_slice() else {
            return None;
        };
        let position = |list: &[crate::catalog::AlgorithmMetrics], wanted: &str| {
            let wanted = normalize_name(wanted);
            list.iter().position(|a| normalize_name(&a.name) == wanted)
        };
        Some(SuiteIndex {
            enc: position(self.catalog.encryption(), enc)?,
            hash: position(self.catalog.hash(), hash)?,
            kex: position(self.catalog.key_exchange(), kex)?,
        })
    }
}

/// Name key used for loose label comparison.
pub fn normalize_name(name: &str) -> String {
    name.chars()
        .filter(|c| *c != '-')
        .map(|c| c.to_ascii_lowercase())
        .collect()
}

/// Compares two suite labels with [`normalize_name`] applied per component.
pub fn labels_match(a: &str, b: &str) -> bool {
    let split = |s: &str| {
        s.split('+')
            .map(|p| normalize_name(p.trim()))
            .collect::<Vec<_>>()
    };
    split(a) == split(b)
}
