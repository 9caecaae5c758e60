use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::SimConfigError;

/// Bus / interface topology of the security processor.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Topology {
    /// PCI ingress and Ethernet ingress each own a write-DMA, crypto engine,
    /// read-DMA chain. No resource is shared across directions.
    DualInterface,
    /// Separate read and write buses behind a single PCI interface; forward
    /// egress and reverse ingress contend for that interface.
    SplitBusSinglePci,
    /// One bidirectional bus carries every transfer in both directions.
    SharedBidirectionalBus,
}

impl Topology {
    pub const ALL: [Topology; 3] = [
        Topology::DualInterface,
        Topology::SplitBusSinglePci,
        Topology::SharedBidirectionalBus,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            Topology::DualInterface => "dual_interface",
            Topology::SplitBusSinglePci => "split_bus_single_pci",
            Topology::SharedBidirectionalBus => "shared_bidirectional_bus",
        }
    }
}

impl fmt::Display for Topology {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Topology {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "dual_interface" | "dual" => Ok(Topology::DualInterface),
            "split_bus_single_pci" | "split" => Ok(Topology::SplitBusSinglePci),
            "shared_bidirectional_bus" | "shared" => Ok(Topology::SharedBidirectionalBus),
            other => Err(format!(
                "unknown topology `{other}` (expected dual, split or shared)"
            )),
        }
    }
}

/// Upper bound on packets per direction.
pub const MAX_PACKETS: u32 = 1_000_000;

/// Upper bound on the simulated horizon.
pub const MAX_HORIZON_NS: u64 = 1 << 60;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SimConfig {
    pub topology: Topology,
    pub packet_size_bits: u64,
    /// Plaintext packets, system to network.
    #[serde(default)]
    pub forward_packets: u32,
    /// Ciphertext packets, network to system.
    #[serde(default)]
    pub reverse_packets: u32,
    /// Bandwidth of every bus, interface and DMA channel.
    pub bus_gbps: f64,
    /// Crypto engine rate; the selected suite's composed throughput.
    pub suite_gbps: f64,
    /// Overrides `suite_gbps` for the reverse-direction engine.
    #[serde(default)]
    pub reverse_suite_gbps: Option<f64>,
    /// Fixed cost added to every bus or DMA transfer.
    #[serde(default)]
    pub dma_setup_ns: u64,
    /// One-time delay before any packet enters, for the key exchange.
    #[serde(default)]
    pub key_exchange_ns: u64,
    /// Engine downtime when the suite is switched mid-run.
    #[serde(default)]
    pub reconfig_delay_ns: u64,
    /// Each crypto engine switches suite after serving this many packets.
    #[serde(default)]
    pub suite_switch_after: Option<u32>,
}

impl SimConfig {
    /// A config with no setup, key-exchange or reconfiguration cost.
    pub fn new(
        topology: Topology,
        packet_size_bits: u64,
        forward_packets: u32,
        reverse_packets: u32,
        bus_gbps: f64,
        suite_gbps: f64,
    ) -> Self {
        Self {
            topology,
            packet_size_bits,
            forward_packets,
            reverse_packets,
            bus_gbps,
            suite_gbps,
            reverse_suite_gbps: None,
            dma_setup_ns: 0,
            key_exchange_ns: 0,
            reconfig_delay_ns: 0,
            suite_switch_after: None,
        }
    }

    pub fn from_toml_str(source: &str) -> Result<Self, SimConfigError> {
        let config: SimConfig =
            toml::from_str(source).map_err(|e| SimConfigError::Parse(e.message().to_string()))?;
        config.validate()?;
        Ok(config)
    }

    pub fn to_toml_string(&self) -> String {
        toml::to_string(self).expect("config serializes")
    }

    pub fn with_topology(&self, topology: Topology) -> Self {
        Self {
            topology,
            ..self.clone()
        }
    }

    pub(crate) fn reverse_engine_gbps(&self) -> f64 {
        self.reverse_suite_gbps.unwrap_or(self.suite_gbps)
    }

    pub(crate) fn transfer_ns(&self) -> u64 {
        div_ceil_ns(self.packet_size_bits, self.bus_gbps) + self.dma_setup_ns
    }

    pub(crate) fn crypto_ns(&self, gbps: f64) -> u64 {
        div_ceil_ns(self.packet_size_bits, gbps)
    }

    pub fn validate(&self) -> Result<(), SimConfigError> {
        if self.packet_size_bits == 0 {
            return Err(SimConfigError::NonPositive {
                field: "packet_size_bits",
                value: "0".into(),
            });
        }
        let rates = [
            ("bus_gbps", Some(self.bus_gbps)),
            ("suite_gbps", Some(self.suite_gbps)),
            ("reverse_suite_gbps", self.reverse_suite_gbps),
        ];
        for (field, value) in rates {
            if let Some(v) = value {
                if !(v.is_finite() && v > 0.0) {
                    return Err(SimConfigError::NonPositive {
                        field,
                        value: v.to_string(),
                    });
                }
            }
        }
        if self.suite_switch_after == Some(0) {
            return Err(SimConfigError::NonPositive {
                field: "suite_switch_after",
                value: "0".into(),
            });
        }
        for (field, value) in [
            ("forward_packets", self.forward_packets),
            ("reverse_packets", self.reverse_packets),
        ] {
            if value > MAX_PACKETS {
                return Err(SimConfigError::TooLarge {
                    field,
                    value: value.into(),
                    max: MAX_PACKETS.into(),
                });
            }
        }

        // Serializing every stage of every packet back to back bounds the
        // makespan of any topology.
        let transfer =
            (self.packet_size_bits as f64 / self.bus_gbps).ceil() + self.dma_setup_ns as f64;
        let crypto =
            (self.packet_size_bits as f64 / self.suite_gbps.min(self.reverse_engine_gbps())).ceil()
                + self.reconfig_delay_ns as f64;
        let packets = f64::from(self.forward_packets) + f64::from(self.reverse_packets);
        let bound = self.key_exchange_ns as f64 + (packets.max(1.0)) * (4.0 * transfer + crypto);
        // A NaN bound compares false and is rejected too.
        let within = bound < MAX_HORIZON_NS as f64;
        if !within {
            return Err(SimConfigError::Horizon {
                max_ns: MAX_HORIZON_NS,
            });
        }
        Ok(())
    }
}

/// `ceil(bits / gbps)` nanoseconds, at least 1.
pub(crate) fn div_ceil_ns(bits: u64, gbps: f64) -> u64 {
    let ns = (bits as f64 / gbps).ceil();
    (ns as u64).max(1)
}
