//! Discrete-event timing model of the NSP dataflow.
//!
//! Every packet passes five stages in order: ingress transfer, write DMA into
//! on-chip memory, crypto engine (hash and cipher together), read DMA, egress
//! transfer. Transfers take `ceil(bits / bus_gbps) + dma_setup_ns`; the crypto
//! stage takes `ceil(bits / suite_gbps)`. Buffering between stages is
//! unbounded. Topologies differ only in which stages share a resource.

mod config;
mod engine;

use std::collections::BTreeMap;
use std::fmt;

use serde::Serialize;

pub use config::{SimConfig, Topology, MAX_HORIZON_NS, MAX_PACKETS};
pub use engine::run_simulation;

use crate::error::SimConfigError;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Direction {
    /// Plaintext from the system, encrypted toward the network.
    Forward,
    /// Ciphertext from the network, decrypted toward the system.
    Reverse,
}

impl Direction {
    pub const ALL: [Direction; 2] = [Direction::Forward, Direction::Reverse];
}

impl fmt::Display for Direction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Direction::Forward => "forward",
            Direction::Reverse => "reverse",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Stage {
    Ingress,
    WriteDma,
    Crypto,
    ReadDma,
    Egress,
}

impl Stage {
    pub const ALL: [Stage; 5] = [
        Stage::Ingress,
        Stage::WriteDma,
        Stage::Crypto,
        Stage::ReadDma,
        Stage::Egress,
    ];

    pub fn next(self) -> Option<Stage> {
        Stage::ALL.get(self as usize + 1).copied()
    }
}

/// One stage occupancy on one resource.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct StageEvent {
    pub packet_id: u32,
    pub direction: Direction,
    pub stage: Stage,
    pub resource: String,
    /// When the previous stage signalled done (or the packet arrived).
    pub ready: u64,
    pub start: u64,
    pub end: u64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PacketLatency {
    pub packet_id: u32,
    pub direction: Direction,
    pub arrival: u64,
    pub completion: u64,
    pub latency: u64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SimResult {
    pub config: SimConfig,
    /// End of the last event; 0 with no packets.
    pub makespan: u64,
    /// Busy fraction of the makespan per resource.
    pub utilization: BTreeMap<String, f64>,
    pub latencies: Vec<PacketLatency>,
    /// Sorted by start time, direction, packet, stage.
    pub events: Vec<StageEvent>,
}

impl SimResult {
    /// Events of one packet in stage order.
    pub fn packet_events(&self, direction: Direction, packet_id: u32) -> Vec<&StageEvent> {
        let mut out: Vec<&StageEvent> = self
            .events
            .iter()
            .filter(|e| e.direction == direction && e.packet_id == packet_id)
            .collect();
        out.sort_by_key(|e| e.stage);
        out
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RankEntry {
    pub topology: Topology,
    pub makespan: u64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TopologyComparison {
    /// One result per topology, in [`Topology::ALL`] order.
    pub results: Vec<SimResult>,
    /// Topologies by ascending makespan; ties keep [`Topology::ALL`] order.
    pub ranking: Vec<RankEntry>,
}

/// Runs the same workload on all three topologies. The base config's topology
/// is ignored.
pub fn compare_topologies(base: &SimConfig) -> Result<TopologyComparison, SimConfigError> {
    let results = Topology::ALL
        .iter()
        .map(|&t| run_simulation(&base.with_topology(t)))
        .collect::<Result<Vec<_>, _>>()?;
    let mut ranking: Vec<RankEntry> = results
        .iter()
        .map(|r| RankEntry {
            topology: r.config.topology,
            makespan: r.makespan,
        })
        .collect();
    ranking.sort_by_key(|r| r.makespan);
    Ok(TopologyComparison { results, ranking })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cfg(topology: Topology, forward: u32, reverse: u32) -> SimConfig {
        SimConfig::new(topology, 1024, forward, reverse, 1.0, 1.0)
    }

    #[test]
    fn single_packet_is_pure_pipeline_sum() {
        for t in Topology::ALL {
            let r = run_simulation(&cfg(t, 1, 0)).unwrap();
            assert_eq!(r.makespan, 5 * 1024, "{t}");
            assert_eq!(r.events.len(), 5);
            assert_eq!(r.latencies[0].latency, 5 * 1024);
        }
    }

    #[test]
    fn empty_workload() {
        let cmp = compare_topologies(&cfg(Topology::DualInterface, 0, 0)).unwrap();
        assert_eq!(cmp.results.len(), 3);
        for r in &cmp.results {
            assert_eq!(r.makespan, 0);
            assert!(r.events.is_empty());
            assert!(r.utilization.values().all(|u| *u == 0.0));
        }
        assert_eq!(
            cmp.ranking.iter().map(|r| r.topology).collect::<Vec<_>>(),
            Topology::ALL.to_vec()
        );
    }

    #[test]
    fn dual_interface_pipelines() {
        // Uniform 1024 ns stages: k packets finish at (k + 4) * 1024.
        let r = run_simulation(&cfg(Topology::DualInterface, 3, 3)).unwrap();
        assert_eq!(r.makespan, 7 * 1024);
        assert!(r.utilization["crypto.fwd"] > 0.4);
    }

    #[test]
    fn shared_bus_serializes_all_transfers() {
        let r = run_simulation(&cfg(Topology::SharedBidirectionalBus, 1, 1)).unwrap();
        // 8 transfers on one bus; the last egress cannot end before 8 * 1024.
        assert!(r.makespan >= 8 * 1024);
        assert!((r.utilization["bus"] - 8.0 * 1024.0 / r.makespan as f64).abs() < 1e-12);
    }

    #[test]
    fn split_bus_forward_only_equals_dual() {
        for k in 1..6 {
            let dual = run_simulation(&cfg(Topology::DualInterface, k, 0)).unwrap();
            let split = run_simulation(&cfg(Topology::SplitBusSinglePci, k, 0)).unwrap();
            assert_eq!(dual.makespan, split.makespan);
        }
    }

    #[test]
    fn five_packets_each_way_ranks_dual_first() {
        let cmp = compare_topologies(&cfg(Topology::DualInterface, 5, 5)).unwrap();
        assert_eq!(cmp.ranking[0].topology, Topology::DualInterface);
        let m: Vec<u64> = cmp.results.iter().map(|r| r.makespan).collect();
        assert!(m[0] < m[1] && m[1] < m[2], "{m:?}");
    }

    #[test]
    fn key_exchange_and_reconfig_delays() {
        let mut c = cfg(Topology::DualInterface, 2, 0);
        c.key_exchange_ns = 100;
        let r = run_simulation(&c).unwrap();
        assert_eq!(r.events[0].start, 100);
        assert_eq!(r.makespan, 100 + 6 * 1024);
        assert_eq!(r.latencies[0].arrival, 100);

        let mut c = cfg(Topology::DualInterface, 2, 0);
        c.suite_switch_after = Some(1);
        c.reconfig_delay_ns = 5000;
        let r = run_simulation(&c).unwrap();
        let second = r.packet_events(Direction::Forward, 1);
        let crypto = second[Stage::Crypto as usize];
        assert_eq!(crypto.start, crypto.ready.max(3 * 1024) + 5000);
        assert_eq!(r.makespan, 3 * 1024 + 5000 + 3 * 1024);
    }

    #[test]
    fn reverse_engine_override() {
        let mut c = cfg(Topology::DualInterface, 0, 1);
        c.reverse_suite_gbps = Some(0.5);
        let r = run_simulation(&c).unwrap();
        assert_eq!(r.makespan, 4 * 1024 + 2048);
    }

    #[test]
    fn invalid_config_rejected() {
        let mut c = cfg(Topology::DualInterface, 1, 1);
        c.suite_gbps = f64::NAN;
        assert!(run_simulation(&c).is_err());
        assert!(compare_topologies(&c).is_err());
    }
}
