use std::cmp::Reverse;
use std::collections::{BTreeMap, BinaryHeap};

use super::config::{SimConfig, Topology};
use super::{Direction, PacketLatency, SimResult, Stage, StageEvent};
use crate::error::SimConfigError;

/// A packet waiting for a resource. Ordering is the arbitration rule: earliest
/// ready time, then forward before reverse, then lower packet id.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
struct Request {
    ready: u64,
    direction: Direction,
    packet: u32,
    stage: Stage,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
struct Completion {
    end: u64,
    direction: Direction,
    packet: u32,
    stage: Stage,
}

#[derive(Debug)]
struct Resource {
    name: &'static str,
    waiting: BinaryHeap<Reverse<Request>>,
    busy_until: u64,
    busy_ns: u64,
    served: u32,
    is_crypto: bool,
}

impl Resource {
    fn new(name: &'static str) -> Self {
        Self {
            name,
            waiting: BinaryHeap::new(),
            busy_until: 0,
            busy_ns: 0,
            served: 0,
            is_crypto: name.starts_with("crypto"),
        }
    }
}

/// Resource names for `[direction][stage]`.
pub(crate) fn routing(topology: Topology) -> [[&'static str; 5]; 2] {
    match topology {
        Topology::DualInterface => [
            ["pci.rx", "wdma.fwd", "crypto.fwd", "rdma.fwd", "eth.tx"],
            ["eth.rx", "wdma.rev", "crypto.rev", "rdma.rev", "pci.tx"],
        ],
        Topology::SplitBusSinglePci => [
            ["pci.rx", "wdma.fwd", "crypto.fwd", "rdma.fwd", "pci.shared"],
            ["pci.shared", "wdma.rev", "crypto.rev", "rdma.rev", "pci.tx"],
        ],
        Topology::SharedBidirectionalBus => [
            ["bus", "bus", "crypto.fwd", "bus", "bus"],
            ["bus", "bus", "crypto.rev", "bus", "bus"],
        ],
    }
}

/// Runs one deterministic simulation.
///
/// Each stage starts once the packet's previous stage has signalled done and
/// its resource is free. Free resources never idle while a request waits.
pub fn run_simulation(config: &SimConfig) -> Result<SimResult, SimConfigError> {
    config.validate()?;

    let route_names = routing(config.topology);
    let mut resources: Vec<Resource> = Vec::new();
    let mut route = [[0usize; 5]; 2];
    for (d, names) in route_names.iter().enumerate() {
        for (s, name) in names.iter().enumerate() {
            route[d][s] = match resources.iter().position(|r| r.name == *name) {
                Some(i) => i,
                None => {
                    resources.push(Resource::new(name));
                    resources.len() - 1
                }
            };
        }
    }

    let transfer_ns = config.transfer_ns();
    let crypto_ns = [
        config.crypto_ns(config.suite_gbps),
        config.crypto_ns(config.reverse_engine_gbps()),
    ];
    let service = |direction: Direction, stage: Stage| match stage {
        Stage::Crypto => crypto_ns[direction as usize],
        _ => transfer_ns,
    };

    let arrival = config.key_exchange_ns;
    let counts = [config.forward_packets, config.reverse_packets];
    for direction in Direction::ALL {
        let first = &mut resources[route[direction as usize][0]];
        for packet in 0..counts[direction as usize] {
            first.waiting.push(Reverse(Request {
                ready: arrival,
                direction,
                packet,
                stage: Stage::Ingress,
            }));
        }
    }

    let total_packets = (counts[0] + counts[1]) as usize;
    let mut events = Vec::with_capacity(total_packets * Stage::ALL.len());
    let mut latencies = Vec::with_capacity(total_packets);
    let mut completions: BinaryHeap<Reverse<Completion>> = BinaryHeap::new();
    let mut now = arrival;

    loop {
        for resource in resources.iter_mut() {
            if resource.busy_until > now {
                continue;
            }
            let Some(Reverse(req)) = resource.waiting.pop() else {
                continue;
            };
            let mut start = now;
            if resource.is_crypto
                && config.reconfig_delay_ns > 0
                && config.suite_switch_after == Some(resource.served)
            {
                start += config.reconfig_delay_ns;
            }
            let end = start + service(req.direction, req.stage);
            resource.busy_until = end;
            resource.busy_ns += end - start;
            resource.served += 1;
            events.push(StageEvent {
                packet_id: req.packet,
                direction: req.direction,
                stage: req.stage,
                resource: resource.name.to_string(),
                ready: req.ready,
                start,
                end,
            });
            completions.push(Reverse(Completion {
                end,
                direction: req.direction,
                packet: req.packet,
                stage: req.stage,
            }));
        }

        let Some(Reverse(first)) = completions.pop() else {
            break;
        };
        now = first.end;
        let mut batch = vec![first];
        while let Some(Reverse(next)) = completions.peek() {
            if next.end != now {
                break;
            }
            batch.push(*next);
            completions.pop();
        }
        for done in batch {
            match done.stage.next() {
                Some(stage) => {
                    let r = route[done.direction as usize][stage as usize];
                    resources[r].waiting.push(Reverse(Request {
                        ready: now,
                        direction: done.direction,
                        packet: done.packet,
                        stage,
                    }));
                }
                None => latencies.push(PacketLatency {
                    packet_id: done.packet,
                    direction: done.direction,
                    arrival,
                    completion: now,
                    latency: now - arrival,
                }),
            }
        }
    }

    events.sort_by_key(|e| (e.start, e.direction, e.packet_id, e.stage));
    latencies.sort_by_key(|l| (l.direction, l.packet_id));
    let makespan = events.iter().map(|e| e.end).max().unwrap_or(0);
    let utilization: BTreeMap<String, f64> = resources
        .iter()
        .map(|r| {
            let fraction = if makespan == 0 {
                0.0
            } else {
                r.busy_ns as f64 / makespan as f64
            };
            (r.name.to_string(), fraction)
        })
        .collect();

    Ok(SimResult {
        config: config.clone(),
        makespan,
        utilization,
        latencies,
        events,
    })
}
