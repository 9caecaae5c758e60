//! Test-only oracles, kept independent of the library's code paths.
#![allow(dead_code)]

use std::collections::{BTreeMap, BTreeSet};

use nsp_core::sim::{Direction, SimConfig, SimResult, Stage, StageEvent, Topology};

/// One algorithm row as parsed by the naive reader.
#[derive(Debug, Clone)]
pub struct NaiveRow {
    pub class: String,
    pub name: String,
    pub power: f64,
    pub throughput: f64,
    pub slices: f64,
}

/// Splits catalog text on newlines and commas; no CSV library.
pub fn naive_parse(text: &str) -> Vec<NaiveRow> {
    let mut rows = Vec::new();
    for line in text.lines() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') || line.starts_with("class,") {
            continue;
        }
        let f: Vec<&str> = line.split(',').collect();
        rows.push(NaiveRow {
            class: f[0].to_string(),
            name: f[1].to_string(),
            power: f[2].parse().unwrap(),
            throughput: f[3].parse().unwrap(),
            slices: f[4].parse().unwrap(),
        });
    }
    rows
}

#[derive(Debug, Clone)]
pub struct NaiveSelection {
    pub esi_t: f64,
    pub best: String,
    pub worst: String,
    pub eligible: BTreeSet<String>,
    pub scores: Vec<(String, f64)>,
}

/// Brute-force selection: triple loop over the raw rows, maxima and means
/// from explicit accumulation, ESI from the weighted formula.
pub fn naive_select(rows: &[NaiveRow], wp: f64, wt: f64, wr: f64) -> NaiveSelection {
    let of = |c: &str| {
        rows.iter()
            .filter(|r| r.class == c)
            .cloned()
            .collect::<Vec<_>>()
    };
    let (enc, hash, kex) = (of("encryption"), of("hash"), of("key_exchange"));
    let mut cells = Vec::new();
    for e in &enc {
        for h in &hash {
            for k in &kex {
                cells.push((
                    format!("{}+{}+{}", e.name, h.name, k.name),
                    e.power + h.power + k.power,
                    e.throughput + h.throughput + k.throughput,
                    e.slices + h.slices + k.slices,
                ));
            }
        }
    }
    let (mut pmax, mut tmax, mut rmax) = (0.0f64, 0.0f64, 0.0f64);
    let (mut psum, mut tsum, mut rsum) = (0.0, 0.0, 0.0);
    for c in &cells {
        pmax = pmax.max(c.1);
        tmax = tmax.max(c.2);
        rmax = rmax.max(c.3);
        psum += c.1;
        tsum += c.2;
        rsum += c.3;
    }
    let n = cells.len() as f64;
    let esi_t =
        wp * (1.0 - psum / n / pmax) + wt * (tsum / n / tmax) + wr * (1.0 - rsum / n / rmax);
    let scores: Vec<(String, f64)> = cells
        .iter()
        .map(|c| {
            let s = wp * (1.0 - c.1 / pmax) + wt * (c.2 / tmax) + wr * (1.0 - c.3 / rmax);
            (c.0.clone(), s)
        })
        .collect();
    let mut best = 0;
    let mut worst = 0;
    for i in 0..scores.len() {
        if scores[i].1 > scores[best].1 {
            best = i;
        }
        if scores[i].1 < scores[worst].1 {
            worst = i;
        }
    }
    let eligible = scores
        .iter()
        .filter(|s| s.1 >= esi_t - 1e-12)
        .map(|s| s.0.clone())
        .collect();
    NaiveSelection {
        esi_t,
        best: scores[best].0.clone(),
        worst: scores[worst].0.clone(),
        eligible,
        scores,
    }
}

pub fn rel_close(a: f64, b: f64, tol: f64) -> bool {
    (a - b).abs() <= tol * a.abs().max(b.abs()).max(1e-300)
}

/// Checks conservation, stage order and per-resource exclusivity. Returns a
/// description of the first violation.
pub fn check_sim_invariants(config: &SimConfig, result: &SimResult) -> Result<(), String> {
    let mut per_packet: BTreeMap<(Direction, u32), Vec<&StageEvent>> = BTreeMap::new();
    for e in &result.events {
        if e.end <= e.start {
            return Err(format!("empty interval {e:?}"));
        }
        if e.start < e.ready {
            return Err(format!("starts before ready {e:?}"));
        }
        per_packet
            .entry((e.direction, e.packet_id))
            .or_default()
            .push(e);
    }
    let expected = config.forward_packets as usize + config.reverse_packets as usize;
    if per_packet.len() != expected {
        return Err(format!(
            "{} packets seen, {expected} injected",
            per_packet.len()
        ));
    }
    for dir in Direction::ALL {
        let count = match dir {
            Direction::Forward => config.forward_packets,
            Direction::Reverse => config.reverse_packets,
        };
        for id in 0..count {
            let Some(evs) = per_packet.get(&(dir, id)) else {
                return Err(format!("{dir} packet {id} missing"));
            };
            let mut evs = evs.clone();
            evs.sort_by_key(|e| e.start);
            let stages: Vec<Stage> = evs.iter().map(|e| e.stage).collect();
            if stages != Stage::ALL {
                return Err(format!("{dir} packet {id} stages {stages:?}"));
            }
            if evs[0].ready != config.key_exchange_ns {
                return Err(format!("{dir} packet {id} arrival {}", evs[0].ready));
            }
            for pair in evs.windows(2) {
                if pair[1].ready != pair[0].end || pair[1].start < pair[0].end {
                    return Err(format!("{dir} packet {id} order {:?}", pair));
                }
            }
        }
    }
    let mut by_resource: BTreeMap<&str, Vec<&StageEvent>> = BTreeMap::new();
    for e in &result.events {
        by_resource.entry(e.resource.as_str()).or_default().push(e);
    }
    for (name, mut evs) in by_resource {
        evs.sort_by_key(|e| e.start);
        for pair in evs.windows(2) {
            if pair[1].start < pair[0].end {
                return Err(format!("overlap on {name}: {:?}", pair));
            }
        }
    }
    let last = result.events.iter().map(|e| e.end).max().unwrap_or(0);
    if last != result.makespan {
        return Err(format!("makespan {} != last end {last}", result.makespan));
    }
    Ok(())
}

/// Shared bus never idles while a transfer waits: every bus event's wait
/// window `[ready, start)` is fully covered by other bus events.
pub fn check_shared_bus_work_conserving(result: &SimResult) -> Result<(), String> {
    if result.config.topology != Topology::SharedBidirectionalBus {
        return Ok(());
    }
    let mut bus: Vec<&StageEvent> = result
        .events
        .iter()
        .filter(|e| e.resource == "bus")
        .collect();
    bus.sort_by_key(|e| e.start);
    for e in &bus {
        let mut t = e.ready;
        for other in &bus {
            if other.start <= t && other.end > t {
                t = other.end;
            }
        }
        if t < e.start {
            return Err(format!("bus idle at {t} while {e:?} waited"));
        }
    }
    Ok(())
}
