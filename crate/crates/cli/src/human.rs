//! Plain-text rendering. Each function returns the whole report.

use std::fmt::Write;
use std::path::Path;

use nsp_core::catalog::{AlgorithmClass, MetricCatalog};
use nsp_core::preferential::table1::Table1Diff;
use nsp_core::preferential::{BudgetOutcome, SelectionReport, SuiteComposition};
use nsp_core::sim::{SimResult, TopologyComparison};

pub fn catalog(catalog: &MetricCatalog, file: &Path) -> String {
    let mut s = String::new();
    let (n, m, l) = catalog.dimensions();
    let _ = writeln!(
        s,
        "{}: valid ({n} encryption, {m} hash, {l} key exchange; {} suites)",
        file.display(),
        n * m * l
    );
    let _ = writeln!(
        s,
        "{:<13} {:<10} {:>10} {:>10} {:>8} {:>8}",
        "class", "name", "power_mw", "gbps", "slices", "cp_ns"
    );
    for class in AlgorithmClass::ALL {
        for a in catalog.list(class) {
            let _ = writeln!(
                s,
                "{:<13} {:<10} {:>10.3} {:>10.3} {:>8} {:>8.3}",
                class.as_str(),
                a.name,
                a.power_mw,
                a.throughput_gbps,
                a.slices,
                a.critical_path_ns
            );
        }
    }
    s
}

fn suite_line(s: &mut String, tag: &str, suite: &SuiteComposition) {
    let _ = writeln!(
        s,
        "{tag:<6} {:<22} esi {:.5}  {:>7.1} mW  {:>6.3} Gbps  {:>6} slices",
        suite.label, suite.esi, suite.power_mw, suite.throughput_gbps, suite.slices
    );
}

pub fn selection(report: &SelectionReport, source: &str, budget: Option<&BudgetOutcome>) -> String {
    let mut s = String::new();
    let _ = writeln!(s, "catalog  {source}");
    let _ = writeln!(s, "weights  {} ({})", report.weights, report.priority);
    let _ = writeln!(s, "ESI_t    {:.5}", report.esi_t);
    suite_line(&mut s, "best", &report.best);
    suite_line(&mut s, "worst", &report.worst);
    let _ = writeln!(
        s,
        "eligible {}/{} ({:.1}%)",
        report.eligible.len(),
        report.total_suites,
        report.eligible_percent
    );
    for suite in &report.eligible {
        suite_line(&mut s, "", suite);
    }
    match budget {
        None => {}
        Some(BudgetOutcome::Feasible { suites }) => {
            let _ = writeln!(s, "within budget: {}", suites.len());
            for suite in suites {
                suite_line(&mut s, "", suite);
            }
        }
        Some(BudgetOutcome::Infeasible { relaxations }) => {
            let _ = writeln!(s, "within budget: none; increase the metrics budget");
            for r in relaxations {
                match (&r.required, &r.admits) {
                    (Some(v), Some(label)) => {
                        let _ = writeln!(
                            s,
                            "  {} {} -> {} admits {label}",
                            r.bound.as_str(),
                            r.requested,
                            v
                        );
                    }
                    _ => {
                        let _ = writeln!(
                            s,
                            "  {} {}: relaxing alone does not help",
                            r.bound.as_str(),
                            r.requested
                        );
                    }
                }
            }
        }
    }
    s
}

pub fn sweep(reports: &[SelectionReport], source: &str) -> String {
    let mut s = String::new();
    let _ = writeln!(s, "catalog {source}");
    let _ = writeln!(
        s,
        "{:>3} {:<20} {:<8} {:>8} {:<22} {:<22} {:>6}",
        "#", "weights", "priority", "ESI_t", "best", "worst", "elig%"
    );
    for (i, r) in reports.iter().enumerate() {
        let _ = writeln!(
            s,
            "{:>3} {:<20} {:<8} {:>8.5} {:<22} {:<22} {:>6.1}",
            i + 1,
            r.weights.to_string(),
            r.priority.to_string(),
            r.esi_t,
            r.best.label,
            r.worst.label,
            r.eligible_percent
        );
    }
    s
}

pub fn table1(diff: &Table1Diff) -> String {
    let mut s = String::new();
    let _ = writeln!(
        s,
        "{:>3} {:>8} {:>8} {:>8} {:<22} {:<5} {:<22} {:<5} {:>6} {:>6}",
        "row", "ESI_t", "ours", "delta", "best", "match", "worst", "match", "pct", "ours"
    );
    let yes = |b: bool| if b { "yes" } else { "NO" };
    for r in &diff.rows {
        let _ = writeln!(
            s,
            "{:>3} {:>8.4} {:>8.4} {:>+8.4} {:<22} {:<5} {:<22} {:<5} {:>6.1} {:>6.1}",
            r.row,
            r.esi_t_published,
            r.esi_t_computed,
            r.esi_t_delta,
            r.best_computed,
            yes(r.best_match),
            r.worst_computed,
            yes(r.worst_match),
            r.pct_published,
            r.pct_computed
        );
    }
    let n = diff.rows.len();
    let _ = writeln!(s, "max |ESI_t delta| {:.4}", diff.max_abs_esi_t_delta);
    let _ = writeln!(
        s,
        "best matches {}/{n}, worst matches {}/{n}, eligible% within 5 points {}/{n}",
        diff.best_matches, diff.worst_matches, diff.pct_within_5
    );
    for r in diff.best_mismatches() {
        let _ = writeln!(
            s,
            "row {} best: published {}, computed {}",
            r.row, r.best_published, r.best_computed
        );
    }
    for r in diff.worst_mismatches() {
        let _ = writeln!(
            s,
            "row {} worst: published {}, computed {}",
            r.row, r.worst_published, r.worst_computed
        );
    }
    s
}

fn result_block(s: &mut String, result: &SimResult) {
    let _ = writeln!(
        s,
        "{}: makespan {} ns",
        result.config.topology, result.makespan
    );
    for (resource, u) in &result.utilization {
        let _ = writeln!(s, "  {resource:<12} {:>6.1}%", u * 100.0);
    }
    if let Some(worst) = result
        .latencies
        .iter()
        .max_by_key(|l| (l.latency, std::cmp::Reverse(l.packet_id)))
    {
        let _ = writeln!(
            s,
            "  max latency {} ns ({} packet {})",
            worst.latency, worst.direction, worst.packet_id
        );
    }
}

fn workload_line(s: &mut String, result: &SimResult, suite: Option<&str>) {
    let c = &result.config;
    let _ = write!(
        s,
        "{}+{} packets of {} bits, bus {} Gbps, engine {} Gbps",
        c.forward_packets, c.reverse_packets, c.packet_size_bits, c.bus_gbps, c.suite_gbps
    );
    if let Some(label) = suite {
        let _ = write!(s, " ({label})");
    }
    s.push('\n');
}

pub fn simulation(result: &SimResult, suite: Option<&str>) -> String {
    let mut s = String::new();
    workload_line(&mut s, result, suite);
    result_block(&mut s, result);
    s
}

pub fn comparison(cmp: &TopologyComparison, suite: Option<&str>) -> String {
    let mut s = String::new();
    if let Some(first) = cmp.results.first() {
        workload_line(&mut s, first, suite);
    }
    for r in &cmp.results {
        result_block(&mut s, r);
    }
    let _ = writeln!(s, "ranking:");
    for (i, entry) in cmp.ranking.iter().enumerate() {
        let _ = writeln!(s, "  {}. {} ({} ns)", i + 1, entry.topology, entry.makespan);
    }
    s
}
