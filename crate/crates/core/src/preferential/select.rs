use serde::Serialize;

use super::space::{compose_space, ComposedMetrics, CompositionSpace, SuiteIndex};
use super::weights::{PriorityClass, WeightVector};
use crate::catalog::MetricCatalog;

/// Absolute slack on the `esi >= esi_t` comparison.
///
/// `esi_t` is the mean of all cell scores, computed through a different
/// summation order; without slack a space whose cells all score the same can
/// lose every cell to a one-ulp rounding difference.
pub const ELIGIBILITY_EPSILON: f64 = 1e-12;

/// One scored suite.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SuiteComposition {
    pub label: String,
    #[serde(flatten)]
    pub index: SuiteIndex,
    pub power_mw: f64,
    pub throughput_gbps: f64,
    pub slices: u64,
    pub esi: f64,
}

/// Outcome of scoring one weight vector over a composition space.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SelectionReport {
    pub weights: WeightVector,
    pub priority: PriorityClass,
    pub esi_t: f64,
    pub best: SuiteComposition,
    pub worst: SuiteComposition,
    pub eligible_percent: f64,
    pub total_suites: usize,
    /// Suites with `esi >= esi_t`, by descending ESI then ascending index.
    pub eligible: Vec<SuiteComposition>,
}

/// Weighted normalized ESI of one composed suite.
pub fn esi(cell: &ComposedMetrics, space: &CompositionSpace<'_>, weights: &WeightVector) -> f64 {
    score(
        weights,
        cell.power_mw,
        cell.throughput_gbps,
        cell.slices as f64,
        space,
    )
}

/// Cut-off `ESI_t`: the ESI formula evaluated at the mean composed metrics.
pub fn esi_threshold(space: &CompositionSpace<'_>, weights: &WeightVector) -> f64 {
    let avg = space.avg();
    score(
        weights,
        avg.power_mw,
        avg.throughput_gbps,
        avg.slices,
        space,
    )
}

fn score(
    weights: &WeightVector,
    power: f64,
    throughput: f64,
    slices: f64,
    space: &CompositionSpace<'_>,
) -> f64 {
    let max = space.max();
    weights.power() * (1.0 - power / max.power_mw)
        + weights.throughput() * (throughput / max.throughput_gbps)
        + weights.resource() * (1.0 - slices / max.slices)
}

/// Scores every suite of `catalog` under `weights`.
pub fn select(catalog: &MetricCatalog, weights: &WeightVector) -> SelectionReport {
    select_in(&compose_space(catalog), weights)
}

/// [`select`] over an already composed space.
pub fn select_in(space: &CompositionSpace<'_>, weights: &WeightVector) -> SelectionReport {
    let esi_t = esi_threshold(space, weights);
    let scored: Vec<SuiteComposition> = space
        .cells()
        .iter()
        .map(|cell| SuiteComposition {
            label: space.label(cell.index),
            index: cell.index,
            power_mw: cell.power_mw,
            throughput_gbps: cell.throughput_gbps,
            slices: cell.slices,
            esi: esi(cell, space, weights),
        })
        .collect();

    // Cells arrive in lexicographic order; strict comparisons keep the lowest
    // index on ties.
    let mut best = 0;
    let mut worst = 0;
    for (i, s) in scored.iter().enumerate() {
        if s.esi > scored[best].esi {
            best = i;
        }
        if s.esi < scored[worst].esi {
            worst = i;
        }
    }

    let total_suites = scored.len();
    let best = scored[best].clone();
    let worst = scored[worst].clone();
    let mut eligible: Vec<SuiteComposition> = scored
        .into_iter()
        .filter(|s| s.esi >= esi_t - ELIGIBILITY_EPSILON)
        .collect();
    eligible.sort_by(|a, b| b.esi.total_cmp(&a.esi).then(a.index.cmp(&b.index)));

    SelectionReport {
        weights: *weights,
        priority: weights.priority(),
        esi_t,
        eligible_percent: 100.0 * eligible.len() as f64 / total_suites as f64,
        total_suites,
        best,
        worst,
        eligible,
    }
}

/// One report per weight vector, in input order.
pub fn sweep(catalog: &MetricCatalog, weight_list: &[WeightVector]) -> Vec<SelectionReport> {
    let space = compose_space(catalog);
    weight_list.iter().map(|w| select_in(&space, w)).collect()
}
