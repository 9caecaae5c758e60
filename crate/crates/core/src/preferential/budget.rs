use serde::{Deserialize, Serialize};

use super::select::{SelectionReport, SuiteComposition};
use crate::error::BudgetError;

/// User limits on composed suite metrics. Absent bounds are unconstrained.
#[derive(Debug, Clone, Copy, Default, PartialEq, Serialize, Deserialize)]
pub struct MetricBudget {
    pub max_power_mw: Option<f64>,
    pub min_throughput_gbps: Option<f64>,
    pub max_slices: Option<u64>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum BudgetBound {
    MaxPower,
    MinThroughput,
    MaxSlices,
}

impl BudgetBound {
    pub fn as_str(self) -> &'static str {
        match self {
            BudgetBound::MaxPower => "max_power_mw",
            BudgetBound::MinThroughput => "min_throughput_gbps",
            BudgetBound::MaxSlices => "max_slices",
        }
    }
}

/// The smallest change to one bound that admits at least one eligible suite
/// while every other bound stays as requested.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Relaxation {
    pub bound: BudgetBound,
    pub requested: f64,
    /// `None` when relaxing this bound alone cannot help because the other
    /// bounds already exclude every eligible suite.
    pub required: Option<f64>,
    /// Suite that the relaxed bound would admit.
    pub admits: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(tag = "status", rename_all = "snake_case")]
pub enum BudgetOutcome {
    Feasible {
        suites: Vec<SuiteComposition>,
    },
    /// No eligible suite meets the budget; the user has to raise it.
    Infeasible {
        relaxations: Vec<Relaxation>,
    },
}

impl MetricBudget {
    pub fn is_vacuous(&self) -> bool {
        self.max_power_mw.is_none()
            && self.min_throughput_gbps.is_none()
            && self.max_slices.is_none()
    }

    fn validate(&self) -> Result<(), BudgetError> {
        if self.is_vacuous() {
            return Err(BudgetError::Vacuous);
        }
        for (name, value) in [
            ("max_power_mw", self.max_power_mw),
            ("min_throughput_gbps", self.min_throughput_gbps),
        ] {
            if let Some(v) = value {
                if !(v.is_finite() && v >= 0.0) {
                    return Err(BudgetError::InvalidBound { name, value: v });
                }
            }
        }
        Ok(())
    }

    fn admits_except(&self, suite: &SuiteComposition, skip: Option<BudgetBound>) -> bool {
        let power = skip == Some(BudgetBound::MaxPower)
            || self.max_power_mw.is_none_or(|b| suite.power_mw <= b);
        let throughput = skip == Some(BudgetBound::MinThroughput)
            || self
                .min_throughput_gbps
                .is_none_or(|b| suite.throughput_gbps >= b);
        let slices = skip == Some(BudgetBound::MaxSlices)
            || self.max_slices.is_none_or(|b| suite.slices <= b);
        power && throughput && slices
    }

    pub fn admits(&self, suite: &SuiteComposition) -> bool {
        self.admits_except(suite, None)
    }

    fn present_bounds(&self) -> Vec<(BudgetBound, f64)> {
        let mut out = Vec::new();
        if let Some(v) = self.max_power_mw {
            out.push((BudgetBound::MaxPower, v));
        }
        if let Some(v) = self.min_throughput_gbps {
            out.push((BudgetBound::MinThroughput, v));
        }
        if let Some(v) = self.max_slices {
            out.push((BudgetBound::MaxSlices, v as f64));
        }
        out
    }
}

/// Restricts the report's eligible suites to those inside `budget`.
pub fn filter_by_budget(
    report: &SelectionReport,
    budget: &MetricBudget,
) -> Result<BudgetOutcome, BudgetError> {
    budget.validate()?;
    let suites: Vec<SuiteComposition> = report
        .eligible
        .iter()
        .filter(|s| budget.admits(s))
        .cloned()
        .collect();
    if !suites.is_empty() {
        return Ok(BudgetOutcome::Feasible { suites });
    }

    let relaxations = budget
        .present_bounds()
        .into_iter()
        .map(|(bound, requested)| {
            let candidates = report
                .eligible
                .iter()
                .filter(|s| budget.admits_except(s, Some(bound)));
            // Eligible order is by descending ESI, so strict comparisons keep
            // the highest-ranked suite among equals.
            let mut pick: Option<(&SuiteComposition, f64)> = None;
            for s in candidates {
                let value = match bound {
                    BudgetBound::MaxPower => s.power_mw,
                    BudgetBound::MinThroughput => s.throughput_gbps,
                    BudgetBound::MaxSlices => s.slices as f64,
                };
                let better = match (bound, pick) {
                    (_, None) => true,
                    (BudgetBound::MinThroughput, Some((_, cur))) => value > cur,
                    (_, Some((_, cur))) => value < cur,
                };
                if better {
                    pick = Some((s, value));
                }
            }
            Relaxation {
                bound,
                requested,
                required: pick.map(|(_, v)| v),
                admits: pick.map(|(s, _)| s.label.clone()),
            }
        })
        .collect();
    Ok(BudgetOutcome::Infeasible { relaxations })
}
