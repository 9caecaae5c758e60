//! Preferential cipher-suite selection.
//!
//! Every `(encryption, hash, key exchange)` triple is composed additively from
//! the catalog, scored by the weighted normalized efficient system index
//!
//! ```text
//! ESI = w_p (1 - P / P_max) + w_t (T / T_max) + w_r (1 - R / R_max)
//! ```
//!
//! with maxima taken over the composed suites, and compared against the cut-off
//! `ESI_t`, the same expression at the mean composed `P`, `T` and `R`. Suites at
//! or above the cut-off are eligible.

mod budget;
mod select;
mod space;
pub mod table1;
mod weights;

pub use budget::{filter_by_budget, BudgetBound, BudgetOutcome, MetricBudget, Relaxation};
pub use select::{
    esi, esi_threshold, select, select_in, sweep, SelectionReport, SuiteComposition,
    ELIGIBILITY_EPSILON,
};
pub use space::{
    compose_space, labels_match, normalize_name, ComposedMetrics, CompositionSpace, MetricTriple,
    SuiteIndex, ThroughputComposition,
};
pub use weights::{
    load_weights, table1_weights, PriorityClass, WeightVector, TABLE1_WEIGHTS_CSV, WEIGHTS_HEADER,
};
