mod common;

use std::collections::BTreeSet;

use nsp_core::catalog::{
    default_catalog, load_catalog, AlgorithmClass, AlgorithmMetrics, MetricCatalog,
    DEFAULT_CATALOG_CSV,
};
use nsp_core::preferential::{
    compose_space, esi, esi_threshold, load_weights, select, select_in, ComposedMetrics,
    WeightVector,
};
use proptest::prelude::*;

use common::{naive_parse, naive_select, rel_close};

fn weights() -> impl Strategy<Value = WeightVector> {
    (0.0f64..1.0, 0.0f64..1.0, 0.0f64..1.0)
        .prop_filter("nonzero", |(a, b, c)| a + b + c > 1e-6)
        .prop_map(|(a, b, c)| {
            let s = a + b + c;
            let (p, t) = (a / s, b / s);
            WeightVector::new(p, t, (1.0 - p - t).max(0.0)).unwrap()
        })
}

fn algorithm(class: AlgorithmClass, idx: usize) -> impl Strategy<Value = AlgorithmMetrics> {
    (0.01f64..5000.0, 0.001f64..20.0, 1u64..50_000, 0.1f64..10.0).prop_map(move |(p, t, r, cp)| {
        AlgorithmMetrics::new(class, format!("{class}{idx}"), p, t, r, cp)
    })
}

fn class_list(class: AlgorithmClass) -> impl Strategy<Value = Vec<AlgorithmMetrics>> {
    (1usize..=6).prop_flat_map(move |n| (0..n).map(|i| algorithm(class, i)).collect::<Vec<_>>())
}

fn catalog() -> impl Strategy<Value = MetricCatalog> {
    (
        class_list(AlgorithmClass::Encryption),
        class_list(AlgorithmClass::Hash),
        class_list(AlgorithmClass::KeyExchange),
    )
        .prop_map(|(e, h, k)| MetricCatalog::new(e, h, k).unwrap())
}

fn scale(catalog: &MetricCatalog, power: f64, throughput: f64) -> MetricCatalog {
    let map = |list: &[AlgorithmMetrics]| {
        list.iter()
            .map(|a| AlgorithmMetrics {
                power_mw: a.power_mw * power,
                throughput_gbps: a.throughput_gbps * throughput,
                ..a.clone()
            })
            .collect::<Vec<_>>()
    };
    MetricCatalog::new(
        map(catalog.encryption()),
        map(catalog.hash()),
        map(catalog.key_exchange()),
    )
    .unwrap()
}

proptest! {
    #[test]
    fn threshold_is_mean_of_scores(c in catalog(), w in weights()) {
        let space = compose_space(&c);
        let mean = space.cells().iter().map(|cell| esi(cell, &space, &w)).sum::<f64>()
            / space.cells().len() as f64;
        let t = esi_threshold(&space, &w);
        prop_assert!((t - mean).abs() <= 1e-9 * t.abs().max(1e-12), "{} vs {}", t, mean);
        prop_assert!(!select_in(&space, &w).eligible.is_empty());
    }

    #[test]
    fn averages_decompose_by_class(c in catalog()) {
        let space = compose_space(&c);
        let mean = |class| {
            let list: &[AlgorithmMetrics] = c.list(class);
            list.iter().map(|a| a.power_mw).sum::<f64>() / list.len() as f64
        };
        let by_class: f64 = AlgorithmClass::ALL.iter().map(|&k| mean(k)).sum();
        prop_assert!(rel_close(space.avg().power_mw, by_class, 1e-9));
    }

    #[test]
    fn scores_are_bounded(c in catalog(), w in weights()) {
        let report = select(&c, &w);
        prop_assert!(report.eligible.iter().chain([&report.best, &report.worst])
            .all(|s| (0.0..=1.0).contains(&s.esi)));
        prop_assert!(report.eligible.iter().any(|s| s.index == report.best.index));
        prop_assert!(report.eligible_percent > 0.0 && report.eligible_percent <= 100.0);
    }

    #[test]
    fn cheaper_or_faster_cells_score_no_lower(
        c in catalog(), w in weights(), pick in any::<prop::sample::Index>(),
        dp in 0.0f64..1.0, dt in 0.0f64..1.0, dr in 0.0f64..1.0,
    ) {
        let space = compose_space(&c);
        let cell = *pick.get(space.cells());
        let improved = ComposedMetrics {
            power_mw: cell.power_mw * (1.0 - dp),
            throughput_gbps: cell.throughput_gbps.min(space.max().throughput_gbps)
                + dt * (space.max().throughput_gbps - cell.throughput_gbps),
            slices: cell.slices - (dr * (cell.slices - 1) as f64) as u64,
            ..cell
        };
        prop_assert!(esi(&improved, &space, &w) >= esi(&cell, &space, &w) - 1e-15);
    }

    #[test]
    fn rankings_invariant_under_unit_scaling(
        c in catalog(), w in weights(), cp in 1e-3f64..1e3, ct in 1e-3f64..1e3,
    ) {
        let a = select(&c, &w);
        let b = select(&scale(&c, cp, ct), &w);
        prop_assert_eq!(a.best.index, b.best.index);
        prop_assert_eq!(a.worst.index, b.worst.index);
        for (x, y) in a.eligible.iter().zip(&b.eligible) {
            prop_assert!((x.esi - y.esi).abs() <= 1e-9);
        }
        let ea: BTreeSet<_> = a.eligible.iter().map(|s| s.index).collect();
        let eb: BTreeSet<_> = b.eligible.iter().map(|s| s.index).collect();
        prop_assert_eq!(ea, eb);
    }

    #[test]
    fn equal_weights_are_a_third_of_unweighted(c in catalog()) {
        let space = compose_space(&c);
        let max = space.max();
        for cell in space.cells() {
            let unweighted = (1.0 - cell.power_mw / max.power_mw)
                + cell.throughput_gbps / max.throughput_gbps
                + (1.0 - cell.slices as f64 / max.slices);
            let weighted = esi(cell, &space, &WeightVector::equal());
            prop_assert!((weighted - unweighted / 3.0).abs() < 1e-12);
        }
    }

    #[test]
    fn catalog_round_trips(c in catalog()) {
        prop_assert_eq!(load_catalog(&c.to_csv()).unwrap(), c);
    }

    #[test]
    fn selection_is_deterministic(w in weights()) {
        let c = default_catalog();
        let a = serde_json::to_string(&select(&c, &w)).unwrap();
        let b = serde_json::to_string(&select(&c, &w)).unwrap();
        prop_assert_eq!(a, b);
    }

    #[test]
    fn agrees_with_naive_oracle(w in weights()) {
        let rows = naive_parse(DEFAULT_CATALOG_CSV);
        let [wp, wt, wr] = w.as_array();
        let oracle = naive_select(&rows, wp, wt, wr);
        let report = select(&default_catalog(), &w);
        prop_assert_eq!(&report.best.label, &oracle.best);
        prop_assert_eq!(&report.worst.label, &oracle.worst);
        prop_assert!(rel_close(report.esi_t, oracle.esi_t, 1e-9));
        let got: BTreeSet<String> = report.eligible.iter().map(|s| s.label.clone()).collect();
        prop_assert_eq!(got, oracle.eligible);
    }

    #[test]
    fn catalog_parser_never_panics(s in "\\PC{0,300}") {
        let _ = load_catalog(&s);
        let _ = load_weights(&s);
        let _ = nsp_core::preferential::table1::load_published(&s);
        let _ = nsp_core::sim::SimConfig::from_toml_str(&s);
    }

    #[test]
    fn catalog_parser_handles_noisy_rows(
        class in "(encryption|hash|key_exchange|x)",
        name in "[A-Za-z0-9_+ -]{0,6}",
        nums in proptest::collection::vec("(-?[0-9]{0,4}(\\.[0-9]{0,3})?|nan|inf|)", 4),
    ) {
        let doc = format!(
            "class,name,power_mw,throughput_gbps,slices,critical_path_ns\n{class},{name},{}\n",
            nums.join(",")
        );
        let _ = load_catalog(&doc);
    }
}
