#![no_main]

use libfuzzer_sys::fuzz_target;
use nsp_core::catalog::load_catalog;
use nsp_core::preferential::{select, WeightVector};

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else {
        return;
    };
    if let Ok(catalog) = load_catalog(text) {
        // Anything that validates must round-trip and be selectable.
        assert_eq!(load_catalog(&catalog.to_csv()).unwrap(), catalog);
        let report = select(&catalog, &WeightVector::equal());
        assert!(!report.eligible.is_empty());
    }
});
