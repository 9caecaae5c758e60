#![no_main]

use libfuzzer_sys::fuzz_target;
use nsp_core::catalog::default_catalog;
use nsp_core::preferential::table1::{load_published, reproduce};

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else {
        return;
    };
    if let Ok(rows) = load_published(text) {
        let diff = reproduce(&default_catalog(), &rows);
        assert_eq!(diff.rows.len(), rows.len());
    }
});
