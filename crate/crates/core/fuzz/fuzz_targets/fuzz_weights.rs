#![no_main]

use libfuzzer_sys::fuzz_target;
use nsp_core::preferential::{load_weights, WeightVector};

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else {
        return;
    };
    let _ = text.parse::<WeightVector>();
    if let Ok(list) = load_weights(text) {
        for w in list {
            assert!(w.as_array().iter().all(|x| x.is_finite() && *x >= 0.0));
        }
    }
});
