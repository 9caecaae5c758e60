#![no_main]

use libfuzzer_sys::fuzz_target;
use nsp_core::sim::{run_simulation, SimConfig};

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else {
        return;
    };
    let Ok(mut config) = SimConfig::from_toml_str(text) else {
        return;
    };
    // Keep runs short; the parser and validation are the target here.
    config.forward_packets = config.forward_packets.min(64);
    config.reverse_packets = config.reverse_packets.min(64);
    if let Ok(result) = run_simulation(&config) {
        assert!(result
            .events
            .iter()
            .all(|e| e.start >= e.ready && e.end > e.start));
    }
});
