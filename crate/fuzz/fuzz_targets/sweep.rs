#![no_main]

use covox::io::{parse_sweep, MAX_SWEEP_POINTS};
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    if let Ok(values) = parse_sweep(text) {
        assert!(!values.is_empty() && values.len() <= MAX_SWEEP_POINTS);
        assert!(values.iter().all(|v| v.is_finite()));
    }
});
