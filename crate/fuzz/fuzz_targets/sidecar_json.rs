#![no_main]

use covox::oscillator::GridDescriptor;
use covox_cli::{read_json, render_json, WavefunctionSidecar};
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    if let Ok(sidecar) = read_json::<WavefunctionSidecar>(text) {
        let back: WavefunctionSidecar = read_json(&render_json(&sidecar)).unwrap();
        assert_eq!(back.descriptor(), sidecar.descriptor());
    }
    let _ = read_json::<GridDescriptor>(text);
});
