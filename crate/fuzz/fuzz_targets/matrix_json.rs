#![no_main]

use covox::little_group::{classify, equi_diagonalize, DEFAULT_CLASSIFY_TOL, DET_TOLERANCE};
use covox_cli::read_matrix;
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    if let Ok(m) = read_matrix(text) {
        assert!((m.det() - 1.0).abs() < DET_TOLERANCE);
        let _ = classify(&m, DEFAULT_CLASSIFY_TOL);
        let _ = equi_diagonalize(&m);
        assert_eq!(covox::Unimodular2::from_json(&m.to_json()).unwrap(), m);
    }
});
