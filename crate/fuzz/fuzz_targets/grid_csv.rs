#![no_main]

use covox::WaveGrid;
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    if let Ok(grid) = WaveGrid::read_csv(data) {
        let mut out = Vec::new();
        grid.write_csv(&mut out).unwrap();
        let again = WaveGrid::read_csv(out.as_slice()).expect("own output parses");
        assert_eq!(again.samples(), grid.samples());
    }
});
