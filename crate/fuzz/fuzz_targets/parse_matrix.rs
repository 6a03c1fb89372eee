#![no_main]

use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    if let Err(e) = lrcx_cli::parse_bytes(data) {
        assert!(e.line >= 1);
    }
});
