#![no_main]

use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    if let Ok(m) = lrcx_cli::parse_bytes(data) {
        let text = lrcx_cli::render(&m);
        let again = lrcx_cli::parse(&text).expect("rendered matrices parse");
        assert_eq!(again, m);
        assert_eq!(lrcx_cli::render(&again), text);
    }
});
