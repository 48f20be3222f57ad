#![no_main]

use libfuzzer_sys::fuzz_target;
use shiftspec::embedder::{parse_code_table, verify_selector};

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    let Ok(code) = parse_code_table(text) else { return };
    let again = parse_code_table(&code.to_table()).expect("to_table output must parse");
    assert_eq!(again.to_table(), code.to_table());
    if code.transducer.state_count() <= 64 {
        let _ = verify_selector(&code);
    }
});
