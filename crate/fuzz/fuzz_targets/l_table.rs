#![no_main]

use libfuzzer_sys::fuzz_target;
use shiftspec::spec_props::SublinearL;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    if let Ok(l) = SublinearL::parse_table(text) {
        assert!(l.floor() >= 1);
        for n in 0..64 {
            assert!(l.at(n) <= l.at(n + 1));
        }
    }
});
