#![no_main]

use libfuzzer_sys::fuzz_target;
use shiftspec::shift::text::parse_sft;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    let Ok(x) = parse_sft(text) else { return };
    // printed form parses back to the same language
    let y = parse_sft(&x.to_text()).expect("to_text output must parse");
    for n in 0..4 {
        assert_eq!(x.count_words(n), y.count_words(n));
    }
});
