#![no_main]

use libfuzzer_sys::fuzz_target;
use springer_stable::weyl::RootSystem;

fuzz_target!(|data: &[u8]| {
    let Ok(s) = std::str::from_utf8(data) else { return };
    if s.len() > 256 {
        return;
    }
    let rs = RootSystem::build('B', 2).unwrap();
    if let Ok(w) = rs.parse_word(s) {
        // canonical form round-trips
        assert_eq!(rs.parse_word(&rs.word_string(w)).unwrap(), w);
    }
    let _ = rs.parse_chamber(s);
});
