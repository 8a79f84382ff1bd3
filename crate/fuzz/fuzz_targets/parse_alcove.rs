#![no_main]

use libfuzzer_sys::fuzz_target;
use springer_stable::weyl::RootSystem;

fuzz_target!(|data: &[u8]| {
    let Ok(s) = std::str::from_utf8(data) else { return };
    if s.len() > 256 {
        return;
    }
    let rs = RootSystem::build('A', 2).unwrap();
    if let Ok(alc) = rs.parse_alcove(s) {
        // accepted alcoves must decompose after acting on an interior point
        let p = rs.alcove_interior_point(&alc);
        let back = rs.decompose_alcove(&p).unwrap();
        assert_eq!(back.x, alc.x);
        assert_eq!(back.mu, alc.mu);
    }
});
