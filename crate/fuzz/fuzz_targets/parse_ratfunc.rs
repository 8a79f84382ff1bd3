#![no_main]

use libfuzzer_sys::fuzz_target;
use springer_stable::exactalg::{parse_ratfunc, render_ratfunc, VarMode};
use springer_stable::weyl::RootSystem;

fuzz_target!(|data: &[u8]| {
    let Ok(s) = std::str::from_utf8(data) else { return };
    if s.len() > 512 {
        return;
    }
    let rs = RootSystem::build('A', 2).unwrap();
    for mode in [VarMode::KTheory, VarMode::Cohomology] {
        if let Ok(f) = parse_ratfunc(&rs, mode, s) {
            // parse-render-parse must be stable
            let rendered = render_ratfunc(&rs, mode, &f);
            let again = parse_ratfunc(&rs, mode, &rendered).expect("rendered form must parse");
            assert_eq!(again, f);
        }
    }
});
