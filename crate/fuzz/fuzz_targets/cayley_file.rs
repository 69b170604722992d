#![no_main]

use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    if let Ok(group) = gia_core::text::parse_cayley_file(text) {
        // Anything accepted is a genuine group: render round-trips.
        let rendered = gia_core::text::render_cayley_file(&group).unwrap();
        let back = gia_core::text::parse_cayley_file(&rendered).unwrap();
        assert_eq!(back, group);
    }
});
