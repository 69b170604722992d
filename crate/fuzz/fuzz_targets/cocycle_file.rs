#![no_main]

use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    if let Ok(c) = gia_core::text::parse_cocycle_file(text) {
        if c.group().order() <= 16 {
            // The validity check must be total on parsed tables.
            let _ = c.is_cocycle();
        }
        let rendered = gia_core::text::render_cocycle_file(&c).unwrap();
        let back = gia_core::text::parse_cocycle_file(&rendered).unwrap();
        assert_eq!(back, c);
    }
});
