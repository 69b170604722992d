#![no_main]

use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    if text.len() > 4096 {
        return;
    }
    if let Ok(m) = gia_core::text::parse_ut_matrix_file(text) {
        let rendered = gia_core::text::render_ut_matrix_file(&m);
        let back = gia_core::text::parse_ut_matrix_file(&rendered).unwrap();
        assert_eq!(back, m);
    }
});
