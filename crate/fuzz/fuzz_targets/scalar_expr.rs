#![no_main]

use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    // Keep pathological inputs affordable: the grammar itself caps the
    // root order, but huge integers are legal and slow.
    if text.len() > 512 {
        return;
    }
    if let Ok(v) = gia_core::text::parse_scalar(text) {
        let rendered = gia_core::text::render_scalar(&v);
        let back = gia_core::text::parse_scalar(&rendered).unwrap();
        assert_eq!(back, v);
    }
});
