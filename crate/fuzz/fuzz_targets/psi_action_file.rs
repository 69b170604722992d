#![no_main]

use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    if text.len() > 1 << 16 {
        return;
    }
    if let Ok((k, group, n, rows)) = gia_core::text::parse_psi_action_file(text) {
        let rendered = gia_core::text::render_psi_action_file(k, &group, n, &rows).unwrap();
        let back = gia_core::text::parse_psi_action_file(&rendered).unwrap();
        assert_eq!(back.0, k);
        assert_eq!(back.3, rows);
    }
});
