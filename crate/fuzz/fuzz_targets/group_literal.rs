#![no_main]

use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    if let Ok(group) = gia_core::text::parse_group_literal(text) {
        // Canonical rendering must parse back to the same group.
        let lit = gia_core::text::render_group_literal(&group).unwrap();
        let back = gia_core::text::parse_group_literal(&lit).unwrap();
        assert_eq!(back, group);
    }
});
