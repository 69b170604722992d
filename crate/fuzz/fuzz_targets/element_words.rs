#![no_main]

use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    // First line picks the group, the rest is the element list.
    let (lit, words) = match text.split_once('\n') {
        Some(pair) => pair,
        None => return,
    };
    let Ok(group) = gia_core::text::parse_group_literal(lit) else { return };
    if let Ok(elems) = gia_core::text::parse_element_list(words, &group) {
        for e in elems {
            assert!(group.contains(&e));
        }
    }
});
