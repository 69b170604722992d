#![no_main]

use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    // Optional NUL separator carries an inline cocycle body.
    let (spec_text, sigma_body) = match text.split_once('\0') {
        Some((a, b)) => (a, Some(b)),
        None => (text, None),
    };
    if let Ok(spec) = gia_core::text::parse_matrix_spec(spec_text) {
        let _ = spec.resolve(sigma_body);
    }
});
