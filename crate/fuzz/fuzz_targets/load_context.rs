#![no_main]

use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    if let Ok(text) = std::str::from_utf8(data) {
        if let Ok(f) = ctpair::io::load_str(text) {
            // Anything that loads must also serialize.
            let _ = f.to_json();
        }
    }
});
