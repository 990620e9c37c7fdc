#![no_main]

use libfuzzer_sys::fuzz_target;
use valprime::Limits;

fuzz_target!(|data: &[u8]| {
    if let Ok(text) = std::str::from_utf8(data) {
        let _ = Limits::from_toml(text);
    }
});
