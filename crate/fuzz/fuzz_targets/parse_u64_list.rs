#![no_main]

use libfuzzer_sys::fuzz_target;
use valprime::parse::{parse_u64_list, MAX_LIST_LEN};

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else {
        return;
    };
    if let Ok(list) = parse_u64_list(text) {
        assert!((list.len() as u64) <= MAX_LIST_LEN);
    }
});
