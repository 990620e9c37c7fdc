#![no_main]

use libfuzzer_sys::fuzz_target;
use valprime::parse::parse_residues;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else {
        return;
    };
    if let Ok(v) = parse_residues(text) {
        let shown = v.iter().map(u32::to_string).collect::<Vec<_>>().join(",");
        assert_eq!(parse_residues(&format!("({shown})")).unwrap(), v);
    }
});
