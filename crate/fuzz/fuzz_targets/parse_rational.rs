#![no_main]

use libfuzzer_sys::fuzz_target;
use valprime::arith::parse_rational;
use valprime::arith::rational::to_decimal;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else {
        return;
    };
    if let Ok(q) = parse_rational(text) {
        assert!(q.denom() > &0.into());
        assert_eq!(parse_rational(&q.to_string()).unwrap(), q);
        let _ = to_decimal(&q, 6);
    }
});
