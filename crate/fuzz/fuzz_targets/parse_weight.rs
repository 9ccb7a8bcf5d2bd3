#![no_main]

use libfuzzer_sys::fuzz_target;
use negric::rootsys::parse_coords;

fuzz_target!(|data: &[u8]| {
    let Ok(s) = std::str::from_utf8(data) else { return };
    if let Ok(w) = parse_coords(s) {
        assert!(!w.is_empty());
        let text: Vec<String> = w.iter().map(|a| a.to_string()).collect();
        assert_eq!(parse_coords(&text.join(",")).unwrap(), w);
    }
});
