#![no_main]

use libfuzzer_sys::fuzz_target;
use negric::rootsys::SemisimpleType;

fuzz_target!(|data: &[u8]| {
    let Ok(s) = std::str::from_utf8(data) else { return };
    if let Ok(t) = s.parse::<SemisimpleType>() {
        let back: SemisimpleType = t.to_string().parse().expect("display output parses");
        assert_eq!(t, back);
    }
});
