#![no_main]

use libfuzzer_sys::fuzz_target;
use negric::config::Config;

fuzz_target!(|data: &[u8]| {
    let Ok(s) = std::str::from_utf8(data) else { return };
    if let Ok(c) = Config::parse(s) {
        c.validate().expect("parsed configs are valid");
    }
});
