#![no_main]

use libfuzzer_sys::fuzz_target;
use negric::metric::MetricLieAlgebra;

fuzz_target!(|data: &[u8]| {
    let Ok(s) = std::str::from_utf8(data) else { return };
    if let Ok(alg) = MetricLieAlgebra::from_json_str(s, 1e-9) {
        let again = serde_json::to_string(&alg.to_json()).expect("serializable");
        let back = MetricLieAlgebra::from_json_str(&again, 1e-9).expect("round trip");
        assert_eq!(alg.dim(), back.dim());
    }
});
