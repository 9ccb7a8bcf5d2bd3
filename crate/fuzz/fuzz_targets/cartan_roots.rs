#![no_main]

use libfuzzer_sys::fuzz_target;
use negric::rootsys::positive_roots_from_cartan;

// Bytes decode to a generalized Cartan matrix of rank 1..=4: twos on the
// diagonal, off-diagonal entries in {0, -1, -2, -3}.
fuzz_target!(|data: &[u8]| {
    let Some((&head, rest)) = data.split_first() else { return };
    let n = 1 + (head % 4) as usize;
    let mut it = rest.iter().copied().chain(std::iter::repeat(0));
    let m: Vec<Vec<i64>> =
        (0..n).map(|i| (0..n).map(|j| if i == j { 2 } else { -((it.next().unwrap() % 4) as i64) }).collect()).collect();
    if let Ok(roots) = positive_roots_from_cartan(&m, 256) {
        assert!(roots.len() >= n && roots.len() <= 256);
    }
});
