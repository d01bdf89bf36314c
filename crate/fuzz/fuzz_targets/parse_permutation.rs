#![no_main]

use libfuzzer_sys::fuzz_target;
use runslab_core::{parse_permutation, Permutation};

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else {
        return;
    };
    let Ok(p) = parse_permutation(text) else {
        return;
    };
    assert_eq!(p.to_string().parse::<Permutation>().unwrap(), p);
    let r = p.run_count().get() as usize;
    assert!(r >= 1 && (p.len() < 2 || r < p.len()));
    for i in 1..=p.len() {
        let q = p.apply_c(i).unwrap();
        assert_eq!(q.apply_c(i).unwrap(), p);
        assert_eq!(
            p.run_change(i).unwrap(),
            q.run_count().get() as i32 - p.run_count().get() as i32
        );
    }
});
