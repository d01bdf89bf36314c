#![no_main]

use libfuzzer_sys::fuzz_target;
use runslab_core::RunPolynomial;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else {
        return;
    };
    let Ok(p) = RunPolynomial::from_json(text) else {
        return;
    };
    let encoded = p.to_json();
    let back = RunPolynomial::from_json(&encoded).unwrap();
    assert_eq!(back, p);
    assert_eq!(back.to_json(), encoded);
    // arithmetic may refuse with an error but must not panic
    let _ = p.eval_at(-1);
    let _ = p.multiplicity_at_minus_one();
    if let Ok(q) = p.mul_binomial_power(2) {
        assert_eq!(q.div_binomial_power(2).unwrap(), p);
    }
});
