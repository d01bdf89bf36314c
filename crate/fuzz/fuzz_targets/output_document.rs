#![no_main]

use libfuzzer_sys::fuzz_target;
use runslab_cli::document::OutputDocument;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else {
        return;
    };
    let Ok(doc) = OutputDocument::from_json(text) else {
        return;
    };
    let encoded = doc.to_json();
    let back = OutputDocument::from_json(&encoded).unwrap();
    assert_eq!(back, doc);
    assert_eq!(back.to_json(), encoded);
});
