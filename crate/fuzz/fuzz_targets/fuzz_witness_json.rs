#![no_main]

use libfuzzer_sys::fuzz_target;
use systolic::search::{witness_verify, TraceWitness};

// Witnesses round-trip through the JSON table output; decoding untrusted
// bytes and verifying the decoded matrix must never panic.
fuzz_target!(|data: &[u8]| {
    if let Ok(w) = serde_json::from_slice::<TraceWitness>(data) {
        let _ = witness_verify(&w);
    }
});
