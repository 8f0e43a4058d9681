#![no_main]

use libfuzzer_sys::fuzz_target;

// The range parser takes arbitrary CLI input; it must reject garbage with an
// error, never panic or overflow.
fuzz_target!(|data: &[u8]| {
    if let Ok(s) = std::str::from_utf8(data) {
        if let Ok((lo, hi)) = systolic::table::parse_level_range(s) {
            assert!(2 <= lo && lo <= hi);
        }
    }
});
