#![no_main]

use libfuzzer_sys::fuzz_target;
use lie_homology::cli::Report;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    if let Ok(report) = Report::from_json(text) {
        let again = Report::from_json(&report.to_json()).expect("emitted report parses");
        assert_eq!(again, report);
        let _ = report.to_text();
    }
});
