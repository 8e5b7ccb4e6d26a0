#![no_main]

use libfuzzer_sys::fuzz_target;
use lie_homology::partitions::Partition;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    if let Ok(p) = text.parse::<Partition>() {
        // Accepted input is weakly decreasing and positive, and prints back to itself.
        assert!(p.parts().windows(2).all(|w| w[0] >= w[1]));
        assert!(p.parts().iter().all(|&x| x > 0));
        assert_eq!(p.to_string().parse::<Partition>().unwrap(), p);
    }
});
