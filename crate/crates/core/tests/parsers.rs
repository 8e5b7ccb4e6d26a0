//! The parser entry points used by the fuzz targets, exercised on the checked-in
//! seed corpus and on random input.

use std::path::Path;

use lie_homology::cli::{Entry, Report};
use lie_homology::partitions::Partition;
use proptest::prelude::*;

fn check_partition_text(text: &str) {
    if let Ok(p) = text.parse::<Partition>() {
        assert!(p.parts().windows(2).all(|w| w[0] >= w[1]));
        assert!(p.parts().iter().all(|&x| x > 0));
        assert_eq!(p.to_string().parse::<Partition>().unwrap(), p);
    }
}

fn check_report_text(text: &str) -> bool {
    match Report::from_json(text) {
        Ok(report) => {
            assert_eq!(Report::from_json(&report.to_json()).unwrap(), report);
            let _ = report.to_text();
            true
        }
        Err(_) => false,
    }
}

fn seeds(target: &str) -> Vec<(String, String)> {
    let dir = Path::new(env!("CARGO_MANIFEST_DIR")).join("../../fuzz/corpus").join(target);
    let mut out: Vec<(String, String)> = std::fs::read_dir(&dir)
        .unwrap_or_else(|e| panic!("{}: {e}", dir.display()))
        .map(|e| {
            let path = e.unwrap().path();
            (path.file_name().unwrap().to_string_lossy().into_owned(), std::fs::read_to_string(&path).unwrap())
        })
        .collect();
    out.sort();
    out
}

#[test]
fn partition_seed_corpus() {
    let seeds = seeds("parse_partition");
    assert!(!seeds.is_empty());
    for (name, text) in &seeds {
        check_partition_text(text);
        let ok = text.parse::<Partition>().is_ok();
        let expected = !matches!(name.as_str(), "increasing" | "zero_part");
        assert_eq!(ok, expected, "{name}");
    }
}

#[test]
fn report_seed_corpus() {
    for (name, text) in seeds("parse_report") {
        assert_eq!(check_report_text(&text), name != "bad_partition.json", "{name}");
    }
}

fn arb_partition() -> impl Strategy<Value = Partition> {
    prop::collection::vec(1usize..6, 0..6).prop_map(|mut v| {
        v.sort_unstable_by(|a, b| b.cmp(a));
        Partition::from_parts(&v)
    })
}

proptest! {
    #[test]
    fn partition_parser_never_panics(text in ".{0,24}") {
        check_partition_text(&text);
    }

    #[test]
    fn partition_parser_on_bracket_noise(text in "[\\[\\], 0-9]{0,16}") {
        check_partition_text(&text);
    }

    #[test]
    fn partition_text_round_trips(p in arb_partition()) {
        prop_assert_eq!(p.to_string().parse::<Partition>().unwrap(), p);
    }

    #[test]
    fn report_parser_never_panics(text in ".{0,64}") {
        check_report_text(&text);
    }

    #[test]
    fn reports_round_trip(
        rho in prop::option::of(arb_partition()),
        entries in prop::collection::vec((prop::option::of(arb_partition()), arb_partition(), 1u64..5), 0..4),
        big_n in 0usize..10,
        n in 0usize..10,
    ) {
        let report = Report {
            big_n,
            n,
            rho,
            model: "closed".into(),
            entries: entries.into_iter().map(|(rho, lambda, mult)| Entry { rho, lambda, mult }).collect(),
        };
        prop_assert_eq!(Report::from_json(&report.to_json()).unwrap(), report);
    }
}
