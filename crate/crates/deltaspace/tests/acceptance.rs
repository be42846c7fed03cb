//! Runs every acceptance criterion and prints one line per verdict.
//! Set DELTASPACE_INCLUDE_LARGE=1 to also exercise the rank-4 types.

use deltaspace::verify::{run_all, VerifyOptions};

#[test]
fn acceptance() {
    let opts = VerifyOptions {
        include: if std::env::var("DELTASPACE_INCLUDE_LARGE").is_ok() {
            vec!["A4".into(), "D4".into()]
        } else {
            Vec::new()
        },
        seed: None,
    };
    let results = run_all(&opts);
    let mut failed = Vec::new();
    for r in &results {
        println!(
            "{}: {} ({:.2?}) - {}",
            r.id,
            if r.pass { "pass" } else { "FAIL" },
            r.duration,
            r.details
        );
        if !r.pass {
            failed.push(r.id.clone());
        }
    }
    assert!(failed.is_empty(), "failing criteria: {failed:?}");
}
