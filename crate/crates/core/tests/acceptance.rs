use std::io::Write;

use dunkl_core::acceptance::{run_criteria, Options};

#[test]
fn all_criteria() {
    let results = run_criteria(None, &Options::default());
    assert_eq!(results.len(), 15);
    let mut out = String::from("\n");
    for r in &results {
        out.push_str(&r.line());
        out.push('\n');
    }
    let passed = results.iter().filter(|r| r.passed).count();
    out.push_str(&format!("{passed}/{} criteria passed\n", results.len()));
    // bypass the harness capture so the lines show up in plain `cargo test`
    std::io::stdout().write_all(out.as_bytes()).unwrap();
    let failed: Vec<_> = results
        .iter()
        .filter(|r| !r.passed)
        .map(|r| r.slug)
        .collect();
    assert!(failed.is_empty(), "failing criteria: {failed:?}");
}
