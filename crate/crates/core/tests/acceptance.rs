use fatpoints::verify::{run_suite, SuiteConfig};

#[test]
fn acceptance_criteria() {
    let report = run_suite(&SuiteConfig::default());
    for outcome in &report.outcomes {
        println!("{}", outcome.line());
    }
    println!("{} initial sequences computed", report.sequences);
    assert_eq!(report.outcomes.len(), 10);
    let failed: Vec<u32> = report.outcomes.iter().filter(|o| !o.passed).map(|o| o.id).collect();
    assert!(failed.is_empty(), "failed criteria: {failed:?}");
}
