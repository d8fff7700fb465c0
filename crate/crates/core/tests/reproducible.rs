use cylrsk_core::verify::{run_all, SuiteConfig};

#[test]
fn same_seed_same_report() {
    let cfg = SuiteConfig::quick(42);
    let a = serde_json::to_string(&run_all(&cfg)).unwrap();
    let b = serde_json::to_string(&run_all(&cfg)).unwrap();
    assert_eq!(a, b);
}
