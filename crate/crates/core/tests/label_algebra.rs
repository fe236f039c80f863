use parity_ns::selftest::symtype_suite;

#[test]
fn exhaustive_label_algebra() {
    let checks = symtype_suite();
    for c in &checks {
        println!("{:<45} {:>9} cases {:>5} failures {:?}", c.name, c.cases, c.failures, c.example);
    }
    assert!(checks.iter().all(|c| c.passed()));
}
