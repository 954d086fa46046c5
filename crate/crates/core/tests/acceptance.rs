//! Runs every acceptance criterion at full scope and prints one line each.

use oddcong::acceptance::{run_criterion, Scope, CRITERIA, KNOWN_FAILURES};

#[test]
fn acceptance() {
    let mut unexpected = Vec::new();
    for (id, _) in CRITERIA {
        let r = run_criterion(id, Scope::Full);
        let known = KNOWN_FAILURES.contains(&id);
        println!(
            "{r} [{:.2}s]{}",
            r.elapsed.as_secs_f64(),
            if known && !r.passed { " [known failure]" } else { "" }
        );
        if r.passed == known {
            unexpected.push(r.to_string());
        }
    }
    assert!(unexpected.is_empty(), "unexpected outcomes: {unexpected:#?}");
}
