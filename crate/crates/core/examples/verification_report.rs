//! Running a suite programmatically and emitting its JSON record.

use solvmat::theorems::{run_suite, ContextStore, SuiteConfig, SuiteId, SuiteReport};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let cfg = SuiteConfig {
        samples: 50,
        ..SuiteConfig::default()
    };
    let store = ContextStore::default();
    for (id, q) in [(SuiteId::Appendix, None), (SuiteId::Theorem2, Some(5)), (SuiteId::Theorem2, Some(4))] {
        let report = run_suite(id, q, &cfg, &store)?;
        if let SuiteReport::Verification(v) = &report {
            eprintln!("{id} {q:?}: {} checks, {} failures", v.checks, v.failure_count);
        }
        println!("{}", serde_json::to_string(&report)?);
    }
    Ok(())
}
