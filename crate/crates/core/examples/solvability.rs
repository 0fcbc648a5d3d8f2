//! G(q) is solvable: depth-k commutator trees collapse to the identity once
//! 2^(k-1) >= e*phi(q) + 1. A non-identity tree one level lower shows how
//! close the bound is.

use solvmat::ideal::BurnsideParams;
use solvmat::theorems::{verify_lemma8, ContextStore, SuiteConfig};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let cfg = SuiteConfig {
        solvability_samples: 20,
        witness_budget: 100,
        ..SuiteConfig::default()
    };
    let store = ContextStore::default();
    for q in [2, 3, 4, 5] {
        let p = BurnsideParams::new(q)?;
        let r = verify_lemma8(q, &cfg, &store)?;
        println!(
            "q={q} e*phi={} k={}: depth-k trees all I: {}  depth-{} witness: {}",
            p.bound,
            r.bound_k,
            r.upper_bound_passed,
            r.bound_k - 1,
            r.witness_display()
        );
    }
    Ok(())
}
