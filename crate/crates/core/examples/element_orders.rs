//! Orders in G(q) = F(S(q)[t^±1]): infinite when the exponent sum in T is
//! nonzero, otherwise a divisor of q for prime q. For proper prime powers the
//! statement is not proved, and the computation exhibits words where it fails.

use solvmat::group::{order_in_g, GroupWord};
use solvmat::ideal::SContext;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    for q in [2, 3, 5, 4, 9] {
        let ctx = SContext::new(q)?;
        println!("q = {q}");
        for s in ["a", "b", "abAB", "aabAAB", "abaB", "bbaBBA", "BBa"] {
            let w = GroupWord::parse(s)?;
            match order_in_g(&w, &ctx) {
                Ok(o) => println!("  {s:>7}: {o}"),
                Err(e) => println!("  {s:>7}: {e}"),
            }
        }
    }
    Ok(())
}
