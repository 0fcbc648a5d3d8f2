//! At x = 1, y = t = -1 the generators become [[1,2],[0,1]] and [[1,0],[2,1]],
//! which generate a free group; no short reduced word maps to the identity.

use solvmat::group::sanov_check;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    for len in [4, 8, 10] {
        let r = sanov_check(len)?;
        println!("length <= {len}: {} words, {} trivial", r.words_checked, r.failures.len());
    }
    Ok(())
}
