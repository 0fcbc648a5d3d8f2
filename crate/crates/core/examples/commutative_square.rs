//! Two routes from the free group to F(S): set t = 1 and reduce the
//! coefficients, or reduce first and set t = 1 afterwards.

use solvmat::group::{commutative_square_check, eval_word, GroupContext, GroupWord};
use solvmat::ideal::SContext;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let ctx = SContext::new(3)?;
    for s in ["b", "abAB", "bbaBAAb", "aBabbAbA"] {
        let w = GroupWord::parse(s)?;
        println!("{s:>9}: square commutes {}", commutative_square_check(&w, &ctx));
    }
    let w = GroupWord::parse("ab")?;
    println!("ab over S(3)[t^±1]:\n{}", eval_word(&w, &GroupContext::ST(ctx.clone())));
    println!("ab over S(3):\n{}", eval_word(&w, &GroupContext::S(ctx)));
    Ok(())
}
