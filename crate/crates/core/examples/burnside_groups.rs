//! The matrices over S(q) at t = 1 generate the free metabelian Burnside group
//! of exponent q; for small q the group is small enough to enumerate.

use solvmat::group::{closure_size, eval_in, GroupWord};
use solvmat::ideal::SContext;
use solvmat::matrix::{CoeffRing, SRing};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    for q in [2, 3] {
        let ring = SRing::new(SContext::new(q)?);
        println!("q={q}: group order {:?}", closure_size(&ring, 1000));
    }
    let ring = SRing::new(SContext::new(4)?);
    for s in ["a", "ab", "abAB", "aabBabA"] {
        let m = eval_in(&ring, &GroupWord::parse(s)?);
        println!("q=4: ({s})^4 = I: {}", ring.is_identity(&ring.mat_pow(&m, 4)));
    }
    println!("q=4 closure within 1000 elements: {:?}", closure_size(&ring, 1000));
    Ok(())
}
