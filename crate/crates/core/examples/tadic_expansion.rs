//! Expansion in powers of (t - 1). Elements of the k-th derived group start
//! at (t-1)^(2^(k-2)) and all their coefficients lie in Sigma^(2^(k-1)).

use solvmat::group::{eval_in, sample_rng, CommutatorTree, GroupWord};
use solvmat::matrix::LaurentRing;
use solvmat::tadic::{derived_layer_of_tree, formal_coefficients, t1_valuation, vanishes_mod_sigma};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let g = eval_in(&LaurentRing::free(), &GroupWord::parse("abAB")?);
    println!("[a, b] = {g}");
    println!("(t-1)-adic valuation {}", t1_valuation(&g));
    for (i, a) in formal_coefficients(&g, 3).iter().enumerate() {
        println!("A_{i} = {a}");
    }
    println!("coefficients of [a, b] - I in Sigma: {}", vanishes_mod_sigma(&g, 1));

    for k in 2..=4 {
        let tree = CommutatorTree::random(&mut sample_rng(1, k as u64), k, 3);
        let check = derived_layer_of_tree(&tree, k)?;
        println!(
            "k={k}: valuation {} (need {}), coefficients in Sigma^{}: {}  [{} letters]",
            check.valuation,
            check.required_valuation,
            check.sigma_power,
            check.sigma_ok,
            tree.to_word().len()
        );
    }
    Ok(())
}
