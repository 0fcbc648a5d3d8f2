//! Every element of the free metabelian group F(R) is uI + N with N of a fixed
//! shape; powers and products act on (u, lambda1, lambda2) in closed form.

use solvmat::group::{basic_commutator, power_closed_form, product_normal_form_rule, word_normal_form, GroupWord};
use solvmat::matrix::{CoeffRing, LaurentRing};
use solvmat::group::eval_in;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let ring = LaurentRing::metabelian();
    for s in ["a", "b", "abAB", "aab", "BabA"] {
        let w = GroupWord::parse(s)?;
        let nf = word_normal_form(&w)?;
        println!("{s:>5}: u = {}, lambda1 = {}, lambda2 = {}", nf.u.to_poly(), nf.lambda1, nf.lambda2);
    }

    let w = GroupWord::parse("abbA")?;
    let nf = word_normal_form(&w)?;
    let m = eval_in(&ring, &w);
    let cubed = ring.mat_pow(&m, 3);
    println!("power formula agrees for ({w})^3: {}", power_closed_form(&nf, 3) == cubed);

    let v = GroupWord::parse("BAb")?;
    let rule = product_normal_form_rule(&nf, &word_normal_form(&v)?);
    println!("product rule agrees for {w} * {v}: {}", rule == word_normal_form(&w.concat(&v))?);

    // [M2, M1, M2^b, M1^a] has lambdas divisible by (1-x)^a (1-y)^(b+1)
    for (a, b) in [(0, 0), (1, 0), (0, 2), (2, 1)] {
        let (word, nf) = basic_commutator(a, b);
        println!("a={a} b={b}: {} letters, lambda1 = {}", word.len(), nf.lambda1);
    }
    Ok(())
}
