//! Laurent polynomials in x, y, t: parsing, arithmetic, the augmentation and
//! the power of the augmentation ideal an element lies in.

use solvmat::ring::{parse_poly, Assignment, LaurentPoly};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let a = &LaurentPoly::one() - &LaurentPoly::x();
    let b = &LaurentPoly::one() - &LaurentPoly::y();
    let ab = &a * &b;
    println!("(1-x)(1-y) = {ab}, valuation {}", ab.sigma_valuation()?);

    for s in ["1+x+x^2", "x^-1-1", "(1-x)^3 - 2*(1-y)", "x*y^-1 - 1"] {
        let f = parse_poly(s)?;
        println!("{s:>20}  ->  {f:<24} augmentation {:>2}  valuation {}", f.augmentation(), f.sigma_valuation()?);
    }

    // elements with t are specialized before asking about Sigma
    let g = parse_poly("t*x - y*t^-1")?;
    println!("{g} at t = 1: {}", g.specialize(&Assignment::T_TO_ONE));
    for (k, c) in g.t_coefficients() {
        println!("  coefficient of t^{k}: {c}");
    }

    // exact division by 1 - x
    let q = parse_poly("1 - x^5")?.div_one_minus_x().expect("divisible");
    println!("(1 - x^5)/(1 - x) = {q}");
    Ok(())
}
