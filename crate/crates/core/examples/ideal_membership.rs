//! Membership in the cyclotomic ideal I(q), in I(q)Sigma and in powers of
//! Sigma, and arithmetic in the finite quotient S(q) = R/I(q)Sigma.

use solvmat::ideal::{BurnsideParams, IdealLattice, SContext};
use solvmat::ring::{parse_poly, TruncatedPoly};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    for q in [2, 3, 4, 5, 7, 9] {
        let params = BurnsideParams::new(q)?;
        let ctx = SContext::new(q)?;
        let k = params.bound as usize;
        let all_in = (0..=k).all(|r| ctx.cyclotomic.contains_truncated(&TruncatedPoly::monomial(params.degree, r, k - r)).unwrap());
        println!(
            "q={q}: p={} e={} e*phi={k}  Sigma^{k} in I(q): {all_in}  dim S(q) lattice {}",
            params.p,
            params.e,
            ctx.dimension()
        );
    }

    let ctx = SContext::new(3)?;
    for s in ["(1-x)^2", "1-x", "3*(1-y)", "(1-x)^3", "3"] {
        let f = parse_poly(s)?;
        println!(
            "{s:>8}: in I(3) {:<5}  in I(3)Sigma {}",
            ctx.cyclotomic.contains(&f)?,
            ctx.lattice.contains(&f)?
        );
    }

    // the refined inclusion p^j Sigma^k in I(q)
    let params = BurnsideParams::new(9)?;
    for j in 0..params.e {
        let k = params.refined_sigma_power(j).unwrap();
        println!("q=9: 3^{j} Sigma^{k} in I(9): {}", solvmat::ideal::p_power_sigma_check(&params, j, k as usize)?);
    }

    // in S(2), 1 + x is zero times Sigma: x^2 = 1 and 2 kills Sigma
    let s2 = SContext::new(2)?;
    let x = s2.from_laurent(&parse_poly("x")?)?;
    let x2 = s2.mul(&x, &x)?;
    println!("x^2 in S(2) is one: {}", x2.is_one());
    let sigma2 = IdealLattice::sigma_power(2, 4);
    println!("Sigma^2 at degree 4 has rank {}", sigma2.basis().rows().count());
    Ok(())
}
