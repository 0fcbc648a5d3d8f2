use std::fmt;
use std::sync::Arc;

use num_traits::ToPrimitive;
use serde::Serialize;

use crate::ideal::SContext;
use crate::matrix::{CoeffRing, LaurentRing, Matrix2, SRing, STRing};
use crate::ring::{Assignment, LaurentPoly};

use super::eval::{eval_in, Evaluator};
use super::word::GroupWord;
use super::GroupError;

/// Order of an element of `G(q) = F(S(q)[t^±1])`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Order {
    /// Least `d | q` with `w^d = 1`.
    Finite { order: u64 },
    /// The augmentation `x = y = 1` sends `w` to a matrix over `Z[t^±1]` of
    /// determinant `t^k`, `k != 0`, so no power of `w` is trivial.
    Infinite { det_t_degree: i64 },
}

impl fmt::Display for Order {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Order::Finite { order } => write!(f, "{order}"),
            Order::Infinite { det_t_degree } => write!(f, "infinite (det = t^{det_t_degree} after x = y = 1)"),
        }
    }
}

/// Order of `w` in `G(q)`.
///
/// Nonzero exponent sum in `T` is certified infinite through the augmentation;
/// zero exponent sum must give `w^q = 1`, and the least divisor of `q` that
/// kills `w` is returned. Anything else is a [`GroupError::TheoremViolation`].
pub fn order_in_g(w: &GroupWord, ctx: &Arc<SContext>) -> Result<Order, GroupError> {
    let sum = w.t_exponent_sum();
    if sum != 0 {
        let ring = LaurentRing::specialized(Assignment::XY_TO_ONE);
        let m = eval_in(&ring, w);
        let k = ring
            .det(&m)
            .as_unit()
            .filter(|u| u.is_positive() && u.exp.x == 0 && u.exp.y == 0)
            .map(|u| u.exp.t as i64)
            .ok_or_else(|| GroupError::TheoremViolation(format!("{w}: determinant after x = y = 1 is not t^k")))?;
        if k != sum {
            return Err(GroupError::TheoremViolation(format!(
                "{w}: determinant degree {k} differs from exponent sum {sum}"
            )));
        }
        return Ok(Order::Infinite { det_t_degree: k });
    }
    let ring = STRing::new(ctx.clone());
    let p = ctx.params.p;
    let mut m = eval_in(&ring, w);
    let mut d = 1;
    for _ in 0..=ctx.params.e {
        if ring.is_identity(&m) {
            return Ok(Order::Finite { order: d });
        }
        m = ring.mat_pow(&m, p);
        d *= p;
    }
    Err(GroupError::TheoremViolation(format!(
        "{w} has exponent sum 0 in T but w^{} != 1 over S({})[t^±1]",
        ctx.q(),
        ctx.q()
    )))
}

/// The two routes from `F` to `F(S)` agree on `w`: evaluate over `R[t^±1]`,
/// set `t = 1` and reduce to `S`, versus reduce to `S[t^±1]` and set `t = 1`.
pub fn commutative_square_check(w: &GroupWord, ctx: &Arc<SContext>) -> bool {
    let s = SRing::new(ctx.clone());
    let free = eval_in(&LaurentRing::free(), w);
    let via_free = free.map(|e| s.embed(&e.specialize(&Assignment::T_TO_ONE)));
    let st = STRing::new(ctx.clone());
    let via_st = eval_in(&st, w).map(|e| st.at_t_one(e));
    via_free == via_st
}

/// Size of the group generated by the images of `M1` and `M2T`, by
/// breadth-first closure. `None` when it exceeds `limit` elements.
///
/// Only the two generators are used: in a finite group the monoid they
/// generate is already the whole group.
pub fn closure_size<R: CoeffRing>(ring: &R, limit: usize) -> Option<usize> {
    let ev = Evaluator::new(ring);
    let gens = [ev.generator(super::Letter::G1).clone(), ev.generator(super::Letter::G2T).clone()];
    let mut seen = std::collections::HashSet::new();
    let mut frontier = vec![ring.identity()];
    seen.insert(ring.identity());
    while !frontier.is_empty() {
        let mut next = Vec::new();
        for m in &frontier {
            for g in &gens {
                let p = ring.mat_mul(m, g);
                if seen.insert(p.clone()) {
                    if seen.len() > limit {
                        return None;
                    }
                    next.push(p);
                }
            }
        }
        frontier = next;
    }
    Some(seen.len())
}

/// Result of the Sanov spot check.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct SanovReport {
    pub max_len: usize,
    pub words_checked: u64,
    pub failures: Vec<String>,
}

type IntMatrix = [[i128; 2]; 2];

fn int_mul(a: &IntMatrix, b: &IntMatrix) -> Option<IntMatrix> {
    let mut out = [[0i128; 2]; 2];
    for i in 0..2 {
        for j in 0..2 {
            out[i][j] = a[i][0].checked_mul(b[0][j])?.checked_add(a[i][1].checked_mul(b[1][j])?)?;
        }
    }
    Some(out)
}

fn to_int(m: &Matrix2<LaurentPoly>) -> Option<IntMatrix> {
    let c = |e: &LaurentPoly| -> Option<i128> {
        match e.terms() {
            [] => Some(0),
            [(exp, c)] if *exp == Default::default() => c.to_i128(),
            _ => None,
        }
    };
    Some([[c(&m.m[0][0])?, c(&m.m[0][1])?], [c(&m.m[1][0])?, c(&m.m[1][1])?]])
}

/// Every freely reduced nonempty word of length `<= max_len` maps to a
/// non-identity matrix under `x = 1`, `y = t = -1`, which sends the generators
/// to `[[1, 2], [0, 1]]` and `[[1, 0], [2, 1]]`.
pub fn sanov_check(max_len: usize) -> Result<SanovReport, GroupError> {
    let ring = LaurentRing::specialized(Assignment::SANOV);
    let ev = Evaluator::new(&ring);
    let gens: Vec<IntMatrix> = super::Letter::ALL
        .iter()
        .map(|&l| to_int(ev.generator(l)).ok_or(GroupError::NonConforming("specialized generator is not integral".into())))
        .collect::<Result<_, _>>()?;
    let mut report = SanovReport {
        max_len,
        ..Default::default()
    };
    let identity: IntMatrix = [[1, 0], [0, 1]];
    // depth-first over reduced words, carrying the running product
    let mut stack: Vec<(Vec<usize>, IntMatrix)> = vec![(Vec::new(), identity)];
    while let Some((word, m)) = stack.pop() {
        if !word.is_empty() {
            report.words_checked += 1;
            if m == identity {
                let w: GroupWord = GroupWord::new(word.iter().map(|&i| super::Letter::ALL[i]).collect());
                report.failures.push(w.to_string());
            }
        }
        if word.len() == max_len {
            continue;
        }
        for (i, g) in gens.iter().enumerate() {
            if word.last().is_some_and(|&j| super::Letter::ALL[j].inverse() == super::Letter::ALL[i]) {
                continue;
            }
            let next = int_mul(&m, g).ok_or(GroupError::Overflow)?;
            let mut w = word.clone();
            w.push(i);
            stack.push((w, next));
        }
    }
    Ok(report)
}

/// Outcome of the nilpotent-quotient check over `R/Sigma^c`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct NilpotentCheck {
    pub class: usize,
    /// Basic commutators of weight `c..=max_weight` that failed to vanish.
    pub nonvanishing_high_weight: Vec<(u32, u32)>,
    /// Some element of weight `c - 1` (a generator when `c = 2`) survives.
    pub lower_weight_survives: bool,
}

impl NilpotentCheck {
    pub fn passed(&self) -> bool {
        self.nonvanishing_high_weight.is_empty() && self.lower_weight_survives
    }
}

/// Over `R/Sigma^c`, basic commutators of weight `>= c` are trivial and some
/// element of weight `c - 1` is not.
pub fn nilpotent_quotient_check(class: usize, max_weight: u32) -> NilpotentCheck {
    let ring = crate::matrix::TruncRing { degree: class };
    let ev = Evaluator::new(&ring);
    let mut failures = Vec::new();
    for weight in (class as u32).max(2)..=max_weight {
        for a in 0..=weight - 2 {
            let b = weight - 2 - a;
            let (w, _) = super::normal_form::basic_commutator(a, b);
            if !ring.is_identity(&ev.eval(&w)) {
                failures.push((a, b));
            }
        }
    }
    let lower = class as u32 - 1;
    let survives = if lower <= 1 {
        !ring.is_identity(ev.generator(super::Letter::G1))
    } else {
        (0..=lower - 2).any(|a| {
            let (w, _) = super::normal_form::basic_commutator(a, lower - 2 - a);
            !ring.is_identity(&ev.eval(&w))
        })
    };
    NilpotentCheck {
        class,
        nonvanishing_high_weight: failures,
        lower_weight_survives: survives,
    }
}
