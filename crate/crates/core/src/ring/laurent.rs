//! Sparse Laurent polynomials in `x`, `y` and `t` with big-integer coefficients.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use super::binomial::BinomialTable;
use super::truncated::TruncatedPoly;
use super::RingError;

/// Exponent triple of the monomial `x^x * y^y * t^t`.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Exponent {
    pub x: i32,
    pub y: i32,
    pub t: i32,
}

impl Exponent {
    pub const ZERO: Exponent = Exponent { x: 0, y: 0, t: 0 };

    pub const fn new(x: i32, y: i32, t: i32) -> Self {
        Exponent { x, y, t }
    }

    fn add(self, other: Exponent) -> Exponent {
        Exponent {
            x: self.x + other.x,
            y: self.y + other.y,
            t: self.t + other.t,
        }
    }

    fn neg(self) -> Exponent {
        Exponent {
            x: -self.x,
            y: -self.y,
            t: -self.t,
        }
    }
}

/// A unit of `Z[x^±1, y^±1, t^±1]`: a signed monomial.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct UnitMonomial {
    pub sign: i8,
    pub exp: Exponent,
}

impl UnitMonomial {
    pub fn positive(exp: Exponent) -> Self {
        UnitMonomial { sign: 1, exp }
    }

    /// Positive units are the monomials `x^i y^j` with coefficient +1.
    pub fn is_positive(&self) -> bool {
        self.sign == 1
    }

    pub fn inverse(&self) -> Self {
        UnitMonomial {
            sign: self.sign,
            exp: self.exp.neg(),
        }
    }

    pub fn to_poly(&self) -> LaurentPoly {
        LaurentPoly::monomial(BigInt::from(self.sign), self.exp)
    }
}

/// Value substituted for one variable by [`LaurentPoly::specialize`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum Subst {
    #[default]
    Keep,
    PlusOne,
    MinusOne,
}

/// A substitution for each of `x`, `y`, `t`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub struct Assignment {
    pub x: Subst,
    pub y: Subst,
    pub t: Subst,
}

impl Assignment {
    /// `x = 1`, `y = t = -1`: maps the generators onto Sanov's free pair.
    pub const SANOV: Assignment = Assignment {
        x: Subst::PlusOne,
        y: Subst::MinusOne,
        t: Subst::MinusOne,
    };

    /// `t = 1`, the projection onto the metabelian quotient.
    pub const T_TO_ONE: Assignment = Assignment {
        x: Subst::Keep,
        y: Subst::Keep,
        t: Subst::PlusOne,
    };

    /// `x = y = 1`, factoring by the augmentation ideal.
    pub const XY_TO_ONE: Assignment = Assignment {
        x: Subst::PlusOne,
        y: Subst::PlusOne,
        t: Subst::Keep,
    };
}

/// Valuation with respect to an ideal, `Infinite` for zero.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Valuation {
    Finite(u32),
    Infinite,
}

impl Valuation {
    pub fn at_least(self, k: u32) -> bool {
        self >= Valuation::Finite(k)
    }

    pub fn finite(self) -> Option<u32> {
        match self {
            Valuation::Finite(v) => Some(v),
            Valuation::Infinite => None,
        }
    }
}

impl fmt::Display for Valuation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Valuation::Finite(v) => write!(f, "{v}"),
            Valuation::Infinite => f.write_str("inf"),
        }
    }
}

/// Element of `Z[x^±1, y^±1, t^±1]`.
///
/// Terms are kept sorted by exponent with no zero coefficients, so derived
/// equality and hashing are structural.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct LaurentPoly {
    terms: Vec<(Exponent, BigInt)>,
}

impl LaurentPoly {
    pub fn zero() -> Self {
        LaurentPoly { terms: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(1)
    }

    pub fn constant(c: impl Into<BigInt>) -> Self {
        Self::monomial(c.into(), Exponent::ZERO)
    }

    pub fn monomial(c: BigInt, exp: Exponent) -> Self {
        if c.is_zero() {
            Self::zero()
        } else {
            LaurentPoly {
                terms: vec![(exp, c)],
            }
        }
    }

    pub fn x() -> Self {
        Self::monomial(BigInt::one(), Exponent::new(1, 0, 0))
    }

    pub fn y() -> Self {
        Self::monomial(BigInt::one(), Exponent::new(0, 1, 0))
    }

    pub fn t() -> Self {
        Self::monomial(BigInt::one(), Exponent::new(0, 0, 1))
    }

    /// `x^i y^j t^k` with coefficient one.
    pub fn xyt(i: i32, j: i32, k: i32) -> Self {
        Self::monomial(BigInt::one(), Exponent::new(i, j, k))
    }

    /// Builds a polynomial from arbitrary (possibly repeated or zero) terms.
    pub fn from_terms<I>(terms: I) -> Self
    where
        I: IntoIterator<Item = (Exponent, BigInt)>,
    {
        let mut map: BTreeMap<Exponent, BigInt> = BTreeMap::new();
        for (e, c) in terms {
            *map.entry(e).or_default() += c;
        }
        LaurentPoly {
            terms: map.into_iter().filter(|(_, c)| !c.is_zero()).collect(),
        }
    }

    fn from_hash(map: HashMap<Exponent, BigInt>) -> Self {
        let mut terms: Vec<_> = map.into_iter().filter(|(_, c)| !c.is_zero()).collect();
        terms.sort_unstable_by_key(|(e, _)| *e);
        LaurentPoly { terms }
    }

    pub fn terms(&self) -> &[(Exponent, BigInt)] {
        &self.terms
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.terms[0].0 == Exponent::ZERO && self.terms[0].1.is_one()
    }

    pub fn has_t(&self) -> bool {
        self.terms.iter().any(|(e, _)| e.t != 0)
    }

    pub fn coeff(&self, exp: Exponent) -> BigInt {
        match self.terms.binary_search_by_key(&exp, |(e, _)| *e) {
            Ok(i) => self.terms[i].1.clone(),
            Err(_) => BigInt::zero(),
        }
    }

    /// Returns the unit this polynomial equals, if it is a signed monomial.
    pub fn as_unit(&self) -> Option<UnitMonomial> {
        match self.terms.as_slice() {
            [(e, c)] if c.is_one() => Some(UnitMonomial { sign: 1, exp: *e }),
            [(e, c)] if (-c).is_one() => Some(UnitMonomial { sign: -1, exp: *e }),
            _ => None,
        }
    }

    /// Multiplies by `sign * monomial(exp)`; exponent shifts keep the order.
    pub fn mul_unit(&self, unit: &UnitMonomial) -> Self {
        let terms = self
            .terms
            .iter()
            .map(|(e, c)| {
                let c = if unit.sign < 0 { -c } else { c.clone() };
                (e.add(unit.exp), c)
            })
            .collect();
        LaurentPoly { terms }
    }

    pub fn scale(&self, k: &BigInt) -> Self {
        if k.is_zero() {
            return Self::zero();
        }
        LaurentPoly {
            terms: self.terms.iter().map(|(e, c)| (*e, c * k)).collect(),
        }
    }

    pub fn pow(&self, n: u32) -> Self {
        let mut acc = Self::one();
        let mut base = self.clone();
        let mut n = n;
        while n > 0 {
            if n & 1 == 1 {
                acc = &acc * &base;
            }
            n >>= 1;
            if n > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// Value at `x = y = t = 1`.
    pub fn augmentation(&self) -> BigInt {
        self.terms.iter().map(|(_, c)| c).sum()
    }

    /// Minimum exponents over all terms, `None` for zero.
    pub fn min_exponents(&self) -> Option<Exponent> {
        let mut it = self.terms.iter().map(|(e, _)| *e);
        let first = it.next()?;
        Some(it.fold(first, |m, e| Exponent {
            x: m.x.min(e.x),
            y: m.y.min(e.y),
            t: m.t.min(e.t),
        }))
    }

    pub fn specialize(&self, a: &Assignment) -> Self {
        fn apply(s: Subst, e: i32, exp: &mut i32, sign: &mut bool) {
            match s {
                Subst::Keep => {}
                Subst::PlusOne => *exp = 0,
                Subst::MinusOne => {
                    if e.rem_euclid(2) == 1 {
                        *sign = !*sign;
                    }
                    *exp = 0;
                }
            }
        }
        Self::from_terms(self.terms.iter().map(|(e, c)| {
            let mut out = *e;
            let mut flip = false;
            apply(a.x, e.x, &mut out.x, &mut flip);
            apply(a.y, e.y, &mut out.y, &mut flip);
            apply(a.t, e.t, &mut out.t, &mut flip);
            (out, if flip { -c } else { c.clone() })
        }))
    }

    /// Coefficients with respect to `t`: `self = sum_k coeff_k * t^k`.
    pub fn t_coefficients(&self) -> BTreeMap<i32, LaurentPoly> {
        let mut out: BTreeMap<i32, Vec<(Exponent, BigInt)>> = BTreeMap::new();
        for (e, c) in &self.terms {
            out.entry(e.t)
                .or_default()
                .push((Exponent::new(e.x, e.y, 0), c.clone()));
        }
        out.into_iter()
            .map(|(k, mut terms)| {
                terms.sort_unstable_by_key(|(e, _)| *e);
                (k, LaurentPoly { terms })
            })
            .collect()
    }

    /// Exact quotient by `1 - x`, or `None` when `1 - x` does not divide.
    pub fn div_one_minus_x(&self) -> Option<Self> {
        // f = (1 - x) g  <=>  g_i = sum_{m <= i} f_m along each x-line.
        self.div_linear(|e| (e.y, e.t, e.x), |(y, t, x)| Exponent::new(x, y, t), 1)
    }

    /// Exact quotient by `1 - y`.
    pub fn div_one_minus_y(&self) -> Option<Self> {
        self.div_linear(|e| (e.x, e.t, e.y), |(x, t, y)| Exponent::new(x, y, t), 1)
    }

    /// Exact quotient by `t - 1`.
    pub fn div_t_minus_one(&self) -> Option<Self> {
        self.div_linear(|e| (e.x, e.y, e.t), |(x, y, t)| Exponent::new(x, y, t), -1)
    }

    /// Division by `sign * (1 - v)` for one variable `v`, done line by line.
    /// `key` orders exponents as (other, other, v).
    fn div_linear<K, B>(&self, key: K, back: B, sign: i32) -> Option<Self>
    where
        K: Fn(&Exponent) -> (i32, i32, i32),
        B: Fn((i32, i32, i32)) -> Exponent,
    {
        let mut keyed: Vec<((i32, i32, i32), &BigInt)> =
            self.terms.iter().map(|(e, c)| (key(e), c)).collect();
        keyed.sort_unstable_by_key(|(k, _)| *k);
        let mut out = Vec::new();
        let mut i = 0;
        while i < keyed.len() {
            let line = (keyed[i].0 .0, keyed[i].0 .1);
            let mut j = i;
            while j < keyed.len() && (keyed[j].0 .0, keyed[j].0 .1) == line {
                j += 1;
            }
            // Running sums over the consecutive exponents lo..hi-1 of this line.
            let lo = keyed[i].0 .2;
            let hi = keyed[j - 1].0 .2;
            let mut acc = BigInt::zero();
            let mut idx = i;
            for v in lo..hi {
                if idx < j && keyed[idx].0 .2 == v {
                    acc += keyed[idx].1;
                    idx += 1;
                }
                if !acc.is_zero() {
                    let c = if sign < 0 { -&acc } else { acc.clone() };
                    out.push((back((line.0, line.1, v)), c));
                }
            }
            acc += keyed[j - 1].1;
            if !acc.is_zero() {
                return None;
            }
            i = j;
        }
        out.sort_unstable_by_key(|(e, _)| *e);
        Some(LaurentPoly { terms: out })
    }

    /// Largest `k` with `self` in the `k`-th power of the augmentation ideal
    /// of `Z[x^±1, y^±1]`.
    ///
    /// Negative exponents are cleared with a unit monomial, then `x = 1 - a`,
    /// `y = 1 - b` is substituted exactly and the lowest nonzero homogeneous
    /// degree in `(a, b)` is returned. Multiplying by a unit monomial, whose
    /// image has constant term one, leaves that lowest form unchanged.
    pub fn sigma_valuation(&self) -> Result<Valuation, RingError> {
        if self.has_t() {
            return Err(RingError::ContainsT);
        }
        let Some(min) = self.min_exponents() else {
            return Ok(Valuation::Infinite);
        };
        let shifted: Vec<(usize, usize, &BigInt)> = self
            .terms
            .iter()
            .map(|(e, c)| ((e.x - min.x) as usize, (e.y - min.y) as usize, c))
            .collect();
        let max_deg = shifted.iter().map(|(i, j, _)| i + j).max().unwrap_or(0);
        let max_exp = shifted.iter().map(|(i, j, _)| *i.max(j)).max().unwrap_or(0);
        let binom = BinomialTable::new(max_exp);
        for d in 0..=max_deg {
            for r in 0..=d {
                let s = d - r;
                let mut acc = BigInt::zero();
                for (i, j, c) in &shifted {
                    if *i >= r && *j >= s {
                        acc += *c * binom.get(*i, r) * binom.get(*j, s);
                    }
                }
                if !acc.is_zero() {
                    return Ok(Valuation::Finite(d as u32));
                }
            }
        }
        // A nonzero polynomial has a nonzero coefficient of degree <= max_deg.
        unreachable!("nonzero polynomial with all (a, b) coefficients zero")
    }

    /// Image in `Z[a, b] / (a, b)^degree` under `x = 1 - a`, `y = 1 - b`.
    pub fn to_truncated(&self, degree: usize) -> Result<TruncatedPoly, RingError> {
        if self.has_t() {
            return Err(RingError::ContainsT);
        }
        TruncatedPoly::from_laurent_terms(degree, self.terms.iter().map(|(e, c)| (e.x, e.y, c)))
    }
}

impl From<i64> for LaurentPoly {
    fn from(c: i64) -> Self {
        LaurentPoly::constant(c)
    }
}

impl<'a> Add<&'a LaurentPoly> for &'a LaurentPoly {
    type Output = LaurentPoly;

    fn add(self, rhs: &'a LaurentPoly) -> LaurentPoly {
        let mut out = Vec::with_capacity(self.terms.len() + rhs.terms.len());
        let (mut i, mut j) = (0, 0);
        while i < self.terms.len() && j < rhs.terms.len() {
            let (ea, ca) = &self.terms[i];
            let (eb, cb) = &rhs.terms[j];
            match ea.cmp(eb) {
                std::cmp::Ordering::Less => {
                    out.push((*ea, ca.clone()));
                    i += 1;
                }
                std::cmp::Ordering::Greater => {
                    out.push((*eb, cb.clone()));
                    j += 1;
                }
                std::cmp::Ordering::Equal => {
                    let c = ca + cb;
                    if !c.is_zero() {
                        out.push((*ea, c));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&self.terms[i..]);
        out.extend_from_slice(&rhs.terms[j..]);
        LaurentPoly { terms: out }
    }
}

impl<'a> Sub<&'a LaurentPoly> for &'a LaurentPoly {
    type Output = LaurentPoly;

    fn sub(self, rhs: &'a LaurentPoly) -> LaurentPoly {
        self + &(-rhs)
    }
}

impl Neg for &LaurentPoly {
    type Output = LaurentPoly;

    fn neg(self) -> LaurentPoly {
        LaurentPoly {
            terms: self.terms.iter().map(|(e, c)| (*e, -c)).collect(),
        }
    }
}

impl Neg for LaurentPoly {
    type Output = LaurentPoly;

    fn neg(mut self) -> LaurentPoly {
        for (_, c) in &mut self.terms {
            *c = -std::mem::take(c);
        }
        self
    }
}

impl<'a> Mul<&'a LaurentPoly> for &'a LaurentPoly {
    type Output = LaurentPoly;

    fn mul(self, rhs: &'a LaurentPoly) -> LaurentPoly {
        if self.is_zero() || rhs.is_zero() {
            return LaurentPoly::zero();
        }
        let (small, large) = if self.terms.len() <= rhs.terms.len() {
            (self, rhs)
        } else {
            (rhs, self)
        };
        if let [(e, c)] = small.terms.as_slice() {
            let terms = large.terms.iter().map(|(f, d)| (e.add(*f), c * d)).collect();
            return LaurentPoly { terms };
        }
        let mut acc: HashMap<Exponent, BigInt> =
            HashMap::with_capacity(small.terms.len() * large.terms.len());
        for (e, c) in &small.terms {
            for (f, d) in &large.terms {
                *acc.entry(e.add(*f)).or_default() += c * d;
            }
        }
        LaurentPoly::from_hash(acc)
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr<LaurentPoly> for LaurentPoly {
            type Output = LaurentPoly;
            fn $m(self, rhs: LaurentPoly) -> LaurentPoly {
                (&self).$m(&rhs)
            }
        }
        impl<'a> $tr<&'a LaurentPoly> for LaurentPoly {
            type Output = LaurentPoly;
            fn $m(self, rhs: &'a LaurentPoly) -> LaurentPoly {
                (&self).$m(rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

fn write_monomial(f: &mut fmt::Formatter<'_>, e: &Exponent) -> fmt::Result {
    let mut first = true;
    for (name, p) in [("x", e.x), ("y", e.y), ("t", e.t)] {
        if p == 0 {
            continue;
        }
        if !first {
            f.write_str("*")?;
        }
        first = false;
        if p == 1 {
            f.write_str(name)?;
        } else {
            write!(f, "{name}^{p}")?;
        }
    }
    Ok(())
}

/// Renders terms by ascending total degree, higher `x` powers first within a degree.
impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        let mut order: Vec<&(Exponent, BigInt)> = self.terms.iter().collect();
        order.sort_by_key(|(e, _)| (e.x + e.y + e.t, -e.x, -e.y, -e.t));
        for (idx, (e, c)) in order.into_iter().enumerate() {
            let negative = c.is_negative();
            let mag = c.abs();
            if idx == 0 {
                if negative {
                    f.write_str("-")?;
                }
            } else {
                f.write_str(if negative { " - " } else { " + " })?;
            }
            if *e == Exponent::ZERO {
                write!(f, "{mag}")?;
            } else {
                if !mag.is_one() {
                    write!(f, "{mag}*")?;
                }
                write_monomial(f, e)?;
            }
        }
        Ok(())
    }
}
