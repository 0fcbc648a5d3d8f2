use std::fmt;
use std::str::FromStr;

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::GroupError;

/// A generator or its inverse: `a = M1`, `A = M1^-1`, `b = M2T`, `B = (M2T)^-1`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Letter {
    G1,
    G1Inv,
    G2T,
    G2TInv,
}

impl Letter {
    pub const ALL: [Letter; 4] = [Letter::G1, Letter::G1Inv, Letter::G2T, Letter::G2TInv];

    pub fn inverse(self) -> Letter {
        match self {
            Letter::G1 => Letter::G1Inv,
            Letter::G1Inv => Letter::G1,
            Letter::G2T => Letter::G2TInv,
            Letter::G2TInv => Letter::G2T,
        }
    }

    pub fn to_char(self) -> char {
        match self {
            Letter::G1 => 'a',
            Letter::G1Inv => 'A',
            Letter::G2T => 'b',
            Letter::G2TInv => 'B',
        }
    }

    pub fn from_char(c: char) -> Option<Letter> {
        match c {
            'a' => Some(Letter::G1),
            'A' => Some(Letter::G1Inv),
            'b' => Some(Letter::G2T),
            'B' => Some(Letter::G2TInv),
            _ => None,
        }
    }

    /// Contribution to the exponent sum in `T`.
    pub fn t_exponent(self) -> i64 {
        match self {
            Letter::G2T => 1,
            Letter::G2TInv => -1,
            _ => 0,
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GroupWord {
    letters: Vec<Letter>,
}

impl GroupWord {
    pub fn new(letters: Vec<Letter>) -> Self {
        GroupWord { letters }
    }

    pub fn empty() -> Self {
        GroupWord::default()
    }

    pub fn letter(l: Letter) -> Self {
        GroupWord { letters: vec![l] }
    }

    /// Parses `aAbB` syntax. Whitespace is ignored and `1` denotes the empty word.
    pub fn parse(s: &str) -> Result<Self, GroupError> {
        let trimmed = s.trim();
        if trimmed == "1" {
            return Ok(GroupWord::empty());
        }
        let mut letters = Vec::with_capacity(s.len());
        for (position, c) in s.char_indices() {
            if c.is_whitespace() {
                continue;
            }
            letters.push(Letter::from_char(c).ok_or(GroupError::InvalidLetter { position, found: c })?);
        }
        Ok(GroupWord { letters })
    }

    pub fn letters(&self) -> &[Letter] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn inverse(&self) -> Self {
        GroupWord {
            letters: self.letters.iter().rev().map(|l| l.inverse()).collect(),
        }
    }

    /// Cancels adjacent inverse pairs until none remain.
    pub fn reduced(&self) -> Self {
        let mut out: Vec<Letter> = Vec::with_capacity(self.letters.len());
        for &l in &self.letters {
            if out.last() == Some(&l.inverse()) {
                out.pop();
            } else {
                out.push(l);
            }
        }
        GroupWord { letters: out }
    }

    pub fn is_reduced(&self) -> bool {
        self.letters.windows(2).all(|w| w[1] != w[0].inverse())
    }

    /// Concatenation, without reduction.
    pub fn concat(&self, other: &GroupWord) -> Self {
        let mut letters = self.letters.clone();
        letters.extend_from_slice(&other.letters);
        GroupWord { letters }
    }

    pub fn pow(&self, n: usize) -> Self {
        GroupWord {
            letters: self.letters.repeat(n),
        }
    }

    /// `g h g^-1 h^-1`.
    pub fn commutator(g: &GroupWord, h: &GroupWord) -> Self {
        g.concat(h).concat(&g.inverse()).concat(&h.inverse())
    }

    /// `by * self * by^-1`.
    pub fn conjugate_by(&self, by: &GroupWord) -> Self {
        by.concat(self).concat(&by.inverse())
    }

    pub fn t_exponent_sum(&self) -> i64 {
        self.letters.iter().map(|l| l.t_exponent()).sum()
    }

    /// A uniformly random freely reduced word of exactly `len` letters.
    pub fn random_reduced<R: Rng + ?Sized>(rng: &mut R, len: usize) -> Self {
        let mut letters: Vec<Letter> = Vec::with_capacity(len);
        while letters.len() < len {
            let l = Letter::ALL[rng.random_range(0..4)];
            if letters.last() != Some(&l.inverse()) {
                letters.push(l);
            }
        }
        GroupWord { letters }
    }

    /// A random freely reduced word of length in `1..=max_len`.
    pub fn random<R: Rng + ?Sized>(rng: &mut R, max_len: usize) -> Self {
        let len = rng.random_range(1..=max_len.max(1));
        GroupWord::random_reduced(rng, len)
    }
}

impl fmt::Display for GroupWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.letters.is_empty() {
            return f.write_str("1");
        }
        self.letters.iter().try_for_each(|l| write!(f, "{}", l.to_char()))
    }
}

impl FromStr for GroupWord {
    type Err = GroupError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        GroupWord::parse(s)
    }
}

/// Generator for sample `index` of a run with the given seed; independent of
/// how samples are scheduled across threads.
pub fn sample_rng(seed: u64, index: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(index);
    rng
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_render() {
        let w = GroupWord::parse("abAB").unwrap();
        assert_eq!(w.len(), 4);
        assert_eq!(w.to_string(), "abAB");
        assert_eq!(GroupWord::parse("").unwrap(), GroupWord::empty());
        assert_eq!(GroupWord::parse("1").unwrap().to_string(), "1");
        assert_eq!(
            GroupWord::parse("ab xB"),
            Err(GroupError::InvalidLetter { position: 3, found: 'x' })
        );
    }

    #[test]
    fn reduction_and_inverse() {
        let w = GroupWord::parse("abBAa").unwrap();
        assert_eq!(w.reduced().to_string(), "a");
        let v = GroupWord::parse("abAB").unwrap();
        assert_eq!(v.inverse().to_string(), "baBA");
        assert!(v.concat(&v.inverse()).reduced().is_empty());
    }

    #[test]
    fn exponent_sums() {
        assert_eq!(GroupWord::empty().t_exponent_sum(), 0);
        assert_eq!(GroupWord::parse("b").unwrap().t_exponent_sum(), 1);
        let w = GroupWord::parse("bbaB").unwrap();
        assert_eq!(GroupWord::letter(Letter::G1).conjugate_by(&w).t_exponent_sum(), 0);
    }

    #[test]
    fn random_words_are_reduced_and_seeded() {
        let mut r1 = sample_rng(7, 3);
        let mut r2 = sample_rng(7, 3);
        for _ in 0..50 {
            let w = GroupWord::random(&mut r1, 12);
            assert!(w.is_reduced() && !w.is_empty() && w.len() <= 12);
            assert_eq!(w, GroupWord::random(&mut r2, 12));
        }
        let mut other = sample_rng(7, 4);
        let a: Vec<_> = (0..5).map(|_| GroupWord::random(&mut sample_rng(7, 3), 12)).collect();
        let b: Vec<_> = (0..5).map(|_| GroupWord::random(&mut other, 12)).collect();
        assert_ne!(a, b);
    }
}
