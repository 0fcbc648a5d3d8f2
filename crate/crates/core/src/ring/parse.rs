//! Parser for the polynomial input syntax: integers, `x`, `y`, `t`,
//! `+ - * ^ ( )`, integer exponents (negative allowed on units).
//! Whitespace is ignored.

use num_bigint::BigInt;

use super::laurent::LaurentPoly;
use super::RingError;

pub fn parse_poly(input: &str) -> Result<LaurentPoly, RingError> {
    let mut p = Parser {
        src: input.as_bytes(),
        pos: 0,
    };
    p.skip_ws();
    if p.at_end() {
        return Err(p.error("empty expression"));
    }
    let out = p.expr()?;
    p.skip_ws();
    if !p.at_end() {
        return Err(p.error("unexpected character"));
    }
    Ok(out)
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
}

impl Parser<'_> {
    fn error(&self, message: &str) -> RingError {
        RingError::Parse {
            position: self.pos,
            message: message.to_string(),
        }
    }

    fn at_end(&self) -> bool {
        self.pos >= self.src.len()
    }

    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn eat(&mut self, c: u8) -> bool {
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expr(&mut self) -> Result<LaurentPoly, RingError> {
        let mut acc = self.term()?;
        loop {
            if self.eat(b'+') {
                acc = acc + self.term()?;
            } else if self.eat(b'-') {
                acc = acc - self.term()?;
            } else {
                return Ok(acc);
            }
        }
    }

    fn term(&mut self) -> Result<LaurentPoly, RingError> {
        let mut acc = self.factor()?;
        while self.eat(b'*') {
            acc = acc * self.factor()?;
        }
        Ok(acc)
    }

    fn factor(&mut self) -> Result<LaurentPoly, RingError> {
        if self.eat(b'-') {
            return Ok(-self.factor()?);
        }
        if self.eat(b'+') {
            return self.factor();
        }
        let base = self.atom()?;
        if !self.eat(b'^') {
            return Ok(base);
        }
        let start = self.pos;
        let n = self.exponent()?;
        if n >= 0 {
            return Ok(base.pow(n as u32));
        }
        match base.as_unit() {
            Some(u) => Ok(u.inverse().to_poly().pow(n.unsigned_abs())),
            None => {
                self.pos = start;
                Err(self.error("negative exponent of a non-unit"))
            }
        }
    }

    fn exponent(&mut self) -> Result<i32, RingError> {
        let paren = self.eat(b'(');
        let neg = self.eat(b'-');
        self.skip_ws();
        let digits = self.digits();
        if digits.is_empty() {
            return Err(self.error("expected integer exponent"));
        }
        let mag: i32 = digits
            .parse()
            .map_err(|_| self.error("exponent out of range"))?;
        if paren && !self.eat(b')') {
            return Err(self.error("expected ')'"));
        }
        Ok(if neg { -mag } else { mag })
    }

    fn digits(&mut self) -> String {
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        String::from_utf8_lossy(&self.src[start..self.pos]).into_owned()
    }

    fn atom(&mut self) -> Result<LaurentPoly, RingError> {
        match self.peek() {
            Some(b'(') => {
                self.pos += 1;
                let inner = self.expr()?;
                if !self.eat(b')') {
                    return Err(self.error("expected ')'"));
                }
                Ok(inner)
            }
            Some(b'x') => {
                self.pos += 1;
                Ok(LaurentPoly::x())
            }
            Some(b'y') => {
                self.pos += 1;
                Ok(LaurentPoly::y())
            }
            Some(b't') => {
                self.pos += 1;
                Ok(LaurentPoly::t())
            }
            Some(c) if c.is_ascii_digit() => {
                let d = self.digits();
                let v: BigInt = d.parse().map_err(|_| self.error("bad integer"))?;
                Ok(LaurentPoly::constant(v))
            }
            Some(_) => Err(self.error("expected integer, variable or '('")),
            None => Err(self.error("unexpected end of input")),
        }
    }
}
