//! Polynomial expression parsing.
//!
//! Grammar: integer and rational literals (`a`, `a/b`), the variable `x`,
//! operators `+ - * ^` with nonnegative integer exponents, implicit
//! multiplication (`2x`, `5x^2`, `3(x+1)`), parentheses, whitespace ignored.
//! Division is only the rational-literal form; `x/2` and `(...)/2` are
//! rejected. Rendering a polynomial with [`RatPoly`]'s `Display` reparses to
//! an identical value.

use num::bigint::BigInt;
use num::{BigRational, One};

use crate::error::{Error, Result};
use crate::poly::RatPoly;

const MAX_EXPONENT: u32 = 4096;

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
}

pub fn parse_poly(src: &str) -> Result<RatPoly> {
    let mut p = Parser {
        src: src.as_bytes(),
        pos: 0,
    };
    p.skip_ws();
    if p.pos >= p.src.len() {
        return Err(p.error("empty polynomial expression"));
    }
    let value = p.expr()?;
    p.skip_ws();
    if p.pos < p.src.len() {
        return Err(p.error("unexpected trailing input"));
    }
    Ok(value)
}

impl<'a> Parser<'a> {
    fn error(&self, message: &str) -> Error {
        Error::Parse {
            position: self.pos,
            message: message.into(),
        }
    }

    fn skip_ws(&mut self) {
        while self.src.get(self.pos).is_some_and(u8::is_ascii_whitespace) {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn expr(&mut self) -> Result<RatPoly> {
        let mut acc = match self.peek() {
            Some(b'-') => {
                self.pos += 1;
                -&self.term()?
            }
            Some(b'+') => {
                self.pos += 1;
                self.term()?
            }
            _ => self.term()?,
        };
        while let Some(c) = self.peek() {
            match c {
                b'+' => {
                    self.pos += 1;
                    acc = &acc + &self.term()?;
                }
                b'-' => {
                    self.pos += 1;
                    acc = &acc - &self.term()?;
                }
                _ => break,
            }
        }
        Ok(acc)
    }

    fn term(&mut self) -> Result<RatPoly> {
        let mut acc = self.factor()?;
        loop {
            match self.peek() {
                Some(b'*') => {
                    self.pos += 1;
                    acc = &acc * &self.factor()?;
                }
                // Implicit multiplication: a factor starts right here.
                Some(c) if c == b'x' || c == b'(' || c.is_ascii_digit() => {
                    acc = &acc * &self.factor()?;
                }
                Some(b'/') => {
                    return Err(self.error(
                        "division is only allowed inside rational literals like 3/2",
                    ));
                }
                _ => break,
            }
        }
        Ok(acc)
    }

    fn factor(&mut self) -> Result<RatPoly> {
        let base = self.atom()?;
        if self.peek() == Some(b'^') {
            self.pos += 1;
            let exp = self.unsigned_integer("exponent")?;
            let exp: u32 = exp
                .try_into()
                .ok()
                .filter(|e| *e <= MAX_EXPONENT)
                .ok_or_else(|| self.error("exponent too large"))?;
            if self.peek() == Some(b'^') {
                return Err(self.error("chained exponents are not supported; parenthesize"));
            }
            return Ok(pow(&base, exp));
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<RatPoly> {
        match self.peek() {
            Some(b'x') => {
                self.pos += 1;
                Ok(RatPoly::x())
            }
            Some(b'(') => {
                self.pos += 1;
                let inner = self.expr()?;
                if self.peek() != Some(b')') {
                    return Err(self.error("expected ')'"));
                }
                self.pos += 1;
                Ok(inner)
            }
            Some(c) if c.is_ascii_digit() => {
                let numer = self.unsigned_bigint()?;
                if self.peek() == Some(b'/') {
                    self.pos += 1;
                    let denom_pos = self.pos;
                    let denom = self.unsigned_bigint()?;
                    if denom == BigInt::from(0) {
                        self.pos = denom_pos;
                        return Err(self.error("zero denominator in rational literal"));
                    }
                    Ok(RatPoly::constant(BigRational::new(numer, denom)))
                } else {
                    Ok(RatPoly::constant(BigRational::from_integer(numer)))
                }
            }
            Some(_) => Err(self.error("expected a number, 'x', or '('")),
            None => Err(self.error("unexpected end of input")),
        }
    }

    fn unsigned_bigint(&mut self) -> Result<BigInt> {
        self.skip_ws();
        let start = self.pos;
        while self.src.get(self.pos).is_some_and(u8::is_ascii_digit) {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.error("expected digits"));
        }
        let text = std::str::from_utf8(&self.src[start..self.pos]).unwrap();
        Ok(text.parse().unwrap())
    }

    fn unsigned_integer(&mut self, what: &str) -> Result<u64> {
        let n = self.unsigned_bigint()?;
        use num::ToPrimitive;
        n.to_u64()
            .ok_or_else(|| self.error(&format!("{} out of range", what)))
    }
}

fn pow(base: &RatPoly, exp: u32) -> RatPoly {
    let mut acc = RatPoly::constant(BigRational::one());
    let mut cur = base.clone();
    let mut e = exp;
    while e > 0 {
        if e & 1 == 1 {
            acc = &acc * &cur;
        }
        e >>= 1;
        if e > 0 {
            cur = &cur * &cur;
        }
    }
    acc
}

/// Canonical text for a polynomial; inverse of [`parse_poly`] on the image.
pub fn render(p: &RatPoly) -> String {
    p.to_string()
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn ints(coeffs: &[i64]) -> RatPoly {
        RatPoly::from_ints(coeffs)
    }

    #[test]
    fn parses_reference_inputs() {
        assert_eq!(parse_poly("-x^2+2x").unwrap(), ints(&[0, 2, -1]));
        assert_eq!(
            parse_poly("x^4-8x^3+21x^2-14x-16").unwrap(),
            ints(&[-16, -14, 21, -8, 1])
        );
        assert_eq!(parse_poly("((x-1))*(x+1)").unwrap(), ints(&[-1, 0, 1]));
        assert_eq!(parse_poly("x^2").unwrap(), ints(&[0, 0, 1]));
        assert_eq!(parse_poly("5x^2-1").unwrap(), ints(&[-1, 0, 5]));
        assert_eq!(parse_poly("  2 x ^ 2 ").unwrap(), ints(&[0, 0, 2]));
        assert_eq!(parse_poly("3(x+1)").unwrap(), ints(&[3, 3]));
        assert_eq!(
            parse_poly("1/2x^2-3/4").unwrap(),
            RatPoly::new(vec![
                crate::rat::big_ratio(-3, 4),
                crate::rat::big_ratio(0, 1),
                crate::rat::big_ratio(1, 2),
            ])
        );
        assert_eq!(parse_poly("0").unwrap(), RatPoly::zero());
    }

    #[test]
    fn rejects_bad_syntax_with_position() {
        for (src, pos_at_least) in [
            ("", 0),
            ("x^", 2),
            ("x/2", 1),
            ("(x+1", 4),
            ("x^999999999999", 2),
            ("3/0", 2),
            ("x + + 1", 3),
            ("y", 0),
        ] {
            match parse_poly(src) {
                Err(Error::Parse { position, .. }) => {
                    assert!(position >= pos_at_least, "{}: pos {}", src, position)
                }
                other => panic!("{:?} should fail to parse: {:?}", src, other),
            }
        }
    }

    #[test]
    fn exponent_cap() {
        assert!(parse_poly("x^4096").is_ok());
        assert!(parse_poly("x^4097").is_err());
    }

    fn arb_poly() -> impl Strategy<Value = RatPoly> {
        prop::collection::vec((-99i64..=99, 1i64..=12), 0..=7).prop_map(|v| {
            RatPoly::new(
                v.into_iter()
                    .map(|(n, d)| crate::rat::big_ratio(n, d))
                    .collect(),
            )
        })
    }

    proptest! {
        #[test]
        fn render_parse_roundtrip(p in arb_poly()) {
            let text = render(&p);
            let back = parse_poly(&text).unwrap();
            prop_assert_eq!(back, p);
        }
    }
}
