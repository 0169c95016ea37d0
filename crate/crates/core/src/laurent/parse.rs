//! Text parser for [`LaurentPoly`], accepting the same format `to_text`
//! produces: `1 - x1*y1^-1 + 2*t^(3/2)*x2^2`.
//!
//! Multiplication must be explicit (`*`), parenthesized subexpressions are
//! allowed and may carry nonnegative integer powers, and the deformation
//! parameter may be written `t` or `q` (both map to the same internal `t`).

use num_bigint::BigInt;

use super::{LaurentError, LaurentPoly, Mono};

pub fn parse_poly(input: &str) -> Result<LaurentPoly, LaurentError> {
    let mut p = Parser { bytes: input.as_bytes(), pos: 0 };
    let poly = p.expr()?;
    p.skip_ws();
    if p.pos != p.bytes.len() {
        return Err(p.err("trailing input"));
    }
    Ok(poly)
}

struct Parser<'a> {
    bytes: &'a [u8],
    pos: usize,
}

impl<'a> Parser<'a> {
    fn err(&self, msg: &str) -> LaurentError {
        LaurentError::Parse { pos: self.pos, msg: msg.to_string() }
    }

    fn peek(&self) -> Option<u8> {
        self.bytes.get(self.pos).copied()
    }

    fn skip_ws(&mut self) {
        while matches!(self.peek(), Some(b' ') | Some(b'\t') | Some(b'\n')) {
            self.pos += 1;
        }
    }

    fn eat(&mut self, b: u8) -> bool {
        if self.peek() == Some(b) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expr(&mut self) -> Result<LaurentPoly, LaurentError> {
        self.skip_ws();
        let mut negate = false;
        if self.eat(b'-') {
            negate = true;
        } else {
            let _ = self.eat(b'+');
        }
        let mut acc = self.term()?;
        if negate {
            acc = acc.neg_ref();
        }
        loop {
            self.skip_ws();
            let neg = if self.eat(b'+') {
                false
            } else if self.eat(b'-') {
                true
            } else {
                break;
            };
            let t = self.term()?;
            acc = if neg { &acc - &t } else { &acc + &t };
        }
        Ok(acc)
    }

    fn term(&mut self) -> Result<LaurentPoly, LaurentError> {
        let mut acc = self.factor()?;
        loop {
            self.skip_ws();
            if self.eat(b'*') {
                let f = self.factor()?;
                acc = &acc * &f;
            } else {
                break;
            }
        }
        Ok(acc)
    }

    fn factor(&mut self) -> Result<LaurentPoly, LaurentError> {
        self.skip_ws();
        match self.peek() {
            Some(b'(') => {
                self.pos += 1;
                let inner = self.expr()?;
                self.skip_ws();
                if !self.eat(b')') {
                    return Err(self.err("expected ')'"));
                }
                self.skip_ws();
                if self.eat(b'^') {
                    self.skip_ws();
                    let e = self.int()?;
                    let k = u32::try_from(e)
                        .map_err(|_| self.err("negative power of a parenthesized expression"))?;
                    Ok(inner.pow(k))
                } else {
                    Ok(inner)
                }
            }
            Some(b't') | Some(b'q') => {
                self.pos += 1;
                let t2 = self.opt_half_exponent()?;
                Ok(LaurentPoly::monomial(Mono::t_half_pow(t2)))
            }
            Some(b'x') | Some(b'y') => {
                let is_x = self.peek() == Some(b'x');
                self.pos += 1;
                let idx = self.uint()? as usize;
                if idx == 0 {
                    return Err(self.err("variable index must be >= 1"));
                }
                let e = self.opt_int_exponent()?;
                let m = if is_x { Mono::x_pow(idx, e) } else { Mono::y_pow(idx, e) };
                Ok(LaurentPoly::monomial(m))
            }
            Some(c) if c.is_ascii_digit() => {
                let v = self.uint()?;
                self.skip_ws();
                if self.eat(b'^') {
                    self.skip_ws();
                    let e = self.int()?;
                    let k = u32::try_from(e)
                        .map_err(|_| self.err("negative power of an integer"))?;
                    Ok(LaurentPoly::constant(BigInt::from(v).pow(k)))
                } else {
                    Ok(LaurentPoly::constant(v))
                }
            }
            _ => Err(self.err("expected a factor")),
        }
    }

    /// Optional `^e` with integer `e`; defaults to 1.
    fn opt_int_exponent(&mut self) -> Result<i64, LaurentError> {
        self.skip_ws();
        if self.eat(b'^') {
            self.skip_ws();
            self.int()
        } else {
            Ok(1)
        }
    }

    /// Optional exponent after `t`, returning the doubled exponent:
    /// plain integers `^k` give `2k`, while `^(a/2)` gives `a`.
    fn opt_half_exponent(&mut self) -> Result<i64, LaurentError> {
        self.skip_ws();
        if !self.eat(b'^') {
            return Ok(2);
        }
        self.skip_ws();
        if self.eat(b'(') {
            self.skip_ws();
            let a = self.int()?;
            self.skip_ws();
            if !self.eat(b'/') {
                // Parenthesized plain integer like t^(3).
                if self.eat(b')') {
                    return Ok(2 * a);
                }
                return Err(self.err("expected '/' or ')' in t exponent"));
            }
            self.skip_ws();
            let d = self.int()?;
            if d != 2 {
                return Err(self.err("only halves are supported in t exponents"));
            }
            self.skip_ws();
            if !self.eat(b')') {
                return Err(self.err("expected ')'"));
            }
            Ok(a)
        } else {
            Ok(2 * self.int()?)
        }
    }

    fn int(&mut self) -> Result<i64, LaurentError> {
        let neg = self.eat(b'-');
        let v = self.uint()?;
        Ok(if neg { -v } else { v })
    }

    fn uint(&mut self) -> Result<i64, LaurentError> {
        let start = self.pos;
        while matches!(self.peek(), Some(c) if c.is_ascii_digit()) {
            self.pos += 1;
        }
        if self.pos == start {
            return Err(self.err("expected digits"));
        }
        std::str::from_utf8(&self.bytes[start..self.pos])
            .unwrap()
            .parse::<i64>()
            .map_err(|_| self.err("integer out of range"))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_standard_forms() {
        assert_eq!(parse_poly("0").unwrap(), LaurentPoly::zero());
        assert_eq!(parse_poly("1 - x1*y1^-1").unwrap().to_text(), "1 - x1*y1^-1");
        assert_eq!(parse_poly("-x1 + x1").unwrap(), LaurentPoly::zero());
        assert_eq!(parse_poly("t^(1/2)*t^(1/2)").unwrap(), LaurentPoly::t());
        assert_eq!(parse_poly("q^(-1/2)").unwrap().to_text(), "t^(-1/2)");
        assert_eq!(parse_poly("t^3").unwrap().to_text(), "t^3");
        assert_eq!(
            parse_poly("(x1 + y1)^2").unwrap().to_text(),
            "y1^2 + 2*x1*y1 + x1^2"
        );
        assert_eq!(
            parse_poly("(1 - x1*y2^-1) * (1 + x1*y2^-1)").unwrap(),
            parse_poly("1 - x1^2*y2^-2").unwrap()
        );
        assert_eq!(parse_poly("2^3").unwrap(), LaurentPoly::constant(8));
    }

    #[test]
    fn rejects_malformed_input() {
        assert!(parse_poly("").is_err());
        assert!(parse_poly("x0").is_err());
        assert!(parse_poly("x1 +").is_err());
        assert!(parse_poly("(x1").is_err());
        assert!(parse_poly("x1 x2").is_err());
        assert!(parse_poly("t^(1/3)").is_err());
        assert!(parse_poly("(x1+1)^-1").is_err());
        assert!(parse_poly("z1").is_err());
    }
}
