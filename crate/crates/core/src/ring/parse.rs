//! Recursive-descent parser for the polynomial expression grammar
//!
//! ```text
//! expr   := ['+'|'-'] term (('+'|'-') term)*
//! term   := factor ('*' factor)*
//! factor := INT | VAR ('^' INT)? | '(' expr ')'
//! ```

use num_bigint::BigInt;

use super::field::Field;
use super::monomial::Monomial;
use super::poly::{Polynomial, Ring};
use crate::Error;

/// Exponents above this are rejected rather than risking overflow downstream.
pub const MAX_EXPONENT: u32 = 1 << 16;

pub fn parse_polynomial<F: Field>(text: &str, ring: &Ring<F>) -> Result<Polynomial<F>, Error> {
    let mut p = Parser {
        src: text.as_bytes(),
        pos: 0,
        ring,
    };
    let f = p.expr()?;
    p.skip_ws();
    if p.pos != p.src.len() {
        return Err(p.error("unexpected trailing input"));
    }
    Ok(f)
}

struct Parser<'a, F: Field> {
    src: &'a [u8],
    pos: usize,
    ring: &'a Ring<F>,
}

impl<F: Field> Parser<'_, F> {
    fn error(&self, msg: &str) -> Error {
        Error::Parse {
            position: self.pos,
            message: msg.to_string(),
        }
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

    fn expr(&mut self) -> Result<Polynomial<F>, Error> {
        let ring = self.ring;
        let mut negate = false;
        match self.peek() {
            Some(b'-') => {
                negate = true;
                self.pos += 1;
            }
            Some(b'+') => self.pos += 1,
            _ => {}
        }
        let first = self.term()?;
        let mut acc = if negate { ring.neg(&first) } else { first };
        while let Some(c @ (b'+' | b'-')) = self.peek() {
            self.pos += 1;
            let t = self.term()?;
            acc = if c == b'+' { ring.add(&acc, &t) } else { ring.sub(&acc, &t) };
        }
        Ok(acc)
    }

    fn term(&mut self) -> Result<Polynomial<F>, Error> {
        let mut acc = self.factor()?;
        while self.peek() == Some(b'*') {
            self.pos += 1;
            let f = self.factor()?;
            acc = self.ring.mul(&acc, &f);
        }
        Ok(acc)
    }

    fn factor(&mut self) -> Result<Polynomial<F>, Error> {
        let ring = self.ring;
        match self.peek() {
            Some(b'(') => {
                self.pos += 1;
                let e = self.expr()?;
                if self.peek() != Some(b')') {
                    return Err(self.error("expected ')'"));
                }
                self.pos += 1;
                Ok(e)
            }
            Some(c) if c.is_ascii_digit() => {
                let n = self.integer()?;
                Ok(ring.constant(ring.field().from_bigint(&n)))
            }
            Some(c) if c.is_ascii_alphabetic() => {
                let start = self.pos;
                while self.pos < self.src.len()
                    && (self.src[self.pos].is_ascii_alphanumeric() || self.src[self.pos] == b'_')
                {
                    self.pos += 1;
                }
                let name = std::str::from_utf8(&self.src[start..self.pos]).expect("ascii");
                let v = ring.var_index(name).ok_or_else(|| Error::UnknownVariable {
                    name: name.to_string(),
                    position: start,
                })?;
                let mut e = 1u32;
                if self.peek() == Some(b'^') {
                    self.pos += 1;
                    self.skip_ws();
                    let at = self.pos;
                    let n = self.integer()?;
                    e = u32::try_from(&n)
                        .ok()
                        .filter(|e| *e <= MAX_EXPONENT)
                        .ok_or(Error::ExponentOverflow { position: at })?;
                    if e == 0 {
                        self.pos = at;
                        return Err(self.error("exponent must be positive"));
                    }
                }
                let mut exps = vec![0u32; ring.nvars()];
                exps[v] = e;
                Ok(ring.monomial(ring.field().one(), Monomial::from_exponents(&exps)))
            }
            Some(_) => Err(self.error("expected integer, variable or '('")),
            None => Err(self.error("unexpected end of input")),
        }
    }

    fn integer(&mut self) -> Result<BigInt, Error> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.error("expected integer"));
        }
        let s = std::str::from_utf8(&self.src[start..self.pos]).expect("ascii");
        Ok(s.parse().expect("digits"))
    }
}

#[cfg(test)]
mod tests {
    use crate::ring::{Monomial, MonomialOrder, Rationals, Ring};
    use crate::Error;

    fn ring() -> Ring<Rationals> {
        Ring::new(Rationals, &["x", "y"], MonomialOrder::GRevLex).unwrap()
    }

    #[test]
    fn reads_binomial_in_grevlex_order() {
        let r = ring();
        let f = r.parse("x^2 - y^3").unwrap();
        let q = r.field();
        use crate::ring::Field;
        assert_eq!(
            f.terms(),
            &[
                (q.from_i64(-1), Monomial::from_exponents(&[0, 3])),
                (q.from_i64(1), Monomial::from_exponents(&[2, 0])),
            ]
        );
    }

    #[test]
    fn zero_and_collection() {
        let r = ring();
        assert!(r.parse("0").unwrap().is_zero());
        assert!(r.parse("x - x").unwrap().is_zero());
        let f = r.parse("x*y + x*y").unwrap();
        assert_eq!(f.len(), 1);
        assert_eq!(r.format(&f), "2*x*y");
        assert_eq!(r.parse(" ( x + y ) * ( x - y ) ").unwrap(), r.parse("x^2 - y^2").unwrap());
        assert_eq!(r.parse("-3*x").unwrap(), r.parse("0 - 3*x").unwrap());
    }

    #[test]
    fn errors_carry_positions() {
        let r = ring();
        match r.parse("x + z") {
            Err(Error::UnknownVariable { name, position }) => {
                assert_eq!(name, "z");
                assert_eq!(position, 4);
            }
            other => panic!("{other:?}"),
        }
        assert!(matches!(r.parse("x^99999999999"), Err(Error::ExponentOverflow { position: 2 })));
        assert!(matches!(r.parse("x +"), Err(Error::Parse { .. })));
        assert!(matches!(r.parse("x y"), Err(Error::Parse { position: 2, .. })));
        assert!(matches!(r.parse("(x"), Err(Error::Parse { .. })));
        assert!(matches!(r.parse("x^0"), Err(Error::Parse { .. })));
    }
}
