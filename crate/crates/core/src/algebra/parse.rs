//! Text grammar for homogeneous polynomials, e.g. `2*x0^2*x3 - x1*x2^2`.

use super::field::PrimeField;
use super::poly::{HomogPoly, Monomial};

/// Failure inside a polynomial string; `col` is 1-based.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PolyParseError {
    pub col: usize,
    pub msg: String,
}

struct Cursor<'a> {
    s: &'a [u8],
    pos: usize,
}

impl<'a> Cursor<'a> {
    fn skip_ws(&mut self) {
        while self.pos < self.s.len() && self.s[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }
    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.s.get(self.pos).copied()
    }
    fn err<T>(&self, msg: impl Into<String>) -> Result<T, PolyParseError> {
        Err(PolyParseError { col: self.pos + 1, msg: msg.into() })
    }
    fn number(&mut self) -> Result<u64, PolyParseError> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.s.len() && self.s[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return self.err("expected a number");
        }
        let text = std::str::from_utf8(&self.s[start..self.pos]).unwrap();
        text.parse::<u64>().or_else(|_| {
            self.pos = start;
            self.err("number too large")
        })
    }
}

/// Parse a homogeneous polynomial in `nvars` variables x0..x{nvars-1}.
pub fn parse_poly(text: &str, field: PrimeField, nvars: usize) -> Result<HomogPoly, PolyParseError> {
    let mut c = Cursor { s: text.as_bytes(), pos: 0 };
    let mut terms: Vec<(Monomial, u32, usize)> = Vec::new();
    let mut first = true;
    loop {
        let mut negative = false;
        match c.peek() {
            None if first => return c.err("empty polynomial"),
            None => break,
            Some(b'+') if !first => c.pos += 1,
            Some(b'-') => {
                negative = true;
                c.pos += 1
            }
            Some(_) if first => {}
            Some(ch) => return c.err(format!("expected '+' or '-', found '{}'", ch as char)),
        }
        first = false;
        let term_start = c.pos;
        let mut coeff: u64 = 1;
        let mut mono = vec![0u16; nvars];
        loop {
            match c.peek() {
                Some(ch) if ch.is_ascii_digit() => {
                    let v = c.number()? % field.p() as u64;
                    coeff = coeff * v % field.p() as u64;
                }
                Some(b'x') => {
                    let at = c.pos;
                    c.pos += 1;
                    if !c.s.get(c.pos).is_some_and(|b| b.is_ascii_digit()) {
                        return c.err("expected a variable index after 'x'");
                    }
                    let k = c.number()? as usize;
                    if k >= nvars {
                        c.pos = at;
                        return c.err(format!("variable x{k} out of range (ring has {nvars} variables)"));
                    }
                    let mut e = 1u64;
                    if c.peek() == Some(b'^') {
                        c.pos += 1;
                        e = c.number()?;
                    }
                    mono[k] = mono[k].saturating_add(e.min(u16::MAX as u64) as u16);
                }
                Some(ch) => return c.err(format!("unexpected character '{}'", ch as char)),
                None => return c.err("unexpected end of input"),
            }
            if c.peek() == Some(b'*') {
                c.pos += 1;
                continue;
            }
            break;
        }
        let mut v = (coeff % field.p() as u64) as u32;
        if negative {
            v = field.neg(v);
        }
        terms.push((Monomial(mono), v, term_start));
    }
    let nonzero: Vec<&(Monomial, u32, usize)> = terms.iter().filter(|t| t.1 != 0).collect();
    let degree = nonzero.first().map_or(0, |t| t.0.degree());
    for t in &nonzero {
        if t.0.degree() != degree {
            return Err(PolyParseError { col: t.2 + 1, msg: "polynomial is not homogeneous".into() });
        }
    }
    let terms: Vec<(Monomial, u32)> =
        nonzero.into_iter().map(|t| (t.0.clone(), t.1)).collect();
    let p = HomogPoly::from_terms(field, nvars, degree, terms);
    Ok(if p.is_zero() { HomogPoly::zero(field, nvars, 0) } else { p })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn round_trip_example() {
        let f = PrimeField::default();
        let p = parse_poly("2*x0^2*x3 - x1*x2^2", f, 4).unwrap();
        assert_eq!(p.degree(), 3);
        assert_eq!(p.to_string(), "2*x0^2*x3 - x1*x2^2");
        assert_eq!(parse_poly(&p.to_string(), f, 4).unwrap(), p);
    }

    #[test]
    fn constants_and_zero() {
        let f = PrimeField::default();
        assert_eq!(parse_poly("0", f, 2).unwrap().to_string(), "0");
        assert_eq!(parse_poly(" -3 ", f, 2).unwrap().to_string(), "-3");
        assert_eq!(parse_poly("x0 - x0", f, 2).unwrap().to_string(), "0");
    }

    #[test]
    fn errors_carry_columns() {
        let f = PrimeField::default();
        assert_eq!(parse_poly("x0 + x9", f, 4).unwrap_err().col, 6);
        assert_eq!(parse_poly("x0 + x1^2", f, 4).unwrap_err().col, 5);
        assert!(parse_poly("x0 ++ x1", f, 4).is_err());
        assert!(parse_poly("", f, 4).is_err());
    }
}
