//! Parsing of field elements and twisted polynomials.
//!
//! Coefficients may be written symbolically in the generator `x` of `K`
//! (`t^2 - (x+1)*t - 2x`) or as integer encodings (`t^2 + 5*t + 7`). Integers
//! below `p` mean the same thing in both readings; an integer `>= p` in an
//! expression that also mentions `x` is rejected as ambiguous.

use crate::error::{Error, Result};
use crate::gf::{Elem, FieldTower};
use crate::skewpoly::SkewPoly;

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Num(u64),
    X,
    T,
    Plus,
    Minus,
    Star,
    Caret,
    LParen,
    RParen,
}

fn tokenize(s: &str) -> Result<Vec<Tok>> {
    let mut out = Vec::new();
    let chars: Vec<char> = s.chars().collect();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        match c {
            ' ' | '\t' => {}
            '+' => out.push(Tok::Plus),
            '-' => out.push(Tok::Minus),
            '*' => out.push(Tok::Star),
            '^' => out.push(Tok::Caret),
            '(' => out.push(Tok::LParen),
            ')' => out.push(Tok::RParen),
            'x' => out.push(Tok::X),
            't' => out.push(Tok::T),
            d if d.is_ascii_digit() => {
                let start = i;
                while i + 1 < chars.len() && chars[i + 1].is_ascii_digit() {
                    i += 1;
                }
                let text: String = chars[start..=i].iter().collect();
                let v = text.parse().map_err(|_| Error::Parse(format!("bad integer {text}")))?;
                out.push(Tok::Num(v));
            }
            other => return Err(Error::Parse(format!("unexpected character {other:?} in {s:?}"))),
        }
        i += 1;
    }
    Ok(out)
}

struct Parser<'a> {
    tower: &'a FieldTower,
    toks: Vec<Tok>,
    pos: usize,
    allow_t: bool,
    saw_x: bool,
    saw_encoding: bool,
}

impl<'a> Parser<'a> {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos)
    }

    fn next(&mut self) -> Option<Tok> {
        let t = self.toks.get(self.pos).cloned();
        self.pos += 1;
        t
    }

    fn exponent(&mut self) -> Result<u64> {
        if self.peek() == Some(&Tok::Caret) {
            self.pos += 1;
            match self.next() {
                Some(Tok::Num(e)) => Ok(e),
                other => Err(Error::Parse(format!("expected exponent, found {other:?}"))),
            }
        } else {
            Ok(1)
        }
    }

    fn literal(&mut self, v: u64) -> Result<Elem> {
        if v >= self.tower.p() as u64 {
            self.saw_encoding = true;
        }
        self.tower.from_encoding(v)
    }

    /// Sum of terms; each term is (coefficient, power of t).
    fn sum(&mut self) -> Result<Vec<(Elem, usize)>> {
        let tw = self.tower;
        let mut terms = Vec::new();
        let mut negate = false;
        match self.peek() {
            Some(Tok::Minus) => {
                self.pos += 1;
                negate = true;
            }
            Some(Tok::Plus) => self.pos += 1,
            _ => {}
        }
        loop {
            let (c, e) = self.term()?;
            terms.push((if negate { tw.neg(c) } else { c }, e));
            match self.peek() {
                Some(Tok::Plus) => {
                    self.pos += 1;
                    negate = false;
                }
                Some(Tok::Minus) => {
                    self.pos += 1;
                    negate = true;
                }
                _ => break,
            }
        }
        Ok(terms)
    }

    fn term(&mut self) -> Result<(Elem, usize)> {
        let tw = self.tower;
        let mut coeff = Elem::ONE;
        let mut t_power: Option<usize> = None;
        let mut any = false;
        loop {
            match self.peek() {
                Some(Tok::Star) if any => {
                    self.pos += 1;
                    continue;
                }
                Some(Tok::Num(_)) | Some(Tok::X) | Some(Tok::T) | Some(Tok::LParen) => {}
                _ => break,
            }
            if t_power.is_some() {
                return Err(Error::Parse("t must be the last factor of a term".into()));
            }
            match self.next().expect("peeked") {
                Tok::Num(v) => {
                    let e = self.literal(v)?;
                    let k = self.exponent()?;
                    coeff = tw.mul(coeff, tw.pow(e, k));
                }
                Tok::X => {
                    self.saw_x = true;
                    let k = self.exponent()?;
                    coeff = tw.mul(coeff, tw.pow(tw.generator(), k));
                }
                Tok::T => {
                    if !self.allow_t {
                        return Err(Error::Parse("t is not allowed in a field element".into()));
                    }
                    t_power = Some(self.exponent()? as usize);
                }
                Tok::LParen => {
                    let saved = self.allow_t;
                    self.allow_t = false;
                    let inner = self.sum()?;
                    self.allow_t = saved;
                    if self.next() != Some(Tok::RParen) {
                        return Err(Error::Parse("unbalanced parentheses".into()));
                    }
                    let v = inner.iter().fold(Elem::ZERO, |acc, &(c, _)| tw.add(acc, c));
                    let k = self.exponent()?;
                    coeff = tw.mul(coeff, tw.pow(v, k));
                }
                _ => unreachable!(),
            }
            any = true;
        }
        if !any {
            return Err(Error::Parse(format!("expected a term at token {}", self.pos)));
        }
        Ok((coeff, t_power.unwrap_or(0)))
    }

    fn finish(&self) -> Result<()> {
        if self.pos != self.toks.len() {
            return Err(Error::Parse(format!("trailing input at token {}", self.pos)));
        }
        if self.saw_x && self.saw_encoding {
            return Err(Error::Parse(
                "ambiguous: integer encodings >= p mixed with the symbol x".into(),
            ));
        }
        Ok(())
    }
}

fn parser<'a>(tower: &'a FieldTower, s: &str, allow_t: bool) -> Result<Parser<'a>> {
    Ok(Parser { tower, toks: tokenize(s)?, pos: 0, allow_t, saw_x: false, saw_encoding: false })
}

/// Parses a twisted polynomial such as `t^2 - x` or `1 + 3*t + 1*t^2`.
pub fn parse_poly(tower: &FieldTower, s: &str) -> Result<SkewPoly> {
    let mut p = parser(tower, s, true)?;
    let terms = p.sum()?;
    p.finish()?;
    let len = terms.iter().map(|&(_, e)| e + 1).max().unwrap_or(0);
    let mut coeffs = vec![Elem::ZERO; len];
    for (c, e) in terms {
        coeffs[e] = tower.add(coeffs[e], c);
    }
    Ok(SkewPoly::new(coeffs))
}

/// Parses an element of `K` such as `x+1`, `2x` or the encoding `5`.
pub fn parse_elem(tower: &FieldTower, s: &str) -> Result<Elem> {
    let mut p = parser(tower, s, false)?;
    let terms = p.sum()?;
    p.finish()?;
    Ok(terms.iter().fold(Elem::ZERO, |acc, &(c, _)| tower.add(acc, c)))
}

/// Human-readable form `t^2 - (x+1)*t - 2x` style, monic terms first.
pub fn format_poly_symbolic(tower: &FieldTower, f: &SkewPoly) -> String {
    if f.is_zero() {
        return "0".into();
    }
    let mut out = String::new();
    for (i, &c) in f.coeffs().iter().enumerate().rev() {
        if c.is_zero() {
            continue;
        }
        let neg = tower.neg(c);
        // prefer "- a" when -c has the shorter symbolic form
        let (sign, mag) = if tower.p() != 2
            && tower.format_symbolic(neg).len() < tower.format_symbolic(c).len()
        {
            ("-", neg)
        } else {
            ("+", c)
        };
        let mag_text = tower.format_symbolic(mag);
        let mag_text = if mag_text.contains('+') && (i > 0 || sign == "-") { format!("({mag_text})") } else { mag_text };
        let tpart = match i {
            0 => String::new(),
            1 => "t".into(),
            _ => format!("t^{i}"),
        };
        let body = match (mag == Elem::ONE, i) {
            (true, 0) => "1".to_string(),
            (true, _) => tpart,
            (false, 0) => mag_text,
            (false, _) => format!("{mag_text}*{tpart}"),
        };
        if out.is_empty() {
            if sign == "-" {
                out.push('-');
            }
        } else {
            out.push_str(&format!(" {sign} "));
        }
        out.push_str(&body);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn symbolic_inputs() {
        let t9 = FieldTower::new(3, 1, 2).unwrap();
        let f = parse_poly(&t9, "t^2 - x").unwrap();
        assert_eq!(f.coeffs(), &[t9.neg(t9.generator()), Elem::ZERO, Elem::ONE]);
        let g = parse_poly(&t9, "t^2 - (x+1)").unwrap();
        assert_eq!(g.coeff(0), t9.neg(t9.add(t9.generator(), Elem::ONE)));
        let h = parse_poly(&t9, "t^2 - 2x*t - 1").unwrap();
        assert_eq!(h.coeff(1), t9.neg(t9.mul(t9.constant(2), t9.generator())));
        assert_eq!(parse_elem(&t9, "2x+1").unwrap(), t9.from_coeffs(&[1, 2]).unwrap());
        assert_eq!(parse_elem(&t9, "x^2").unwrap(), t9.constant(2));
    }

    #[test]
    fn encoding_inputs() {
        let t9 = FieldTower::new(3, 1, 2).unwrap();
        let f = parse_poly(&t9, "5 + 1*t^2").unwrap();
        assert_eq!(f.coeff(0), Elem(5));
        assert_eq!(parse_elem(&t9, "7").unwrap(), Elem(7));
    }

    #[test]
    fn rejects_ambiguous_and_malformed() {
        let t9 = FieldTower::new(3, 1, 2).unwrap();
        assert!(parse_poly(&t9, "t^2 - 5*x").is_err());
        assert!(parse_poly(&t9, "t*x").is_err());
        assert!(parse_poly(&t9, "t^2 - (t)").is_err());
        assert!(parse_poly(&t9, "t^2 +").is_err());
        assert!(parse_poly(&t9, "9*t").is_err());
        assert!(parse_elem(&t9, "t").is_err());
    }

    proptest! {
        #[test]
        fn canonical_text_round_trips(coeffs in proptest::collection::vec(0u32..9, 0..6)) {
            let t9 = FieldTower::new(3, 1, 2).unwrap();
            let f = SkewPoly::new(coeffs.into_iter().map(Elem).collect());
            prop_assert_eq!(parse_poly(&t9, &f.to_text()).unwrap(), f.clone());
            prop_assert_eq!(parse_poly(&t9, &format_poly_symbolic(&t9, &f)).unwrap(), f);
        }
    }
}
