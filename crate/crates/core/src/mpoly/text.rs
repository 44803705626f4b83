//! Polynomial text format.
//!
//! ```text
//! poly   := ["+" | "-"] term (("+" | "-") term)*
//! term   := factor ("*" factor)*
//! factor := var ["^" integer] | coeff
//! var    := "x" | "y" | "z"
//! coeff  := field digit string c_{k-1}..c_0
//! ```
//!
//! Printing lists terms in descending graded-lex order, omits unit coefficients and
//! writes every other coefficient as an `n`-digit string.

use std::fmt;

use super::{Monomial, MultiPoly, Var};
use crate::error::{Error, Result};
use crate::field::{Field, FieldElem};

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Plus,
    Minus,
    Star,
    Caret,
    Var(Var),
    Word(String),
}

fn lex(s: &str) -> Result<Vec<(usize, Tok)>> {
    let mut out = Vec::new();
    let chars: Vec<(usize, char)> = s.char_indices().collect();
    let mut i = 0;
    while i < chars.len() {
        let (pos, ch) = chars[i];
        let tok = match ch {
            c if c.is_whitespace() => {
                i += 1;
                continue;
            }
            '+' => Tok::Plus,
            '-' => Tok::Minus,
            '*' => Tok::Star,
            '^' => Tok::Caret,
            'x' => Tok::Var(Var::X),
            'y' => Tok::Var(Var::Y),
            'z' => Tok::Var(Var::Z),
            c if c.is_ascii_alphanumeric() => {
                let start = i;
                while i < chars.len() && chars[i].1.is_ascii_alphanumeric() && !matches!(chars[i].1, 'x' | 'y' | 'z') {
                    i += 1;
                }
                out.push((pos, Tok::Word(chars[start..i].iter().map(|&(_, c)| c).collect())));
                continue;
            }
            c => return Err(Error::Parse { pos, msg: format!("unexpected character `{c}`") }),
        };
        out.push((pos, tok));
        i += 1;
    }
    Ok(out)
}

struct Parser<'a> {
    field: &'a Field,
    toks: Vec<(usize, Tok)>,
    at: usize,
    end: usize,
}

impl Parser<'_> {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.at).map(|(_, t)| t)
    }

    fn pos(&self) -> usize {
        self.toks.get(self.at).map_or(self.end, |(p, _)| *p)
    }

    fn err<T>(&self, msg: impl Into<String>) -> Result<T> {
        Err(Error::Parse { pos: self.pos(), msg: msg.into() })
    }

    fn poly(&mut self) -> Result<MultiPoly> {
        let f = self.field;
        let mut out = MultiPoly::zero(f);
        let mut negate = match self.peek() {
            Some(Tok::Plus) => {
                self.at += 1;
                false
            }
            Some(Tok::Minus) => {
                self.at += 1;
                true
            }
            _ => false,
        };
        loop {
            let (m, c) = self.term()?;
            out.add_term(m, if negate { f.neg(c) } else { c });
            match self.peek() {
                None => return Ok(out),
                Some(Tok::Plus) => negate = false,
                Some(Tok::Minus) => negate = true,
                Some(_) => return self.err("expected `+` or `-`"),
            }
            self.at += 1;
        }
    }

    fn term(&mut self) -> Result<(Monomial, FieldElem)> {
        let f = self.field;
        let mut mono = Monomial::ONE;
        let mut coeff = FieldElem::ONE;
        loop {
            let pos = self.pos();
            match self.peek().cloned() {
                Some(Tok::Var(v)) => {
                    self.at += 1;
                    let mut e = 1;
                    if self.peek() == Some(&Tok::Caret) {
                        self.at += 1;
                        e = match self.peek() {
                            Some(Tok::Word(w)) => w
                                .parse::<u32>()
                                .map_err(|_| Error::Parse { pos: self.pos(), msg: format!("bad exponent `{w}`") })?,
                            _ => return self.err("expected an exponent"),
                        };
                        self.at += 1;
                    }
                    let mut shape = [0; 3];
                    shape[v.index()] = e;
                    mono = mono.mul(Monomial(shape));
                }
                Some(Tok::Word(w)) => {
                    let is_digits = w.chars().all(|c| c.to_digit(36).is_some_and(|d| d < f.p()));
                    if !is_digits && w.starts_with(|c: char| c.is_ascii_alphabetic()) {
                        return Err(Error::Parse { pos, msg: format!("unknown variable `{w}`") });
                    }
                    let c = f.parse_elem(&w).map_err(|_| Error::Parse {
                        pos,
                        msg: format!("coefficient `{w}` is not an element of {}", f.params()),
                    })?;
                    self.at += 1;
                    coeff = f.mul(coeff, c);
                }
                None => return self.err("unexpected end of input"),
                Some(_) => return self.err("expected a coefficient or variable"),
            }
            if self.peek() == Some(&Tok::Star) {
                self.at += 1;
            } else {
                return Ok((mono, coeff));
            }
        }
    }
}

impl MultiPoly {
    pub fn parse(field: &Field, text: &str) -> Result<MultiPoly> {
        let toks = lex(text)?;
        if toks.is_empty() {
            return Err(Error::Parse { pos: 0, msg: "empty polynomial".into() });
        }
        Parser { field, toks, at: 0, end: text.len() }.poly()
    }
}

impl fmt::Display for MultiPoly {
    fn fmt(&self, out: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(out, "0");
        }
        let parts: Vec<String> = self
            .terms()
            .rev()
            .map(|(m, c)| {
                let mut factors = Vec::new();
                if c != FieldElem::ONE || m == Monomial::ONE {
                    factors.push(self.field().format_elem(c));
                }
                for v in Var::ALL {
                    match m.exp(v) {
                        0 => {}
                        1 => factors.push(v.name().to_string()),
                        e => factors.push(format!("{}^{e}", v.name())),
                    }
                }
                factors.join("*")
            })
            .collect();
        write!(out, "{}", parts.join(" + "))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn funny_curve_parses() {
        let f = Field::gf(3, 1).unwrap();
        let p = MultiPoly::parse(&f, "x^3*y + y^3*z + z^3*x").unwrap();
        assert_eq!(p.num_terms(), 3);
        assert_eq!(p.degree(), Some(4));
        assert_eq!(p.to_string(), "x^3*y + x*z^3 + y^3*z");
    }

    #[test]
    fn zero_and_constants() {
        let f = Field::gf(2, 2).unwrap();
        assert!(MultiPoly::parse(&f, "0").unwrap().is_zero());
        assert_eq!(MultiPoly::parse(&f, "1").unwrap().to_string(), "01");
        assert_eq!(MultiPoly::parse(&f, "10*x + 11").unwrap().to_string(), "10*x + 11");
        assert!(MultiPoly::parse(&f, "x + x").unwrap().is_zero());
    }

    #[test]
    fn signs_and_repeated_factors() {
        let f = Field::gf(5, 1).unwrap();
        let p = MultiPoly::parse(&f, "-x*x + 2*3*y - 1").unwrap();
        assert_eq!(p.to_string(), "4*x^2 + y + 4");
    }

    #[test]
    fn errors_carry_positions() {
        let f = Field::gf(3, 1).unwrap();
        assert_eq!(MultiPoly::parse(&f, "x + w").unwrap_err(), Error::Parse { pos: 4, msg: "unknown variable `w`".into() });
        assert!(matches!(MultiPoly::parse(&f, "x + 3"), Err(Error::Parse { pos: 4, .. })));
        assert!(matches!(MultiPoly::parse(&f, "x +"), Err(Error::Parse { pos: 3, .. })));
        assert!(matches!(MultiPoly::parse(&f, "x ^ y"), Err(Error::Parse { .. })));
        assert!(matches!(MultiPoly::parse(&f, "x $ y"), Err(Error::Parse { pos: 2, .. })));
        assert!(MultiPoly::parse(&f, "").is_err());
        assert!(MultiPoly::parse(&f, "x y").is_err());
    }
}
