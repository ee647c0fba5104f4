//! Text grammar for polynomials and weights.
//!
//! Polynomials: variables `x1..x<n>`, integer or rational coefficients
//! (`-3/2`), operators `+ - * ^`, parentheses. Implicit multiplication is
//! not accepted; whitespace is insignificant.
//!
//! Weights: rank 1 as `2,3,5`; rank r as `[(0,1),(1,0),(1,1)]` with the
//! lexicographic order first-coordinate dominant.

use crate::coeff::Ring;
use crate::poly::Polynomial;
use crate::worder::{LexVec, Weight};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("parse error at offset {offset}: {message}")]
pub struct ParseError {
    pub offset: usize,
    pub message: String,
}

fn err<T>(offset: usize, message: impl Into<String>) -> Result<T, ParseError> {
    Err(ParseError {
        offset,
        message: message.into(),
    })
}

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Num(i64),
    Var(usize),
    Plus,
    Minus,
    Star,
    Caret,
    Slash,
    LParen,
    RParen,
    End,
}

struct Lexer<'a> {
    src: &'a [u8],
    pos: usize,
}

impl<'a> Lexer<'a> {
    fn new(src: &'a str) -> Self {
        Lexer {
            src: src.as_bytes(),
            pos: 0,
        }
    }

    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn next(&mut self) -> Result<(Tok, usize), ParseError> {
        self.skip_ws();
        let start = self.pos;
        if self.pos >= self.src.len() {
            return Ok((Tok::End, start));
        }
        let c = self.src[self.pos];
        let tok = match c {
            b'+' => Tok::Plus,
            b'-' => Tok::Minus,
            b'*' => Tok::Star,
            b'^' => Tok::Caret,
            b'/' => Tok::Slash,
            b'(' => Tok::LParen,
            b')' => Tok::RParen,
            b'0'..=b'9' => {
                let mut end = self.pos;
                while end < self.src.len() && self.src[end].is_ascii_digit() {
                    end += 1;
                }
                let text = std::str::from_utf8(&self.src[self.pos..end]).unwrap();
                let v: i64 = match text.parse() {
                    Ok(v) => v,
                    Err(_) => return err(start, "integer literal too large"),
                };
                self.pos = end;
                return Ok((Tok::Num(v), start));
            }
            b'x' => {
                let mut end = self.pos + 1;
                while end < self.src.len() && self.src[end].is_ascii_digit() {
                    end += 1;
                }
                if end == self.pos + 1 {
                    return err(start, "variable index expected after `x`");
                }
                let text = std::str::from_utf8(&self.src[self.pos + 1..end]).unwrap();
                let idx: usize = match text.parse() {
                    Ok(v) => v,
                    Err(_) => return err(start, "variable index too large"),
                };
                if idx == 0 {
                    return err(start, "variable indices start at 1");
                }
                self.pos = end;
                return Ok((Tok::Var(idx - 1), start));
            }
            _ => return err(start, format!("unexpected character `{}`", c as char)),
        };
        self.pos += 1;
        Ok((tok, start))
    }
}

struct Parser<'a> {
    lexer: Lexer<'a>,
    tok: Tok,
    tok_at: usize,
    ring: Ring,
    nvars: usize,
}

impl<'a> Parser<'a> {
    fn new(src: &'a str, nvars: usize, ring: Ring) -> Result<Self, ParseError> {
        let mut lexer = Lexer::new(src);
        let (tok, tok_at) = lexer.next()?;
        Ok(Parser {
            lexer,
            tok,
            tok_at,
            ring,
            nvars,
        })
    }

    fn bump(&mut self) -> Result<(), ParseError> {
        let (tok, at) = self.lexer.next()?;
        self.tok = tok;
        self.tok_at = at;
        Ok(())
    }

    // expr := ['-'] term (('+'|'-') term)*
    fn expr(&mut self) -> Result<Polynomial, ParseError> {
        let mut negate = false;
        if self.tok == Tok::Minus {
            negate = true;
            self.bump()?;
        }
        let mut acc = self.term()?;
        if negate {
            acc = acc.neg();
        }
        loop {
            match self.tok {
                Tok::Plus => {
                    self.bump()?;
                    let t = self.term()?;
                    acc = acc.add(&t).unwrap();
                }
                Tok::Minus => {
                    self.bump()?;
                    let t = self.term()?;
                    acc = acc.sub(&t).unwrap();
                }
                _ => return Ok(acc),
            }
        }
    }

    // term := factor ('*' factor)*
    fn term(&mut self) -> Result<Polynomial, ParseError> {
        let mut acc = self.factor()?;
        while self.tok == Tok::Star {
            self.bump()?;
            let f = self.factor()?;
            acc = acc.mul(&f).unwrap();
        }
        Ok(acc)
    }

    // factor := atom ('^' uint)?
    fn factor(&mut self) -> Result<Polynomial, ParseError> {
        let base = self.atom()?;
        if self.tok == Tok::Caret {
            self.bump()?;
            let at = self.tok_at;
            match self.tok {
                Tok::Num(v) if v >= 0 => {
                    let e = u32::try_from(v).map_err(|_| ParseError {
                        offset: at,
                        message: "exponent too large".into(),
                    })?;
                    self.bump()?;
                    Ok(base.pow(e))
                }
                _ => err(at, "nonnegative integer exponent expected"),
            }
        } else {
            Ok(base)
        }
    }

    // atom := number['/'number] | var | '(' expr ')'
    fn atom(&mut self) -> Result<Polynomial, ParseError> {
        let at = self.tok_at;
        match self.tok.clone() {
            Tok::Num(v) => {
                self.bump()?;
                if self.tok == Tok::Slash {
                    self.bump()?;
                    let dat = self.tok_at;
                    match self.tok {
                        Tok::Num(d) if d != 0 => {
                            self.bump()?;
                            let c = self.ring.from_ratio(v, d).map_err(|e| ParseError {
                                offset: dat,
                                message: e.to_string(),
                            })?;
                            Ok(Polynomial::constant(self.ring, self.nvars, c))
                        }
                        _ => err(dat, "nonzero integer denominator expected"),
                    }
                } else {
                    Ok(Polynomial::constant(
                        self.ring,
                        self.nvars,
                        self.ring.from_i64(v),
                    ))
                }
            }
            Tok::Var(i) => {
                if i >= self.nvars {
                    return err(at, format!("variable x{} out of range", i + 1));
                }
                self.bump()?;
                Ok(Polynomial::variable(self.ring, self.nvars, i))
            }
            Tok::LParen => {
                self.bump()?;
                let inner = self.expr()?;
                if self.tok != Tok::RParen {
                    return err(self.tok_at, "closing parenthesis expected");
                }
                self.bump()?;
                Ok(inner)
            }
            _ => err(at, "number, variable or parenthesized expression expected"),
        }
    }
}

/// Parses a polynomial in `nvars` variables over `ring`.
pub fn parse_polynomial(src: &str, nvars: usize, ring: Ring) -> Result<Polynomial, ParseError> {
    let mut p = Parser::new(src, nvars, ring)?;
    let poly = p.expr()?;
    if p.tok != Tok::End {
        return err(p.tok_at, "trailing input");
    }
    Ok(poly)
}

/// Parses a weight: `2,3,5` (rank 1) or `[(0,1),(1,0),(1,1)]` (rank r).
pub fn parse_weight(src: &str) -> Result<Weight, ParseError> {
    let t = src.trim();
    if t.starts_with('[') {
        if !t.ends_with(']') {
            return err(t.len(), "closing `]` expected");
        }
        let inner = &t[1..t.len() - 1];
        let mut entries = Vec::new();
        let mut rest = inner.trim();
        while !rest.is_empty() {
            if !rest.starts_with('(') {
                return err(0, "`(` expected in weight tuple list");
            }
            let close = match rest.find(')') {
                Some(c) => c,
                None => return err(0, "closing `)` expected"),
            };
            let coords = parse_int_list(&rest[1..close])?;
            entries.push(LexVec::new(coords));
            rest = rest[close + 1..].trim_start();
            if let Some(r) = rest.strip_prefix(',') {
                rest = r.trim_start();
            } else if !rest.is_empty() {
                return err(0, "`,` expected between weight tuples");
            }
        }
        if entries.is_empty() {
            return err(0, "empty weight");
        }
        Weight::new(entries).map_err(|m| ParseError {
            offset: 0,
            message: m,
        })
    } else {
        let coords = parse_int_list(t)?;
        if coords.is_empty() {
            return err(0, "empty weight");
        }
        Weight::new(coords.into_iter().map(|v| LexVec::new(vec![v])).collect()).map_err(|m| {
            ParseError {
                offset: 0,
                message: m,
            }
        })
    }
}

fn parse_int_list(src: &str) -> Result<Vec<i64>, ParseError> {
    src.split(',')
        .map(|piece| {
            piece.trim().parse::<i64>().map_err(|_| ParseError {
                offset: 0,
                message: format!("cannot parse integer `{}`", piece.trim()),
            })
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coeff::Ring;

    #[test]
    fn parses_terms_and_rationals() {
        let p = parse_polynomial("x1^2 - 3/2*x2", 2, Ring::Rationals).unwrap();
        assert_eq!(p.num_terms(), 2);
        assert_eq!(
            p.coeff(&[0, 1]),
            Ring::Rationals.from_ratio(-3, 2).unwrap()
        );
        assert_eq!(p.coeff(&[2, 0]), Ring::Rationals.one());
    }

    #[test]
    fn reports_position_on_dangling_operator() {
        let e = parse_polynomial("x1 +", 2, Ring::Rationals).unwrap_err();
        assert_eq!(e.offset, 4);
    }

    #[test]
    fn binomial_cube_expands() {
        let p = parse_polynomial("(x1+x2)^3", 2, Ring::Rationals).unwrap();
        assert_eq!(p.num_terms(), 4);
        assert_eq!(p.coeff(&[2, 1]), Ring::Rationals.from_i64(3));
    }

    #[test]
    fn rejects_implicit_multiplication() {
        assert!(parse_polynomial("2x1", 2, Ring::Rationals).is_err());
    }

    #[test]
    fn weight_formats() {
        let w = parse_weight("2,3,5").unwrap();
        assert_eq!(w.len(), 3);
        assert_eq!(w.rank(), 1);
        let w2 = parse_weight("[(0,1),(1,0),(1,1)]").unwrap();
        assert_eq!(w2.len(), 3);
        assert_eq!(w2.rank(), 2);
    }
}
