//! Text syntax for tropical polynomials.
//!
//! ```text
//! poly   := term ("+" term)*
//! term   := factor ("*" factor)*
//! factor := coeff | var ["^" nat]
//! var    := "x" | "y"
//! coeff  := ["-"] digits ["/" digits | "." digits]
//! ```
//!
//! `+` is tropical addition (max), `*` tropical multiplication (plus) and
//! `^` a tropical power. Repeated monomials merge by taking the larger
//! coefficient.

use std::collections::BTreeMap;
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{pow, Zero};
use thiserror::Error;

use super::polynomial::TropicalPolynomial;
use crate::exact::Rational;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ParseError {
    #[error("empty input")]
    Empty,
    #[error("syntax error at {position}: {message}")]
    Syntax { position: usize, message: String },
}

#[derive(Clone, Debug, PartialEq)]
enum Token {
    Number(Rational),
    Var(char),
    Caret,
    Star,
    Plus,
}

fn syntax(position: usize, message: impl Into<String>) -> ParseError {
    ParseError::Syntax { position, message: message.into() }
}

fn tokenize(text: &str) -> Result<Vec<(usize, Token)>, ParseError> {
    let chars: Vec<(usize, char)> = text.char_indices().collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let (pos, c) = chars[i];
        match c {
            c if c.is_whitespace() => i += 1,
            '+' => {
                out.push((pos, Token::Plus));
                i += 1;
            }
            '*' => {
                out.push((pos, Token::Star));
                i += 1;
            }
            '^' => {
                out.push((pos, Token::Caret));
                i += 1;
            }
            'x' | 'y' => {
                out.push((pos, Token::Var(c)));
                i += 1;
            }
            '-' | '0'..='9' => {
                let start = i;
                if c == '-' {
                    i += 1;
                }
                let digits = |i: &mut usize| {
                    let s = *i;
                    while *i < chars.len() && chars[*i].1.is_ascii_digit() {
                        *i += 1;
                    }
                    chars[s..*i].iter().map(|(_, c)| *c).collect::<String>()
                };
                let whole = digits(&mut i);
                if whole.is_empty() {
                    return Err(syntax(pos, "expected digits"));
                }
                let mut value = Rational::from_integer(BigInt::from_str(&whole).unwrap());
                if i < chars.len() && chars[i].1 == '/' {
                    i += 1;
                    let den = digits(&mut i);
                    let den = BigInt::from_str(&den).map_err(|_| syntax(chars[i - 1].0, "expected denominator"))?;
                    if den.is_zero() {
                        return Err(syntax(pos, "zero denominator"));
                    }
                    value /= Rational::from_integer(den);
                } else if i < chars.len() && chars[i].1 == '.' {
                    i += 1;
                    let frac = digits(&mut i);
                    if frac.is_empty() {
                        return Err(syntax(chars[i - 1].0, "expected digits after '.'"));
                    }
                    let scale = pow(BigInt::from(10), frac.len());
                    value += Rational::new(BigInt::from_str(&frac).unwrap(), scale);
                }
                if chars[start].1 == '-' {
                    value = -value;
                }
                out.push((pos, Token::Number(value)));
            }
            other => return Err(syntax(pos, format!("unexpected character {other:?}"))),
        }
    }
    Ok(out)
}

/// Parses a tropical polynomial in `x` and `y`.
pub fn parse(text: &str) -> Result<TropicalPolynomial, ParseError> {
    let tokens = tokenize(text)?;
    if tokens.is_empty() {
        return Err(ParseError::Empty);
    }
    let end = text.len();
    let mut terms: BTreeMap<(u32, u32), Rational> = BTreeMap::new();
    let mut k = 0;
    loop {
        // term
        let mut coeff = Rational::zero();
        let mut exps = (0u32, 0u32);
        loop {
            match tokens.get(k) {
                Some((_, Token::Number(r))) => {
                    coeff += r;
                    k += 1;
                }
                Some((_, Token::Var(v))) => {
                    let v = *v;
                    k += 1;
                    let mut power = 1u32;
                    if let Some((_, Token::Caret)) = tokens.get(k) {
                        k += 1;
                        match tokens.get(k) {
                            Some((p, Token::Number(r))) => {
                                if !r.is_integer() || *r < Rational::zero() {
                                    return Err(syntax(*p, "exponent must be a natural number"));
                                }
                                power = u32::try_from(r.to_integer())
                                    .map_err(|_| syntax(*p, "exponent too large"))?;
                                k += 1;
                            }
                            Some((p, _)) => return Err(syntax(*p, "expected exponent")),
                            None => return Err(syntax(end, "expected exponent")),
                        }
                    }
                    if v == 'x' {
                        exps.0 += power;
                    } else {
                        exps.1 += power;
                    }
                }
                Some((p, _)) => return Err(syntax(*p, "expected coefficient or variable")),
                None => return Err(syntax(end, "expected coefficient or variable")),
            }
            match tokens.get(k) {
                Some((_, Token::Star)) => k += 1,
                _ => break,
            }
        }
        terms
            .entry(exps)
            .and_modify(|c| {
                if coeff > *c {
                    *c = coeff.clone();
                }
            })
            .or_insert(coeff);
        match tokens.get(k) {
            None => break,
            Some((_, Token::Plus)) => k += 1,
            Some((p, _)) => return Err(syntax(*p, "expected '+'")),
        }
    }
    Ok(TropicalPolynomial::from_map(terms).expect("parser produces at least one term"))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{int, rat};

    fn map(t: &[((u32, u32), Rational)]) -> BTreeMap<(u32, u32), Rational> {
        t.iter().cloned().collect()
    }

    #[test]
    fn linear_example() {
        let g = parse("3*x + 2*y + 0").unwrap();
        assert_eq!(g.terms(), &map(&[((1, 0), int(3)), ((0, 1), int(2)), ((0, 0), int(0))]));
    }

    #[test]
    fn constant() {
        assert_eq!(parse("0").unwrap().terms(), &map(&[((0, 0), int(0))]));
    }

    #[test]
    fn squares() {
        let g = parse("x^2 + y^2 + 0").unwrap();
        assert_eq!(g.terms(), &map(&[((2, 0), int(0)), ((0, 2), int(0)), ((0, 0), int(0))]));
    }

    #[test]
    fn rationals_negatives_and_products() {
        let g = parse("-3/2*x*y^2 + 1.25 + x*y*y").unwrap();
        assert_eq!(g.terms(), &map(&[((1, 2), int(0)), ((0, 0), rat(5, 4))]));
        let g = parse("2*x + 5*x").unwrap();
        assert_eq!(g.terms(), &map(&[((1, 0), int(5))]));
    }

    #[test]
    fn errors() {
        assert_eq!(parse("   "), Err(ParseError::Empty));
        assert!(matches!(parse("3*z"), Err(ParseError::Syntax { position: 2, .. })));
        assert!(matches!(parse("x +"), Err(ParseError::Syntax { position: 3, .. })));
        assert!(matches!(parse("x^y"), Err(ParseError::Syntax { position: 2, .. })));
        assert!(matches!(parse("x^-1"), Err(ParseError::Syntax { .. })));
        assert!(matches!(parse("x y"), Err(ParseError::Syntax { position: 2, .. })));
        assert!(matches!(parse("1/0"), Err(ParseError::Syntax { .. })));
    }
}
