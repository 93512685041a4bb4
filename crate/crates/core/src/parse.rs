//! Text grammar for polynomials and ideals.
//!
//! Terms are joined by `+`/`-`, coefficients are integers or `p/q`, variables
//! are `x1..xn` or `t1..td`, powers use `^`, and juxtaposition multiplies
//! (an explicit `*` is also accepted): `3/2*x1^2*x2 - x3^3`.

use num_bigint::BigInt;
use num_traits::{One, Zero};
use thiserror::Error;

use crate::monomial::{Monomial, VarKind, VarSet};
use crate::poly::{Polynomial, Rational};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ParseError {
    #[error("unexpected character '{ch}' at position {pos}")]
    UnexpectedChar { ch: char, pos: usize },

    #[error("unexpected end of input at position {pos}")]
    UnexpectedEnd { pos: usize },

    #[error("variable index out of range at position {pos}: {name} (ring has {count} variables)")]
    VariableOutOfRange { name: String, pos: usize, count: usize },

    #[error("mixed variable families at position {pos}: '{name}' in a {expected}-variable context")]
    MixedVariables { name: String, pos: usize, expected: char },

    #[error("zero denominator at position {pos}")]
    ZeroDenominator { pos: usize },

    #[error("malformed exponent at position {pos}")]
    BadExponent { pos: usize },

    #[error("non-homogeneous generator at position {pos}: {detail}")]
    NonHomogeneous { pos: usize, detail: String },

    #[error("generator degree {degree} not divisible by c = {c} at position {pos}")]
    DegreeNotDivisible { degree: u32, c: u32, pos: usize },
}

#[derive(Debug, Clone, PartialEq)]
enum Token {
    Int(BigInt),
    Var { kind: char, index: usize, pos: usize },
    Plus,
    Minus,
    Star,
    Caret,
    Slash,
    Comma,
}

struct Lexer<'a> {
    src: &'a [u8],
    pos: usize,
}

impl<'a> Lexer<'a> {
    fn new(src: &'a str) -> Self {
        Lexer { src: src.as_bytes(), pos: 0 }
    }

    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Result<Option<(Token, usize)>, ParseError> {
        let saved = self.pos;
        let t = self.next_token()?;
        let result = t.map(|tok| (tok, self.pos));
        self.pos = saved;
        Ok(result)
    }

    fn next_token(&mut self) -> Result<Option<Token>, ParseError> {
        self.skip_ws();
        if self.pos >= self.src.len() {
            return Ok(None);
        }
        let start = self.pos;
        let ch = self.src[self.pos] as char;
        match ch {
            '+' => {
                self.pos += 1;
                Ok(Some(Token::Plus))
            }
            '-' => {
                self.pos += 1;
                Ok(Some(Token::Minus))
            }
            '*' => {
                self.pos += 1;
                Ok(Some(Token::Star))
            }
            '^' => {
                self.pos += 1;
                Ok(Some(Token::Caret))
            }
            '/' => {
                self.pos += 1;
                Ok(Some(Token::Slash))
            }
            ',' => {
                self.pos += 1;
                Ok(Some(Token::Comma))
            }
            '0'..='9' => {
                let mut end = self.pos;
                while end < self.src.len() && self.src[end].is_ascii_digit() {
                    end += 1;
                }
                let text = std::str::from_utf8(&self.src[self.pos..end]).unwrap();
                self.pos = end;
                Ok(Some(Token::Int(text.parse::<BigInt>().unwrap())))
            }
            'x' | 't' => {
                let mut end = self.pos + 1;
                while end < self.src.len() && self.src[end].is_ascii_digit() {
                    end += 1;
                }
                if end == self.pos + 1 {
                    return Err(ParseError::UnexpectedChar { ch, pos: start });
                }
                let idx: usize = std::str::from_utf8(&self.src[self.pos + 1..end])
                    .unwrap()
                    .parse()
                    .map_err(|_| ParseError::UnexpectedChar { ch, pos: start })?;
                self.pos = end;
                Ok(Some(Token::Var { kind: ch, index: idx, pos: start }))
            }
            _ => Err(ParseError::UnexpectedChar { ch, pos: start }),
        }
    }
}

/// Scans the text and reports which variable family it uses, if any.
/// Mixed families are a parse error.
pub fn detect_var_kind(text: &str) -> Result<Option<VarKind>, ParseError> {
    let mut lexer = Lexer::new(text);
    let mut seen: Option<char> = None;
    while let Some(tok) = lexer.next_token()? {
        if let Token::Var { kind, pos, index } = tok {
            match seen {
                None => seen = Some(kind),
                Some(k) if k == kind => {}
                Some(k) => {
                    return Err(ParseError::MixedVariables {
                        name: format!("{}{}", kind, index),
                        pos,
                        expected: k,
                    })
                }
            }
        }
    }
    Ok(seen.map(|k| if k == 'x' { VarKind::X } else { VarKind::T }))
}

/// Parses one polynomial in the given variable set.
pub fn parse_polynomial(text: &str, vars: VarSet) -> Result<Polynomial, ParseError> {
    let mut lexer = Lexer::new(text);
    let p = parse_poly_inner(&mut lexer, vars)?;
    lexer.skip_ws();
    if lexer.pos < lexer.src.len() {
        return Err(ParseError::UnexpectedChar {
            ch: lexer.src[lexer.pos] as char,
            pos: lexer.pos,
        });
    }
    Ok(p)
}

/// Parses a comma-separated generator list. Zero generators are dropped.
pub fn parse_generators(text: &str, vars: VarSet) -> Result<Vec<Polynomial>, ParseError> {
    let mut out = Vec::new();
    let mut lexer = Lexer::new(text);
    loop {
        let p = parse_poly_inner(&mut lexer, vars)?;
        if !p.is_zero() {
            out.push(p);
        }
        lexer.skip_ws();
        if lexer.pos >= lexer.src.len() {
            break;
        }
        match lexer.next_token()? {
            Some(Token::Comma) => continue,
            _ => {
                return Err(ParseError::UnexpectedChar {
                    ch: lexer.src[lexer.pos.saturating_sub(1)] as char,
                    pos: lexer.pos.saturating_sub(1),
                })
            }
        }
    }
    Ok(out)
}

/// Resolves a parsed variable token to a 0-based position in the set.
fn resolve_var(
    vars: VarSet,
    kind: char,
    index: usize,
    pos: usize,
) -> Result<usize, ParseError> {
    let out_of_range = |count: usize| ParseError::VariableOutOfRange {
        name: format!("{}{}", kind, index),
        pos,
        count,
    };
    match (vars.kind, kind) {
        (VarKind::X, 'x') | (VarKind::T, 't') => {
            if index == 0 || index > vars.count {
                Err(out_of_range(vars.count))
            } else {
                Ok(index - 1)
            }
        }
        (VarKind::X, other) | (VarKind::T, other) => Err(ParseError::MixedVariables {
            name: format!("{}{}", other, index),
            pos,
            expected: if vars.kind == VarKind::X { 'x' } else { 't' },
        }),
        (VarKind::Joint { x_count }, 'x') => {
            if index == 0 || index > x_count {
                Err(out_of_range(x_count))
            } else {
                Ok(index - 1)
            }
        }
        (VarKind::Joint { x_count }, _) => {
            if index == 0 || index > vars.count - x_count {
                Err(out_of_range(vars.count - x_count))
            } else {
                Ok(x_count + index - 1)
            }
        }
    }
}

fn parse_poly_inner(lexer: &mut Lexer, vars: VarSet) -> Result<Polynomial, ParseError> {
    let mut result = Polynomial::zero(vars);
    let mut first = true;
    loop {
        lexer.skip_ws();
        if lexer.pos >= lexer.src.len() {
            if first {
                return Err(ParseError::UnexpectedEnd { pos: lexer.pos });
            }
            break;
        }
        // Sign or term boundary.
        let mut sign = Rational::one();
        match lexer.peek()? {
            Some((Token::Plus, after)) => {
                if first {
                    return Err(ParseError::UnexpectedChar { ch: '+', pos: lexer.pos });
                }
                lexer.pos = after;
            }
            Some((Token::Minus, after)) => {
                sign = -sign;
                lexer.pos = after;
            }
            Some((Token::Comma, _)) => break,
            _ if first => {}
            _ => break,
        }
        let term = parse_term(lexer, vars)?;
        result = result.add(&term.scale(&sign));
        first = false;
        match lexer.peek()? {
            Some((Token::Plus, _)) | Some((Token::Minus, _)) => continue,
            Some((Token::Comma, _)) | None => break,
            Some((tok, _)) => {
                return Err(ParseError::UnexpectedChar {
                    ch: match tok {
                        Token::Star => '*',
                        Token::Caret => '^',
                        Token::Slash => '/',
                        _ => '?',
                    },
                    pos: lexer.pos,
                })
            }
        }
    }
    Ok(result)
}

fn parse_term(lexer: &mut Lexer, vars: VarSet) -> Result<Polynomial, ParseError> {
    let mut coeff = Rational::one();
    let mut exps = vec![0u32; vars.count];
    let mut saw_factor = false;

    loop {
        lexer.skip_ws();
        let pos_before = lexer.pos;
        match lexer.peek()? {
            Some((Token::Int(n), after)) => {
                lexer.pos = after;
                let mut value = Rational::from_integer(n);
                // Optional denominator.
                if let Some((Token::Slash, after_slash)) = lexer.peek()? {
                    lexer.pos = after_slash;
                    match lexer.next_token()? {
                        Some(Token::Int(d)) => {
                            if d.is_zero() {
                                return Err(ParseError::ZeroDenominator { pos: pos_before });
                            }
                            value /= Rational::from_integer(d);
                        }
                        _ => return Err(ParseError::UnexpectedEnd { pos: lexer.pos }),
                    }
                }
                coeff *= value;
                saw_factor = true;
            }
            Some((Token::Var { kind, index, pos }, after)) => {
                let position = resolve_var(vars, kind, index, pos)?;
                lexer.pos = after;
                let mut e: u32 = 1;
                if let Some((Token::Caret, after_caret)) = lexer.peek()? {
                    lexer.pos = after_caret;
                    match lexer.next_token()? {
                        Some(Token::Int(n)) => {
                            e = u32::try_from(&n)
                                .map_err(|_| ParseError::BadExponent { pos: lexer.pos })?;
                        }
                        _ => return Err(ParseError::BadExponent { pos: lexer.pos }),
                    }
                }
                exps[position] += e;
                saw_factor = true;
            }
            Some((Token::Star, after)) => {
                if !saw_factor {
                    return Err(ParseError::UnexpectedChar { ch: '*', pos: lexer.pos });
                }
                lexer.pos = after;
            }
            _ => break,
        }
    }
    if !saw_factor {
        return Err(ParseError::UnexpectedEnd { pos: lexer.pos });
    }
    Ok(Polynomial::from_term(vars, Monomial::new(exps), coeff))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::{rat, rat_int};

    #[test]
    fn parses_the_reference_example() {
        let vars = VarSet::x(3);
        let p = parse_polynomial("3/2*x1^2*x2 - x3^3", vars).unwrap();
        assert_eq!(p.coeff(&Monomial::new(vec![2, 1, 0])), rat(3, 2));
        assert_eq!(p.coeff(&Monomial::new(vec![0, 0, 3])), rat_int(-1));
        assert_eq!(p.num_terms(), 2);
    }

    #[test]
    fn juxtaposition_multiplies() {
        let vars = VarSet::x(2);
        let p = parse_polynomial("2x1x2", vars).unwrap();
        assert_eq!(p.coeff(&Monomial::new(vec![1, 1])), rat_int(2));
    }

    #[test]
    fn roundtrip_through_render() {
        let vars = VarSet::t(3);
        for text in ["t2^2 - t1*t3", "t1", "1/3*t1*t2 + 5", "-t1^2 + 2/7*t3"] {
            let p = parse_polynomial(text, vars).unwrap();
            let q = parse_polynomial(&p.render(), vars).unwrap();
            assert_eq!(p, q);
        }
    }

    #[test]
    fn generator_lists() {
        let vars = VarSet::t(3);
        let gens = parse_generators("t1, t2^2 - t1*t3, 0", vars).unwrap();
        assert_eq!(gens.len(), 2);
    }

    #[test]
    fn mixed_variables_rejected() {
        let err = detect_var_kind("x1 + t2").unwrap_err();
        assert!(matches!(err, ParseError::MixedVariables { .. }));
    }

    #[test]
    fn out_of_range_index() {
        let vars = VarSet::t(3);
        let err = parse_polynomial("t4", vars).unwrap_err();
        assert!(matches!(err, ParseError::VariableOutOfRange { .. }));
    }

    #[test]
    fn error_positions_reported() {
        let vars = VarSet::x(2);
        match parse_polynomial("x1 + ?", vars).unwrap_err() {
            ParseError::UnexpectedChar { ch, pos } => {
                assert_eq!(ch, '?');
                assert_eq!(pos, 5);
            }
            other => panic!("unexpected error {other:?}"),
        }
    }
}
