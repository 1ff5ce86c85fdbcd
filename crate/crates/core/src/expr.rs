//! A small bracket-expression language for derivations.
//!
//! Grammar:
//!
//! ```text
//! expr    := ['-'] term (('+' | '-') term)*
//! term    := [rational '*'] primary
//! primary := 'eps' '(' int ')' | 'phi0' | 'h' '(' int ',' int ',' int ')'
//!          | '[' expr ',' expr ']' | 'ad' '(' expr ')' ['^' int] '(' expr ')'
//!          | '(' expr ')'
//! ```
//!
//! Examples: `[eps(4), eps(6)]`, `h(2,8,2)`, `4*h(2,10,3) - 25*h(4,8,3)`,
//! `ad(eps(0))^2(eps(8))`.

use crate::derivations::{make_eps, make_h, make_phi0, Derivation};
use crate::rat::Rat;
use crate::{Error, Result};

#[derive(Debug, Clone, PartialEq)]
enum Token {
    Int(u64),
    Ident(String),
    LParen,
    RParen,
    LBracket,
    RBracket,
    Comma,
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
}

fn tokenize(s: &str) -> Result<Vec<Token>> {
    let mut out = Vec::new();
    let bytes = s.as_bytes();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i] as char;
        match c {
            ' ' | '\t' | '\n' | '\r' => i += 1,
            '(' => {
                out.push(Token::LParen);
                i += 1;
            }
            ')' => {
                out.push(Token::RParen);
                i += 1;
            }
            '[' => {
                out.push(Token::LBracket);
                i += 1;
            }
            ']' => {
                out.push(Token::RBracket);
                i += 1;
            }
            ',' => {
                out.push(Token::Comma);
                i += 1;
            }
            '+' => {
                out.push(Token::Plus);
                i += 1;
            }
            '-' => {
                out.push(Token::Minus);
                i += 1;
            }
            '*' => {
                out.push(Token::Star);
                i += 1;
            }
            '/' => {
                out.push(Token::Slash);
                i += 1;
            }
            '^' => {
                out.push(Token::Caret);
                i += 1;
            }
            '0'..='9' => {
                let start = i;
                while i < bytes.len() && bytes[i].is_ascii_digit() {
                    i += 1;
                }
                let n: u64 = s[start..i]
                    .parse()
                    .map_err(|_| Error::Parse(format!("bad integer near `{}`", &s[start..i])))?;
                out.push(Token::Int(n));
            }
            'a'..='z' | 'A'..='Z' | '_' => {
                let start = i;
                while i < bytes.len()
                    && (bytes[i].is_ascii_alphanumeric() || bytes[i] == b'_')
                {
                    i += 1;
                }
                out.push(Token::Ident(s[start..i].to_string()));
            }
            _ => return Err(Error::Parse(format!("unexpected character `{c}`"))),
        }
    }
    Ok(out)
}

struct Parser {
    tokens: Vec<Token>,
    pos: usize,
}

impl Parser {
    fn peek(&self) -> Option<&Token> {
        self.tokens.get(self.pos)
    }

    fn next(&mut self) -> Option<Token> {
        let t = self.tokens.get(self.pos).cloned();
        if t.is_some() {
            self.pos += 1;
        }
        t
    }

    fn expect(&mut self, t: Token) -> Result<()> {
        match self.next() {
            Some(found) if found == t => Ok(()),
            found => Err(Error::Parse(format!("expected {t:?}, found {found:?}"))),
        }
    }

    fn expect_int(&mut self) -> Result<u64> {
        match self.next() {
            Some(Token::Int(n)) => Ok(n),
            found => Err(Error::Parse(format!("expected integer, found {found:?}"))),
        }
    }

    fn expr(&mut self) -> Result<Derivation> {
        let mut negate = false;
        if self.peek() == Some(&Token::Minus) {
            self.next();
            negate = true;
        }
        let mut total = self.term()?;
        if negate {
            total = total.scale(&-Rat::one());
        }
        loop {
            match self.peek() {
                Some(Token::Plus) => {
                    self.next();
                    let t = self.term()?;
                    total = add_mixed(total, t)?;
                }
                Some(Token::Minus) => {
                    self.next();
                    let t = self.term()?;
                    total = add_mixed(total, t.scale(&-Rat::one()))?;
                }
                _ => break,
            }
        }
        Ok(total)
    }

    fn term(&mut self) -> Result<Derivation> {
        // optional rational scalar followed by '*'
        if let Some(Token::Int(_)) = self.peek() {
            let n = self.expect_int()? as i64;
            let d = if self.peek() == Some(&Token::Slash) {
                self.next();
                let d = self.expect_int()? as i64;
                if d == 0 {
                    return Err(Error::Parse("zero denominator".into()));
                }
                d
            } else {
                1
            };
            self.expect(Token::Star)?;
            let p = self.primary()?;
            return Ok(p.scale(&Rat::new(n, d)));
        }
        self.primary()
    }

    fn primary(&mut self) -> Result<Derivation> {
        match self.next() {
            Some(Token::Ident(name)) => match name.as_str() {
                "eps" => {
                    self.expect(Token::LParen)?;
                    let n = self.expect_int()?;
                    self.expect(Token::RParen)?;
                    make_eps(n)
                }
                "phi0" => Ok(make_phi0()),
                "h" => {
                    self.expect(Token::LParen)?;
                    let p = self.expect_int()?;
                    self.expect(Token::Comma)?;
                    let q = self.expect_int()?;
                    self.expect(Token::Comma)?;
                    let d = self.expect_int()?;
                    self.expect(Token::RParen)?;
                    Ok(make_h(p, q, d as u32)?.derivation)
                }
                "ad" => {
                    self.expect(Token::LParen)?;
                    let x = self.expr()?;
                    self.expect(Token::RParen)?;
                    let k = if self.peek() == Some(&Token::Caret) {
                        self.next();
                        self.expect_int()?
                    } else {
                        1
                    };
                    self.expect(Token::LParen)?;
                    let y = self.expr()?;
                    self.expect(Token::RParen)?;
                    let mut out = y;
                    for _ in 0..k {
                        out = x.bracket(&out);
                    }
                    Ok(out)
                }
                other => Err(Error::Parse(format!("unknown name `{other}`"))),
            },
            Some(Token::LBracket) => {
                let x = self.expr()?;
                self.expect(Token::Comma)?;
                let y = self.expr()?;
                self.expect(Token::RBracket)?;
                Ok(x.bracket(&y))
            }
            Some(Token::LParen) => {
                let x = self.expr()?;
                self.expect(Token::RParen)?;
                Ok(x)
            }
            found => Err(Error::Parse(format!(
                "expected expression, found {found:?}"
            ))),
        }
    }
}

// Sums of different weights are rejected by Derivation::add's bookkeeping;
// give such mistakes a parse-level error message instead of a panic.
fn add_mixed(a: Derivation, b: Derivation) -> Result<Derivation> {
    if !a.is_zero() && !b.is_zero() && a.weight() != b.weight() {
        return Err(Error::Parse(format!(
            "cannot add derivations of weights {} and {}",
            a.weight(),
            b.weight()
        )));
    }
    Ok(a.add(&b))
}

/// Parses a bracket expression into a derivation.
pub fn parse_derivation(s: &str) -> Result<Derivation> {
    let tokens = tokenize(s)?;
    let mut p = Parser { tokens, pos: 0 };
    let d = p.expr()?;
    if p.pos != p.tokens.len() {
        return Err(Error::Parse(format!(
            "trailing input after position {}",
            p.pos
        )));
    }
    Ok(d)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::derivations::{make_eps, make_h};
    use crate::ncalg::{Alphabet, NcPoly, B};

    #[test]
    fn parses_generators() {
        let d = parse_derivation("eps(0)").unwrap();
        assert_eq!(d.val_a(), &NcPoly::letter(Alphabet::Ab, B));
        assert!(parse_derivation("phi0").unwrap().is_sl2());
        assert!(parse_derivation("eps(3)").is_err());
    }

    #[test]
    fn parses_brackets_and_scalars() {
        let d = parse_derivation("[eps(4), eps(6)]").unwrap();
        let expected = make_eps(4).unwrap().bracket(&make_eps(6).unwrap());
        assert_eq!(d, expected);

        let d = parse_derivation("4*h(2,10,3) - 25*h(4,8,3) + 21*h(6,6,3)").unwrap();
        let expected = make_h(2, 10, 3)
            .unwrap()
            .derivation
            .scale(&Rat::from_int(4))
            .add(&make_h(4, 8, 3).unwrap().derivation.scale(&Rat::from_int(-25)))
            .add(&make_h(6, 6, 3).unwrap().derivation.scale(&Rat::from_int(21)));
        assert_eq!(d, expected);

        let d = parse_derivation("1/10 * [eps(4), [eps(0), eps(12)]]").unwrap();
        let e = make_eps(4)
            .unwrap()
            .bracket(&make_eps(0).unwrap().bracket(&make_eps(12).unwrap()));
        assert_eq!(d, e.scale(&Rat::new(1, 10)));
    }

    #[test]
    fn parses_ad_powers() {
        let d = parse_derivation("ad(eps(0))^2(eps(8))").unwrap();
        let e0 = make_eps(0).unwrap();
        let e8 = make_eps(8).unwrap();
        assert_eq!(d, e0.bracket(&e0.bracket(&e8)));
        // ad with default power 1
        let d = parse_derivation("ad(eps(0))(eps(8))").unwrap();
        assert_eq!(d, e0.bracket(&e8));
    }

    #[test]
    fn rejects_garbage() {
        assert!(parse_derivation("").is_err());
        assert!(parse_derivation("[eps(4), eps(6)] extra").is_err());
        assert!(parse_derivation("eps(4) + eps(6) )").is_err());
        assert!(parse_derivation("foo(2)").is_err());
        // mixed weights
        assert!(parse_derivation("eps(4) + eps(6)").is_err());
    }
}
