//! Recursive-descent parser for the expression language.
//!
//! ```text
//! expr    := term (("+" | "-") term)*
//! term    := number "*" term
//!          | factor ("*" "delta")?
//!          | "delta" ("*" factor)?
//! factor  := "log_r" | "log_r_over(" number ")" | "K0(" number "*r)"
//!          | "psi(" number ")" | "lap(" expr ")" | "scale(" number "," expr ")"
//!          | "(" expr ")"
//! number  := ("+" | "-")? decimal literal, optional exponent
//! ```
//!
//! A `- term` in a sum negates the term's leading coefficient, so printed
//! sums such as `a - 0.5*b` read back to the same tree.

use std::fmt;

use thiserror::Error;

use super::{DistExpr, RegularPart};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ParseErrorKind {
    Syntax,
    Constraint,
}

/// Error with the byte offset where it was detected.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("{kind} error at position {position}: {message}")]
pub struct ParseError {
    pub kind: ParseErrorKind,
    pub position: usize,
    pub message: String,
}

impl fmt::Display for ParseErrorKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ParseErrorKind::Syntax => write!(f, "syntax"),
            ParseErrorKind::Constraint => write!(f, "constraint"),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Ident(String),
    Num(f64),
    LParen,
    RParen,
    Comma,
    Star,
    Plus,
    Minus,
    End,
}

impl fmt::Display for Tok {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Tok::Ident(s) => write!(f, "`{s}`"),
            Tok::Num(v) => write!(f, "number {v}"),
            Tok::LParen => write!(f, "`(`"),
            Tok::RParen => write!(f, "`)`"),
            Tok::Comma => write!(f, "`,`"),
            Tok::Star => write!(f, "`*`"),
            Tok::Plus => write!(f, "`+`"),
            Tok::Minus => write!(f, "`-`"),
            Tok::End => write!(f, "end of input"),
        }
    }
}

fn syntax(position: usize, message: impl Into<String>) -> ParseError {
    ParseError {
        kind: ParseErrorKind::Syntax,
        position,
        message: message.into(),
    }
}

fn constraint(position: usize, message: impl Into<String>) -> ParseError {
    ParseError {
        kind: ParseErrorKind::Constraint,
        position,
        message: message.into(),
    }
}

fn tokenize(src: &str) -> Result<Vec<(Tok, usize)>, ParseError> {
    let bytes = src.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i];
        let start = i;
        match c {
            b' ' | b'\t' | b'\n' | b'\r' => {
                i += 1;
                continue;
            }
            b'(' => out.push((Tok::LParen, start)),
            b')' => out.push((Tok::RParen, start)),
            b',' => out.push((Tok::Comma, start)),
            b'*' => out.push((Tok::Star, start)),
            b'+' => out.push((Tok::Plus, start)),
            b'-' => out.push((Tok::Minus, start)),
            b'0'..=b'9' | b'.' => {
                while i < bytes.len() && (bytes[i].is_ascii_digit() || bytes[i] == b'.') {
                    i += 1;
                }
                if i < bytes.len() && (bytes[i] == b'e' || bytes[i] == b'E') {
                    let mut j = i + 1;
                    if j < bytes.len() && (bytes[j] == b'+' || bytes[j] == b'-') {
                        j += 1;
                    }
                    if j < bytes.len() && bytes[j].is_ascii_digit() {
                        i = j;
                        while i < bytes.len() && bytes[i].is_ascii_digit() {
                            i += 1;
                        }
                    }
                }
                let text = &src[start..i];
                let v: f64 = text
                    .parse()
                    .map_err(|_| syntax(start, format!("malformed number `{text}`")))?;
                out.push((Tok::Num(v), start));
                continue;
            }
            c if c.is_ascii_alphabetic() || c == b'_' => {
                while i < bytes.len() && (bytes[i].is_ascii_alphanumeric() || bytes[i] == b'_') {
                    i += 1;
                }
                out.push((Tok::Ident(src[start..i].to_string()), start));
                continue;
            }
            _ => {
                let ch = src[start..].chars().next().unwrap_or('?');
                return Err(syntax(start, format!("unexpected character `{ch}`")));
            }
        }
        i += 1;
    }
    out.push((Tok::End, src.len()));
    Ok(out)
}

struct Parser {
    toks: Vec<(Tok, usize)>,
    pos: usize,
}

impl Parser {
    fn peek(&self) -> &Tok {
        &self.toks[self.pos].0
    }

    fn peek_at(&self, k: usize) -> &Tok {
        &self.toks[(self.pos + k).min(self.toks.len() - 1)].0
    }

    fn offset(&self) -> usize {
        self.toks[self.pos].1
    }

    fn bump(&mut self) -> Tok {
        let t = self.toks[self.pos].0.clone();
        if self.pos < self.toks.len() - 1 {
            self.pos += 1;
        }
        t
    }

    fn expect(&mut self, want: Tok) -> Result<(), ParseError> {
        if *self.peek() == want {
            self.bump();
            Ok(())
        } else {
            Err(syntax(self.offset(), format!("expected {want}, found {}", self.peek())))
        }
    }

    fn expect_ident(&mut self, name: &str) -> Result<(), ParseError> {
        match self.peek() {
            Tok::Ident(s) if s == name => {
                self.bump();
                Ok(())
            }
            other => Err(syntax(self.offset(), format!("expected `{name}`, found {other}"))),
        }
    }

    fn starts_number(&self) -> bool {
        match self.peek() {
            Tok::Num(_) => true,
            Tok::Plus | Tok::Minus => matches!(self.peek_at(1), Tok::Num(_)),
            _ => false,
        }
    }

    fn number(&mut self) -> Result<(f64, usize), ParseError> {
        let at = self.offset();
        let sign = match self.peek() {
            Tok::Minus => {
                self.bump();
                -1.0
            }
            Tok::Plus => {
                self.bump();
                1.0
            }
            _ => 1.0,
        };
        match self.bump() {
            Tok::Num(v) => Ok((sign * v, at)),
            other => Err(syntax(at, format!("expected a number, found {other}"))),
        }
    }

    fn expr(&mut self) -> Result<DistExpr, ParseError> {
        let mut terms = vec![self.term()?];
        loop {
            match self.peek() {
                Tok::Plus => {
                    self.bump();
                    terms.push(self.term()?);
                }
                Tok::Minus => {
                    self.bump();
                    let t = self.term()?;
                    terms.push(negate(t));
                }
                _ => break,
            }
        }
        Ok(if terms.len() == 1 {
            terms.pop().expect("one term")
        } else {
            DistExpr::Sum(terms)
        })
    }

    fn term(&mut self) -> Result<DistExpr, ParseError> {
        if self.starts_number() {
            let (c, _) = self.number()?;
            self.expect(Tok::Star)?;
            let inner = self.term()?;
            return Ok(DistExpr::ScalarMul(c, Box::new(inner)));
        }
        if matches!(self.peek(), Tok::Ident(s) if s == "delta") {
            self.bump();
            if *self.peek() != Tok::Star {
                return Ok(DistExpr::Delta);
            }
            let star = self.offset();
            self.bump();
            let at = self.offset();
            let f = self.factor()?;
            return self.product(f, at).map_err(|e| ParseError { position: star.min(e.position), ..e });
        }
        let at = self.offset();
        let f = self.factor()?;
        if *self.peek() == Tok::Star && matches!(self.peek_at(1), Tok::Ident(s) if s == "delta") {
            self.bump();
            self.bump();
            return self.product(f, at);
        }
        Ok(f)
    }

    fn product(&self, f: DistExpr, at: usize) -> Result<DistExpr, ParseError> {
        match RegularPart::from_expr(&f) {
            Some(part) => Ok(DistExpr::Product(part)),
            None if f == DistExpr::Delta => {
                Err(constraint(at, "delta*delta is undefined"))
            }
            None => Err(constraint(
                at,
                format!("only log_r, log_r_over, K0 or psi can multiply delta, found `{f}`"),
            )),
        }
    }

    fn factor(&mut self) -> Result<DistExpr, ParseError> {
        let at = self.offset();
        match self.bump() {
            Tok::LParen => {
                let e = self.expr()?;
                self.expect(Tok::RParen)?;
                Ok(e)
            }
            Tok::Ident(name) => match name.as_str() {
                "delta" => Ok(DistExpr::Delta),
                "log_r" => Ok(DistExpr::LogRadial),
                "log_r_over" => {
                    self.expect(Tok::LParen)?;
                    let (l, pos) = self.number()?;
                    self.expect(Tok::RParen)?;
                    if l == 0.0 || !l.is_finite() {
                        return Err(constraint(pos, format!("length scale L must be nonzero, got {l}")));
                    }
                    Ok(DistExpr::LogRadialScaled(l))
                }
                "K0" => {
                    self.expect(Tok::LParen)?;
                    let (a, pos) = self.number()?;
                    self.expect(Tok::Star)?;
                    self.expect_ident("r")?;
                    self.expect(Tok::RParen)?;
                    if !(a > 0.0) || !a.is_finite() {
                        return Err(constraint(pos, format!("K0 coefficient a must be positive, got {a}")));
                    }
                    Ok(DistExpr::K0Radial(a))
                }
                "psi" => {
                    self.expect(Tok::LParen)?;
                    let (b, pos) = self.number()?;
                    self.expect(Tok::RParen)?;
                    if !(b > 0.0) || !b.is_finite() {
                        return Err(constraint(pos, format!("psi decay rate b must be positive, got {b}")));
                    }
                    Ok(DistExpr::Psi(b))
                }
                "lap" => {
                    self.expect(Tok::LParen)?;
                    let e = self.expr()?;
                    self.expect(Tok::RParen)?;
                    Ok(DistExpr::Laplacian(Box::new(e)))
                }
                "scale" => {
                    self.expect(Tok::LParen)?;
                    let (s, pos) = self.number()?;
                    self.expect(Tok::Comma)?;
                    let e = self.expr()?;
                    self.expect(Tok::RParen)?;
                    if s == 0.0 || !s.is_finite() {
                        return Err(constraint(pos, format!("scale factor s must be nonzero, got {s}")));
                    }
                    Ok(DistExpr::ScaleArg(s, Box::new(e)))
                }
                other => Err(syntax(at, format!("unknown name `{other}`"))),
            },
            other => Err(syntax(at, format!("expected a term, found {other}"))),
        }
    }
}

fn negate(t: DistExpr) -> DistExpr {
    match t {
        DistExpr::ScalarMul(c, inner) => DistExpr::ScalarMul(-c, inner),
        other => DistExpr::ScalarMul(-1.0, Box::new(other)),
    }
}

pub fn parse_expr(source: &str) -> Result<DistExpr, ParseError> {
    let mut p = Parser {
        toks: tokenize(source)?,
        pos: 0,
    };
    let e = p.expr()?;
    if *p.peek() != Tok::End {
        return Err(syntax(p.offset(), format!("unexpected {} after expression", p.peek())));
    }
    Ok(e)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn grammar_examples() {
        assert_eq!(parse_expr("delta").unwrap(), DistExpr::Delta);
        assert_eq!(
            parse_expr("K0(2*r)*delta").unwrap(),
            DistExpr::Product(RegularPart::K0(2.0))
        );
        assert_eq!(
            parse_expr("lap(psi(1.5)) + 3*delta").unwrap(),
            DistExpr::Sum(vec![
                DistExpr::Laplacian(Box::new(DistExpr::Psi(1.5))),
                DistExpr::ScalarMul(3.0, Box::new(DistExpr::Delta)),
            ])
        );
    }

    #[test]
    fn whitespace_and_commuted_products() {
        assert_eq!(
            parse_expr("  delta *  log_r ").unwrap(),
            DistExpr::Product(RegularPart::Log)
        );
        assert_eq!(
            parse_expr("scale( -2 ,log_r_over(1e-3))").unwrap(),
            DistExpr::ScaleArg(-2.0, Box::new(DistExpr::LogRadialScaled(1e-3)))
        );
    }

    #[test]
    fn subtraction_negates_leading_coefficient() {
        assert_eq!(
            parse_expr("delta - 0.5*log_r - psi(1)").unwrap(),
            DistExpr::Sum(vec![
                DistExpr::Delta,
                DistExpr::ScalarMul(-0.5, Box::new(DistExpr::LogRadial)),
                DistExpr::ScalarMul(-1.0, Box::new(DistExpr::Psi(1.0))),
            ])
        );
    }

    #[test]
    fn constraint_errors() {
        let e = parse_expr("K0(-1*r)").unwrap_err();
        assert_eq!(e.kind, ParseErrorKind::Constraint);
        assert_eq!(e.position, 3);
        for bad in ["psi(0)", "scale(0, delta)", "log_r_over(0)", "delta*delta", "lap(log_r)*delta"] {
            let e = parse_expr(bad).unwrap_err();
            assert_eq!(e.kind, ParseErrorKind::Constraint, "{bad}: {e}");
        }
    }

    #[test]
    fn syntax_errors_carry_positions() {
        let cases = [
            ("", 0),
            ("delta +", 7),
            ("K0(2*x)", 5),
            ("psi(1", 5),
            ("delta delta", 6),
            ("foo", 0),
            ("3 delta", 2),
            ("delta # 1", 6),
        ];
        for (src, pos) in cases {
            let e = parse_expr(src).unwrap_err();
            assert_eq!(e.kind, ParseErrorKind::Syntax, "{src}: {e}");
            assert_eq!(e.position, pos, "{src}: {e}");
        }
    }

    #[test]
    fn print_parse_round_trip() {
        for src in [
            "lap(psi(1.5)) + 3*delta - 0.5*K0(2*r)*delta",
            "-1*(log_r + delta) + (delta + psi(2))",
            "scale(-2, log_r_over(0.5))",
            "2*-3*lap(K0(0.25*r))",
            "-0*delta",
            "0.1*psi(0.30000000000000004)",
        ] {
            let e = parse_expr(src).unwrap();
            let again = parse_expr(&e.to_string()).unwrap();
            assert_eq!(again, e, "{src} -> {e}");
        }
    }
}
