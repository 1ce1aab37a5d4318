use std::fmt;

use thiserror::Error;

use super::ast::{BinOp, Expr, Func};

/// First syntax error found in an expression.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("offset {offset}: {message} (expected {expected})")]
pub struct ParseDiagnostic {
    /// Byte offset into the source text.
    pub offset: usize,
    pub message: String,
    pub expected: String,
}

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Num(f64),
    Ident(String),
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
    Comma,
    End,
}

impl fmt::Display for Tok {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Tok::Num(x) => write!(f, "number {x}"),
            Tok::Ident(s) => write!(f, "`{s}`"),
            Tok::Plus => write!(f, "`+`"),
            Tok::Minus => write!(f, "`-`"),
            Tok::Star => write!(f, "`*`"),
            Tok::Slash => write!(f, "`/`"),
            Tok::Caret => write!(f, "`^`"),
            Tok::LParen => write!(f, "`(`"),
            Tok::RParen => write!(f, "`)`"),
            Tok::Comma => write!(f, "`,`"),
            Tok::End => write!(f, "end of input"),
        }
    }
}

fn diag(offset: usize, message: impl Into<String>, expected: &str) -> ParseDiagnostic {
    ParseDiagnostic {
        offset,
        message: message.into(),
        expected: expected.to_string(),
    }
}

fn tokenize(text: &str) -> Result<Vec<(Tok, usize)>, ParseDiagnostic> {
    let bytes = text.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i];
        if c.is_ascii_whitespace() {
            i += 1;
            continue;
        }
        let start = i;
        let tok = match c {
            b'+' => Tok::Plus,
            b'-' => Tok::Minus,
            b'*' => Tok::Star,
            b'/' => Tok::Slash,
            b'^' => Tok::Caret,
            b'(' => Tok::LParen,
            b')' => Tok::RParen,
            b',' => Tok::Comma,
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
                        while j < bytes.len() && bytes[j].is_ascii_digit() {
                            j += 1;
                        }
                        i = j;
                    }
                }
                let lit = &text[start..i];
                let value = lit
                    .parse::<f64>()
                    .map_err(|_| diag(start, format!("malformed number `{lit}`"), "number"))?;
                out.push((Tok::Num(value), start));
                continue;
            }
            c if c.is_ascii_alphabetic() || c == b'_' => {
                while i < bytes.len() && (bytes[i].is_ascii_alphanumeric() || bytes[i] == b'_') {
                    i += 1;
                }
                out.push((Tok::Ident(text[start..i].to_string()), start));
                continue;
            }
            _ => {
                let ch = text[start..].chars().next().unwrap_or('?');
                return Err(diag(start, format!("unexpected character `{ch}`"), "expression"));
            }
        };
        out.push((tok, start));
        i += 1;
    }
    out.push((Tok::End, text.len()));
    Ok(out)
}

/// Whether the parser is inside an integrand (where `u` replaces `s`).
#[derive(Clone, Copy, PartialEq)]
enum Scope {
    Outer,
    Integrand,
}

struct Parser {
    toks: Vec<(Tok, usize)>,
    pos: usize,
}

impl Parser {
    fn peek(&self) -> &Tok {
        &self.toks[self.pos].0
    }

    fn offset(&self) -> usize {
        self.toks[self.pos].1
    }

    fn bump(&mut self) -> (Tok, usize) {
        let t = self.toks[self.pos].clone();
        if self.pos + 1 < self.toks.len() {
            self.pos += 1;
        }
        t
    }

    fn expect(&mut self, tok: Tok, expected: &str) -> Result<(), ParseDiagnostic> {
        if *self.peek() == tok {
            self.bump();
            Ok(())
        } else {
            let found = self.peek().clone();
            Err(diag(self.offset(), format!("unexpected {found}"), expected))
        }
    }

    fn expr(&mut self, scope: Scope) -> Result<Expr, ParseDiagnostic> {
        let mut lhs = self.term(scope)?;
        loop {
            let op = match self.peek() {
                Tok::Plus => BinOp::Add,
                Tok::Minus => BinOp::Sub,
                _ => return Ok(lhs),
            };
            self.bump();
            lhs = Expr::binary(op, lhs, self.term(scope)?);
        }
    }

    fn term(&mut self, scope: Scope) -> Result<Expr, ParseDiagnostic> {
        let mut lhs = self.factor(scope)?;
        loop {
            let op = match self.peek() {
                Tok::Star => BinOp::Mul,
                Tok::Slash => BinOp::Div,
                _ => return Ok(lhs),
            };
            self.bump();
            lhs = Expr::binary(op, lhs, self.factor(scope)?);
        }
    }

    fn factor(&mut self, scope: Scope) -> Result<Expr, ParseDiagnostic> {
        let base = self.base(scope)?;
        if *self.peek() == Tok::Caret {
            self.bump();
            // Right-associative.
            let exponent = self.factor(scope)?;
            return Ok(Expr::binary(BinOp::Pow, base, exponent));
        }
        Ok(base)
    }

    fn base(&mut self, scope: Scope) -> Result<Expr, ParseDiagnostic> {
        let (tok, at) = self.bump();
        match tok {
            Tok::Num(x) => Ok(Expr::Const(x)),
            Tok::Minus => Ok(Expr::Neg(Box::new(self.base(scope)?))),
            Tok::LParen => {
                let inner = self.expr(scope)?;
                self.expect(Tok::RParen, "`)`")?;
                Ok(inner)
            }
            Tok::Ident(name) => self.identifier(&name, at, scope),
            Tok::End => Err(diag(at, "unexpected end of input", "expression")),
            other => Err(diag(at, format!("unexpected {other}"), "expression")),
        }
    }

    fn identifier(&mut self, name: &str, at: usize, scope: Scope) -> Result<Expr, ParseDiagnostic> {
        match (name, scope) {
            ("s", Scope::Outer) => return Ok(Expr::Param),
            ("u", Scope::Integrand) => return Ok(Expr::Bound),
            ("s", Scope::Integrand) => {
                return Err(diag(at, "`s` cannot appear inside an integrand", "`u`"))
            }
            ("u", Scope::Outer) => {
                return Err(diag(at, "`u` is only bound inside an integral", "`s`"))
            }
            ("pi", _) => return Ok(Expr::Const(std::f64::consts::PI)),
            _ => {}
        }
        if name == "integral" {
            return self.integral(at, scope);
        }
        let Some(func) = Func::from_name(name) else {
            return Err(diag(at, format!("unknown identifier `{name}`"), "function, `s` or number"));
        };
        let args = self.arguments(scope)?;
        if args.len() != 1 {
            return Err(diag(
                at,
                format!("`{name}` takes 1 argument, got {}", args.len()),
                "one argument",
            ));
        }
        Ok(Expr::Call(func, Box::new(args.into_iter().next().unwrap())))
    }

    /// `'(' expr (',' expr)* ')'`
    fn arguments(&mut self, scope: Scope) -> Result<Vec<Expr>, ParseDiagnostic> {
        self.expect(Tok::LParen, "`(`")?;
        if *self.peek() == Tok::RParen {
            return Err(diag(self.offset(), "empty argument list", "argument"));
        }
        let mut args = vec![self.expr(scope)?];
        while *self.peek() == Tok::Comma {
            self.bump();
            args.push(self.expr(scope)?);
        }
        self.expect(Tok::RParen, "`,` or `)`")?;
        Ok(args)
    }

    fn integral(&mut self, at: usize, scope: Scope) -> Result<Expr, ParseDiagnostic> {
        if scope == Scope::Integrand {
            return Err(diag(at, "nested integrals are not supported", "expression in `u`"));
        }
        self.expect(Tok::LParen, "`(`")?;
        if *self.peek() == Tok::RParen {
            return Err(diag(self.offset(), "empty argument list", "integrand"));
        }
        let integrand = self.expr(Scope::Integrand)?;
        self.expect(Tok::Comma, "`,` then lower bound")?;
        let lower_at = self.offset();
        let lower_expr = self.expr(Scope::Integrand)?;
        let lower = constant_value(&lower_expr)
            .ok_or_else(|| diag(lower_at, "lower bound must be a constant", "constant"))?;
        self.expect(Tok::Comma, "`,` then `s`")?;
        match self.bump() {
            (Tok::Ident(name), _) if name == "s" => {}
            (_, off) => return Err(diag(off, "upper bound of an integral must be `s`", "`s`")),
        }
        self.expect(Tok::RParen, "`)`")?;
        Ok(Expr::Integral {
            integrand: Box::new(integrand),
            lower,
        })
    }
}

/// Folds an expression free of `s` and `u` to its value.
fn constant_value(e: &Expr) -> Option<f64> {
    let v = match e {
        Expr::Const(x) => *x,
        Expr::Param | Expr::Bound | Expr::Integral { .. } => return None,
        Expr::Neg(a) => -constant_value(a)?,
        Expr::Binary(op, a, b) => {
            let (a, b) = (constant_value(a)?, constant_value(b)?);
            match op {
                BinOp::Add => a + b,
                BinOp::Sub => a - b,
                BinOp::Mul => a * b,
                BinOp::Div => a / b,
                BinOp::Pow => a.powf(b),
            }
        }
        Expr::Call(f, a) => {
            let a = constant_value(a)?;
            match f {
                Func::Sin => a.sin(),
                Func::Cos => a.cos(),
                Func::Tan => a.tan(),
                Func::Sqrt => a.sqrt(),
                Func::Ln => a.ln(),
                Func::Exp => a.exp(),
                Func::Abs => a.abs(),
            }
        }
    };
    v.is_finite().then_some(v)
}

/// Parses one curve-component expression in the parameter `s`.
pub fn parse_expression(text: &str) -> Result<Expr, ParseDiagnostic> {
    if text.trim().is_empty() {
        return Err(diag(0, "empty expression", "expression"));
    }
    let mut p = Parser {
        toks: tokenize(text)?,
        pos: 0,
    };
    let e = p.expr(Scope::Outer)?;
    match p.peek() {
        Tok::End => Ok(e),
        Tok::RParen => Err(diag(p.offset(), "unbalanced `)`", "operator or end of input")),
        other => {
            let other = other.clone();
            Err(diag(p.offset(), format!("unexpected {other}"), "operator or end of input"))
        }
    }
}
