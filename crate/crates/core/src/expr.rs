//! Univariate curvature profiles such as `0.3 + 0.1*sin(s)`.
//!
//! Grammar (recursive descent, one free variable):
//!
//! ```text
//! expr   := term (('+' | '-') term)*
//! term   := factor (('*' | '/') factor)*
//! factor := '-'? power
//! power  := atom ('^' factor)?
//! atom   := number | const | var | func '(' expr ')' | '(' expr ')'
//! ```
//!
//! `^` is right-associative and binds tighter than unary minus, so `-2^2`
//! is `-4` and `2^3^2` is `512`. Functions: `sin cos tan sinh cosh tanh exp
//! log sqrt abs` (`log` is the natural logarithm). Constants: `pi`, `e`.
//! There is no implicit multiplication.

use std::fmt;

use thiserror::Error;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ParseErrorKind {
    EmptyInput,
    UnknownIdentifier,
    UnbalancedParens,
    TrailingTokens,
    UnexpectedToken,
    InvalidNumber,
    InvalidVariable,
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
#[error("{kind:?} at byte {offset}: {detail}")]
pub struct ParseError {
    pub kind: ParseErrorKind,
    pub offset: usize,
    pub detail: String,
}

impl ParseError {
    fn new(kind: ParseErrorKind, offset: usize, detail: impl Into<String>) -> Self {
        Self {
            kind,
            offset,
            detail: detail.into(),
        }
    }
}

#[derive(Debug, Error, Clone, PartialEq)]
pub enum EvalError {
    #[error("{func}({arg}) is outside the domain")]
    DomainError { func: Func, arg: f64 },
    #[error("non-finite value {value} at t = {at}")]
    NonFinite { at: f64, value: f64 },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Func {
    Sin,
    Cos,
    Tan,
    Sinh,
    Cosh,
    Tanh,
    Exp,
    Log,
    Sqrt,
    Abs,
}

impl Func {
    const ALL: [Func; 10] = [
        Func::Sin,
        Func::Cos,
        Func::Tan,
        Func::Sinh,
        Func::Cosh,
        Func::Tanh,
        Func::Exp,
        Func::Log,
        Func::Sqrt,
        Func::Abs,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Func::Sin => "sin",
            Func::Cos => "cos",
            Func::Tan => "tan",
            Func::Sinh => "sinh",
            Func::Cosh => "cosh",
            Func::Tanh => "tanh",
            Func::Exp => "exp",
            Func::Log => "log",
            Func::Sqrt => "sqrt",
            Func::Abs => "abs",
        }
    }

    fn lookup(name: &str) -> Option<Func> {
        Self::ALL.into_iter().find(|f| f.name() == name)
    }

    fn apply(self, x: f64) -> Result<f64, EvalError> {
        Ok(match self {
            Func::Sin => x.sin(),
            Func::Cos => x.cos(),
            Func::Tan => x.tan(),
            Func::Sinh => x.sinh(),
            Func::Cosh => x.cosh(),
            Func::Tanh => x.tanh(),
            Func::Exp => x.exp(),
            Func::Log if x <= 0.0 => return Err(EvalError::DomainError { func: self, arg: x }),
            Func::Log => x.ln(),
            Func::Sqrt if x < 0.0 => return Err(EvalError::DomainError { func: self, arg: x }),
            Func::Sqrt => x.sqrt(),
            Func::Abs => x.abs(),
        })
    }
}

impl fmt::Display for Func {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Const {
    Pi,
    E,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BinOp {
    Add,
    Sub,
    Mul,
    Div,
    Pow,
}

#[derive(Debug, Clone, PartialEq)]
pub enum Expr {
    Num(f64),
    Const(Const),
    Var,
    Neg(Box<Expr>),
    Bin(BinOp, Box<Expr>, Box<Expr>),
    Call(Func, Box<Expr>),
}

impl Expr {
    pub fn eval(&self, t: f64) -> Result<f64, EvalError> {
        Ok(match self {
            Expr::Num(v) => *v,
            Expr::Const(Const::Pi) => std::f64::consts::PI,
            Expr::Const(Const::E) => std::f64::consts::E,
            Expr::Var => t,
            Expr::Neg(a) => -a.eval(t)?,
            Expr::Bin(op, a, b) => {
                let (x, y) = (a.eval(t)?, b.eval(t)?);
                match op {
                    BinOp::Add => x + y,
                    BinOp::Sub => x - y,
                    BinOp::Mul => x * y,
                    BinOp::Div => x / y,
                    BinOp::Pow => x.powf(y),
                }
            }
            Expr::Call(f, a) => f.apply(a.eval(t)?)?,
        })
    }

    /// Fully parenthesised rendering that parses back to the same tree.
    pub fn render(&self, var: &str) -> String {
        match self {
            Expr::Num(v) => format!("{v:?}"),
            Expr::Const(Const::Pi) => "pi".into(),
            Expr::Const(Const::E) => "e".into(),
            Expr::Var => var.into(),
            Expr::Neg(a) => format!("-({})", a.render(var)),
            Expr::Bin(op, a, b) => {
                let sym = match op {
                    BinOp::Add => "+",
                    BinOp::Sub => "-",
                    BinOp::Mul => "*",
                    BinOp::Div => "/",
                    BinOp::Pow => "^",
                };
                format!("({}){sym}({})", a.render(var), b.render(var))
            }
            Expr::Call(f, a) => format!("{}({})", f.name(), a.render(var)),
        }
    }
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
}

#[derive(Debug, Clone, PartialEq)]
struct Token {
    tok: Tok,
    offset: usize,
}

fn lex(src: &str) -> Result<Vec<Token>, ParseError> {
    let bytes = src.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i];
        let start = i;
        let single = match c {
            b' ' | b'\t' | b'\n' | b'\r' => {
                i += 1;
                continue;
            }
            b'+' => Some(Tok::Plus),
            b'-' => Some(Tok::Minus),
            b'*' => Some(Tok::Star),
            b'/' => Some(Tok::Slash),
            b'^' => Some(Tok::Caret),
            b'(' => Some(Tok::LParen),
            b')' => Some(Tok::RParen),
            _ => None,
        };
        if let Some(tok) = single {
            out.push(Token { tok, offset: start });
            i += 1;
            continue;
        }
        if c.is_ascii_digit() || c == b'.' {
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
            let text = &src[start..i];
            let value: f64 = text.parse().map_err(|_| {
                ParseError::new(ParseErrorKind::InvalidNumber, start, format!("'{text}'"))
            })?;
            out.push(Token {
                tok: Tok::Num(value),
                offset: start,
            });
            continue;
        }
        if c.is_ascii_alphabetic() || c == b'_' {
            while i < bytes.len() && (bytes[i].is_ascii_alphanumeric() || bytes[i] == b'_') {
                i += 1;
            }
            out.push(Token {
                tok: Tok::Ident(src[start..i].to_string()),
                offset: start,
            });
            continue;
        }
        // step over the whole (possibly multi-byte) character for the message
        let ch = src[start..].chars().next().unwrap_or('?');
        return Err(ParseError::new(
            ParseErrorKind::UnexpectedToken,
            start,
            format!("unexpected character '{ch}'"),
        ));
    }
    Ok(out)
}

struct Parser<'a> {
    tokens: Vec<Token>,
    pos: usize,
    end: usize,
    var: &'a str,
}

impl Parser<'_> {
    fn peek(&self) -> Option<&Tok> {
        self.tokens.get(self.pos).map(|t| &t.tok)
    }

    fn offset(&self) -> usize {
        self.tokens.get(self.pos).map_or(self.end, |t| t.offset)
    }

    fn expr(&mut self) -> Result<Expr, ParseError> {
        let mut lhs = self.term()?;
        loop {
            let op = match self.peek() {
                Some(Tok::Plus) => BinOp::Add,
                Some(Tok::Minus) => BinOp::Sub,
                _ => return Ok(lhs),
            };
            self.pos += 1;
            lhs = Expr::Bin(op, Box::new(lhs), Box::new(self.term()?));
        }
    }

    fn term(&mut self) -> Result<Expr, ParseError> {
        let mut lhs = self.factor()?;
        loop {
            let op = match self.peek() {
                Some(Tok::Star) => BinOp::Mul,
                Some(Tok::Slash) => BinOp::Div,
                _ => return Ok(lhs),
            };
            self.pos += 1;
            lhs = Expr::Bin(op, Box::new(lhs), Box::new(self.factor()?));
        }
    }

    fn factor(&mut self) -> Result<Expr, ParseError> {
        if self.peek() == Some(&Tok::Minus) {
            self.pos += 1;
            return Ok(Expr::Neg(Box::new(self.power()?)));
        }
        self.power()
    }

    fn power(&mut self) -> Result<Expr, ParseError> {
        let base = self.atom()?;
        if self.peek() == Some(&Tok::Caret) {
            self.pos += 1;
            let exp = self.factor()?;
            return Ok(Expr::Bin(BinOp::Pow, Box::new(base), Box::new(exp)));
        }
        Ok(base)
    }

    fn close_paren(&mut self) -> Result<(), ParseError> {
        match self.peek() {
            Some(Tok::RParen) => {
                self.pos += 1;
                Ok(())
            }
            None => Err(ParseError::new(
                ParseErrorKind::UnbalancedParens,
                self.end,
                "missing ')'",
            )),
            Some(_) => Err(ParseError::new(
                ParseErrorKind::UnexpectedToken,
                self.offset(),
                "expected ')'",
            )),
        }
    }

    fn atom(&mut self) -> Result<Expr, ParseError> {
        let offset = self.offset();
        let Some(tok) = self.peek().cloned() else {
            return Err(ParseError::new(
                ParseErrorKind::UnexpectedToken,
                offset,
                "unexpected end of input",
            ));
        };
        self.pos += 1;
        match tok {
            Tok::Num(v) => Ok(Expr::Num(v)),
            Tok::LParen => {
                let inner = self.expr()?;
                self.close_paren()?;
                Ok(inner)
            }
            Tok::Ident(name) => {
                if name == self.var {
                    return Ok(Expr::Var);
                }
                match name.as_str() {
                    "pi" => return Ok(Expr::Const(Const::Pi)),
                    "e" => return Ok(Expr::Const(Const::E)),
                    _ => {}
                }
                let Some(func) = Func::lookup(&name) else {
                    return Err(ParseError::new(
                        ParseErrorKind::UnknownIdentifier,
                        offset,
                        format!("unknown identifier '{name}'"),
                    ));
                };
                if self.peek() != Some(&Tok::LParen) {
                    return Err(ParseError::new(
                        ParseErrorKind::UnexpectedToken,
                        self.offset(),
                        format!("expected '(' after {name}"),
                    ));
                }
                self.pos += 1;
                let arg = self.expr()?;
                self.close_paren()?;
                Ok(Expr::Call(func, Box::new(arg)))
            }
            Tok::RParen => Err(ParseError::new(
                ParseErrorKind::UnbalancedParens,
                offset,
                "unmatched ')'",
            )),
            _ => Err(ParseError::new(
                ParseErrorKind::UnexpectedToken,
                offset,
                "expected a number, name or '('",
            )),
        }
    }
}

fn valid_var_name(name: &str) -> bool {
    let mut chars = name.chars();
    matches!(chars.next(), Some(c) if c.is_ascii_alphabetic() || c == '_')
        && chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
        && name != "pi"
        && name != "e"
        && Func::lookup(name).is_none()
}

/// A parsed `H(s)` or `S(u)` profile.
#[derive(Debug, Clone, PartialEq)]
pub struct CurvatureProfile {
    source: String,
    ast: Expr,
    var_name: String,
}

impl CurvatureProfile {
    pub fn parse(source: &str, var_name: &str) -> Result<Self, ParseError> {
        if !valid_var_name(var_name) {
            return Err(ParseError::new(
                ParseErrorKind::InvalidVariable,
                0,
                format!("'{var_name}' cannot be used as the variable"),
            ));
        }
        let tokens = lex(source)?;
        if tokens.is_empty() {
            return Err(ParseError::new(
                ParseErrorKind::EmptyInput,
                0,
                "empty expression",
            ));
        }
        let mut p = Parser {
            tokens,
            pos: 0,
            end: source.len(),
            var: var_name,
        };
        let ast = p.expr()?;
        if p.pos < p.tokens.len() {
            let kind = if p.peek() == Some(&Tok::RParen) {
                ParseErrorKind::UnbalancedParens
            } else {
                ParseErrorKind::TrailingTokens
            };
            return Err(ParseError::new(
                kind,
                p.offset(),
                "unexpected trailing input",
            ));
        }
        Ok(Self {
            source: source.to_string(),
            ast,
            var_name: var_name.to_string(),
        })
    }

    /// Constant profile, mostly for tests and programmatic use.
    pub fn constant(value: f64, var_name: &str) -> Self {
        Self {
            source: format!("{value:?}"),
            ast: Expr::Num(value),
            var_name: var_name.to_string(),
        }
    }

    pub fn source(&self) -> &str {
        &self.source
    }

    pub fn ast(&self) -> &Expr {
        &self.ast
    }

    pub fn var_name(&self) -> &str {
        &self.var_name
    }

    pub fn eval(&self, t: f64) -> Result<f64, EvalError> {
        let v = self.ast.eval(t)?;
        if v.is_finite() {
            Ok(v)
        } else {
            Err(EvalError::NonFinite { at: t, value: v })
        }
    }
}

impl fmt::Display for CurvatureProfile {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.ast.render(&self.var_name))
    }
}
