//! Expression grammar over tower classes:
//!
//! ```text
//! expr   := term (('+'|'-') term)*
//! term   := factor ('*' factor)*
//! factor := atom ('^' uint)?
//! atom   := 'u(' uint ')' | 'h' | 's(' uint ',' uint ')' | 'l(' uint ')'
//!         | 'd' uint | uint | '(' expr ')' | 'integrate(' uint ',' expr ')'
//! ```
//!
//! Whitespace insensitive; atoms remember their source position so level
//! validation can point at the offending token.

use std::fmt;

use num_bigint::BigInt;

use crate::bigness::l_class;
use crate::error::{Error, ParseDiagnostic, Result};
use crate::polyring::MultiPoly;
use crate::towerchow::{ChowClass, Tower};

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct Pos {
    pub line: usize,
    pub col: usize,
}

#[derive(Clone, PartialEq, Eq, Debug)]
enum Tok {
    Word(String),
    Int(u64),
    LParen,
    RParen,
    Comma,
    Plus,
    Minus,
    Star,
    Caret,
    End,
}

impl fmt::Display for Tok {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Tok::Word(w) => write!(f, "{w}"),
            Tok::Int(n) => write!(f, "{n}"),
            Tok::LParen => write!(f, "("),
            Tok::RParen => write!(f, ")"),
            Tok::Comma => write!(f, ","),
            Tok::Plus => write!(f, "+"),
            Tok::Minus => write!(f, "-"),
            Tok::Star => write!(f, "*"),
            Tok::Caret => write!(f, "^"),
            Tok::End => write!(f, "end of input"),
        }
    }
}

fn lex(src: &str) -> Result<Vec<(Tok, Pos)>> {
    let mut out = Vec::new();
    let mut line = 1usize;
    let mut col = 1usize;
    let mut chars = src.chars().peekable();
    while let Some(&ch) = chars.peek() {
        let pos = Pos { line, col };
        match ch {
            '\n' => {
                chars.next();
                line += 1;
                col = 1;
            }
            c if c.is_whitespace() => {
                chars.next();
                col += 1;
            }
            c if c.is_ascii_alphabetic() => {
                let mut word = String::new();
                while let Some(&c) = chars.peek() {
                    if c.is_ascii_alphabetic() {
                        word.push(c);
                        chars.next();
                        col += 1;
                    } else {
                        break;
                    }
                }
                out.push((Tok::Word(word), pos));
            }
            c if c.is_ascii_digit() => {
                let mut value: u64 = 0;
                while let Some(&c) = chars.peek() {
                    if let Some(d) = c.to_digit(10) {
                        value = value
                            .checked_mul(10)
                            .and_then(|v| v.checked_add(d as u64))
                            .ok_or_else(|| {
                                Error::Parse(ParseDiagnostic {
                                    line: pos.line,
                                    col: pos.col,
                                    expected: vec!["integer below 2^64".into()],
                                    found: "oversized integer literal".into(),
                                })
                            })?;
                        chars.next();
                        col += 1;
                    } else {
                        break;
                    }
                }
                out.push((Tok::Int(value), pos));
            }
            '(' | ')' | ',' | '+' | '-' | '*' | '^' => {
                chars.next();
                col += 1;
                let tok = match ch {
                    '(' => Tok::LParen,
                    ')' => Tok::RParen,
                    ',' => Tok::Comma,
                    '+' => Tok::Plus,
                    '-' => Tok::Minus,
                    '*' => Tok::Star,
                    _ => Tok::Caret,
                };
                out.push((tok, pos));
            }
            other => {
                return Err(Error::Parse(ParseDiagnostic {
                    line,
                    col,
                    expected: vec![
                        "atom".into(),
                        "operator".into(),
                        "parenthesis".into(),
                    ],
                    found: other.to_string(),
                }));
            }
        }
    }
    out.push((
        Tok::End,
        Pos { line, col },
    ));
    Ok(out)
}

/// Abstract syntax tree over tower-class atoms. Positions are carried for
/// diagnostics but ignored by structural equality.
#[derive(Clone, Debug)]
pub enum Expr {
    Sum(Box<Expr>, Box<Expr>),
    Diff(Box<Expr>, Box<Expr>),
    Prod(Box<Expr>, Box<Expr>),
    Pow(Box<Expr>, u32),
    U { level: usize, pos: Pos },
    H { pos: Pos },
    S { level: usize, index: u32, pos: Pos },
    L { level: usize, pos: Pos },
    Var { index: usize, pos: Pos },
    Num { value: u64, pos: Pos },
    Integrate { level: usize, body: Box<Expr>, pos: Pos },
}

impl PartialEq for Expr {
    fn eq(&self, other: &Self) -> bool {
        use Expr::*;
        match (self, other) {
            (Sum(a, b), Sum(c, d))
            | (Diff(a, b), Diff(c, d))
            | (Prod(a, b), Prod(c, d)) => a == c && b == d,
            (Pow(a, e), Pow(b, f)) => a == b && e == f,
            (U { level: a, .. }, U { level: b, .. }) => a == b,
            (H { .. }, H { .. }) => true,
            (S { level: a, index: i, .. }, S { level: b, index: j, .. }) => {
                a == b && i == j
            }
            (L { level: a, .. }, L { level: b, .. }) => a == b,
            (Var { index: a, .. }, Var { index: b, .. }) => a == b,
            (Num { value: a, .. }, Num { value: b, .. }) => a == b,
            (
                Integrate { level: a, body: x, .. },
                Integrate { level: b, body: y, .. },
            ) => a == b && x == y,
            _ => false,
        }
    }
}

impl Eq for Expr {}

fn prec(e: &Expr) -> u8 {
    match e {
        Expr::Sum(..) | Expr::Diff(..) => 0,
        Expr::Prod(..) => 1,
        Expr::Pow(..) => 2,
        _ => 3,
    }
}

fn print_prec(e: &Expr, parent: u8, out: &mut String) {
    let own = prec(e);
    if own < parent {
        out.push('(');
    }
    match e {
        Expr::Sum(a, b) => {
            print_prec(a, 0, out);
            out.push_str(" + ");
            print_prec(b, 1, out);
        }
        Expr::Diff(a, b) => {
            print_prec(a, 0, out);
            out.push_str(" - ");
            print_prec(b, 1, out);
        }
        Expr::Prod(a, b) => {
            print_prec(a, 1, out);
            out.push('*');
            print_prec(b, 2, out);
        }
        Expr::Pow(a, e) => {
            print_prec(a, 3, out);
            out.push('^');
            out.push_str(&e.to_string());
        }
        Expr::U { level, .. } => out.push_str(&format!("u({level})")),
        Expr::H { .. } => out.push('h'),
        Expr::S { level, index, .. } => out.push_str(&format!("s({level},{index})")),
        Expr::L { level, .. } => out.push_str(&format!("l({level})")),
        Expr::Var { index, .. } => out.push_str(&format!("d{index}")),
        Expr::Num { value, .. } => out.push_str(&value.to_string()),
        Expr::Integrate { level, body, .. } => {
            out.push_str(&format!("integrate({level}, "));
            print_prec(body, 0, out);
            out.push(')');
        }
    }
    if own < parent {
        out.push(')');
    }
}

impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut s = String::new();
        print_prec(self, 0, &mut s);
        write!(f, "{s}")
    }
}

struct Parser {
    toks: Vec<(Tok, Pos)>,
    at: usize,
}

impl Parser {
    fn peek(&self) -> &(Tok, Pos) {
        &self.toks[self.at]
    }

    fn bump(&mut self) -> (Tok, Pos) {
        let t = self.toks[self.at].clone();
        if self.at + 1 < self.toks.len() {
            self.at += 1;
        }
        t
    }

    fn fail<T>(&self, expected: &[&str]) -> Result<T> {
        let (tok, pos) = self.peek();
        Err(Error::Parse(ParseDiagnostic {
            line: pos.line,
            col: pos.col,
            expected: expected.iter().map(|s| s.to_string()).collect(),
            found: tok.to_string(),
        }))
    }

    fn expect(&mut self, want: Tok, label: &str) -> Result<Pos> {
        if self.peek().0 == want {
            Ok(self.bump().1)
        } else {
            self.fail(&[label])
        }
    }

    fn expect_uint(&mut self, label: &str) -> Result<(u64, Pos)> {
        match self.peek().0.clone() {
            Tok::Int(v) => {
                let pos = self.bump().1;
                Ok((v, pos))
            }
            _ => self.fail(&[label]),
        }
    }

    fn expr(&mut self) -> Result<Expr> {
        let mut acc = self.term()?;
        loop {
            match self.peek().0 {
                Tok::Plus => {
                    self.bump();
                    acc = Expr::Sum(Box::new(acc), Box::new(self.term()?));
                }
                Tok::Minus => {
                    self.bump();
                    acc = Expr::Diff(Box::new(acc), Box::new(self.term()?));
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<Expr> {
        let mut acc = self.factor()?;
        while self.peek().0 == Tok::Star {
            self.bump();
            acc = Expr::Prod(Box::new(acc), Box::new(self.factor()?));
        }
        Ok(acc)
    }

    fn factor(&mut self) -> Result<Expr> {
        let atom = self.atom()?;
        if self.peek().0 == Tok::Caret {
            self.bump();
            let (v, pos) = self.expect_uint("integer exponent")?;
            let exp = u32::try_from(v).map_err(|_| {
                Error::Parse(ParseDiagnostic {
                    line: pos.line,
                    col: pos.col,
                    expected: vec!["exponent below 2^32".into()],
                    found: v.to_string(),
                })
            })?;
            return Ok(Expr::Pow(Box::new(atom), exp));
        }
        Ok(atom)
    }

    fn atom(&mut self) -> Result<Expr> {
        let (tok, pos) = self.peek().clone();
        match tok {
            Tok::Word(w) => match w.as_str() {
                "u" => {
                    self.bump();
                    self.expect(Tok::LParen, "(")?;
                    let (level, _) = self.expect_uint("level")?;
                    self.expect(Tok::RParen, ")")?;
                    Ok(Expr::U {
                        level: level as usize,
                        pos,
                    })
                }
                "h" => {
                    self.bump();
                    Ok(Expr::H { pos })
                }
                "s" => {
                    self.bump();
                    self.expect(Tok::LParen, "(")?;
                    let (level, _) = self.expect_uint("level")?;
                    self.expect(Tok::Comma, ",")?;
                    let (index, ipos) = self.expect_uint("index")?;
                    self.expect(Tok::RParen, ")")?;
                    let index = u32::try_from(index).map_err(|_| {
                        Error::Parse(ParseDiagnostic {
                            line: ipos.line,
                            col: ipos.col,
                            expected: vec!["index below 2^32".into()],
                            found: index.to_string(),
                        })
                    })?;
                    Ok(Expr::S {
                        level: level as usize,
                        index,
                        pos,
                    })
                }
                "l" => {
                    self.bump();
                    self.expect(Tok::LParen, "(")?;
                    let (level, _) = self.expect_uint("level")?;
                    self.expect(Tok::RParen, ")")?;
                    Ok(Expr::L {
                        level: level as usize,
                        pos,
                    })
                }
                "d" => {
                    self.bump();
                    let (index, _) = self.expect_uint("variable index")?;
                    Ok(Expr::Var {
                        index: index as usize,
                        pos,
                    })
                }
                "integrate" => {
                    self.bump();
                    self.expect(Tok::LParen, "(")?;
                    let (level, _) = self.expect_uint("level")?;
                    self.expect(Tok::Comma, ",")?;
                    let body = self.expr()?;
                    self.expect(Tok::RParen, ")")?;
                    Ok(Expr::Integrate {
                        level: level as usize,
                        body: Box::new(body),
                        pos,
                    })
                }
                _ => self.fail(&["u", "h", "s", "l", "d", "integrate"]),
            },
            Tok::Int(value) => {
                self.bump();
                Ok(Expr::Num { value, pos })
            }
            Tok::LParen => {
                self.bump();
                let inner = self.expr()?;
                self.expect(Tok::RParen, ")")?;
                Ok(inner)
            }
            _ => self.fail(&["atom", "integer", "("]),
        }
    }
}

/// Parse source text into an expression tree.
pub fn parse(src: &str) -> Result<Expr> {
    let mut parser = Parser {
        toks: lex(src)?,
        at: 0,
    };
    let expr = parser.expr()?;
    if parser.peek().0 != Tok::End {
        return parser.fail(&["+", "-", "*", "^", "end of input"]);
    }
    Ok(expr)
}

/// Check every atom against the declared tower level and variable count.
/// The body of an `integrate(k, ..)` form is validated against `k`.
pub fn validate(expr: &Expr, codim: usize, kappa: usize, max_level: usize) -> Result<()> {
    match expr {
        Expr::Sum(a, b) | Expr::Diff(a, b) | Expr::Prod(a, b) => {
            validate(a, codim, kappa, max_level)?;
            validate(b, codim, kappa, max_level)
        }
        Expr::Pow(a, _) => validate(a, codim, kappa, max_level),
        Expr::U { level, .. } => {
            if *level < 1 || *level > max_level {
                Err(Error::OutOfRange {
                    atom: format!("u({level})"),
                    max: max_level,
                })
            } else {
                Ok(())
            }
        }
        Expr::H { .. } | Expr::Num { .. } => Ok(()),
        Expr::S { level, .. } => {
            if *level > max_level {
                Err(Error::OutOfRange {
                    atom: format!("s({level},..)"),
                    max: max_level,
                })
            } else {
                Ok(())
            }
        }
        Expr::L { level, .. } => {
            if *level < 1 || *level > max_level.min(kappa) {
                Err(Error::OutOfRange {
                    atom: format!("l({level})"),
                    max: max_level.min(kappa),
                })
            } else {
                Ok(())
            }
        }
        Expr::Var { index, .. } => {
            if *index < 1 || *index > codim {
                Err(Error::OutOfRange {
                    atom: format!("d{index}"),
                    max: codim,
                })
            } else {
                Ok(())
            }
        }
        Expr::Integrate { level, body, .. } => validate(body, codim, kappa, *level),
    }
}

/// Evaluate an expression as a class on `level`; `integrate` atoms reduce
/// their body to a degree polynomial, re-entering as a constant class.
pub fn eval(expr: &Expr, tower: &Tower, level: usize) -> Result<ChowClass> {
    let geom = tower.geom();
    match expr {
        Expr::Sum(a, b) => Ok(eval(a, tower, level)?.add(&eval(b, tower, level)?)),
        Expr::Diff(a, b) => Ok(eval(a, tower, level)?.sub(&eval(b, tower, level)?)),
        Expr::Prod(a, b) => Ok(eval(a, tower, level)?.mul(&eval(b, tower, level)?)),
        Expr::Pow(a, e) => Ok(eval(a, tower, level)?.pow(*e)),
        Expr::U { level: j, .. } => ChowClass::u(geom, level, *j),
        Expr::H { .. } => Ok(ChowClass::h(geom, level)),
        Expr::S { level: k, index, .. } => {
            Ok(tower.expand_tower_segre(*k, *index)?.pullback_to(level)?)
        }
        Expr::L { level: k, .. } => l_class(&geom, *k)?.pullback_to(level),
        Expr::Var { index, .. } => Ok(ChowClass::constant(
            geom,
            level,
            MultiPoly::var(geom.num_vars(), *index - 1),
        )),
        Expr::Num { value, .. } => Ok(ChowClass::constant(
            geom,
            level,
            MultiPoly::constant(geom.num_vars(), BigInt::from(*value)),
        )),
        Expr::Integrate { level: k, body, .. } => {
            let inner = eval(body, tower, *k)?;
            let poly = tower.integrate(&inner)?;
            Ok(ChowClass::constant(geom, level, poly))
        }
    }
}
