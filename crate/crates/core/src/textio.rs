//! Canonical text encodings and the expression parser for problem files.

use crate::error::{Error, Result};
use crate::field::{FieldConfig, Scalar};
use crate::poly::Poly;
use crate::ratfn::RatFn;
use num_bigint::BigInt;
use num_rational::BigRational;

/// Renders a polynomial in the given variable, descending powers.
pub fn encode_poly(p: &Poly, var: &str) -> String {
    if p.is_zero() {
        return "0".into();
    }
    let mut out = String::new();
    for i in (0..p.c.len()).rev() {
        let a = &p.c[i];
        if a.is_zero() {
            continue;
        }
        let enc = a.encode();
        let (neg, mag) = match enc.strip_prefix('-') {
            Some(rest) => (true, rest.to_string()),
            None => (false, enc),
        };
        if out.is_empty() {
            if neg {
                out.push('-');
            }
        } else {
            out.push_str(if neg { " - " } else { " + " });
        }
        let needs_wrap = mag.contains('+') || mag.contains('-') || mag.contains('/');
        let mag = if needs_wrap && i > 0 { format!("({})", mag) } else { mag };
        if i == 0 {
            out.push_str(&mag);
        } else {
            if mag != "1" {
                out.push_str(&mag);
                out.push('*');
            }
            out.push_str(var);
            if i > 1 {
                out.push_str(&format!("^{}", i));
            }
        }
    }
    out
}

pub fn encode_ratfn(r: &RatFn, var: &str) -> String {
    let n = encode_poly(&r.num, var);
    if r.den.is_constant() {
        return n;
    }
    let d = encode_poly(&r.den, var);
    format!("({})/({})", n, d)
}

/// Renders a function-field element as f1 + (f2)*y with canonical
/// sub-encodings; round-trips through the expression parser.
pub fn encode_fnelt(f: &crate::fnfield::FnElt) -> String {
    if f.is_zero() {
        return "0".into();
    }
    let part1 = encode_ratfn(&f.f1, "x");
    if f.f2.is_zero() {
        return part1;
    }
    let one = f.f2.field().one();
    let part2 = if f.f2.is_constant() && f.f2.num.coeff(0) == one {
        "y".to_string()
    } else {
        format!("({})*y", encode_ratfn(&f.f2, "x"))
    };
    if f.f1.is_zero() {
        part2
    } else {
        format!("{} + {}", part1, part2)
    }
}

// ---- Expression parsing ----

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Int(BigInt),
    Ident(String),
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
    LBracket,
    RBracket,
    Comma,
}

struct Lexer {
    toks: Vec<(Tok, usize)>,
    pos: usize,
    line: usize,
}

impl Lexer {
    fn new(src: &str, line: usize) -> Result<Self> {
        let mut toks = Vec::new();
        let chars: Vec<char> = src.chars().collect();
        let mut i = 0;
        while i < chars.len() {
            let col = i + 1;
            let c = chars[i];
            match c {
                ' ' | '\t' => {
                    i += 1;
                }
                '0'..='9' => {
                    let start = i;
                    while i < chars.len() && chars[i].is_ascii_digit() {
                        i += 1;
                    }
                    let text: String = chars[start..i].iter().collect();
                    toks.push((Tok::Int(text.parse().unwrap()), col));
                }
                'a'..='z' | 'A'..='Z' | '_' => {
                    let start = i;
                    while i < chars.len() && (chars[i].is_ascii_alphanumeric() || chars[i] == '_') {
                        i += 1;
                    }
                    toks.push((Tok::Ident(chars[start..i].iter().collect()), col));
                }
                '+' => {
                    toks.push((Tok::Plus, col));
                    i += 1;
                }
                '-' => {
                    toks.push((Tok::Minus, col));
                    i += 1;
                }
                '*' => {
                    toks.push((Tok::Star, col));
                    i += 1;
                }
                '/' => {
                    toks.push((Tok::Slash, col));
                    i += 1;
                }
                '^' => {
                    toks.push((Tok::Caret, col));
                    i += 1;
                }
                '(' => {
                    toks.push((Tok::LParen, col));
                    i += 1;
                }
                ')' => {
                    toks.push((Tok::RParen, col));
                    i += 1;
                }
                '[' => {
                    toks.push((Tok::LBracket, col));
                    i += 1;
                }
                ']' => {
                    toks.push((Tok::RBracket, col));
                    i += 1;
                }
                ',' => {
                    toks.push((Tok::Comma, col));
                    i += 1;
                }
                _ => return Err(Error::parse(line, col, format!("unexpected character '{}'", c))),
            }
        }
        Ok(Lexer { toks, pos: 0, line })
    }

    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|(t, _)| t)
    }

    fn col(&self) -> usize {
        self.toks.get(self.pos).map(|&(_, c)| c).unwrap_or_else(|| {
            self.toks.last().map(|&(_, c)| c + 1).unwrap_or(1)
        })
    }

    fn next(&mut self) -> Option<Tok> {
        let t = self.toks.get(self.pos).map(|(t, _)| t.clone());
        if t.is_some() {
            self.pos += 1;
        }
        t
    }

    fn expect(&mut self, want: Tok) -> Result<()> {
        let col = self.col();
        match self.next() {
            Some(t) if t == want => Ok(()),
            other => Err(Error::parse(
                self.line,
                col,
                format!("expected {:?}, found {:?}", want, other),
            )),
        }
    }

    fn at_end(&self) -> bool {
        self.pos >= self.toks.len()
    }

    fn err(&self, msg: impl Into<String>) -> Error {
        Error::parse(self.line, self.col(), msg)
    }
}

/// Expression AST shared by scalar, rational-function, and function-field
/// contexts; the evaluator decides which atoms are admissible.
#[derive(Clone, Debug)]
pub enum Expr {
    Int(BigInt),
    Var(String),
    Neg(Box<Expr>),
    Add(Box<Expr>, Box<Expr>),
    Sub(Box<Expr>, Box<Expr>),
    Mul(Box<Expr>, Box<Expr>),
    Div(Box<Expr>, Box<Expr>),
    Pow(Box<Expr>, i64),
}

fn parse_expr(lx: &mut Lexer) -> Result<Expr> {
    parse_sum(lx)
}

fn parse_sum(lx: &mut Lexer) -> Result<Expr> {
    let mut acc = parse_product(lx)?;
    loop {
        match lx.peek() {
            Some(Tok::Plus) => {
                lx.next();
                acc = Expr::Add(Box::new(acc), Box::new(parse_product(lx)?));
            }
            Some(Tok::Minus) => {
                lx.next();
                acc = Expr::Sub(Box::new(acc), Box::new(parse_product(lx)?));
            }
            _ => return Ok(acc),
        }
    }
}

fn parse_product(lx: &mut Lexer) -> Result<Expr> {
    let mut acc = parse_unary(lx)?;
    loop {
        match lx.peek() {
            Some(Tok::Star) => {
                lx.next();
                acc = Expr::Mul(Box::new(acc), Box::new(parse_unary(lx)?));
            }
            Some(Tok::Slash) => {
                lx.next();
                acc = Expr::Div(Box::new(acc), Box::new(parse_unary(lx)?));
            }
            _ => return Ok(acc),
        }
    }
}

fn parse_unary(lx: &mut Lexer) -> Result<Expr> {
    match lx.peek() {
        Some(Tok::Minus) => {
            lx.next();
            Ok(Expr::Neg(Box::new(parse_unary(lx)?)))
        }
        Some(Tok::Plus) => {
            lx.next();
            parse_unary(lx)
        }
        _ => parse_power(lx),
    }
}

fn parse_power(lx: &mut Lexer) -> Result<Expr> {
    let base = parse_atom(lx)?;
    if lx.peek() == Some(&Tok::Caret) {
        lx.next();
        let mut neg = false;
        if lx.peek() == Some(&Tok::Minus) {
            lx.next();
            neg = true;
        }
        let e = match lx.next() {
            Some(Tok::Int(n)) => {
                let e: i64 = n
                    .to_string()
                    .parse()
                    .map_err(|_| lx.err("exponent out of range"))?;
                if neg {
                    -e
                } else {
                    e
                }
            }
            _ => return Err(lx.err("expected integer exponent after '^'")),
        };
        return Ok(Expr::Pow(Box::new(base), e));
    }
    Ok(base)
}

fn parse_atom(lx: &mut Lexer) -> Result<Expr> {
    let col = lx.col();
    match lx.next() {
        Some(Tok::Int(n)) => Ok(Expr::Int(n)),
        Some(Tok::Ident(name)) => Ok(Expr::Var(name)),
        Some(Tok::LParen) => {
            let e = parse_expr(lx)?;
            lx.expect(Tok::RParen)?;
            Ok(e)
        }
        other => Err(Error::parse(lx.line, col, format!("unexpected token {:?}", other))),
    }
}

/// Parses a full-line expression, rejecting trailing tokens.
pub fn parse_expression(src: &str, line: usize) -> Result<Expr> {
    let mut lx = Lexer::new(src, line)?;
    let e = parse_expr(&mut lx)?;
    if !lx.at_end() {
        return Err(lx.err("trailing input after expression"));
    }
    Ok(e)
}

/// Evaluates an expression in scalar context: the only admissible
/// variable is t over a function field.
pub fn eval_scalar(e: &Expr, field: FieldConfig, line: usize) -> Result<Scalar> {
    match e {
        Expr::Int(n) => Ok(match field {
            FieldConfig::Rationals => Scalar::Rat(BigRational::from_integer(n.clone())),
            FieldConfig::PrimeFnField(p) => {
                let m = n.modpow(&BigInt::from(1), &BigInt::from(p));
                let m: u64 = m.to_string().parse().unwrap();
                crate::field::Scalar::FpT(crate::field::FpRat::from_int(p, m as i64))
            }
        }),
        Expr::Var(name) if name == "t" => field.gen_t().map_err(|_| {
            Error::parse(line, 1, "the symbol t is only defined over F_p(t)")
        }),
        Expr::Var(name) => Err(Error::parse(
            line,
            1,
            format!("symbol '{}' is not a scalar here", name),
        )),
        Expr::Neg(a) => Ok(-&eval_scalar(a, field, line)?),
        Expr::Add(a, b) => Ok(&eval_scalar(a, field, line)? + &eval_scalar(b, field, line)?),
        Expr::Sub(a, b) => Ok(&eval_scalar(a, field, line)? - &eval_scalar(b, field, line)?),
        Expr::Mul(a, b) => Ok(&eval_scalar(a, field, line)? * &eval_scalar(b, field, line)?),
        Expr::Div(a, b) => {
            let d = eval_scalar(b, field, line)?;
            if d.is_zero() {
                return Err(Error::parse(line, 1, "division by zero in scalar expression"));
            }
            Ok(&eval_scalar(a, field, line)? / &d)
        }
        Expr::Pow(a, e) => {
            let base = eval_scalar(a, field, line)?;
            if base.is_zero() && *e < 0 {
                return Err(Error::parse(line, 1, "zero raised to a negative power"));
            }
            base.pow(*e)
        }
    }
}

/// Parses a scalar expression such as "-3/4" or "(t^2+1)/(t+3)".
pub fn parse_scalar(src: &str, field: FieldConfig, line: usize) -> Result<Scalar> {
    let e = parse_expression(src, line)?;
    eval_scalar(&e, field, line)
}

/// Evaluates an expression in the function field of a curve: admissible
/// symbols are x, y, and t (the latter over F_p(t) only).
pub fn eval_fnelt(
    e: &Expr,
    curve: &std::sync::Arc<crate::curve::CurveSpec>,
    line: usize,
) -> Result<crate::fnfield::FnElt> {
    use crate::fnfield::FnElt;
    let semantic = |err: Error| match err {
        Error::Parse { .. } => err,
        other => Error::parse(line, 1, other.to_string()),
    };
    match e {
        Expr::Int(_) => Ok(FnElt::constant(
            curve,
            eval_scalar(e, curve.field, line)?,
        )),
        Expr::Var(name) if name == "x" => Ok(FnElt::x(curve)),
        Expr::Var(name) if name == "y" => Ok(FnElt::y(curve)),
        Expr::Var(name) if name == "t" => Ok(FnElt::constant(
            curve,
            curve.field.gen_t().map_err(semantic)?,
        )),
        Expr::Var(name) => Err(Error::parse(
            line,
            1,
            format!("unknown symbol '{}' in a function expression", name),
        )),
        Expr::Neg(a) => Ok(eval_fnelt(a, curve, line)?.neg()),
        Expr::Add(a, b) => Ok(eval_fnelt(a, curve, line)?.add(&eval_fnelt(b, curve, line)?)),
        Expr::Sub(a, b) => Ok(eval_fnelt(a, curve, line)?.sub(&eval_fnelt(b, curve, line)?)),
        Expr::Mul(a, b) => Ok(eval_fnelt(a, curve, line)?.mul(&eval_fnelt(b, curve, line)?)),
        Expr::Div(a, b) => eval_fnelt(a, curve, line)?
            .div(&eval_fnelt(b, curve, line)?)
            .map_err(semantic),
        Expr::Pow(a, n) => eval_fnelt(a, curve, line)?.pow(*n).map_err(semantic),
    }
}

/// Parses a function-field expression such as "1/y + (x-1)*y".
pub fn parse_fnelt(
    src: &str,
    curve: &std::sync::Arc<crate::curve::CurveSpec>,
    line: usize,
) -> Result<crate::fnfield::FnElt> {
    let e = parse_expression(src, line)?;
    eval_fnelt(&e, curve, line)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn scalar_roundtrip_rational() {
        let k = FieldConfig::Rationals;
        for src in ["5", "-3/4", "2/3", "0", "7/2"] {
            let s = parse_scalar(src, k, 1).unwrap();
            assert_eq!(s.encode(), src);
        }
        assert_eq!(parse_scalar("(1+2)^3/9", k, 1).unwrap().encode(), "3");
    }

    #[test]
    fn scalar_roundtrip_fp() {
        let k = FieldConfig::PrimeFnField(5);
        for src in ["t^2+1", "(t^2+1)/(t+1)", "4*t", "3"] {
            let s = parse_scalar(src, k, 1).unwrap();
            assert_eq!(s.encode(), src);
        }
        // Reduction happens on parse.
        let s = parse_scalar("(t^2+4)/(t+1)", k, 1).unwrap();
        assert_eq!(s.encode(), "t+4");
    }

    #[test]
    fn rejects_stray_symbols() {
        assert!(parse_scalar("t", FieldConfig::Rationals, 3).is_err());
        assert!(parse_scalar("2 +", FieldConfig::Rationals, 3).is_err());
        assert!(parse_scalar("q", FieldConfig::PrimeFnField(5), 3).is_err());
    }

    #[test]
    fn poly_encoding() {
        let k = FieldConfig::Rationals;
        let p = Poly::from_coeffs(
            k,
            vec![k.integer(-1), k.zero(), Scalar::from_rational(1, 2), k.integer(1)],
        );
        assert_eq!(encode_poly(&p, "x"), "x^3 + (1/2)*x^2 - 1");
    }
}
