//! A small expression language for entering and printing elements.
//!
//! Grammar:
//!
//! ```text
//! element  := ('+'|'-')? term (('+'|'-') term)*
//! term     := factor ('*'? factor)*
//! factor   := atom ('^' uint)?
//! atom     := rational | 'e[' uint ',' uint ']' | '(' element ')'
//! rational := int ('/' uint)?
//! ```
//!
//! Juxtaposition and `*` both denote (noncommutative, left-associative)
//! multiplication; whitespace is insignificant. The leading sign is accepted
//! so that printed normal forms parse back verbatim.

use serde_json::{json, Value};

use crate::action::Gl2nElement;
use crate::matrix::NumericMatrix;
use crate::pbw::{Gen, Monomial, UEAElement};
use crate::scalar::Scalar;
use crate::Error;

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
}

#[derive(Clone, Debug)]
enum Ast {
    /// A rational literal: sign, numerator digits, denominator digits.
    /// Digit strings keep the literal exact at any magnitude.
    Num(bool, String, String),
    Gen(usize, usize),
    Neg(Box<Ast>),
    Add(Box<Ast>, Box<Ast>),
    Sub(Box<Ast>, Box<Ast>),
    Mul(Box<Ast>, Box<Ast>),
    Pow(Box<Ast>, u32),
}

impl<'a> Parser<'a> {
    fn new(src: &'a str) -> Self {
        Parser {
            src: src.as_bytes(),
            pos: 0,
        }
    }

    fn err(&self, msg: impl Into<String>) -> Error {
        Error::Parse {
            pos: self.pos,
            msg: msg.into(),
        }
    }

    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn eat(&mut self, b: u8) -> Result<(), Error> {
        if self.peek() == Some(b) {
            self.pos += 1;
            Ok(())
        } else {
            Err(self.err(format!("expected '{}'", b as char)))
        }
    }

    fn digits(&mut self) -> Result<String, Error> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if self.pos == start {
            return Err(self.err("expected a number"));
        }
        Ok(std::str::from_utf8(&self.src[start..self.pos])
            .unwrap()
            .to_string())
    }

    fn uint(&mut self) -> Result<u64, Error> {
        self.digits()?
            .parse()
            .map_err(|_| self.err("number too large"))
    }

    fn element(&mut self) -> Result<Ast, Error> {
        let mut acc = match self.peek() {
            Some(b'-') => {
                self.pos += 1;
                Ast::Neg(Box::new(self.term()?))
            }
            Some(b'+') => {
                self.pos += 1;
                self.term()?
            }
            _ => self.term()?,
        };
        loop {
            match self.peek() {
                Some(b'+') => {
                    self.pos += 1;
                    acc = Ast::Add(Box::new(acc), Box::new(self.term()?));
                }
                Some(b'-') => {
                    self.pos += 1;
                    acc = Ast::Sub(Box::new(acc), Box::new(self.term()?));
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<Ast, Error> {
        let mut acc = self.factor()?;
        loop {
            match self.peek() {
                Some(b'*') => {
                    self.pos += 1;
                    acc = Ast::Mul(Box::new(acc), Box::new(self.factor()?));
                }
                Some(c) if c == b'e' || c == b'(' || c.is_ascii_digit() => {
                    acc = Ast::Mul(Box::new(acc), Box::new(self.factor()?));
                }
                _ => return Ok(acc),
            }
        }
    }

    fn factor(&mut self) -> Result<Ast, Error> {
        let atom = self.atom()?;
        if self.peek() == Some(b'^') {
            self.pos += 1;
            let e = self.uint()?;
            let e = u32::try_from(e).map_err(|_| self.err("exponent overflow"))?;
            Ok(Ast::Pow(Box::new(atom), e))
        } else {
            Ok(atom)
        }
    }

    fn atom(&mut self) -> Result<Ast, Error> {
        match self.peek() {
            Some(b'e') => {
                self.pos += 1;
                self.eat(b'[')?;
                let i = self.uint()? as usize;
                self.eat(b',')?;
                let j = self.uint()? as usize;
                self.eat(b']')?;
                Ok(Ast::Gen(i, j))
            }
            Some(b'(') => {
                self.pos += 1;
                let inner = self.element()?;
                self.eat(b')')?;
                Ok(inner)
            }
            Some(c) if c.is_ascii_digit() || c == b'-' || c == b'+' => {
                let neg = match c {
                    b'-' => {
                        self.pos += 1;
                        true
                    }
                    b'+' => {
                        self.pos += 1;
                        false
                    }
                    _ => false,
                };
                let num = self.digits()?;
                let den = if self.peek() == Some(b'/') {
                    self.pos += 1;
                    let d = self.digits()?;
                    if d.bytes().all(|b| b == b'0') {
                        return Err(self.err("zero denominator"));
                    }
                    d
                } else {
                    "1".to_string()
                };
                Ok(Ast::Num(neg, num, den))
            }
            _ => Err(self.err("expected a rational, 'e[i,j]' or '('")),
        }
    }

    fn finish(&mut self) -> Result<(), Error> {
        if self.peek().is_some() {
            Err(self.err("unexpected trailing input"))
        } else {
            Ok(())
        }
    }
}

/// Evaluate a digit string in any scalar type by Horner's rule.
fn digits_to_scalar<S: Scalar>(digits: &str) -> S {
    let ten = S::from_int(10);
    digits.bytes().fold(S::zero(), |acc, b| {
        acc * ten.clone() + S::from_int((b - b'0') as i128)
    })
}

fn num_to_scalar<S: Scalar>(neg: bool, num: &str, den: &str) -> S {
    let v = digits_to_scalar::<S>(num) / digits_to_scalar::<S>(den);
    if neg {
        -v
    } else {
        v
    }
}

fn eval_uea<S: Scalar>(ast: &Ast, n: usize) -> Result<UEAElement<S>, Error> {
    Ok(match ast {
        Ast::Num(neg, p, q) => UEAElement::constant(n, num_to_scalar(*neg, p, q)),
        Ast::Gen(i, j) => {
            if !(1..=n).contains(i) || !(1..=n).contains(j) {
                return Err(Error::IndexOutOfRange {
                    row: *i,
                    col: *j,
                    n,
                });
            }
            UEAElement::generator(n, *i, *j)
        }
        Ast::Neg(a) => eval_uea::<S>(a, n)?.neg_ref(),
        Ast::Add(a, b) => eval_uea::<S>(a, n)?.add_ref(&eval_uea(b, n)?),
        Ast::Sub(a, b) => eval_uea::<S>(a, n)?.sub_ref(&eval_uea(b, n)?),
        Ast::Mul(a, b) => eval_uea::<S>(a, n)?.mul_ref(&eval_uea(b, n)?),
        Ast::Pow(a, e) => eval_uea::<S>(a, n)?.pow(*e),
    })
}

/// Parse an element of `U(gl_n)`; the result is PBW-normalized.
pub fn parse_uea<S: Scalar>(text: &str, n: usize) -> Result<UEAElement<S>, Error> {
    let mut p = Parser::new(text);
    let ast = p.element()?;
    p.finish()?;
    eval_uea(&ast, n)
}

enum LinValue<S> {
    Scalar(S),
    Mat(NumericMatrix<S>),
}

fn eval_gl2n<S: Scalar>(ast: &Ast, n: usize) -> Result<LinValue<S>, Error> {
    use LinValue::*;
    Ok(match ast {
        Ast::Num(neg, p, q) => Scalar(num_to_scalar(*neg, p, q)),
        Ast::Gen(i, j) => {
            if !(1..=2 * n).contains(i) || !(1..=2 * n).contains(j) {
                return Err(Error::IndexOutOfRange {
                    row: *i,
                    col: *j,
                    n: 2 * n,
                });
            }
            Mat(NumericMatrix::unit(2 * n, *i, *j))
        }
        Ast::Neg(a) => match eval_gl2n::<S>(a, n)? {
            Scalar(s) => Scalar(-s),
            Mat(m) => Mat(m.neg()),
        },
        Ast::Add(a, b) | Ast::Sub(a, b) => {
            let sub = matches!(ast, Ast::Sub(..));
            match (eval_gl2n::<S>(a, n)?, eval_gl2n::<S>(b, n)?) {
                (Scalar(x), Scalar(y)) => Scalar(if sub { x - y } else { x + y }),
                (Mat(x), Mat(y)) => Mat(if sub { x.sub(&y) } else { x.add(&y) }),
                _ => return Err(Error::Nonlinear),
            }
        }
        Ast::Mul(a, b) => match (eval_gl2n::<S>(a, n)?, eval_gl2n::<S>(b, n)?) {
            (Scalar(x), Scalar(y)) => Scalar(x * y),
            (Scalar(x), Mat(m)) | (Mat(m), Scalar(x)) => Mat(m.scale(&x)),
            (Mat(_), Mat(_)) => return Err(Error::Nonlinear),
        },
        Ast::Pow(a, e) => match eval_gl2n::<S>(a, n)? {
            Scalar(x) => {
                let mut acc = S::one();
                for _ in 0..*e {
                    acc = acc * x.clone();
                }
                Scalar(acc)
            }
            Mat(m) if *e == 1 => Mat(m),
            Mat(_) => return Err(Error::Nonlinear),
        },
    })
}

/// Parse a gl_2n element: a linear combination of basis units `e[i,j]` with
/// `i, j` in `[1, 2n]`.
pub fn parse_gl2n<S: Scalar>(text: &str, n: usize) -> Result<Gl2nElement<S>, Error> {
    let mut p = Parser::new(text);
    let ast = p.element()?;
    p.finish()?;
    match eval_gl2n::<S>(&ast, n)? {
        LinValue::Mat(m) => Ok(Gl2nElement::new(n, m)),
        LinValue::Scalar(s) if s.is_zero() => Ok(Gl2nElement::zero(n)),
        LinValue::Scalar(_) => Err(Error::Nonlinear),
    }
}

fn write_monomial(out: &mut String, m: &Monomial) {
    for (g, e) in m.exps() {
        out.push_str(&format!("e[{},{}]", g.row, g.col));
        if e > 1 {
            out.push_str(&format!("^{e}"));
        }
    }
}

/// Deterministic pretty-printer: terms in degree-then-lex order; the output
/// parses back to the same element.
pub fn print_normal<S: Scalar>(a: &UEAElement<S>) -> String {
    if a.is_zero() {
        return "0".to_string();
    }
    let mut out = String::new();
    for (idx, (m, c)) in a.terms().enumerate() {
        let neg = c.is_negative();
        if idx == 0 {
            if neg {
                out.push('-');
            }
        } else if neg {
            out.push_str(" - ");
        } else {
            out.push_str(" + ");
        }
        let mag = c.abs();
        if m.is_one() {
            out.push_str(&mag.to_string());
        } else if !mag.is_one() {
            out.push_str(&mag.to_string());
            out.push(' ');
        }
        write_monomial(&mut out, m);
    }
    out
}

/// JSON encoding: `[[ [[i,j,exp],...], "p/q" ], ...]` in canonical term order.
pub fn element_to_json<S: Scalar>(a: &UEAElement<S>) -> Value {
    let terms: Vec<Value> = a
        .terms()
        .map(|(m, c)| {
            let gens: Vec<Value> = m
                .exps()
                .map(|(g, e)| json!([g.row as u64, g.col as u64, e]))
                .collect();
            json!([gens, c.to_string()])
        })
        .collect();
    Value::Array(terms)
}

/// Inverse of [`element_to_json`].
pub fn element_from_json<S: Scalar>(v: &Value, n: usize) -> Result<UEAElement<S>, Error> {
    let bad = || Error::Invalid("malformed element JSON".to_string());
    let terms = v.as_array().ok_or_else(bad)?;
    let mut out = UEAElement::zero(n);
    for t in terms {
        let pair = t.as_array().ok_or_else(bad)?;
        if pair.len() != 2 {
            return Err(bad());
        }
        let gens = pair[0].as_array().ok_or_else(bad)?;
        let mut exps = Vec::new();
        for g in gens {
            let triple = g.as_array().ok_or_else(bad)?;
            if triple.len() != 3 {
                return Err(bad());
            }
            let i = triple[0].as_u64().ok_or_else(bad)? as usize;
            let j = triple[1].as_u64().ok_or_else(bad)? as usize;
            let e = triple[2].as_u64().ok_or_else(bad)? as u32;
            if !(1..=n).contains(&i) || !(1..=n).contains(&j) {
                return Err(Error::IndexOutOfRange { row: i, col: j, n });
            }
            exps.push((Gen::new(i, j), e));
        }
        let coeff = pair[1].as_str().ok_or_else(bad)?;
        let c: S = parse_scalar(coeff)?;
        out.add_term(Monomial::from_exps(exps), c);
    }
    Ok(out)
}

/// Parse a scalar written as `p` or `p/q` with optional sign.
pub fn parse_scalar<S: Scalar>(text: &str) -> Result<S, Error> {
    let mut p = Parser::new(text);
    let ast = p.atom()?;
    p.finish()?;
    match ast {
        Ast::Num(neg, num, den) => Ok(num_to_scalar(neg, &num, &den)),
        _ => Err(Error::Invalid(format!("not a rational: {text}"))),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::{Element, Rat};

    fn e(n: usize, i: usize, j: usize) -> Element {
        Element::generator(n, i, j)
    }

    #[test]
    fn parse_normalizes() {
        let a: Element = parse_uea("e[1,1]^2 * e[2,1] + 5", 2).unwrap();
        let expected = &(&e(2, 1, 1).pow(2) * &e(2, 2, 1)) + &Element::constant(2, Rat::from_int(5));
        assert_eq!(a, expected);
        let b: Element = parse_uea("e[1,2] e[2,1]", 2).unwrap();
        assert_eq!(b, &e(2, 1, 2) * &e(2, 2, 1));
        assert_eq!(print_normal(&b), "e[1,1] - e[2,2] + e[2,1]e[1,2]");
    }

    #[test]
    fn parse_index_out_of_range() {
        assert!(matches!(
            parse_uea::<Rat>("e[1,3]", 2),
            Err(Error::IndexOutOfRange { .. })
        ));
    }

    #[test]
    fn parse_syntax_error_has_position() {
        match parse_uea::<Rat>("e[1,1] + ", 2) {
            Err(Error::Parse { pos, .. }) => assert_eq!(pos, 9),
            other => panic!("expected parse error, got {other:?}"),
        }
    }

    #[test]
    fn parse_gl2n_examples() {
        let x = parse_gl2n::<Rat>("e[1,3]", 2).unwrap();
        assert_eq!(x, crate::Gl2n::unit(2, 1, 3));
        let y = parse_gl2n::<Rat>("2 e[3,1] - e[4,4]", 2).unwrap();
        let expected = crate::Gl2n::unit(2, 3, 1)
            .scale(&Rat::from_int(2))
            .add(&crate::Gl2n::unit(2, 4, 4).scale(&Rat::from_int(-1)));
        assert_eq!(y, expected);
        assert!(matches!(
            parse_gl2n::<Rat>("e[1,1]^2", 2),
            Err(Error::Nonlinear)
        ));
    }

    #[test]
    fn print_examples() {
        assert_eq!(print_normal(&Element::zero(2)), "0");
        let a = &(&e(1, 1, 1).pow(3).neg_ref() - &e(1, 1, 1).pow(2).scale(&Rat::from_int(2)))
            - &e(1, 1, 1);
        assert_eq!(print_normal(&a), "-e[1,1] - 2 e[1,1]^2 - e[1,1]^3");
    }

    #[test]
    fn print_then_parse_round_trip() {
        let a = parse_uea::<Rat>("3/2 e[1,2]^2 e[2,1] - e[1,1] + 7/3", 2).unwrap();
        let printed = print_normal(&a);
        let back: Element = parse_uea(&printed, 2).unwrap();
        assert_eq!(a, back);
    }

    #[test]
    fn json_round_trip() {
        let a = parse_uea::<Rat>("3/2 e[1,2]^2 e[2,1] - e[1,1] + 7/3", 2).unwrap();
        let v = element_to_json(&a);
        let back: Element = element_from_json(&v, 2).unwrap();
        assert_eq!(a, back);
    }
}
