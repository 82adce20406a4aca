//! Parser for coordinate expressions: rational literals, variables, `+ - * ^`
//! with nonnegative integer exponents, and parentheses.

use crate::algebra::{Field, MultiPoly, Scalar};
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Num(String),
    Ident(String),
    Op(char),
}

fn lex(s: &str) -> Result<Vec<Tok>> {
    let mut out = vec![];
    let cs: Vec<char> = s.chars().collect();
    let mut i = 0;
    while i < cs.len() {
        let c = cs[i];
        if c.is_whitespace() {
            i += 1;
        } else if c.is_ascii_digit() {
            let st = i;
            while i < cs.len() && cs[i].is_ascii_digit() {
                i += 1;
            }
            out.push(Tok::Num(cs[st..i].iter().collect()));
        } else if c.is_ascii_alphabetic() || c == '_' {
            let st = i;
            while i < cs.len() && (cs[i].is_ascii_alphanumeric() || cs[i] == '_') {
                i += 1;
            }
            out.push(Tok::Ident(cs[st..i].iter().collect()));
        } else if "+-*/^()".contains(c) {
            out.push(Tok::Op(c));
            i += 1;
        } else {
            return Err(Error::Parse(format!("unexpected character `{c}` in `{s}`")));
        }
    }
    Ok(out)
}

struct Parser<'a> {
    toks: Vec<Tok>,
    pos: usize,
    vars: &'a [String],
    src: &'a str,
}

impl Parser<'_> {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos)
    }

    fn err(&self, msg: &str) -> Error {
        Error::Parse(format!("{msg} in `{}`", self.src))
    }

    fn expr(&mut self) -> Result<MultiPoly> {
        let mut acc = self.term()?;
        while let Some(Tok::Op(c @ ('+' | '-'))) = self.peek().cloned() {
            self.pos += 1;
            let t = self.term()?;
            acc = if c == '+' { acc.add(&t) } else { acc.sub(&t) };
        }
        Ok(acc)
    }

    fn term(&mut self) -> Result<MultiPoly> {
        let mut acc = self.unary()?;
        while let Some(Tok::Op('*')) = self.peek() {
            self.pos += 1;
            let t = self.unary()?;
            acc = acc.mul(&t);
        }
        Ok(acc)
    }

    fn unary(&mut self) -> Result<MultiPoly> {
        match self.peek() {
            Some(Tok::Op('-')) => {
                self.pos += 1;
                Ok(self.unary()?.neg())
            }
            Some(Tok::Op('+')) => {
                self.pos += 1;
                self.unary()
            }
            _ => self.power(),
        }
    }

    fn power(&mut self) -> Result<MultiPoly> {
        let base = self.atom()?;
        if let Some(Tok::Op('^')) = self.peek() {
            self.pos += 1;
            match self.peek().cloned() {
                Some(Tok::Num(n)) => {
                    self.pos += 1;
                    let e: u32 = n.parse().map_err(|_| self.err("exponent too large"))?;
                    Ok(base.pow(e))
                }
                _ => Err(self.err("expected a nonnegative integer exponent")),
            }
        } else {
            Ok(base)
        }
    }

    fn atom(&mut self) -> Result<MultiPoly> {
        match self.peek().cloned() {
            Some(Tok::Num(n)) => {
                self.pos += 1;
                // a literal may be written n/d
                let lit = if let (Some(Tok::Op('/')), Some(Tok::Num(d))) =
                    (self.toks.get(self.pos).cloned(), self.toks.get(self.pos + 1).cloned())
                {
                    self.pos += 2;
                    format!("{n}/{d}")
                } else {
                    n
                };
                Ok(MultiPoly::constant(self.vars, Scalar::parse_rational(&lit)?))
            }
            Some(Tok::Ident(name)) => {
                self.pos += 1;
                MultiPoly::var(self.vars, &name, Field::Rational)
            }
            Some(Tok::Op('(')) => {
                self.pos += 1;
                let e = self.expr()?;
                match self.peek() {
                    Some(Tok::Op(')')) => {
                        self.pos += 1;
                        Ok(e)
                    }
                    _ => Err(self.err("missing `)`")),
                }
            }
            _ => Err(self.err("unexpected end of expression or operator")),
        }
    }
}

/// Parses an expression into a rational polynomial over `vars`.
pub fn parse_poly(src: &str, vars: &[String]) -> Result<MultiPoly> {
    let toks = lex(src)?;
    let mut p = Parser { toks, pos: 0, vars, src };
    let e = p.expr()?;
    if p.pos != p.toks.len() {
        return Err(p.err("trailing input"));
    }
    Ok(e)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::int;

    #[test]
    fn parses_grammar() {
        let vs = MultiPoly::names(&["u0", "u1", "u2"]);
        let p = parse_poly("u1^2 - u0*u2 + 3/2*(u0 + u1)^2", &vs).unwrap();
        let v = p.eval(&[int(1), int(2), int(3)]).unwrap();
        // 4 - 3 + 3/2 * 9
        assert_eq!(v, &int(1) + &(&int(27) * &crate::algebra::rat(1, 2)));
        assert!(parse_poly("u0 +", &vs).is_err());
        assert!(parse_poly("x", &vs).is_err());
        assert!(parse_poly("u0^u1", &vs).is_err());
        assert!(parse_poly("(u0", &vs).is_err());
    }
}
