//! Textual ring descriptions.
//!
//! ```text
//! spec := Z/<n>
//!       | GF(<p>)[x]/(<poly>)
//!       | prod(<spec>,<spec>[,<spec>...])
//!       | quot(<spec>;<elem>[,<elem>...])
//! ```
//!
//! Polynomials are written `c_k*x^k+...+c_0`, the `*` being optional.
//! Elements are decimal integers, polynomials, or tuples `(a,b,...)` for
//! product rings. Whitespace is insignificant everywhere.

use std::fmt;

use crate::error::{Error, Result};

/// A structured ring description, ready for [`build_ring`](super::build_ring).
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum RingSpec {
    /// `Z/n` with `n >= 2`.
    Modular(u64),
    /// `GF(p)[x]/(f)` with `p` prime and `f` monic of degree at least 1,
    /// stored little-endian with coefficients in `[0, p)`.
    Polynomial {
        p: u64,
        modulus: Vec<u64>,
    },
    Product(Vec<RingSpec>),
    Quotient {
        base: Box<RingSpec>,
        generators: Vec<ElemLiteral>,
    },
}

impl RingSpec {
    pub fn modular(n: u64) -> Result<Self> {
        if n < 2 {
            return Err(Error::ModulusOutOfRange(format!("Z/{n} needs n >= 2")));
        }
        Ok(RingSpec::Modular(n))
    }

    /// Builds a polynomial-quotient spec, reducing `modulus` coefficients
    /// mod `p` and checking primality and monicity.
    pub fn polynomial(p: u64, modulus: &[i64]) -> Result<Self> {
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        let mut reduced: Vec<u64> = modulus
            .iter()
            .map(|&c| c.rem_euclid(p as i64) as u64)
            .collect();
        while reduced.last() == Some(&0) {
            reduced.pop();
        }
        let shown = ElemLiteral::poly(modulus.to_vec()).to_string();
        match reduced.last() {
            None => Err(Error::ModulusOutOfRange(format!(
                "modulus {shown} vanishes in GF({p})"
            ))),
            Some(&lead) if lead != 1 => Err(Error::NotMonic(shown)),
            Some(_) if reduced.len() < 2 => Err(Error::ModulusOutOfRange(format!(
                "modulus {shown} must have degree at least 1"
            ))),
            Some(_) => Ok(RingSpec::Polynomial {
                p,
                modulus: reduced,
            }),
        }
    }

    /// Carrier size when it is determined by the spec alone. Quotients by
    /// ideals depend on the ideal and report `None`.
    pub fn declared_size(&self) -> Option<u128> {
        match self {
            RingSpec::Modular(n) => Some(*n as u128),
            RingSpec::Polynomial { p, modulus } => {
                let mut size: u128 = 1;
                for _ in 1..modulus.len() {
                    size = size.checked_mul(*p as u128)?;
                }
                Some(size)
            }
            RingSpec::Product(factors) => factors
                .iter()
                .try_fold(1u128, |acc, f| acc.checked_mul(f.declared_size()?)),
            RingSpec::Quotient { .. } => None,
        }
    }
}

impl fmt::Display for RingSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RingSpec::Modular(n) => write!(f, "Z/{n}"),
            RingSpec::Polynomial { p, modulus } => {
                let lit = ElemLiteral::poly(modulus.iter().map(|&c| c as i64).collect());
                write!(f, "GF({p})[x]/({lit})")
            }
            RingSpec::Product(factors) => {
                write!(f, "prod(")?;
                for (i, factor) in factors.iter().enumerate() {
                    if i > 0 {
                        write!(f, ",")?;
                    }
                    write!(f, "{factor}")?;
                }
                write!(f, ")")
            }
            RingSpec::Quotient { base, generators } => {
                write!(f, "quot({base};")?;
                if generators.is_empty() {
                    write!(f, "0")?;
                }
                for (i, g) in generators.iter().enumerate() {
                    if i > 0 {
                        write!(f, ",")?;
                    }
                    write!(f, "{g}")?;
                }
                write!(f, ")")
            }
        }
    }
}

impl std::str::FromStr for RingSpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        parse_ring_spec(s)
    }
}

/// An element written in ring-spec syntax, not yet bound to a ring.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum ElemLiteral {
    Int(i64),
    /// Little-endian integer coefficients; always mentions `x`.
    Poly(Vec<i64>),
    Tuple(Vec<ElemLiteral>),
}

impl ElemLiteral {
    /// Normalizing constructor: constant polynomials become [`ElemLiteral::Int`].
    pub fn poly(mut coeffs: Vec<i64>) -> Self {
        while coeffs.last() == Some(&0) {
            coeffs.pop();
        }
        match coeffs.len() {
            0 => ElemLiteral::Int(0),
            1 => ElemLiteral::Int(coeffs[0]),
            _ => ElemLiteral::Poly(coeffs),
        }
    }

    /// Little-endian coefficients of an integer or polynomial literal.
    pub fn coefficients(&self) -> Option<Vec<i64>> {
        match self {
            ElemLiteral::Int(c) => Some(vec![*c]),
            ElemLiteral::Poly(cs) => Some(cs.clone()),
            ElemLiteral::Tuple(_) => None,
        }
    }
}

impl fmt::Display for ElemLiteral {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ElemLiteral::Int(c) => write!(f, "{c}"),
            ElemLiteral::Poly(coeffs) => {
                let mut first = true;
                for (exp, &c) in coeffs.iter().enumerate().rev() {
                    if c == 0 {
                        continue;
                    }
                    if c < 0 {
                        write!(f, "-")?;
                    } else if !first {
                        write!(f, "+")?;
                    }
                    first = false;
                    let mag = c.unsigned_abs();
                    match (exp, mag) {
                        (0, _) => write!(f, "{mag}")?,
                        (_, 1) => {}
                        _ => write!(f, "{mag}")?,
                    }
                    match exp {
                        0 => {}
                        1 => write!(f, "x")?,
                        _ => write!(f, "x^{exp}")?,
                    }
                }
                if first {
                    write!(f, "0")?;
                }
                Ok(())
            }
            ElemLiteral::Tuple(items) => {
                write!(f, "(")?;
                for (i, item) in items.iter().enumerate() {
                    if i > 0 {
                        write!(f, ",")?;
                    }
                    write!(f, "{item}")?;
                }
                write!(f, ")")
            }
        }
    }
}

impl std::str::FromStr for ElemLiteral {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        parse_elem_literal(s)
    }
}

pub fn parse_ring_spec(text: &str) -> Result<RingSpec> {
    let mut cur = Cursor::new(text);
    let spec = cur.spec()?;
    cur.finish()?;
    Ok(spec)
}

pub fn parse_elem_literal(text: &str) -> Result<ElemLiteral> {
    let mut cur = Cursor::new(text);
    let lit = cur.elem()?;
    cur.finish()?;
    Ok(lit)
}

/// Parses a comma-separated, possibly empty, list of element literals.
pub fn parse_elem_list(text: &str) -> Result<Vec<ElemLiteral>> {
    let mut cur = Cursor::new(text);
    let mut out = Vec::new();
    if cur.at_end() {
        return Ok(out);
    }
    out.push(cur.elem()?);
    while cur.eat(',') {
        out.push(cur.elem()?);
    }
    cur.finish()?;
    Ok(out)
}

pub(crate) fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= p {
        if p.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

struct Cursor<'a> {
    src: &'a [u8],
    pos: usize,
}

impl<'a> Cursor<'a> {
    fn new(text: &'a str) -> Self {
        Cursor {
            src: text.as_bytes(),
            pos: 0,
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

    fn at_end(&mut self) -> bool {
        self.peek().is_none()
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(c as u8) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expect(&mut self, c: char) -> Result<()> {
        if self.eat(c) {
            Ok(())
        } else {
            Err(self.unexpected(&format!("`{c}`")))
        }
    }

    fn keyword(&mut self, word: &str) -> bool {
        self.skip_ws();
        if self.src[self.pos..].starts_with(word.as_bytes()) {
            self.pos += word.len();
            true
        } else {
            false
        }
    }

    fn unexpected(&mut self, wanted: &str) -> Error {
        let pos = {
            self.skip_ws();
            self.pos
        };
        match self.src.get(pos) {
            Some(&b) => Error::syntax(pos, format!("expected {wanted}, found `{}`", b as char)),
            None => Error::syntax(pos, format!("expected {wanted}, found end of input")),
        }
    }

    fn finish(&mut self) -> Result<()> {
        if self.at_end() {
            Ok(())
        } else {
            Err(self.unexpected("end of input"))
        }
    }

    fn number(&mut self) -> Result<u64> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.unexpected("a number"));
        }
        std::str::from_utf8(&self.src[start..self.pos])
            .ok()
            .and_then(|s| s.parse().ok())
            .ok_or_else(|| Error::syntax(start, "number too large"))
    }

    fn spec(&mut self) -> Result<RingSpec> {
        self.skip_ws();
        let start = self.pos;
        if self.keyword("prod") {
            self.expect('(')?;
            let mut factors = vec![self.spec()?];
            while self.eat(',') {
                factors.push(self.spec()?);
            }
            self.expect(')')?;
            if factors.len() < 2 {
                return Err(Error::syntax(start, "prod needs at least two factors"));
            }
            Ok(RingSpec::Product(factors))
        } else if self.keyword("quot") {
            self.expect('(')?;
            let base = self.spec()?;
            self.expect(';')?;
            let mut generators = vec![self.elem()?];
            while self.eat(',') {
                generators.push(self.elem()?);
            }
            self.expect(')')?;
            Ok(RingSpec::Quotient {
                base: Box::new(base),
                generators,
            })
        } else if self.keyword("GF") {
            self.expect('(')?;
            let p = self.number()?;
            self.expect(')')?;
            self.expect('[')?;
            self.expect('x')?;
            self.expect(']')?;
            self.expect('/')?;
            self.expect('(')?;
            let poly_at = self.pos;
            let modulus = match self.poly()? {
                ElemLiteral::Int(c) => vec![c],
                ElemLiteral::Poly(cs) => cs,
                ElemLiteral::Tuple(_) => unreachable!(),
            };
            self.expect(')')?;
            RingSpec::polynomial(p, &modulus).map_err(|e| match e {
                Error::ModulusOutOfRange(msg) => Error::syntax(poly_at, msg),
                other => other,
            })
        } else if self.keyword("Z") {
            self.expect('/')?;
            let at = self.pos;
            let n = self.number()?;
            RingSpec::modular(n).map_err(|e| match e {
                Error::ModulusOutOfRange(msg) => Error::syntax(at, msg),
                other => other,
            })
        } else {
            Err(self.unexpected("`Z/`, `GF(`, `prod(` or `quot(`"))
        }
    }

    fn elem(&mut self) -> Result<ElemLiteral> {
        if self.eat('(') {
            let mut items = vec![self.elem()?];
            while self.eat(',') {
                items.push(self.elem()?);
            }
            self.expect(')')?;
            Ok(ElemLiteral::Tuple(items))
        } else {
            self.poly()
        }
    }

    fn poly(&mut self) -> Result<ElemLiteral> {
        let mut coeffs: Vec<i64> = Vec::new();
        let mut sign = if self.eat('-') {
            -1
        } else {
            self.eat('+');
            1
        };
        loop {
            let (c, exp) = self.term()?;
            let exp = exp as usize;
            if coeffs.len() <= exp {
                coeffs.resize(exp + 1, 0);
            }
            let at = self.pos;
            coeffs[exp] = c
                .checked_mul(sign)
                .and_then(|v| coeffs[exp].checked_add(v))
                .ok_or_else(|| Error::syntax(at, "coefficient overflow"))?;
            if self.eat('+') {
                sign = 1;
            } else if self.eat('-') {
                sign = -1;
            } else {
                break;
            }
        }
        Ok(ElemLiteral::poly(coeffs))
    }

    /// One monomial `c`, `c*x^k`, `cx`, `x^k`, ...; returns (coefficient, exponent).
    fn term(&mut self) -> Result<(i64, u32)> {
        let coeff = match self.peek() {
            Some(b) if b.is_ascii_digit() => {
                let at = self.pos;
                let c = self.number()?;
                let c = i64::try_from(c).map_err(|_| Error::syntax(at, "number too large"))?;
                if !self.eat('*') && self.peek() != Some(b'x') {
                    return Ok((c, 0));
                }
                c
            }
            _ => 1,
        };
        self.expect('x')?;
        if self.eat('^') {
            let at = self.pos;
            let exp = self.number()?;
            let exp = u32::try_from(exp)
                .ok()
                .filter(|&e| e <= 64)
                .ok_or_else(|| Error::syntax(at, "exponent too large"))?;
            Ok((coeff, exp))
        } else {
            Ok((coeff, 1))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn grammar_cases() {
        assert_eq!(parse_ring_spec("Z/12").unwrap(), RingSpec::Modular(12));
        assert_eq!(
            parse_ring_spec("GF(2)[x]/(x^2+x+1)").unwrap(),
            RingSpec::Polynomial {
                p: 2,
                modulus: vec![1, 1, 1]
            }
        );
        assert_eq!(
            parse_ring_spec("prod(Z/2,Z/3)").unwrap(),
            RingSpec::Product(vec![RingSpec::Modular(2), RingSpec::Modular(3)])
        );
        let q = parse_ring_spec(" quot( Z/12 ; 4 , 6 ) ").unwrap();
        assert_eq!(
            q,
            RingSpec::Quotient {
                base: Box::new(RingSpec::Modular(12)),
                generators: vec![ElemLiteral::Int(4), ElemLiteral::Int(6)],
            }
        );
    }

    #[test]
    fn whitespace_and_optional_star() {
        let a = parse_ring_spec("GF( 3 ) [ x ] / ( 1*x^3 + 2 * x + 1 )").unwrap();
        let b = parse_ring_spec("GF(3)[x]/(x^3+2x+1)").unwrap();
        assert_eq!(a, b);
        assert_eq!(a.to_string(), "GF(3)[x]/(x^3+2x+1)");
    }

    #[test]
    fn display_round_trips() {
        for text in [
            "Z/12",
            "GF(2)[x]/(x^2)",
            "prod(Z/4,GF(2)[x]/(x^2+x+1),Z/3)",
            "quot(prod(Z/2,Z/3);(1,0))",
            "quot(GF(3)[x]/(x^3);x^2+2x)",
        ] {
            assert_eq!(parse_ring_spec(text).unwrap().to_string(), text);
        }
    }

    #[test]
    fn syntax_error_reports_position() {
        match parse_ring_spec("prod(Z/2,Q/3)") {
            Err(Error::Syntax { pos, .. }) => assert_eq!(pos, 9),
            other => panic!("unexpected {other:?}"),
        }
        assert!(matches!(
            parse_ring_spec("Z/12)"),
            Err(Error::Syntax { pos: 4, .. })
        ));
        assert!(matches!(
            parse_ring_spec("prod(Z/2)"),
            Err(Error::Syntax { .. })
        ));
        assert!(matches!(parse_ring_spec("Z/1"), Err(Error::Syntax { .. })));
    }

    #[test]
    fn rejects_non_prime_and_non_monic() {
        assert_eq!(parse_ring_spec("GF(4)[x]/(x^2+1)"), Err(Error::NotPrime(4)));
        assert!(matches!(
            parse_ring_spec("GF(3)[x]/(2x^2+1)"),
            Err(Error::NotMonic(_))
        ));
        // 3x^2 vanishes mod 3, leaving the monic x + 1.
        assert!(parse_ring_spec("GF(3)[x]/(3x^2+x+1)").is_ok());
        assert!(matches!(
            parse_ring_spec("GF(2)[x]/(1)"),
            Err(Error::Syntax { .. })
        ));
    }

    #[test]
    fn element_literals() {
        assert_eq!(parse_elem_literal("7").unwrap(), ElemLiteral::Int(7));
        assert_eq!(parse_elem_literal("-3").unwrap(), ElemLiteral::Int(-3));
        assert_eq!(
            parse_elem_literal("1 + x").unwrap(),
            ElemLiteral::Poly(vec![1, 1])
        );
        assert_eq!(
            parse_elem_literal("x^2-x").unwrap(),
            ElemLiteral::Poly(vec![0, -1, 1])
        );
        assert_eq!(
            parse_elem_literal("(1,(0,2))").unwrap(),
            ElemLiteral::Tuple(vec![
                ElemLiteral::Int(1),
                ElemLiteral::Tuple(vec![ElemLiteral::Int(0), ElemLiteral::Int(2)])
            ])
        );
        assert_eq!(parse_elem_list("").unwrap(), vec![]);
        assert_eq!(parse_elem_list("4, 6").unwrap().len(), 2);
        assert_eq!(ElemLiteral::Poly(vec![1, 0, 2]).to_string(), "2x^2+1");
        assert_eq!(ElemLiteral::Poly(vec![0, -1, 1]).to_string(), "x^2-x");
    }

    #[test]
    fn declared_sizes() {
        assert_eq!(parse_ring_spec("Z/12").unwrap().declared_size(), Some(12));
        assert_eq!(
            parse_ring_spec("prod(Z/4,GF(3)[x]/(x^2))")
                .unwrap()
                .declared_size(),
            Some(36)
        );
        assert_eq!(
            parse_ring_spec("quot(Z/4;2)").unwrap().declared_size(),
            None
        );
    }
}
