//! The two infinite rings used as sources of surjections: the integers and
//! univariate polynomials over a prime field. Neither is enumerable, but both
//! have a finite, explicitly known unit group, and every quotient by a
//! nonzero modulus is a finite ring.

use std::fmt;

use super::finite::{build_ring_with, Elem, Limits, RingRef};
use super::spec::{is_prime, parse_elem_literal, ElemLiteral, RingSpec};
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PresentedRing {
    Integers,
    /// `GF(p)[x]`.
    Polynomials {
        p: u64,
    },
}

/// An element of a presented ring. Polynomials are little-endian with
/// coefficients in `[0, p)` and no trailing zeros.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum PresentedElem {
    Int(i64),
    Poly(Vec<u64>),
}

impl fmt::Display for PresentedRing {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PresentedRing::Integers => write!(f, "Z"),
            PresentedRing::Polynomials { p } => write!(f, "GF({p})[x]"),
        }
    }
}

impl fmt::Display for PresentedElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PresentedElem::Int(k) => write!(f, "{k}"),
            PresentedElem::Poly(cs) => {
                let lit = ElemLiteral::poly(cs.iter().map(|&c| c as i64).collect());
                write!(f, "{lit}")
            }
        }
    }
}

/// The finite ring `P/(modulus)` together with the reduction map out of `P`.
#[derive(Clone, Debug)]
pub struct PresentedQuotient {
    source: PresentedRing,
    modulus: PresentedElem,
    ring: RingRef,
}

impl PresentedRing {
    pub fn polynomials(p: u64) -> Result<Self> {
        if is_prime(p) {
            Ok(PresentedRing::Polynomials { p })
        } else {
            Err(Error::NotPrime(p))
        }
    }

    /// Parses `Z` or `GF(p)[x]`.
    pub fn parse(text: &str) -> Result<Self> {
        let compact: String = text.chars().filter(|c| !c.is_whitespace()).collect();
        if compact == "Z" {
            return Ok(PresentedRing::Integers);
        }
        let p = compact
            .strip_prefix("GF(")
            .and_then(|rest| rest.strip_suffix(")[x]"))
            .ok_or_else(|| {
                Error::syntax(0, format!("expected `Z` or `GF(p)[x]`, found `{text}`"))
            })?;
        let p = p
            .parse::<u64>()
            .map_err(|_| Error::syntax(3, format!("bad characteristic `{p}`")))?;
        PresentedRing::polynomials(p)
    }

    /// The complete unit group: `{1, -1}` for the integers, the nonzero
    /// constants for polynomials over a field.
    pub fn unit_list(&self) -> Vec<PresentedElem> {
        match self {
            PresentedRing::Integers => vec![PresentedElem::Int(1), PresentedElem::Int(-1)],
            PresentedRing::Polynomials { p } => {
                (1..*p).map(|c| PresentedElem::Poly(vec![c])).collect()
            }
        }
    }

    pub fn is_zero(&self, e: &PresentedElem) -> bool {
        match e {
            PresentedElem::Int(k) => *k == 0,
            PresentedElem::Poly(cs) => cs.is_empty(),
        }
    }

    pub fn is_unit(&self, e: &PresentedElem) -> bool {
        self.unit_list().contains(e)
    }

    pub fn elem_from_literal(&self, lit: &ElemLiteral) -> Result<PresentedElem> {
        match (self, lit) {
            (PresentedRing::Integers, ElemLiteral::Int(k)) => Ok(PresentedElem::Int(*k)),
            (PresentedRing::Polynomials { p }, ElemLiteral::Int(_) | ElemLiteral::Poly(_)) => {
                let mut cs: Vec<u64> = lit
                    .coefficients()
                    .unwrap()
                    .into_iter()
                    .map(|c| c.rem_euclid(*p as i64) as u64)
                    .collect();
                super::poly::trim(&mut cs);
                Ok(PresentedElem::Poly(cs))
            }
            _ => Err(Error::BadElement {
                text: lit.to_string(),
                ring: self.to_string(),
                reason: "wrong element shape".into(),
            }),
        }
    }

    pub fn parse_elem(&self, text: &str) -> Result<PresentedElem> {
        self.elem_from_literal(&parse_elem_literal(text)?)
    }

    /// Builds `P/(modulus)`: `Z/n` for `n >= 2`, or `GF(p)[x]/(f)` for a
    /// monic `f` of degree at least 1.
    pub fn quotient(&self, modulus: &PresentedElem, limits: Limits) -> Result<PresentedQuotient> {
        let spec = match (self, modulus) {
            (PresentedRing::Integers, PresentedElem::Int(n)) => {
                if *n < 2 {
                    return Err(Error::ModulusOutOfRange(format!(
                        "integer modulus {n} must be at least 2"
                    )));
                }
                RingSpec::Modular(*n as u64)
            }
            (PresentedRing::Polynomials { p }, PresentedElem::Poly(cs)) => {
                RingSpec::polynomial(*p, &cs.iter().map(|&c| c as i64).collect::<Vec<_>>())?
            }
            _ => {
                return Err(Error::ModulusOutOfRange(format!(
                    "{modulus} is not a modulus for {self}"
                )))
            }
        };
        Ok(PresentedQuotient {
            source: *self,
            modulus: modulus.clone(),
            ring: build_ring_with(&spec, limits)?,
        })
    }
}

impl PresentedQuotient {
    pub fn ring(&self) -> &RingRef {
        &self.ring
    }

    pub fn source(&self) -> PresentedRing {
        self.source
    }

    pub fn modulus(&self) -> &PresentedElem {
        &self.modulus
    }

    /// The reduction map `P ->> P/(modulus)`.
    pub fn map(&self, e: &PresentedElem) -> Elem {
        match e {
            PresentedElem::Int(k) => self.ring.from_int(*k),
            PresentedElem::Poly(cs) => self
                .ring
                .elem_from_literal(&ElemLiteral::poly(cs.iter().map(|&c| c as i64).collect()))
                .expect("polynomial over the same field"),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn unit_lists() {
        assert_eq!(
            PresentedRing::Integers.unit_list(),
            vec![PresentedElem::Int(1), PresentedElem::Int(-1)]
        );
        let gf3 = PresentedRing::parse("GF(3)[x]").unwrap();
        assert_eq!(
            gf3.unit_list(),
            vec![PresentedElem::Poly(vec![1]), PresentedElem::Poly(vec![2])]
        );
        assert!(PresentedRing::parse("GF(6)[x]").is_err());
        assert!(PresentedRing::parse("Q").is_err());
    }

    #[test]
    fn quotient_maps() {
        let q = PresentedRing::Integers
            .quotient(&PresentedElem::Int(5), Limits::default())
            .unwrap();
        assert_eq!(q.map(&PresentedElem::Int(-1)).index(), 4);
        assert_eq!(q.map(&PresentedElem::Int(12)).index(), 2);

        let k = PresentedRing::polynomials(2).unwrap();
        let f = k.parse_elem("x^2").unwrap();
        let q = k.quotient(&f, Limits::default()).unwrap();
        assert_eq!(q.ring().size(), 4);
        let one_plus_x = k.parse_elem("1+x").unwrap();
        assert_eq!(q.ring().render(q.map(&one_plus_x)), "x+1");
        assert_eq!(q.map(&k.parse_elem("x^3+1").unwrap()), q.ring().one());
    }

    #[test]
    fn modulus_range() {
        let z = PresentedRing::Integers;
        assert!(z
            .quotient(&PresentedElem::Int(1), Limits::default())
            .is_err());
        let k = PresentedRing::polynomials(3).unwrap();
        let two = k.parse_elem("2").unwrap();
        assert!(k.quotient(&two, Limits::default()).is_err());
        let nonmonic = k.parse_elem("2x+1").unwrap();
        assert!(matches!(
            k.quotient(&nonmonic, Limits::default()),
            Err(Error::NotMonic(_))
        ));
    }
}
