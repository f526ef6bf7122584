//! Semi-inverses, the `rho` function and the semi-unit decomposition
//! `r = u*e + t`.
//!
//! `s` is a semi-inverse of `r` when `r(1 - s*r)` lies in the Jacobson
//! radical. `rho(r)` is the smallest size of a semi-inverse set for `r`; it
//! only takes the values 0 (`r` in the radical), 1 (`r` a semi-unit) and
//! infinity. On a finite ring every element has `rho` at most 1, so
//! `RhoValue::Infinity` only comes out of [`rho_presented`].
//!
//! Presented rings (`Z`, `GF(p)[x]`) are domains with zero radical. There
//! `r(1 - s*r) = 0` forces `r = 0` or `s*r = 1`, so `rho` is 0 at zero, 1 at
//! units and infinite elsewhere: a nonunit `r != 0` lies in some maximal
//! ideal and avoids infinitely many others, and no finite set of `s` can
//! satisfy all of them.

use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::ring::{
    quotient_ring, Elem, ElemSet, FiniteRing, Ideal, PresentedElem, PresentedRing, RingRef,
    SurjectiveHom,
};
use crate::spectrum::{jacobson_radical, maximal_ideals, radical_members};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum RhoValue {
    #[serde(rename = "0")]
    Zero,
    #[serde(rename = "1")]
    One,
    #[serde(rename = "infinity")]
    Infinity,
}

impl fmt::Display for RhoValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            RhoValue::Zero => "0",
            RhoValue::One => "1",
            RhoValue::Infinity => "infinity",
        })
    }
}

/// The five facts a decomposition `r = u*e + t` must satisfy.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct Certificates {
    pub u_is_unit: bool,
    pub e_idempotent_mod_rad: bool,
    pub t_in_rad: bool,
    pub recomposes: bool,
    pub inverse_is_semi_inverse: bool,
}

impl Certificates {
    pub fn all(&self) -> bool {
        self.u_is_unit
            && self.e_idempotent_mod_rad
            && self.t_in_rad
            && self.recomposes
            && self.inverse_is_semi_inverse
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SemiUnitDecomposition {
    pub r: Elem,
    pub u: Elem,
    pub e: Elem,
    pub t: Elem,
    /// The semi-inverse the construction started from.
    pub s: Elem,
    pub certificates: Certificates,
}

fn in_rad(ring: &RingRef, a: Elem) -> Result<bool> {
    Ok(radical_members(ring)?.contains(a))
}

/// Whether `r(1 - s*r)` lies in `rad(R)`.
pub fn is_semi_inverse(ring: &RingRef, r: Elem, s: Elem) -> Result<bool> {
    in_rad(ring, ring.mul(r, ring.one_minus_product(s, r)))
}

/// Whether every maximal ideal either contains `r` or contains `1 - s*r`
/// for some `s` in `set`.
pub fn is_semi_inverse_set(ring: &RingRef, r: Elem, set: &[Elem]) -> Result<bool> {
    let maximal = maximal_ideals(ring)?;
    let holds = maximal.iter().all(|m| {
        m.contains(r)
            || set
                .iter()
                .any(|&s| m.contains(ring.one_minus_product(s, r)))
    });
    Ok(holds)
}

pub fn rho(ring: &RingRef, r: Elem) -> Result<RhoValue> {
    if in_rad(ring, r)? {
        return Ok(RhoValue::Zero);
    }
    for s in ring.elements() {
        if is_semi_inverse(ring, r, s)? {
            return Ok(RhoValue::One);
        }
    }
    Err(Error::defect(format!(
        "{} has no semi-inverse in the finite ring {}",
        ring.render(r),
        ring.spec()
    )))
}

pub fn rho_presented(ring: &PresentedRing, r: &PresentedElem) -> RhoValue {
    if ring.is_zero(r) {
        RhoValue::Zero
    } else if ring.is_unit(r) {
        RhoValue::One
    } else {
        RhoValue::Infinity
    }
}

/// Replaces a finite semi-inverse set by a single semi-inverse `s` with
/// `1 - s*r = prod(1 - s_i*r)`.
pub fn collapse_semi_inverse_set(ring: &RingRef, r: Elem, set: &[Elem]) -> Result<Elem> {
    let mut distinct = set.to_vec();
    distinct.sort();
    distinct.dedup();
    if !is_semi_inverse_set(ring, r, &distinct)? {
        return Err(Error::NotSemiInverseSet(
            ring.render_set(&ElemSet::from_elems(ring.size(), distinct)),
        ));
    }
    if let [s] = distinct[..] {
        return Ok(s);
    }
    let q = distinct.iter().fold(ring.one(), |acc, &s| {
        ring.mul(acc, ring.one_minus_product(s, r))
    });
    let s = ring
        .elements()
        .find(|&s| ring.one_minus_product(s, r) == q)
        .ok_or_else(|| Error::defect("product of 1 - s_i*r is not of the form 1 - s*r"))?;
    if !is_semi_inverse_set(ring, r, &[s])? {
        return Err(Error::defect(
            "collapsed semi-inverse set is not a semi-inverse set",
        ));
    }
    Ok(s)
}

/// All semi-inverses of the semi-unit `r`, by full scan.
pub fn semi_inverses(ring: &RingRef, r: Elem) -> Result<ElemSet> {
    if rho(ring, r)? != RhoValue::One {
        return Err(Error::NotSemiUnit(ring.render(r)));
    }
    let rad = radical_members(ring)?;
    Ok(ElemSet::from_predicate(ring.size(), |s| {
        rad.contains(ring.mul(r, ring.one_minus_product(s, r)))
    }))
}

/// `rad(R) : r`, checked against `rad(R) : r^2`.
pub fn colon_into_radical(ring: &RingRef, r: Elem) -> Result<Ideal> {
    let rad = radical_members(ring)?;
    let r2 = ring.mul(r, r);
    let colon = ElemSet::from_predicate(ring.size(), |a| rad.contains(ring.mul(a, r)));
    let colon2 = ElemSet::from_predicate(ring.size(), |a| rad.contains(ring.mul(a, r2)));
    if colon != colon2 {
        return Err(Error::defect(format!(
            "rad : {0} differs from rad : {0}^2 in {1}",
            ring.render(r),
            ring.spec()
        )));
    }
    Ideal::from_members(ring, colon)
        .ok_or_else(|| Error::defect("colon into the radical is not an ideal"))
}

/// Evaluates the five decomposition facts for an arbitrary triple.
pub fn certify(ring: &RingRef, r: Elem, u: Elem, e: Elem, t: Elem) -> Result<Certificates> {
    let rad = radical_members(ring)?;
    let inverse = ring.inverse(u);
    Ok(Certificates {
        u_is_unit: inverse.is_some(),
        e_idempotent_mod_rad: rad.contains(ring.sub(e, ring.mul(e, e))),
        t_in_rad: rad.contains(t),
        recomposes: ring.add(ring.mul(u, e), t) == r,
        inverse_is_semi_inverse: match inverse {
            Some(v) => rad.contains(ring.mul(r, ring.one_minus_product(v, r))),
            None => false,
        },
    })
}

/// Builds `r = u*e + t` following the constructive proof: with `s` a
/// semi-inverse, `e` lifts the idempotent `rs` of `R/rad(R)`, `u` lifts
/// `r*e + 1 - e`, and `t` is what is left.
pub fn semi_unit_decomposition(ring: &RingRef, r: Elem) -> Result<SemiUnitDecomposition> {
    let rad = jacobson_radical(ring)?;
    let (_, reduce) = quotient_ring(ring, &rad)?;
    decompose_with(ring, &reduce, r)
}

fn decompose_with(
    ring: &RingRef,
    reduce: &SurjectiveHom,
    r: Elem,
) -> Result<SemiUnitDecomposition> {
    let s = semi_inverses(ring, r)?
        .first()
        .ok_or_else(|| Error::defect("semi-unit with an empty semi-inverse set"))?;
    let bar = reduce.target();
    let (rb, sb) = (reduce.apply(r), reduce.apply(s));
    let eb = bar.mul(rb, sb);
    if bar.mul(eb, eb) != eb {
        return Err(Error::defect("r*s is not idempotent modulo the radical"));
    }
    let ub = bar.add(bar.mul(rb, eb), bar.sub(bar.one(), eb));
    let u = reduce.min_preimage(ub);
    if !ring.is_unit(u) {
        return Err(Error::defect(format!(
            "lift {} of a unit modulo the radical is not a unit",
            ring.render(u)
        )));
    }
    let e = reduce.min_preimage(eb);
    let t = ring.sub(r, ring.mul(u, e));
    let certificates = certify(ring, r, u, e, t)?;
    if !certificates.all() {
        return Err(Error::defect(format!(
            "decomposition of {} in {} fails {:?}",
            ring.render(r),
            ring.spec(),
            certificates
        )));
    }
    Ok(SemiUnitDecomposition {
        r,
        u,
        e,
        t,
        s,
        certificates,
    })
}

/// Decomposes every semi-unit of the ring, sharing one reduction map.
pub fn decompose_all(ring: &RingRef) -> Result<Vec<SemiUnitDecomposition>> {
    let rad = jacobson_radical(ring)?;
    let (_, reduce) = quotient_ring(ring, &rad)?;
    ring.elements()
        .filter(|&r| !rad.contains(r))
        .map(|r| decompose_with(ring, &reduce, r))
        .collect()
}

/// Every `a` has some `x` with `a = a*x*a`.
pub fn is_von_neumann_regular(ring: &FiniteRing) -> bool {
    ring.elements()
        .all(|a| ring.elements().any(|x| ring.mul(ring.mul(a, x), a) == a))
}

/// Whether every element is in the radical or a semi-unit, cross-checked
/// against von Neumann regularity of `R/rad(R)`.
pub fn is_semifield(ring: &RingRef) -> Result<bool> {
    let by_rho = ring
        .elements()
        .map(|r| rho(ring, r).map(|v| v != RhoValue::Infinity))
        .collect::<Result<Vec<bool>>>()?
        .into_iter()
        .all(|b| b);
    let rad = jacobson_radical(ring)?;
    let (reduced, _) = quotient_ring(ring, &rad)?;
    let by_regularity = is_von_neumann_regular(&reduced);
    if by_rho != by_regularity {
        return Err(Error::defect(format!(
            "semi-field tests disagree on {}: rho says {by_rho}, regularity says {by_regularity}",
            ring.spec()
        )));
    }
    Ok(by_rho)
}

/// Presented rings are domains with zero radical that are not fields, so
/// they are never semi-fields.
pub fn is_semifield_presented(_ring: &PresentedRing) -> bool {
    false
}
