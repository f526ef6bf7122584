//! Property (*): a surjection `p: R ->> R/I` has (*) when every unit of
//! `R/I` is the image of a unit of `R`.
//!
//! Four equivalent formulations are implemented independently and compared
//! on every call:
//!
//! 1. direct: `p(R^x) = (R/I)^x`;
//! 2. saturated sum: `R^x + I` is saturated;
//! 3. saturation equality: `R^x + I = (1 + I)~`;
//! 4. witness: whenever `1 - ab` lies in `I` for some `b`, there is a unit
//!    `u` with `1 - au` in `I`.
//!
//! Here `W~ = {r : s*r in W for some s}` is the saturation of `W`.

use std::sync::Arc;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::ring::{
    enumerate_ideals, quotient_ring, Elem, ElemSet, FiniteRing, Ideal, Limits, PresentedElem,
    PresentedRing, RingRef, SurjectiveHom,
};
use crate::spectrum::{crt_solve, jacobson_radical, maximal_ideals, CongruenceSystem};

/// `W~ = {r : s*r in W for some s}`.
pub fn saturate(ring: &FiniteRing, w: &ElemSet) -> ElemSet {
    if w.is_empty() {
        return ElemSet::empty(ring.size());
    }
    let orbits = ring.unit_orbits();
    let hit: Vec<bool> = orbits
        .reps()
        .iter()
        .map(|&r| ring.elements().any(|s| w.contains(ring.mul(s, r))))
        .collect();
    ElemSet::from_predicate(ring.size(), |r| hit[orbits.orbit_of(r)])
}

/// Saturation by scanning every pair; the orbit-free reference for
/// [`saturate`].
pub fn saturate_by_scan(ring: &FiniteRing, w: &ElemSet) -> ElemSet {
    ElemSet::from_predicate(ring.size(), |r| {
        ring.elements().any(|s| w.contains(ring.mul(s, r)))
    })
}

/// `R^x + I`.
pub fn units_plus(ideal: &Ideal) -> ElemSet {
    let ring = ideal.ring();
    let mut out = ElemSet::empty(ring.size());
    for u in ring.units().iter() {
        for i in ideal.elements() {
            out.insert(ring.add(u, i));
        }
    }
    out
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "camelCase")]
pub enum StarMethod {
    Direct,
    SaturatedSum,
    SaturationEquality,
    Witness,
}

impl StarMethod {
    pub const ALL: [StarMethod; 4] = [
        StarMethod::Direct,
        StarMethod::SaturatedSum,
        StarMethod::SaturationEquality,
        StarMethod::Witness,
    ];

    pub fn name(self) -> &'static str {
        match self {
            StarMethod::Direct => "direct",
            StarMethod::SaturatedSum => "saturatedSum",
            StarMethod::SaturationEquality => "satEquality",
            StarMethod::Witness => "witness",
        }
    }
}

/// One method's answer. On failure `witness` names the offending element,
/// rendered in `R/I` for the direct method and in `R` otherwise.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MethodVerdict {
    pub method: StarMethod,
    pub holds: bool,
    pub witness: Option<String>,
}

fn verdict(method: StarMethod, witness: Option<String>) -> MethodVerdict {
    MethodVerdict {
        method,
        holds: witness.is_none(),
        witness,
    }
}

fn ensure_proper(ideal: &Ideal) -> Result<()> {
    if ideal.is_whole() {
        Err(Error::ImproperIdeal)
    } else {
        Ok(())
    }
}

/// Direct check against an existing surjection: the first unit of the
/// target with no unit preimage, if any.
pub fn unlifted_unit(p: &SurjectiveHom) -> Option<Elem> {
    p.target().units().difference(&p.unit_image()).first()
}

pub fn star_check(ideal: &Ideal, method: StarMethod) -> Result<MethodVerdict> {
    ensure_proper(ideal)?;
    let ring = ideal.ring();
    let witness = match method {
        StarMethod::Direct => {
            let (quotient, p) = quotient_ring(ring, ideal)?;
            unlifted_unit(&p).map(|v| quotient.render(v))
        }
        StarMethod::SaturatedSum => {
            let w = units_plus(ideal);
            saturate(ring, &w)
                .difference(&w)
                .first()
                .map(|a| ring.render(a))
        }
        StarMethod::SaturationEquality => {
            let w = units_plus(ideal);
            let sat = saturate(ring, &ideal.shifted_by_one());
            let diff = sat.difference(&w).union(&w.difference(&sat));
            diff.first().map(|a| ring.render(a))
        }
        StarMethod::Witness => {
            let in_ideal = |a: Elem, b: Elem| ideal.contains(ring.one_minus_product(a, b));
            ring.unit_orbits()
                .reps()
                .iter()
                .copied()
                .find(|&a| {
                    ring.elements().any(|b| in_ideal(a, b))
                        && !ring.units().iter().any(|u| in_ideal(a, u))
                })
                .map(|a| ring.render(a))
        }
    };
    Ok(verdict(method, witness))
}

/// All four verdicts for one ideal.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct StarReport {
    pub ring: String,
    pub ideal: String,
    pub holds: bool,
    pub verdicts: Vec<MethodVerdict>,
}

impl StarReport {
    pub fn verdict(&self, method: StarMethod) -> &MethodVerdict {
        self.verdicts
            .iter()
            .find(|v| v.method == method)
            .expect("every method is reported")
    }
}

/// Runs every method and fails with a defect if they disagree.
pub fn star_report(ideal: &Ideal) -> Result<StarReport> {
    let verdicts = StarMethod::ALL
        .iter()
        .map(|&m| star_check(ideal, m))
        .collect::<Result<Vec<_>>>()?;
    let holds = verdicts[0].holds;
    if verdicts.iter().any(|v| v.holds != holds) {
        return Err(Error::defect(format!(
            "(*) characterizations disagree for {} in {}: {:?}",
            ideal.render(),
            ideal.ring().spec(),
            verdicts
        )));
    }
    Ok(StarReport {
        ring: ideal.ring().spec().to_string(),
        ideal: ideal.render(),
        holds,
        verdicts,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct IdealVerdict {
    pub ideal: String,
    pub holds: bool,
    pub witness: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RingStarReport {
    pub ring: String,
    pub holds: bool,
    pub per_ideal: Vec<IdealVerdict>,
}

/// The direct check over every proper ideal, in enumeration order.
pub fn ring_has_star(ring: &RingRef) -> Result<RingStarReport> {
    let mut per_ideal = Vec::new();
    for ideal in enumerate_ideals(ring)? {
        if ideal.is_whole() {
            continue;
        }
        let v = star_check(&ideal, StarMethod::Direct)?;
        per_ideal.push(IdealVerdict {
            ideal: ideal.render(),
            holds: v.holds,
            witness: v.witness,
        });
    }
    Ok(RingStarReport {
        ring: ring.spec().to_string(),
        holds: per_ideal.iter().all(|v| v.holds),
        per_ideal,
    })
}

/// Lifts the unit `v` of the target to a unit of the source: with `r` any
/// preimage, add the solution `a` of `a = 0 (mod ker p)` and
/// `a = 1 - r (mod m)` for every maximal `m` not containing the kernel.
pub fn crt_unit_lift(p: &SurjectiveHom, v: Elem) -> Result<Elem> {
    if !p.target().is_unit(v) {
        return Err(Error::Precondition(format!(
            "{} is not a unit of {}",
            p.target().render(v),
            p.target().spec()
        )));
    }
    let ring = p.source();
    let kernel = p.kernel();
    let r = p.min_preimage(v);
    let mut sys = CongruenceSystem::new().with(kernel.clone(), ring.zero());
    for m in maximal_ideals(ring)?.iter() {
        if !kernel.is_subset(m) {
            sys.push(m.clone(), ring.sub(ring.one(), r));
        }
    }
    let a = crt_solve(ring, &sys)?;
    let lift = ring.add(r, a);
    if !ring.is_unit(lift) || p.apply(lift) != v {
        return Err(Error::defect(format!(
            "CRT lift {} of {} is not a unit preimage",
            ring.render(lift),
            p.target().render(v)
        )));
    }
    Ok(lift)
}

fn field_factors(ring: &RingRef) -> Result<Vec<RingRef>> {
    let factors = match ring.factors() {
        Some(f) => f.to_vec(),
        None => vec![Arc::clone(ring)],
    };
    if factors.iter().any(|f| !f.is_field()) {
        return Err(Error::Precondition(format!(
            "{} is not a product of fields",
            ring.spec()
        )));
    }
    Ok(factors)
}

/// In a product of fields, `a + e_J(1 - ab)` is a unit congruent to `a`
/// modulo `I` whenever `1 - ab` lies in `I`, where `e_J` is the indicator of
/// the coordinates at which `a` vanishes.
pub fn product_fields_adjust(ideal: &Ideal, a: Elem, b: Elem) -> Result<Elem> {
    let ring = ideal.ring();
    let factors = field_factors(ring)?;
    let defect = ring.one_minus_product(a, b);
    if !ideal.contains(defect) {
        return Err(Error::Precondition(format!(
            "1 - ab = {} is not in {}",
            ring.render(defect),
            ideal.render()
        )));
    }
    let indicator: Vec<Elem> = ring
        .components(a)
        .iter()
        .zip(&factors)
        .map(|(&ai, f)| if ai == f.zero() { f.one() } else { f.zero() })
        .collect();
    let e_j = ring.from_components(&indicator);
    let adjusted = ring.add(a, ring.mul(e_j, defect));
    if !ring.is_unit(adjusted) || !ideal.contains(ring.sub(adjusted, a)) {
        return Err(Error::defect(format!(
            "product-of-fields adjustment of {} gave {}",
            ring.render(a),
            ring.render(adjusted)
        )));
    }
    Ok(adjusted)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct ReductionReport {
    pub original: bool,
    pub reduced: bool,
    pub reduced_source: String,
    pub reduced_ideal: String,
}

/// Compares the direct (*) verdict for `R ->> R/I` with the one for
/// `R/rad(R) ->> R/(rad(R) + I)`.
pub fn reduce_mod_rad_equiv(ideal: &Ideal) -> Result<ReductionReport> {
    ensure_proper(ideal)?;
    let ring = ideal.ring();
    let original = star_check(ideal, StarMethod::Direct)?.holds;
    let rad = jacobson_radical(ring)?;
    let (reduced_ring, reduce) = quotient_ring(ring, &rad)?;
    let image = reduce.image_ideal(ideal);
    let reduced = if image.is_whole() {
        true
    } else {
        star_check(&image, StarMethod::Direct)?.holds
    };
    if original != reduced {
        return Err(Error::defect(format!(
            "(*) for {} in {} is {original} but {reduced} modulo the radical",
            ideal.render(),
            ring.spec()
        )));
    }
    Ok(ReductionReport {
        original,
        reduced,
        reduced_source: reduced_ring.spec().to_string(),
        reduced_ideal: image.render(),
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct PresentedStarReport {
    pub quotient: String,
    pub has_star: bool,
    /// The smallest unit of the quotient outside the image of the units.
    pub witness: Option<String>,
    pub unit_image: Vec<String>,
    pub quotient_units: Vec<String>,
}

/// Whether `P ->> P/(modulus)` is surjective on units, comparing the image
/// of `P`'s finite unit group with the units of the quotient.
pub fn presented_star_check(
    ring: &PresentedRing,
    modulus: &PresentedElem,
    limits: Limits,
) -> Result<PresentedStarReport> {
    let q = ring.quotient(modulus, limits)?;
    let target = q.ring();
    let image = ElemSet::from_elems(target.size(), ring.unit_list().iter().map(|u| q.map(u)));
    let units = target.units();
    let witness = units.difference(&image).first();
    let render_all = |s: &ElemSet| s.iter().map(|e| target.render(e)).collect();
    Ok(PresentedStarReport {
        quotient: target.spec().to_string(),
        has_star: witness.is_none(),
        witness: witness.map(|w| target.render(w)),
        unit_image: render_all(&image),
        quotient_units: render_all(units),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::{build_ring_str, ideal_closure};

    #[test]
    fn saturation_examples() {
        let r = build_ring_str("Z/12").unwrap();
        let one = ElemSet::from_elems(12, [r.one()]);
        assert_eq!(&saturate(&r, &one), r.units());
        let i = ideal_closure(&r, &[r.elem(4)]);
        let shifted = i.shifted_by_one();
        assert_eq!(r.render_set(&shifted), "{1, 5, 9}");
        assert_eq!(r.render_set(&saturate(&r, &shifted)), "{1, 3, 5, 7, 9, 11}");
        assert!(saturate(&r, &ElemSet::empty(12)).is_empty());
    }

    #[test]
    fn orbit_saturation_matches_pair_scan() {
        for text in ["Z/12", "Z/16", "GF(2)[x]/(x^3)", "prod(Z/4, Z/6)"] {
            let r = build_ring_str(text).unwrap();
            for mask in [0b1u64, 0b100, 0b1010_0000, 0b1_0001_0100] {
                let w = ElemSet::from_predicate(r.size(), |a| {
                    a.index() < 64 && mask >> a.index() & 1 == 1
                });
                assert_eq!(
                    saturate(&r, &w),
                    saturate_by_scan(&r, &w),
                    "{text} {mask:b}"
                );
            }
        }
    }

    #[test]
    fn all_methods_agree_on_small_examples() {
        let r = build_ring_str("Z/12").unwrap();
        let report = star_report(&ideal_closure(&r, &[r.elem(4)])).unwrap();
        assert!(report.holds);
        let dual = build_ring_str("GF(2)[x]/(x^4)").unwrap();
        let x2 = dual.parse_elem("x^2").unwrap();
        assert!(star_report(&ideal_closure(&dual, &[x2])).unwrap().holds);
        assert!(star_report(&Ideal::zero(&r)).unwrap().holds);
        assert_eq!(
            star_check(&Ideal::whole(&r), StarMethod::Direct).unwrap_err(),
            Error::ImproperIdeal
        );
    }

    #[test]
    fn whole_ring_checks() {
        for text in ["Z/12", "prod(Z/4,GF(2)[x]/(x^2+x+1))", "GF(3)[x]/(x^3)"] {
            let r = build_ring_str(text).unwrap();
            let report = ring_has_star(&r).unwrap();
            assert!(report.holds, "{text}");
            assert!(!report.per_ideal.is_empty());
        }
    }

    #[test]
    fn crt_lift_examples() {
        let r = build_ring_str("Z/12").unwrap();
        let (q, p) = quotient_ring(&r, &ideal_closure(&r, &[r.elem(4)])).unwrap();
        assert_eq!(crt_unit_lift(&p, q.elem(3)).unwrap(), r.elem(7));
        let id = SurjectiveHom::identity(&r);
        assert_eq!(crt_unit_lift(&id, r.elem(5)).unwrap(), r.elem(5));
        assert!(crt_unit_lift(&p, q.elem(2)).is_err());
    }

    #[test]
    fn crt_lift_every_unit_of_z60_quotients() {
        let r = build_ring_str("Z/60").unwrap();
        for ideal in enumerate_ideals(&r).unwrap() {
            if ideal.is_whole() {
                continue;
            }
            let (q, p) = quotient_ring(&r, &ideal).unwrap();
            for v in q.units().iter() {
                let lift = crt_unit_lift(&p, v).unwrap();
                assert!(r.is_unit(lift));
                assert_eq!(p.apply(lift), v);
            }
        }
    }

    #[test]
    fn product_of_fields_examples() {
        let r = build_ring_str("prod(Z/2,Z/3)").unwrap();
        let ideal = ideal_closure(&r, &[r.parse_elem("(0,1)").unwrap()]);
        let a = r.parse_elem("(1,0)").unwrap();
        assert_eq!(
            r.render(product_fields_adjust(&ideal, a, a).unwrap()),
            "(1,1)"
        );
        let u = r.parse_elem("(1,2)").unwrap();
        let v = r.inverse(u).unwrap();
        assert_eq!(product_fields_adjust(&Ideal::zero(&r), u, v).unwrap(), u);

        let r = build_ring_str("prod(Z/2,Z/2,Z/3)").unwrap();
        let ideal = ideal_closure(&r, &[r.parse_elem("(0,1,0)").unwrap()]);
        let a = r.parse_elem("(1,0,2)").unwrap();
        let adjusted = product_fields_adjust(&ideal, a, a).unwrap();
        assert_eq!(r.render(adjusted), "(1,1,2)");

        let not_fields = build_ring_str("prod(Z/4,Z/3)").unwrap();
        assert!(matches!(
            product_fields_adjust(
                &Ideal::zero(&not_fields),
                not_fields.one(),
                not_fields.one()
            ),
            Err(Error::Precondition(_))
        ));
    }

    #[test]
    fn reduction_examples() {
        let r = build_ring_str("Z/12").unwrap();
        let rep = reduce_mod_rad_equiv(&ideal_closure(&r, &[r.elem(4)])).unwrap();
        assert!(rep.original && rep.reduced);
        let d = build_ring_str("GF(2)[x]/(x^4)").unwrap();
        let x2 = d.parse_elem("x^2").unwrap();
        let rep = reduce_mod_rad_equiv(&ideal_closure(&d, &[x2])).unwrap();
        assert!(rep.original && rep.reduced);
        assert_eq!(rep.reduced_ideal, "{0}");
        let rep = reduce_mod_rad_equiv(&Ideal::zero(&r)).unwrap();
        assert!(rep.original && rep.reduced);
    }

    #[test]
    fn presented_examples() {
        let z = PresentedRing::Integers;
        let limits = Limits::default();
        let rep = presented_star_check(&z, &PresentedElem::Int(5), limits).unwrap();
        assert!(!rep.has_star);
        assert_eq!(rep.witness.as_deref(), Some("2"));
        assert_eq!(rep.unit_image, vec!["1", "4"]);
        assert!(
            presented_star_check(&z, &PresentedElem::Int(3), limits)
                .unwrap()
                .has_star
        );

        let k = PresentedRing::polynomials(2).unwrap();
        let x2 = k.parse_elem("x^2").unwrap();
        let rep = presented_star_check(&k, &x2, limits).unwrap();
        assert!(!rep.has_star);
        assert_eq!(rep.witness.as_deref(), Some("x+1"));
        let x = k.parse_elem("x").unwrap();
        assert!(presented_star_check(&k, &x, limits).unwrap().has_star);
    }

    #[test]
    fn integer_table_matches_totient() {
        // Oracle: {1, n-1} covers (Z/n)^x iff phi(n) <= 2.
        let z = PresentedRing::Integers;
        for n in 2..=50i64 {
            let phi = (1..=n).filter(|k| num_integer::gcd(*k, n) == 1).count();
            let rep = presented_star_check(&z, &PresentedElem::Int(n), Limits::default()).unwrap();
            assert_eq!(rep.has_star, phi <= 2, "n = {n}");
        }
    }
}
