use std::fmt;
use std::sync::Arc;

use super::finite::{Elem, ElemSet, FiniteRing, RingRef, Structure};
use super::ideal::{ideal_closure, Ideal};
use super::spec::RingSpec;
use crate::error::{Error, Result};

/// A surjective ring homomorphism between finite rings, stored as an
/// explicit element map together with its kernel.
#[derive(Clone)]
pub struct SurjectiveHom {
    source: RingRef,
    target: RingRef,
    map: Vec<Elem>,
    /// Smallest preimage of each target element.
    min_preimage: Vec<Elem>,
    kernel: Ideal,
}

impl fmt::Debug for SurjectiveHom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "SurjectiveHom({} ->> {})",
            self.source.spec(),
            self.target.spec()
        )
    }
}

/// The canonical surjection `R ->> R/I`. Cosets are represented by their
/// smallest element and numbered in increasing order of representative.
pub fn quotient_ring(ring: &RingRef, ideal: &Ideal) -> Result<(RingRef, SurjectiveHom)> {
    assert!(
        Arc::ptr_eq(ring, ideal.ring()),
        "ideal belongs to a different ring"
    );
    let generators = if ideal.generators().is_empty() {
        vec![ring.literal(ring.zero())]
    } else {
        ideal
            .generators()
            .iter()
            .map(|&g| ring.literal(g))
            .collect()
    };
    let spec = RingSpec::Quotient {
        base: Box::new(ring.spec().clone()),
        generators,
    };
    quotient_ring_with_spec(ideal, spec)
}

pub(crate) fn quotient_ring_with_spec(
    ideal: &Ideal,
    spec: RingSpec,
) -> Result<(RingRef, SurjectiveHom)> {
    if ideal.is_whole() {
        return Err(Error::ImproperIdeal);
    }
    let parent = Arc::clone(ideal.ring());
    let mut coset_of = vec![u32::MAX; parent.size()];
    let mut reps = Vec::with_capacity(parent.size() / ideal.len());
    for r in parent.elements() {
        if coset_of[r.index()] != u32::MAX {
            continue;
        }
        let k = reps.len() as u32;
        reps.push(r);
        for i in ideal.elements() {
            coset_of[parent.add(r, i).index()] = k;
        }
    }
    let size = reps.len();
    let map: Vec<Elem> = coset_of.iter().map(|&k| Elem::from_index(k)).collect();
    let min_preimage = reps.clone();
    let target = FiniteRing::assemble(
        spec,
        parent.limits(),
        Structure::Quotient {
            parent: Arc::clone(&parent),
            reps,
            coset_of,
        },
        size,
    );
    Ok((
        Arc::clone(&target),
        SurjectiveHom {
            source: parent,
            target,
            map,
            min_preimage,
            kernel: ideal.clone(),
        },
    ))
}

impl SurjectiveHom {
    /// Wraps an explicit element map after checking that it is a surjective
    /// ring homomorphism.
    pub fn new(source: &RingRef, target: &RingRef, map: Vec<Elem>) -> Result<Self> {
        if map.len() != source.size() || map.iter().any(|e| e.index() >= target.size()) {
            return Err(Error::Precondition(
                "element map has the wrong shape".into(),
            ));
        }
        let mut min_preimage = vec![None; target.size()];
        for (i, &v) in map.iter().enumerate() {
            min_preimage[v.index()].get_or_insert(source.elem(i));
        }
        let min_preimage = min_preimage
            .into_iter()
            .collect::<Option<Vec<_>>>()
            .ok_or_else(|| Error::Precondition("element map is not surjective".into()))?;
        let kernel_elems: Vec<Elem> = source
            .elements()
            .filter(|a| map[a.index()] == target.zero())
            .collect();
        let kernel = ideal_closure(source, &kernel_elems);
        let hom = SurjectiveHom {
            source: Arc::clone(source),
            target: Arc::clone(target),
            map,
            min_preimage,
            kernel,
        };
        hom.verify()?;
        Ok(hom)
    }

    pub fn identity(ring: &RingRef) -> Self {
        SurjectiveHom {
            source: Arc::clone(ring),
            target: Arc::clone(ring),
            map: ring.elements().collect(),
            min_preimage: ring.elements().collect(),
            kernel: Ideal::zero(ring),
        }
    }

    pub fn source(&self) -> &RingRef {
        &self.source
    }

    pub fn target(&self) -> &RingRef {
        &self.target
    }

    pub fn kernel(&self) -> &Ideal {
        &self.kernel
    }

    #[inline]
    pub fn apply(&self, a: Elem) -> Elem {
        self.map[a.index()]
    }

    /// The preimage with the smallest canonical index.
    pub fn min_preimage(&self, v: Elem) -> Elem {
        self.min_preimage[v.index()]
    }

    /// All preimages of `v`: the coset `min_preimage(v) + ker`.
    pub fn preimages(&self, v: Elem) -> impl Iterator<Item = Elem> + '_ {
        let base = self.min_preimage(v);
        self.kernel
            .elements()
            .map(move |k| self.source.add(base, k))
    }

    pub fn image(&self, set: &ElemSet) -> ElemSet {
        ElemSet::from_elems(self.target.size(), set.iter().map(|a| self.apply(a)))
    }

    pub fn preimage(&self, set: &ElemSet) -> ElemSet {
        ElemSet::from_predicate(self.source.size(), |a| set.contains(self.apply(a)))
    }

    /// `p(I)`, an ideal because `p` is surjective.
    pub fn image_ideal(&self, ideal: &Ideal) -> Ideal {
        let gens: Vec<Elem> = ideal.generators().iter().map(|&g| self.apply(g)).collect();
        let image = ideal_closure(&self.target, &gens);
        debug_assert_eq!(image.members(), &self.image(ideal.members()));
        image
    }

    pub fn preimage_ideal(&self, ideal: &Ideal) -> Ideal {
        Ideal::from_members(&self.source, self.preimage(ideal.members()))
            .expect("preimage of an ideal is an ideal")
    }

    /// `p(R^x)`, the image of the source's unit group.
    pub fn unit_image(&self) -> ElemSet {
        self.image(self.source.units())
    }

    /// Whether the induced map on unit groups is surjective.
    pub fn units_surjective(&self) -> bool {
        self.unit_image() == *self.target.units()
    }

    /// `other . self`.
    pub fn then(&self, other: &SurjectiveHom) -> Result<SurjectiveHom> {
        if !Arc::ptr_eq(&self.target, &other.source) {
            return Err(Error::Precondition("homomorphisms do not compose".into()));
        }
        let map = self.map.iter().map(|&v| other.apply(v)).collect();
        SurjectiveHom::new(&self.source, &other.target, map)
    }

    /// Checks every homomorphism invariant exhaustively: `1 -> 1`, additivity,
    /// multiplicativity, surjectivity and the kernel.
    pub fn verify(&self) -> Result<()> {
        let (s, t) = (&self.source, &self.target);
        let fail = |what: &str| {
            Err(Error::defect(format!(
                "{} ->> {}: {what}",
                s.spec(),
                t.spec()
            )))
        };
        if self.apply(s.one()) != t.one() {
            return fail("does not preserve 1");
        }
        for a in s.elements() {
            for b in s.elements() {
                if self.apply(s.add(a, b)) != t.add(self.apply(a), self.apply(b)) {
                    return fail("does not preserve +");
                }
                if self.apply(s.mul(a, b)) != t.mul(self.apply(a), self.apply(b)) {
                    return fail("does not preserve *");
                }
            }
        }
        if self.image(&ElemSet::full(s.size())).len() != t.size() {
            return fail("is not surjective");
        }
        let zeros = ElemSet::from_predicate(s.size(), |a| self.apply(a) == t.zero());
        if &zeros != self.kernel.members() {
            return fail("kernel mismatch");
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::build_ring_str;

    #[test]
    fn z12_mod_4_is_z4() {
        let r = build_ring_str("Z/12").unwrap();
        let i = ideal_closure(&r, &[r.elem(4)]);
        let (q, p) = quotient_ring(&r, &i).unwrap();
        // coset count = carrier / |I|
        assert_eq!(q.size(), 12 / i.len());
        p.verify().unwrap();
        let z4 = build_ring_str("Z/4").unwrap();
        for a in 0..4 {
            for b in 0..4 {
                let (x, y) = (q.elem(a), q.elem(b));
                assert_eq!(q.mul(x, y).index(), z4.mul(z4.elem(a), z4.elem(b)).index());
                assert_eq!(q.add(x, y).index(), z4.add(z4.elem(a), z4.elem(b)).index());
            }
        }
        assert_eq!(q.spec().to_string(), "quot(Z/12;4)");
        assert_eq!(p.apply(r.elem(7)), q.elem(3));
        assert_eq!(p.preimages(q.elem(3)).count(), 3);
    }

    #[test]
    fn zero_ideal_gives_identity() {
        let r = build_ring_str("prod(Z/2,Z/3)").unwrap();
        let (q, p) = quotient_ring(&r, &Ideal::zero(&r)).unwrap();
        assert_eq!(q.size(), r.size());
        for a in r.elements() {
            assert_eq!(p.apply(a).index(), a.index());
        }
        assert_eq!(q.spec().to_string(), "quot(prod(Z/2,Z/3);(0,0))");
    }

    #[test]
    fn dual_numbers_mod_x() {
        let r = build_ring_str("GF(2)[x]/(x^2)").unwrap();
        let x = r.parse_elem("x").unwrap();
        let (q, p) = quotient_ring(&r, &ideal_closure(&r, &[x])).unwrap();
        assert_eq!(q.size(), 2);
        assert!(q.is_field());
        assert!(p.units_surjective());
    }

    #[test]
    fn improper_ideal_rejected() {
        let r = build_ring_str("Z/12").unwrap();
        let whole = ideal_closure(&r, &[r.elem(5)]);
        assert_eq!(quotient_ring(&r, &whole).unwrap_err(), Error::ImproperIdeal);
    }

    #[test]
    fn explicit_hom_constructor() {
        let z12 = build_ring_str("Z/12").unwrap();
        let z4 = build_ring_str("Z/4").unwrap();
        let map = z12.elements().map(|a| z4.elem(a.index() % 4)).collect();
        let p = SurjectiveHom::new(&z12, &z4, map).unwrap();
        assert_eq!(p.kernel().render(), "{0, 4, 8}");
        // Z/12 -> Z/5 by reduction is not a homomorphism.
        let z5 = build_ring_str("Z/5").unwrap();
        let bad = z12.elements().map(|a| z5.elem(a.index() % 5)).collect();
        assert!(SurjectiveHom::new(&z12, &z5, bad).is_err());
    }

    #[test]
    fn composition_and_ideal_images() {
        let r = build_ring_str("Z/24").unwrap();
        let (q1, p1) = quotient_ring(&r, &ideal_closure(&r, &[r.elem(12)])).unwrap();
        let (_, p2) = quotient_ring(&q1, &ideal_closure(&q1, &[q1.elem(4)])).unwrap();
        let p = p1.then(&p2).unwrap();
        assert_eq!(p.kernel().render(), "{0, 4, 8, 12, 16, 20}");
        let i = ideal_closure(&r, &[r.elem(6)]);
        assert_eq!(p1.image_ideal(&i).render(), "{0, 6}");
        assert_eq!(p1.preimage_ideal(&p1.image_ideal(&i)), i);
    }
}
