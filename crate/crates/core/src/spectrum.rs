//! Jacobson radical, idempotents, the maximal spectrum, and Chinese
//! Remainder solving for comaximal ideals.
//!
//! A finite commutative ring is Artinian, so its Jacobson radical coincides
//! with the set of nilpotent elements, and `R/rad(R)` is a finite product of
//! fields whose factors correspond to the primitive idempotents. Both facts
//! are used as shortcuts but are cross-checked at runtime: the radical is
//! computed as the intersection of the maximal ideals and as the nilpotent
//! set, and every reported maximal ideal is verified by checking that its
//! quotient is a field.

use std::sync::Arc;

use num_integer::Integer;

use crate::error::{Error, Result};
use crate::ring::{quotient_ring, Elem, ElemSet, FiniteRing, Ideal, RingRef};

/// Cached per ring. Holds no `Arc`s back to the ring it describes.
pub(crate) struct SpectralData {
    radical: ElemSet,
    radical_generators: Vec<Elem>,
    maximal: Vec<(Vec<Elem>, ElemSet)>,
    primitive_idempotents: Vec<Elem>,
}

/// The maximal ideals of a finite ring, in the order of their primitive
/// idempotents in `R/rad(R)`.
#[derive(Clone, Debug)]
pub struct MaximalIdealList {
    ring: RingRef,
    ideals: Vec<Ideal>,
    primitive_idempotents: Vec<Elem>,
}

impl MaximalIdealList {
    pub fn ring(&self) -> &RingRef {
        &self.ring
    }

    pub fn ideals(&self) -> &[Ideal] {
        &self.ideals
    }

    /// Smallest lifts to `R` of the primitive idempotents of `R/rad(R)`;
    /// the `i`-th one lies outside exactly the `i`-th maximal ideal.
    pub fn primitive_idempotents(&self) -> &[Elem] {
        &self.primitive_idempotents
    }

    pub fn len(&self) -> usize {
        self.ideals.len()
    }

    pub fn is_empty(&self) -> bool {
        self.ideals.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = &Ideal> {
        self.ideals.iter()
    }
}

/// `a` is nilpotent iff repeated squaring reaches zero within
/// `ceil(log2 |R|) + 1` steps; the nilpotency index never exceeds the
/// composition length, which is at most `log2 |R|`.
pub fn is_nilpotent(ring: &FiniteRing, a: Elem) -> bool {
    let steps = usize::BITS - (ring.size() - 1).leading_zeros() + 1;
    let mut x = a;
    for _ in 0..=steps {
        if x == ring.zero() {
            return true;
        }
        x = ring.mul(x, x);
    }
    x == ring.zero()
}

/// The nilradical by full scan.
pub fn nilradical(ring: &RingRef) -> Ideal {
    let members = ElemSet::from_predicate(ring.size(), |a| is_nilpotent(ring, a));
    Ideal::from_members(ring, members).expect("the nilradical is an ideal")
}

/// `{e : e^2 = e}`.
pub fn idempotents(ring: &FiniteRing) -> ElemSet {
    ElemSet::from_predicate(ring.size(), |e| ring.mul(e, e) == e)
}

/// Nonzero idempotents `e` such that `e*f` is `0` or `e` for every idempotent `f`.
fn atoms(ring: &FiniteRing, idem: &ElemSet) -> Vec<Elem> {
    idem.iter()
        .filter(|&e| e != ring.zero())
        .filter(|&e| {
            idem.iter().all(|f| {
                let ef = ring.mul(e, f);
                ef == ring.zero() || ef == e
            })
        })
        .collect()
}

fn spectral(ring: &RingRef) -> Result<&SpectralData> {
    ring.spectral_cache(|| compute_spectral(ring))
}

fn compute_spectral(ring: &RingRef) -> Result<SpectralData> {
    let limits = ring.limits();
    limits.check("ring carrier", ring.size() as u128, limits.carrier)?;

    let nil = nilradical(ring);
    let (reduced, reduce) = quotient_ring(ring, &nil)?;
    let idem = idempotents(&reduced);
    let primitive = atoms(&reduced, &idem);

    let mut maximal = Vec::with_capacity(primitive.len());
    for &e in &primitive {
        let members = ElemSet::from_predicate(ring.size(), |r| {
            reduced.mul(reduce.apply(r), e) == reduced.zero()
        });
        let ideal = Ideal::from_members(ring, members).ok_or_else(|| {
            Error::defect(format!(
                "annihilator of a primitive idempotent in {} is not an ideal",
                ring.spec()
            ))
        })?;
        let (field, _) = quotient_ring(ring, &ideal)?;
        if !field.is_field() {
            return Err(Error::defect(format!(
                "{} / {} is not a field",
                ring.spec(),
                ideal.render()
            )));
        }
        maximal.push((ideal.generators().to_vec(), ideal.members().clone()));
    }

    let intersection = maximal
        .iter()
        .fold(ElemSet::full(ring.size()), |acc, (_, m)| {
            acc.intersection(m)
        });
    if &intersection != nil.members() {
        return Err(Error::defect(format!(
            "in {} the intersection of maximal ideals {} differs from the nilradical {}",
            ring.spec(),
            ring.render_set(&intersection),
            nil.render()
        )));
    }

    Ok(SpectralData {
        radical: nil.members().clone(),
        radical_generators: nil.generators().to_vec(),
        maximal,
        primitive_idempotents: primitive.iter().map(|&e| reduce.min_preimage(e)).collect(),
    })
}

/// `rad(R)`, computed as the intersection of the maximal ideals and as the
/// nilradical; disagreement is reported as a defect.
pub fn jacobson_radical(ring: &RingRef) -> Result<Ideal> {
    let data = spectral(ring)?;
    Ok(Ideal::from_parts(
        ring,
        data.radical_generators.clone(),
        data.radical.clone(),
    ))
}

/// Membership set of `rad(R)`, without building an [`Ideal`].
pub fn radical_members(ring: &RingRef) -> Result<&ElemSet> {
    Ok(&spectral(ring)?.radical)
}

pub fn maximal_ideals(ring: &RingRef) -> Result<MaximalIdealList> {
    let data = spectral(ring)?;
    Ok(MaximalIdealList {
        ring: Arc::clone(ring),
        ideals: data
            .maximal
            .iter()
            .map(|(gens, members)| Ideal::from_parts(ring, gens.clone(), members.clone()))
            .collect(),
        primitive_idempotents: data.primitive_idempotents.clone(),
    })
}

/// Whether `R/rad(R)` has only the trivial idempotents, i.e. whether its
/// spectrum is connected.
pub fn is_connected_mod_rad(ring: &RingRef) -> Result<bool> {
    let rad = jacobson_radical(ring)?;
    let (reduced, _) = quotient_ring(ring, &rad)?;
    Ok(idempotents(&reduced).len() == 2)
}

/// A system `a = t_i (mod I_i)` over pairwise comaximal ideals.
#[derive(Clone, Debug, Default)]
pub struct CongruenceSystem {
    constraints: Vec<(Ideal, Elem)>,
}

impl CongruenceSystem {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn with(mut self, ideal: Ideal, target: Elem) -> Self {
        self.constraints.push((ideal, target));
        self
    }

    pub fn push(&mut self, ideal: Ideal, target: Elem) {
        self.constraints.push((ideal, target));
    }

    pub fn constraints(&self) -> &[(Ideal, Elem)] {
        &self.constraints
    }

    pub fn is_satisfied_by(&self, ring: &FiniteRing, a: Elem) -> bool {
        self.constraints
            .iter()
            .all(|(ideal, t)| ideal.contains(ring.sub(a, *t)))
    }

    /// Reports the first pair of ideals whose sum is not the whole ring.
    pub fn check_comaximal(&self) -> Result<()> {
        for (i, (a, _)) in self.constraints.iter().enumerate() {
            for (j, (b, _)) in self.constraints.iter().enumerate().skip(i + 1) {
                if !a.sum(b).is_whole() {
                    return Err(Error::NotComaximal(i, j));
                }
            }
        }
        Ok(())
    }
}

/// Solves a comaximal congruence system. Uses integer CRT when the ring is
/// literally `Z/n` and a carrier scan otherwise; both return the solution
/// with the smallest canonical index.
pub fn crt_solve(ring: &RingRef, sys: &CongruenceSystem) -> Result<Elem> {
    match ring.modular_modulus() {
        Some(n) => crt_solve_modular(ring, n, sys),
        None => crt_solve_scan(ring, sys),
    }
}

pub fn crt_solve_scan(ring: &RingRef, sys: &CongruenceSystem) -> Result<Elem> {
    sys.check_comaximal()?;
    ring.elements()
        .find(|&a| sys.is_satisfied_by(ring, a))
        .ok_or_else(|| {
            Error::defect(format!(
                "comaximal congruence system in {} has no solution",
                ring.spec()
            ))
        })
}

fn crt_solve_modular(ring: &RingRef, n: u64, sys: &CongruenceSystem) -> Result<Elem> {
    sys.check_comaximal()?;
    // Every ideal of Z/n is (d) for the d | n given by its smallest nonzero
    // element (or n for the zero ideal).
    let (mut x, mut m) = (0i128, 1i128);
    for (ideal, t) in sys.constraints() {
        let d = ideal
            .elements()
            .map(|e| e.index() as u64)
            .find(|&e| e != 0)
            .unwrap_or(n) as i128;
        let t = t.index() as i128 % d;
        // x' = x + m*k with m*k = t - x (mod d); gcd(m, d) = 1 by comaximality.
        let g = m.extended_gcd(&d);
        if g.gcd != 1 {
            return Err(Error::defect("non-coprime moduli in Z/n congruence system"));
        }
        let k = ((t - x) * g.x).rem_euclid(d);
        x += m * k;
        m *= d;
        x = x.rem_euclid(m);
    }
    let a = ring.elem(x as usize);
    if !sys.is_satisfied_by(ring, a) {
        return Err(Error::defect("modular CRT produced a non-solution"));
    }
    Ok(a)
}
