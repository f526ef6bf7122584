use std::collections::HashSet;
use std::fmt;
use std::sync::Arc;

use super::finite::{Elem, ElemSet, FiniteRing, RingRef};
use crate::error::Result;

/// An ideal of a finite ring: the generators it was built from together
/// with its fully materialized element set.
#[derive(Clone)]
pub struct Ideal {
    ring: RingRef,
    generators: Vec<Elem>,
    members: ElemSet,
}

impl PartialEq for Ideal {
    fn eq(&self, other: &Self) -> bool {
        self.members == other.members
    }
}

impl Eq for Ideal {}

impl fmt::Debug for Ideal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "Ideal({} in {})",
            self.ring.render_set(&self.members),
            self.ring.spec()
        )
    }
}

/// Grows the additive subgroup `members` until it contains `t`.
///
/// The new subgroup is the union of the cosets `H + k*t` for `k` below the
/// order of `t` modulo `H`.
fn adjoin_additive(ring: &FiniteRing, members: &mut ElemSet, t: Elem) {
    if members.contains(t) {
        return;
    }
    let base = members.to_vec();
    let mut step = t;
    while !members.contains(step) {
        for &h in &base {
            members.insert(ring.add(h, step));
        }
        step = ring.add(step, t);
    }
}

/// The smallest ideal containing `gens`.
pub fn ideal_closure(ring: &RingRef, gens: &[Elem]) -> Ideal {
    let mut members = ElemSet::from_elems(ring.size(), [ring.zero()]);
    for &g in gens {
        for r in ring.elements() {
            adjoin_additive(ring, &mut members, ring.mul(r, g));
        }
    }
    Ideal {
        ring: Arc::clone(ring),
        generators: gens.to_vec(),
        members,
    }
}

/// Every ideal of `ring` exactly once, found breadth-first: starting from
/// the zero ideal, each known ideal `I` is augmented to `I + Rx` for every
/// `x` outside it.
pub fn enumerate_ideals(ring: &RingRef) -> Result<Vec<Ideal>> {
    let limits = ring.limits();
    limits.check(
        "ideal enumeration carrier",
        ring.size() as u128,
        limits.ideal_enumeration,
    )?;

    // `I + Rx` depends on `x` only through `Rx`, so augment by each distinct
    // principal ideal once, keyed by its smallest generator.
    let mut principal: Vec<(Elem, ElemSet)> = Vec::new();
    let mut seen_principal: HashSet<ElemSet> = HashSet::new();
    for &x in ring.unit_orbits().reps() {
        let p = ElemSet::from_elems(ring.size(), ring.elements().map(|r| ring.mul(r, x)));
        if seen_principal.insert(p.clone()) {
            principal.push((x, p));
        }
    }

    let zero = ideal_closure(ring, &[]);
    let mut seen: HashSet<ElemSet> = HashSet::new();
    seen.insert(zero.members.clone());
    let mut ideals = vec![zero];
    let mut next = 0;
    while next < ideals.len() {
        let current = ideals[next].clone();
        next += 1;
        for (x, p) in &principal {
            if p.is_subset(&current.members) {
                continue;
            }
            // `I + Rx` as a union of cosets `y + I`.
            let mut members = current.members.clone();
            for y in p.iter() {
                if !members.contains(y) {
                    for i in current.members.iter() {
                        members.insert(ring.add(y, i));
                    }
                }
            }
            if seen.insert(members.clone()) {
                let mut generators = current.generators.clone();
                generators.push(*x);
                ideals.push(Ideal {
                    ring: Arc::clone(ring),
                    generators,
                    members,
                });
            }
        }
    }
    Ok(ideals)
}

impl Ideal {
    /// Assembles an ideal from parts already known to be consistent.
    pub(crate) fn from_parts(ring: &RingRef, generators: Vec<Elem>, members: ElemSet) -> Ideal {
        debug_assert_eq!(members.universe(), ring.size());
        Ideal {
            ring: Arc::clone(ring),
            generators,
            members,
        }
    }

    /// Wraps an element set that is already known to be an ideal, choosing
    /// a small generating set greedily. Returns `None` if `members` is not
    /// an ideal.
    pub fn from_members(ring: &RingRef, members: ElemSet) -> Option<Ideal> {
        if members.universe() != ring.size() || !is_ideal(ring, &members) {
            return None;
        }
        let mut acc = ideal_closure(ring, &[]);
        for e in members.iter() {
            if !acc.contains(e) {
                let mut gens = acc.generators.clone();
                gens.push(e);
                acc = acc.sum(&ideal_closure(ring, &[e]));
                acc.generators = gens;
            }
        }
        debug_assert_eq!(acc.members, members);
        Some(acc)
    }

    pub fn zero(ring: &RingRef) -> Ideal {
        ideal_closure(ring, &[])
    }

    pub fn whole(ring: &RingRef) -> Ideal {
        ideal_closure(ring, &[ring.one()])
    }

    pub fn ring(&self) -> &RingRef {
        &self.ring
    }

    pub fn generators(&self) -> &[Elem] {
        &self.generators
    }

    pub fn members(&self) -> &ElemSet {
        &self.members
    }

    pub fn elements(&self) -> impl Iterator<Item = Elem> + '_ {
        self.members.iter()
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn contains(&self, e: Elem) -> bool {
        self.members.contains(e)
    }

    pub fn is_zero(&self) -> bool {
        self.members.len() == 1
    }

    pub fn is_whole(&self) -> bool {
        self.members.contains(self.ring.one())
    }

    pub fn is_proper(&self) -> bool {
        !self.is_whole()
    }

    pub fn is_subset(&self, other: &Ideal) -> bool {
        self.members.is_subset(&other.members)
    }

    /// `I + J`.
    pub fn sum(&self, other: &Ideal) -> Ideal {
        let mut members = self.members.clone();
        for y in other.members.iter() {
            adjoin_additive(&self.ring, &mut members, y);
        }
        let mut generators = self.generators.clone();
        generators.extend(other.generators.iter().copied());
        Ideal {
            ring: Arc::clone(&self.ring),
            generators,
            members,
        }
    }

    pub fn intersection(&self, other: &Ideal) -> Ideal {
        Ideal::from_members(&self.ring, self.members.intersection(&other.members))
            .expect("intersection of ideals is an ideal")
    }

    /// `1 + I`.
    pub fn shifted_by_one(&self) -> ElemSet {
        let ring = &self.ring;
        ElemSet::from_elems(
            ring.size(),
            self.elements().map(|i| ring.add(ring.one(), i)),
        )
    }

    /// Renders the ideal as a set, e.g. `{0, 4, 8}`.
    pub fn render(&self) -> String {
        self.ring.render_set(&self.members)
    }
}

/// Checks the ideal axioms directly: contains zero, closed under addition,
/// closed under multiplication by every ring element. Negation follows from
/// closure under multiplication by `-1`.
pub fn is_ideal(ring: &FiniteRing, members: &ElemSet) -> bool {
    if !members.contains(ring.zero()) {
        return false;
    }
    let elems = members.to_vec();
    for &a in &elems {
        for &b in &elems {
            if !members.contains(ring.add(a, b)) {
                return false;
            }
        }
        for r in ring.elements() {
            if !members.contains(ring.mul(r, a)) {
                return false;
            }
        }
    }
    true
}
