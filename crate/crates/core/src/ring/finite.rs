use std::fmt;
use std::sync::{Arc, OnceLock};

use super::poly;
use super::spec::{parse_elem_literal, parse_ring_spec, ElemLiteral, RingSpec};
use crate::error::{Error, Result};
use crate::spectrum::SpectralData;

/// Shared handle to an immutable ring.
pub type RingRef = Arc<FiniteRing>;

/// Rings up to this size carry precomputed addition and multiplication tables.
const TABLE_LIMIT: usize = 512;

/// An element of a finite ring, identified by its canonical index in
/// `0..carrier_size`. Index 0 is always the zero element.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Elem(u32);

impl Elem {
    pub const fn from_index(index: u32) -> Self {
        Elem(index)
    }

    pub const fn index(self) -> usize {
        self.0 as usize
    }
}

/// Size guards. These are configuration: every ring remembers the limits it
/// was built with, and derived rings inherit them.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Limits {
    /// Largest carrier `build_ring` will construct.
    pub carrier: usize,
    /// Largest carrier for which all ideals may be enumerated.
    pub ideal_enumeration: usize,
    /// Largest matrix ring (`|R|^(n*n)`) that may be scanned exhaustively.
    pub matrix_scan: usize,
}

impl Default for Limits {
    fn default() -> Self {
        Limits {
            carrier: 65536,
            ideal_enumeration: 4096,
            matrix_scan: 65536,
        }
    }
}

impl Limits {
    pub(crate) fn check(&self, what: &'static str, size: u128, limit: usize) -> Result<()> {
        if size > limit as u128 {
            Err(Error::GuardExceeded { what, size, limit })
        } else {
            Ok(())
        }
    }
}

/// A subset of a ring's carrier, stored as a bitset so that iteration is
/// always in ascending index order.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ElemSet {
    words: Vec<u64>,
    universe: usize,
    len: usize,
}

impl ElemSet {
    pub fn empty(universe: usize) -> Self {
        ElemSet {
            words: vec![0; universe.div_ceil(64)],
            universe,
            len: 0,
        }
    }

    pub fn full(universe: usize) -> Self {
        let mut words = vec![u64::MAX; universe.div_ceil(64)];
        if !universe.is_multiple_of(64) {
            *words.last_mut().unwrap() = (1u64 << (universe % 64)) - 1;
        }
        ElemSet {
            words,
            universe,
            len: universe,
        }
    }

    pub fn from_elems(universe: usize, elems: impl IntoIterator<Item = Elem>) -> Self {
        let mut set = ElemSet::empty(universe);
        for e in elems {
            set.insert(e);
        }
        set
    }

    pub fn from_predicate(universe: usize, mut pred: impl FnMut(Elem) -> bool) -> Self {
        let mut set = ElemSet::empty(universe);
        for i in 0..universe {
            if pred(Elem(i as u32)) {
                set.words[i / 64] |= 1 << (i % 64);
                set.len += 1;
            }
        }
        set
    }

    fn from_words(universe: usize, words: Vec<u64>) -> Self {
        let len = words.iter().map(|w| w.count_ones() as usize).sum();
        ElemSet {
            words,
            universe,
            len,
        }
    }

    pub fn universe(&self) -> usize {
        self.universe
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    #[inline]
    pub fn contains(&self, e: Elem) -> bool {
        let i = e.index();
        i < self.universe && self.words[i / 64] & (1 << (i % 64)) != 0
    }

    /// Returns `true` if `e` was not already present.
    #[inline]
    pub fn insert(&mut self, e: Elem) -> bool {
        let i = e.index();
        assert!(i < self.universe, "element outside the universe");
        let (word, bit) = (&mut self.words[i / 64], 1u64 << (i % 64));
        if *word & bit != 0 {
            false
        } else {
            *word |= bit;
            self.len += 1;
            true
        }
    }

    pub fn iter(&self) -> impl Iterator<Item = Elem> + '_ {
        self.words.iter().enumerate().flat_map(|(k, &w)| {
            let mut rest = w;
            std::iter::from_fn(move || {
                if rest == 0 {
                    return None;
                }
                let bit = rest.trailing_zeros();
                rest &= rest - 1;
                Some(Elem((k * 64) as u32 + bit))
            })
        })
    }

    pub fn to_vec(&self) -> Vec<Elem> {
        self.iter().collect()
    }

    pub fn first(&self) -> Option<Elem> {
        self.iter().next()
    }

    pub fn is_subset(&self, other: &ElemSet) -> bool {
        self.words
            .iter()
            .zip(other.words.iter().chain(std::iter::repeat(&0)))
            .all(|(a, b)| a & !b == 0)
    }

    fn combine(&self, other: &ElemSet, f: impl Fn(u64, u64) -> u64) -> ElemSet {
        assert_eq!(
            self.universe, other.universe,
            "sets over different carriers"
        );
        let words = self
            .words
            .iter()
            .zip(&other.words)
            .map(|(&a, &b)| f(a, b))
            .collect();
        ElemSet::from_words(self.universe, words)
    }

    pub fn union(&self, other: &ElemSet) -> ElemSet {
        self.combine(other, |a, b| a | b)
    }

    pub fn intersection(&self, other: &ElemSet) -> ElemSet {
        self.combine(other, |a, b| a & b)
    }

    pub fn difference(&self, other: &ElemSet) -> ElemSet {
        self.combine(other, |a, b| a & !b)
    }
}

pub(crate) enum Structure {
    Modular {
        n: u64,
    },
    Polynomial {
        p: u64,
        modulus: Vec<u64>,
        degree: usize,
    },
    /// Mixed-radix encoding with the first factor most significant.
    Product {
        factors: Vec<RingRef>,
        strides: Vec<usize>,
    },
    /// Cosets of an ideal; each coset is represented by its smallest parent index.
    Quotient {
        parent: RingRef,
        reps: Vec<Elem>,
        coset_of: Vec<u32>,
    },
}

struct Tables {
    add: Vec<u16>,
    mul: Vec<u16>,
}

/// A finite commutative ring with `1 != 0`.
pub struct FiniteRing {
    size: usize,
    one: Elem,
    spec: RingSpec,
    limits: Limits,
    structure: Structure,
    neg: Vec<u32>,
    tables: Option<Tables>,
    inverses: OnceLock<Vec<Option<Elem>>>,
    units: OnceLock<ElemSet>,
    orbits: OnceLock<UnitOrbits>,
    spectral: OnceLock<Result<SpectralData>>,
}

/// Partition of a ring into classes `aR^x`, each represented by its
/// smallest element.
#[derive(Clone, Debug)]
pub struct UnitOrbits {
    orbit_of: Vec<u32>,
    reps: Vec<Elem>,
}

impl UnitOrbits {
    /// Representatives in increasing order.
    pub fn reps(&self) -> &[Elem] {
        &self.reps
    }

    pub fn orbit_of(&self, a: Elem) -> usize {
        self.orbit_of[a.index()] as usize
    }

    pub fn len(&self) -> usize {
        self.reps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.reps.is_empty()
    }
}

impl fmt::Debug for FiniteRing {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("FiniteRing")
            .field("spec", &self.spec.to_string())
            .field("size", &self.size)
            .finish()
    }
}

impl fmt::Display for FiniteRing {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.spec)
    }
}

pub fn build_ring(spec: &RingSpec) -> Result<RingRef> {
    build_ring_with(spec, Limits::default())
}

pub fn build_ring_str(text: &str) -> Result<RingRef> {
    build_ring(&parse_ring_spec(text)?)
}

pub fn build_ring_with(spec: &RingSpec, limits: Limits) -> Result<RingRef> {
    if let Some(size) = spec.declared_size() {
        limits.check("ring carrier", size, limits.carrier)?;
    }
    match spec {
        RingSpec::Modular(n) => {
            if *n < 2 {
                return Err(Error::ModulusOutOfRange(format!("Z/{n} needs n >= 2")));
            }
            Ok(FiniteRing::assemble(
                spec.clone(),
                limits,
                Structure::Modular { n: *n },
                *n as usize,
            ))
        }
        RingSpec::Polynomial { p, modulus } => {
            // Re-validate: specs can be constructed directly.
            let checked =
                RingSpec::polynomial(*p, &modulus.iter().map(|&c| c as i64).collect::<Vec<_>>())?;
            let RingSpec::Polynomial { p, modulus } = checked else {
                unreachable!()
            };
            let degree = modulus.len() - 1;
            let size = (p as usize).pow(degree as u32);
            Ok(FiniteRing::assemble(
                spec.clone(),
                limits,
                Structure::Polynomial { p, modulus, degree },
                size,
            ))
        }
        RingSpec::Product(factor_specs) => {
            if factor_specs.is_empty() {
                return Err(Error::Precondition("empty product".into()));
            }
            let factors = factor_specs
                .iter()
                .map(|s| build_ring_with(s, limits))
                .collect::<Result<Vec<_>>>()?;
            let size = factors
                .iter()
                .try_fold(1u128, |acc, f| acc.checked_mul(f.size() as u128))
                .unwrap_or(u128::MAX);
            limits.check("ring carrier", size, limits.carrier)?;
            Ok(FiniteRing::product_of(factors, spec.clone(), limits))
        }
        RingSpec::Quotient { base, generators } => {
            let base = build_ring_with(base, limits)?;
            let gens = generators
                .iter()
                .map(|g| base.elem_from_literal(g))
                .collect::<Result<Vec<_>>>()?;
            let ideal = super::ideal::ideal_closure(&base, &gens);
            let (ring, _) = super::quotient::quotient_ring_with_spec(&ideal, spec.clone())?;
            Ok(ring)
        }
    }
}

/// Applies `op` factor by factor to two mixed-radix product indices.
#[inline]
fn componentwise(
    factors: &[RingRef],
    strides: &[usize],
    a: Elem,
    b: Elem,
    op: impl Fn(&FiniteRing, Elem, Elem) -> Elem,
) -> Elem {
    let mut out = 0;
    for (f, &s) in factors.iter().zip(strides) {
        let x = Elem(((a.index() / s) % f.size()) as u32);
        let y = Elem(((b.index() / s) % f.size()) as u32);
        out += op(f, x, y).index() * s;
    }
    Elem(out as u32)
}

/// Operation table of a mixed-radix product, the first factor most
/// significant, from the factors' tables.
fn kronecker_table(tables: &[&[u16]], sizes: &[usize]) -> Vec<u16> {
    let (m, head) = (sizes[0], tables[0]);
    if tables.len() == 1 {
        return head.to_vec();
    }
    let rest = kronecker_table(&tables[1..], &sizes[1..]);
    let r: usize = sizes[1..].iter().product();
    let n = m * r;
    let mut out = vec![0u16; n * n];
    for a0 in 0..m {
        for a1 in 0..r {
            let row = &mut out[(a0 * r + a1) * n..][..n];
            let rest_row = &rest[a1 * r..][..r];
            for b0 in 0..m {
                let base = head[a0 * m + b0] as usize * r;
                for (slot, &x) in row[b0 * r..][..r].iter_mut().zip(rest_row) {
                    *slot = (base + x as usize) as u16;
                }
            }
        }
    }
    out
}

impl FiniteRing {
    pub(crate) fn product_of(factors: Vec<RingRef>, spec: RingSpec, limits: Limits) -> RingRef {
        let mut strides = vec![1usize; factors.len()];
        for i in (0..factors.len().saturating_sub(1)).rev() {
            strides[i] = strides[i + 1] * factors[i + 1].size();
        }
        let size = strides[0] * factors[0].size();
        FiniteRing::assemble(spec, limits, Structure::Product { factors, strides }, size)
    }

    pub(crate) fn assemble(
        spec: RingSpec,
        limits: Limits,
        structure: Structure,
        size: usize,
    ) -> RingRef {
        let mut ring = FiniteRing {
            size,
            one: Elem(0),
            spec,
            limits,
            structure,
            neg: Vec::new(),
            tables: None,
            inverses: OnceLock::new(),
            units: OnceLock::new(),
            orbits: OnceLock::new(),
            spectral: OnceLock::new(),
        };
        ring.one = ring.raw_one();
        ring.neg = (0..size as u32).map(|a| ring.raw_neg(Elem(a)).0).collect();
        // A quotient of a tabled ring already costs three lookups per operation.
        let parent_tabled = matches!(&ring.structure, Structure::Quotient { parent, .. } if parent.tables.is_some());
        if size <= TABLE_LIMIT && !parent_tabled {
            ring.tables = ring.product_tables();
        }
        if size <= TABLE_LIMIT && !parent_tabled && ring.tables.is_none() {
            let mut add = Vec::with_capacity(size * size);
            let mut mul = Vec::with_capacity(size * size);
            for a in 0..size as u32 {
                for b in 0..size as u32 {
                    add.push(ring.raw_add(Elem(a), Elem(b)).0 as u16);
                    mul.push(ring.raw_mul(Elem(a), Elem(b)).0 as u16);
                }
            }
            ring.tables = Some(Tables { add, mul });
        }
        Arc::new(ring)
    }

    /// Tables of a product assembled from its factors' tables, when every
    /// factor has them.
    fn product_tables(&self) -> Option<Tables> {
        let Structure::Product { factors, .. } = &self.structure else {
            return None;
        };
        let tables: Vec<&Tables> = factors
            .iter()
            .map(|f| f.tables.as_ref())
            .collect::<Option<_>>()?;
        let sizes: Vec<usize> = factors.iter().map(|f| f.size).collect();
        let add: Vec<&[u16]> = tables.iter().map(|t| t.add.as_slice()).collect();
        let mul: Vec<&[u16]> = tables.iter().map(|t| t.mul.as_slice()).collect();
        Some(Tables {
            add: kronecker_table(&add, &sizes),
            mul: kronecker_table(&mul, &sizes),
        })
    }

    /// Radical and maximal-ideal data, computed once per ring.
    pub(crate) fn spectral_cache(
        &self,
        init: impl FnOnce() -> Result<SpectralData>,
    ) -> Result<&SpectralData> {
        self.spectral
            .get_or_init(init)
            .as_ref()
            .map_err(Clone::clone)
    }

    fn raw_one(&self) -> Elem {
        match &self.structure {
            Structure::Modular { .. } | Structure::Polynomial { .. } => Elem(1),
            Structure::Product { factors, strides } => Elem(
                factors
                    .iter()
                    .zip(strides)
                    .map(|(f, s)| f.one().index() * s)
                    .sum::<usize>() as u32,
            ),
            Structure::Quotient {
                parent, coset_of, ..
            } => Elem(coset_of[parent.one().index()]),
        }
    }

    fn raw_neg(&self, a: Elem) -> Elem {
        match &self.structure {
            Structure::Modular { n } => Elem(((n - a.0 as u64) % n) as u32),
            Structure::Polynomial { p, degree, .. } => {
                let coeffs = poly::decode(a.0 as u64, *p, *degree);
                let negated: Vec<u64> = coeffs.iter().map(|&c| (p - c) % p).collect();
                Elem(poly::encode(&negated, *p) as u32)
            }
            Structure::Product { factors, .. } => {
                let parts = self.components(a);
                self.compose(factors.iter().zip(parts).map(|(f, x)| f.neg(x)))
            }
            Structure::Quotient {
                parent,
                reps,
                coset_of,
            } => Elem(coset_of[parent.neg(reps[a.index()]).index()]),
        }
    }

    fn raw_add(&self, a: Elem, b: Elem) -> Elem {
        match &self.structure {
            Structure::Modular { n } => Elem(((a.0 as u64 + b.0 as u64) % n) as u32),
            Structure::Polynomial { p, degree, .. } => {
                let x = poly::decode(a.0 as u64, *p, *degree);
                let y = poly::decode(b.0 as u64, *p, *degree);
                let sum: Vec<u64> = x.iter().zip(&y).map(|(u, v)| (u + v) % p).collect();
                Elem(poly::encode(&sum, *p) as u32)
            }
            Structure::Product { factors, strides } => {
                componentwise(factors, strides, a, b, |f, x, y| f.add(x, y))
            }
            Structure::Quotient {
                parent,
                reps,
                coset_of,
            } => Elem(coset_of[parent.add(reps[a.index()], reps[b.index()]).index()]),
        }
    }

    fn raw_mul(&self, a: Elem, b: Elem) -> Elem {
        match &self.structure {
            Structure::Modular { n } => Elem(((a.0 as u64 * b.0 as u64) % n) as u32),
            Structure::Polynomial { p, modulus, degree } => {
                let x = poly::decode(a.0 as u64, *p, *degree);
                let y = poly::decode(b.0 as u64, *p, *degree);
                let mut prod = poly::reduce(&poly::mul(&x, &y, *p), modulus, *p);
                prod.resize(*degree, 0);
                Elem(poly::encode(&prod, *p) as u32)
            }
            Structure::Product { factors, strides } => {
                componentwise(factors, strides, a, b, |f, x, y| f.mul(x, y))
            }
            Structure::Quotient {
                parent,
                reps,
                coset_of,
            } => Elem(coset_of[parent.mul(reps[a.index()], reps[b.index()]).index()]),
        }
    }

    fn compose(&self, parts: impl Iterator<Item = Elem>) -> Elem {
        let Structure::Product { strides, .. } = &self.structure else {
            unreachable!("compose on a non-product ring")
        };
        Elem(
            parts
                .zip(strides)
                .map(|(x, s)| x.index() * s)
                .sum::<usize>() as u32,
        )
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn spec(&self) -> &RingSpec {
        &self.spec
    }

    pub fn limits(&self) -> Limits {
        self.limits
    }

    pub fn zero(&self) -> Elem {
        Elem(0)
    }

    pub fn one(&self) -> Elem {
        self.one
    }

    /// The element with canonical index `index`.
    ///
    /// Panics if `index` is outside the carrier.
    pub fn elem(&self, index: usize) -> Elem {
        assert!(
            index < self.size,
            "index {index} outside carrier of size {}",
            self.size
        );
        Elem(index as u32)
    }

    pub fn elements(&self) -> impl Iterator<Item = Elem> + Clone {
        (0..self.size as u32).map(Elem)
    }

    #[inline]
    pub fn add(&self, a: Elem, b: Elem) -> Elem {
        match &self.tables {
            Some(t) => Elem(t.add[a.index() * self.size + b.index()] as u32),
            None => self.raw_add(a, b),
        }
    }

    #[inline]
    pub fn mul(&self, a: Elem, b: Elem) -> Elem {
        match &self.tables {
            Some(t) => Elem(t.mul[a.index() * self.size + b.index()] as u32),
            None => self.raw_mul(a, b),
        }
    }

    #[inline]
    pub fn neg(&self, a: Elem) -> Elem {
        Elem(self.neg[a.index()])
    }

    #[inline]
    pub fn sub(&self, a: Elem, b: Elem) -> Elem {
        self.add(a, self.neg(b))
    }

    /// `1 - a * b`, which shows up everywhere in unit lifting.
    #[inline]
    pub fn one_minus_product(&self, a: Elem, b: Elem) -> Elem {
        self.sub(self.one, self.mul(a, b))
    }

    pub fn pow(&self, mut base: Elem, mut exp: u64) -> Elem {
        let mut acc = self.one;
        while exp > 0 {
            if exp & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            exp >>= 1;
        }
        acc
    }

    /// The image of the integer `k` under `Z -> R`.
    pub fn from_int(&self, k: i64) -> Elem {
        let mut acc = self.zero();
        let mut step = self.one;
        let mut m = k.unsigned_abs();
        while m > 0 {
            if m & 1 == 1 {
                acc = self.add(acc, step);
            }
            step = self.add(step, step);
            m >>= 1;
        }
        if k < 0 {
            self.neg(acc)
        } else {
            acc
        }
    }

    fn inverse_table(&self) -> &[Option<Elem>] {
        self.inverses.get_or_init(|| match &self.structure {
            Structure::Quotient { .. } => self.inverses_by_powers(),
            _ => self
                .elements()
                .map(|a| self.structural_inverse(a))
                .collect(),
        })
    }

    fn structural_inverse(&self, a: Elem) -> Option<Elem> {
        match &self.structure {
            Structure::Modular { n } => {
                let n = *n as i64;
                let g = num_integer::Integer::extended_gcd(&(a.0 as i64), &n);
                (g.gcd == 1).then(|| Elem(g.x.rem_euclid(n) as u32))
            }
            Structure::Polynomial { p, modulus, degree } => {
                let coeffs = poly::decode(a.0 as u64, *p, *degree);
                poly::inverse_mod(&coeffs, modulus, *p).map(|mut inv| {
                    inv.resize(*degree, 0);
                    Elem(poly::encode(&inv, *p) as u32)
                })
            }
            Structure::Product { factors, .. } => {
                let parts = self.components(a);
                let inv: Option<Vec<Elem>> = factors
                    .iter()
                    .zip(parts)
                    .map(|(f, x)| f.inverse(x))
                    .collect();
                inv.map(|parts| self.compose(parts.into_iter()))
            }
            Structure::Quotient { .. } => self.inverse_table()[a.index()],
        }
    }

    /// Inverses read off power sequences: `a` is a unit exactly when some
    /// `a^k = 1`, and then `a^(k-1)` inverts it.
    pub fn inverses_by_powers(&self) -> Vec<Option<Elem>> {
        let mut seen = vec![u32::MAX; self.size];
        self.elements()
            .map(|a| {
                let (mut prev, mut x) = (self.one, a);
                while seen[x.index()] != a.0 {
                    if x == self.one {
                        return Some(prev);
                    }
                    seen[x.index()] = a.0;
                    prev = x;
                    x = self.mul(x, a);
                }
                None
            })
            .collect()
    }

    /// Inverses found by scanning the carrier for `b` with `a * b = 1`.
    pub fn inverses_by_scan(&self) -> Vec<Option<Elem>> {
        let mut table: Vec<Option<Elem>> = vec![None; self.size];
        for a in self.elements() {
            if table[a.index()].is_some() {
                continue;
            }
            if let Some(b) = self.elements().find(|&b| self.mul(a, b) == self.one) {
                table[a.index()] = Some(b);
                table[b.index()] = Some(a);
            }
        }
        table
    }

    pub fn inverse(&self, a: Elem) -> Option<Elem> {
        self.inverse_table()[a.index()]
    }

    pub fn is_unit(&self, a: Elem) -> bool {
        self.inverse(a).is_some()
    }

    /// The unit group `R^x`.
    pub fn units(&self) -> &ElemSet {
        self.units.get_or_init(|| {
            let inv = self.inverse_table();
            ElemSet::from_predicate(self.size, |a| inv[a.index()].is_some())
        })
    }

    /// Orbits of the unit group acting on `R` by multiplication.
    pub fn unit_orbits(&self) -> &UnitOrbits {
        self.orbits.get_or_init(|| {
            let mut orbit_of = vec![u32::MAX; self.size];
            let mut reps = Vec::new();
            for a in self.elements() {
                if orbit_of[a.index()] != u32::MAX {
                    continue;
                }
                let id = reps.len() as u32;
                reps.push(a);
                for u in self.units().iter() {
                    orbit_of[self.mul(u, a).index()] = id;
                }
            }
            UnitOrbits { orbit_of, reps }
        })
    }

    /// Whether every nonzero element is invertible.
    pub fn is_field(&self) -> bool {
        self.units().len() == self.size - 1
    }

    /// The factor rings, when this ring was built as a product.
    pub fn factors(&self) -> Option<&[RingRef]> {
        match &self.structure {
            Structure::Product { factors, .. } => Some(factors),
            _ => None,
        }
    }

    /// Coordinates of `a` in a product ring; a non-product ring is treated
    /// as a product with one factor.
    pub fn components(&self, a: Elem) -> Vec<Elem> {
        match &self.structure {
            Structure::Product { factors, strides } => factors
                .iter()
                .zip(strides)
                .map(|(f, s)| Elem(((a.index() / s) % f.size()) as u32))
                .collect(),
            _ => vec![a],
        }
    }

    pub fn from_components(&self, parts: &[Elem]) -> Elem {
        match &self.structure {
            Structure::Product { factors, .. } => {
                assert_eq!(parts.len(), factors.len(), "wrong number of components");
                self.compose(parts.iter().copied())
            }
            _ => {
                assert_eq!(parts.len(), 1, "wrong number of components");
                parts[0]
            }
        }
    }

    /// `Some(n)` when this ring is literally `Z/n`.
    pub fn modular_modulus(&self) -> Option<u64> {
        match &self.structure {
            Structure::Modular { n } => Some(*n),
            _ => None,
        }
    }

    /// Whether elements render as plain integers (`Z/n` and its quotients).
    pub fn renders_as_integer(&self) -> bool {
        match &self.structure {
            Structure::Modular { .. } => true,
            Structure::Quotient { parent, .. } => parent.renders_as_integer(),
            _ => false,
        }
    }

    pub fn literal(&self, a: Elem) -> ElemLiteral {
        match &self.structure {
            Structure::Modular { .. } => ElemLiteral::Int(a.0 as i64),
            Structure::Polynomial { p, degree, .. } => ElemLiteral::poly(
                poly::decode(a.0 as u64, *p, *degree)
                    .into_iter()
                    .map(|c| c as i64)
                    .collect(),
            ),
            Structure::Product { factors, .. } => ElemLiteral::Tuple(
                factors
                    .iter()
                    .zip(self.components(a))
                    .map(|(f, x)| f.literal(x))
                    .collect(),
            ),
            Structure::Quotient { parent, reps, .. } => parent.literal(reps[a.index()]),
        }
    }

    pub fn render(&self, a: Elem) -> String {
        self.literal(a).to_string()
    }

    pub fn render_set(&self, set: &ElemSet) -> String {
        let items: Vec<String> = set.iter().map(|e| self.render(e)).collect();
        format!("{{{}}}", items.join(", "))
    }

    pub fn parse_elem(&self, text: &str) -> Result<Elem> {
        self.elem_from_literal(&parse_elem_literal(text)?)
    }

    pub fn elem_from_literal(&self, lit: &ElemLiteral) -> Result<Elem> {
        let bad = |reason: &str| Error::BadElement {
            text: lit.to_string(),
            ring: self.spec.to_string(),
            reason: reason.into(),
        };
        match (&self.structure, lit) {
            (Structure::Modular { n }, ElemLiteral::Int(k)) => {
                Ok(Elem((*k as i128).rem_euclid(*n as i128) as u32))
            }
            (Structure::Modular { .. }, _) => Err(bad("expected an integer")),
            (
                Structure::Polynomial { p, modulus, degree },
                ElemLiteral::Int(_) | ElemLiteral::Poly(_),
            ) => {
                let coeffs: Vec<u64> = lit
                    .coefficients()
                    .unwrap()
                    .into_iter()
                    .map(|c| c.rem_euclid(*p as i64) as u64)
                    .collect();
                let mut reduced = poly::reduce(&coeffs, modulus, *p);
                reduced.resize(*degree, 0);
                Ok(Elem(poly::encode(&reduced, *p) as u32))
            }
            (Structure::Polynomial { .. }, _) => Err(bad("expected a polynomial")),
            (Structure::Product { factors, .. }, ElemLiteral::Tuple(items)) => {
                if items.len() != factors.len() {
                    return Err(bad(&format!("expected a {}-tuple", factors.len())));
                }
                let parts = factors
                    .iter()
                    .zip(items)
                    .map(|(f, item)| f.elem_from_literal(item))
                    .collect::<Result<Vec<_>>>()?;
                Ok(self.compose(parts.into_iter()))
            }
            (Structure::Product { .. }, ElemLiteral::Int(k)) => Ok(self.from_int(*k)),
            (Structure::Product { .. }, _) => Err(bad("expected a tuple")),
            (
                Structure::Quotient {
                    parent, coset_of, ..
                },
                _,
            ) => {
                let x = parent.elem_from_literal(lit)?;
                Ok(Elem(coset_of[x.index()]))
            }
        }
    }
}
