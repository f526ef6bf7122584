//! Small square matrices over a finite commutative ring: determinant,
//! adjugate inverse, `GL_n` lifting along surjections whose kernel lies in
//! the radical, and exhaustive scans of the full matrix ring `M_n(R)`.

use std::fmt;
use std::sync::{Arc, OnceLock};

use rand::Rng;

use crate::error::{Error, Result};
use crate::ring::{Elem, ElemSet, RingRef, SurjectiveHom};
use crate::spectrum::radical_members;

/// Matrices larger than this are rejected; cofactor expansion is only
/// meant for tiny dimensions.
pub const MAX_DIMENSION: usize = 3;

#[derive(Clone)]
pub struct Matrix {
    ring: RingRef,
    n: usize,
    entries: Vec<Elem>,
}

impl PartialEq for Matrix {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.ring, &other.ring) && self.n == other.n && self.entries == other.entries
    }
}

impl Eq for Matrix {}

impl fmt::Debug for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Matrix[{}] over {}", self.render(), self.ring.spec())
    }
}

fn check_dimension(n: usize) -> Result<()> {
    if n == 0 || n > MAX_DIMENSION {
        return Err(Error::Precondition(format!(
            "matrix dimension {n} is outside 1..={MAX_DIMENSION}"
        )));
    }
    Ok(())
}

impl Matrix {
    pub fn new(ring: &RingRef, n: usize, entries: Vec<Elem>) -> Result<Matrix> {
        check_dimension(n)?;
        if entries.len() != n * n || entries.iter().any(|e| e.index() >= ring.size()) {
            return Err(Error::Precondition(
                "matrix entries have the wrong shape".into(),
            ));
        }
        Ok(Matrix {
            ring: Arc::clone(ring),
            n,
            entries,
        })
    }

    pub fn identity(ring: &RingRef, n: usize) -> Result<Matrix> {
        let entries = (0..n * n)
            .map(|k| {
                if k / n == k % n {
                    ring.one()
                } else {
                    ring.zero()
                }
            })
            .collect();
        Matrix::new(ring, n, entries)
    }

    /// Parses rows separated by `;` and entries by `,`, e.g. `1,x;0,1`.
    pub fn parse(ring: &RingRef, text: &str) -> Result<Matrix> {
        let rows: Vec<&str> = text.split(';').collect();
        let n = rows.len();
        let mut entries = Vec::with_capacity(n * n);
        for row in rows {
            let cells: Vec<&str> = row.split(',').collect();
            if cells.len() != n {
                return Err(Error::Precondition(format!(
                    "matrix `{text}` is not square"
                )));
            }
            for cell in cells {
                entries.push(ring.parse_elem(cell)?);
            }
        }
        Matrix::new(ring, n, entries)
    }

    pub fn ring(&self) -> &RingRef {
        &self.ring
    }

    pub fn dimension(&self) -> usize {
        self.n
    }

    pub fn entries(&self) -> &[Elem] {
        &self.entries
    }

    pub fn get(&self, i: usize, j: usize) -> Elem {
        self.entries[i * self.n + j]
    }

    pub fn mul(&self, other: &Matrix) -> Matrix {
        assert!(self.n == other.n && Arc::ptr_eq(&self.ring, &other.ring));
        let (r, n) = (&self.ring, self.n);
        let entries = (0..n * n)
            .map(|k| {
                let (i, j) = (k / n, k % n);
                (0..n).fold(r.zero(), |acc, l| {
                    r.add(acc, r.mul(self.get(i, l), other.get(l, j)))
                })
            })
            .collect();
        Matrix {
            ring: Arc::clone(r),
            n,
            entries,
        }
    }

    pub fn scale(&self, c: Elem) -> Matrix {
        Matrix {
            ring: Arc::clone(&self.ring),
            n: self.n,
            entries: self.entries.iter().map(|&e| self.ring.mul(c, e)).collect(),
        }
    }

    pub fn is_identity(&self) -> bool {
        let r = &self.ring;
        (0..self.n * self.n).all(|k| {
            self.entries[k]
                == if k / self.n == k % self.n {
                    r.one()
                } else {
                    r.zero()
                }
        })
    }

    fn minor(&self, row: usize, col: usize) -> Matrix {
        let n = self.n;
        let entries = (0..n * n)
            .filter(|k| k / n != row && k % n != col)
            .map(|k| self.entries[k])
            .collect();
        Matrix {
            ring: Arc::clone(&self.ring),
            n: n - 1,
            entries,
        }
    }

    /// Determinant by cofactor expansion along the first row.
    pub fn det(&self) -> Elem {
        let r = &self.ring;
        if self.n == 1 {
            return self.entries[0];
        }
        (0..self.n).fold(r.zero(), |acc, j| {
            let term = r.mul(self.get(0, j), self.minor(0, j).det());
            if j % 2 == 0 {
                r.add(acc, term)
            } else {
                r.sub(acc, term)
            }
        })
    }

    /// Transpose of the cofactor matrix.
    pub fn adjugate(&self) -> Matrix {
        let (r, n) = (&self.ring, self.n);
        let entries = if n == 1 {
            vec![r.one()]
        } else {
            (0..n * n)
                .map(|k| {
                    let (i, j) = (k / n, k % n);
                    let c = self.minor(j, i).det();
                    if (i + j) % 2 == 0 {
                        c
                    } else {
                        r.neg(c)
                    }
                })
                .collect()
        };
        Matrix {
            ring: Arc::clone(r),
            n,
            entries,
        }
    }

    pub fn is_invertible(&self) -> bool {
        self.ring.is_unit(self.det())
    }

    /// `det(A)^-1 * adj(A)`, certified as a two-sided inverse; `None` when
    /// the determinant is not a unit.
    pub fn inverse(&self) -> Result<Option<Matrix>> {
        let Some(d) = self.ring.inverse(self.det()) else {
            return Ok(None);
        };
        let inv = self.adjugate().scale(d);
        if !self.mul(&inv).is_identity() || !inv.mul(self).is_identity() {
            return Err(Error::defect(format!(
                "adjugate inverse of [{}] fails verification",
                self.render()
            )));
        }
        Ok(Some(inv))
    }

    /// Applies a ring map entrywise.
    pub fn map(&self, p: &SurjectiveHom) -> Matrix {
        assert!(Arc::ptr_eq(&self.ring, p.source()));
        Matrix {
            ring: Arc::clone(p.target()),
            n: self.n,
            entries: self.entries.iter().map(|&e| p.apply(e)).collect(),
        }
    }

    /// Rows separated by `;`, entries by `,`.
    pub fn render(&self) -> String {
        (0..self.n)
            .map(|i| {
                (0..self.n)
                    .map(|j| self.ring.render(self.get(i, j)))
                    .collect::<Vec<_>>()
                    .join(",")
            })
            .collect::<Vec<_>>()
            .join(";")
    }

    pub fn rows(&self) -> Vec<Vec<String>> {
        (0..self.n)
            .map(|i| {
                (0..self.n)
                    .map(|j| self.ring.render(self.get(i, j)))
                    .collect()
            })
            .collect()
    }
}

fn check_lift_preconditions(p: &SurjectiveHom, b: &Matrix) -> Result<()> {
    if !Arc::ptr_eq(b.ring(), p.target()) {
        return Err(Error::Precondition(
            "matrix is not over the target ring".into(),
        ));
    }
    if !p.kernel().members().is_subset(radical_members(p.source())?) {
        return Err(Error::Precondition(format!(
            "kernel {} is not inside the radical of {}",
            p.kernel().render(),
            p.source().spec()
        )));
    }
    if !b.is_invertible() {
        return Err(Error::Precondition(format!(
            "[{}] is not invertible over {}",
            b.render(),
            p.target().spec()
        )));
    }
    Ok(())
}

fn certify_lift(lift: Matrix) -> Result<Matrix> {
    if lift.inverse()?.is_none() {
        return Err(Error::defect(format!(
            "lift [{}] over {} is not invertible",
            lift.render(),
            lift.ring().spec()
        )));
    }
    Ok(lift)
}

/// Lifts an invertible matrix over the target of `p` entrywise by minimal
/// preimages. When the kernel lies in the radical every lift is invertible;
/// the result is checked.
pub fn gl_lift(p: &SurjectiveHom, b: &Matrix) -> Result<Matrix> {
    check_lift_preconditions(p, b)?;
    let entries = b.entries().iter().map(|&e| p.min_preimage(e)).collect();
    certify_lift(Matrix::new(p.source(), b.dimension(), entries)?)
}

/// Every entrywise lift of `b`, each certified invertible.
pub fn all_lifts(p: &SurjectiveHom, b: &Matrix) -> Result<Vec<Matrix>> {
    check_lift_preconditions(p, b)?;
    let kernel = p.kernel().elements().collect::<Vec<_>>();
    let cells = b.entries().len();
    let count = (kernel.len() as u128).pow(cells as u32);
    let limits = p.source().limits();
    limits.check("matrix lift family", count, limits.matrix_scan)?;
    let base: Vec<Elem> = b.entries().iter().map(|&e| p.min_preimage(e)).collect();
    let src = p.source();
    (0..count as usize)
        .map(|mut k| {
            let entries = base
                .iter()
                .map(|&e| {
                    let shift = kernel[k % kernel.len()];
                    k /= kernel.len();
                    src.add(e, shift)
                })
                .collect();
            certify_lift(Matrix::new(src, b.dimension(), entries)?)
        })
        .collect()
}

/// A uniformly random entrywise lift of `b`, certified invertible.
pub fn random_lift(p: &SurjectiveHom, b: &Matrix, rng: &mut impl Rng) -> Result<Matrix> {
    check_lift_preconditions(p, b)?;
    let kernel = p.kernel().elements().collect::<Vec<_>>();
    let src = p.source();
    let entries = b
        .entries()
        .iter()
        .map(|&e| src.add(p.min_preimage(e), kernel[rng.gen_range(0..kernel.len())]))
        .collect();
    certify_lift(Matrix::new(src, b.dimension(), entries)?)
}

/// A uniformly random matrix over `ring`.
pub fn random_matrix(ring: &RingRef, n: usize, rng: &mut impl Rng) -> Result<Matrix> {
    let entries = (0..n * n)
        .map(|_| ring.elem(rng.gen_range(0..ring.size())))
        .collect();
    Matrix::new(ring, n, entries)
}

/// `M_n(R)` with its elements numbered in mixed radix, first entry most
/// significant. Sets of matrices are [`ElemSet`]s over these indices.
#[derive(Clone)]
pub struct MatrixRing {
    ring: RingRef,
    n: usize,
    size: usize,
    table: OnceLock<Vec<u32>>,
}

impl fmt::Debug for MatrixRing {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "M_{}({})", self.n, self.ring.spec())
    }
}

impl MatrixRing {
    pub fn new(ring: &RingRef, n: usize) -> Result<MatrixRing> {
        check_dimension(n)?;
        let limits = ring.limits();
        let size = (ring.size() as u128).pow((n * n) as u32);
        limits.check("matrix ring scan", size, limits.matrix_scan)?;
        Ok(MatrixRing {
            ring: Arc::clone(ring),
            n,
            size: size as usize,
            table: OnceLock::new(),
        })
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn dimension(&self) -> usize {
        self.n
    }

    pub fn base(&self) -> &RingRef {
        &self.ring
    }

    pub fn matrix(&self, index: usize) -> Matrix {
        assert!(index < self.size);
        let q = self.ring.size();
        let mut entries = vec![self.ring.zero(); self.n * self.n];
        let mut k = index;
        for slot in entries.iter_mut().rev() {
            *slot = self.ring.elem(k % q);
            k /= q;
        }
        Matrix {
            ring: Arc::clone(&self.ring),
            n: self.n,
            entries,
        }
    }

    pub fn index_of(&self, m: &Matrix) -> usize {
        assert!(m.n == self.n && Arc::ptr_eq(&m.ring, &self.ring));
        let q = self.ring.size();
        m.entries.iter().fold(0, |acc, e| acc * q + e.index())
    }

    pub fn matrices(&self) -> impl Iterator<Item = Matrix> + '_ {
        (0..self.size).map(|i| self.matrix(i))
    }

    pub fn set_of<'a>(&self, ms: impl IntoIterator<Item = &'a Matrix>) -> ElemSet {
        ElemSet::from_elems(
            self.size,
            ms.into_iter()
                .map(|m| Elem::from_index(self.index_of(m) as u32)),
        )
    }

    pub fn members(&self, set: &ElemSet) -> Vec<Matrix> {
        set.iter().map(|e| self.matrix(e.index())).collect()
    }

    fn product_table(&self) -> &[u32] {
        self.table.get_or_init(|| {
            let all: Vec<Matrix> = self.matrices().collect();
            let mut table = Vec::with_capacity(self.size * self.size);
            for x in &all {
                for y in &all {
                    table.push(self.index_of(&x.mul(y)) as u32);
                }
            }
            table
        })
    }

    fn check_quadratic_scan(&self) -> Result<()> {
        let limits = self.ring.limits();
        limits.check(
            "matrix pair scan",
            (self.size as u128).pow(2),
            limits.matrix_scan.saturating_mul(limits.matrix_scan),
        )
    }

    /// Two-sided saturation `{X : XY and YX both in W for some Y}`.
    pub fn two_sided_saturate(&self, w: &ElemSet) -> Result<ElemSet> {
        self.check_quadratic_scan()?;
        assert_eq!(w.universe(), self.size);
        if w.is_empty() {
            return Ok(ElemSet::empty(self.size));
        }
        let table = self.product_table();
        let n = self.size;
        Ok(ElemSet::from_predicate(n, |x| {
            let x = x.index();
            (0..n).any(|y| {
                w.contains(Elem::from_index(table[x * n + y]))
                    && w.contains(Elem::from_index(table[y * n + x]))
            })
        }))
    }

    /// The invertible matrices, by determinant.
    pub fn units(&self) -> ElemSet {
        ElemSet::from_predicate(self.size, |e| self.matrix(e.index()).is_invertible())
    }

    /// Searches for `X, Y` with `XY = 1` but `YX != 1`.
    pub fn dedekind_finite_counterexample(&self) -> Result<Option<(Matrix, Matrix)>> {
        self.check_quadratic_scan()?;
        let table = self.product_table();
        let one = self.index_of(&Matrix::identity(&self.ring, self.n)?) as u32;
        let n = self.size;
        for x in 0..n {
            for y in 0..n {
                if table[x * n + y] == one && table[y * n + x] != one {
                    return Ok(Some((self.matrix(x), self.matrix(y))));
                }
            }
        }
        Ok(None)
    }

    pub fn dedekind_finite_check(&self) -> Result<bool> {
        Ok(self.dedekind_finite_counterexample()?.is_none())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::{build_ring_str, ideal_closure, quotient_ring};

    fn z4_to_z2() -> SurjectiveHom {
        let r = build_ring_str("Z/4").unwrap();
        quotient_ring(&r, &ideal_closure(&r, &[r.elem(2)]))
            .unwrap()
            .1
    }

    #[test]
    fn determinant_examples() {
        let r = build_ring_str("Z/4").unwrap();
        assert_eq!(Matrix::identity(&r, 3).unwrap().det(), r.one());
        assert_eq!(Matrix::parse(&r, "3,1;2,1").unwrap().det(), r.one());
        assert_eq!(Matrix::parse(&r, "2,0;0,2").unwrap().det(), r.zero());
    }

    #[test]
    fn inverse_examples() {
        let r = build_ring_str("Z/4").unwrap();
        let a = Matrix::parse(&r, "3,1;2,1").unwrap();
        assert_eq!(a.inverse().unwrap().unwrap().render(), "1,3;2,3");
        assert!(Matrix::parse(&r, "2,0;0,2")
            .unwrap()
            .inverse()
            .unwrap()
            .is_none());
        let id = Matrix::identity(&r, 2).unwrap();
        assert_eq!(id.inverse().unwrap().unwrap(), id);
    }

    #[test]
    fn determinant_is_multiplicative_on_m2_z2() {
        let r = build_ring_str("Z/2").unwrap();
        let m = MatrixRing::new(&r, 2).unwrap();
        for a in m.matrices() {
            for b in m.matrices() {
                assert_eq!(a.mul(&b).det(), r.mul(a.det(), b.det()));
            }
        }
    }

    #[test]
    fn invertibility_by_det_matches_inverse_search() {
        // Oracle: search M_2(R) for a two-sided inverse.
        for text in ["Z/4", "Z/6", "GF(2)[x]/(x^2)"] {
            let r = build_ring_str(text).unwrap();
            let m = MatrixRing::new(&r, 2).unwrap();
            let all: Vec<Matrix> = m.matrices().collect();
            for a in &all {
                let found = all
                    .iter()
                    .any(|b| a.mul(b).is_identity() && b.mul(a).is_identity());
                assert_eq!(
                    a.inverse().unwrap().is_some(),
                    found,
                    "{text} [{}]",
                    a.render()
                );
            }
        }
    }

    #[test]
    fn three_by_three_inverse() {
        let r = build_ring_str("Z/9").unwrap();
        let a = Matrix::parse(&r, "1,2,3;0,1,4;5,6,0").unwrap();
        assert_eq!(a.det(), r.from_int(1));
        let inv = a.inverse().unwrap().unwrap();
        assert!(a.mul(&inv).is_identity());
    }

    #[test]
    fn lift_examples() {
        let p = z4_to_z2();
        let z2 = p.target();
        let id = Matrix::identity(z2, 2).unwrap();
        assert_eq!(
            gl_lift(&p, &id).unwrap(),
            Matrix::identity(p.source(), 2).unwrap()
        );
        let b = Matrix::parse(z2, "1,1;0,1").unwrap();
        let lift = gl_lift(&p, &b).unwrap();
        assert_eq!(lift.render(), "1,1;0,1");
        assert_eq!(lift.det(), p.source().one());
        let adversarial = Matrix::parse(p.source(), "3,1;2,1").unwrap();
        assert_eq!(adversarial.map(&p), b);
        assert!(adversarial.is_invertible());
        assert_eq!(all_lifts(&p, &b).unwrap().len(), 16);
    }

    #[test]
    fn lift_preconditions() {
        let r = build_ring_str("Z/6").unwrap();
        let (q, p) = quotient_ring(&r, &ideal_closure(&r, &[r.elem(2)])).unwrap();
        let id = Matrix::identity(&q, 2).unwrap();
        assert!(matches!(gl_lift(&p, &id), Err(Error::Precondition(_))));
        let p = z4_to_z2();
        let singular = Matrix::parse(p.target(), "1,1;1,1").unwrap();
        assert!(matches!(
            gl_lift(&p, &singular),
            Err(Error::Precondition(_))
        ));
    }

    #[test]
    fn two_sided_saturation_of_identity_is_gl2() {
        let r = build_ring_str("Z/2").unwrap();
        let m = MatrixRing::new(&r, 2).unwrap();
        let id = Matrix::identity(&r, 2).unwrap();
        let sat = m.two_sided_saturate(&m.set_of([&id])).unwrap();
        assert_eq!(sat, m.units());
        assert_eq!(sat.len(), 6);
        assert!(m
            .two_sided_saturate(&ElemSet::empty(16))
            .unwrap()
            .is_empty());
        let full = ElemSet::full(16);
        assert_eq!(m.two_sided_saturate(&full).unwrap(), full);
    }

    #[test]
    fn two_sided_saturation_is_not_idempotent() {
        // W = {J}, J all ones. The identity lies in W~ (take y = J), so every
        // invertible x lies in (W~)~ via y = x^-1. But x is in W~ only if
        // x^-1 J x = J, which fails for x = [0,1;1,1].
        let r = build_ring_str("Z/2").unwrap();
        let m = MatrixRing::new(&r, 2).unwrap();
        let j = Matrix::parse(&r, "1,1;1,1").unwrap();
        let x = Matrix::parse(&r, "0,1;1,1").unwrap();
        let once = m.two_sided_saturate(&m.set_of([&j])).unwrap();
        let twice = m.two_sided_saturate(&once).unwrap();
        let ix = Elem::from_index(m.index_of(&x) as u32);
        assert!(once.contains(Elem::from_index(
            m.index_of(&Matrix::identity(&r, 2).unwrap()) as u32
        )));
        assert!(!once.contains(ix));
        assert!(twice.contains(ix));
        assert!(j.mul(&x) != x.mul(&j));
    }

    #[test]
    fn dedekind_finite_small_matrix_rings() {
        for text in ["Z/2", "Z/3", "Z/6"] {
            let r = build_ring_str(text).unwrap();
            assert!(MatrixRing::new(&r, 2)
                .unwrap()
                .dedekind_finite_check()
                .unwrap());
            assert!(MatrixRing::new(&r, 1)
                .unwrap()
                .dedekind_finite_check()
                .unwrap());
        }
    }

    #[test]
    fn matrix_ring_guard() {
        let r = build_ring_str("Z/17").unwrap();
        assert!(MatrixRing::new(&r, 2).unwrap_err().is_guard());
        assert!(Matrix::identity(&r, 4).is_err());
    }

    #[test]
    fn index_round_trip() {
        let r = build_ring_str("Z/3").unwrap();
        let m = MatrixRing::new(&r, 2).unwrap();
        for i in 0..m.size() {
            assert_eq!(m.index_of(&m.matrix(i)), i);
        }
        assert_eq!(m.matrix(1).render(), "0,0;0,1");
    }
}
