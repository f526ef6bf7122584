use std::collections::BTreeSet;

use proptest::prelude::*;

use unitsurj::spectrum::{crt_solve, crt_solve_scan, maximal_ideals, CongruenceSystem};
use unitsurj::star::{saturate, saturate_by_scan};
use unitsurj::{build_ring_str, ideal_closure, Elem, ElemSet, Matrix, RingRef};

fn ring(text: &str) -> RingRef {
    build_ring_str(text).unwrap()
}

fn set_of(r: &RingRef, idx: &BTreeSet<usize>) -> ElemSet {
    ElemSet::from_elems(r.size(), idx.iter().map(|&i| r.elem(i)))
}

fn members(s: &ElemSet) -> BTreeSet<usize> {
    s.iter().map(Elem::index).collect()
}

const RINGS: [&str; 6] = [
    "Z/36",
    "Z/30",
    "GF(2)[x]/(x^3+x)",
    "GF(3)[x]/(x^2)",
    "prod(Z/4,Z/6)",
    "prod(Z/2,GF(2)[x]/(x^2),Z/3)",
];

proptest! {
    #[test]
    fn elem_set_agrees_with_btreeset(
        universe in 1usize..300,
        a in prop::collection::btree_set(0usize..300, 0..80),
        b in prop::collection::btree_set(0usize..300, 0..80),
    ) {
        let a: BTreeSet<usize> = a.into_iter().filter(|&i| i < universe).collect();
        let b: BTreeSet<usize> = b.into_iter().filter(|&i| i < universe).collect();
        let r = ring(&format!("Z/{}", universe.max(2)));
        let (sa, sb) = (set_of(&r, &a), set_of(&r, &b));
        prop_assert_eq!(sa.len(), a.len());
        prop_assert_eq!(members(&sa.union(&sb)), a.union(&b).copied().collect());
        prop_assert_eq!(members(&sa.intersection(&sb)), a.intersection(&b).copied().collect());
        prop_assert_eq!(members(&sa.difference(&sb)), a.difference(&b).copied().collect());
        prop_assert_eq!(sa.is_subset(&sb), a.is_subset(&b));
        prop_assert_eq!(sa.first().map(Elem::index), a.first().copied());
    }

    #[test]
    fn saturation_is_a_closure(k in 0usize..RINGS.len(), w in prop::collection::btree_set(0usize..24, 0..6)) {
        let r = ring(RINGS[k]);
        let w = set_of(&r, &w.into_iter().map(|i| i % r.size()).collect());
        let once = saturate(&r, &w);
        prop_assert_eq!(&once, &saturate_by_scan(&r, &w));
        prop_assert!(w.is_subset(&once));
        prop_assert_eq!(saturate(&r, &once), once);
    }

    #[test]
    fn ideal_closure_is_idempotent(k in 0usize..RINGS.len(), gens in prop::collection::vec(0usize..24, 0..3)) {
        let r = ring(RINGS[k]);
        let gens: Vec<Elem> = gens.into_iter().map(|i| r.elem(i % r.size())).collect();
        let i = ideal_closure(&r, &gens);
        let again = ideal_closure(&r, &i.members().to_vec());
        prop_assert_eq!(again.members(), i.members());
        prop_assert!(gens.iter().all(|&g| i.contains(g)));
    }

    #[test]
    fn determinant_is_multiplicative(n in 2usize..=3, a in prop::collection::vec(0u32..36, 9), b in prop::collection::vec(0u32..36, 9)) {
        let r = ring("Z/36");
        let m = |v: &[u32]| Matrix::new(&r, n, v[..n * n].iter().map(|&x| r.elem(x as usize)).collect()).unwrap();
        let (x, y) = (m(&a), m(&b));
        prop_assert_eq!(x.mul(&y).det(), r.mul(x.det(), y.det()));
        prop_assert_eq!(x.is_invertible(), r.is_unit(x.det()));
    }

    #[test]
    fn crt_fast_path_matches_scan(n in 2u64..=200, targets in prop::collection::vec(0usize..200, 4)) {
        let r = ring(&format!("Z/{n}"));
        let mut sys = CongruenceSystem::new();
        for (m, t) in maximal_ideals(&r).unwrap().iter().zip(targets) {
            sys.push(m.clone(), r.elem(t % r.size()));
        }
        let fast = crt_solve(&r, &sys).unwrap();
        prop_assert!(sys.is_satisfied_by(&r, fast));
        prop_assert_eq!(fast, crt_solve_scan(&r, &sys).unwrap());
    }
}
