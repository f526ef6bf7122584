//! Finite commutative rings, their ideals and quotients, and the two
//! presented infinite rings `Z` and `GF(p)[x]`.

mod finite;
mod ideal;
mod poly;
mod presented;
mod quotient;
mod spec;

pub use finite::{
    build_ring, build_ring_str, build_ring_with, Elem, ElemSet, FiniteRing, Limits, RingRef,
    UnitOrbits,
};
pub use ideal::{enumerate_ideals, ideal_closure, is_ideal, Ideal};
pub use presented::{PresentedElem, PresentedQuotient, PresentedRing};
pub use quotient::{quotient_ring, SurjectiveHom};
pub use spec::{parse_elem_list, parse_elem_literal, parse_ring_spec, ElemLiteral, RingSpec};
