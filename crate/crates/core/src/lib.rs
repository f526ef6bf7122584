//! Exact arithmetic on finite commutative rings, built to check when a ring
//! surjection `R -> R/I` is also surjective on unit groups.
//!
//! Every ring is a finite carrier whose elements are canonical indices
//! ([`Elem`]). On top of that the crate provides ideals and quotients, the
//! Jacobson radical and maximal spectrum, semi-inverses and the `rho`
//! function, semi-unit decompositions, four independent checks of the unit
//! lifting property, CRT-based unit lifting, and `GL_n` lifting for small
//! matrices. The two infinite rings `Z` and `GF(p)[x]` are available as
//! [`PresentedRing`]s through their finite quotients.
//!
//! ```
//! use unitsurj::{build_ring_str, star};
//!
//! let ring = build_ring_str("Z/12").unwrap();
//! assert_eq!(ring.render_set(ring.units()), "{1, 5, 7, 11}");
//! assert!(star::ring_has_star(&ring).unwrap().holds);
//! ```

pub mod corpus;
pub mod error;
pub mod matrix;
pub mod ring;
pub mod semiunit;
pub mod spectrum;
pub mod star;

pub use error::{Error, Result};
pub use matrix::{Matrix, MatrixRing};
pub use ring::{
    build_ring, build_ring_str, ideal_closure, quotient_ring, Elem, ElemLiteral, ElemSet,
    FiniteRing, Ideal, Limits, PresentedElem, PresentedRing, RingRef, RingSpec, SurjectiveHom,
};
pub use semiunit::{RhoValue, SemiUnitDecomposition};
pub use star::{StarMethod, StarReport};
