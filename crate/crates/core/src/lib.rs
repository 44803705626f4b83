//! Incidence geometry over finite fields in characteristic p.
//!
//! The crate builds exact GF(p^n) arithmetic, sparse polynomials in three
//! variables with Hasse-derivative calculus, the combinatorics of lines and planes
//! in AG(3, q), and on top of those:
//!
//! * classification of surface points as singular, flexy or smooth non-flexy,
//! * enumeration of the lines contained in a surface,
//! * the Heisenberg surface and its generalization over GF(p^n), which carry
//!   `q^2` lines on only about `q^(3 - 1/n)` points,
//! * the polynomial-method decomposition used to bound incidence configurations,
//!   replayed on concrete data with every inequality checked in exact arithmetic.
//!
//! ```
//! use flexgeom::constructions::heisenberg;
//! use flexgeom::Budget;
//!
//! let x = heisenberg(2).unwrap();
//! assert_eq!(x.rational_points(1, &Budget::default()).unwrap().len(), 32);
//! ```

pub mod error;
pub mod field;
pub mod geom;
pub mod io;
pub mod linalg;
pub mod mpoly;
pub mod polymethod;
pub mod search;
pub mod surface;
pub mod constructions;
pub mod unipoly;

pub use error::{Error, Result};
pub use field::{Field, FieldElem, FieldParams};
pub use geom::{Line3, PlaneAff, Point3};
pub use mpoly::{DividedPower, Monomial, MultiPoly, Var};
pub use surface::{Budget, Surface};
pub use unipoly::UniPoly;

#[cfg(doctest)]
mod book {
    #[doc = include_str!("../../../README.md")]
    mod readme {}
    #[doc = include_str!("../../../book/src/introduction.md")]
    mod introduction {}
    #[doc = include_str!("../../../book/src/fields.md")]
    mod fields {}
    #[doc = include_str!("../../../book/src/polynomials.md")]
    mod polynomials {}
    #[doc = include_str!("../../../book/src/geometry.md")]
    mod geometry {}
    #[doc = include_str!("../../../book/src/surfaces.md")]
    mod surfaces {}
    #[doc = include_str!("../../../book/src/constructions.md")]
    mod constructions {}
    #[doc = include_str!("../../../book/src/search.md")]
    mod search {}
    #[doc = include_str!("../../../book/src/polymethod.md")]
    mod polymethod {}
    #[doc = include_str!("../../../book/src/cli.md")]
    mod cli {}
}
