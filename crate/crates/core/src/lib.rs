//! Mod-2 homology of chain complexes attached to combinatorial objects.
//!
//! The crate computes homology over GF(2) for
//!
//! * orbit complexes of a permutation group acting on the subsets of `[n]`
//!   (invariants / coinvariants, with the down map or the up map),
//! * the complex on partitions fitting in a `k x l` rectangle,
//! * the complex on semistandard tableaux of rectangular shape (plane
//!   partitions in an `r x c x t` box),
//!
//! and certifies explicit algebraic Morse matchings on them. Everything is
//! exact: GF(2) linear algebra on bit-packed rows and big-integer
//! polynomials in `q`.
//!
//! The crate is `no_std` and only needs `alloc`.

#![cfg_attr(not(test), no_std)]

extern crate alloc;

pub mod box_complex;
pub mod complex;
mod error;
pub mod families;
pub mod gf2;
pub mod limits;
pub mod morse;
pub mod orbit_complex;
pub mod permgroup;
pub mod qpoly;
pub mod rect;

pub use complex::GradedComplex;
pub use error::{Error, ParseError, Result};
pub use gf2::F2Matrix;
pub use limits::Limits;
pub use morse::{certify, Matching, MorseReport, SupportedComplex};
pub use orbit_complex::ComplexKind;
pub use permgroup::{GroupSpec, PermGroup, Permutation, SubsetOrbit};
pub use qpoly::QPolynomial;
