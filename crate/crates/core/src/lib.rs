//! Exact algebra for checking the n!-theorem circle of identities at desk scale.
//!
//! Everything here is pure computation over exact coefficient fields (the
//! rationals or a prime field). The crate is `no_std` and only needs `alloc`;
//! IO, caching and the command line live in the `nfact` crate.
//!
//! Module map:
//!
//! - [`partition`]: partitions, diagrams, dual partitions and the integers
//!   derived from them.
//! - [`field`], [`poly`], [`echelon`], [`span`], [`linalg`]: the exact engine
//!   (coefficient fields, sparse polynomials, reduced echelon spans, derivative
//!   closures, dense matrices and certified ranks).
//! - [`harmonics`]: the generalized Vandermonde and its derivative span.
//! - [`springer`]: Tanisaki and de Concini–Procesi presentations, graded quotients.
//! - [`tsigma`]: the tensor algebra of two Springer presentations and its
//!   Gorenstein quotient.
//! - [`grfilt`]: the filtration of the coinvariant algebra and its associated graded.
//! - [`charp`]: divided-power closures in positive characteristic.
//! - [`nilpairs`]: explicit principal nilpotent pairs in `sl_n`.
//! - [`hilb`]: monomial ideals in two variables and the one-parameter family.

#![no_std]

extern crate alloc;

pub mod charp;
pub mod echelon;
pub mod error;
pub mod field;
pub mod grfilt;
pub mod harmonics;
pub mod hilb;
pub mod linalg;
pub mod nilpairs;
pub mod partition;
pub mod perm;
pub mod poly;
pub mod span;
pub mod springer;
pub mod tsigma;

pub use error::{Error, Result};
pub use field::{Field, PrimeField, Rationals};
pub use partition::Partition;
pub use poly::{Monomial, Poly};

/// Engine version recorded in every report and cache key.
pub const ENGINE_VERSION: &str = env!("CARGO_PKG_VERSION");
