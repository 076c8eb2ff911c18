//! Exact divisor-level combinatorics of Weil numbers.
//!
//! A Weil `q`-number living in a multiquadratic CM field `K` with Galois group
//! `G = (Z/2)^k` is represented here only through its divisor: the vector of
//! `p`-adic valuations at the primes above `p`, which after picking one such
//! prime becomes an element of the integral group ring `Z[G]`. Everything this
//! crate computes (Tate coniveau of Frobenius eigenvalues, pair witnesses for
//! algebraic cycles, multiplicative relations between Weil numbers) happens in
//! that group ring, with exact integer arithmetic throughout.
//!
//! The crate is organised bottom-up:
//!
//! * [`group_ring`]: arithmetic in `Z[(Z/2)^k]`, translations, the norm element.
//! * [`weil`]: field contexts, Weil classes, sections and their classification.
//! * [`coniveau`]: eigenvalue monomials on `H^n` of a product of elliptic
//!   curves, Tate versus witnessed coniveau, and the exhaustive verifiers.
//! * [`relations`]: multiplicative relations, the degree-2 relation lattice and
//!   exact membership through Hermite normal form.
//!
//! ```
//! use tate_coniveau::weil::{standard_triple, FieldContext};
//! use tate_coniveau::coniveau::{Factor, ProductSpec};
//!
//! let ctx = FieldContext::standard();
//! let classes = standard_triple(&ctx).unwrap();
//! let spec = ProductSpec::new(ctx, classes.into_iter().map(|c| Factor::new(c, 1)).collect()).unwrap();
//! let report = spec.analyze(3).unwrap();
//! assert_eq!(report.monomials.len(), 20);
//! assert!(report.gaps.is_empty());
//! ```

pub mod coniveau;
pub mod group_ring;
pub mod relations;
pub mod weil;

mod error;
mod limits;

pub use error::{Error, Result};
pub use limits::Limits;
