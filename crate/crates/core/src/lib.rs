//! Exact-arithmetic engine for Rees algebras on polynomial rings over ℚ and 𝔽_p.
//!
//! The crate is organized bottom-up:
//!
//! * [`field`], [`monomial`], [`ring`], [`poly`] — sparse multivariate
//!   polynomials with exact coefficients, point-local order functions and
//!   Hasse (divided-power) derivatives;
//! * [`gcd`], [`groebner`], [`matrix`], [`resultant`] — supporting exact
//!   algebra: gcds, ideal membership, fraction-free determinants and
//!   Sylvester resultants;
//! * [`rees`] — weighted-generator Rees algebras, their singular loci,
//!   orders, differential closures, twists and joins;
//! * [`elim`] — admissible projections, elimination algebras, the
//!   τ-invariant and nested-sequence determinants;
//! * [`transform`] — monoidal transformations by coordinate charts and
//!   exceptional-divisor bookkeeping;
//! * [`invariants`] — the stratifying functions: `ord_dm`, `w_ord`, the
//!   t-function, twisted algebras and γ.
//!
//! The crate is `no_std` (with `alloc`); IO, file formats and the session
//! interpreter live in the companion `rees-elim` crate.
//!
//! ```
//! use rees_core::{FieldSpec, PointSpec, Rat, ReesAlg, Ring};
//! use rees_core::parse::parse_poly;
//! use rees_core::invariants::ord_dm;
//!
//! // A surface singularity over F2 whose order function alone is too
//! // coarse: the differential closure and one projection expose more.
//! let ring = Ring::new(
//!     FieldSpec::with_characteristic(2)?,
//!     vec!["X".into(), "Y".into(), "Z".into()],
//! )?;
//! let f = parse_poly(&ring, "Z^2 + Y^7 + Y X^4")?;
//! let g = ReesAlg::new(&ring, vec![(f, Rat::new(2, 1))])?.diff_closure()?;
//! let origin = PointSpec::origin(&ring);
//!
//! assert_eq!(g.ord_at(&origin)?, Rat::new(1, 1));      // simple point
//! assert_eq!(ord_dm(&g, &origin, 1)?, Rat::new(4, 1)); // downstairs order
//! # Ok::<(), rees_core::Error>(())
//! ```

#![cfg_attr(not(test), no_std)]

extern crate alloc;

pub mod elim;
pub mod error;
pub mod field;
pub mod gcd;
pub mod groebner;
pub mod invariants;
pub mod matrix;
pub mod monomial;
pub mod parse;
pub mod poly;
pub mod probe;
pub mod rees;
pub mod resultant;
pub mod ring;
pub mod transform;

pub use elim::{ElimChain, ElimMode, Tau, Transversal};
pub use error::Error;
pub use field::{FieldSpec, Scalar};
pub use invariants::{GammaValue, OrdInf, TValue};
pub use monomial::Monomial;
pub use poly::Poly;
pub use rees::ReesAlg;
pub use ring::{PointSpec, Ring};
pub use transform::{BasicObject, CenterSpec, Divisor};

/// Weights and order values are nonnegative rationals with small numerators.
pub type Rat = num_rational::Ratio<u64>;

/// Result alias used throughout the crate.
pub type Result<T> = core::result::Result<T, Error>;
