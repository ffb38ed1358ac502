//! Exact Kazhdan-Lusztig combinatorics for affine Weyl groups, and the
//! growth statistics of quantum-group Ext dimensions that are driven by the
//! KL coefficients.
//!
//! The crate is organized bottom-up:
//!
//! * [`roots`]: root systems A through G from Cartan matrices, weights,
//!   the dot action, and the exceptional-l classifier.
//! * [`weyl`]: finite and affine Weyl group elements as integer affine maps,
//!   BFS generation to a length bound, Bruhat order, and the poset of longest
//!   right coset representatives.
//! * [`poly`], [`kl`]: integer polynomials in q and memoized KL tables with
//!   mu-coefficients and an on-disk cache.
//! * [`hecke`]: an independent slow oracle that rebuilds the KL polynomials
//!   through the bar-invariant canonical basis of the Hecke algebra.
//! * [`ext`], [`growth`]: Ext-dimension formulas over the coset poset,
//!   truncated sums and maxima, zigzag bounds, and log-log growth estimates.
//! * [`sym`]: weight multiplicities of symmetric powers of the nilpotent
//!   radical by exact partition counting.
//! * [`a1`]: closed-form rank-one answers used as an end-to-end oracle.

pub mod a1;
pub mod error;
pub mod ext;
pub mod growth;
pub mod hecke;
pub mod kl;
pub mod poly;
pub mod roots;
pub mod sym;
pub mod weyl;

pub use error::Error;
pub use poly::Poly;
pub use roots::{RootSystem, RsType, Weight};
pub use weyl::{AffineElement, GroupTable};
