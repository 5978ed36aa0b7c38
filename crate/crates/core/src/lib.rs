//! Exact symbolic-combinatorics engine for the type-D_n Jacobi-Trudi
//! determinant and its lattice-path / tableau expansions.
//!
//! The pipeline computed and cross-checked by this crate:
//!
//! 1. determinant of h- or e-entries over the ring of `z`-variables,
//! 2. signed Gessel-Viennot sum over tuples of D_n lattice paths,
//! 3. first sum over tuples without ordinary intersections,
//! 4. positive sum over tuples without odd regions,
//! 5. third sum over identity-permutation tuples,
//! 6. tableau sum over skew tableaux with the extra rule.
//!
//! All comparisons are exact: equality in the quotient ring is decided by a
//! monomial specialization, never by floating point.

pub mod entry;
pub mod partition;
pub mod ring;
pub mod series;
pub mod determinant;
pub mod paths;
pub mod regions;
pub mod folding;
pub mod tableaux;
pub mod graphs;
pub mod render;
pub mod error;

pub use entry::{Entry, EntryOrd};
pub use error::Error;
pub use partition::{Partition, SkewDiagram};
pub use ring::{ZMonomial, ZPolynomial, ZVariable};
