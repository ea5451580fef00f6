//! Exact computation of the center of a finite group algebra.
//!
//! For a finite group the center of its group algebra is a commutative
//! algebra spanned by conjugacy-class sums.  Evaluating that algebra at its
//! finite set of points yields, with no floating point anywhere, the
//! primitive central idempotents, irreducible dimensions, character table,
//! explicit irreducible representation matrices, and (for symmetric groups)
//! the decomposition of d-way arrays into symmetry classes.
//!
//! The pipeline: build a multiplication table ([`group`]), form class-sum
//! structure constants ([`classalg`]), recover the point set by joint
//! eigendecomposition modulo a split prime and exact lifting ([`solver`]),
//! invert the point matrix into idempotents and characters ([`idempotent`]),
//! and work inside the full group algebra for component bases, rank tests
//! and representation extraction ([`regular`]).  [`symmetry`] specializes
//! everything to symmetric groups acting on dense arrays.

pub mod classalg;
pub mod cli;
pub mod group;
pub mod idempotent;
pub mod io;
pub mod linalg;
pub mod modp;
pub mod pipeline;
pub mod regular;
pub mod scalar;
pub mod solver;
pub mod symmetry;
