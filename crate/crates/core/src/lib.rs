//! A laboratory for permutations that *almost* avoid a pattern.
//!
//! A permutation `t`-almost lies in a class `C` when deleting at most `t` of
//! its entries lands in `C`. The crate checks the enumerative facts known for
//! the classes `Av(231)+1` and `Av(321)+1` several independent ways:
//!
//! - [`perm`]: permutations, pattern containment, deletion, `C+t` membership
//!   and essential entries.
//! - [`sym`]: lexicographic enumeration of `S_n` with rank-range parallel scans.
//! - [`rsk`]: Robinson–Schensted row insertion, shapes and the shape test for
//!   `Av(321)+1`.
//! - [`enumeration`]: Catalan numbers, the hook length formula, closed-form and
//!   brute-force counters, and the structural subsets of `Av(231)+1`.
//! - [`series`]: exact truncated power series and generating functions
//!   rational in `x` and `sqrt(1-4x)`.
//! - [`basis`]: finite bases of `C+t`.
//! - [`machines`]: stack and two-parallel-queue sorting with one-time-use
//!   buffers.
//! - [`verify`]: the invariant suites behind `perm verify`.
//! - [`cli`]: the `perm` command line front end.

pub mod basis;
pub mod cli;
pub mod enumeration;
mod error;
pub mod machines;
pub mod perm;
pub mod rsk;
pub mod series;
pub mod sym;
pub mod verify;

pub use error::{Error, Result};
pub use perm::{EssentialClass, Occurrence, Permutation};
