//! Bases of size two for finite permutation groups.
//!
//! The crate computes regular suborbits, the probability that a random pair of points
//! is not a base, Saxl graphs and their clique structure, and closed-form base criteria
//! for the two families of actions of `PSL(2,q)` on pairs of points of the projective line
//! and on pairs of orthogonal points of a unitary plane.

pub mod actions;
pub mod caps;
pub mod criteria;
pub mod engine;
pub mod error;
pub mod gf;
pub mod perm;

pub use caps::Caps;
pub use error::{Result, SaxlError};
