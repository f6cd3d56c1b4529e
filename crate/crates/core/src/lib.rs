//! Exact computations with graded modules over k[x_0..x_n], k = GF(p):
//! free resolutions, Ext and local cohomology, sheaf cohomology tables of
//! bundles on projective space, and the Buchsbaum classification of rank-2
//! quasi-Buchsbaum bundles on P^3.

pub mod algebra;
pub mod buchsbaum;
pub mod bundles;
pub mod cli;
pub mod cohomology;
pub mod error;
pub mod graded;
pub mod multiproj;
pub mod verify;

pub use error::{Error, Result};
