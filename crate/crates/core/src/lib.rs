//! Tree approximation of a finite pointed (pseudo-)metric space through its
//! Gromov products, maximum bottleneck capacities between every pair of
//! vertices, and the reductions that turn one into the other.
//!
//! Everything here is a pure function over dense square matrices, so the crate
//! is `no_std` and only needs `alloc`. File formats and the command-line front
//! end live in the `gromtree` crate.
//!
//! The main entry points:
//!
//! * [`metric`]: distance, product and capacity matrices, Gromov products
//!   ([`metric::gprd`], [`metric::igprd`]), [`metric::exte`] and brute-force
//!   [`metric::delta_hyperbolicity`].
//! * [`bottleneck`]: quadratic all-pairs bottleneck paths via a dense maximum
//!   spanning tree, plus a cubic max-min closure used as an oracle.
//! * [`pipeline`]: the approximating tree as `igprd ∘ apbp ∘ gprd`, the
//!   reverse reduction from bottleneck paths, and the quadratic route from an
//!   unweighted graph.
//! * [`treeize`]: an explicit weighted tree realizing a 0-hyperbolic output,
//!   and its Newick serialization.

#![no_std]

extern crate alloc;

pub mod bottleneck;
mod error;
pub mod metric;
pub mod pipeline;
pub mod treeize;
mod util;

pub use error::Error;

pub type Result<T, E = Error> = core::result::Result<T, E>;

/// Absolute tolerance used for real-valued inputs. Inputs made only of
/// half-integers are compared exactly instead.
pub const DEFAULT_TOL: f64 = 1e-9;
