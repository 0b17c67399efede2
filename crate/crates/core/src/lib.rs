//! Exact computation of the intersection curve of two rational parametric
//! surfaces, one of which is projectable.
//!
//! The pipeline:
//!
//! 1. [`implicitize`] the projectable surface `S1` into `F(x,y,z) = 0` by two
//!    successive resultants, after an optional ruled-surface reparametrization.
//! 2. Substitute `S2(v,t)` into `F` to obtain a plane algebraic curve
//!    `G(v,t) = 0` ([`implicitize::plane_curve`]).
//! 3. Compute the topology graph of `G = 0` inside a rational box with
//!    certified real-root isolation ([`plane_topology`]).
//! 4. Refine the graph with self-intersection and irregular parameters, lift
//!    it to a space topology graph homeomorphic to the intersection curve
//!    ([`space_topology`]).
//! 5. Subdivide slab-wise to emit an ε-accurate polyline set ([`approx`]).
//!
//! All arithmetic up to the final coordinate rendering is exact over ℚ.

pub mod approx;
pub mod error;
pub mod geom;
pub mod implicitize;
pub mod interval;
pub mod io;
pub mod pipeline;
pub mod plane_topology;
pub mod poly;
pub mod rat;
pub mod roots;
pub mod space_topology;
pub mod surface;

pub use error::{Error, Result};
pub use poly::MultiPoly;
pub use rat::Rat;
