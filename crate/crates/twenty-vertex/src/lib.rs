//! The integrable twenty-vertex model on a triangle with domain-wall boundaries.
//!
//! * [`lattice`]: the triangle `T_m`, its boundary conditions, path configurations and the
//!   maps between boundary conditions.
//! * [`enumerate`]: exhaustive and transfer-matrix counting, weighted partition functions,
//!   refined statistics and exact sampling.
//! * [`exact6v`]: the six-vertex determinant route to the same counts.
//! * [`weights`]: integrable weights and their symmetries.
//! * [`arctic`]: tangent-method arctic curves.
//!
//! ```
//! use twenty_vertex::{caps::Caps, enumerate::count_transfer, lattice::{BoundaryKind, TriangleDomain}};
//!
//! let d = TriangleDomain::new(4, BoundaryKind::Dwbc3).unwrap();
//! let c = count_transfer(&d, &Caps::default()).unwrap();
//! assert_eq!(c.total, 24u32.into());
//! ```

pub mod arctic;
pub mod caps;
pub mod enumerate;
pub mod error;
pub mod exact6v;
pub mod lattice;
pub mod poly;
pub mod weights;

pub use caps::Caps;
pub use error::{Error, Result};
pub use lattice::{BoundaryKind, PathConfig, TriangleDomain};
pub use weights::WeightParams;

#[cfg(doctest)]
mod book {
    #[doc = include_str!("../../../book/src/introduction.md")]
    mod introduction {}
    #[doc = include_str!("../../../book/src/lattice.md")]
    mod lattice {}
    #[doc = include_str!("../../../book/src/counting.md")]
    mod counting {}
    #[doc = include_str!("../../../book/src/weights.md")]
    mod weights {}
    #[doc = include_str!("../../../book/src/sampling.md")]
    mod sampling {}
    #[doc = include_str!("../../../book/src/arctic.md")]
    mod arctic {}
    #[doc = include_str!("../../../book/src/cli.md")]
    mod cli {}
}
