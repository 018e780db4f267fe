//! Exact combinatorics for the finite-dimensional representation theory of
//! the Lie superalgebras osp(2|2n), osp(3|2), D(2,1;α), G(3) and F(4).
//!
//! The crate computes atypicality, weight diagrams and blocks, the
//! L-operator on atypical weights of osp(2|2n), dimensions of even-part,
//! Kac and projective modules, the terms of minimal projective resolutions
//! of simple and Kac modules, and from those the complexity and
//! z-complexity invariants. Every quantity is exact: weights use rationals,
//! dimensions use arbitrary-precision integers and polynomial growth is
//! detected by exact finite differences.
//!
//! ```
//! use superres::{growth, resolutions::ModuleDescriptor};
//!
//! let trivial = ModuleDescriptor::SimplePrincipal { n: 2, label: 0 };
//! let c = growth::complexity(&trivial, growth::Window::default()).unwrap();
//! assert_eq!(c, 5);
//! ```

pub mod blockdata;
pub mod diagrams;
pub mod dimensions;
pub mod error;
pub mod geometry;
pub mod growth;
pub mod loperator;
pub mod resolutions;
pub mod rootdata;
pub mod verify;

pub mod cli;

pub use error::{Error, Result};
pub use rootdata::{Family, SuperWeight};
