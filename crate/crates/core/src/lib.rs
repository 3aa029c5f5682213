//! Primeness and semiprimeness of algebras of finite discrete groupoids,
//! inverse semigroup algebras and Leavitt path algebras of finite graphs.
//!
//! Every decision procedure is paired with an independent check: exhaustive
//! search over a finite coefficient ring, or a second algorithm for the same
//! graph or groupoid property.

pub mod algebra;
pub mod corpus;
pub mod graph;
pub mod group;
pub mod groupoid;
pub mod par;
pub mod ring;
pub mod semigroup;

pub use algebra::{AlgebraElem, AlgebraError, AlgebraHandle, ConvolutionAlgebra, PrimenessVerdict};
pub use graph::DirectedGraph;
pub use group::{FiniteGroup, GroupSpec};
pub use groupoid::{Bisection, FiniteGroupoid, GroupoidData};
pub use par::ExecMode;
pub use ring::{RingElem, RingSpec};
pub use semigroup::InverseSemigroup;
