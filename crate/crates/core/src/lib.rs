//! Exact-arithmetic determinant identities around Chio pivotal condensation
//! and the matrix-tree theorem.
//!
//! - [`ring`]: integers, `Z/m`, and sparse integer polynomials behind one value type.
//! - [`matrix`]: dense matrices, the Leibniz oracle, and the condensation engine.
//! - [`funcmap`]: maps fixing `n`, n-potency, and their trees.
//! - [`identities`]: the derived matrices and exact identity verifiers.
//! - [`arborescence`]: weighted digraphs and arborescence counting.

pub mod arborescence;
pub mod cli;
pub mod error;
pub mod funcmap;
pub mod fuzz;
pub mod identities;
pub mod io;
pub mod limits;
pub mod matrix;
pub mod poly;
pub mod ring;
pub mod verify;

pub use arborescence::WeightedDigraph;
pub use error::{Error, Result};
pub use funcmap::{EndoMap, RootedTree};
pub use identities::{CondensationReport, Theorem};
pub use matrix::{Matrix, Permutation};
pub use poly::Polynomial;
pub use ring::{Ring, RingValue};
