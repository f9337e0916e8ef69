//! Executable finite models of the combinatorics behind double-categorical
//! homotopy theory: finite categories and posets, truncated (bi)simplicial
//! sets, finite double categories with their horizontal and double nerves,
//! pushouts along box products of sieves, Grothendieck constructions, and
//! simplicial homology used as a weak-equivalence refuter.
//!
//! Everything here is finite and exhaustively checkable. Values are immutable
//! once built and can be shared between threads.

pub mod cat;
pub mod dblcat;
pub mod error;
pub mod fixtures;
pub mod groth;
pub mod homology;
pub mod json;
pub mod limits;
pub mod pushout;
pub mod simplex;
pub mod sset;

pub use cat::{FinCat, FinFunctor, FinPoset, PosetInclusion};
pub use dblcat::{DblFunctor, FinDblCat};
pub use error::{Error, Result};
pub use sset::{BiTruncSSet, SimplicialMap, TruncSSet};
