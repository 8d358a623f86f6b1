//! Exact machinery for relating the Chern numbers of a stably almost
//! complex manifold to those of its virtual Chern submanifolds.
//!
//! - [`symfunc`]: partitions, symmetric functions, the bigraded ring
//!   `Λ[y] ⊗ Λ[z] ⊗ ℚ`.
//! - [`pseries`]: truncated power series and the named characteristic series.
//! - [`cobord`]: rational cobordism classes of a point, genera, the
//!   Mishchenko logarithm.
//! - [`geommodel`]: products of projective spaces and the virtual
//!   submanifold oracle.
//! - [`theorems`]: both sides of every relation, and verification reports.

pub mod cobord;
pub mod error;
pub mod geommodel;
pub mod pseries;
pub mod ring;
pub mod symfunc;
pub mod theorems;

pub use error::{Error, Result};
pub use ring::{Q, QPoly, Ring};
