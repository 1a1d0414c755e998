//! Exact root combinatorics for twisted affine Lie superalgebras with nonzero
//! odd part: root tables, structural checks, shadow configurations and the
//! parabolic machinery built on them.

pub mod cli;
pub mod error;
pub mod exec;
pub mod lattice;
pub mod parabolic;
pub mod rootsys;
pub mod shadow;
pub mod suite;

pub use error::{Error, Result};
pub use exec::Exec;
pub use lattice::{BasisIndex, FormValue, RootVector};
pub use rootsys::{AffineFamily, AlgebraParams, Component, ProgressionSet};
