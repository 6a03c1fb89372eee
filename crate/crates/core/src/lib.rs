//! Locally recoverable binary codes with availability, where the recovering
//! sets of a symbol may overlap in a bounded number of coordinates.
//!
//! - [`gf2`]: bit-packed matrices, rank, nullspaces, codeword enumeration.
//! - [`wzl`]: the subset-incidence `(r, t)` codes.
//! - [`xlrc`]: the Kronecker construction of `(r, t, x)` codes.
//! - [`bounds`]: exact rate and distance bounds and the reference tables.
//! - [`verifier`]: searching for and checking recovering-set families.
//! - [`recovery_graph`]: the coloured recovery graph and permutation colouring.
//! - [`repair_sim`]: parallel single-erasure repair with helper-load counts.

pub mod bounds;
pub mod combin;
pub mod error;
pub mod gf2;
pub mod rational;
pub mod recovery_graph;
pub mod repair_sim;
pub mod verifier;
pub mod wzl;
pub mod xlrc;

pub use error::{Error, Result};
pub use gf2::{BitMatrix, BitVec, CodewordSet, Distance};
pub use rational::Rational;
pub use verifier::{RecoveringFamily, RecoverySet, SearchMode};
pub use wzl::{Convention, WzlCode};
pub use xlrc::{CodeParams, XlrcCode};
