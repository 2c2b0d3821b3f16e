//! Exact computations on the Steinberg lattice of `GL_n(q)`: its invariant
//! form, the filtration of its reduction modulo a prime `ell != p`, and
//! irreducibility and self-duality checks on the resulting modules.

pub mod cli;
pub mod error;
pub mod filtration;
pub mod group;
pub mod identities;
pub mod lattice;
pub mod linalg;
pub mod modrep;
pub mod rings;

pub use error::{Error, Result};
