//! Exact computation and certification of depth-based Carathéodory, Helly and
//! Kirchberger constructions for finite rational point sets.

pub mod caradepth;
pub mod depth;
pub mod error;
pub mod geom;
pub mod helly;
pub mod io;
pub mod oracles;
pub mod projection;
pub mod same_type;

pub use error::{Error, Result};
