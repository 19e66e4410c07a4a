//! Exact computations with the OTI functor `Φ_H`: restriction of reductive-group
//! representations to a regular `α_p` followed by semisimplification into `Ver_p`.

pub mod error;
pub mod fp;
pub mod models;
pub mod nilmod;
pub mod stable;
pub mod ver;
pub mod verify;
pub mod weyl;

pub use error::{Error, Result};
