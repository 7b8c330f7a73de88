//! Exact WRT invariants and unified invariants of 3-manifolds obtained by
//! surgery on algebraically split links with framings ±1 and ±2.

pub mod coeff;
pub mod cyclotomic;
pub mod error;
pub mod io;
pub mod laplace;
pub mod oracle;
pub mod qjones;
pub mod ring;
pub mod surgery;
pub mod unified;
pub mod verify;

pub use coeff::Coeff;
pub use error::{Error, Result};
