pub mod bredon;
pub mod chartable;
pub mod cli;
pub mod cocycle;
pub mod cyclotomic;
pub mod error;
pub mod extension;
pub mod group;
pub mod io;
pub mod intmat;
pub mod spectral;
pub mod twisted;

pub use cyclotomic::CycNum;
pub use error::{Error, Result};
pub use group::{GroupTable, Subgroup};
