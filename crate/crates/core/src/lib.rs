pub mod albert;
pub mod descriptor;
pub mod error;
pub mod fieldforge;
pub mod exactnum;
pub mod filtration;
pub mod gseries;
pub mod starcheck;
pub mod symplectic;

pub use error::{Error, Result};
