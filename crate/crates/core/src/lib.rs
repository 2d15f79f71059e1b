pub mod error;
pub mod liouville;
pub mod matcore;
pub mod model;
pub mod observe;
pub mod reservoir;
pub mod spectra;

pub use error::{Error, Result};
