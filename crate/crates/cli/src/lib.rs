pub mod config;
pub mod error;
pub mod presets;
pub mod sweep;

pub use config::{Axis, Param, StateKind, SweepConfig};
pub use error::CliError;
pub use sweep::{run_point, run_sweep, to_csv};
