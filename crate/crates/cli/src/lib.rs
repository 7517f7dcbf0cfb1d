//! Output records, grids and the command implementations behind the `radialft` binary.

mod commands;
mod grid;
mod record;

pub use commands::{coeffs, kernel, lift, parse_complex, transform, CliError, EngineChoice, KernelChoice, LiftOptions, Table};
pub use grid::{Grid, Spacing};
pub use record::{read_records, write_records, Format, Method, OutputRecord, RecordError};
