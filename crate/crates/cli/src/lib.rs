//! Command implementations behind the `meshsum` binary. Each command returns
//! a serializable report; `main` decides how to print it and which exit
//! status to use.

pub mod error;
pub mod grow;
pub mod options;
pub mod summary;
pub mod verify;

use meshsum_core::mesh::CombinatorialDisk;
use meshsum_core::render::render_disk;

pub use error::{CliError, ExitStatus};
pub use grow::{cmd_grow, GrowOptions, GrowthReport, InvariantsReport};
pub use options::{DegreeRange, SeedArg};
pub use summary::{cmd_predict, cmd_sum, PredictReport, SumReport};
pub use verify::{cmd_verify, Fault, VerifyOptions, VerifyReport};

pub const SCHEMA_VERSION: &str = "meshsum/1";

/// Parses disk JSON and draws it.
pub fn cmd_render(disk_json: &str) -> Result<String, CliError> {
    let disk = CombinatorialDisk::from_json(disk_json)?;
    Ok(render_disk(&disk)?)
}
