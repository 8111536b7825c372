//! File formats and command-line front end for [`rsdensity_core`].
//!
//! - [`io`]: the JSON family file, flat JSON input lists, JSON/CSV output
//!   and atomic writes.
//! - [`cli`]: the `rsdensity` command.

pub mod cli;
pub mod io;
