//! Input loaders, output formats and the command-line front end for
//! [`imbcost_core`].

pub mod cli;
pub mod loader;
pub mod output;
pub mod render;

pub use loader::{load_matrices, InputFormat, LoadError};
pub use output::{Cell, OutputFormat, Table};
