// SPDX-License-Identifier: Apache-2.0

//! JSON formats, command implementations and the acceptance runner behind
//! the `subclassical` binary.

pub mod acceptance;
pub mod commands;
pub mod error;
pub mod formats;

pub use commands::{Config, Format, Outcome};
pub use error::CliError;
