//! Session-script front end and file formats for the rees-core engine.

pub mod format;
pub mod session;

pub use session::{run_script, Options, Report, Session};
