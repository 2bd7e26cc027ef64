//! Command-line front end for `lcpath-core`: JSON instance files, solving,
//! classification, oracle runs, the bundled benchmark and trace export.

pub mod commands;
pub mod fixtures;
pub mod instance;
pub mod trace_csv;
