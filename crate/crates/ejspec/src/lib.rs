//! File formats, parallel pseudospectra sweeps and the command-line front end
//! for `ejspec-core`.

pub mod cli;
pub mod format;
pub mod sweep;
pub mod verify;
