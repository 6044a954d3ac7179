//! Expression language, certificate files and the `ishuffle` command line
//! on top of [`ishuffle_core`].

pub mod cert;
pub mod cli;
pub mod expr;
