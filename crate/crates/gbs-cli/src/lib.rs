//! JSON documents for the `gbs` command line tool.

pub mod io;

#[cfg(doctest)]
#[doc = include_str!("../../../book/src/cli.md")]
pub mod cli {}
