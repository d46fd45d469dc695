//! The pebblekit book. Each chapter is included here so that its code
//! blocks are compiled and run by `cargo test`.

#[doc = include_str!("../../book/src/introduction.md")]
pub mod introduction {}

#[doc = include_str!("../../book/src/graphs.md")]
pub mod graphs {}

#[doc = include_str!("../../book/src/pebbling.md")]
pub mod pebbling {}

#[doc = include_str!("../../book/src/solver.md")]
pub mod solver {}

#[doc = include_str!("../../book/src/trees.md")]
pub mod trees {}

#[doc = include_str!("../../book/src/bounds.md")]
pub mod bounds {}

#[doc = include_str!("../../book/src/verify.md")]
pub mod verify {}

#[doc = include_str!("../../book/src/cli.md")]
pub mod cli {}
