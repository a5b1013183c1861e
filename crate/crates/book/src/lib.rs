//! Compiles every Rust snippet in `book/src` as a doctest, so the guide
//! cannot drift from the library.

#[doc = include_str!("../../../book/src/introduction.md")]
pub mod introduction {}

#[doc = include_str!("../../../book/src/topology.md")]
pub mod topology {}

#[doc = include_str!("../../../book/src/chambers.md")]
pub mod chambers {}

#[doc = include_str!("../../../book/src/wall-crossing.md")]
pub mod wall_crossing {}

#[doc = include_str!("../../../book/src/tables.md")]
pub mod tables {}

#[doc = include_str!("../../../book/src/strata.md")]
pub mod strata {}

#[doc = include_str!("../../../book/src/stability.md")]
pub mod stability {}

#[doc = include_str!("../../../book/src/cli.md")]
pub mod cli {}
