//! The chapters of `book/`, one module each. Building docs or running
//! `cargo test -p tate-coniveau-guide` compiles and runs every Rust snippet in
//! the book, so the guide cannot drift from the library.

#[doc = include_str!("../../../book/src/introduction.md")]
pub mod introduction {}

#[doc = include_str!("../../../book/src/group_ring.md")]
pub mod group_ring {}

#[doc = include_str!("../../../book/src/weil_classes.md")]
pub mod weil_classes {}

#[doc = include_str!("../../../book/src/coniveau.md")]
pub mod coniveau {}

#[doc = include_str!("../../../book/src/relations.md")]
pub mod relations {}

#[doc = include_str!("../../../book/src/cli.md")]
pub mod cli {}

#[doc = include_str!("../../../README.md")]
pub mod readme {}
