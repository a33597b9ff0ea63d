//! The book's chapters as doc modules, so `cargo test` runs every listing.

#[doc = include_str!("../../../book/src/introduction.md")]
pub mod introduction {}
#[doc = include_str!("../../../book/src/exact-arithmetic.md")]
pub mod chapter1 {}
#[doc = include_str!("../../../book/src/groups-and-actions.md")]
pub mod chapter2 {}
#[doc = include_str!("../../../book/src/flags.md")]
pub mod chapter3 {}
#[doc = include_str!("../../../book/src/classification.md")]
pub mod chapter4 {}
#[doc = include_str!("../../../book/src/hierarchy.md")]
pub mod chapter5 {}
#[doc = include_str!("../../../book/src/verification.md")]
pub mod chapter6 {}
