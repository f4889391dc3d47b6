//! The guide's chapters, compiled so that `cargo test --doc` runs every
//! listing in `book/src`. One module per chapter keeps failures traceable.

#[doc = include_str!("../../../book/src/introduction.md")]
pub mod introduction {}
#[doc = include_str!("../../../book/src/operators.md")]
pub mod operators {}
#[doc = include_str!("../../../book/src/properties.md")]
pub mod properties {}
#[doc = include_str!("../../../book/src/closure.md")]
pub mod closure {}
#[doc = include_str!("../../../book/src/generators.md")]
pub mod generators {}
#[doc = include_str!("../../../book/src/transformations.md")]
pub mod transformations {}
#[doc = include_str!("../../../book/src/galois.md")]
pub mod galois {}
#[doc = include_str!("../../../book/src/search.md")]
pub mod search {}
#[doc = include_str!("../../../book/src/findings.md")]
pub mod findings {}
#[doc = include_str!("../../../book/src/cli.md")]
pub mod cli {}
