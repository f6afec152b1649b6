// mdbook cannot run listings that depend on a crate, so each chapter is
// included here as a module doc and its listings run as doctests.

#[doc = include_str!("../../../book/src/introduction.md")]
pub mod introduction {}
#[doc = include_str!("../../../book/src/numbers.md")]
pub mod numbers {}
#[doc = include_str!("../../../book/src/expressions.md")]
pub mod expressions {}
#[doc = include_str!("../../../book/src/tensors.md")]
pub mod tensors {}
#[doc = include_str!("../../../book/src/structures.md")]
pub mod structures {}
#[doc = include_str!("../../../book/src/lifts.md")]
pub mod lifts {}
#[doc = include_str!("../../../book/src/integrability.md")]
pub mod integrability {}
#[doc = include_str!("../../../book/src/cross_sections.md")]
pub mod cross_sections {}
#[doc = include_str!("../../../book/src/scenarios.md")]
pub mod scenarios {}
#[doc = include_str!("../../../book/src/corrections.md")]
pub mod corrections {}
