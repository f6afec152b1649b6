#![doc = include_str!("../../../README.md")]

pub mod error;
pub mod cross_section;
pub mod geometry;
pub mod integrability;
pub mod lifts;
pub mod metallic;
pub mod numfield;
pub mod scenario;
pub mod symexpr;
pub mod testing;
pub mod verify;

pub use error::{Error, Result};
pub use numfield::{MetallicParams, QuadScalar};
pub use symexpr::{parse_expr, Chart, RatFunc};
