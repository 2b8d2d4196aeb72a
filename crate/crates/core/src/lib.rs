//! Exact arithmetic, constructions, reduction and dynamics of normalized
//! genus-0 single-cycle Belyi maps.

pub mod combinatorics;
pub mod construction;
pub mod dynamics;
pub mod error;
pub mod exact;
pub mod reduction;
pub mod render;
pub mod serial;

pub use combinatorics::{classify, enumerate_types, Classification, CombinatorialType, TypeClass};
pub use construction::{build, build_normalized, BelyiMap, Certificate, IntegerModel};
pub use error::{Error, Result};
