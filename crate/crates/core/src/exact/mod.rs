//! Exact arithmetic: prime fields, dense polynomials, rational maps, and
//! rational roots.

pub mod factor;
pub mod fp;
pub mod map;
pub mod poly;
pub mod ring;
pub mod roots;

pub use factor::FactorConfig;
pub use fp::{Fp, PrimeModulus};
pub use map::{ord_at, ProjPoint, RationalMap};
pub use poly::{wronskian, FpPoly, Poly, QPoly, ZPoly};
pub use ring::{Field, Ring};
pub use roots::rational_roots;

use num_rational::BigRational;

pub type QMap = RationalMap<BigRational>;
pub type FpMap = RationalMap<Fp>;
pub type QPoint = ProjPoint<BigRational>;
pub type FpPoint = ProjPoint<Fp>;
