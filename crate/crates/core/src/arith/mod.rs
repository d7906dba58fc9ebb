//! Exact scalars, polynomials in the parameter `c`, and truncated Laurent
//! series. No floating point is used anywhere in the crate.

mod poly;
mod rational;
mod scalar;
mod series;

pub use poly::PolyC;
pub use rational::Rational;
pub use scalar::Scalar;
pub use series::{series_sqrt_gegenbauer, series_sqrt_newton, LaurentSeries, EXACT_ORDER};
