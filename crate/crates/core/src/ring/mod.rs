//! Exact polynomial arithmetic in `v`, `q = v^2` and the colour variable.

pub mod bipoly;
pub mod laurent;
pub mod qcomb;
pub mod rational;
pub mod series;
pub mod text;

pub use bipoly::BiPoly;
pub use laurent::LaurentPoly;
pub use rational::{DenFactor, DenFactors, RationalLaurent};
pub use series::{PowerSeries, SeriesVar};
