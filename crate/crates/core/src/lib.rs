//! Exact verification engine for Bailey pairs and lacunary partition
//! identities, with a numeric harness for quadratic-form partial sums and
//! power-series growth near `z = 1`.
//!
//! Exact work is generic over a [`Coefficient`] type (checked fixed-width
//! integers); the numeric harness is generic over a [`Real`] type. The
//! aliases below fix the defaults used by the command-line front end.

pub mod bailey;
pub mod error;
pub mod identities;
pub mod partitions;
pub mod quadforms;
pub mod scalar;
pub mod series;
pub mod tauber;

pub use error::{Error, Result};
pub use identities::Family;
pub use quadforms::{QuadFormSpec, RepSummary};
pub use scalar::{Coefficient, Real};
pub use series::{pochhammer, Monomial};
pub use tauber::{SlowlyVarying, TailRule};

/// Truncated series over `i64`.
pub type Series = series::PowerSeries<i64>;
/// Truncated series over `i128`, for deeper truncations.
pub type WideSeries = series::PowerSeries<i128>;
pub type BaileyPair = bailey::BaileyPair<i64>;
pub type AsymptoticSpec = tauber::AsymptoticSpec<f64>;
pub type BoundProfile = tauber::BoundProfile<f64>;
