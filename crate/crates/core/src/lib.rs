//! Exact q-series arithmetic and a verification pipeline for congruences of
//! 6-colored generalized Frobenius partitions modulo powers of 3.

pub mod appendix;
pub mod error;
pub mod etaq;
pub mod frob6;
pub mod poly;
pub mod reduce;
pub mod report;
pub mod scalar;
pub mod series;
pub mod tower;
pub mod verify;

pub use error::{Error, Result};
pub use poly::{LaurentPoly, TPoly};
pub use reduce::{PeelResult, Weight, YTForm};
pub use report::{Check, Report, Status};
pub use scalar::{val3, CoeffRing, Coefficient, Mod3k, Val};
pub use series::Series;

pub type ZSeries = Series<num_bigint::BigInt>;
pub type ModSeries<const K: u32> = Series<Mod3k<K>>;
