//! Numerics for prime sums of L-functions: coefficients from Euler products,
//! the smoothed explicit formula against zero datasets, zero-free-region
//! optimization and the error envelopes built from it.

pub mod arith;
pub mod complex;
pub mod constants;
pub mod dirichlet;
pub mod error;
pub mod explicit;
pub mod kernel;
pub mod lfun;
pub mod regions;
pub mod report;
pub mod stream;
pub mod sum;
pub mod zeros;

pub use constants::ConstantsConfig;
pub use error::{PntError, Result};
pub use lfun::LFunctionData;
pub use stream::{CoefficientTerm, SegmentCache, StreamConfig};
