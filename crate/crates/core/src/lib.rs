//! Exact computations around rational quaternion algebras `(a,b/Q)`:
//! element arithmetic and norm forms, the division/split decision through
//! local Hilbert symbols, conics and their rational parametrizations, and
//! the two-hypersurface "avatar" presentation built from minimal polynomials.

pub mod arith;
pub mod avatar;
pub mod conic;
pub mod error;
pub mod local;
pub mod quaternion;
pub mod selftest;

pub use error::{Error, Result};
