//! Scalar abstraction for the model math.
//!
//! Everything numeric in this crate is generic over [`Real`] so the same
//! formulas run in `f32` or `f64`. The default aliases at the crate root pin
//! `f64`, which is what the reference values and the test tolerances assume.

use std::fmt::{Debug, Display};
use std::ops::AddAssign;

use num_traits::{Float, FloatConst, FromPrimitive, ToPrimitive};
use serde::de::DeserializeOwned;
use serde::Serialize;

/// Floating point scalar the model is generic over.
///
/// `of`/`as_f64` are the only conversions the crate uses: constants are held
/// as `f64` literals and narrowed once, and random transforms run in `f64`
/// before narrowing at the boundary, so an `f32` instantiation degrades only
/// in storage precision, not in the quality of the draws.
pub trait Real:
    Float
    + FloatConst
    + FromPrimitive
    + ToPrimitive
    + AddAssign
    + Debug
    + Display
    + Serialize
    + DeserializeOwned
    + Send
    + Sync
    + 'static
{
    /// Narrow a finite `f64` into this scalar.
    #[inline]
    fn of(x: f64) -> Self {
        Self::from_f64(x).expect("finite f64 converts into any Real")
    }

    /// Widen into `f64` for diagnostics and random transforms.
    #[inline]
    fn as_f64(self) -> f64 {
        self.to_f64().expect("Real widens into f64")
    }
}

impl Real for f32 {}
impl Real for f64 {}
