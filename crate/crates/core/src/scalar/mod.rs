//! Exact scalars: Gaussian integers and rationals, Q(ζ8), and Q(√2) with exact sign.

mod cyclo8;
mod gauss;
mod gaussq;
mod realquad;

use std::fmt::{Debug, Display};
use std::hash::Hash;
use std::ops::{Add, Mul, Neg, Sub};

use num_integer::Integer;
use num_rational::Ratio;
use num_traits::{FromPrimitive, One, Signed, ToPrimitive, Zero};

pub use cyclo8::{cy_abs2, Cyc8};
pub use gauss::{gauss_ball, gnorm, p_divides, Gauss};
pub use gaussq::GaussQ;
pub use realquad::{rq_sign, RQuad};

/// Integer types usable as the base of every scalar in this crate.
///
/// `BigInt` gives unbounded exactness. Fixed-width types are used in the hot
/// kernels; the workspace builds with overflow checks, so they are exact or panic.
pub trait IntScalar:
    Integer + Signed + Clone + Hash + Debug + Display + FromPrimitive + ToPrimitive + Send + Sync + 'static
{
    fn from_int(n: i64) -> Self {
        Self::from_i64(n).expect("integer conversion")
    }

    /// Converts between integer backends; `None` on overflow.
    fn cast<W: IntScalar>(&self) -> Option<W> {
        match self.to_i128() {
            Some(v) => W::from_i128(v),
            None => None,
        }
    }
}

impl<T> IntScalar for T where
    T: Integer + Signed + Clone + Hash + Debug + Display + FromPrimitive + ToPrimitive + Send + Sync + 'static
{
}

/// Commutative ring with an involution (complex conjugation, or the identity on real rings).
pub trait Ring:
    Clone
    + PartialEq
    + Debug
    + Zero
    + One
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Neg<Output = Self>
    + Send
    + Sync
{
    fn conj(&self) -> Self;
}

pub trait Field: Ring {
    fn inv(&self) -> Option<Self>;
}

impl<Z: IntScalar> Ring for Ratio<Z> {
    fn conj(&self) -> Self {
        self.clone()
    }
}

impl<Z: IntScalar> Field for Ratio<Z> {
    fn inv(&self) -> Option<Self> {
        if self.is_zero() {
            None
        } else {
            Some(self.recip())
        }
    }
}

/// Sign of an exact real quantity.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, serde::Serialize, serde::Deserialize)]
pub enum Sign {
    Negative,
    Zero,
    Positive,
}

impl Sign {
    pub fn of<Z: IntScalar>(x: &Z) -> Sign {
        if x.is_zero() {
            Sign::Zero
        } else if x.is_positive() {
            Sign::Positive
        } else {
            Sign::Negative
        }
    }
}

pub(crate) fn ratio_to_f64<Z: IntScalar>(r: &Ratio<Z>) -> f64 {
    let n = r.numer().to_f64().unwrap_or(f64::NAN);
    let d = r.denom().to_f64().unwrap_or(f64::NAN);
    n / d
}

pub(crate) fn ratio_int<Z: IntScalar>(n: i64) -> Ratio<Z> {
    Ratio::from_integer(Z::from_int(n))
}

pub(crate) fn ratio_cast<Z: IntScalar, W: IntScalar>(r: &Ratio<Z>) -> Option<Ratio<W>> {
    Some(Ratio::new(r.numer().cast()?, r.denom().cast()?))
}
