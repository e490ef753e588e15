use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_rational::Ratio;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use super::{ratio_int, ratio_to_f64, Field, IntScalar, Ring, Sign};

/// Element `a + b√2` of the real field Q(√2), ordered by its real value.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct RQuad<Z: IntScalar> {
    pub a: Ratio<Z>,
    pub b: Ratio<Z>,
}

impl<Z: IntScalar> RQuad<Z> {
    pub fn new(a: Ratio<Z>, b: Ratio<Z>) -> Self {
        RQuad { a, b }
    }

    pub fn from_ints(a: i64, b: i64) -> Self {
        RQuad::new(ratio_int(a), ratio_int(b))
    }

    pub fn from_ratio(a: Ratio<Z>) -> Self {
        RQuad::new(a, Ratio::zero())
    }

    pub fn sqrt2() -> Self {
        Self::from_ints(0, 1)
    }

    pub fn sign(&self) -> Sign {
        rq_sign(self)
    }

    pub fn is_negative(&self) -> bool {
        self.sign() == Sign::Negative
    }

    pub fn is_positive(&self) -> bool {
        self.sign() == Sign::Positive
    }

    /// Galois conjugate `a - b√2`.
    pub fn galois(&self) -> Self {
        RQuad::new(self.a.clone(), -self.b.clone())
    }

    pub fn inv(&self) -> Option<Self> {
        if self.is_zero() {
            return None;
        }
        let n = self.a.clone() * self.a.clone() - ratio_int::<Z>(2) * self.b.clone() * self.b.clone();
        Some(RQuad::new(self.a.clone() / n.clone(), -self.b.clone() / n))
    }

    pub fn scale(&self, r: &Ratio<Z>) -> Self {
        RQuad::new(self.a.clone() * r.clone(), self.b.clone() * r.clone())
    }

    pub fn to_f64(&self) -> f64 {
        ratio_to_f64(&self.a) + ratio_to_f64(&self.b) * std::f64::consts::SQRT_2
    }

    pub fn cast<W: IntScalar>(&self) -> Option<RQuad<W>> {
        Some(RQuad::new(super::ratio_cast(&self.a)?, super::ratio_cast(&self.b)?))
    }

    pub fn abs(&self) -> Self {
        if self.is_negative() {
            -self.clone()
        } else {
            self.clone()
        }
    }
}

/// Exact sign of `a + b√2`.
pub fn rq_sign<Z: IntScalar>(x: &RQuad<Z>) -> Sign {
    let sa = ratio_sign(&x.a);
    let sb = ratio_sign(&x.b);
    match (sa, sb) {
        (Sign::Zero, s) | (s, Sign::Zero) => s,
        (s, t) if s == t => s,
        _ => {
            // opposite signs: compare a² with 2b²
            let a2 = x.a.clone() * x.a.clone();
            let b2 = ratio_int::<Z>(2) * x.b.clone() * x.b.clone();
            if a2 > b2 {
                sa
            } else {
                sb
            }
        }
    }
}

fn ratio_sign<Z: IntScalar>(r: &Ratio<Z>) -> Sign {
    if r.is_zero() {
        Sign::Zero
    } else if r.is_positive() {
        Sign::Positive
    } else {
        Sign::Negative
    }
}

impl<Z: IntScalar> Ord for RQuad<Z> {
    fn cmp(&self, o: &Self) -> Ordering {
        match (self.clone() - o.clone()).sign() {
            Sign::Negative => Ordering::Less,
            Sign::Zero => Ordering::Equal,
            Sign::Positive => Ordering::Greater,
        }
    }
}

impl<Z: IntScalar> PartialOrd for RQuad<Z> {
    fn partial_cmp(&self, o: &Self) -> Option<Ordering> {
        Some(self.cmp(o))
    }
}

impl<Z: IntScalar> Add for RQuad<Z> {
    type Output = Self;
    fn add(self, o: Self) -> Self {
        RQuad::new(self.a + o.a, self.b + o.b)
    }
}

impl<Z: IntScalar> Sub for RQuad<Z> {
    type Output = Self;
    fn sub(self, o: Self) -> Self {
        RQuad::new(self.a - o.a, self.b - o.b)
    }
}

impl<Z: IntScalar> Mul for RQuad<Z> {
    type Output = Self;
    fn mul(self, o: Self) -> Self {
        let two = ratio_int::<Z>(2);
        RQuad::new(
            self.a.clone() * o.a.clone() + two * self.b.clone() * o.b.clone(),
            self.a * o.b + self.b * o.a,
        )
    }
}

impl<Z: IntScalar> Div for RQuad<Z> {
    type Output = Self;
    fn div(self, o: Self) -> Self {
        self * o.inv().expect("division by zero")
    }
}

impl<Z: IntScalar> Neg for RQuad<Z> {
    type Output = Self;
    fn neg(self) -> Self {
        RQuad::new(-self.a, -self.b)
    }
}

impl<Z: IntScalar> Zero for RQuad<Z> {
    fn zero() -> Self {
        RQuad::new(Ratio::zero(), Ratio::zero())
    }
    fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }
}

impl<Z: IntScalar> One for RQuad<Z> {
    fn one() -> Self {
        RQuad::new(Ratio::one(), Ratio::zero())
    }
}

impl<Z: IntScalar> Ring for RQuad<Z> {
    fn conj(&self) -> Self {
        self.clone()
    }
}

impl<Z: IntScalar> Field for RQuad<Z> {
    fn inv(&self) -> Option<Self> {
        RQuad::inv(self)
    }
}

impl<Z: IntScalar> fmt::Display for RQuad<Z> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} + {}·√2", self.a, self.b)
    }
}

/// Serialized as exact rational strings plus a float for reading.
#[derive(Serialize, Deserialize)]
struct RQuadRepr {
    a: String,
    b: String,
    approx: f64,
}

impl<Z: IntScalar> Serialize for RQuad<Z> {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        RQuadRepr { a: self.a.to_string(), b: self.b.to_string(), approx: self.to_f64() }.serialize(s)
    }
}

impl<'de, Z: IntScalar + std::str::FromStr> Deserialize<'de> for RQuad<Z> {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let r = RQuadRepr::deserialize(d)?;
        let parse = |s: &str| -> Result<Ratio<Z>, D::Error> {
            s.parse::<Ratio<Z>>().map_err(|_| serde::de::Error::custom(format!("bad rational {s}")))
        };
        Ok(RQuad::new(parse(&r.a)?, parse(&r.b)?))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    type R = RQuad<i64>;

    #[test]
    fn signs() {
        assert_eq!(rq_sign(&R::from_ints(1, 0)), Sign::Positive);
        assert_eq!(rq_sign(&R::from_ints(-3, 2)), Sign::Negative);
        assert_eq!(rq_sign(&R::from_ints(3, -2)), Sign::Positive);
        assert_eq!(rq_sign(&R::from_ints(0, 0)), Sign::Zero);
        assert_eq!(rq_sign(&R::from_ints(-1, 1)), Sign::Positive);
    }

    #[test]
    fn sign_agrees_with_float() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let mut checked = 0;
        while checked < 100_000 {
            let a = Ratio::new(rng.gen_range(-10_000i64..10_000), rng.gen_range(1i64..500));
            let b = Ratio::new(rng.gen_range(-10_000i64..10_000), rng.gen_range(1i64..500));
            let x = R::new(a, b);
            let f = x.to_f64();
            if f.abs() < 1e-9 {
                continue;
            }
            let expect = if f > 0.0 { Sign::Positive } else { Sign::Negative };
            assert_eq!(x.sign(), expect, "{x}");
            checked += 1;
        }
    }

    #[test]
    fn inverse_and_order() {
        let x = R::from_ints(1, 1);
        assert_eq!(x.clone() * x.inv().unwrap(), R::one());
        assert!(R::from_ints(3, 0) > R::from_ints(0, 2));
        assert!(R::from_ints(2, 0) < R::from_ints(0, 2));
        let json = serde_json::to_string(&R::new(Ratio::new(1, 4), Ratio::new(-3, 2))).unwrap();
        let back: R = serde_json::from_str(&json).unwrap();
        assert_eq!(back, R::new(Ratio::new(1, 4), Ratio::new(-3, 2)));
    }
}
