use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_rational::Ratio;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use super::{Field, Gauss, IntScalar, Ring};

/// Element of Q(i) stored as `num / den` with `den > 0` and `gcd(re, im, den) = 1`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, Serialize, Deserialize)]
pub struct GaussQ<Z> {
    num: Gauss<Z>,
    den: Z,
}

impl<Z: IntScalar> GaussQ<Z> {
    pub fn new(num: Gauss<Z>, den: Z) -> Self {
        assert!(!den.is_zero(), "zero denominator");
        let mut q = GaussQ { num, den };
        q.reduce();
        q
    }

    fn reduce(&mut self) {
        if self.den.is_negative() {
            self.num = -self.num.clone();
            self.den = -self.den.clone();
        }
        let g = self.num.re.gcd(&self.num.im).gcd(&self.den);
        if !g.is_one() && !g.is_zero() {
            self.num = Gauss::new(self.num.re.clone() / g.clone(), self.num.im.clone() / g.clone());
            self.den = self.den.clone() / g;
        }
    }

    pub fn from_gauss(x: Gauss<Z>) -> Self {
        GaussQ { num: x, den: Z::one() }
    }

    pub fn from_ints(re: i64, im: i64) -> Self {
        Self::from_gauss(Gauss::from_ints(re, im))
    }

    pub fn from_ratios(re: Ratio<Z>, im: Ratio<Z>) -> Self {
        let den = re.denom().lcm(im.denom());
        let a = re.numer().clone() * (den.clone() / re.denom().clone());
        let b = im.numer().clone() * (den.clone() / im.denom().clone());
        GaussQ::new(Gauss::new(a, b), den)
    }

    pub fn num(&self) -> &Gauss<Z> {
        &self.num
    }

    pub fn den(&self) -> &Z {
        &self.den
    }

    pub fn re(&self) -> Ratio<Z> {
        Ratio::new(self.num.re.clone(), self.den.clone())
    }

    pub fn im(&self) -> Ratio<Z> {
        Ratio::new(self.num.im.clone(), self.den.clone())
    }

    pub fn is_integral(&self) -> bool {
        self.den.is_one()
    }

    pub fn to_gauss(&self) -> Option<Gauss<Z>> {
        if self.is_integral() {
            Some(self.num.clone())
        } else {
            None
        }
    }

    pub fn is_real(&self) -> bool {
        self.num.im.is_zero()
    }

    pub fn norm(&self) -> Ratio<Z> {
        Ratio::new(self.num.norm(), self.den.clone() * self.den.clone())
    }

    pub fn conj(&self) -> Self {
        GaussQ { num: self.num.conj(), den: self.den.clone() }
    }

    pub fn scale(&self, r: &Ratio<Z>) -> Self {
        GaussQ::new(self.num.scale(r.numer()), self.den.clone() * r.denom().clone())
    }

    pub fn inv(&self) -> Option<Self> {
        if self.num.is_zero() {
            return None;
        }
        // (a/d)^{-1} = d·conj(a)/N(a)
        Some(GaussQ::new(self.num.conj().scale(&self.den), self.num.norm()))
    }

    pub fn cast<W: IntScalar>(&self) -> Option<GaussQ<W>> {
        Some(GaussQ { num: self.num.cast()?, den: self.den.cast()? })
    }

    pub fn to_f64(&self) -> (f64, f64) {
        let d = self.den.to_f64().unwrap_or(f64::NAN);
        let (a, b) = self.num.to_f64();
        (a / d, b / d)
    }
}

impl<Z: IntScalar> From<Gauss<Z>> for GaussQ<Z> {
    fn from(x: Gauss<Z>) -> Self {
        GaussQ::from_gauss(x)
    }
}

impl<Z: IntScalar> Add for GaussQ<Z> {
    type Output = Self;
    fn add(self, o: Self) -> Self {
        if self.den == o.den {
            return GaussQ::new(self.num + o.num, self.den);
        }
        GaussQ::new(self.num.scale(&o.den) + o.num.scale(&self.den), self.den * o.den)
    }
}

impl<Z: IntScalar> Sub for GaussQ<Z> {
    type Output = Self;
    fn sub(self, o: Self) -> Self {
        self + (-o)
    }
}

impl<Z: IntScalar> Mul for GaussQ<Z> {
    type Output = Self;
    fn mul(self, o: Self) -> Self {
        GaussQ::new(self.num * o.num, self.den * o.den)
    }
}

impl<Z: IntScalar> Div for GaussQ<Z> {
    type Output = Self;
    fn div(self, o: Self) -> Self {
        self * o.inv().expect("division by zero")
    }
}

impl<Z: IntScalar> Neg for GaussQ<Z> {
    type Output = Self;
    fn neg(self) -> Self {
        GaussQ { num: -self.num, den: self.den }
    }
}

impl<Z: IntScalar> Zero for GaussQ<Z> {
    fn zero() -> Self {
        GaussQ::from_gauss(Gauss::zero())
    }
    fn is_zero(&self) -> bool {
        self.num.is_zero()
    }
}

impl<Z: IntScalar> One for GaussQ<Z> {
    fn one() -> Self {
        GaussQ::from_gauss(Gauss::one())
    }
}

impl<Z: IntScalar> Ring for GaussQ<Z> {
    fn conj(&self) -> Self {
        GaussQ::conj(self)
    }
}

impl<Z: IntScalar> Field for GaussQ<Z> {
    fn inv(&self) -> Option<Self> {
        GaussQ::inv(self)
    }
}

impl<Z: IntScalar> fmt::Display for GaussQ<Z> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_one() {
            write!(f, "{}", self.num)
        } else {
            write!(f, "({})/{}", self.num, self.den)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    type Q = GaussQ<i64>;

    #[test]
    fn canonical_form_is_unique() {
        let a = Q::new(Gauss::from_ints(2, 4), 6);
        let b = Q::new(Gauss::from_ints(-1, -2), -3);
        assert_eq!(a, b);
        assert_eq!(*a.den(), 3);
        let z = Q::new(Gauss::zero(), 7);
        assert_eq!(z, Q::zero());
    }

    #[test]
    fn inverse_of_p() {
        let p = Q::from_gauss(Gauss::p());
        let inv = p.inv().unwrap();
        assert_eq!(inv, Q::new(Gauss::from_ints(1, -1), 2));
        assert_eq!(p * inv, Q::one());
    }

    fn arb() -> impl Strategy<Value = Q> {
        (-50i64..50, -50i64..50, 1i64..20).prop_map(|(a, b, d)| Q::new(Gauss::from_ints(a, b), d))
    }

    proptest! {
        #[test]
        fn field_axioms(x in arb(), y in arb(), z in arb()) {
            prop_assert_eq!((x.clone() + y.clone()) * z.clone(), x.clone() * z.clone() + y.clone() * z.clone());
            prop_assert_eq!((x.clone() * y.clone()).conj(), x.conj() * y.conj());
            if !x.is_zero() {
                prop_assert_eq!(x.clone() * x.inv().unwrap(), Q::one());
            }
            prop_assert_eq!(x.clone() - x.clone(), Q::zero());
        }
    }
}
