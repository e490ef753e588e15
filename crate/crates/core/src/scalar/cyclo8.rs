use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_rational::Ratio;
use num_traits::{One, Zero};

use super::{ratio_int, Field, GaussQ, IntScalar, RQuad, Ring};

/// Element `c0 + c1ζ + c2ζ² + c3ζ³` of Q(ζ8), `ζ = e^{iπ/4}`, `ζ⁴ = -1`.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Cyc8<Z: IntScalar> {
    pub c: [Ratio<Z>; 4],
}

impl<Z: IntScalar> Cyc8<Z> {
    pub fn new(c: [Ratio<Z>; 4]) -> Self {
        Cyc8 { c }
    }

    pub fn from_ints(c: [i64; 4]) -> Self {
        Cyc8::new(c.map(ratio_int))
    }

    pub fn zeta() -> Self {
        Self::from_ints([0, 1, 0, 0])
    }

    /// `ζ^k` for any integer `k`.
    pub fn zeta_pow(k: i64) -> Self {
        let k = k.rem_euclid(8) as usize;
        let mut c = [0i64; 4];
        if k < 4 {
            c[k] = 1;
        } else {
            c[k - 4] = -1;
        }
        Self::from_ints(c)
    }

    pub fn from_gaussq(x: &GaussQ<Z>) -> Self {
        Cyc8::new([x.re(), Ratio::zero(), x.im(), Ratio::zero()])
    }

    pub fn from_rquad(x: &RQuad<Z>) -> Self {
        // √2 = ζ - ζ³
        Cyc8::new([x.a.clone(), x.b.clone(), Ratio::zero(), -x.b.clone()])
    }

    /// Complex conjugation `ζ ↦ ζ⁻¹ = -ζ³`.
    pub fn conj(&self) -> Self {
        let [c0, c1, c2, c3] = self.c.clone();
        Cyc8::new([c0, -c3, -c2, -c1])
    }

    /// The automorphism `ζ ↦ ζ^k` for odd `k`.
    pub fn galois(&self, k: i64) -> Self {
        let mut out = Self::zero();
        for (j, cj) in self.c.iter().enumerate() {
            if cj.is_zero() {
                continue;
            }
            out = out + Self::zeta_pow(j as i64 * k).scale(cj);
        }
        out
    }

    pub fn scale(&self, r: &Ratio<Z>) -> Self {
        Cyc8::new(self.c.clone().map(|x| x * r.clone()))
    }

    /// Back to Q(√2) when the value is real.
    pub fn to_rquad(&self) -> Option<RQuad<Z>> {
        let [c0, c1, c2, c3] = &self.c;
        if c2.is_zero() && *c3 == -c1.clone() {
            Some(RQuad::new(c0.clone(), c1.clone()))
        } else {
            None
        }
    }

    pub fn to_gaussq(&self) -> Option<GaussQ<Z>> {
        if self.c[1].is_zero() && self.c[3].is_zero() {
            Some(GaussQ::from_ratios(self.c[0].clone(), self.c[2].clone()))
        } else {
            None
        }
    }

    /// Real part `(x + x̄)/2` in Q(√2).
    pub fn re(&self) -> RQuad<Z> {
        let half = Ratio::new(Z::one(), Z::from_int(2));
        RQuad::new(self.c[0].clone(), (self.c[1].clone() - self.c[3].clone()) * half)
    }

    pub fn abs2(&self) -> RQuad<Z> {
        cy_abs2(self)
    }

    pub fn inv(&self) -> Option<Self> {
        if self.is_zero() {
            return None;
        }
        let others = self.galois(3) * self.galois(5) * self.galois(7);
        let n = (self.clone() * others.clone()).c[0].clone();
        Some(others.scale(&n.recip()))
    }

    pub fn to_f64(&self) -> (f64, f64) {
        let h = std::f64::consts::FRAC_1_SQRT_2;
        let c: Vec<f64> = self.c.iter().map(super::ratio_to_f64).collect();
        (c[0] + h * c[1] - h * c[3], h * c[1] + c[2] + h * c[3])
    }
}

/// `x·x̄` as an element of Q(√2).
pub fn cy_abs2<Z: IntScalar>(x: &Cyc8<Z>) -> RQuad<Z> {
    (x.clone() * x.conj()).to_rquad().expect("x·x̄ is real")
}

impl<Z: IntScalar> Add for Cyc8<Z> {
    type Output = Self;
    fn add(self, o: Self) -> Self {
        let [a0, a1, a2, a3] = self.c;
        let [b0, b1, b2, b3] = o.c;
        Cyc8::new([a0 + b0, a1 + b1, a2 + b2, a3 + b3])
    }
}

impl<Z: IntScalar> Sub for Cyc8<Z> {
    type Output = Self;
    fn sub(self, o: Self) -> Self {
        self + (-o)
    }
}

impl<Z: IntScalar> Mul for Cyc8<Z> {
    type Output = Self;
    fn mul(self, o: Self) -> Self {
        let mut r: [Ratio<Z>; 4] = [Ratio::zero(), Ratio::zero(), Ratio::zero(), Ratio::zero()];
        for (j, a) in self.c.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (k, b) in o.c.iter().enumerate() {
                if b.is_zero() {
                    continue;
                }
                let t = a.clone() * b.clone();
                if j + k < 4 {
                    r[j + k] = r[j + k].clone() + t;
                } else {
                    r[j + k - 4] = r[j + k - 4].clone() - t;
                }
            }
        }
        Cyc8::new(r)
    }
}

impl<Z: IntScalar> Neg for Cyc8<Z> {
    type Output = Self;
    fn neg(self) -> Self {
        Cyc8::new(self.c.map(|x| -x))
    }
}

impl<Z: IntScalar> Zero for Cyc8<Z> {
    fn zero() -> Self {
        Self::from_ints([0; 4])
    }
    fn is_zero(&self) -> bool {
        self.c.iter().all(|x| x.is_zero())
    }
}

impl<Z: IntScalar> One for Cyc8<Z> {
    fn one() -> Self {
        Self::from_ints([1, 0, 0, 0])
    }
}

impl<Z: IntScalar> Ring for Cyc8<Z> {
    fn conj(&self) -> Self {
        Cyc8::conj(self)
    }
}

impl<Z: IntScalar> Field for Cyc8<Z> {
    fn inv(&self) -> Option<Self> {
        Cyc8::inv(self)
    }
}

impl<Z: IntScalar> From<GaussQ<Z>> for Cyc8<Z> {
    fn from(x: GaussQ<Z>) -> Self {
        Cyc8::from_gaussq(&x)
    }
}

impl<Z: IntScalar> fmt::Display for Cyc8<Z> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}, {}, {}, {}]", self.c[0], self.c[1], self.c[2], self.c[3])
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{Gauss, Sign};
    use proptest::prelude::*;

    type C = Cyc8<i64>;

    #[test]
    fn abs2_examples() {
        assert_eq!(cy_abs2(&C::zeta()), RQuad::one());
        assert_eq!(cy_abs2(&C::from_ints([1, 0, 1, 0])), RQuad::from_ints(2, 0));
        assert_eq!(cy_abs2(&C::from_ints([1, 1, 0, 0])), RQuad::from_ints(2, 1));
    }

    #[test]
    fn zeta_squared_is_i() {
        let i = C::from_gaussq(&GaussQ::from_gauss(Gauss::i()));
        assert_eq!(C::zeta() * C::zeta(), i);
        assert_eq!(C::zeta_pow(8), C::one());
        assert_eq!(C::zeta() * C::zeta_pow(-1), C::one());
    }

    fn arb() -> impl Strategy<Value = C> {
        proptest::array::uniform4((-20i64..20, 1i64..6)).prop_map(|a| C::new(a.map(|(n, d)| Ratio::new(n, d))))
    }

    proptest! {
        #[test]
        fn ring_laws(x in arb(), y in arb()) {
            prop_assert_eq!((x.clone() * y.clone()).conj(), x.conj() * y.conj());
            prop_assert_eq!(x.conj().conj(), x.clone());
            let n = cy_abs2(&x);
            prop_assert!(n.sign() != Sign::Negative);
            prop_assert_eq!(n.sign() == Sign::Zero, x.is_zero());
            if !x.is_zero() {
                prop_assert_eq!(x.clone() * x.inv().unwrap(), C::one());
            }
            let f = x.to_f64();
            prop_assert!((n.to_f64() - (f.0 * f.0 + f.1 * f.1)).abs() < 1e-6 * (1.0 + n.to_f64()));
        }

        #[test]
        fn gauss_embedding_is_a_homomorphism(a in -30i64..30, b in -30i64..30, c in -30i64..30, d in -30i64..30) {
            let x = GaussQ::<i64>::from_ints(a, b);
            let y = GaussQ::<i64>::from_ints(c, d);
            prop_assert_eq!(C::from_gaussq(&(x.clone() * y.clone())), C::from_gaussq(&x) * C::from_gaussq(&y));
            prop_assert_eq!(C::from_gaussq(&(x.clone() + y.clone())), C::from_gaussq(&x) + C::from_gaussq(&y));
            prop_assert_eq!(C::from_gaussq(&x.conj()), C::from_gaussq(&x).conj());
        }
    }
}
