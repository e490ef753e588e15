use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use super::{IntScalar, Ring};

/// Gaussian integer `re + im·i`.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug, Default, Serialize, Deserialize)]
pub struct Gauss<Z> {
    pub re: Z,
    pub im: Z,
}

impl<Z: IntScalar> Gauss<Z> {
    pub fn new(re: Z, im: Z) -> Self {
        Gauss { re, im }
    }

    pub fn from_ints(re: i64, im: i64) -> Self {
        Gauss::new(Z::from_int(re), Z::from_int(im))
    }

    pub fn from_int(n: Z) -> Self {
        Gauss::new(n, Z::zero())
    }

    pub fn i() -> Self {
        Self::from_ints(0, 1)
    }

    /// The ramified prime `p = 1 + i`.
    pub fn p() -> Self {
        Self::from_ints(1, 1)
    }

    pub fn pbar() -> Self {
        Self::from_ints(1, -1)
    }

    /// `i^r` for `r` taken mod 4.
    pub fn unit(r: u8) -> Self {
        match r % 4 {
            0 => Self::from_ints(1, 0),
            1 => Self::from_ints(0, 1),
            2 => Self::from_ints(-1, 0),
            _ => Self::from_ints(0, -1),
        }
    }

    /// The four units in the order `1, i, -1, -i`.
    pub fn units() -> [Self; 4] {
        [Self::unit(0), Self::unit(1), Self::unit(2), Self::unit(3)]
    }

    pub fn norm(&self) -> Z {
        self.re.clone() * self.re.clone() + self.im.clone() * self.im.clone()
    }

    pub fn conj(&self) -> Self {
        Gauss::new(self.re.clone(), -self.im.clone())
    }

    pub fn mul_i(&self) -> Self {
        Gauss::new(-self.im.clone(), self.re.clone())
    }

    pub fn scale(&self, k: &Z) -> Self {
        Gauss::new(self.re.clone() * k.clone(), self.im.clone() * k.clone())
    }

    pub fn is_unit(&self) -> bool {
        self.norm().is_one()
    }

    /// Exponent `r` with `self = i^r`, if `self` is a unit.
    pub fn unit_exponent(&self) -> Option<u8> {
        (0..4u8).find(|&r| *self == Self::unit(r))
    }

    /// Exact quotient, if `d` divides `self`.
    pub fn div_exact(&self, d: &Self) -> Option<Self> {
        if d.is_zero() {
            return None;
        }
        let n = d.norm();
        let t = self.clone() * d.conj();
        if t.re.is_multiple_of(&n) && t.im.is_multiple_of(&n) {
            Some(Gauss::new(t.re / n.clone(), t.im / n))
        } else {
            None
        }
    }

    /// Quotient rounded to the nearest Gaussian integer, so `|self - q·d|² ≤ |d|²/2`.
    pub fn div_round(&self, d: &Self) -> Self {
        let n = d.norm();
        let t = self.clone() * d.conj();
        let two = Z::from_int(2);
        let round = |x: Z| (two.clone() * x + n.clone()).div_floor(&(two.clone() * n.clone()));
        Gauss::new(round(t.re), round(t.im))
    }

    /// Canonical associate `i^r·self` with `re > 0, im ≥ 0` (zero maps to zero), and `r`.
    pub fn canonical_associate(&self) -> (Self, u8) {
        if self.is_zero() {
            return (self.clone(), 0);
        }
        for r in 0..4u8 {
            let v = Self::unit(r) * self.clone();
            if v.re.is_positive() && !v.im.is_negative() {
                return (v, r);
            }
        }
        unreachable!("some associate lies in the first quadrant")
    }

    /// Canonical residue of `self` modulo `m`.
    ///
    /// `mG` is the Z-lattice with basis `(N/g, 0)` and `(s, g)` where `g = gcd(re m, im m)`;
    /// residues are reduced to `0 ≤ im < g`, `0 ≤ re < N/g`.
    pub fn residue(&self, m: &Self) -> Self {
        assert!(!m.is_zero(), "residue modulo zero");
        let (a, b) = (m.re.clone(), m.im.clone());
        let eg = b.extended_gcd(&a);
        let (mut g, mut alpha, mut beta) = (eg.gcd, eg.x, eg.y);
        if g.is_negative() {
            g = -g;
            alpha = -alpha;
            beta = -beta;
        }
        let wre = alpha * a.clone() - beta * b.clone();
        let big = m.norm() / g.clone();
        let (k, im) = self.im.div_mod_floor(&g);
        let re = (self.re.clone() - k * wre).mod_floor(&big);
        Gauss::new(re, im)
    }

    pub fn gcd(a: &Self, b: &Self) -> Self {
        let (mut x, mut y) = (a.clone(), b.clone());
        while !y.is_zero() {
            let q = x.div_round(&y);
            let r = x - q * y.clone();
            x = y;
            y = r;
        }
        x.canonical_associate().0
    }

    pub fn cast<W: IntScalar>(&self) -> Option<Gauss<W>> {
        Some(Gauss::new(self.re.cast()?, self.im.cast()?))
    }

    pub fn to_f64(&self) -> (f64, f64) {
        (self.re.to_f64().unwrap_or(f64::NAN), self.im.to_f64().unwrap_or(f64::NAN))
    }
}

/// `re² + im²`.
pub fn gnorm<Z: IntScalar>(x: &Gauss<Z>) -> Z {
    x.norm()
}

/// Whether `1 + i` divides `x`, i.e. `re + im` is even.
pub fn p_divides<Z: IntScalar>(x: &Gauss<Z>) -> bool {
    (x.re.clone() + x.im.clone()).is_even()
}

/// All Gaussian integers of norm at most `m`, ordered by `(norm, re, im)`.
pub fn gauss_ball<Z: IntScalar>(m: u64) -> Vec<Gauss<Z>> {
    let r = (m as f64).sqrt() as i64 + 1;
    let mut out: Vec<(i64, i64, i64)> = Vec::new();
    for a in -r..=r {
        for b in -r..=r {
            let n = a * a + b * b;
            if n as u64 <= m {
                out.push((n, a, b));
            }
        }
    }
    out.sort();
    out.into_iter().map(|(_, a, b)| Gauss::from_ints(a, b)).collect()
}

impl<Z: IntScalar> Add for Gauss<Z> {
    type Output = Self;
    fn add(self, o: Self) -> Self {
        Gauss::new(self.re + o.re, self.im + o.im)
    }
}

impl<Z: IntScalar> Sub for Gauss<Z> {
    type Output = Self;
    fn sub(self, o: Self) -> Self {
        Gauss::new(self.re - o.re, self.im - o.im)
    }
}

impl<Z: IntScalar> Mul for Gauss<Z> {
    type Output = Self;
    fn mul(self, o: Self) -> Self {
        Gauss::new(
            self.re.clone() * o.re.clone() - self.im.clone() * o.im.clone(),
            self.re * o.im + self.im * o.re,
        )
    }
}

impl<Z: IntScalar> Neg for Gauss<Z> {
    type Output = Self;
    fn neg(self) -> Self {
        Gauss::new(-self.re, -self.im)
    }
}

impl<Z: IntScalar> AddAssign for Gauss<Z> {
    fn add_assign(&mut self, o: Self) {
        self.re = self.re.clone() + o.re;
        self.im = self.im.clone() + o.im;
    }
}

impl<Z: IntScalar> SubAssign for Gauss<Z> {
    fn sub_assign(&mut self, o: Self) {
        self.re = self.re.clone() - o.re;
        self.im = self.im.clone() - o.im;
    }
}

impl<Z: IntScalar> Zero for Gauss<Z> {
    fn zero() -> Self {
        Gauss::new(Z::zero(), Z::zero())
    }
    fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }
}

impl<Z: IntScalar> One for Gauss<Z> {
    fn one() -> Self {
        Gauss::new(Z::one(), Z::zero())
    }
}

impl<Z: IntScalar> Ring for Gauss<Z> {
    fn conj(&self) -> Self {
        Gauss::conj(self)
    }
}

impl<Z: IntScalar> fmt::Display for Gauss<Z> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.im.is_zero() {
            write!(f, "{}", self.re)
        } else if self.re.is_zero() {
            write!(f, "{}i", self.im)
        } else if self.im.is_negative() {
            write!(f, "{}-{}i", self.re, -self.im.clone())
        } else {
            write!(f, "{}+{}i", self.re, self.im)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;
    use proptest::prelude::*;

    type G = Gauss<i64>;

    #[test]
    fn norms() {
        assert_eq!(gnorm(&G::p()), 2);
        assert_eq!(gnorm(&G::zero()), 0);
        let x = G::from_ints(1, 2) * G::from_ints(2, 1);
        assert_eq!(x, G::from_ints(0, 5));
        assert_eq!(gnorm(&x), 25);
    }

    #[test]
    fn p_divisibility() {
        assert!(p_divides(&G::p()));
        assert!(!p_divides(&G::one()));
        assert!(p_divides(&G::from_ints(2, 0)));
        // 2 = -i p²
        assert_eq!(G::unit(3) * G::p() * G::p(), G::from_ints(2, 0));
    }

    #[test]
    fn ball_sizes() {
        assert_eq!(gauss_ball::<i64>(0), vec![G::zero()]);
        assert_eq!(gauss_ball::<i64>(2).len(), 9);
        let brute = (-3i64..=3)
            .flat_map(|a| (-3i64..=3).map(move |b| (a, b)))
            .filter(|(a, b)| a * a + b * b <= 9)
            .count();
        assert_eq!(brute, 29);
        assert_eq!(gauss_ball::<BigInt>(9).len(), 29);
    }

    #[test]
    fn ball_closed_under_units_and_conj() {
        for m in 0..12 {
            let ball = gauss_ball::<i64>(m);
            for x in &ball {
                assert!(ball.contains(&x.conj()));
                for u in G::units() {
                    assert!(ball.contains(&(u * x.clone())));
                }
            }
        }
    }

    #[test]
    fn residue_system_is_complete() {
        for m in [G::p(), G::from_ints(2, 0), G::from_ints(3, 1), G::from_ints(0, 5), G::from_ints(-4, 6)] {
            let n = m.norm();
            let mut seen = std::collections::HashSet::new();
            for a in -12..12 {
                for b in -12..12 {
                    let x = G::from_ints(a, b);
                    let r = x.residue(&m);
                    assert!((x - r.clone()).div_exact(&m).is_some());
                    seen.insert(r);
                }
            }
            assert_eq!(seen.len() as i64, n);
        }
    }

    proptest! {
        #[test]
        fn norm_is_multiplicative(a in -1000i64..1000, b in -1000i64..1000, c in -1000i64..1000, d in -1000i64..1000) {
            let x = G::from_ints(a, b);
            let y = G::from_ints(c, d);
            prop_assert_eq!(gnorm(&(x.clone() * y.clone())), gnorm(&x) * gnorm(&y));
        }

        #[test]
        fn rounded_division_remainder_is_small(a in -500i64..500, b in -500i64..500, c in -50i64..50, d in -50i64..50) {
            let x = G::from_ints(a, b);
            let y = G::from_ints(c, d);
            prop_assume!(!y.is_zero());
            let q = x.div_round(&y);
            let r = x - q * y.clone();
            prop_assert!(2 * r.norm() <= y.norm());
        }

        #[test]
        fn gcd_divides_both(a in -300i64..300, b in -300i64..300, c in -300i64..300, d in -300i64..300) {
            let x = G::from_ints(a, b);
            let y = G::from_ints(c, d);
            prop_assume!(!x.is_zero() || !y.is_zero());
            let g = G::gcd(&x, &y);
            prop_assert!(x.div_exact(&g).is_some());
            prop_assert!(y.div_exact(&g).is_some());
        }
    }
}
