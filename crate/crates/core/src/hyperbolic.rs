//! Squared-distance functionals on complex hyperbolic space, all exact in Q(√2).
//!
//! Points of `B(L)` are negative-norm vectors, mirrors are `r⊥` for positive-norm `r`,
//! and boundary points are null vectors. Every functional is invariant under rescaling
//! its arguments.

use std::cmp::Ordering;

use num_rational::Ratio;
use num_traits::{One, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::lattices::{lorentz_ambient, special_vectors};
use crate::matrix::{herm, Mat};
use crate::scalar::{Cyc8, GaussQ, IntScalar, RQuad, Sign};

pub type CVec<Z> = Vec<Cyc8<Z>>;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum SqDistKind {
    Cosh2,
    Sinh2,
    Exp2Horo,
}

/// A squared hyperbolic quantity together with which function of distance it is.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SqDist<Z: IntScalar> {
    pub kind: SqDistKind,
    pub value: RQuad<Z>,
}

impl<Z: IntScalar> SqDist<Z> {
    /// Hyperbolic distance, for display only.
    pub fn distance(&self) -> f64 {
        let v = self.value.to_f64();
        match self.kind {
            SqDistKind::Cosh2 => v.sqrt().acosh(),
            SqDistKind::Sinh2 => v.sqrt().asinh(),
            SqDistKind::Exp2Horo => 0.5 * v.ln(),
        }
    }

    pub fn cmp_like(&self, o: &Self) -> Result<Ordering> {
        if self.kind != o.kind {
            return Err(Error::Invalid("comparing distances of different kinds".into()));
        }
        Ok(self.value.cmp(&o.value))
    }
}

/// Hermitian form of `L ⊗ Q(ζ8)` for `L` of the given ambient Gram matrix.
#[derive(Clone, Debug)]
pub struct Form<Z: IntScalar> {
    pub gram: Mat<Cyc8<Z>>,
}

impl<Z: IntScalar> Form<Z> {
    pub fn new(ambient: &Mat<GaussQ<Z>>) -> Self {
        Form { gram: ambient.map(Cyc8::from_gaussq) }
    }

    /// The form of `Λ ⊕ G_{1,1}` with `Λ` of rank 8.
    pub fn lorentzian() -> Self {
        Self::new(&lorentz_ambient(8))
    }

    pub fn inner(&self, u: &[Cyc8<Z>], v: &[Cyc8<Z>]) -> Cyc8<Z> {
        herm(&self.gram, u, v)
    }

    pub fn norm(&self, v: &[Cyc8<Z>]) -> RQuad<Z> {
        self.inner(v, v).re()
    }

    fn abs2(&self, u: &[Cyc8<Z>], v: &[Cyc8<Z>]) -> RQuad<Z> {
        self.inner(u, v).abs2()
    }
}

pub fn lift<Z: IntScalar>(v: &[GaussQ<Z>]) -> CVec<Z> {
    v.iter().map(Cyc8::from_gaussq).collect()
}

fn expect_sign<Z: IntScalar>(x: &RQuad<Z>, s: Sign, what: &str) -> Result<()> {
    if x.sign() == s {
        Ok(())
    } else {
        Err(Error::Invalid(format!("{what} has norm of sign {:?}", x.sign())))
    }
}

/// `cosh² d(u, v) = |⟨u,v⟩|²/(u²v²)`.
pub fn cosh2_pt_pt<Z: IntScalar>(f: &Form<Z>, u: &[Cyc8<Z>], v: &[Cyc8<Z>]) -> Result<SqDist<Z>> {
    let (nu, nv) = (f.norm(u), f.norm(v));
    expect_sign(&nu, Sign::Negative, "first point")?;
    expect_sign(&nv, Sign::Negative, "second point")?;
    Ok(SqDist { kind: SqDistKind::Cosh2, value: f.abs2(u, v) / (nu * nv) })
}

/// `sinh² d(r⊥, v) = |⟨r,v⟩|²/(−r²v²)`.
pub fn sinh2_pt_mirror<Z: IntScalar>(f: &Form<Z>, r: &[Cyc8<Z>], v: &[Cyc8<Z>]) -> Result<SqDist<Z>> {
    let (nr, nv) = (f.norm(r), f.norm(v));
    expect_sign(&nr, Sign::Positive, "mirror vector")?;
    expect_sign(&nv, Sign::Negative, "point")?;
    Ok(SqDist { kind: SqDistKind::Sinh2, value: f.abs2(r, v) / -(nr * nv) })
}

/// Whether `r⊥` and `s⊥` meet inside `B(L)`: the span of `r, s` is positive definite.
pub fn mirrors_meet<Z: IntScalar>(f: &Form<Z>, r: &[Cyc8<Z>], s: &[Cyc8<Z>]) -> Result<bool> {
    let (nr, ns) = (f.norm(r), f.norm(s));
    expect_sign(&nr, Sign::Positive, "first mirror vector")?;
    expect_sign(&ns, Sign::Positive, "second mirror vector")?;
    let det = nr * ns - f.abs2(r, s);
    if det.is_zero() && is_proportional(r, s) {
        return Err(Error::Invalid("proportional mirror vectors".into()));
    }
    Ok(det.is_positive())
}

fn is_proportional<Z: IntScalar>(r: &[Cyc8<Z>], s: &[Cyc8<Z>]) -> bool {
    let k = match r.iter().position(|x| !x.is_zero()) {
        Some(k) => k,
        None => return true,
    };
    let c = s[k].clone() * r[k].inv().expect("nonzero");
    r.iter().zip(s).all(|(a, b)| c.clone() * a.clone() == *b)
}

/// `|⟨r,s⟩|²/(r²s²)`: `cos²` of the angle when the mirrors meet, else `cosh²` of their distance.
pub fn cosh2_mirror_mirror<Z: IntScalar>(f: &Form<Z>, r: &[Cyc8<Z>], s: &[Cyc8<Z>]) -> Result<SqDist<Z>> {
    let meet = mirrors_meet(f, r, s)?;
    let v = f.abs2(r, s) / (f.norm(r) * f.norm(s));
    if meet {
        return Err(Error::Invalid("mirrors meet; the value is an angle, not a distance".into()));
    }
    Ok(SqDist { kind: SqDistKind::Cosh2, value: v })
}

/// Raw `|⟨r,s⟩|²/(r²s²)` without the meeting test.
pub fn mirror_pairing<Z: IntScalar>(f: &Form<Z>, r: &[Cyc8<Z>], s: &[Cyc8<Z>]) -> RQuad<Z> {
    f.abs2(r, s) / (f.norm(r) * f.norm(s))
}

/// `e^{2 d_z(v)} = |⟨z,v⟩|²/(−v²)` for a null vector `z`.
pub fn horo_exp2<Z: IntScalar>(f: &Form<Z>, z: &[Cyc8<Z>], v: &[Cyc8<Z>]) -> Result<SqDist<Z>> {
    let nz = f.norm(z);
    if !nz.is_zero() || z.iter().all(|x| x.is_zero()) {
        return Err(Error::Invalid("horocyclic distance needs a nonzero null vector".into()));
    }
    let nv = f.norm(v);
    expect_sign(&nv, Sign::Negative, "point")?;
    Ok(SqDist { kind: SqDistKind::Exp2Horo, value: f.abs2(z, v) / -nv })
}

/// `ht(s) = |⟨s,ρ⟩|²/|s²|`, or `|⟨s,ρ⟩|²` when `s² = 0`.
pub fn height<Z: IntScalar>(ambient: &Mat<GaussQ<Z>>, s: &[GaussQ<Z>], rho: &[GaussQ<Z>]) -> Ratio<Z> {
    let a = herm(ambient, s, rho).norm();
    let n = herm(ambient, s, s).re();
    if n.is_zero() {
        a
    } else {
        a / num_traits::Signed::abs(&n)
    }
}

/// Checks `cosh² d(x,y) ≥ cosh²(d_z(x) − d_z(y))` and `det gram(z,x,y) ≤ 0`.
///
/// With `A = e^{2d_z(x)}`, `B = e^{2d_z(y)}` the right side is `(A+B)²/(4AB)`.
pub fn ideal_triangle_check<Z: IntScalar>(f: &Form<Z>, z: &[Cyc8<Z>], x: &[Cyc8<Z>], y: &[Cyc8<Z>]) -> Result<bool> {
    let c = cosh2_pt_pt(f, x, y)?.value;
    let a = horo_exp2(f, z, x)?.value;
    let b = horo_exp2(f, z, y)?.value;
    let four = RQuad::from_ints(4, 0);
    let rhs = (a.clone() + b.clone()) * (a.clone() + b.clone()) / (four * a * b);
    let vs = [z, x, y];
    let g = Mat::from_fn(3, 3, |i, j| f.inner(vs[i], vs[j]));
    let det = g.det().to_rquad().expect("Hermitian determinant is real");
    Ok(c >= rhs && !det.is_positive())
}

/// `a + √b` with `a, b ∈ Q(√2)`, `b ≥ 0`, compared exactly against elements of Q(√2).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SqrtExt<Z: IntScalar> {
    pub a: RQuad<Z>,
    pub b: RQuad<Z>,
}

impl<Z: IntScalar> SqrtExt<Z> {
    pub fn to_f64(&self) -> f64 {
        self.a.to_f64() + self.b.to_f64().sqrt()
    }

    /// Sign of `c − (a + √b)`.
    pub fn cmp_rq(&self, c: &RQuad<Z>) -> Ordering {
        let t = c.clone() - self.a.clone();
        if t.is_negative() {
            return Ordering::Less;
        }
        (t.clone() * t).cmp(&self.b)
    }

    pub fn scale(&self, k: &RQuad<Z>) -> SqrtExt<Z> {
        assert!(!k.is_negative(), "scaling by a negative number");
        SqrtExt { a: self.a.clone() * k.clone(), b: self.b.clone() * k.clone() * k.clone() }
    }
}

/// `sinh² d0`, the common value of `sinh² d(s_v⊥, τ)` over the simple roots.
pub fn sinh2_d0<Z: IntScalar>() -> Result<RQuad<Z>> {
    let f = Form::lorentzian();
    let sp = special_vectors::<Z>();
    let mut common: Option<RQuad<Z>> = None;
    for r in crate::lattices::simple_roots_32::<Z>() {
        let v = sinh2_pt_mirror(&f, &lift(&r), &sp.tau)?.value;
        match &common {
            None => common = Some(v),
            Some(c) if *c == v => {}
            Some(_) => return Err(Error::Verification("simple roots are not equidistant from τ".into())),
        }
    }
    Ok(common.expect("32 roots"))
}

/// `e^{2d0} = (cosh d0 + sinh d0)² = 1 + 2S + 2√(S(1+S))` for `S = sinh² d0`.
pub fn exp2_d0<Z: IntScalar>(s: &RQuad<Z>) -> SqrtExt<Z> {
    let one = RQuad::<Z>::one();
    let two = RQuad::<Z>::from_ints(2, 0);
    SqrtExt { a: one.clone() + two.clone() * s.clone(), b: RQuad::from_ints(4, 0) * s.clone() * (one + s.clone()) }
}

/// `cosh²(2d0) = (1 + 2S)²`.
pub fn cosh2_2d0<Z: IntScalar>(s: &RQuad<Z>) -> RQuad<Z> {
    let t = RQuad::<Z>::one() + RQuad::from_ints(2, 0) * s.clone();
    t.clone() * t
}

/// The three cutoffs: `2cosh²(2d0)`, and `e^{2d_z(τ)}·e^{2d0}` for `z = (0⁸;1,0)` and `z = l_∞`.
#[derive(Clone, Debug)]
pub struct Cutoffs<Z: IntScalar> {
    pub sinh2_d0: RQuad<Z>,
    pub two_cosh2_2d0: RQuad<Z>,
    pub horo_v9: SqrtExt<Z>,
    pub horo_l_inf: SqrtExt<Z>,
}

pub fn cutoffs<Z: IntScalar>() -> Result<Cutoffs<Z>> {
    let s = sinh2_d0::<Z>()?;
    let f = Form::lorentzian();
    let sp = special_vectors::<Z>();
    let e = exp2_d0(&s);
    let hv9 = horo_exp2(&f, &lift(&sp.rho1), &sp.tau)?.value;
    let hl = horo_exp2(&f, &lift(&sp.l_inf), &sp.tau)?.value;
    Ok(Cutoffs { two_cosh2_2d0: RQuad::from_ints(2, 0) * cosh2_2d0(&s), horo_v9: e.scale(&hv9), horo_l_inf: e.scale(&hl), sinh2_d0: s })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattices::simple_roots_32;
    use num_bigint::BigInt;

    type Z = BigInt;

    fn q(re: i64, im: i64) -> GaussQ<Z> {
        GaussQ::from_ints(re, im)
    }

    #[test]
    fn d0_value() {
        let s = sinh2_d0::<Z>().unwrap();
        // √2/8
        assert_eq!(s, RQuad::new(Ratio::zero(), Ratio::new(BigInt::from(1), BigInt::from(8))));
        assert!((s.to_f64().sqrt().asinh() - 0.4090).abs() < 5e-5);
    }

    #[test]
    fn cutoff_decimals() {
        let c = cutoffs::<Z>().unwrap();
        assert!((c.two_cosh2_2d0.to_f64() - 3.6642).abs() < 5e-5);
        assert!((c.horo_v9.to_f64() - 9.3379).abs() < 5e-5);
        assert!((c.horo_l_inf.to_f64() - 3.2043).abs() < 5e-5);
        assert_eq!(c.horo_v9.cmp_rq(&RQuad::from_ints(9, 0)), Ordering::Less);
        assert_eq!(c.horo_v9.cmp_rq(&RQuad::from_ints(10, 0)), Ordering::Greater);
        assert_eq!(c.horo_l_inf.cmp_rq(&RQuad::from_ints(3, 0)), Ordering::Less);
        assert_eq!(c.horo_l_inf.cmp_rq(&RQuad::from_ints(4, 0)), Ordering::Greater);
    }

    #[test]
    fn point_distances() {
        let f = Form::<Z>::lorentzian();
        let tau = special_vectors::<Z>().tau;
        assert_eq!(cosh2_pt_pt(&f, &tau, &tau).unwrap().value, RQuad::one());
        let zt: CVec<Z> = tau.iter().map(|x| x.clone() * Cyc8::zeta()).collect();
        assert_eq!(cosh2_pt_pt(&f, &zt, &tau).unwrap().value, RQuad::one());
        let r = lift(&simple_roots_32::<Z>()[0]);
        assert!(cosh2_pt_pt(&f, &r, &tau).is_err());
    }

    #[test]
    fn mirror_pairs() {
        let f = Form::<Z>::lorentzian();
        let roots: Vec<CVec<Z>> = simple_roots_32::<Z>().iter().map(|r| lift(r)).collect();
        let idx = |s: &str| crate::fingeom::Vertex::from_label(s).unwrap().index();
        // a and b1 braid, a and z are a dotted pair
        assert!(mirrors_meet(&f, &roots[idx("a")], &roots[idx("b1")]).unwrap());
        assert!(!mirrors_meet(&f, &roots[idx("a")], &roots[idx("z")]).unwrap());
        assert_eq!(cosh2_mirror_mirror(&f, &roots[idx("a")], &roots[idx("z")]).unwrap().value, RQuad::one());
        assert!(mirrors_meet(&f, &roots[idx("a")], &roots[idx("a")]).is_err());
    }

    #[test]
    fn heights() {
        let amb = lorentz_ambient::<Z>(8);
        let sp = special_vectors::<Z>();
        let mut s = vec![GaussQ::zero(); 10];
        s[0] = q(1, 1);
        s[8] = q(1, 0);
        // (σ; 1, n) with σ² = 2 is a root when Re(p̄n) = 0
        s[9] = q(-1, 1);
        assert_eq!(herm(&amb, &s, &s), q(2, 0));
        assert_eq!(height(&amb, &s, &sp.rho), Ratio::from_integer(BigInt::from(1)));
        assert_eq!(height(&amb, &sp.rho1, &sp.rho), Ratio::from_integer(BigInt::from(2)));
    }

    #[test]
    fn ideal_triangle_equality_case() {
        let f = Form::<Z>::lorentzian();
        let sp = special_vectors::<Z>();
        let x = sp.tau.clone();
        // rotate the null vector so that ⟨x, z⟩ is negative real; then x + tz, t > 0, runs toward z
        let z0 = lift(&sp.rho);
        let alpha = -f.inner(&x, &z0).conj();
        let z: CVec<Z> = z0.iter().map(|c| c.clone() * alpha.clone()).collect();
        let y: CVec<Z> = x.iter().zip(&z).map(|(a, b)| a.clone() + b.clone().scale(&Ratio::new(BigInt::from(1), BigInt::from(5)))).collect();
        assert!(ideal_triangle_check(&f, &z, &x, &y).unwrap());
        let c = cosh2_pt_pt(&f, &x, &y).unwrap().value;
        let a = horo_exp2(&f, &z, &x).unwrap().value;
        let b = horo_exp2(&f, &z, &y).unwrap().value;
        let rhs = (a.clone() + b.clone()) * (a.clone() + b.clone()) / (RQuad::from_ints(4, 0) * a * b);
        assert_eq!(c, rhs);
    }
}
