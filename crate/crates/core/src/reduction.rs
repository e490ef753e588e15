//! Reduction of roots and null vectors: height reduction toward the cusp `ρ` with
//! first and second shell reflections, distance reduction toward `τ` with the 32
//! simple reflections, the root sets `S0`, `S1`, `S2`, and membership witnesses.

use std::collections::HashMap;
use std::fs::File;
use std::io::{BufRead, BufReader, BufWriter, Write};
use std::path::Path;
use std::time::Instant;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::Ratio;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::error::{Error, Result};
use crate::fingeom::{edge_kind, s4_elements, s4_perm, EdgeKind, Vertex, LABELS};
use crate::isometry::{deflation_check, simple_reflections, word_isometry, Translation, Word};
use crate::lattices::{iso_phi, lorentz_ambient, make_bw16, simple_roots_32, special_vectors, to_qvec, HermLattice, IsoMap, QVec};
use crate::matrix::{herm, Mat};
use crate::scalar::{Gauss, GaussQ, IntScalar, RQuad};
use crate::shortvec::{min_norm_coset_reps, norm_class, real_coords, Enumerator};

// ---------------------------------------------------------------------------
// Height reduction toward ρ

/// `s = i^r (σ; m, p m̄⁻¹((2 − σ²)/4 + ν))`, `BW16` frame.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ShellRoot<Z: IntScalar> {
    pub sigma: QVec<Z>,
    pub m: Gauss<Z>,
    /// Purely imaginary.
    pub nu: GaussQ<Z>,
    pub unit: u8,
}

fn sq8<Z: IntScalar>(v: &[GaussQ<Z>]) -> Ratio<Z> {
    v[..8].iter().fold(Ratio::zero(), |a, x| a + x.norm())
}

impl<Z: IntScalar> ShellRoot<Z> {
    pub fn vector(&self) -> QVec<Z> {
        let quarter = GaussQ::new(Gauss::one(), Z::from_int(4));
        let a = quarter * (GaussQ::from_ints(2, 0) - GaussQ::from_ratios(sq8(&self.sigma), Ratio::zero()));
        let mbar_inv = GaussQ::from_gauss(self.m.conj()).inv().expect("m ≠ 0");
        let n = GaussQ::from_gauss(Gauss::p()) * mbar_inv * (a + self.nu.clone());
        let u = GaussQ::from_gauss(Gauss::unit(self.unit));
        let mut v: QVec<Z> = self.sigma.iter().map(|x| u.clone() * x.clone()).collect();
        v.push(u.clone() * GaussQ::from_gauss(self.m.clone()));
        v.push(u * n);
        v
    }

    pub fn height(&self) -> Z {
        self.m.norm()
    }
}

fn form_bw<Z: IntScalar>(u: &[GaussQ<Z>], v: &[GaussQ<Z>]) -> GaussQ<Z> {
    herm(&lorentz_ambient::<Z>(8), u, v)
}

/// `y(s, l) = |m|²⟨s/m, l/h⟩ = m⟨s, l⟩/h`.
pub fn y_of<Z: IntScalar>(s: &[GaussQ<Z>], l: &[GaussQ<Z>]) -> Result<GaussQ<Z>> {
    let (m, h) = (&s[8], &l[8]);
    if m.is_zero() || h.is_zero() {
        return Err(Error::Invalid("zero height coordinate".into()));
    }
    Ok(m.clone() * form_bw(s, l) / h.clone())
}

/// The exponent `e` with `ξ = i^e` when `|y − (1 − ξ̄)|² < 2`; `ξ = i` is tried first.
pub fn disc_condition<Z: IntScalar>(y: &GaussQ<Z>) -> Option<u8> {
    let two = Ratio::from_integer(Z::from_int(2));
    for (e, c) in [(1u8, GaussQ::from_ints(1, 1)), (3, GaussQ::from_ints(1, -1))] {
        if (y.clone() - c).norm() < two {
            return Some(e);
        }
    }
    None
}

/// `R_s^ξ(l)` for a root `s`, any frame with the Lorentzian ambient.
fn reflect_q<Z: IntScalar>(s: &[GaussQ<Z>], xi: u8, l: &[GaussQ<Z>]) -> QVec<Z> {
    let amb = lorentz_ambient::<Z>(8);
    let c = (GaussQ::one() - GaussQ::from_gauss(Gauss::unit(xi))) * herm(&amb, s, l) / herm(&amb, s, s);
    l.iter().zip(s).map(|(x, y)| x.clone() - c.clone() * y.clone()).collect()
}

/// One step of height reduction: the record of a reflection and the new height.
#[derive(Clone, Debug)]
pub struct NullReduction<Z: IntScalar> {
    /// Shell roots and exponents `e` of `ξ = i^e`, in the order applied.
    pub steps: Vec<(ShellRoot<Z>, u8)>,
    /// `|h|²` before each step, then the final 0.
    pub heights: Vec<Z>,
    /// The result is `i^unit ρ`.
    pub unit: u8,
}

/// `BW16` with its enumerator, for repeated shell searches.
pub struct HeightReducer<Z: IntScalar> {
    bw: HermLattice<Z>,
    en: Enumerator<Z>,
}

impl<Z: IntScalar> HeightReducer<Z> {
    pub fn new() -> Result<Self> {
        let bw = make_bw16::<Z>();
        let en = Enumerator::new(&bw)?;
        Ok(HeightReducer { bw, en })
    }

    /// Lattice vectors within squared distance `bound` of `t`, nearest first.
    fn near(&self, t: &[GaussQ<Z>], bound: i64) -> Result<Vec<(QVec<Z>, Ratio<Z>)>> {
        let c = real_coords(&self.bw, t)?;
        let mut v = self.en.close_vectors(&c, &Ratio::from_integer(Z::from_int(bound)));
        v.sort_by(|a, b| a.1.cmp(&b.1));
        Ok(v.into_iter().map(|(x, d)| (self.en.ambient(&x), d)).collect())
    }

    /// Picks `ν` in the admissible class minimising `|Im y|`, then tests the disc condition.
    fn try_shell(&self, sigma: QVec<Z>, m: Gauss<Z>, l: &[GaussQ<Z>]) -> Result<Option<(ShellRoot<Z>, u8)>> {
        // ν ∈ i(t0 + Z) keeps the last coordinate integral
        let quarter = Ratio::new(Z::one(), Z::from_int(4));
        let a = (Ratio::from_integer(Z::from_int(2)) - sq8(&sigma)) * quarter;
        let t0 = if m.norm() == Z::one() { a.fract() } else { Ratio::zero() };
        let at = |t: Ratio<Z>| ShellRoot { sigma: sigma.clone(), m: m.clone(), nu: GaussQ::from_ratios(Ratio::zero(), t), unit: 0 };
        let y0 = y_of(&at(t0.clone()).vector(), l)?;
        let y1 = y_of(&at(t0.clone() + Ratio::one()).vector(), l)?;
        let d = y1 - y0.clone();
        debug_assert!(d.re().is_zero());
        let k = (-(y0.im() / d.im())).round();
        let s = at(t0 + k.clone());
        let y = y0 + d.scale(&k);
        debug_assert!(y.im().abs() <= Ratio::one());
        let v = s.vector();
        if !self.is_root(&v) {
            return Ok(None);
        }
        Ok(disc_condition(&y).map(|e| (s, e)))
    }

    fn is_root(&self, v: &[GaussQ<Z>]) -> bool {
        v.iter().skip(8).all(|x| x.is_integral())
            && self.bw.member(&v[..8]).unwrap_or(false)
            && form_bw(v, v) == GaussQ::from_ints(2, 0)
    }

    /// A shell root whose `ξ`-reflection lowers `|h|²`, first shell tried first.
    pub fn find_shell_reducer(&self, l: &[GaussQ<Z>]) -> Result<Option<(ShellRoot<Z>, u8)>> {
        let h = l[8].clone();
        if h.is_zero() {
            return Err(Error::Invalid("zero height coordinate".into()));
        }
        let null = form_bw(l, l).is_zero();
        let h2 = h.norm();
        let hinv = h.inv().expect("h ≠ 0");
        let t: QVec<Z> = l[..8].iter().map(|x| x.clone() * hinv.clone()).collect();
        if null || h2 > Ratio::one() {
            for (sigma, _) in self.near(&t, 2)? {
                if let Some(r) = self.try_shell(sigma, Gauss::one(), l)? {
                    return Ok(Some(r));
                }
            }
        }
        if null || h2 > Ratio::from_integer(Z::from_int(2)) {
            // σ/p̄ within 1 of λ/h, i.e. σ within √2 of p̄λ/h
            let pb = GaussQ::from_gauss(Gauss::<Z>::pbar());
            let tp: QVec<Z> = t.iter().map(|x| pb.clone() * x.clone()).collect();
            for (sigma, _) in self.near(&tp, 2)? {
                let n = sq8(&sigma).to_integer();
                if n.mod_floor(&Z::from_int(4)) != Z::from_int(2) {
                    continue;
                }
                if let Some(r) = self.try_shell(sigma, Gauss::pbar(), l)? {
                    return Ok(Some(r));
                }
            }
        }
        Ok(None)
    }

    /// Reflections carrying a primitive null vector to a unit multiple of `ρ = (0; 0, 1)`.
    pub fn reduce_null_to_rho(&self, z: &[GaussQ<Z>]) -> Result<NullReduction<Z>> {
        if !form_bw(z, z).is_zero() {
            return Err(Error::Invalid("vector is not null".into()));
        }
        let mut z = z.to_vec();
        let mut steps = Vec::new();
        let mut heights = Vec::new();
        while !z[8].is_zero() {
            let ht = z[8].norm().to_integer();
            if let Some(&prev) = heights.last().as_ref() {
                if ht >= *prev {
                    return Err(Error::Verification("height did not decrease".into()));
                }
            }
            heights.push(ht);
            let (s, e) = self
                .find_shell_reducer(&z)?
                .ok_or_else(|| Error::Verification(format!("no shell reflection lowers height {}", heights.last().unwrap())))?;
            z = reflect_q(&s.vector(), e, &z);
            steps.push((s, e));
        }
        heights.push(Z::zero());
        if z[..9].iter().any(|x| !x.is_zero()) {
            return Err(Error::Verification("height-zero null vector is not a multiple of ρ".into()));
        }
        let unit = z[9]
            .to_gauss()
            .and_then(|g| g.unit_exponent())
            .ok_or_else(|| Error::Invalid("null vector is not primitive".into()))?;
        Ok(NullReduction { steps, heights, unit })
    }
}

pub fn find_shell_reducer<Z: IntScalar>(l: &[GaussQ<Z>]) -> Result<Option<(ShellRoot<Z>, u8)>> {
    HeightReducer::new()?.find_shell_reducer(l)
}

pub fn reduce_null_to_rho<Z: IntScalar>(z: &[GaussQ<Z>]) -> Result<NullReduction<Z>> {
    HeightReducer::new()?.reduce_null_to_rho(z)
}

// ---------------------------------------------------------------------------
// Root sets, BW16 frame

/// `r1 = (0⁸; 1, 1)`, `r2 = (0⁸; 1, i)`.
pub fn r_roots<Z: IntScalar>() -> [QVec<Z>; 2] {
    let mk = |n: GaussQ<Z>| {
        let mut v = vec![GaussQ::zero(); 10];
        v[8] = GaussQ::one();
        v[9] = n;
        v
    };
    [mk(GaussQ::one()), mk(GaussQ::from_ints(0, 1))]
}

/// `r_k`, `T_{λ_j,z_j}(r_k)`, `T_{iλ_j,z_j}(r_k)` with `λ_j` the basis of `BW16` and `z_j = iλ_j²/2`.
pub fn build_s0<Z: IntScalar>() -> Result<Vec<QVec<Z>>> {
    let bw = make_bw16::<Z>();
    let r = r_roots::<Z>();
    let mut out = r.to_vec();
    let i = GaussQ::from_ints(0, 1);
    for lam in &bw.basis {
        for u in [GaussQ::one(), i.clone()] {
            let t = Translation::canonical(lam.iter().map(|x| u.clone() * x.clone()).collect())?.to_isometry();
            out.extend(r.iter().map(|v| t.apply(v)));
        }
    }
    Ok(out)
}

fn shell_vec<Z: IntScalar>(sigma: &[GaussQ<Z>], m: GaussQ<Z>, n: GaussQ<Z>) -> QVec<Z> {
    let mut v = sigma.to_vec();
    v.push(m);
    v.push(n);
    v
}

/// Shortest representatives of the cosets of `Λ/p`: norms 0, 4 and 6 suffice.
pub fn reps_mod_p<Z: IntScalar>(bw: &HermLattice<Z>) -> Result<Vec<(QVec<Z>, Ratio<Z>)>> {
    let reps = min_norm_coset_reps(bw, &Gauss::p(), &Ratio::from_integer(Z::from_int(6)))?;
    if reps.len() != 256 {
        return Err(Error::Verification(format!("{} cosets of Λ/p reached, expected 256", reps.len())));
    }
    Ok(reps.into_iter().map(|(c, n)| (bw.vector(&to_qvec(&c)), n)).collect())
}

/// Shortest representatives of the cosets of `Λ/2` of norm `2 mod 4`; each has minimum 6.
pub fn reps_mod_2_class2<Z: IntScalar>(bw: &HermLattice<Z>) -> Result<Vec<(QVec<Z>, Ratio<Z>)>> {
    let reps = min_norm_coset_reps(bw, &Gauss::from_ints(2, 0), &Ratio::from_integer(Z::from_int(6)))?;
    let out: Vec<_> = reps
        .into_iter()
        .filter(|(c, _)| norm_class(bw, c).map(|r| r == 2).unwrap_or(false))
        .map(|(c, n)| (bw.vector(&to_qvec(&c)), n))
        .collect();
    if out.len() != 30720 {
        return Err(Error::Verification(format!("{} class-2 cosets of Λ/2 reached, expected 30720", out.len())));
    }
    Ok(out)
}

/// `(σ; 1, 1 − σ²/2 + ipk)` for `σ` over shortest representatives of `Λ/p`, `k = 0, 1`.
pub fn build_s1<Z: IntScalar>() -> Result<Vec<QVec<Z>>> {
    let bw = make_bw16::<Z>();
    let ip = GaussQ::from_ints(-1, 1);
    let mut out = Vec::with_capacity(512);
    for (sigma, n2) in reps_mod_p(&bw)? {
        let base = GaussQ::one() - GaussQ::from_ratios(n2 / Ratio::from_integer(Z::from_int(2)), Ratio::zero());
        for k in 0..2 {
            out.push(shell_vec(&sigma, GaussQ::one(), base.clone() + ip.clone() * GaussQ::from_ints(k, 0)));
        }
    }
    Ok(out)
}

/// `(σ; p̄, ½(1 − σ²/2) + ik)` for `σ` over shortest representatives of the
/// norm `2 mod 4` cosets of `Λ/2`, `k = 0..3`.
pub fn build_s2<Z: IntScalar>() -> Result<Vec<QVec<Z>>> {
    let bw = make_bw16::<Z>();
    let mut out = Vec::with_capacity(122880);
    for (sigma, n2) in reps_mod_2_class2(&bw)? {
        let base = (Ratio::one() - n2 / Ratio::from_integer(Z::from_int(2))) / Ratio::from_integer(Z::from_int(2));
        for k in 0..4 {
            out.push(shell_vec(&sigma, GaussQ::from_gauss(Gauss::pbar()), GaussQ::from_ratios(base.clone(), Ratio::from_integer(Z::from_int(k)))));
        }
    }
    Ok(out)
}

// ---------------------------------------------------------------------------
// Integer kernel, 4D4 frame

pub type G64 = Gauss<i64>;
/// A vector of `4D4 ⊕ G_{1,1}` with machine-integer coordinates.
pub type RootVec = [G64; 10];

const P: G64 = Gauss { re: 1, im: 1 };
const PBAR: G64 = Gauss { re: 1, im: -1 };

fn g0() -> G64 {
    Gauss { re: 0, im: 0 }
}

/// `⟨u, v⟩ = Σ ū_k v_k + ū₈ p̄ v₉ + ū₉ p v₈`.
pub fn form(u: &RootVec, v: &RootVec) -> G64 {
    let mut acc = g0();
    for k in 0..8 {
        acc += u[k].conj() * v[k];
    }
    acc + u[8].conj() * PBAR * v[9] + u[9].conj() * P * v[8]
}

/// Membership in `4D4 ⊕ G_{1,1}`: each pair `(x, y)` has `x ≡ y mod p`.
pub fn in_l_d4(v: &RootVec) -> bool {
    (0..4).all(|k| {
        let d = v[2 * k] - v[2 * k + 1];
        (d.re - d.im).rem_euclid(2) == 0
    })
}

pub fn to_rootvec<Z: IntScalar>(v: &[GaussQ<Z>]) -> Option<RootVec> {
    if v.len() != 10 {
        return None;
    }
    let mut out = [g0(); 10];
    for (o, x) in out.iter_mut().zip(v) {
        *o = x.to_gauss()?.cast::<i64>()?;
    }
    Some(out)
}

pub fn from_rootvec<Z: IntScalar>(v: &RootVec) -> QVec<Z> {
    v.iter().map(|x| GaussQ::from_gauss(Gauss::new(Z::from_int(x.re), Z::from_int(x.im)))).collect()
}

/// A rational frame change `x ↦ (N x)/d` with integer `N`.
#[derive(Clone, Debug)]
pub struct FrameMap {
    num: [[G64; 10]; 10],
    den: i64,
}

impl FrameMap {
    pub fn new(m: &Mat<GaussQ<BigInt>>) -> Result<Self> {
        let mut den = BigInt::one();
        for i in 0..10 {
            for j in 0..10 {
                den = den.lcm(m[(i, j)].den());
            }
        }
        let mut num = [[g0(); 10]; 10];
        for i in 0..10 {
            for j in 0..10 {
                let e = m[(i, j)].clone() * GaussQ::from_gauss(Gauss::new(den.clone(), BigInt::zero()));
                num[i][j] = e.to_gauss().and_then(|g| g.cast::<i64>()).ok_or_else(|| Error::Invalid("frame matrix too large".into()))?;
            }
        }
        let den = den.to_i64().ok_or_else(|| Error::Invalid("frame denominator too large".into()))?;
        Ok(FrameMap { num, den })
    }

    /// Image of a rational vector; `None` when it is not integral.
    pub fn apply<Z: IntScalar>(&self, v: &[GaussQ<Z>]) -> Option<RootVec> {
        let mut e: i64 = 1;
        for x in v {
            e = e.lcm(&x.den().to_i64()?);
        }
        let mut vn = [g0(); 10];
        for (o, x) in vn.iter_mut().zip(v) {
            let k = e / x.den().to_i64()?;
            *o = x.num().cast::<i64>()?.scale(&k);
        }
        let d = self.den.checked_mul(e)?;
        let mut out = [g0(); 10];
        for i in 0..10 {
            let mut acc = g0();
            for j in 0..10 {
                acc += self.num[i][j] * vn[j];
            }
            if acc.re % d != 0 || acc.im % d != 0 {
                return None;
            }
            out[i] = Gauss { re: acc.re / d, im: acc.im / d };
        }
        Some(out)
    }
}

/// `|⟨x, τ⟩|² = I − √2·J` for `τ = ζ̄ l_∞ − p_∞`, stored as `(I, J)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct TauValue {
    pub i: i64,
    pub j: i64,
}

impl TauValue {
    fn of(a: G64, b: G64) -> Self {
        // ⟨x,τ⟩ = ζ̄A − B with A = ⟨x,l∞⟩, B = ⟨x,p∞⟩
        let ab = a * b.conj();
        TauValue { i: a.norm() + b.norm(), j: ab.re + ab.im }
    }

    /// Strict comparison of `I − √2 J`.
    pub fn less(&self, o: &Self) -> bool {
        let x = (self.i - o.i) as i128;
        let y = (self.j - o.j) as i128;
        // x < √2·y
        match y.signum() {
            1 => x <= 0 || x * x < 2 * y * y,
            0 => x < 0,
            _ => x < 0 && x * x > 2 * y * y,
        }
    }

    /// `sinh² d(x⊥, τ) = |⟨x,τ⟩|² / (x² · (−τ²))` for a root `x`, with `τ² = −4√2`.
    pub fn sinh2(&self) -> RQuad<BigInt> {
        RQuad::new(Ratio::new(BigInt::from(-self.j), BigInt::from(8)), Ratio::new(BigInt::from(self.i), BigInt::from(16)))
    }
}

/// Order in which descent candidates are taken.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Policy {
    /// The smallest resulting distance, ties to the first in `(index, exponent)` order.
    Steepest,
    /// The first candidate in `(index, exponent)` order that is closer.
    FirstImprovement,
}

/// Result of distance reduction toward `τ`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum TauStatus {
    /// Ended at `i^unit s_target`.
    Reduced { target: usize, unit: u8 },
    /// No simple reflection moves the root closer to `τ`.
    Stuck { terminal: RootVec },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ReductionOutcome {
    pub status: TauStatus,
    pub policy: Policy,
    /// Letters in the order applied: `k` is `R_{s_k}^i`, `32 + k` its inverse.
    pub word: Word,
    pub steps: usize,
}

const MAX_STEPS: usize = 100_000;

/// The 32 simple roots with the data needed to step toward `τ`.
pub struct TauKernel {
    pub simple: Vec<RootVec>,
    sl: Vec<G64>,
    sp: Vec<G64>,
    pub l_inf: RootVec,
    pub p_inf: RootVec,
    lookup: HashMap<RootVec, (usize, u8)>,
}

impl TauKernel {
    pub fn new() -> Self {
        let simple: Vec<RootVec> = simple_roots_32::<BigInt>().iter().map(|v| to_rootvec(v).expect("integral")).collect();
        let sv = special_vectors::<BigInt>();
        let l_inf = to_rootvec(&sv.l_inf).expect("integral");
        let p_inf = to_rootvec(&sv.p_inf).expect("integral");
        let sl = simple.iter().map(|s| form(s, &l_inf)).collect();
        let sp = simple.iter().map(|s| form(s, &p_inf)).collect();
        let mut lookup = HashMap::new();
        for (k, s) in simple.iter().enumerate() {
            for r in 0..4u8 {
                let u = Gauss::<i64>::unit(r);
                lookup.insert(s.map(|x| u * x), (k, r));
            }
        }
        TauKernel { simple, sl, sp, l_inf, p_inf, lookup }
    }

    pub fn value(&self, x: &RootVec) -> TauValue {
        TauValue::of(form(x, &self.l_inf), form(x, &self.p_inf))
    }

    /// `(k, r)` with `x = i^r s_k`.
    pub fn simple_index(&self, x: &RootVec) -> Option<(usize, u8)> {
        self.lookup.get(x).copied()
    }

    /// `R_{s_k}^{i^e}(x)`.
    pub fn reflect(&self, k: usize, e: u8, x: &RootVec) -> RootVec {
        let c = coeff(form(&self.simple[k], x), e);
        let s = &self.simple[k];
        std::array::from_fn(|j| x[j] - c * s[j])
    }

    /// Best of the 96 candidates `R_{s_k}^ξ(x)` if it is strictly closer to `τ`.
    pub fn tau_step(&self, x: &RootVec) -> Option<(usize, u8, RootVec)> {
        self.tau_step_with(x, Policy::Steepest)
    }

    /// One descent step; candidates are scanned by `(index, exponent)`.
    pub fn tau_step_with(&self, x: &RootVec, policy: Policy) -> Option<(usize, u8, RootVec)> {
        let (a, b) = (form(x, &self.l_inf), form(x, &self.p_inf));
        let mut best = TauValue::of(a, b);
        let mut pick = None;
        'scan: for k in 0..32 {
            let w = form(&self.simple[k], x);
            if w.re == 0 && w.im == 0 {
                continue;
            }
            for e in 1..=3u8 {
                let c = coeff(w, e).conj();
                let v = TauValue::of(a - c * self.sl[k], b - c * self.sp[k]);
                if v.less(&best) {
                    best = v;
                    pick = Some((k, e));
                    if policy == Policy::FirstImprovement {
                        break 'scan;
                    }
                }
            }
        }
        pick.map(|(k, e)| (k, e, self.reflect(k, e, x)))
    }

    pub fn reduce_with(&self, x0: &RootVec, policy: Policy) -> ReductionOutcome {
        let mut x = *x0;
        let mut word = Vec::new();
        let mut last = self.value(&x);
        for steps in 0..MAX_STEPS {
            if let Some((target, unit)) = self.simple_index(&x) {
                return ReductionOutcome { status: TauStatus::Reduced { target, unit }, word, steps, policy };
            }
            match self.tau_step_with(&x, policy) {
                None => return ReductionOutcome { status: TauStatus::Stuck { terminal: x }, word, steps, policy },
                Some((k, e, nx)) => {
                    let v = self.value(&nx);
                    assert!(v.less(&last), "distance to τ did not decrease");
                    last = v;
                    x = nx;
                    push_letters(&mut word, k, e);
                }
            }
        }
        panic!("distance reduction exceeded {MAX_STEPS} steps");
    }

    /// Steepest descent; a root where it stalls is retried with first improvement.
    /// A `Stuck` result carries the steepest-descent terminal.
    pub fn reduce(&self, x0: &RootVec) -> ReductionOutcome {
        let out = self.reduce_with(x0, Policy::Steepest);
        if matches!(out.status, TauStatus::Reduced { .. }) {
            return out;
        }
        let retry = self.reduce_with(x0, Policy::FirstImprovement);
        if matches!(retry.status, TauStatus::Reduced { .. }) {
            retry
        } else {
            out
        }
    }

    /// Applies a word letter by letter.
    pub fn apply_word(&self, word: &[u8], x: &RootVec) -> Result<RootVec> {
        let mut x = *x;
        for &l in word {
            x = match l {
                1..=32 => self.reflect(l as usize - 1, 1, &x),
                33..=64 => self.reflect(l as usize - 33, 3, &x),
                _ => return Err(Error::Invalid(format!("word letter {l} out of range"))),
            };
        }
        Ok(x)
    }
}

impl Default for TauKernel {
    fn default() -> Self {
        Self::new()
    }
}

/// `(1 − i^e)·w/2`, exact because `p` divides `⟨s, x⟩` for roots of a `p`-modular lattice.
fn coeff(w: G64, e: u8) -> G64 {
    let t = (Gauss::<i64>::one() - Gauss::<i64>::unit(e)) * w;
    assert!(t.re % 2 == 0 && t.im % 2 == 0, "⟨s, x⟩ is not divisible by p");
    Gauss { re: t.re / 2, im: t.im / 2 }
}

fn push_letters(word: &mut Word, k: usize, e: u8) {
    let l = k as u8 + 1;
    match e {
        1 => word.push(l),
        2 => word.extend([l, l]),
        _ => word.push(l + 32),
    }
}

// ---------------------------------------------------------------------------
// Generation by the 32 simple reflections

/// Coordinates of the root used to unblock stuck roots, `4D4` frame.
pub const Y_ROOT: [(i64, i64); 10] = [(1, 2), (3, 0), (1, 1), (5, 1), (1, 2), (4, 1), (1, 2), (4, 1), (7, 0), (0, -6)];

pub fn y_root() -> RootVec {
    Y_ROOT.map(|(a, b)| Gauss { re: a, im: b })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum RootSet {
    S0,
    S1,
    S2,
}

/// Identifier `S1:17`, or `y` for the unblocking root.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum RootId {
    Set(RootSet, usize),
    Y,
}

impl std::fmt::Display for RootId {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            RootId::Set(s, i) => write!(f, "{s:?}:{i}"),
            RootId::Y => write!(f, "y"),
        }
    }
}

impl std::str::FromStr for RootId {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        if s == "y" {
            return Ok(RootId::Y);
        }
        let bad = || Error::Invalid(format!("bad root id {s}"));
        let (set, idx) = s.split_once(':').ok_or_else(bad)?;
        let set = match set {
            "S0" => RootSet::S0,
            "S1" => RootSet::S1,
            "S2" => RootSet::S2,
            _ => return Err(bad()),
        };
        Ok(RootId::Set(set, idx.parse().map_err(|_| bad())?))
    }
}

/// All roots of `S0 ∪ S1 ∪ S2` in the `4D4` frame, in canonical order.
pub struct RootSets {
    pub s0: Vec<RootVec>,
    pub s1: Vec<RootVec>,
    pub s2: Vec<RootVec>,
}

impl RootSets {
    pub fn build() -> Result<Self> {
        let phi = iso_phi::<BigInt>()?;
        Self::build_with(&phi)
    }

    pub fn build_with(phi: &IsoMap<BigInt>) -> Result<Self> {
        let fm = FrameMap::new(&phi.matrix)?;
        let conv = |v: Vec<QVec<i64>>| -> Result<Vec<RootVec>> {
            v.par_iter()
                .map(|x| {
                    let r = fm.apply(x).ok_or_else(|| Error::Verification("root is not integral in the 4D4 frame".into()))?;
                    if form(&r, &r) != Gauss::from_ints(2, 0) || !in_l_d4(&r) {
                        return Err(Error::Verification("image is not a root of L".into()));
                    }
                    Ok(r)
                })
                .collect()
        };
        Ok(RootSets { s0: conv(build_s0::<i64>()?)?, s1: conv(build_s1::<i64>()?)?, s2: conv(build_s2::<i64>()?)? })
    }

    pub fn len(&self) -> usize {
        self.s0.len() + self.s1.len() + self.s2.len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn get(&self, id: RootId) -> Option<RootVec> {
        match id {
            RootId::Set(RootSet::S0, i) => self.s0.get(i).copied(),
            RootId::Set(RootSet::S1, i) => self.s1.get(i).copied(),
            RootId::Set(RootSet::S2, i) => self.s2.get(i).copied(),
            RootId::Y => Some(y_root()),
        }
    }

    pub fn ids(&self) -> impl Iterator<Item = RootId> + '_ {
        let s0 = (0..self.s0.len()).map(|i| RootId::Set(RootSet::S0, i));
        let s1 = (0..self.s1.len()).map(|i| RootId::Set(RootSet::S1, i));
        let s2 = (0..self.s2.len()).map(|i| RootId::Set(RootSet::S2, i));
        s0.chain(s1).chain(s2)
    }
}

/// One line of the path file.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PathRecord {
    pub id: String,
    /// `Some(e)`: the word starts from `R_y^{i^e}` of the root.
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub conj: Option<u8>,
    pub word: Word,
    /// 1-based simple root index reached.
    pub target: usize,
    pub unit: u8,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct SetCounts {
    pub s0: usize,
    pub s1: usize,
    pub s2: usize,
    pub total: usize,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct GenerationReport {
    pub counts: SetCounts,
    pub reduced_directly: usize,
    /// Roots of `S0`, `S1`, `S2` where steepest descent alone stalls.
    pub steepest_stalled: [usize; 3],
    /// Of those, the ones reduced by first improvement.
    pub rescued_by_first_improvement: usize,
    pub stuck: usize,
    pub stuck_s0: usize,
    pub stuck_s1: usize,
    pub stuck_s2: usize,
    pub stuck_all_in_s2: bool,
    pub y_is_s2_shaped: bool,
    pub y_in_s2: bool,
    pub y_reduces: bool,
    pub y_stuck: bool,
    pub unblocked: usize,
    pub unblocked_exponents: [usize; 3],
    pub witnessed: usize,
    pub max_word_len: usize,
    pub total_letters: usize,
    pub path_sha256: String,
    pub elapsed_ms: u128,
}

impl GenerationReport {
    /// Every root has a witness, stuck roots lie in `S2`, `y` reduces and unblocks them all.
    pub fn passed(&self) -> bool {
        self.witnessed == self.counts.total
            && self.stuck > 0
            && self.stuck_all_in_s2
            && self.y_reduces
            && self.y_is_s2_shaped
            && self.unblocked == self.stuck
    }
}

fn record(id: RootId, conj: Option<u8>, out: &ReductionOutcome) -> Option<PathRecord> {
    match out.status {
        TauStatus::Reduced { target, unit } => Some(PathRecord { id: id.to_string(), conj, word: out.word.clone(), target: target + 1, unit }),
        TauStatus::Stuck { .. } => None,
    }
}

/// `y` pulled back to `BW16 ⊕ G_{1,1}` has the shape `(σ; p̄, ½(1 − σ²/2) + ik)` with `σ² ≡ 2 mod 4`.
fn y_shape(phi: &IsoMap<BigInt>) -> Result<bool> {
    let yb = phi.apply_inverse(&from_rootvec::<BigInt>(&y_root()));
    let bw = make_bw16::<BigInt>();
    if !bw.member(&yb[..8])? || yb[8] != GaussQ::from_gauss(Gauss::pbar()) {
        return Ok(false);
    }
    let n2 = sq8(&yb);
    if !n2.is_integer() || n2.to_integer().mod_floor(&BigInt::from(4)) != BigInt::from(2) {
        return Ok(false);
    }
    let base = (Ratio::one() - n2 / Ratio::from_integer(BigInt::from(2))) / Ratio::from_integer(BigInt::from(2));
    Ok(yb[9].re() == base && yb[9].im().is_integer())
}

/// Runs distance reduction on every root of `S0 ∪ S1 ∪ S2` and handles stuck roots via `y`.
/// When `emit` is given, the path file is written there.
pub fn prove_generation(emit: Option<&Path>) -> Result<(GenerationReport, Vec<PathRecord>)> {
    let start = Instant::now();
    let phi = iso_phi::<BigInt>()?;
    let sets = RootSets::build_with(&phi)?;
    let kernel = TauKernel::new();
    let ids: Vec<RootId> = sets.ids().collect();
    let outcomes: Vec<ReductionOutcome> = ids.par_iter().map(|&id| kernel.reduce(&sets.get(id).unwrap())).collect();

    let y = y_root();
    let y_out = kernel.reduce(&y);
    let y_reduces = matches!(y_out.status, TauStatus::Reduced { .. });
    let y_is_s2_shaped = y_shape(&phi)?;
    let y_in_s2 = sets.s2.contains(&y);

    let mut records = Vec::with_capacity(ids.len() + 1);
    if let Some(r) = record(RootId::Y, None, &y_out) {
        records.push(r);
    }
    let (mut stuck, mut by_set, mut unblocked, mut exps) = (0, [0usize; 3], 0, [0usize; 3]);
    let (mut stalled, mut rescued) = ([0usize; 3], 0);
    for (id, out) in ids.iter().zip(&outcomes) {
        if out.policy == Policy::FirstImprovement || matches!(out.status, TauStatus::Stuck { .. }) {
            if let RootId::Set(s, _) = id {
                stalled[*s as usize] += 1;
            }
            if out.policy == Policy::FirstImprovement {
                rescued += 1;
            }
        }
        if let Some(r) = record(*id, None, out) {
            records.push(r);
            continue;
        }
        stuck += 1;
        if let RootId::Set(s, _) = id {
            by_set[*s as usize] += 1;
        }
        let x0 = sets.get(*id).unwrap();
        for e in [1u8, 3, 2] {
            let conj = reflect_k(&y, e, &x0);
            let o = kernel.reduce(&conj);
            if let Some(r) = record(*id, Some(e), &o) {
                records.push(r);
                unblocked += 1;
                exps[[1, 3, 2].iter().position(|&x| x == e).unwrap()] += 1;
                break;
            }
        }
    }
    let witnessed = records.iter().filter(|r| r.id != "y").count();
    let (bytes, hash) = serialize_paths(&records)?;
    if let Some(p) = emit {
        let mut w = BufWriter::new(File::create(p)?);
        w.write_all(&bytes)?;
        w.flush()?;
    }
    let report = GenerationReport {
        counts: SetCounts { s0: sets.s0.len(), s1: sets.s1.len(), s2: sets.s2.len(), total: sets.len() },
        reduced_directly: ids.len() - stuck,
        steepest_stalled: stalled,
        rescued_by_first_improvement: rescued,
        stuck,
        stuck_s0: by_set[0],
        stuck_s1: by_set[1],
        stuck_s2: by_set[2],
        stuck_all_in_s2: by_set[0] == 0 && by_set[1] == 0,
        y_is_s2_shaped,
        y_in_s2,
        y_reduces,
        y_stuck: !y_reduces,
        unblocked,
        unblocked_exponents: exps,
        witnessed,
        max_word_len: records.iter().map(|r| r.word.len()).max().unwrap_or(0),
        total_letters: records.iter().map(|r| r.word.len()).sum(),
        path_sha256: hash,
        elapsed_ms: start.elapsed().as_millis(),
    };
    Ok((report, records))
}

/// `R_y^{i^e}(x)` for an arbitrary root `y`.
fn reflect_k(y: &RootVec, e: u8, x: &RootVec) -> RootVec {
    let c = coeff(form(y, x), e);
    std::array::from_fn(|j| x[j] - c * y[j])
}

/// NDJSON bytes and their SHA-256.
pub fn serialize_paths(records: &[PathRecord]) -> Result<(Vec<u8>, String)> {
    let mut bytes = Vec::new();
    for r in records {
        serde_json::to_writer(&mut bytes, r)?;
        bytes.push(b'\n');
    }
    let hash = hex::encode(Sha256::digest(&bytes));
    Ok((bytes, hash))
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct PathVerification {
    pub records: usize,
    pub verified: usize,
    pub failures: Vec<String>,
    pub missing: usize,
    pub duplicates: usize,
    pub y_verified: bool,
    pub sha256: String,
}

impl PathVerification {
    pub fn passed(&self) -> bool {
        self.failures.is_empty() && self.missing == 0 && self.duplicates == 0 && self.y_verified
    }
}

/// Replays every word of a path file from scratch.
pub fn verify_path_records(sets: &RootSets, records: &[PathRecord]) -> Result<PathVerification> {
    let kernel = TauKernel::new();
    let y = y_root();
    let results: Vec<std::result::Result<RootId, String>> = records
        .par_iter()
        .map(|r| {
            let id: RootId = r.id.parse().map_err(|e: Error| e.to_string())?;
            let mut x = sets.get(id).ok_or_else(|| format!("{}: unknown root", r.id))?;
            if let Some(e) = r.conj {
                if !(1..=3).contains(&e) || id == RootId::Y {
                    return Err(format!("{}: bad conjugation", r.id));
                }
                x = reflect_k(&y, e, &x);
            }
            let z = kernel.apply_word(&r.word, &x).map_err(|e| format!("{}: {e}", r.id))?;
            match kernel.simple_index(&z) {
                Some((k, u)) if k + 1 == r.target && u == r.unit => Ok(id),
                _ => Err(format!("{}: word does not end at the recorded simple root", r.id)),
            }
        })
        .collect();
    let mut seen: HashMap<RootId, usize> = HashMap::new();
    let mut failures = Vec::new();
    let mut y_verified = false;
    for r in results {
        match r {
            Ok(id) => {
                if id == RootId::Y {
                    y_verified = true;
                }
                *seen.entry(id).or_default() += 1;
            }
            Err(e) => failures.push(e),
        }
    }
    let missing = sets.ids().filter(|id| !seen.contains_key(id)).count();
    let duplicates = seen.values().filter(|&&c| c > 1).count();
    let needs_y = records.iter().any(|r| r.conj.is_some());
    let (_, sha256) = serialize_paths(records)?;
    Ok(PathVerification {
        records: records.len(),
        verified: seen.values().sum(),
        failures,
        missing,
        duplicates,
        y_verified: y_verified || !needs_y,
        sha256,
    })
}

pub fn read_paths(path: &Path) -> Result<Vec<PathRecord>> {
    let f = BufReader::new(File::open(path)?);
    let mut out = Vec::new();
    for line in f.lines() {
        let line = line?;
        if line.trim().is_empty() {
            continue;
        }
        out.push(serde_json::from_str(&line)?);
    }
    Ok(out)
}

/// Reads and verifies a path file against freshly built root sets.
pub fn verify_paths(path: &Path) -> Result<PathVerification> {
    let sets = RootSets::build()?;
    verify_path_records(&sets, &read_paths(path)?)
}

// ---------------------------------------------------------------------------
// Thirteen generators

/// The octagons whose `C7` deflation expresses the last vertex through the others.
pub const OCTAGONS: [[&str; 8]; 5] = [
    ["d2", "c2", "b2", "a", "b1", "c1", "d1", "e12"],
    ["d1", "c1", "b1", "e34", "b2", "c2", "d2", "z"],
    ["c2", "b2", "a", "b3", "e24", "d4", "c4", "f1"],
    ["c4", "b4", "e13", "d3", "z", "d2", "c2", "h1"],
    ["d2", "e23", "f3", "c4", "h3", "a", "b2", "g1"],
];

pub const THIRTEEN: [&str; 13] = ["a", "b1", "b2", "b3", "b4", "c1", "c2", "c3", "c4", "d1", "d2", "d3", "d4"];

#[derive(Clone, Debug, Serialize)]
pub struct OctagonCheck {
    pub vertices: Vec<String>,
    pub solid_cycle: bool,
    pub deflation: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct ThirteenReport {
    pub octagons: Vec<OctagonCheck>,
    /// Words in the thirteen generators for the other 19 simple reflections.
    pub words: Vec<(String, Word)>,
    pub words_verified: usize,
    pub only_thirteen_letters: bool,
}

impl ThirteenReport {
    pub fn passed(&self) -> bool {
        self.octagons.iter().all(|o| o.solid_cycle && o.deflation)
            && self.words.len() == 19
            && self.words_verified == 19
            && self.only_thirteen_letters
    }
}

fn vidx(label: &str) -> usize {
    Vertex::from_label(label).expect("vertex label").index()
}

fn invert_word(w: &[u8]) -> Word {
    w.iter().rev().map(|&l| if l > 32 { l - 32 } else { l + 32 }).collect()
}

/// `x0 ⋯ x6 = x1 ⋯ x7` gives `x7 = X⁻¹ x0 X` with `X = x1 ⋯ x6`; as letters in
/// order of action that is `X`, then `x0`, then `X⁻¹`.
fn deflation_word(words: &HashMap<usize, Word>, oct: &[&str; 8]) -> Word {
    let w = |s: &str| words.get(&vidx(s)).unwrap_or_else(|| panic!("no word yet for {s}")).clone();
    let mut x: Word = Vec::new();
    for s in oct[1..7].iter().rev() {
        x.extend(w(s));
    }
    let mut out = x.clone();
    out.extend(w(oct[0]));
    out.extend(invert_word(&x));
    out
}

fn permute_word(w: &[u8], perm: &[u8; 32]) -> Word {
    w.iter()
        .map(|&l| {
            let (k, inv) = if l > 32 { (l - 33, 32) } else { (l - 1, 0) };
            perm[k as usize] + 1 + inv
        })
        .collect()
}

/// Spreads the word for `src` to its images under the coordinate `S4`.
fn spread(words: &mut HashMap<usize, Word>, src: &str) {
    let w = words[&vidx(src)].clone();
    for pi in s4_elements() {
        let perm = s4_perm(pi);
        let dst = perm[vidx(src)] as usize;
        words.entry(dst).or_insert_with(|| permute_word(&w, &perm));
    }
}

pub fn thirteen_generator_check() -> Result<ThirteenReport> {
    let refl = simple_reflections::<BigInt>();
    let mut octagons = Vec::new();
    for oct in OCTAGONS.iter() {
        let ids: Vec<usize> = oct.iter().map(|s| vidx(s)).collect();
        let solid = (0..8).all(|t| edge_kind(Vertex::from_label(LABELS[ids[t]]).unwrap(), Vertex::from_label(LABELS[ids[(t + 1) % 8]]).unwrap()) == EdgeKind::Solid);
        let gens: Vec<_> = ids.iter().map(|&k| refl[k].clone()).collect();
        octagons.push(OctagonCheck { vertices: oct.iter().map(|s| s.to_string()).collect(), solid_cycle: solid, deflation: deflation_check(&gens, 7, 0) });
    }
    let mut words: HashMap<usize, Word> = THIRTEEN.iter().map(|s| (vidx(s), vec![vidx(s) as u8 + 1])).collect();
    for oct in OCTAGONS.iter() {
        let last = oct[7];
        let w = deflation_word(&words, oct);
        words.insert(vidx(last), w);
        spread(&mut words, last);
    }
    let gen_ids: Vec<usize> = THIRTEEN.iter().map(|s| vidx(s)).collect();
    let mut derived: Vec<(String, Word)> = (0..32)
        .filter(|k| !gen_ids.contains(k))
        .map(|k| (LABELS[k].to_string(), words.get(&k).cloned().unwrap_or_default()))
        .collect();
    derived.sort_by_key(|(l, _)| vidx(l));
    let only_thirteen_letters = derived.iter().all(|(_, w)| {
        !w.is_empty() && w.iter().all(|&l| gen_ids.contains(&(((l - 1) % 32) as usize)))
    });
    let verified: Vec<bool> = derived
        .par_iter()
        .map(|(l, w)| !w.is_empty() && word_isometry(&refl, w).map(|m| m == refl[vidx(l)]).unwrap_or(false))
        .collect();
    Ok(ThirteenReport { octagons, words: derived, words_verified: verified.iter().filter(|&&b| b).count(), only_thirteen_letters })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hyperbolic::{lift, sinh2_pt_mirror, Form};
    use crate::isometry::{reflection, unit, Frame};

    type Q = GaussQ<BigInt>;

    fn qi(re: i64, im: i64) -> Q {
        GaussQ::from_ints(re, im)
    }

    #[test]
    fn disc_condition_boundaries() {
        assert_eq!(disc_condition(&qi(1, 1)), Some(1));
        assert_eq!(disc_condition(&qi(1, -1)), Some(3));
        assert_eq!(disc_condition(&qi(0, 0)), None);
        assert_eq!(disc_condition(&qi(2, 2)), None);
        assert_eq!(disc_condition(&qi(2, 0)), None);
        assert_eq!(disc_condition(&(qi(1, 0) / qi(2, 0))), Some(1));
    }

    #[test]
    fn y_of_self_is_norm() {
        let bw = make_bw16::<BigInt>();
        for b in bw.basis.iter().take(3) {
            let s = ShellRoot { sigma: b.clone(), m: Gauss::one(), nu: Q::zero(), unit: 0 };
            let mut s = s;
            let a = (Ratio::from_integer(BigInt::from(2)) - sq8(b)) / Ratio::from_integer(BigInt::from(4));
            s.nu = GaussQ::from_ratios(Ratio::zero(), a.fract());
            let v = s.vector();
            assert_eq!(form_bw(&v, &v), qi(2, 0));
            assert_eq!(y_of(&v, &v).unwrap(), qi(2, 0));
        }
        assert!(y_of(&vec![Q::zero(); 10], &vec![Q::zero(); 10]).is_err());
    }

    #[test]
    fn y_matches_completed_square() {
        // Re y = 1 + |m|²/2·(1 − (σ/m − σ'/m')²/2)-type identity checked through
        // Re⟨s/m, s'/m'⟩ = 1/|m|² + 1/|m'|² − ½(σ/m − σ'/m')² for first-shell roots
        let sets = build_s1::<BigInt>().unwrap();
        for (a, b) in [(0usize, 7usize), (3, 100), (51, 400), (200, 201)] {
            let (s, t) = (&sets[a], &sets[b]);
            let y = y_of(s, t).unwrap();
            let d: QVec<BigInt> = s[..8].iter().zip(&t[..8]).map(|(x, z)| x.clone() - z.clone()).collect();
            let expect = Ratio::from_integer(BigInt::from(2)) - sq8(&d) / Ratio::from_integer(BigInt::from(2));
            assert_eq!(y.re(), expect);
        }
    }

    #[test]
    fn root_set_sizes_and_norms() {
        let s0 = build_s0::<BigInt>().unwrap();
        let s1 = build_s1::<i64>().unwrap();
        assert_eq!(s0.len(), 34);
        assert_eq!(s1.len(), 512);
        let l = crate::lattices::make_l_bw::<BigInt>();
        for v in &s0 {
            assert_eq!(form_bw(v, v), qi(2, 0));
            assert!(l.member(v).unwrap());
            assert!(l.is_primitive(v).unwrap());
        }
        for v in s1.iter().step_by(37) {
            let v: QVec<BigInt> = v.iter().map(|x| x.cast().unwrap()).collect();
            assert_eq!(form_bw(&v, &v), qi(2, 0));
            assert!(l.member(&v).unwrap());
        }
    }

    #[test]
    fn frame_map_matches_rational_matrix() {
        let phi = iso_phi::<BigInt>().unwrap();
        let fm = FrameMap::new(&phi.matrix).unwrap();
        for v in build_s0::<BigInt>().unwrap() {
            let exact = phi.apply(&v);
            assert_eq!(fm.apply(&v).unwrap(), to_rootvec(&exact).unwrap());
        }
    }

    #[test]
    fn tau_value_matches_hyperbolic_sinh2() {
        let k = TauKernel::new();
        let sv = special_vectors::<BigInt>();
        let f = Form::<BigInt>::lorentzian();
        let s0 = build_s0::<BigInt>().unwrap();
        let phi = iso_phi::<BigInt>().unwrap();
        for v in s0.iter().take(10) {
            let x = phi.apply(v);
            let rv = to_rootvec(&x).unwrap();
            let d = sinh2_pt_mirror(&f, &lift(&x), &sv.tau).unwrap();
            assert_eq!(d.value, k.value(&rv).sinh2());
        }
        for s in &k.simple {
            assert_eq!(k.value(s), TauValue { i: 2, j: 0 });
        }
    }

    #[test]
    fn tau_value_comparison() {
        let v = |i, j| TauValue { i, j };
        assert!(v(2, 0).less(&v(3, 0)));
        assert!(v(3, 1).less(&v(2, 0))); // 3 − √2 < 2
        assert!(!v(4, 1).less(&v(2, 0))); // 4 − √2 > 2
        assert!(v(5, 3).less(&v(1, 0))); // 5 − 3√2 < 1
        assert!(!v(5, 3).less(&v(2, 1))); // 5 − 3√2 > 2 − √2
        assert!(!v(2, 0).less(&v(2, 0)));
    }

    #[test]
    fn kernel_reflection_matches_matrices() {
        let k = TauKernel::new();
        let refl = simple_reflections::<BigInt>();
        let x = k.simple[5];
        let word: Word = vec![1, 14, 40, 3, 3, 60];
        let got = k.apply_word(&word, &x).unwrap();
        let m = word_isometry(&refl, &word).unwrap();
        assert_eq!(to_rootvec(&m.apply(&from_rootvec::<BigInt>(&x))).unwrap(), got);
        let r = reflection(&from_rootvec::<BigInt>(&y_root()), &unit(1), Frame::FourD4).unwrap();
        assert_eq!(to_rootvec(&r.apply(&from_rootvec::<BigInt>(&x))).unwrap(), reflect_k(&y_root(), 1, &x));
    }

    #[test]
    fn reduction_of_reflected_simple_root() {
        let k = TauKernel::new();
        // a far-away root: apply a few reflections to s_a
        let x = k.apply_word(&[2, 10, 20, 31, 5, 17, 44], &k.simple[0]).unwrap();
        let out = k.reduce(&x);
        match out.status {
            TauStatus::Reduced { target, unit } => {
                let z = k.apply_word(&out.word, &x).unwrap();
                assert_eq!(z, k.simple[target].map(|c| Gauss::<i64>::unit(unit) * c));
            }
            TauStatus::Stuck { .. } => panic!("stuck"),
        }
        assert!(k.tau_step(&k.simple[3]).is_none());
    }

    #[test]
    fn y_root_is_a_root_of_s2_shape() {
        let y = y_root();
        assert_eq!(form(&y, &y), Gauss::from_ints(2, 0));
        assert!(in_l_d4(&y));
        assert!(y_shape(&iso_phi::<BigInt>().unwrap()).unwrap());
    }

    #[test]
    fn null_reduction_of_rho1() {
        let hr = HeightReducer::<BigInt>::new().unwrap();
        let rho = special_vectors::<BigInt>().rho;
        let r0 = hr.reduce_null_to_rho(&rho).unwrap();
        assert!(r0.steps.is_empty());
        let rho1 = special_vectors::<BigInt>().rho1;
        let r = hr.reduce_null_to_rho(&rho1).unwrap();
        assert!(!r.steps.is_empty());
        let mut z = rho1.clone();
        for (s, e) in &r.steps {
            z = reflect_q(&s.vector(), *e, &z);
        }
        let mut expect = vec![Q::zero(); 10];
        expect[9] = GaussQ::from_gauss(Gauss::unit(r.unit));
        assert_eq!(z, expect);
        assert!(r.heights.windows(2).all(|w| w[0] > w[1]));
    }

    #[test]
    fn null_reduction_of_translated_cusps() {
        let hr = HeightReducer::<BigInt>::new().unwrap();
        let bw = make_bw16::<BigInt>();
        let rho1 = special_vectors::<BigInt>().rho1;
        for (j, k) in [(0usize, 1usize), (2, 5), (7, 3)] {
            let lam: QVec<BigInt> = bw.basis[j].iter().zip(&bw.basis[k]).map(|(a, b)| a.clone() + qi(0, 1) * b.clone()).collect();
            let t = Translation::canonical(lam).unwrap().to_isometry();
            // a cusp of height 2 away from both ρ and ρ1
            let r = reflection(&build_s1::<BigInt>().unwrap()[9], &unit(1), Frame::Bw16).unwrap();
            let z = r.apply(&t.apply(&rho1));
            let out = hr.reduce_null_to_rho(&z).unwrap();
            let mut w = z.clone();
            for (s, e) in &out.steps {
                w = reflect_q(&s.vector(), *e, &w);
            }
            assert!(w[..9].iter().all(|x| x.is_zero()));
        }
    }

    #[test]
    fn shell_reducer_on_roots() {
        let hr = HeightReducer::<BigInt>::new().unwrap();
        let s2 = build_s2_sample();
        for l in &s2 {
            let (s, e) = hr.find_shell_reducer(l).unwrap().expect("reducer");
            let y = y_of(&s.vector(), l).unwrap();
            assert_eq!(disc_condition(&y).is_some(), true);
            let nl = reflect_q(&s.vector(), e, l);
            assert!(nl[8].norm() < l[8].norm());
        }
    }

    fn build_s2_sample() -> Vec<QVec<BigInt>> {
        // height-4 roots: reflect S2 roots of height 2 by a first-shell root
        let s1 = build_s1::<BigInt>().unwrap();
        let r = reflection(&s1[3], &unit(1), Frame::Bw16).unwrap();
        let mut out = Vec::new();
        for v in s1.iter().step_by(61) {
            let w = r.apply(v);
            if w[8].norm() > Ratio::one() {
                out.push(w);
            }
        }
        assert!(!out.is_empty());
        out
    }

    #[test]
    fn nu_parity_depends_on_sigma_norm() {
        // first shell: 2ν/i is even when σ² ≡ 2 mod 4, odd when σ² ≡ 0 mod 4
        let hr = HeightReducer::<BigInt>::new().unwrap();
        let bw = make_bw16::<BigInt>();
        let sv = special_vectors::<BigInt>();
        let mut seen = [false; 2];
        let s1 = build_s1::<BigInt>().unwrap();
        let r = reflection(&s1[5], &unit(3), Frame::Bw16).unwrap();
        let z = r.apply(&sv.rho1);
        let _ = hr.find_shell_reducer(&z).unwrap();
        for (sigma, _) in reps_mod_p(&bw).unwrap() {
            let n = sq8(&sigma).to_integer().mod_floor(&BigInt::from(4));
            let a = (Ratio::from_integer(BigInt::from(2)) - sq8(&sigma)) / Ratio::from_integer(BigInt::from(4));
            let s = ShellRoot { sigma, m: Gauss::one(), nu: GaussQ::from_ratios(Ratio::zero(), a.fract()), unit: 0 };
            let v = s.vector();
            assert!(v[9].is_integral());
            let odd = !(a.fract() * Ratio::from_integer(BigInt::from(2))).to_integer().is_even();
            assert_eq!(odd, n == BigInt::zero());
            seen[odd as usize] = true;
        }
        assert!(seen[0] && seen[1]);
    }

    #[test]
    fn thirteen_generators() {
        let r = thirteen_generator_check().unwrap();
        for o in &r.octagons {
            assert!(o.solid_cycle, "{:?}", o.vertices);
            assert!(o.deflation, "{:?}", o.vertices);
        }
        assert_eq!(r.words.len(), 19);
        assert_eq!(r.words_verified, 19);
        assert!(r.only_thirteen_letters);
    }
}
