//! Short and close vectors of positive definite Gaussian lattices.
//!
//! A lattice of rank `n` over `G` is treated as a Z-lattice of rank `2n` with basis
//! `b_1, …, b_n, i·b_1, …, i·b_n` and the form `Re⟨,⟩`. Enumeration is Fincke–Pohst
//! on an exact rational LDL decomposition, pivoting in the natural order.

use std::path::{Path, PathBuf};

use num_rational::Ratio;
use num_traits::{Signed, Zero};
use rand::{Rng, SeedableRng};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::error::{Error, Result};
use crate::lattices::{HermLattice, QVec};
use crate::matrix::{herm, Mat};
use crate::scalar::{gauss_ball, ratio_cast, ratio_to_f64, Gauss, GaussQ, IntScalar};

/// Gaussian coordinates with respect to the lattice basis.
pub type Coords<Z> = Vec<Gauss<Z>>;

/// `Re⟨u_k, u_l⟩` for the real basis `b_j, i·b_j`.
pub fn real_gram<Z: IntScalar>(l: &HermLattice<Z>) -> Mat<Ratio<Z>> {
    let n = l.rank();
    Mat::from_fn(2 * n, 2 * n, |k, m| {
        let g = &l.gram[(k % n, m % n)];
        match (k < n, m < n) {
            (true, true) | (false, false) => g.re(),
            (true, false) => -g.im(),
            (false, true) => g.im(),
        }
    })
}

/// `Q(x) = Σ_i d_i (x_i + Σ_{j>i} μ_ij x_j)²`.
#[derive(Clone, Debug)]
struct Ldl<K: IntScalar> {
    d: Vec<Ratio<K>>,
    mu: Vec<Vec<Ratio<K>>>,
}

fn ldl<K: IntScalar>(g: &Mat<Ratio<K>>) -> Result<Ldl<K>> {
    let n = g.rows();
    let mut a: Vec<Vec<Ratio<K>>> = g.to_rows();
    let mut d = vec![Ratio::zero(); n];
    let mut mu = vec![vec![Ratio::zero(); n]; n];
    for i in 0..n {
        if !a[i][i].is_positive() {
            return Err(Error::Invalid("form is not positive definite".into()));
        }
        d[i] = a[i][i].clone();
        for j in i + 1..n {
            mu[i][j] = a[i][j].clone() / d[i].clone();
        }
        for j in i + 1..n {
            for k in i + 1..n {
                let t = mu[i][j].clone() * a[i][k].clone();
                a[j][k] = a[j][k].clone() - t;
            }
        }
    }
    Ok(Ldl { d, mu })
}

/// Calls `visit(x, Q(x − c))` for every integer `x` with `Q(x − c) ≤ bound`. The
/// visitor may shrink the bound by returning a new one.
fn enumerate<K: IntScalar>(
    f: &Ldl<K>,
    center: &[Ratio<K>],
    bound: Ratio<K>,
    visit: &mut dyn FnMut(&[i64], &Ratio<K>) -> Option<Ratio<K>>,
) {
    let n = f.d.len();
    let mut x = vec![0i64; n];
    let mut bound = bound;
    rec(f, center, n, Ratio::zero(), &mut x, &mut bound, visit);
}

fn rec<K: IntScalar>(
    f: &Ldl<K>,
    c: &[Ratio<K>],
    level: usize,
    acc: Ratio<K>,
    x: &mut [i64],
    bound: &mut Ratio<K>,
    visit: &mut dyn FnMut(&[i64], &Ratio<K>) -> Option<Ratio<K>>,
) {
    if level == 0 {
        if let Some(b) = visit(x, &acc) {
            *bound = b;
        }
        return;
    }
    let i = level - 1;
    let n = x.len();
    // x_i must satisfy d_i (x_i − s)² ≤ bound − acc
    let mut s = c[i].clone();
    for j in i + 1..n {
        let xj: Ratio<K> = Ratio::from_integer(K::from_int(x[j]));
        s = s - f.mu[i][j].clone() * (xj - c[j].clone());
    }
    let term = |v: i64| {
        let t = Ratio::from_integer(K::from_int(v)) - s.clone();
        f.d[i].clone() * t.clone() * t
    };
    let start = s.ceil().to_integer().to_i64().expect("coordinate fits in i64");
    for dir in [1i64, -1] {
        let mut v = if dir == 1 { start } else { start - 1 };
        loop {
            let q = acc.clone() + term(v);
            if q > *bound {
                break;
            }
            x[i] = v;
            rec(f, c, i, q, x, bound, visit);
            v += dir;
        }
    }
    x[i] = 0;
}

/// Positive definite lattice prepared for enumeration, with arithmetic in `i128`
/// where the entries fit.
pub struct Enumerator<Z: IntScalar> {
    n: usize,
    ldl_small: Option<Ldl<i128>>,
    ldl_big: Ldl<Z>,
    basis: Vec<QVec<Z>>,
}

fn to_coords<Z: IntScalar>(x: &[i64]) -> Coords<Z> {
    let n = x.len() / 2;
    (0..n).map(|j| Gauss::new(Z::from_int(x[j]), Z::from_int(x[n + j]))).collect()
}

impl<Z: IntScalar> Enumerator<Z> {
    pub fn new(l: &HermLattice<Z>) -> Result<Self> {
        let g = real_gram(l);
        let ldl_big = ldl(&g)?;
        let ldl_small = (|| {
            let d = ldl_big.d.iter().map(ratio_cast).collect::<Option<Vec<_>>>()?;
            let mu = ldl_big.mu.iter().map(|r| r.iter().map(ratio_cast).collect::<Option<Vec<_>>>()).collect::<Option<Vec<_>>>()?;
            Some(Ldl { d, mu })
        })();
        Ok(Enumerator { n: l.rank(), ldl_small, ldl_big, basis: l.basis.clone() })
    }

    fn run(&self, center: &[Ratio<Z>], bound: &Ratio<Z>, visit: &mut dyn FnMut(&[i64], &Ratio<Z>) -> Option<Ratio<Z>>) {
        let small = self.ldl_small.as_ref().and_then(|f| {
            let c = center.iter().map(ratio_cast::<Z, i128>).collect::<Option<Vec<_>>>()?;
            Some((f, c, ratio_cast::<Z, i128>(bound)?))
        });
        match small {
            Some((f, c, b)) => enumerate(f, &c, b, &mut |x, q| {
                let q = ratio_cast::<i128, Z>(q).expect("widening cast");
                visit(x, &q).map(|nb| ratio_cast::<Z, i128>(&nb).expect("bound only shrinks"))
            }),
            None => enumerate(&self.ldl_big, center, bound.clone(), visit),
        }
    }

    /// All nonzero `v` with `v² ≤ bound`, as `(coords, v²)`.
    pub fn short_vectors(&self, bound: &Ratio<Z>) -> Vec<(Coords<Z>, Ratio<Z>)> {
        let zero = vec![Ratio::zero(); 2 * self.n];
        let mut out = Vec::new();
        self.run(&zero, bound, &mut |x, q| {
            if !q.is_zero() {
                out.push((to_coords(x), q.clone()));
            }
            None
        });
        out.sort_by(|a, b| a.1.cmp(&b.1).then_with(|| cmp_coords(&a.0, &b.0)));
        out
    }

    /// Lattice points within squared distance `bound` of the real point `center`.
    pub fn close_vectors(&self, center: &[Ratio<Z>], bound: &Ratio<Z>) -> Vec<(Coords<Z>, Ratio<Z>)> {
        let mut out = Vec::new();
        self.run(center, bound, &mut |x, q| {
            out.push((to_coords(x), q.clone()));
            None
        });
        out
    }

    /// Closest lattice points to `center`; ties are all returned.
    pub fn closest(&self, center: &[Ratio<Z>]) -> (Vec<Coords<Z>>, Ratio<Z>) {
        // Babai rounding gives the initial radius
        let x0: Vec<i64> = center.iter().map(|c| c.round().to_integer().to_i64().expect("fits")).collect();
        let mut bound = self.quad_dist(&x0, center);
        let mut best: Vec<Coords<Z>> = Vec::new();
        self.run(center, &bound.clone(), &mut |x, q| {
            if *q < bound {
                bound = q.clone();
                best.clear();
            }
            if *q == bound {
                best.push(to_coords(x));
            }
            Some(bound.clone())
        });
        best.sort_by(cmp_coords);
        (best, bound)
    }

    fn quad_dist(&self, x: &[i64], c: &[Ratio<Z>]) -> Ratio<Z> {
        let f = &self.ldl_big;
        let n = x.len();
        let mut total = Ratio::zero();
        for i in 0..n {
            let mut t = Ratio::from_integer(Z::from_int(x[i])) - c[i].clone();
            for j in i + 1..n {
                t = t + f.mu[i][j].clone() * (Ratio::from_integer(Z::from_int(x[j])) - c[j].clone());
            }
            total = total + f.d[i].clone() * t.clone() * t;
        }
        total
    }

    pub fn ambient(&self, c: &[Gauss<Z>]) -> QVec<Z> {
        let dim = self.basis[0].len();
        let mut v = vec![GaussQ::zero(); dim];
        for (cj, b) in c.iter().zip(&self.basis) {
            if cj.is_zero() {
                continue;
            }
            let cq = GaussQ::from_gauss(cj.clone());
            for (vk, bk) in v.iter_mut().zip(b) {
                *vk = vk.clone() + cq.clone() * bk.clone();
            }
        }
        v
    }
}

fn cmp_coords<Z: IntScalar>(a: &Coords<Z>, b: &Coords<Z>) -> std::cmp::Ordering {
    a.iter().map(|x| (&x.re, &x.im)).cmp(b.iter().map(|x| (&x.re, &x.im)))
}

/// Real coordinates `(Re c, Im c)` of an ambient vector in the lattice's rational span.
pub fn real_coords<Z: IntScalar>(l: &HermLattice<Z>, t: &[GaussQ<Z>]) -> Result<Vec<Ratio<Z>>> {
    let c = l.coords(t).ok_or_else(|| Error::Invalid("target not in the span of the lattice".into()))?;
    Ok(c.iter().map(|x| x.re()).chain(c.iter().map(|x| x.im())).collect())
}

/// All `v ∈ L` with `v² = N`, in lattice coordinates, sorted.
pub fn enumerate_norm<Z: IntScalar>(l: &HermLattice<Z>, norm: &Ratio<Z>) -> Result<Vec<Coords<Z>>> {
    if !norm.is_positive() {
        return Err(Error::Invalid("norm must be positive".into()));
    }
    let e = Enumerator::new(l)?;
    let mut v: Vec<Coords<Z>> = e.short_vectors(norm).into_iter().filter(|(_, q)| q == norm).map(|(c, _)| c).collect();
    v.sort_by(cmp_coords);
    Ok(v)
}

/// Minimum norm of a nonzero vector.
pub fn minimum<Z: IntScalar>(l: &HermLattice<Z>) -> Result<Ratio<Z>> {
    let bound = (0..l.rank()).map(|i| l.gram[(i, i)].re()).min().ok_or_else(|| Error::Invalid("rank zero".into()))?;
    let e = Enumerator::new(l)?;
    Ok(e.short_vectors(&bound).into_iter().map(|(_, q)| q).min().expect("basis vectors are within the bound"))
}

#[derive(Clone, Debug)]
pub struct Cvp<Z: IntScalar> {
    /// Nearest lattice vectors in ambient coordinates.
    pub nearest: Vec<QVec<Z>>,
    pub dist2: Ratio<Z>,
}

pub fn cvp<Z: IntScalar>(l: &HermLattice<Z>, t: &[GaussQ<Z>]) -> Result<Cvp<Z>> {
    let e = Enumerator::new(l)?;
    let c = real_coords(l, t)?;
    let (best, dist2) = e.closest(&c);
    Ok(Cvp { nearest: best.iter().map(|x| e.ambient(x)).collect(), dist2 })
}

/// Canonical residues `Σ c_j b_j` with each `c_j` in the residue system of `m`.
pub fn coset_reps_iter<Z: IntScalar>(rank: usize, m: &Gauss<Z>) -> Result<impl Iterator<Item = Coords<Z>>> {
    if m.is_zero() {
        return Err(Error::Invalid("modulus is zero".into()));
    }
    let bound = m.norm().to_u64().ok_or_else(|| Error::Invalid("modulus too large".into()))?;
    let mut residues: Vec<Gauss<Z>> = gauss_ball::<Z>(bound).into_iter().map(|x| x.residue(m)).collect();
    residues.sort_by(|a, b| (&a.re, &a.im).cmp(&(&b.re, &b.im)));
    residues.dedup();
    let k = residues.len();
    let total = k.checked_pow(rank as u32).ok_or_else(|| Error::Invalid("too many cosets".into()))?;
    Ok((0..total).map(move |mut idx| {
        let mut c = Vec::with_capacity(rank);
        for _ in 0..rank {
            c.push(residues[idx % k].clone());
            idx /= k;
        }
        c
    }))
}

pub fn coset_reps<Z: IntScalar>(l: &HermLattice<Z>, m: &Gauss<Z>) -> Result<Vec<Coords<Z>>> {
    Ok(coset_reps_iter(l.rank(), m)?.collect())
}

/// For every coset of `L/mL` containing a vector of norm `≤ bound`, its shortest
/// vector, ties broken by coordinates. Output is sorted by `(norm, coords)`; the
/// zero coset comes first.
pub fn min_norm_coset_reps<Z: IntScalar>(l: &HermLattice<Z>, m: &Gauss<Z>, bound: &Ratio<Z>) -> Result<Vec<(Coords<Z>, Ratio<Z>)>> {
    if m.is_zero() {
        return Err(Error::Invalid("modulus is zero".into()));
    }
    let zero = (vec![Gauss::zero(); l.rank()], Ratio::zero());
    let short = Enumerator::new(l)?.short_vectors(bound);
    let mut seen = std::collections::HashSet::new();
    let mut out = Vec::new();
    for (c, n) in std::iter::once(zero).chain(short) {
        let key: Vec<Gauss<Z>> = c.iter().map(|x| x.residue(m)).collect();
        if seen.insert(key) {
            out.push((c, n));
        }
    }
    Ok(out)
}

/// `v² mod 4` for `v` with the given lattice coordinates.
pub fn norm_class<Z: IntScalar>(l: &HermLattice<Z>, c: &[Gauss<Z>]) -> Result<u8> {
    let cq: QVec<Z> = c.iter().cloned().map(GaussQ::from_gauss).collect();
    let n = herm(&l.gram, &cq, &cq).re();
    if !n.is_integer() {
        return Err(Error::NotIntegral);
    }
    let r = n.to_integer().mod_floor(&Z::from_int(4)).to_u8().expect("residue mod 4");
    if r % 2 == 1 {
        return Err(Error::Invalid("odd norm in an even lattice".into()));
    }
    Ok(r)
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct CoveringReport {
    pub trials: usize,
    pub seed: u64,
    /// Points within squared distance 2 of `L`.
    pub near_lattice: usize,
    /// Remaining points within squared distance 1 of `p⁻¹v`, `v² ≡ 2 mod 4`.
    pub near_half: usize,
    /// Indices of uncovered points.
    pub failures: Vec<usize>,
    pub max_dist2_lattice: f64,
}

fn f64_ldl(f: &Ldl<impl IntScalar>) -> (Vec<f64>, Vec<Vec<f64>>) {
    (f.d.iter().map(ratio_to_f64).collect(), f.mu.iter().map(|r| r.iter().map(ratio_to_f64).collect()).collect())
}

/// Float Fincke–Pohst used only to find candidates; every witness is rechecked exactly.
fn float_close(d: &[f64], mu: &[Vec<f64>], c: &[f64], bound: f64, visit: &mut dyn FnMut(&[i64]) -> bool) -> bool {
    fn go(d: &[f64], mu: &[Vec<f64>], c: &[f64], level: usize, acc: f64, bound: f64, x: &mut [i64], visit: &mut dyn FnMut(&[i64]) -> bool) -> bool {
        if level == 0 {
            return visit(x);
        }
        let i = level - 1;
        let mut s = c[i];
        for j in i + 1..x.len() {
            s -= mu[i][j] * (x[j] as f64 - c[j]);
        }
        let r = ((bound - acc).max(0.0) / d[i]).sqrt();
        let (lo, hi) = ((s - r).ceil() as i64, (s + r).floor() as i64);
        for v in lo..=hi {
            let t = v as f64 - s;
            x[i] = v;
            if go(d, mu, c, i, acc + d[i] * t * t, bound, x, visit) {
                x[i] = 0;
                return true;
            }
        }
        x[i] = 0;
        false
    }
    let mut x = vec![0i64; d.len()];
    go(d, mu, c, d.len(), 0.0, bound, &mut x, visit)
}

/// Samples points of `L ⊗ R` and checks each is within squared distance 2 of `L`
/// or within squared distance 1 of `p⁻¹v` for some `v ∈ L` with `v² ≡ 2 mod 4`.
pub fn covering_sample<Z: IntScalar>(l: &HermLattice<Z>, trials: usize, seed: u64) -> Result<CoveringReport> {
    const DEN_BITS: u32 = 24;
    let e = Enumerator::new(l)?;
    let (d, mu) = f64_ldl(&e.ldl_big);
    let n2 = 2 * l.rank();
    let n = l.rank();
    let den = Z::from_int(1 << DEN_BITS);
    // p·x in real coordinates: multiplication by 1+i on G^n
    let times_p = |y: &[Ratio<Z>]| -> Vec<Ratio<Z>> {
        (0..n2).map(|k| if k < n { y[k].clone() - y[k + n].clone() } else { y[k - n].clone() + y[k].clone() }).collect()
    };
    let outcomes: Vec<(Option<u8>, f64)> = (0..trials)
        .into_par_iter()
        .map(|t| {
            let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
            rng.set_stream(t as u64);
            let y: Vec<Ratio<Z>> = (0..n2).map(|_| Ratio::new(Z::from_int(rng.gen_range(0..1i64 << DEN_BITS)), den.clone())).collect();
            let yf: Vec<f64> = y.iter().map(ratio_to_f64).collect();
            let two = Ratio::from_integer(Z::from_int(2));
            let mut best = f64::INFINITY;
            let hit = float_close(&d, &mu, &yf, 2.0 + 1e-6, &mut |x| {
                let q = e.quad_dist(x, &y);
                best = best.min(ratio_to_f64(&q));
                q <= two
            });
            if hit {
                return (Some(0), best);
            }
            let py = times_p(&y);
            let pyf: Vec<f64> = py.iter().map(ratio_to_f64).collect();
            let hit = float_close(&d, &mu, &pyf, 2.0 + 1e-6, &mut |x| {
                // |x − p⁻¹v|² = |px − v|²/2
                e.quad_dist(x, &py) <= two && norm_class(l, &to_coords::<Z>(x)).ok() == Some(2)
            });
            (hit.then_some(1), best)
        })
        .collect();
    let mut rep = CoveringReport { trials, seed, near_lattice: 0, near_half: 0, failures: Vec::new(), max_dist2_lattice: 0.0 };
    for (t, (o, best)) in outcomes.into_iter().enumerate() {
        match o {
            Some(0) => {
                rep.near_lattice += 1;
                rep.max_dist2_lattice = rep.max_dist2_lattice.max(best);
            }
            Some(_) => rep.near_half += 1,
            None => rep.failures.push(t),
        }
    }
    Ok(rep)
}

#[derive(Serialize, Deserialize)]
struct CacheFile {
    lattice: String,
    norm: String,
    sha256: String,
    vectors: Vec<Vec<(i64, i64)>>,
}

fn cache_path(dir: &Path, lattice: &str, norm: &str) -> PathBuf {
    let key: String = format!("{lattice}-{norm}").chars().map(|c| if c.is_ascii_alphanumeric() { c } else { '_' }).collect();
    dir.join(format!("shortvec-{key}.json"))
}

fn digest(vs: &[Vec<(i64, i64)>]) -> String {
    let mut h = Sha256::new();
    for v in vs {
        for (a, b) in v {
            h.update(a.to_le_bytes());
            h.update(b.to_le_bytes());
        }
        h.update([0xff]);
    }
    hex::encode(h.finalize())
}

/// How a cached enumeration was obtained.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CacheStatus {
    Disabled,
    Hit,
    Miss,
    /// A cache file existed but failed its hash or key check and was rewritten.
    Corrupt,
}

/// `enumerate_norm` with an on-disk cache keyed by lattice name and norm. A cache
/// file whose content hash does not match is ignored and rewritten.
pub fn enumerate_norm_cached<Z: IntScalar>(l: &HermLattice<Z>, norm: &Ratio<Z>, dir: Option<&Path>) -> Result<Vec<Coords<Z>>> {
    enumerate_norm_cached_status(l, norm, dir).map(|(v, _)| v)
}

pub fn enumerate_norm_cached_status<Z: IntScalar>(l: &HermLattice<Z>, norm: &Ratio<Z>, dir: Option<&Path>) -> Result<(Vec<Coords<Z>>, CacheStatus)> {
    let Some(dir) = dir else { return Ok((enumerate_norm(l, norm)?, CacheStatus::Disabled)) };
    let path = cache_path(dir, &l.name, &norm.to_string());
    let mut status = CacheStatus::Miss;
    if let Ok(text) = std::fs::read_to_string(&path) {
        match serde_json::from_str::<CacheFile>(&text) {
            Ok(f) if f.lattice == l.name && f.norm == norm.to_string() && digest(&f.vectors) == f.sha256 => {
                let vs = f.vectors.iter().map(|v| v.iter().map(|&(a, b)| Gauss::from_ints(a, b)).collect()).collect();
                return Ok((vs, CacheStatus::Hit));
            }
            _ => status = CacheStatus::Corrupt,
        }
    }
    let vs = enumerate_norm(l, norm)?;
    let small: Vec<Vec<(i64, i64)>> = vs
        .iter()
        .map(|v| v.iter().map(|x| (x.re.to_i64().expect("small coordinate"), x.im.to_i64().expect("small coordinate"))).collect())
        .collect();
    std::fs::create_dir_all(dir)?;
    let f = CacheFile { lattice: l.name.clone(), norm: norm.to_string(), sha256: digest(&small), vectors: small };
    std::fs::write(&path, serde_json::to_string(&f)?)?;
    Ok((vs, status))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattices::{make_bw16, make_d4g, make_m16};
    use num_bigint::BigInt;

    fn r(n: i64) -> Ratio<BigInt> {
        Ratio::from_integer(BigInt::from(n))
    }

    #[test]
    fn d4_roots() {
        let d4 = make_d4g::<BigInt>();
        assert_eq!(enumerate_norm(&d4, &r(2)).unwrap().len(), 24);
        assert_eq!(minimum(&d4).unwrap(), r(2));
        assert!(enumerate_norm(&d4, &r(0)).is_err());
    }

    #[test]
    fn bw16_has_no_roots() {
        let bw = make_bw16::<BigInt>();
        assert!(enumerate_norm(&bw, &r(2)).unwrap().is_empty());
        assert_eq!(minimum(&make_m16::<BigInt>()).unwrap(), r(2));
    }

    #[test]
    fn cvp_of_lattice_point_and_midpoint() {
        let d4 = make_d4g::<BigInt>();
        let v = vec![GaussQ::from_ints(1, 0), GaussQ::from_ints(1, 0)];
        let res = cvp(&d4, &v).unwrap();
        assert!(res.dist2.is_zero());
        assert_eq!(res.nearest, vec![v.clone()]);
        let half = GaussQ::new(Gauss::from_ints(1, 0), BigInt::from(2));
        let mid: QVec<BigInt> = v.iter().map(|x| x.clone() * half.clone()).collect();
        let res = cvp(&d4, &mid).unwrap();
        assert_eq!(res.dist2, Ratio::new(BigInt::from(1), BigInt::from(2)));
        assert!(res.nearest.len() >= 2);
    }

    #[test]
    fn d4_cosets_mod_p() {
        let d4 = make_d4g::<BigInt>();
        let reps = coset_reps(&d4, &Gauss::p()).unwrap();
        assert_eq!(reps.len(), 4);
        assert!(coset_reps(&d4, &Gauss::zero()).is_err());
        for a in &reps {
            for b in &reps {
                let diff: Vec<_> = a.iter().zip(b).map(|(x, y)| x.clone() - y.clone()).collect();
                let in_pl = diff.iter().all(|x| x.div_exact(&Gauss::p()).is_some());
                assert_eq!(in_pl, a == b);
            }
        }
    }

    #[test]
    fn norm_class_values() {
        let d4 = make_d4g::<BigInt>();
        assert_eq!(norm_class(&d4, &[Gauss::zero(), Gauss::zero()]).unwrap(), 0);
        assert_eq!(norm_class(&d4, &[Gauss::from_ints(1, 0), Gauss::zero()]).unwrap(), 2);
    }

    #[test]
    fn cache_round_trip() {
        let dir = std::env::temp_dir().join(format!("gausslat-cache-{}", std::process::id()));
        let d4 = make_d4g::<BigInt>();
        let a = enumerate_norm_cached(&d4, &r(2), Some(&dir)).unwrap();
        let b = enumerate_norm_cached(&d4, &r(2), Some(&dir)).unwrap();
        assert_eq!(a, b);
        std::fs::remove_dir_all(&dir).ok();
    }
}
