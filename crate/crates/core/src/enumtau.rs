//! Exhaustive search for the roots whose mirrors lie within `d0` of `τ`.
//!
//! A root with `d(τ, r⊥) ≤ d0` is written `r = p⁻¹ Σ c_j v_j` in the basis
//! `(−s_{d1}, s_{b1}, …, −s_{d4}, s_{b4}, (0⁸;1,0), l_∞)`; the distance bounds confine
//! `c` to a small box, which is enumerated with the congruence and norm constraints.

use std::collections::{BTreeMap, BTreeSet};

use num_bigint::BigInt;
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::fingeom::Vertex;
use crate::hyperbolic::{cutoffs, SqrtExt};
use crate::reduction::{form, in_l_d4, RootVec, TauKernel, TauValue, G64};
use crate::scalar::{Gauss, RQuad};

const P: G64 = Gauss { re: 1, im: 1 };

fn g(re: i64, im: i64) -> G64 {
    Gauss { re, im }
}

fn scale(c: G64, v: &RootVec) -> RootVec {
    v.map(|x| c * x)
}

/// `(v1, …, v10)`, with the orthogonality and null conditions checked.
pub fn tau_basis() -> Result<[RootVec; 10]> {
    let k = TauKernel::new();
    let at = |s: &str| k.simple[Vertex::from_label(s).expect("label").index()];
    let neg = |v: RootVec| scale(g(-1, 0), &v);
    let mut v9 = [g(0, 0); 10];
    v9[8] = g(1, 0);
    let b = [
        neg(at("d1")),
        at("b1"),
        neg(at("d2")),
        at("b2"),
        neg(at("d3")),
        at("b3"),
        neg(at("d4")),
        at("b4"),
        v9,
        k.l_inf,
    ];
    for i in 0..10 {
        for j in 0..10 {
            let want = match (i, j) {
                (i, j) if i == j && i < 8 => g(2, 0),
                (8, 9) | (9, 8) => g(2, 0),
                _ => g(0, 0),
            };
            if form(&b[i], &b[j]) != want {
                return Err(Error::Verification(format!("⟨v{}, v{}⟩ is not {}", i + 1, j + 1, want)));
            }
        }
    }
    Ok(b)
}

/// Gaussian integers of norm at most `k`, sorted by `(norm, re, im)`.
pub fn gauss_upto(k: i64) -> Vec<G64> {
    let r = (k as f64).sqrt() as i64 + 1;
    let mut v: Vec<G64> = (-r..=r).flat_map(|a| (-r..=r).map(move |b| g(a, b))).filter(|x| x.norm() <= k).collect();
    v.sort_by_key(|x| (x.norm(), x.re, x.im));
    v
}

/// Residue of `x` modulo `p`: 0 or 1.
fn mod_p(x: G64) -> usize {
    (x.re + x.im).rem_euclid(2) as usize
}

/// A tuple `(c1, …, c10)`.
pub type CTuple = [G64; 10];

/// Box for the enumeration.
#[derive(Clone, Debug, Serialize)]
pub struct CBox {
    /// Largest norm allowed for `c1 … c8`.
    pub pair_norm: i64,
    /// `c9` candidates.
    pub c9: Vec<G64>,
    /// Largest norm of `c10`.
    pub c10_norm: i64,
    /// Largest value allowed for `Σ_{j≤8}|c_j|²`, or `None` for no cap.
    pub sum_cap: Option<i64>,
}

impl CBox {
    /// `c1..c9 ∈ G(≤2)`, `c10 ∈ G(≤9)`, `c9 ∈ {0, 1, p}`, `Σ ≤ 10`.
    pub fn standard() -> Self {
        CBox { pair_norm: 2, c9: vec![g(0, 0), g(1, 0), P], c10_norm: 9, sum_cap: Some(10) }
    }

    /// No unit normalisation on `c9` and no cap on `Σ_{j≤8}|c_j|²`.
    pub fn widened() -> Self {
        CBox { pair_norm: 2, c9: gauss_upto(2), c10_norm: 9, sum_cap: None }
    }
}

/// The integer box implied by the exact cutoffs.
#[derive(Clone, Debug, Serialize)]
pub struct DerivedBox {
    /// `⌊2cosh²(2d0)⌋`, bounding `|c_j|²` for `j ≤ 8`.
    pub pair_norm: i64,
    /// `⌊e^{2(d0 + d_{v9}(τ))}⌋`, bounding `|c10|²`.
    pub c10_norm: i64,
    /// `⌊e^{2(d0 + d_{l∞}(τ))}⌋`, bounding `|c9|²`.
    pub c9_norm: i64,
    pub two_cosh2_2d0: f64,
    pub horo_v9: f64,
    pub horo_l_inf: f64,
}

fn floor_rq(c: &RQuad<BigInt>) -> i64 {
    let mut n = c.to_f64().floor() as i64 + 1;
    while RQuad::from_ints(n, 0) > *c {
        n -= 1;
    }
    n
}

fn floor_sqrt_ext(c: &SqrtExt<BigInt>) -> i64 {
    let mut n = c.to_f64().floor() as i64 + 1;
    while c.cmp_rq(&RQuad::from_ints(n, 0)) == std::cmp::Ordering::Greater {
        n -= 1;
    }
    n
}

/// Largest norm of a Gaussian integer not exceeding `n`.
fn largest_norm_upto(n: i64) -> i64 {
    (0..=n).rev().find(|&k| gauss_upto(k).iter().any(|x| x.norm() == k)).unwrap_or(0)
}

pub fn derive_box() -> Result<DerivedBox> {
    let c = cutoffs::<BigInt>()?;
    Ok(DerivedBox {
        pair_norm: largest_norm_upto(floor_rq(&c.two_cosh2_2d0)),
        c10_norm: largest_norm_upto(floor_sqrt_ext(&c.horo_v9)),
        c9_norm: largest_norm_upto(floor_sqrt_ext(&c.horo_l_inf)),
        two_cosh2_2d0: c.two_cosh2_2d0.to_f64(),
        horo_v9: c.horo_v9.to_f64(),
        horo_l_inf: c.horo_l_inf.to_f64(),
    })
}

/// Pairs `(c_{2j−1}, c_{2j})` grouped by `(c_{2j−1} + c_{2j} mod p, |c_{2j−1}|² + |c_{2j}|²)`.
fn pair_table(pair_norm: i64) -> BTreeMap<(usize, i64), Vec<(G64, G64)>> {
    let els = gauss_upto(pair_norm);
    let mut t: BTreeMap<(usize, i64), Vec<(G64, G64)>> = BTreeMap::new();
    for &a in &els {
        for &b in &els {
            t.entry((mod_p(a + b), a.norm() + b.norm())).or_default().push((a, b));
        }
    }
    t
}

/// Calls `visit` on every tuple satisfying the box, congruence and norm constraints.
/// Returns the number of tuples visited.
pub fn enumerate_candidates(bx: &CBox, c10: G64, visit: &mut dyn FnMut(&CTuple)) -> u64 {
    let table = pair_table(bx.pair_norm);
    // c_{2j−1} + c_{2j} ≡ c10 mod p
    let class = mod_p(c10);
    let norms: Vec<(i64, &Vec<(G64, G64)>)> = table.iter().filter(|((c, _), _)| *c == class).map(|((_, n), v)| (*n, v)).collect();
    let mut count = 0u64;
    for &c9 in &bx.c9 {
        let t = 2 - 2 * (c9.conj() * c10).re;
        if t < 0 || bx.sum_cap.is_some_and(|cap| t > cap) {
            continue;
        }
        // split t into four pair norms
        let mut parts = [0i64; 4];
        split(&norms, t, 0, &mut parts, &mut |parts| {
            let lists: Vec<&Vec<(G64, G64)>> = parts.iter().map(|n| norms.iter().find(|(m, _)| m == n).unwrap().1).collect();
            for a in lists[0] {
                for b in lists[1] {
                    for c in lists[2] {
                        for d in lists[3] {
                            let tuple = [a.0, a.1, b.0, b.1, c.0, c.1, d.0, d.1, c9, c10];
                            count += 1;
                            visit(&tuple);
                        }
                    }
                }
            }
        });
    }
    count
}

fn split(norms: &[(i64, &Vec<(G64, G64)>)], left: i64, k: usize, parts: &mut [i64; 4], emit: &mut dyn FnMut(&[i64; 4])) {
    if k == 3 {
        if norms.iter().any(|(n, _)| *n == left) {
            parts[3] = left;
            emit(parts);
        }
        return;
    }
    for (n, _) in norms {
        if *n <= left {
            parts[k] = *n;
            split(norms, left - n, k + 1, parts, emit);
        }
    }
}

/// `r = p⁻¹ Σ c_j v_j` when it is integral; then `r ∈ L` and `r² = 2`.
pub fn c_to_root(basis: &[RootVec; 10], c: &CTuple) -> Option<RootVec> {
    let mut s = [g(0, 0); 10];
    for (cj, v) in c.iter().zip(basis) {
        for k in 0..10 {
            s[k] += *cj * v[k];
        }
    }
    let mut r = [g(0, 0); 10];
    for k in 0..10 {
        r[k] = s[k].div_exact(&P)?;
    }
    Some(r)
}

/// `c_j = p̄⁻¹⟨v_j, r⟩` for `j ≤ 8`, `c9 = p̄⁻¹⟨v10, r⟩`, `c10 = p̄⁻¹⟨v9, r⟩`.
pub fn root_to_c(basis: &[RootVec; 10], r: &RootVec) -> Option<CTuple> {
    let pb = g(1, -1);
    let mut c = [g(0, 0); 10];
    for j in 0..8 {
        c[j] = form(&basis[j], r).div_exact(&pb)?;
    }
    c[8] = form(&basis[9], r).div_exact(&pb)?;
    c[9] = form(&basis[8], r).div_exact(&pb)?;
    Some(c)
}

/// The smallest of `r, ir, −r, −ir` in coordinate order.
pub fn unit_class(r: &RootVec) -> RootVec {
    (0..4u8)
        .map(|e| scale(Gauss::<i64>::unit(e), r))
        .min_by(|a, b| a.iter().map(|x| (x.re, x.im)).cmp(b.iter().map(|x| (x.re, x.im))))
        .unwrap()
}

/// `sinh² d(r⊥, τ)` as a pair of rationals `(a, b)` for `a + b√2`.
#[derive(Clone, Debug, Serialize)]
pub struct Certificate {
    pub root: Vec<(i64, i64)>,
    pub simple: String,
    pub sinh2: (String, String),
}

#[derive(Clone, Debug, Serialize)]
pub struct MirrorReport {
    pub derived_box: DerivedBox,
    pub box_matches: bool,
    pub tuples_visited: u64,
    pub integral_roots: u64,
    pub non_members: u64,
    pub within_d0: usize,
    pub all_equal_d0: bool,
    pub all_simple: bool,
    pub tau_on_mirror: bool,
    pub certificates: Vec<Certificate>,
    /// Same search without the `c9` normalisation or the cap on `Σ|c_j|²`.
    pub widened_tuples_visited: u64,
    pub widened_within_d0: usize,
    pub widened_agrees: bool,
    /// Every root found has `|p⁻¹⟨r, s_v⟩|² ≤ 2cosh²(2d0)` for all 32 `v`.
    pub pair_bound_holds: bool,
}

impl MirrorReport {
    pub fn passed(&self) -> bool {
        self.box_matches
            && self.non_members == 0
            && self.within_d0 == 32
            && self.all_equal_d0
            && self.all_simple
            && !self.tau_on_mirror
            && self.widened_agrees
            && self.pair_bound_holds
    }
}

struct SearchResult {
    visited: u64,
    integral: u64,
    non_members: u64,
    on_mirror: bool,
    found: BTreeSet<RootVec>,
}

fn search(bx: &CBox, basis: &[RootVec; 10], kernel: &TauKernel) -> SearchResult {
    let d0 = TauValue { i: 2, j: 0 };
    let parts: Vec<SearchResult> = gauss_upto(bx.c10_norm)
        .into_par_iter()
        .map(|c10| {
            let mut res = SearchResult { visited: 0, integral: 0, non_members: 0, on_mirror: false, found: BTreeSet::new() };
            res.visited = enumerate_candidates(bx, c10, &mut |c| {
                if let Some(r) = c_to_root(basis, c) {
                    res.integral += 1;
                    if !in_l_d4(&r) || form(&r, &r) != g(2, 0) {
                        res.non_members += 1;
                        return;
                    }
                    let v = kernel.value(&r);
                    if v.i == 0 && v.j == 0 {
                        res.on_mirror = true;
                    }
                    if !d0.less(&v) {
                        res.found.insert(unit_class(&r));
                    }
                }
            });
            res
        })
        .collect();
    let mut out = SearchResult { visited: 0, integral: 0, non_members: 0, on_mirror: false, found: BTreeSet::new() };
    for p in parts {
        out.visited += p.visited;
        out.integral += p.integral;
        out.non_members += p.non_members;
        out.on_mirror |= p.on_mirror;
        out.found.append(&mut { p.found });
    }
    out
}

/// Mirrors within `d0` of `τ`, up to units, with the completeness checks.
pub fn mirrors_within_d0() -> Result<MirrorReport> {
    let basis = tau_basis()?;
    let kernel = TauKernel::new();
    let derived = derive_box()?;
    let std_box = CBox::standard();
    let box_matches = derived.pair_norm == std_box.pair_norm && derived.c10_norm == std_box.c10_norm && derived.c9_norm == 2;
    let main = search(&std_box, &basis, &kernel);
    let wide = search(&CBox::widened(), &basis, &kernel);

    let simple_classes: BTreeMap<RootVec, usize> = kernel.simple.iter().enumerate().map(|(k, s)| (unit_class(s), k)).collect();
    let d0 = TauValue { i: 2, j: 0 };
    let mut certificates = Vec::new();
    let mut all_equal = true;
    let mut all_simple = true;
    for r in &main.found {
        let v = kernel.value(r);
        all_equal &= v == d0;
        let simple = match simple_classes.get(r) {
            Some(&k) => crate::fingeom::LABELS[k].to_string(),
            None => {
                all_simple = false;
                String::from("-")
            }
        };
        let s = v.sinh2();
        certificates.push(Certificate { root: r.iter().map(|x| (x.re, x.im)).collect(), simple, sinh2: (s.a.to_string(), s.b.to_string()) });
    }
    let bound = cutoffs::<BigInt>()?.two_cosh2_2d0;
    let pair_bound_holds = main.found.iter().all(|r| {
        kernel.simple.iter().all(|s| {
            let w = form(r, s);
            // |p⁻¹ w|² = |w|²/2
            RQuad::new(num_rational::Ratio::new(BigInt::from(w.norm()), BigInt::from(2)), num_rational::Ratio::from_integer(BigInt::from(0))) <= bound
        })
    });
    Ok(MirrorReport {
        derived_box: derived,
        box_matches,
        tuples_visited: main.visited,
        integral_roots: main.integral,
        non_members: main.non_members + wide.non_members,
        within_d0: main.found.len(),
        all_equal_d0: all_equal,
        all_simple: all_simple && main.found.len() == simple_classes.len(),
        tau_on_mirror: main.on_mirror || wide.on_mirror,
        certificates,
        widened_tuples_visited: wide.visited,
        widened_within_d0: wide.found.len(),
        widened_agrees: wide.found == main.found,
        pair_bound_holds,
    })
}
