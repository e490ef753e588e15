//! Report builders shared by the command-line tool and the acceptance suite.
//!
//! Each report records what was computed and exposes `passed()`.

use std::collections::BTreeMap;
use std::path::Path;

use num_bigint::BigInt;
use num_rational::Ratio;
use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::error::Result;
use crate::fingeom::{group_q, group_qplus, vertices};
use crate::hnf::same_module;
use crate::hyperbolic::{cutoffs, ideal_triangle_check, lift, CVec, Form};
use crate::isometry::{fixed_locus, lift_sigma, r1r2_identity, relation_sweep, unit, Frame, Isometry, RelationReport, Translation};
use crate::lattices::{expected_gram_entry, iso_phi, linear_relation_failures, simple_roots_32, special_vectors, bw16_congruence_generators, bw16_tensor_rows, lorentz_ambient, make_bw16, make_d4g, make_dn, make_hyp_cell, make_l_bw, make_l_d4, make_m16, QVec};
use crate::matrix::{herm, Mat};
use crate::scalar::{Gauss, GaussQ, RQuad};
use crate::shortvec::{covering_sample, enumerate_norm_cached_status, CacheStatus, CoveringReport};

pub const SCHEMA_VERSION: u32 = 1;

/// An element `a + b√2` of `Q(√2)` as exact rationals with a float for reading.
#[derive(Clone, Debug, Serialize, PartialEq)]
pub struct ExactQuad {
    pub a: String,
    pub b: String,
    pub approx: f64,
}

impl From<&RQuad<BigInt>> for ExactQuad {
    fn from(x: &RQuad<BigInt>) -> Self {
        ExactQuad { a: x.a.to_string(), b: x.b.to_string(), approx: x.to_f64() }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct LatticeReport {
    pub p_modular: BTreeMap<String, bool>,
    pub disc_orders: BTreeMap<String, String>,
    pub bw16_norm2: usize,
    pub bw16_kissing: usize,
    pub bw16_definitions_agree: bool,
    pub iso_phi_preserves_form: bool,
    pub iso_phi_is_isomorphism: bool,
    pub cache: CacheStatus,
    pub warning: Option<String>,
}

impl LatticeReport {
    pub fn passed(&self) -> bool {
        let pm = |k: &str, want: bool| self.p_modular.get(k) == Some(&want);
        pm("D4^G", true)
            && pm("BW16^G", true)
            && pm("G_{1,1}", true)
            && pm("BW16^G+G_{1,1}", true)
            && pm("4D4^G+G_{1,1}", true)
            && pm("D6^G", false)
            && pm("M16^G", false)
            && self.disc_orders.get("D4^G").map(String::as_str) == Some("4")
            && self.disc_orders.get("BW16^G").map(String::as_str) == Some("256")
            && self.bw16_norm2 == 0
            && self.bw16_kissing == 4320
            && self.bw16_definitions_agree
            && self.iso_phi_preserves_form
            && self.iso_phi_is_isomorphism
    }
}

pub fn lattice_report(cache_dir: Option<&Path>) -> Result<LatticeReport> {
    type Z = BigInt;
    let mut p_modular = BTreeMap::new();
    let mut disc_orders = BTreeMap::new();
    let lattices = [make_d4g::<Z>(), make_bw16(), make_hyp_cell(), make_l_bw(), make_l_d4(), make_dn(3)?, make_m16()];
    for l in &lattices {
        p_modular.insert(l.name.clone(), l.is_p_modular()?);
        disc_orders.insert(l.name.clone(), l.disc_group_order()?.to_string());
    }
    let bw = make_bw16::<Z>();
    let (n2, s2) = enumerate_norm_cached_status(&bw, &Ratio::from_integer(BigInt::from(2)), cache_dir)?;
    let (n4, s4) = enumerate_norm_cached_status(&bw, &Ratio::from_integer(BigInt::from(4)), cache_dir)?;
    let cache = if s2 == CacheStatus::Corrupt { s2 } else { s4 };
    let warning = (cache == CacheStatus::Corrupt).then(|| "a cache file failed its integrity check and was recomputed".to_string());
    let phi = iso_phi::<Z>()?;
    Ok(LatticeReport {
        p_modular,
        disc_orders,
        bw16_norm2: n2.len(),
        bw16_kissing: n4.len(),
        bw16_definitions_agree: same_module(&bw16_tensor_rows::<Z>(), &bw16_congruence_generators::<Z>()),
        iso_phi_preserves_form: phi.preserves_form(),
        iso_phi_is_isomorphism: phi.is_lattice_isomorphism(),
        cache,
        warning,
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct DiagramReport {
    pub gram_mismatches: Vec<(String, String)>,
    pub gram_rank: usize,
    pub radical_rank: usize,
    pub linear_relation_failures: Vec<(String, String)>,
    pub p_inf_null_primitive: bool,
    pub l_inf_null_primitive: bool,
    pub qplus_order: usize,
    #[serde(rename = "Q_order")]
    pub q_order: usize,
    pub q_transitive: bool,
    pub sigma_squared_is_minus_i: bool,
    pub tau_is_unique_fixed_point: bool,
    pub relations: RelationReport,
}

impl DiagramReport {
    pub fn passed(&self) -> bool {
        self.gram_mismatches.is_empty()
            && self.gram_rank == 10
            && self.radical_rank == 22
            && self.linear_relation_failures.is_empty()
            && self.p_inf_null_primitive
            && self.l_inf_null_primitive
            && self.qplus_order == 21504
            && self.q_order == 43008
            && self.q_transitive
            && self.sigma_squared_is_minus_i
            && self.tau_is_unique_fixed_point
            && self.relations.pairs == 496
            && self.relations.failures.is_empty()
    }
}

pub fn diagram_report() -> Result<DiagramReport> {
    type Z = BigInt;
    let roots = simple_roots_32::<Z>();
    let g = lorentz_ambient::<Z>(8);
    let vs = vertices();
    let gram = Mat::from_fn(32, 32, |i, j| herm(&g, &roots[i], &roots[j]));
    let mut gram_mismatches = Vec::new();
    for i in 0..32 {
        for j in 0..32 {
            if gram[(i, j)] != expected_gram_entry::<Z>(vs[i], vs[j]) {
                gram_mismatches.push((vs[i].label().to_string(), vs[j].label().to_string()));
            }
        }
    }
    let gram_rank = gram.rank();
    let sp = special_vectors::<Z>();
    let l = make_l_d4::<Z>();
    let null_prim = |v: &QVec<Z>| -> Result<bool> { Ok(herm(&g, v, v).is_zero() && l.member(v)? && l.is_primitive(v)?) };
    let qp = group_qplus();
    let q = group_q();
    let sigma = lift_sigma::<Z>()?;
    let fl = fixed_locus::<Z>()?;
    Ok(DiagramReport {
        gram_mismatches,
        gram_rank,
        radical_rank: 32 - gram_rank,
        linear_relation_failures: linear_relation_failures::<Z>().into_iter().map(|(a, b)| (a.to_string(), b.to_string())).collect(),
        p_inf_null_primitive: null_prim(&sp.p_inf)?,
        l_inf_null_primitive: null_prim(&sp.l_inf)?,
        qplus_order: qp.order(),
        q_order: q.order(),
        q_transitive: q.is_transitive(),
        sigma_squared_is_minus_i: sigma.pow(2) == Isometry::scalar(unit(3), Frame::FourD4),
        tau_is_unique_fixed_point: fl.qplus_fixed_dim == 2 && fl.fixed_is_span_p_l && fl.tau_is_unique_fixed_point,
        relations: relation_sweep::<Z>(),
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct DistanceReport {
    /// Common `sinh² d(s_v⊥, τ)`; computing it fails unless all 32 agree.
    pub sinh2_d0: ExactQuad,
    pub d0: f64,
    pub two_cosh2_2d0: ExactQuad,
    pub horo_v9: f64,
    pub horo_l_inf: f64,
}

impl DistanceReport {
    pub fn passed(&self) -> bool {
        let four_dp = |x: f64, want: f64| (x - want).abs() < 5e-5;
        format!("{:.4}", self.d0) == "0.4090"
            && four_dp(self.two_cosh2_2d0.approx, 3.6642)
            && four_dp(self.horo_v9, 9.3379)
            && four_dp(self.horo_l_inf, 3.2043)
    }
}

pub fn distance_report() -> Result<DistanceReport> {
    let c = cutoffs::<BigInt>()?;
    Ok(DistanceReport {
        d0: c.sinh2_d0.to_f64().sqrt().asinh(),
        sinh2_d0: ExactQuad::from(&c.sinh2_d0),
        two_cosh2_2d0: ExactQuad::from(&c.two_cosh2_2d0),
        horo_v9: c.horo_v9.to_f64(),
        horo_l_inf: c.horo_l_inf.to_f64(),
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct PropertyReport {
    pub seed: u64,
    pub heisenberg_pairs: usize,
    pub heisenberg_failures: usize,
    pub r1r2_identity: bool,
    pub triangle_triples: usize,
    pub triangle_failures: usize,
    pub covering: CoveringReport,
}

impl PropertyReport {
    pub fn passed(&self) -> bool {
        self.heisenberg_failures == 0 && self.r1r2_identity && self.triangle_failures == 0 && self.covering.failures.is_empty()
    }
}

/// Sizes of the random samples.
#[derive(Clone, Copy, Debug)]
pub struct SampleSizes {
    pub pairs: usize,
    pub triples: usize,
    pub points: usize,
}

impl Default for SampleSizes {
    fn default() -> Self {
        SampleSizes { pairs: 1000, triples: 10_000, points: 100_000 }
    }
}

fn random_translation(rng: &mut ChaCha8Rng, basis: &[QVec<BigInt>]) -> Translation<BigInt> {
    let mut lambda: QVec<BigInt> = vec![GaussQ::zero(); 8];
    for b in basis {
        let c = GaussQ::from_ints(rng.gen_range(-2..=2), rng.gen_range(-2..=2));
        for k in 0..8 {
            lambda[k] = lambda[k].clone() + c.clone() * b[k].clone();
        }
    }
    let t = Translation::canonical(lambda).expect("λ ∈ BW16");
    let shift = GaussQ::from_ints(0, 2 * rng.gen_range(-3..=3));
    Translation::new(t.lambda, t.z + shift).expect("z ∈ i(λ²/2 + 2Z)")
}

/// Law, commutator and inverse identities for one pair.
fn heisenberg_pair_holds(a: &Translation<BigInt>, b: &Translation<BigInt>) -> bool {
    let (ma, mb) = (a.to_isometry(), b.to_isometry());
    let law = a.mul(b).to_isometry() == ma.then_after(&mb);
    let c = a.commutator(b);
    // [T_{λ,z}, T_{λ',z'}] = T_{0, 2i·Im⟨λ',λ⟩}
    let ip = b.lambda.iter().zip(&a.lambda).fold(GaussQ::<BigInt>::zero(), |s, (x, y)| s + x.conj() * y.clone());
    let comm = c.lambda.iter().all(|x| x.is_zero()) && c.z == GaussQ::from_ratios(Ratio::zero(), ip.im() * Ratio::from_integer(BigInt::from(2)));
    let comm_matrix = c.to_isometry() == ma.then_after(&mb).then_after(&ma.inverse()).then_after(&mb.inverse());
    let inv = a.inverse().to_isometry() == ma.inverse() && a.mul(&a.inverse()) == Translation::identity();
    law && comm && comm_matrix && inv
}

fn random_gq(rng: &mut ChaCha8Rng, r: i64) -> GaussQ<BigInt> {
    GaussQ::from_ints(rng.gen_range(-r..=r), rng.gen_range(-r..=r))
}

/// A negative-norm vector `(x; a, b)` of `L ⊗ Q`.
fn random_point(rng: &mut ChaCha8Rng, f: &Form<BigInt>) -> CVec<BigInt> {
    loop {
        let v: QVec<BigInt> = (0..10).map(|k| random_gq(rng, if k < 8 { 2 } else { 6 })).collect();
        let c = lift(&v);
        if f.norm(&c).is_negative() {
            return c;
        }
    }
}

/// A nonzero null vector `(λ; m, n)` with `n = (−λ²/2 + it)/(m̄p̄)`.
fn random_null(rng: &mut ChaCha8Rng) -> CVec<BigInt> {
    let lam: Vec<GaussQ<BigInt>> = (0..8).map(|_| random_gq(rng, 2)).collect();
    let mut m = random_gq(rng, 3);
    if m.is_zero() {
        m = GaussQ::from_ints(1, 0);
    }
    let n2 = lam.iter().fold(GaussQ::<BigInt>::zero(), |s, x| s + x.conj() * x.clone());
    let num = GaussQ::from_ratios(-n2.re() / Ratio::from_integer(BigInt::from(2)), Ratio::from_integer(BigInt::from(rng.gen_range(-5..=5i64))));
    let den = m.conj() * GaussQ::from_gauss(Gauss::pbar());
    let n = num * den.inv().expect("nonzero");
    let mut v = lam;
    v.push(m);
    v.push(n);
    lift(&v)
}

pub fn property_report(seed: u64, sizes: SampleSizes) -> Result<PropertyReport> {
    let bw = make_bw16::<BigInt>();
    let heisenberg_failures = (0..sizes.pairs)
        .into_par_iter()
        .filter(|&t| {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            rng.set_stream(t as u64);
            let a = random_translation(&mut rng, &bw.basis);
            let b = random_translation(&mut rng, &bw.basis);
            !heisenberg_pair_holds(&a, &b)
        })
        .count();
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x5eed);
    let samples: Vec<_> = (0..8).map(|_| random_translation(&mut rng, &bw.basis)).collect();
    let r1r2 = r1r2_identity(&samples);
    let f = Form::<BigInt>::lorentzian();
    let triangle_failures = (0..sizes.triples)
        .into_par_iter()
        .filter(|&t| {
            let mut rng = ChaCha8Rng::seed_from_u64(seed.wrapping_add(1));
            rng.set_stream(t as u64);
            let z = random_null(&mut rng);
            let x = random_point(&mut rng, &f);
            let y = random_point(&mut rng, &f);
            !matches!(ideal_triangle_check(&f, &z, &x, &y), Ok(true))
        })
        .count();
    let covering = covering_sample(&bw, sizes.points, seed)?;
    Ok(PropertyReport {
        seed,
        heisenberg_pairs: sizes.pairs,
        heisenberg_failures,
        r1r2_identity: r1r2,
        triangle_triples: sizes.triples,
        triangle_failures,
        covering,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_property_run() {
        let r = property_report(11, SampleSizes { pairs: 20, triples: 50, points: 50 }).unwrap();
        assert!(r.passed(), "{r:?}");
    }

    #[test]
    fn distances() {
        let r = distance_report().unwrap();
        assert!(r.passed(), "{r:?}");
        assert_eq!(r.sinh2_d0.a, "0");
        assert_eq!(r.sinh2_d0.b, "1/8");
    }

    #[test]
    fn null_samples_are_null() {
        let f = Form::<BigInt>::lorentzian();
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for _ in 0..20 {
            let z = random_null(&mut rng);
            assert!(f.norm(&z).is_zero());
        }
    }
}
