//! The 32 simple roots of `L` indexed by the configuration `D`, the special null
//! vectors, and the coordinate change between the `BW16` and `4D4` frames.

use num_traits::{One, Zero};

use super::{add_vec, lorentz_ambient, make_l_bw, make_l_d4, q, qp, qpbar, scale_vec, sub_vec, HermLattice, QVec};
use crate::error::{Error, Result};
use crate::fingeom::{s4_elements, s4_perm, Vertex, LABELS};
use crate::matrix::{herm, Mat};
use crate::scalar::{Cyc8, Gauss, GaussQ, IntScalar};

fn pc<Z: IntScalar>(a: i64, b: i64) -> GaussQ<Z> {
    // a + b·p
    q::<Z>(a, 0) + q::<Z>(b, 0) * qp()
}

/// Seed roots in `4D4 ⊕ G_{1,1}` coordinates; the rest follow by permuting the copies of `D4`.
fn seeds<Z: IntScalar>() -> Vec<(&'static str, QVec<Z>)> {
    let z = || q::<Z>(0, 0);
    let one = |re: i64, im: i64| q::<Z>(re, im);
    let p = || qp::<Z>();
    let ip = || q::<Z>(0, 1) * qp();
    vec![
        ("a", [vec![z(); 8], vec![one(-1, 0), one(-1, 0)]].concat()),
        ("c1", [vec![one(-1, 0), one(1, 0)], vec![z(); 6], vec![z(), z()]].concat()),
        ("e12", [vec![one(-1, 0); 4], vec![z(); 4], vec![one(0, -1), one(-1, 0)]].concat()),
        ("g1", vec![z(), one(-2, 0), one(-1, 0), one(-1, 0), one(-1, 0), one(-1, 0), one(-1, 0), one(-1, 0), one(0, -2), one(-2, 0)]),
        ("z", [vec![one(-1, 0); 8], vec![one(1, -2), one(-1, 0)]].concat()),
        ("f1", vec![z(), z(), z(), p(), z(), p(), z(), p(), ip(), p()]),
        ("b1", [vec![z(), p()], vec![z(); 6], vec![one(-1, 0), z()]].concat()),
        ("d1", [vec![-p()], vec![z(); 7], vec![z(), z()]].concat()),
        ("h1", vec![p(), p(), z(), p(), z(), p(), z(), p(), pc(-3, 1), p()]),
    ]
}

/// Move copy `k` of `D4` to copy `π(k)`.
fn permute_copies<Z: IntScalar>(v: &[GaussQ<Z>], pi: [usize; 4]) -> QVec<Z> {
    let mut w = v.to_vec();
    for k in 0..4 {
        w[2 * pi[k]] = v[2 * k].clone();
        w[2 * pi[k] + 1] = v[2 * k + 1].clone();
    }
    w
}

/// All images of the seeds under `S4`, as `(vertex index, vector)`.
fn seed_orbits<Z: IntScalar>() -> Vec<(usize, QVec<Z>)> {
    let mut out = Vec::new();
    for (name, v) in seeds::<Z>() {
        let src = Vertex::from_label(name).expect("seed label").index();
        for pi in s4_elements() {
            out.push((s4_perm(pi)[src] as usize, permute_copies(&v, pi)));
        }
    }
    out
}

/// `s_v` for `v ∈ D` in canonical vertex order, coordinates of `4D4 ⊕ G_{1,1}`.
pub fn simple_roots_32<Z: IntScalar>() -> Vec<QVec<Z>> {
    let mut roots: Vec<Option<QVec<Z>>> = vec![None; 32];
    for (idx, v) in seed_orbits::<Z>() {
        match &roots[idx] {
            None => roots[idx] = Some(v),
            Some(w) => assert_eq!(*w, v, "seed orbit is inconsistent at {}", LABELS[idx]),
        }
    }
    roots.into_iter().map(|r| r.expect("every vertex is reached")).collect()
}

pub fn simple_root<Z: IntScalar>(label: &str) -> Option<QVec<Z>> {
    let v = Vertex::from_label(label)?;
    Some(simple_roots_32::<Z>().swap_remove(v.index()))
}

/// Expected `⟨s_u, s_v⟩` from the incidence structure of `D`.
pub fn expected_gram_entry<Z: IntScalar>(u: Vertex, v: Vertex) -> GaussQ<Z> {
    use crate::fingeom::{incident, t_translate, A};
    if u == v {
        q(2, 0)
    } else if u.is_point() && !v.is_point() && incident(u, v) {
        qp()
    } else if !u.is_point() && v.is_point() && incident(v, u) {
        qpbar()
    } else if t_translate(A, u) == v {
        q(-2, 0)
    } else {
        GaussQ::zero()
    }
}

/// Which of the three families of linear relations among the roots fail, as
/// `(relation name, vertex label)`.
pub fn linear_relation_failures<Z: IntScalar>() -> Vec<(&'static str, &'static str)> {
    use crate::fingeom::{incident, t_translate, vertices, A};
    let roots = simple_roots_32::<Z>();
    let sp = special_vectors::<Z>();
    let s = |v: Vertex| &roots[v.index()];
    let mut bad = Vec::new();
    for v in vertices() {
        let lhs = add_vec(s(v), s(t_translate(A, v)));
        let rhs = if v.is_point() { &sp.p_inf } else { &sp.l_inf };
        if lhs != *rhs {
            bad.push(("translation", v.label()));
        }
    }
    let p = qp::<Z>();
    let pb = qpbar::<Z>();
    let two = q::<Z>(2, 0);
    for u in vertices() {
        let mut lhs = scale_vec(&-(two.clone() * if u.is_point() { p.clone() } else { pb.clone() }), s(u));
        for v in vertices() {
            let adj = if u.is_point() { !v.is_point() && incident(u, v) } else { v.is_point() && incident(v, u) };
            if adj {
                lhs = add_vec(&lhs, s(v));
            }
        }
        let rhs = if u.is_point() {
            sub_vec(&scale_vec(&q(4, 0), &sp.l_inf), &scale_vec(&p, &sp.p_inf))
        } else {
            sub_vec(&scale_vec(&q(4, 0), &sp.p_inf), &scale_vec(&pb, &sp.l_inf))
        };
        if lhs != rhs {
            bad.push((if u.is_point() { "point" } else { "hyperplane" }, u.label()));
        }
    }
    bad
}

/// Null vectors and the fixed point of the diagram symmetries.
#[derive(Clone, Debug)]
pub struct SpecialVectors<Z: IntScalar> {
    /// `(0; 0, 1)`, the cusp used for heights, `BW16` frame.
    pub rho: QVec<Z>,
    /// `(0; 1, 0)`, `BW16` frame.
    pub rho1: QVec<Z>,
    /// `s_a + s_z`, `4D4` frame.
    pub p_inf: QVec<Z>,
    /// `s_{d1} + s_{h1}`, `4D4` frame.
    pub l_inf: QVec<Z>,
    /// `ζ̄·l_∞ − p_∞` with `ζ = e^{πi/4}`, `4D4` frame.
    pub tau: Vec<Cyc8<Z>>,
}

pub fn tau_vector<Z: IntScalar>(p_inf: &[GaussQ<Z>], l_inf: &[GaussQ<Z>]) -> Vec<Cyc8<Z>> {
    let zbar = Cyc8::<Z>::zeta_pow(-1);
    p_inf.iter().zip(l_inf).map(|(p, l)| zbar.clone() * Cyc8::from_gaussq(l) - Cyc8::from_gaussq(p)).collect()
}

pub fn special_vectors<Z: IntScalar>() -> SpecialVectors<Z> {
    let roots = simple_roots_32::<Z>();
    let at = |s: &str| &roots[Vertex::from_label(s).unwrap().index()];
    let p_inf = add_vec(at("a"), at("z"));
    let l_inf = add_vec(at("d1"), at("h1"));
    let mut rho = vec![GaussQ::zero(); 10];
    rho[9] = GaussQ::one();
    let mut rho1 = vec![GaussQ::zero(); 10];
    rho1[8] = GaussQ::one();
    let tau = tau_vector(&p_inf, &l_inf);
    SpecialVectors { rho, rho1, p_inf, l_inf, tau }
}

/// Linear isometry between the ambient spaces of two lattices, carrying one onto the other.
#[derive(Clone, Debug)]
pub struct IsoMap<Z: IntScalar> {
    pub source: HermLattice<Z>,
    pub target: HermLattice<Z>,
    /// Ambient matrix acting on column vectors.
    pub matrix: Mat<GaussQ<Z>>,
    pub inverse: Mat<GaussQ<Z>>,
}

impl<Z: IntScalar> IsoMap<Z> {
    pub fn apply(&self, v: &[GaussQ<Z>]) -> QVec<Z> {
        self.matrix.mul_vec(v)
    }

    pub fn apply_inverse(&self, v: &[GaussQ<Z>]) -> QVec<Z> {
        self.inverse.mul_vec(v)
    }

    pub fn preserves_form(&self) -> bool {
        self.matrix.congruent(&self.target.ambient) == self.source.ambient
    }

    /// Image of the source lattice equals the target lattice.
    pub fn is_lattice_isomorphism(&self) -> bool {
        let img: Vec<QVec<Z>> = self.source.basis.iter().map(|b| self.apply(b)).collect();
        crate::hnf::same_module(&img, &self.target.basis)
    }

    pub fn invert(&self) -> IsoMap<Z> {
        IsoMap { source: self.target.clone(), target: self.source.clone(), matrix: self.inverse.clone(), inverse: self.matrix.clone() }
    }
}

fn half<Z: IntScalar>(v: Vec<GaussQ<Z>>) -> QVec<Z> {
    scale_vec(&GaussQ::new(Gauss::one(), Z::from_int(2)), &v)
}

/// Ten vectors of `BW16 ⊕ G_{1,1}` whose Gram matrix matches that of
/// `d1, c1, …, d4, c4, (0⁸;1,0), (0⁸;0,1)` in `4D4 ⊕ G_{1,1}`.
pub fn iso_source_vectors<Z: IntScalar>() -> Vec<QVec<Z>> {
    let g = |re: i64, im: i64| q::<Z>(re, im);
    let (p, pb) = (g(1, 1), g(1, -1));
    let neg = |v: QVec<Z>| scale_vec(&g(-1, 0), &v);
    let v1 = half(vec![p.clone(), p.clone(), pb.clone(), -pb.clone(), pb.clone(), -pb.clone(), p.clone(), p.clone(), g(2, 0), g(-2, 0)]);
    let v2 = neg(half(vec![pb.clone(), p.clone(), p.clone(), pb.clone(), p.clone(), -pb.clone(), -pb.clone(), p.clone(), g(2, 0), g(-2, 0)]));
    let v3 = vec![g(0, 0), p.clone(), g(0, 0), g(0, 0), g(0, 0), g(0, 0), g(0, 0), p.clone(), g(1, 0), g(-1, 0)];
    let v4 = neg(vec![g(1, 0), g(0, 1), g(0, 0), g(0, 0), g(1, 0), g(0, 1), g(0, 0), g(0, 0), g(1, 0), g(-1, 0)]);
    let v5 = half(vec![pb.clone(), p.clone(), p.clone(), -pb.clone(), p.clone(), -pb.clone(), pb.clone(), p.clone(), g(2, 0), g(-2, 0)]);
    let v6 = neg(vec![g(1, 0), g(0, 1), g(0, 0), g(0, 0), g(0, 0), g(0, 0), g(0, 1), g(1, 0), g(1, 0), g(-1, 0)]);
    let v7 = half([vec![p.clone(); 8], vec![g(2, 0), g(-2, 0)]].concat());
    let v8 = neg(half(vec![pb.clone(), p.clone(), -p.clone(), -pb.clone(), p.clone(), -pb.clone(), -pb.clone(), p.clone(), g(2, 0), g(-2, 0)]));
    let v9 = half(vec![g(3, -3), g(5, 1), g(1, -1), g(1, 1), g(3, -1), g(1, 3), g(1, 1), g(5, -1), g(4, -6), g(-4, 4)]);
    let mut v10 = vec![GaussQ::zero(); 10];
    v10[8] = g(-1, 0);
    v10[9] = g(0, -1);
    let v10 = sub_vec(&v10, &v9);
    vec![v1, v2, v3, v4, v5, v6, v7, v8, v9, v10]
}

/// `d1, c1, d2, c2, d3, c3, d4, c4, (0⁸;1,0), (0⁸;0,1)` in `4D4 ⊕ G_{1,1}`.
pub fn iso_target_vectors<Z: IntScalar>() -> Vec<QVec<Z>> {
    let mut out = Vec::new();
    for k in 0..4 {
        let mut d = vec![GaussQ::zero(); 10];
        d[2 * k] = -qp::<Z>();
        out.push(d);
        let mut c = vec![GaussQ::zero(); 10];
        c[2 * k] = q(-1, 0);
        c[2 * k + 1] = q(1, 0);
        out.push(c);
    }
    for k in 8..10 {
        let mut e = vec![GaussQ::zero(); 10];
        e[k] = GaussQ::one();
        out.push(e);
    }
    out
}

/// The isometry `BW16 ⊕ G_{1,1} → 4D4 ⊕ G_{1,1}` fixed by the ten vector pairs.
pub fn iso_phi<Z: IntScalar>() -> Result<IsoMap<Z>> {
    let src = make_l_bw::<Z>();
    let tgt = make_l_d4::<Z>();
    let sv = iso_source_vectors::<Z>();
    let tv = iso_target_vectors::<Z>();
    let amb = lorentz_ambient::<Z>(8);
    for i in 0..10 {
        if !src.member(&sv[i])? {
            return Err(Error::Verification(format!("v{} is not in BW16+G11", i + 1)));
        }
        for j in 0..10 {
            if herm(&amb, &sv[i], &sv[j]) != herm(&amb, &tv[i], &tv[j]) {
                return Err(Error::Verification(format!("Gram matrices differ at ({}, {})", i + 1, j + 1)));
            }
        }
    }
    let s = Mat::from_cols(&sv);
    let t = Mat::from_cols(&tv);
    let s_inv = s.inverse().ok_or_else(|| Error::Verification("source vectors are dependent".into()))?;
    let matrix = &t * &s_inv;
    let inverse = &s * &t.inverse().expect("target vectors form a basis");
    let iso = IsoMap { source: src, target: tgt, matrix, inverse };
    if !iso.preserves_form() {
        return Err(Error::Verification("coordinate change does not preserve the form".into()));
    }
    if !iso.is_lattice_isomorphism() {
        return Err(Error::Verification("coordinate change does not carry BW16+G11 onto 4D4+G11".into()));
    }
    Ok(iso)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fingeom::vertices;
    use crate::scalar::RQuad;
    use num_bigint::BigInt;

    type Z = BigInt;

    #[test]
    fn root_gram_matches_incidence() {
        let roots = simple_roots_32::<Z>();
        let amb = lorentz_ambient::<Z>(8);
        for u in vertices() {
            for v in vertices() {
                assert_eq!(herm(&amb, &roots[u.index()], &roots[v.index()]), expected_gram_entry::<Z>(u, v), "{} {}", u.label(), v.label());
            }
        }
        let g = Mat::from_fn(32, 32, |i, j| herm(&amb, &roots[i], &roots[j]));
        assert_eq!(g.rank(), 10);
    }

    #[test]
    fn roots_lie_in_lattice() {
        let l = make_l_d4::<Z>();
        for r in simple_roots_32::<Z>() {
            assert!(l.member(&r).unwrap());
            assert!(l.member_generic(&r).unwrap());
        }
        assert_eq!(simple_root::<Z>("a").unwrap(), [vec![GaussQ::zero(); 8], vec![q(-1, 0), q(-1, 0)]].concat());
    }

    #[test]
    fn special_vectors_are_null() {
        let sp = special_vectors::<Z>();
        let amb = lorentz_ambient::<Z>(8);
        for v in [&sp.rho, &sp.rho1, &sp.p_inf, &sp.l_inf] {
            assert!(herm(&amb, v, v).is_zero());
        }
        assert_eq!(sp.p_inf, [vec![q(-1, 0); 8], vec![q(0, -2), q(-2, 0)]].concat());
        assert_eq!(herm(&amb, &sp.rho1, &sp.l_inf), q(2, 0));
        let ca = amb.map(|x| Cyc8::from_gaussq(x));
        let t2 = herm(&ca, &sp.tau, &sp.tau).to_rquad().unwrap();
        assert!(t2.is_negative());
        assert_eq!(t2, RQuad::from_ints(0, -4));
    }

    #[test]
    fn linear_relations() {
        assert!(linear_relation_failures::<Z>().is_empty(), "{:?}", linear_relation_failures::<Z>());
        let l = make_l_d4::<Z>();
        let sp = special_vectors::<Z>();
        assert!(l.is_primitive(&sp.p_inf).unwrap());
        assert!(l.is_primitive(&sp.l_inf).unwrap());
        assert!(!l.is_primitive(&scale_vec(&qp(), &sp.l_inf)).unwrap());
    }

    #[test]
    fn rho_pairing() {
        let amb = lorentz_ambient::<Z>(8);
        let sp = special_vectors::<Z>();
        let mut s = vec![GaussQ::zero(); 10];
        s[0] = q(3, 1);
        s[8] = q(2, -1);
        s[9] = q(5, 5);
        assert_eq!(herm(&amb, &sp.rho, &s), qp::<Z>() * q(2, -1));
    }

    #[test]
    fn coordinate_change_is_isometry() {
        let iso = iso_phi::<Z>().unwrap();
        assert!(iso.preserves_form());
        assert!(iso.is_lattice_isomorphism());
        assert!(iso.invert().is_lattice_isomorphism());
        assert!((&iso.inverse * &iso.matrix).is_identity());
    }
}
