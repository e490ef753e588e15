//! Hermitian Gaussian lattices given by a basis in an ambient Hermitian space.

mod io;
mod roots;

pub use io::{lattice_from_json, lattice_to_json, LatticeJson};
pub use roots::{expected_gram_entry, iso_source_vectors, iso_target_vectors, linear_relation_failures, iso_phi, simple_root, simple_roots_32, special_vectors, tau_vector, IsoMap, SpecialVectors};

use num_rational::Ratio;
use num_traits::{One, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::hnf::{common_den, hnf_scaled, is_unimodular_span, same_module};
use crate::matrix::{herm, inertia, Mat};
use crate::scalar::{Gauss, GaussQ, IntScalar};

/// Coordinate vector over Q(i).
pub type QVec<Z> = Vec<GaussQ<Z>>;

/// Which defining congruences describe membership, if any.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum LatticeKind {
    /// `{x ∈ G^n : Σx ≡ 0 mod p}`.
    Dn(usize),
    FourD4,
    Bw16,
    M16,
    HypCell,
    /// `BW16 ⊕ G_{1,1}`.
    LBw,
    /// `4D4 ⊕ G_{1,1}`.
    LD4,
    Generic,
}

#[derive(Clone, Debug)]
pub struct HermLattice<Z: IntScalar> {
    pub name: String,
    pub kind: LatticeKind,
    /// Gram matrix of the ambient coordinate space.
    pub ambient: Mat<GaussQ<Z>>,
    /// Basis vectors in ambient coordinates.
    pub basis: Vec<QVec<Z>>,
    /// `⟨b_i, b_j⟩`.
    pub gram: Mat<GaussQ<Z>>,
    pub labels: Vec<String>,
}

pub(crate) fn q<Z: IntScalar>(re: i64, im: i64) -> GaussQ<Z> {
    GaussQ::from_ints(re, im)
}

pub(crate) fn qp<Z: IntScalar>() -> GaussQ<Z> {
    GaussQ::from_gauss(Gauss::p())
}

pub(crate) fn qpbar<Z: IntScalar>() -> GaussQ<Z> {
    GaussQ::from_gauss(Gauss::pbar())
}

pub fn to_qvec<Z: IntScalar>(v: &[Gauss<Z>]) -> QVec<Z> {
    v.iter().cloned().map(GaussQ::from_gauss).collect()
}

pub fn to_gvec<Z: IntScalar>(v: &[GaussQ<Z>]) -> Option<Vec<Gauss<Z>>> {
    v.iter().map(|x| x.to_gauss()).collect()
}

pub fn scale_vec<Z: IntScalar>(s: &GaussQ<Z>, v: &[GaussQ<Z>]) -> QVec<Z> {
    v.iter().map(|x| s.clone() * x.clone()).collect()
}

pub fn add_vec<Z: IntScalar>(u: &[GaussQ<Z>], v: &[GaussQ<Z>]) -> QVec<Z> {
    u.iter().zip(v).map(|(a, b)| a.clone() + b.clone()).collect()
}

pub fn sub_vec<Z: IntScalar>(u: &[GaussQ<Z>], v: &[GaussQ<Z>]) -> QVec<Z> {
    u.iter().zip(v).map(|(a, b)| a.clone() - b.clone()).collect()
}

/// Standard form on the first `n` coordinates plus the hyperbolic cell on the last two.
pub fn lorentz_ambient<Z: IntScalar>(n: usize) -> Mat<GaussQ<Z>> {
    let mut g = Mat::identity(n + 2);
    g[(n, n)] = GaussQ::zero();
    g[(n + 1, n + 1)] = GaussQ::zero();
    g[(n, n + 1)] = qpbar();
    g[(n + 1, n)] = qp();
    g
}

impl<Z: IntScalar> HermLattice<Z> {
    pub fn new(name: &str, kind: LatticeKind, ambient: Mat<GaussQ<Z>>, basis: Vec<QVec<Z>>, labels: Vec<String>) -> Result<Self> {
        let dim = ambient.rows();
        for b in &basis {
            if b.len() != dim {
                return Err(Error::Dimension { expected: dim, got: b.len() });
            }
        }
        let n = basis.len();
        let gram = Mat::from_fn(n, n, |i, j| herm(&ambient, &basis[i], &basis[j]));
        if !gram.is_hermitian() {
            return Err(Error::Invalid(format!("{name}: Gram matrix is not Hermitian")));
        }
        if gram.det().is_zero() {
            return Err(Error::Invalid(format!("{name}: Gram matrix is singular")));
        }
        let labels = if labels.is_empty() { (1..=n).map(|i| format!("b{i}")).collect() } else { labels };
        Ok(HermLattice { name: name.into(), kind, ambient, basis, gram, labels })
    }

    /// Lattice spanned by `gens`, with its basis read off the Hermite normal form.
    pub fn from_generators(name: &str, kind: LatticeKind, ambient: Mat<GaussQ<Z>>, gens: &[QVec<Z>]) -> Result<Self> {
        let d = common_den(gens);
        let dq = GaussQ::new(Gauss::one(), d.clone());
        let basis: Vec<QVec<Z>> = hnf_scaled(gens, &d).iter().map(|row| scale_vec(&dq, &to_qvec(row))).collect();
        Self::new(name, kind, ambient, basis, Vec::new())
    }

    /// Abstract lattice `G^n` with the given Gram matrix.
    pub fn from_gram(name: &str, gram: Mat<GaussQ<Z>>) -> Result<Self> {
        let n = gram.rows();
        let basis = (0..n).map(|i| (0..n).map(|j| if i == j { GaussQ::one() } else { GaussQ::zero() }).collect()).collect();
        Self::new(name, LatticeKind::Generic, gram, basis, Vec::new())
    }

    pub fn rank(&self) -> usize {
        self.basis.len()
    }

    pub fn dim(&self) -> usize {
        self.ambient.rows()
    }

    /// Hermitian form of the ambient space, conjugate-linear in `u`.
    pub fn inner(&self, u: &[GaussQ<Z>], v: &[GaussQ<Z>]) -> Result<GaussQ<Z>> {
        if u.len() != self.dim() || v.len() != self.dim() {
            return Err(Error::Dimension { expected: self.dim(), got: u.len().min(v.len()) });
        }
        Ok(herm(&self.ambient, u, v))
    }

    pub fn norm(&self, v: &[GaussQ<Z>]) -> Ratio<Z> {
        herm(&self.ambient, v, v).re()
    }

    pub fn is_integral(&self) -> bool {
        (0..self.rank()).all(|i| (0..self.rank()).all(|j| self.gram[(i, j)].is_integral()))
    }

    /// `(positive, negative)` inertia.
    pub fn signature(&self) -> (usize, usize) {
        let (p, n, _) = inertia(&self.gram, |x| x.re().cmp(&Ratio::zero()));
        (p, n)
    }

    /// Whether `L∨ = p⁻¹L`: the columns of `p·gram⁻¹` generate `G^n`.
    pub fn is_p_modular(&self) -> Result<bool> {
        if !self.is_integral() {
            return Err(Error::NotIntegral);
        }
        let inv = self.gram.inverse().expect("Gram matrix is nonsingular");
        let m = inv.scale(&qp());
        let cols: Vec<Vec<Gauss<Z>>> = match (0..m.cols()).map(|j| to_gvec(&m.col(j))).collect::<Option<Vec<_>>>() {
            Some(c) => c,
            None => return Ok(false),
        };
        Ok(is_unimodular_span(&cols))
    }

    /// `|L∨/L| = N(det gram)`.
    pub fn disc_group_order(&self) -> Result<Z> {
        if !self.is_integral() {
            return Err(Error::NotIntegral);
        }
        let det = self.gram.det();
        let n = det.norm();
        assert!(n.is_integer(), "integral Gram matrix has integral determinant");
        Ok(n.to_integer())
    }

    /// Dual basis `b*_j` with `⟨b_i, b*_j⟩ = δ_ij`, in ambient coordinates.
    pub fn dual_basis(&self) -> Vec<QVec<Z>> {
        let inv = self.gram.inverse().expect("Gram matrix is nonsingular");
        (0..self.rank())
            .map(|j| {
                let mut v = vec![GaussQ::zero(); self.dim()];
                for k in 0..self.rank() {
                    v = add_vec(&v, &scale_vec(&inv[(k, j)], &self.basis[k]));
                }
                v
            })
            .collect()
    }

    pub fn dual(&self) -> Result<Self> {
        Self::new(&format!("{}∨", self.name), LatticeKind::Generic, self.ambient.clone(), self.dual_basis(), Vec::new())
    }

    /// Coordinates of `v` in the lattice basis, if `v` lies in the rational span.
    pub fn coords(&self, v: &[GaussQ<Z>]) -> Option<QVec<Z>> {
        let m = Mat::from_cols(&self.basis);
        let x = m.solve(v)?;
        (m.mul_vec(&x) == v).then_some(x)
    }

    /// Ambient vector with the given lattice coordinates.
    pub fn vector(&self, coords: &[GaussQ<Z>]) -> QVec<Z> {
        let mut v = vec![GaussQ::zero(); self.dim()];
        for (c, b) in coords.iter().zip(&self.basis) {
            if !c.is_zero() {
                v = add_vec(&v, &scale_vec(c, b));
            }
        }
        v
    }

    /// Whether `v ∈ L` and `v ∉ πL` for every non-unit `π`.
    pub fn is_primitive(&self, v: &[GaussQ<Z>]) -> Result<bool> {
        if !self.member_generic(v)? {
            return Ok(false);
        }
        let c = to_gvec(&self.coords(v).expect("member")).expect("integral");
        let g = c.iter().fold(Gauss::zero(), |acc, x| Gauss::gcd(&acc, x));
        Ok(g.is_unit())
    }

    pub fn member_generic(&self, v: &[GaussQ<Z>]) -> Result<bool> {
        if v.len() != self.dim() {
            return Err(Error::Dimension { expected: self.dim(), got: v.len() });
        }
        Ok(self.coords(v).is_some_and(|c| c.iter().all(|x| x.is_integral())))
    }

    /// Membership by the defining congruences where the construction has them.
    pub fn member(&self, v: &[GaussQ<Z>]) -> Result<bool> {
        if v.len() != self.dim() {
            return Err(Error::Dimension { expected: self.dim(), got: v.len() });
        }
        Ok(match self.kind {
            LatticeKind::Dn(_) => in_dn(v),
            LatticeKind::FourD4 => in_4d4(v),
            LatticeKind::Bw16 => in_m16(v) && bw_sum_condition(v),
            LatticeKind::M16 => in_m16(v),
            LatticeKind::HypCell => v.iter().all(|x| x.is_integral()),
            LatticeKind::LBw => in_m16(&v[..8]) && bw_sum_condition(&v[..8]) && v[8..].iter().all(|x| x.is_integral()),
            LatticeKind::LD4 => in_4d4(&v[..8]) && v[8..].iter().all(|x| x.is_integral()),
            LatticeKind::Generic => return self.member_generic(v),
        })
    }

    /// Equality as sets of vectors in the same ambient space.
    pub fn same_lattice(&self, other: &Self) -> bool {
        self.dim() == other.dim() && same_module(&self.basis, &other.basis)
    }

    /// `[other : self]` when `self ⊂ other` are of full rank in the same space.
    pub fn index_in(&self, other: &Self) -> Result<Z> {
        let mut t = Vec::new();
        for b in &self.basis {
            let c = other.coords(b).ok_or_else(|| Error::Invalid("not in the rational span".into()))?;
            if !c.iter().all(|x| x.is_integral()) {
                return Err(Error::Invalid(format!("{} is not contained in {}", self.name, other.name)));
            }
            t.push(c);
        }
        let det = Mat::from_rows(&t).det();
        Ok(det.norm().to_integer())
    }

    pub fn cast<W: IntScalar>(&self) -> Option<HermLattice<W>> {
        let cm = |m: &Mat<GaussQ<Z>>| -> Option<Mat<GaussQ<W>>> {
            let rows: Option<Vec<Vec<GaussQ<W>>>> = m.to_rows().iter().map(|r| r.iter().map(|x| x.cast()).collect()).collect();
            Some(Mat::from_rows(&rows?))
        };
        let basis: Option<Vec<QVec<W>>> = self.basis.iter().map(|b| b.iter().map(|x| x.cast()).collect()).collect();
        Some(HermLattice {
            name: self.name.clone(),
            kind: self.kind,
            ambient: cm(&self.ambient)?,
            basis: basis?,
            gram: cm(&self.gram)?,
            labels: self.labels.clone(),
        })
    }
}

fn all_integral<Z: IntScalar>(v: &[GaussQ<Z>]) -> bool {
    v.iter().all(|x| x.is_integral())
}

fn in_dn<Z: IntScalar>(v: &[GaussQ<Z>]) -> bool {
    all_integral(v) && crate::scalar::p_divides(&v.iter().fold(Gauss::zero(), |acc, x| acc + x.num().clone()))
}

fn in_4d4<Z: IntScalar>(v: &[GaussQ<Z>]) -> bool {
    v.len() == 8 && v.chunks(2).all(in_dn)
}

/// `x ∈ p⁻¹D4` for a coordinate pair.
fn in_pinv_d4<Z: IntScalar>(x: &[GaussQ<Z>]) -> bool {
    in_dn(&scale_vec(&qp(), x))
}

fn in_m16<Z: IntScalar>(v: &[GaussQ<Z>]) -> bool {
    if v.len() != 8 {
        return false;
    }
    let pairs: Vec<&[GaussQ<Z>]> = v.chunks(2).collect();
    pairs.iter().all(|x| in_pinv_d4(x)) && pairs[1..].iter().all(|x| in_dn(&sub_vec(x, pairs[0])))
}

/// `Σ_j x_j ∈ pD4`.
fn bw_sum_condition<Z: IntScalar>(v: &[GaussQ<Z>]) -> bool {
    let s0 = v.iter().step_by(2).fold(GaussQ::zero(), |a, x| a + x.clone());
    let s1 = v.iter().skip(1).step_by(2).fold(GaussQ::zero(), |a, x| a + x.clone());
    let pinv = qp::<Z>().inv().unwrap();
    in_dn(&[pinv.clone() * s0, pinv * s1])
}

pub fn make_dn<Z: IntScalar>(n: usize) -> Result<HermLattice<Z>> {
    let mut gens: Vec<QVec<Z>> = Vec::new();
    let unit = |k: usize| -> QVec<Z> { (0..n).map(|j| if j == k { GaussQ::one() } else { GaussQ::zero() }).collect() };
    gens.push(scale_vec(&qp(), &unit(0)));
    for k in 0..n - 1 {
        gens.push(sub_vec(&unit(k), &unit(k + 1)));
    }
    let mut l = HermLattice::from_generators(&format!("D{}^G", 2 * n), LatticeKind::Dn(n), Mat::identity(n), &gens)?;
    if n == 2 {
        // the documented basis v1 = (1,1), v2 = (0, p̄)
        let basis = vec![vec![q(1, 0), q(1, 0)], vec![q(0, 0), qpbar()]];
        if !same_module(&basis, &l.basis) {
            return Err(Error::Verification("D4^G basis does not span the congruence lattice".into()));
        }
        l = HermLattice::new("D4^G", LatticeKind::Dn(2), Mat::identity(2), basis, vec!["v1".into(), "v2".into()])?;
    }
    Ok(l)
}

pub fn make_d4g<Z: IntScalar>() -> HermLattice<Z> {
    make_dn(2).expect("D4^G")
}

pub fn d4_basis<Z: IntScalar>() -> [QVec<Z>; 2] {
    [vec![q(1, 0), q(1, 0)], vec![q(0, 0), qpbar()]]
}

fn place<Z: IntScalar>(dim: usize, k: usize, pair: &[GaussQ<Z>]) -> QVec<Z> {
    let mut v = vec![GaussQ::zero(); dim];
    v[2 * k] = pair[0].clone();
    v[2 * k + 1] = pair[1].clone();
    v
}

pub fn make_4d4<Z: IntScalar>() -> HermLattice<Z> {
    let basis: Vec<QVec<Z>> = (0..4).flat_map(|k| d4_basis::<Z>().map(|d| place(8, k, &d))).collect();
    HermLattice::new("4D4^G", LatticeKind::FourD4, Mat::identity(8), basis, Vec::new()).expect("4D4^G")
}

/// Generators of BW16 from the congruence definition.
pub fn bw16_congruence_generators<Z: IntScalar>() -> Vec<QVec<Z>> {
    let pbar_inv = qpbar::<Z>().inv().unwrap();
    let mut gens = Vec::new();
    for d in d4_basis::<Z>() {
        let w = scale_vec(&pbar_inv, &d);
        gens.push((0..4).flat_map(|_| w.clone()).collect());
        for k in 0..4 {
            gens.push(place(8, k, &scale_vec(&qp(), &d)));
            if k < 3 {
                gens.push(sub_vec(&place(8, k, &d), &place(8, k + 1, &d)));
            }
        }
    }
    gens
}

/// Rows of `p⁻¹·(1 1; 0 p)^{⊗3}`.
pub fn bw16_tensor_rows<Z: IntScalar>() -> Vec<QVec<Z>> {
    let a = [[q::<Z>(1, 0), q(1, 0)], [q(0, 0), qp()]];
    let pinv = qp::<Z>().inv().unwrap();
    (0..8)
        .map(|i: usize| {
            (0..8)
                .map(|j: usize| {
                    let mut x = pinv.clone();
                    for b in 0..3 {
                        x = x * a[(i >> (2 - b)) & 1][(j >> (2 - b)) & 1].clone();
                    }
                    x
                })
                .collect()
        })
        .collect()
}

/// BW16^G with the tensor rows as basis, after checking the tensor and congruence
/// definitions give the same lattice.
pub fn make_bw16<Z: IntScalar>() -> HermLattice<Z> {
    let rows = bw16_tensor_rows::<Z>();
    let gens = bw16_congruence_generators::<Z>();
    assert!(same_module(&rows, &gens), "tensor and congruence definitions of BW16 differ");
    let labels = (1..=8).map(|i| format!("λ{i}")).collect();
    HermLattice::new("BW16^G", LatticeKind::Bw16, Mat::identity(8), rows, labels).expect("BW16^G")
}

pub fn make_m16<Z: IntScalar>() -> HermLattice<Z> {
    let pbar_inv = qpbar::<Z>().inv().unwrap();
    let mut gens: Vec<QVec<Z>> = make_4d4::<Z>().basis;
    for d in d4_basis::<Z>() {
        let w = scale_vec(&pbar_inv, &d);
        gens.push((0..4).flat_map(|_| w.clone()).collect());
    }
    HermLattice::from_generators("M16^G", LatticeKind::M16, Mat::identity(8), &gens).expect("M16^G")
}

pub fn make_hyp_cell<Z: IntScalar>() -> HermLattice<Z> {
    let g = lorentz_ambient::<Z>(0);
    let basis = vec![vec![q(1, 0), q(0, 0)], vec![q(0, 0), q(1, 0)]];
    HermLattice::new("G_{1,1}", LatticeKind::HypCell, g, basis, vec!["e1".into(), "e2".into()]).expect("G_{1,1}")
}

fn extend_lorentz<Z: IntScalar>(name: &str, kind: LatticeKind, lam: &HermLattice<Z>) -> HermLattice<Z> {
    let mut basis: Vec<QVec<Z>> = lam.basis.iter().map(|b| b.iter().cloned().chain([GaussQ::zero(), GaussQ::zero()]).collect()).collect();
    let mut e = vec![GaussQ::zero(); 10];
    e[8] = GaussQ::one();
    basis.push(e.clone());
    e[8] = GaussQ::zero();
    e[9] = GaussQ::one();
    basis.push(e);
    let mut labels = lam.labels.clone();
    labels.extend(["e1".to_string(), "e2".to_string()]);
    HermLattice::new(name, kind, lorentz_ambient(8), basis, labels).expect("Lorentzian lattice")
}

/// `L = BW16^G ⊕ G_{1,1}`; vectors are written `(σ; m, n)`.
pub fn make_l_bw<Z: IntScalar>() -> HermLattice<Z> {
    extend_lorentz("BW16^G+G_{1,1}", LatticeKind::LBw, &make_bw16())
}

/// `L = 4D4^G ⊕ G_{1,1}`.
pub fn make_l_d4<Z: IntScalar>() -> HermLattice<Z> {
    extend_lorentz("4D4^G+G_{1,1}", LatticeKind::LD4, &make_4d4())
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;

    type Z = BigInt;

    #[test]
    fn d4_gram_and_modularity() {
        let d4 = make_d4g::<Z>();
        assert_eq!(d4.gram, Mat::from_rows(&[vec![q(2, 0), q(1, -1)], vec![q(1, 1), q(2, 0)]]));
        assert!(d4.is_p_modular().unwrap());
        assert_eq!(d4.disc_group_order().unwrap(), BigInt::from(4));
        assert_eq!(d4.signature(), (2, 0));
        assert_eq!(d4.norm(&[q(1, 0), q(1, 0)]), Ratio::from_integer(BigInt::from(2)));
    }

    #[test]
    fn d6_is_not_p_modular() {
        let d6 = make_dn::<Z>(3).unwrap();
        assert!(!d6.is_p_modular().unwrap());
    }

    #[test]
    fn bw16_definitions_agree() {
        let bw = make_bw16::<Z>();
        assert!(bw.is_p_modular().unwrap());
        assert_eq!(bw.disc_group_order().unwrap(), BigInt::from(256));
        for b in &bw.basis {
            assert!(bw.member(b).unwrap());
            assert_eq!(bw.norm(b), Ratio::from_integer(BigInt::from(4)));
        }
        for g in bw16_congruence_generators::<Z>() {
            assert!(bw.member(&g).unwrap());
            assert!(bw.member_generic(&g).unwrap());
        }
    }

    #[test]
    fn bw16_congruence_example() {
        let bw = make_bw16::<Z>();
        let mut v = vec![GaussQ::zero(); 8];
        v[0] = q(1, 0);
        v[1] = q(1, 0);
        assert!(!bw.member(&v).unwrap());
        assert!(!bw.member_generic(&v).unwrap());
        assert!(bw.member(&vec![GaussQ::zero(); 8]).unwrap());
    }

    #[test]
    fn inclusion_indices() {
        let m16 = make_m16::<Z>();
        let bw = make_bw16::<Z>();
        let d4 = make_4d4::<Z>();
        assert_eq!(d4.index_in(&m16).unwrap(), BigInt::from(4));
        assert_eq!(bw.index_in(&m16).unwrap(), BigInt::from(4));
        assert!(!m16.is_p_modular().unwrap());
        assert_eq!(m16.disc_group_order().unwrap(), BigInt::from(16));
        let dual = m16.dual().unwrap();
        assert_eq!(m16.index_in(&dual).unwrap(), BigInt::from(16));
    }

    #[test]
    fn lorentzian_lattices() {
        let h = make_hyp_cell::<Z>();
        assert_eq!(h.inner(&[q(1, 0), q(0, 0)], &[q(0, 0), q(1, 0)]).unwrap(), qpbar());
        assert!(h.is_p_modular().unwrap());
        assert_eq!(h.signature(), (1, 1));
        for l in [make_l_bw::<Z>(), make_l_d4::<Z>()] {
            assert!(l.is_p_modular().unwrap());
            assert_eq!(l.signature(), (9, 1));
            for b in &l.basis {
                assert!(l.member(b).unwrap());
            }
        }
    }

    #[test]
    fn membership_routes_agree() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(3);
        for l in [make_bw16::<Z>(), make_m16::<Z>(), make_4d4::<Z>()] {
            for _ in 0..300 {
                let v: QVec<Z> = (0..8)
                    .map(|_| GaussQ::new(Gauss::from_ints(rng.gen_range(-3..4), rng.gen_range(-3..4)), BigInt::from(rng.gen_range(1..3))))
                    .collect();
                assert_eq!(l.member(&v).unwrap(), l.member_generic(&v).unwrap(), "{}", l.name);
            }
        }
    }
}
