use num_traits::Zero;
use serde::{Deserialize, Serialize};

use super::HermLattice;
use crate::error::{Error, Result};
use crate::matrix::Mat;
use crate::scalar::{Gauss, GaussQ, IntScalar};

/// Gram matrix as sparse entries `(row, col, re·den, im·den)` over one shared denominator.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LatticeJson {
    pub name: String,
    pub rank: usize,
    pub den: i64,
    pub gram: Vec<(usize, usize, i64, i64)>,
    pub labels: Vec<String>,
}

pub fn lattice_to_json<Z: IntScalar>(l: &HermLattice<Z>) -> Result<LatticeJson> {
    let n = l.rank();
    let mut den = Z::one();
    for i in 0..n {
        for j in 0..n {
            den = den.lcm(l.gram[(i, j)].den());
        }
    }
    let small = |x: Z| x.to_i64().ok_or_else(|| Error::Invalid("Gram entry exceeds 64 bits".into()));
    let mut gram = Vec::new();
    for i in 0..n {
        for j in 0..n {
            let e = &l.gram[(i, j)];
            if e.is_zero() {
                continue;
            }
            let f = den.clone() / e.den().clone();
            gram.push((i, j, small(e.num().re.clone() * f.clone())?, small(e.num().im.clone() * f)?));
        }
    }
    Ok(LatticeJson { name: l.name.clone(), rank: n, den: small(den)?, gram, labels: l.labels.clone() })
}

pub fn lattice_from_json<Z: IntScalar>(j: &LatticeJson) -> Result<HermLattice<Z>> {
    if j.den <= 0 {
        return Err(Error::Invalid("denominator must be positive".into()));
    }
    let mut g: Mat<GaussQ<Z>> = Mat::zeros(j.rank, j.rank);
    for &(r, c, re, im) in &j.gram {
        if r >= j.rank || c >= j.rank {
            return Err(Error::Dimension { expected: j.rank, got: r.max(c) + 1 });
        }
        g[(r, c)] = GaussQ::new(Gauss::from_ints(re, im), Z::from_int(j.den));
    }
    let mut l = HermLattice::from_gram(&j.name, g)?;
    if j.labels.len() == j.rank {
        l.labels = j.labels.clone();
    }
    Ok(l)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattices::{make_bw16, make_d4g};
    use num_bigint::BigInt;

    #[test]
    fn json_round_trip() {
        for l in [make_d4g::<BigInt>(), make_bw16::<BigInt>()] {
            let j = lattice_to_json(&l).unwrap();
            let s = serde_json::to_string(&j).unwrap();
            let back: LatticeJson = serde_json::from_str(&s).unwrap();
            let m = lattice_from_json::<BigInt>(&back).unwrap();
            assert_eq!(m.gram, l.gram);
            assert_eq!(m.labels, l.labels);
        }
    }
}
