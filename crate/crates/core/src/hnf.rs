//! Hermite normal form over the Euclidean domain Z[i].
//!
//! Rows generate a G-module. The normal form is row echelon with each pivot the
//! canonical associate (`re > 0, im ≥ 0`) and every entry above a pivot reduced to
//! the canonical residue modulo that pivot, which makes it unique per module.

use num_traits::{One, Zero};

use crate::scalar::{Gauss, GaussQ, IntScalar};

/// Nonzero rows of the Hermite normal form of the module spanned by `gens`.
pub fn hnf<Z: IntScalar>(gens: &[Vec<Gauss<Z>>]) -> Vec<Vec<Gauss<Z>>> {
    let Some(n) = gens.first().map(|r| r.len()) else { return Vec::new() };
    let mut rows: Vec<Vec<Gauss<Z>>> = gens.iter().filter(|r| r.iter().any(|x| !x.is_zero())).cloned().collect();
    let mut r = 0;
    for c in 0..n {
        if r == rows.len() {
            break;
        }
        // Euclid on column c among rows r..
        loop {
            let best = (r..rows.len())
                .filter(|&i| !rows[i][c].is_zero())
                .min_by(|&a, &b| rows[a][c].norm().cmp(&rows[b][c].norm()));
            let Some(best) = best else { break };
            rows.swap(r, best);
            let mut done = true;
            for i in r + 1..rows.len() {
                if rows[i][c].is_zero() {
                    continue;
                }
                let q = rows[i][c].div_round(&rows[r][c]);
                let (head, tail) = rows.split_at_mut(i);
                sub_mul(&mut tail[0], &head[r], &q);
                if !rows[i][c].is_zero() {
                    done = false;
                }
            }
            if done {
                break;
            }
        }
        if rows[r][c].is_zero() {
            continue;
        }
        let (_, u) = rows[r][c].canonical_associate();
        let unit = Gauss::unit(u);
        for x in rows[r].iter_mut() {
            *x = unit.clone() * x.clone();
        }
        let piv = rows[r][c].clone();
        for i in 0..r {
            let e = rows[i][c].clone();
            let red = e.residue(&piv);
            let q = (e - red).div_exact(&piv).expect("residue difference is a multiple of the pivot");
            if !q.is_zero() {
                let (head, tail) = rows.split_at_mut(r);
                sub_mul(&mut head[i], &tail[0], &q);
            }
        }
        rows.retain(|row| row.iter().any(|x| !x.is_zero()));
        r += 1;
    }
    rows.truncate(r);
    rows
}

fn sub_mul<Z: IntScalar>(target: &mut [Gauss<Z>], src: &[Gauss<Z>], q: &Gauss<Z>) {
    for (t, s) in target.iter_mut().zip(src) {
        if !s.is_zero() {
            *t = t.clone() - q.clone() * s.clone();
        }
    }
}

/// Common positive denominator of a set of rational vectors.
pub fn common_den<Z: IntScalar>(vs: &[Vec<GaussQ<Z>>]) -> Z {
    vs.iter().flatten().fold(Z::one(), |acc, x| acc.lcm(x.den()))
}

/// `d·v` as a Gaussian integer vector; panics if `d` does not clear denominators.
pub fn scale_integral<Z: IntScalar>(v: &[GaussQ<Z>], d: &Z) -> Vec<Gauss<Z>> {
    v.iter()
        .map(|x| {
            let y = x.num().scale(&(d.clone() / x.den().clone()));
            assert!((d.clone() % x.den().clone()).is_zero(), "denominator not cleared");
            y
        })
        .collect()
}

/// HNF of a rational generating set after scaling by `d`.
pub fn hnf_scaled<Z: IntScalar>(gens: &[Vec<GaussQ<Z>>], d: &Z) -> Vec<Vec<Gauss<Z>>> {
    let rows: Vec<Vec<Gauss<Z>>> = gens.iter().map(|v| scale_integral(v, d)).collect();
    hnf(&rows)
}

/// Whether two rational generating sets span the same G-module.
pub fn same_module<Z: IntScalar>(a: &[Vec<GaussQ<Z>>], b: &[Vec<GaussQ<Z>>]) -> bool {
    let mut all = a.to_vec();
    all.extend_from_slice(b);
    let d = common_den(&all);
    hnf_scaled(a, &d) == hnf_scaled(b, &d)
}

/// Whether rows of an integral matrix generate all of G^n.
pub fn is_unimodular_span<Z: IntScalar>(gens: &[Vec<Gauss<Z>>]) -> bool {
    let h = hnf(gens);
    let n = gens.first().map_or(0, |r| r.len());
    h.len() == n && h.iter().enumerate().all(|(i, row)| row.iter().enumerate().all(|(j, x)| if i == j { x.is_one() } else { x.is_zero() }))
}
