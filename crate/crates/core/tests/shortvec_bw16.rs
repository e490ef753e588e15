use std::time::Instant;

use gausslat::lattices::make_bw16;
use gausslat::scalar::{Gauss, GaussQ};
use gausslat::shortvec::{coset_reps, coset_reps_iter, covering_sample, cvp, enumerate_norm, norm_class};
use num_bigint::BigInt;
use num_rational::Ratio;

fn r(n: i64) -> Ratio<BigInt> {
    Ratio::from_integer(BigInt::from(n))
}

#[test]
fn bw16_norm4_count() {
    let bw = make_bw16::<BigInt>();
    let t = Instant::now();
    let v = enumerate_norm(&bw, &r(4)).unwrap();
    eprintln!("norm 4 enumeration: {:?}", t.elapsed());
    assert_eq!(v.len(), 4320);
    for c in v.iter().take(50) {
        let cq: Vec<GaussQ<BigInt>> = c.iter().cloned().map(GaussQ::from_gauss).collect();
        assert!(bw.member(&bw.vector(&cq)).unwrap());
        assert_eq!(norm_class(&bw, c).unwrap(), 0);
    }
    // closed under units
    let set: std::collections::HashSet<_> = v.iter().cloned().collect();
    for c in &v {
        let ic: Vec<_> = c.iter().map(|x| x.mul_i()).collect();
        assert!(set.contains(&ic));
    }
}

#[test]
fn bw16_cosets() {
    let bw = make_bw16::<BigInt>();
    assert_eq!(coset_reps(&bw, &Gauss::p()).unwrap().len(), 256);
    let t = Instant::now();
    let mut all = 0;
    let mut class2 = 0;
    for c in coset_reps_iter::<BigInt>(8, &Gauss::from_ints(2, 0)).unwrap() {
        all += 1;
        if norm_class(&bw, &c).unwrap() == 2 {
            class2 += 1;
        }
    }
    eprintln!("mod 2 classes: {:?}", t.elapsed());
    assert_eq!(all, 65536);
    assert_eq!(class2, 30720);
}

#[test]
fn bw16_cvp_translation_invariant() {
    let bw = make_bw16::<BigInt>();
    let t: Vec<GaussQ<BigInt>> = (0..8).map(|k| GaussQ::new(Gauss::from_ints(k as i64 - 3, 2 * k as i64 % 5), BigInt::from(7))).collect();
    let a = cvp(&bw, &t).unwrap();
    let shift: Vec<_> = t.iter().zip(&bw.basis[3]).map(|(x, y)| x.clone() + y.clone()).collect();
    let b = cvp(&bw, &shift).unwrap();
    assert_eq!(a.dist2, b.dist2);
    assert!(a.dist2 <= r(2));
}

#[test]
fn bw16_covering_sample_small() {
    let bw = make_bw16::<BigInt>();
    let t = Instant::now();
    let rep = covering_sample(&bw, 2000, 7).unwrap();
    eprintln!("covering 2000: {:?} {:?}", t.elapsed(), (rep.near_lattice, rep.near_half));
    assert!(rep.failures.is_empty());
}
