//! Small dense matrices over a ring, with exact elimination over fields.

use std::fmt;
use std::ops::{Index, IndexMut, Mul};


use crate::scalar::{Field, Ring};

#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Mat<T> {
    rows: usize,
    cols: usize,
    data: Vec<T>,
}

impl<T: Ring> Mat<T> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Mat { rows, cols, data: vec![T::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = T::one();
        }
        m
    }

    pub fn from_fn(rows: usize, cols: usize, f: impl Fn(usize, usize) -> T) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Mat { rows, cols, data }
    }

    pub fn from_rows(rows: &[Vec<T>]) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |v| v.len());
        assert!(rows.iter().all(|v| v.len() == c), "ragged rows");
        Mat { rows: r, cols: c, data: rows.iter().flat_map(|v| v.iter().cloned()).collect() }
    }

    /// Matrix whose columns are the given vectors.
    pub fn from_cols(cols: &[Vec<T>]) -> Self {
        Self::from_rows(cols).transpose()
    }

    pub fn diag(d: &[T]) -> Self {
        let mut m = Self::zeros(d.len(), d.len());
        for (i, x) in d.iter().enumerate() {
            m[(i, i)] = x.clone();
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn row(&self, i: usize) -> Vec<T> {
        self.data[i * self.cols..(i + 1) * self.cols].to_vec()
    }

    pub fn col(&self, j: usize) -> Vec<T> {
        (0..self.rows).map(|i| self[(i, j)].clone()).collect()
    }

    pub fn to_rows(&self) -> Vec<Vec<T>> {
        (0..self.rows).map(|i| self.row(i)).collect()
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |i, j| self[(j, i)].clone())
    }

    pub fn adjoint(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |i, j| self[(j, i)].conj())
    }

    pub fn map<U: Ring>(&self, f: impl Fn(&T) -> U) -> Mat<U> {
        Mat { rows: self.rows, cols: self.cols, data: self.data.iter().map(f).collect() }
    }

    pub fn scale(&self, s: &T) -> Self {
        self.map(|x| s.clone() * x.clone())
    }

    pub fn mul_vec(&self, v: &[T]) -> Vec<T> {
        assert_eq!(self.cols, v.len(), "dimension mismatch");
        (0..self.rows)
            .map(|i| {
                let mut acc = T::zero();
                for j in 0..self.cols {
                    let a = &self.data[i * self.cols + j];
                    if !a.is_zero() && !v[j].is_zero() {
                        acc = acc + a.clone() * v[j].clone();
                    }
                }
                acc
            })
            .collect()
    }

    pub fn add(&self, o: &Self) -> Self {
        assert_eq!((self.rows, self.cols), (o.rows, o.cols));
        Mat { rows: self.rows, cols: self.cols, data: self.data.iter().zip(&o.data).map(|(a, b)| a.clone() + b.clone()).collect() }
    }

    pub fn sub(&self, o: &Self) -> Self {
        assert_eq!((self.rows, self.cols), (o.rows, o.cols));
        Mat { rows: self.rows, cols: self.cols, data: self.data.iter().zip(&o.data).map(|(a, b)| a.clone() - b.clone()).collect() }
    }

    pub fn is_hermitian(&self) -> bool {
        self.rows == self.cols && *self == self.adjoint()
    }

    pub fn is_identity(&self) -> bool {
        *self == Self::identity(self.rows)
    }

    /// `self^* · g · self`: the Gram matrix of the columns of `self` under the form `g`.
    pub fn congruent(&self, g: &Self) -> Self {
        &(&self.adjoint() * g) * self
    }

    pub fn pow(&self, mut e: u32) -> Self {
        let mut base = self.clone();
        let mut acc = Self::identity(self.rows);
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            base = &base * &base;
            e >>= 1;
        }
        acc
    }
}

impl<T: Field> Mat<T> {
    /// Reduced row echelon form and pivot columns.
    pub fn rref(&self) -> (Self, Vec<usize>) {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..m.cols {
            if r == m.rows {
                break;
            }
            let Some(pr) = (r..m.rows).find(|&i| !m[(i, c)].is_zero()) else { continue };
            m.swap_rows(r, pr);
            let inv = m[(r, c)].inv().expect("nonzero pivot");
            for j in 0..m.cols {
                m[(r, j)] = m[(r, j)].clone() * inv.clone();
            }
            for i in 0..m.rows {
                if i != r && !m[(i, c)].is_zero() {
                    let f = m[(i, c)].clone();
                    for j in 0..m.cols {
                        let t = m[(r, j)].clone();
                        if !t.is_zero() {
                            m[(i, j)] = m[(i, j)].clone() - f.clone() * t;
                        }
                    }
                }
            }
            pivots.push(c);
            r += 1;
        }
        (m, pivots)
    }

    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    pub fn inverse(&self) -> Option<Self> {
        assert_eq!(self.rows, self.cols, "inverse of a non-square matrix");
        let n = self.rows;
        let aug = Self::from_fn(n, 2 * n, |i, j| if j < n { self[(i, j)].clone() } else if j - n == i { T::one() } else { T::zero() });
        let (r, piv) = aug.rref();
        if piv.len() < n || piv[n - 1] >= n {
            return None;
        }
        Some(Self::from_fn(n, n, |i, j| r[(i, j + n)].clone()))
    }

    pub fn det(&self) -> T {
        assert_eq!(self.rows, self.cols);
        let mut m = self.clone();
        let mut det = T::one();
        for c in 0..m.cols {
            let Some(pr) = (c..m.rows).find(|&i| !m[(i, c)].is_zero()) else { return T::zero() };
            if pr != c {
                m.swap_rows(c, pr);
                det = -det;
            }
            let piv = m[(c, c)].clone();
            det = det * piv.clone();
            let inv = piv.inv().expect("nonzero pivot");
            for i in c + 1..m.rows {
                if m[(i, c)].is_zero() {
                    continue;
                }
                let f = m[(i, c)].clone() * inv.clone();
                for j in c..m.cols {
                    let t = m[(c, j)].clone();
                    m[(i, j)] = m[(i, j)].clone() - f.clone() * t;
                }
            }
        }
        det
    }

    /// Basis of `{x : self·x = 0}`.
    pub fn nullspace(&self) -> Vec<Vec<T>> {
        let (r, piv) = self.rref();
        let free: Vec<usize> = (0..self.cols).filter(|c| !piv.contains(c)).collect();
        free.iter()
            .map(|&f| {
                let mut v = vec![T::zero(); self.cols];
                v[f] = T::one();
                for (i, &pc) in piv.iter().enumerate() {
                    v[pc] = -r[(i, f)].clone();
                }
                v
            })
            .collect()
    }

    /// Solves `self·x = b`; `None` when inconsistent.
    pub fn solve(&self, b: &[T]) -> Option<Vec<T>> {
        let aug = Self::from_fn(self.rows, self.cols + 1, |i, j| if j < self.cols { self[(i, j)].clone() } else { b[i].clone() });
        let (r, piv) = aug.rref();
        if piv.last() == Some(&self.cols) {
            return None;
        }
        let mut x = vec![T::zero(); self.cols];
        for (i, &pc) in piv.iter().enumerate() {
            x[pc] = r[(i, self.cols)].clone();
        }
        Some(x)
    }
}

impl<T> Mat<T> {
    pub fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }
}

impl<T> Index<(usize, usize)> for Mat<T> {
    type Output = T;
    fn index(&self, (i, j): (usize, usize)) -> &T {
        &self.data[i * self.cols + j]
    }
}

impl<T> IndexMut<(usize, usize)> for Mat<T> {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut T {
        &mut self.data[i * self.cols + j]
    }
}

impl<T: Ring> Mul for &Mat<T> {
    type Output = Mat<T>;
    fn mul(self, o: &Mat<T>) -> Mat<T> {
        assert_eq!(self.cols, o.rows, "dimension mismatch");
        let mut out: Mat<T> = Mat::zeros(self.rows, o.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..o.cols {
                    let b = &o[(k, j)];
                    if !b.is_zero() {
                        out[(i, j)] = out[(i, j)].clone() + a.clone() * b.clone();
                    }
                }
            }
        }
        out
    }
}

impl<T: Ring> Mul for Mat<T> {
    type Output = Mat<T>;
    fn mul(self, o: Mat<T>) -> Mat<T> {
        &self * &o
    }
}

impl<T: Ring + fmt::Display> fmt::Display for Mat<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.rows {
            let row: Vec<String> = (0..self.cols).map(|j| self[(i, j)].to_string()).collect();
            writeln!(f, "[{}]", row.join(", "))?;
        }
        Ok(())
    }
}

/// Hermitian form `Σ conj(u_i) g_ij v_j`, conjugate-linear in `u`.
pub fn herm<T: Ring>(g: &Mat<T>, u: &[T], v: &[T]) -> T {
    let gv = g.mul_vec(v);
    u.iter().zip(gv).fold(T::zero(), |acc, (a, b)| acc + a.conj() * b)
}

/// `(positive, negative, zero)` counts of a Hermitian form, via congruence diagonalisation.
pub fn inertia<T: Field>(g: &Mat<T>, sign: impl Fn(&T) -> std::cmp::Ordering) -> (usize, usize, usize) {
    assert!(g.is_hermitian(), "inertia of a non-Hermitian matrix");
    let mut m = g.clone();
    let n = m.rows();
    let (mut pos, mut neg, mut zero) = (0, 0, 0);
    let mut k = 0;
    while k < n {
        if m[(k, k)].is_zero() {
            // bring a nonzero diagonal into place, or manufacture one
            if let Some(j) = (k + 1..n).find(|&j| !m[(j, j)].is_zero()) {
                swap_sym(&mut m, k, j);
            } else if let Some(j) = (k + 1..n).find(|&j| !m[(k, j)].is_zero()) {
                // e_k <- e_k + t e_j with t = conj(g_kj) gives diagonal 2|g_kj|²
                let t = m[(k, j)].conj();
                add_sym(&mut m, k, j, &t);
            } else {
                zero += 1;
                k += 1;
                continue;
            }
        }
        let d = m[(k, k)].clone();
        match sign(&d) {
            std::cmp::Ordering::Greater => pos += 1,
            std::cmp::Ordering::Less => neg += 1,
            std::cmp::Ordering::Equal => unreachable!("pivot is nonzero"),
        }
        let dinv = d.inv().expect("nonzero pivot");
        for i in k + 1..n {
            if m[(i, k)].is_zero() {
                continue;
            }
            // <e_i + t e_k, e_k> = g_ik + conj(t) d vanishes for t = -g_ki / d
            let f = m[(k, i)].clone() * dinv.clone();
            let t = -f;
            add_sym(&mut m, i, k, &t);
        }
        k += 1;
    }
    (pos, neg, zero)
}

fn swap_sym<T: Ring>(m: &mut Mat<T>, a: usize, b: usize) {
    m.swap_rows(a, b);
    for i in 0..m.rows() {
        let t = m[(i, a)].clone();
        m[(i, a)] = m[(i, b)].clone();
        m[(i, b)] = t;
    }
}

/// Basis change `e_a <- e_a + t e_b` applied to a Hermitian Gram matrix.
fn add_sym<T: Ring>(m: &mut Mat<T>, a: usize, b: usize, t: &T) {
    let n = m.rows();
    // rows: new row a = row a + conj(t) row b
    for j in 0..n {
        let v = m[(a, j)].clone() + t.conj() * m[(b, j)].clone();
        m[(a, j)] = v;
    }
    // columns: new col a = col a + t col b
    for i in 0..n {
        let v = m[(i, a)].clone() + m[(i, b)].clone() * t.clone();
        m[(i, a)] = v;
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{Gauss, GaussQ};
    use num_rational::Ratio;
    use num_traits::Zero;
    use std::cmp::Ordering;

    type Q = GaussQ<i64>;

    fn q(a: i64, b: i64) -> Q {
        Q::from_ints(a, b)
    }

    fn real_sign(x: &Q) -> Ordering {
        x.re().cmp(&Ratio::from_integer(0))
    }

    #[test]
    fn inverse_and_det() {
        let m = Mat::from_rows(&[vec![q(2, 0), q(1, -1)], vec![q(1, 1), q(2, 0)]]);
        assert_eq!(m.det(), q(2, 0));
        let inv = m.inverse().unwrap();
        assert!((&m * &inv).is_identity());
        let sing = Mat::from_rows(&[vec![q(1, 0), q(0, 1)], vec![q(0, 1), q(-1, 0)]]);
        assert!(sing.inverse().is_none());
        assert_eq!(sing.rank(), 1);
        assert_eq!(sing.nullspace().len(), 1);
    }

    #[test]
    fn solve_consistent_and_not() {
        let m = Mat::from_rows(&[vec![q(1, 0), q(1, 0)], vec![q(0, 0), q(0, 0)]]);
        assert!(m.solve(&[q(1, 0), q(1, 0)]).is_none());
        let x = m.solve(&[q(3, 1), q(0, 0)]).unwrap();
        assert_eq!(m.mul_vec(&x), vec![q(3, 1), q(0, 0)]);
    }

    #[test]
    fn inertia_of_hyperbolic_cell() {
        let p = Q::from_gauss(Gauss::p());
        let g = Mat::from_rows(&[vec![Q::zero(), p.conj()], vec![p, Q::zero()]]);
        assert_eq!(inertia(&g, real_sign), (1, 1, 0));
        let d4 = Mat::from_rows(&[vec![q(2, 0), q(1, -1)], vec![q(1, 1), q(2, 0)]]);
        assert_eq!(inertia(&d4, real_sign), (2, 0, 0));
    }
}
