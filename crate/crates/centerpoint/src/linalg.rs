//! Exact dense linear algebra over an abstract field.
//!
//! One Gaussian-elimination core serves both the fast `u64` prime-field path
//! of the point solver and the big-rational / cyclotomic path of everything
//! downstream.  All results are canonical: reduced echelon forms have unit
//! pivots and zeroed pivot columns, so bases are reproducible across runs.

use crate::scalar::{FieldContext, Scalar};
use crate::modp;

pub trait Field {
    type Elem: Clone + PartialEq + std::fmt::Debug;
    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn neg(&self, a: &Self::Elem) -> Self::Elem;
    /// `None` for zero.
    fn inv(&self, a: &Self::Elem) -> Option<Self::Elem>;
    fn is_zero(&self, a: &Self::Elem) -> bool;
}

/// Scalars over a fixed [`FieldContext`].
#[derive(Clone, Debug)]
pub struct ScalarField(pub FieldContext);

impl Field for ScalarField {
    type Elem = Scalar;
    fn zero(&self) -> Scalar {
        self.0.zero()
    }
    fn one(&self) -> Scalar {
        self.0.one()
    }
    fn add(&self, a: &Scalar, b: &Scalar) -> Scalar {
        a.add(b)
    }
    fn sub(&self, a: &Scalar, b: &Scalar) -> Scalar {
        a.sub(b)
    }
    fn mul(&self, a: &Scalar, b: &Scalar) -> Scalar {
        a.mul(b)
    }
    fn neg(&self, a: &Scalar) -> Scalar {
        a.neg()
    }
    fn inv(&self, a: &Scalar) -> Option<Scalar> {
        a.inv().ok()
    }
    fn is_zero(&self, a: &Scalar) -> bool {
        a.is_zero()
    }
}

/// Machine-word arithmetic modulo a prime.
#[derive(Clone, Copy, Debug)]
pub struct FpField(pub u64);

impl Field for FpField {
    type Elem = u64;
    fn zero(&self) -> u64 {
        0
    }
    fn one(&self) -> u64 {
        1
    }
    fn add(&self, a: &u64, b: &u64) -> u64 {
        modp::addmod(*a, *b, self.0)
    }
    fn sub(&self, a: &u64, b: &u64) -> u64 {
        modp::submod(*a, *b, self.0)
    }
    fn mul(&self, a: &u64, b: &u64) -> u64 {
        modp::mulmod(*a, *b, self.0)
    }
    fn neg(&self, a: &u64) -> u64 {
        modp::negmod(*a, self.0)
    }
    fn inv(&self, a: &u64) -> Option<u64> {
        if *a == 0 {
            None
        } else {
            Some(modp::invmod(*a, self.0))
        }
    }
    fn is_zero(&self, a: &u64) -> bool {
        *a == 0
    }
}

/// Dense row-major matrix.
#[derive(Clone, Debug, PartialEq)]
pub struct Mat<T> {
    pub rows: usize,
    pub cols: usize,
    data: Vec<T>,
}

impl<T: Clone + PartialEq + std::fmt::Debug> Mat<T> {
    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> T) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Mat { rows, cols, data }
    }

    pub fn from_rows(rows: Vec<Vec<T>>) -> Self {
        let r = rows.len();
        let c = rows.first().map(Vec::len).unwrap_or(0);
        assert!(rows.iter().all(|row| row.len() == c));
        Mat { rows: r, cols: c, data: rows.into_iter().flatten().collect() }
    }

    pub fn filled(rows: usize, cols: usize, value: T) -> Self {
        Mat { rows, cols, data: vec![value; rows * cols] }
    }

    #[inline]
    pub fn at(&self, i: usize, j: usize) -> &T {
        &self.data[i * self.cols + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: T) {
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[T] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn rows_vec(&self) -> Vec<Vec<T>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn transpose(&self) -> Self {
        Mat::from_fn(self.cols, self.rows, |i, j| self.at(j, i).clone())
    }
}

pub fn identity<F: Field>(f: &F, n: usize) -> Mat<F::Elem> {
    Mat::from_fn(n, n, |i, j| if i == j { f.one() } else { f.zero() })
}

pub fn mat_mul<F: Field>(f: &F, a: &Mat<F::Elem>, b: &Mat<F::Elem>) -> Mat<F::Elem> {
    assert_eq!(a.cols, b.rows);
    Mat::from_fn(a.rows, b.cols, |i, j| {
        let mut acc = f.zero();
        for k in 0..a.cols {
            if !f.is_zero(a.at(i, k)) {
                acc = f.add(&acc, &f.mul(a.at(i, k), b.at(k, j)));
            }
        }
        acc
    })
}

pub fn mat_vec<F: Field>(f: &F, a: &Mat<F::Elem>, v: &[F::Elem]) -> Vec<F::Elem> {
    assert_eq!(a.cols, v.len());
    (0..a.rows)
        .map(|i| {
            let mut acc = f.zero();
            for k in 0..a.cols {
                if !f.is_zero(a.at(i, k)) {
                    acc = f.add(&acc, &f.mul(a.at(i, k), &v[k]));
                }
            }
            acc
        })
        .collect()
}

pub fn mat_add<F: Field>(f: &F, a: &Mat<F::Elem>, b: &Mat<F::Elem>) -> Mat<F::Elem> {
    assert_eq!((a.rows, a.cols), (b.rows, b.cols));
    Mat::from_fn(a.rows, a.cols, |i, j| f.add(a.at(i, j), b.at(i, j)))
}

pub fn mat_scale<F: Field>(f: &F, a: &Mat<F::Elem>, s: &F::Elem) -> Mat<F::Elem> {
    Mat::from_fn(a.rows, a.cols, |i, j| f.mul(a.at(i, j), s))
}

pub fn is_identity<F: Field>(f: &F, a: &Mat<F::Elem>) -> bool {
    if a.rows != a.cols {
        return false;
    }
    for i in 0..a.rows {
        for j in 0..a.cols {
            let want = if i == j { f.one() } else { f.zero() };
            if *a.at(i, j) != want {
                return false;
            }
        }
    }
    true
}

pub fn is_zero_mat<F: Field>(f: &F, a: &Mat<F::Elem>) -> bool {
    (0..a.rows).all(|i| a.row(i).iter().all(|x| f.is_zero(x)))
}

/// In-place reduction to reduced row echelon form; returns pivot columns.
pub fn rref<F: Field>(f: &F, m: &mut Mat<F::Elem>) -> Vec<usize> {
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..m.cols {
        if r == m.rows {
            break;
        }
        let Some(pr) = (r..m.rows).find(|&i| !f.is_zero(m.at(i, c))) else {
            continue;
        };
        if pr != r {
            for j in 0..m.cols {
                let a = m.at(pr, j).clone();
                let b = m.at(r, j).clone();
                m.set(pr, j, b);
                m.set(r, j, a);
            }
        }
        let inv = f.inv(m.at(r, c)).expect("pivot is nonzero");
        for j in c..m.cols {
            let v = f.mul(m.at(r, j), &inv);
            m.set(r, j, v);
        }
        for i in 0..m.rows {
            if i != r && !f.is_zero(m.at(i, c)) {
                let factor = m.at(i, c).clone();
                for j in c..m.cols {
                    let v = f.sub(m.at(i, j), &f.mul(&factor, m.at(r, j)));
                    m.set(i, j, v);
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}

pub fn rank<F: Field>(f: &F, m: &Mat<F::Elem>) -> usize {
    let mut copy = m.clone();
    rref(f, &mut copy).len()
}

/// Canonical basis (reduced echelon rows) of the row space.
pub fn row_space_basis<F: Field>(f: &F, rows: &[Vec<F::Elem>]) -> Vec<Vec<F::Elem>> {
    if rows.is_empty() {
        return Vec::new();
    }
    let mut m = Mat::from_rows(rows.to_vec());
    let pivots = rref(f, &mut m);
    (0..pivots.len()).map(|i| m.row(i).to_vec()).collect()
}

/// Canonical basis of the column space (echelon basis of the transpose rows).
pub fn column_space_basis<F: Field>(f: &F, m: &Mat<F::Elem>) -> Vec<Vec<F::Elem>> {
    row_space_basis(f, &m.transpose().rows_vec())
}

pub fn invert<F: Field>(f: &F, m: &Mat<F::Elem>) -> Option<Mat<F::Elem>> {
    assert_eq!(m.rows, m.cols);
    let n = m.rows;
    let mut aug = Mat::from_fn(n, 2 * n, |i, j| {
        if j < n {
            m.at(i, j).clone()
        } else if j - n == i {
            f.one()
        } else {
            f.zero()
        }
    });
    let pivots = rref(f, &mut aug);
    if pivots.len() < n || pivots[n - 1] >= n {
        return None;
    }
    Some(Mat::from_fn(n, n, |i, j| aug.at(i, n + j).clone()))
}

/// Canonical basis of the right kernel `{x : m x = 0}`.
pub fn kernel_basis<F: Field>(f: &F, m: &Mat<F::Elem>) -> Vec<Vec<F::Elem>> {
    let mut red = m.clone();
    let pivots = rref(f, &mut red);
    let pivot_of_col: Vec<Option<usize>> = {
        let mut v = vec![None; m.cols];
        for (r, &c) in pivots.iter().enumerate() {
            v[c] = Some(r);
        }
        v
    };
    let mut basis = Vec::new();
    for free in 0..m.cols {
        if pivot_of_col[free].is_some() {
            continue;
        }
        let mut x = vec![f.zero(); m.cols];
        x[free] = f.one();
        for (r, &c) in pivots.iter().enumerate() {
            // x_c = -red[r][free]
            x[c] = f.neg(red.at(r, free));
        }
        basis.push(x);
    }
    basis
}

/// One solution of `m x = rhs`, or `None` when inconsistent.
pub fn solve<F: Field>(f: &F, m: &Mat<F::Elem>, rhs: &[F::Elem]) -> Option<Vec<F::Elem>> {
    assert_eq!(m.rows, rhs.len());
    let mut aug = Mat::from_fn(m.rows, m.cols + 1, |i, j| {
        if j < m.cols {
            m.at(i, j).clone()
        } else {
            rhs[i].clone()
        }
    });
    let pivots = rref(f, &mut aug);
    if pivots.last().map(|&c| c == m.cols).unwrap_or(false) {
        return None; // pivot in the constant column
    }
    let mut x = vec![f.zero(); m.cols];
    for (r, &c) in pivots.iter().enumerate() {
        x[c] = aug.at(r, m.cols).clone();
    }
    Some(x)
}

/// Coordinates of `v` in the span of `basis` rows, or `None` if outside.
pub fn coordinates_in_basis<F: Field>(
    f: &F,
    basis: &[Vec<F::Elem>],
    v: &[F::Elem],
) -> Option<Vec<F::Elem>> {
    if basis.is_empty() {
        return if v.iter().all(|x| f.is_zero(x)) { Some(vec![]) } else { None };
    }
    let cols = basis.len();
    let m = Mat::from_fn(v.len(), cols, |i, j| basis[j][i].clone());
    solve(f, &m, v)
}

pub fn det<F: Field>(f: &F, m: &Mat<F::Elem>) -> F::Elem {
    assert_eq!(m.rows, m.cols);
    let n = m.rows;
    let mut a = m.clone();
    let mut det = f.one();
    for c in 0..n {
        let Some(pr) = (c..n).find(|&i| !f.is_zero(a.at(i, c))) else {
            return f.zero();
        };
        if pr != c {
            for j in 0..n {
                let x = a.at(pr, j).clone();
                let y = a.at(c, j).clone();
                a.set(pr, j, y);
                a.set(c, j, x);
            }
            det = f.neg(&det);
        }
        det = f.mul(&det, a.at(c, c));
        let inv = f.inv(a.at(c, c)).expect("pivot nonzero");
        for i in c + 1..n {
            if !f.is_zero(a.at(i, c)) {
                let factor = f.mul(a.at(i, c), &inv);
                for j in c..n {
                    let v = f.sub(a.at(i, j), &f.mul(&factor, a.at(c, j)));
                    a.set(i, j, v);
                }
            }
        }
    }
    det
}

pub fn trace<F: Field>(f: &F, m: &Mat<F::Elem>) -> F::Elem {
    assert_eq!(m.rows, m.cols);
    let mut acc = f.zero();
    for i in 0..m.rows {
        acc = f.add(&acc, m.at(i, i));
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::Rat;
    use num_bigint::BigInt;

    fn qmat(rows: &[&[i64]]) -> Mat<Scalar> {
        Mat::from_rows(
            rows.iter()
                .map(|r| {
                    r.iter()
                        .map(|&v| Scalar::Rational(Rat::from_integer(BigInt::from(v))))
                        .collect()
                })
                .collect(),
        )
    }

    #[test]
    fn inverse_over_rationals() {
        let f = ScalarField(FieldContext::Rational);
        let a = qmat(&[&[1, 3, 2], &[1, -3, 2], &[1, 0, -1]]);
        let inv = invert(&f, &a).unwrap();
        assert!(is_identity(&f, &mat_mul(&f, &a, &inv)));
    }

    #[test]
    fn singular_matrix_detected() {
        let f = ScalarField(FieldContext::Rational);
        let a = qmat(&[&[1, 2], &[2, 4]]);
        assert!(invert(&f, &a).is_none());
        assert_eq!(rank(&f, &a), 1);
    }

    #[test]
    fn kernel_matches_rank() {
        let f = FpField(101);
        let m = Mat::from_rows(vec![vec![1u64, 2, 3], vec![2, 4, 6], vec![0, 1, 1]]);
        let k = kernel_basis(&f, &m);
        assert_eq!(k.len(), 1);
        for x in &k {
            assert!(mat_vec(&f, &m, x).iter().all(|v| *v == 0));
        }
    }

    #[test]
    fn solve_and_coordinates() {
        let f = ScalarField(FieldContext::Rational);
        let basis = qmat(&[&[1, 0, 1], &[0, 1, 1]]).rows_vec();
        let v = qmat(&[&[2, 3, 5]]).rows_vec().remove(0);
        let coords = coordinates_in_basis(&f, &basis, &v).unwrap();
        assert_eq!(coords, qmat(&[&[2, 3]]).rows_vec().remove(0));
        let outside = qmat(&[&[1, 0, 0]]).rows_vec().remove(0);
        assert!(coordinates_in_basis(&f, &basis, &outside).is_none());
    }

    #[test]
    fn determinant_sign_and_value() {
        let f = ScalarField(FieldContext::Rational);
        let a = qmat(&[&[0, 1], &[1, 0]]);
        assert_eq!(
            det(&f, &a),
            Scalar::Rational(Rat::from_integer(BigInt::from(-1)))
        );
        let b = qmat(&[&[2, 0, 0], &[0, 3, 0], &[0, 0, 5]]);
        assert_eq!(
            det(&f, &b),
            Scalar::Rational(Rat::from_integer(BigInt::from(30)))
        );
    }
}
