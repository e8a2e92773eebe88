//! Exact linear algebra over Q and Q(q): dense matrices and an incremental
//! sparse echelon form.

use std::collections::BTreeMap;
use std::fmt::Debug;

use num::{One, Zero};

use crate::scalars::{Rat, RationalFunction};

pub trait Field: Clone + PartialEq + Debug {
    fn zero() -> Self;
    fn one() -> Self;
    fn is_zero(&self) -> bool;
    fn add(&self, o: &Self) -> Self;
    fn sub(&self, o: &Self) -> Self;
    fn mul(&self, o: &Self) -> Self;
    /// Panics when `o` is zero.
    fn div(&self, o: &Self) -> Self;
    fn neg(&self) -> Self;
}

impl Field for Rat {
    fn zero() -> Self {
        Zero::zero()
    }
    fn one() -> Self {
        One::one()
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn add(&self, o: &Self) -> Self {
        self + o
    }
    fn sub(&self, o: &Self) -> Self {
        self - o
    }
    fn mul(&self, o: &Self) -> Self {
        self * o
    }
    fn div(&self, o: &Self) -> Self {
        self / o
    }
    fn neg(&self) -> Self {
        -self
    }
}

impl Field for RationalFunction {
    fn zero() -> Self {
        RationalFunction::zero()
    }
    fn one() -> Self {
        RationalFunction::one()
    }
    fn is_zero(&self) -> bool {
        RationalFunction::is_zero(self)
    }
    fn add(&self, o: &Self) -> Self {
        self + o
    }
    fn sub(&self, o: &Self) -> Self {
        self - o
    }
    fn mul(&self, o: &Self) -> Self {
        self * o
    }
    fn div(&self, o: &Self) -> Self {
        self / o
    }
    fn neg(&self) -> Self {
        -self
    }
}

#[derive(Clone, PartialEq, Debug)]
pub struct Matrix<F> {
    rows: usize,
    cols: usize,
    data: Vec<F>,
}

/// Serialized row-major as a list of rows.
impl<F: Field + serde::Serialize> serde::Serialize for Matrix<F> {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.to_rows().serialize(s)
    }
}

impl<'de, F: Field + serde::Deserialize<'de>> serde::Deserialize<'de> for Matrix<F> {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let rows = Vec::<Vec<F>>::deserialize(d)?;
        if rows.windows(2).any(|w| w[0].len() != w[1].len()) {
            return Err(serde::de::Error::custom("ragged matrix"));
        }
        Ok(Matrix::from_rows(rows))
    }
}

impl<F: Field> Matrix<F> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix {
            rows,
            cols,
            data: vec![F::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, F::one());
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<F>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |x| x.len());
        let mut data = Vec::with_capacity(r * c);
        for row in rows {
            assert_eq!(row.len(), c, "ragged matrix");
            data.extend(row);
        }
        Matrix { rows: r, cols: c, data }
    }

    pub fn from_cols(cols: Vec<Vec<F>>) -> Self {
        Self::from_rows(cols).transpose()
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> &F {
        &self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: F) {
        self.data[r * self.cols + c] = v;
    }

    pub fn row(&self, r: usize) -> Vec<F> {
        self.data[r * self.cols..(r + 1) * self.cols].to_vec()
    }

    pub fn col(&self, c: usize) -> Vec<F> {
        (0..self.rows).map(|r| self.get(r, c).clone()).collect()
    }

    pub fn to_rows(&self) -> Vec<Vec<F>> {
        (0..self.rows).map(|r| self.row(r)).collect()
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                t.set(c, r, self.get(r, c).clone());
            }
        }
        t
    }

    pub fn mul(&self, o: &Self) -> Self {
        assert_eq!(self.cols, o.rows, "dimension mismatch");
        let mut out = Self::zeros(self.rows, o.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..o.cols {
                    let b = o.get(k, j);
                    if b.is_zero() {
                        continue;
                    }
                    let v = out.get(i, j).add(&a.mul(b));
                    out.set(i, j, v);
                }
            }
        }
        out
    }

    pub fn apply(&self, v: &[F]) -> Vec<F> {
        assert_eq!(v.len(), self.cols);
        (0..self.rows)
            .map(|r| {
                let mut s = F::zero();
                for (c, x) in v.iter().enumerate() {
                    if !x.is_zero() {
                        s = s.add(&self.get(r, c).mul(x));
                    }
                }
                s
            })
            .collect()
    }

    pub fn add(&self, o: &Self) -> Self {
        assert_eq!((self.rows, self.cols), (o.rows, o.cols));
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&o.data).map(|(a, b)| a.add(b)).collect(),
        }
    }

    pub fn sub(&self, o: &Self) -> Self {
        assert_eq!((self.rows, self.cols), (o.rows, o.cols));
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&o.data).map(|(a, b)| a.sub(b)).collect(),
        }
    }

    pub fn scale(&self, c: &F) -> Self {
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|a| a.mul(c)).collect(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|x| x.is_zero())
    }

    /// Reduced row echelon form and pivot columns. Pivot is the first nonzero
    /// entry in the column, scanning rows top to bottom.
    pub fn rref(&self) -> (Self, Vec<usize>) {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..m.cols {
            if r == m.rows {
                break;
            }
            let Some(p) = (r..m.rows).find(|&i| !m.get(i, c).is_zero()) else {
                continue;
            };
            if p != r {
                for j in 0..m.cols {
                    m.data.swap(p * m.cols + j, r * m.cols + j);
                }
            }
            let inv = F::one().div(m.get(r, c));
            for j in 0..m.cols {
                let v = m.get(r, j).mul(&inv);
                m.set(r, j, v);
            }
            for i in 0..m.rows {
                if i == r {
                    continue;
                }
                let f = m.get(i, c).clone();
                if f.is_zero() {
                    continue;
                }
                for j in 0..m.cols {
                    let v = m.get(i, j).sub(&f.mul(m.get(r, j)));
                    m.set(i, j, v);
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

    /// Basis of `{x : A x = 0}`, one vector per free column (free entry 1).
    pub fn nullspace(&self) -> Vec<Vec<F>> {
        let (m, pivots) = self.rref();
        let mut out = Vec::new();
        for f in 0..self.cols {
            if pivots.contains(&f) {
                continue;
            }
            let mut v = vec![F::zero(); self.cols];
            v[f] = F::one();
            for (r, &p) in pivots.iter().enumerate() {
                v[p] = m.get(r, f).neg();
            }
            out.push(v);
        }
        out
    }

    pub fn inverse(&self) -> Option<Self> {
        if self.rows != self.cols {
            return None;
        }
        let n = self.rows;
        let mut aug = Self::zeros(n, 2 * n);
        for r in 0..n {
            for c in 0..n {
                aug.set(r, c, self.get(r, c).clone());
            }
            aug.set(r, n + r, F::one());
        }
        let (m, piv) = aug.rref();
        if piv.len() < n || piv[n - 1] != n - 1 {
            return None;
        }
        let mut inv = Self::zeros(n, n);
        for r in 0..n {
            for c in 0..n {
                inv.set(r, c, m.get(r, n + c).clone());
            }
        }
        Some(inv)
    }

    /// Some solution of `A x = b`.
    pub fn solve(&self, b: &[F]) -> Option<Vec<F>> {
        assert_eq!(b.len(), self.rows);
        let mut aug = Self::zeros(self.rows, self.cols + 1);
        for r in 0..self.rows {
            for c in 0..self.cols {
                aug.set(r, c, self.get(r, c).clone());
            }
            aug.set(r, self.cols, b[r].clone());
        }
        let (m, piv) = aug.rref();
        if piv.last() == Some(&self.cols) {
            return None;
        }
        let mut x = vec![F::zero(); self.cols];
        for (r, &p) in piv.iter().enumerate() {
            x[p] = m.get(r, self.cols).clone();
        }
        Some(x)
    }
}

pub type SparseVec<F> = Vec<(usize, F)>;

fn axpy<F: Field>(y: &SparseVec<F>, a: &F, x: &SparseVec<F>) -> SparseVec<F> {
    // y + a x, both sorted by index
    let mut out = Vec::with_capacity(y.len() + x.len());
    let (mut i, mut j) = (0, 0);
    while i < y.len() || j < x.len() {
        if j == x.len() || (i < y.len() && y[i].0 < x[j].0) {
            out.push(y[i].clone());
            i += 1;
        } else if i == y.len() || x[j].0 < y[i].0 {
            out.push((x[j].0, a.mul(&x[j].1)));
            j += 1;
        } else {
            let v = y[i].1.add(&a.mul(&x[j].1));
            if !v.is_zero() {
                out.push((y[i].0, v));
            }
            i += 1;
            j += 1;
        }
    }
    out
}

fn lookup<F: Field>(v: &SparseVec<F>, c: usize) -> Option<&F> {
    v.binary_search_by_key(&c, |e| e.0).ok().map(|k| &v[k].1)
}

/// Incrementally maintained reduced row echelon form of a set of sparse vectors.
#[derive(Clone, Debug)]
pub struct SparseEchelon<F> {
    rows: BTreeMap<usize, SparseVec<F>>,
}

impl<F: Field> Default for SparseEchelon<F> {
    fn default() -> Self {
        Self::new()
    }
}

impl<F: Field> SparseEchelon<F> {
    pub fn new() -> Self {
        SparseEchelon { rows: BTreeMap::new() }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn pivots(&self) -> impl Iterator<Item = usize> + '_ {
        self.rows.keys().copied()
    }

    /// Residue of `v` modulo the current span (zero iff `v` lies in it).
    pub fn reduce(&self, v: &SparseVec<F>) -> SparseVec<F> {
        let mut v: SparseVec<F> = v.iter().filter(|e| !e.1.is_zero()).cloned().collect();
        v.sort_by_key(|e| e.0);
        let mut k = 0;
        while k < v.len() {
            let c = v[k].0;
            if let Some(row) = self.rows.get(&c) {
                let a = v[k].1.neg();
                v = axpy(&v, &a, row);
            } else {
                k += 1;
            }
        }
        v
    }

    /// Insert a vector; returns its new pivot column if it was independent.
    pub fn insert(&mut self, v: &SparseVec<F>) -> Option<usize> {
        let r = self.reduce(v);
        let (p, lead) = r.first().cloned()?;
        let inv = F::one().div(&lead);
        let r: SparseVec<F> = r.into_iter().map(|(c, x)| (c, x.mul(&inv))).collect();
        for row in self.rows.values_mut() {
            if let Some(a) = lookup(row, p) {
                let a = a.neg();
                *row = axpy(row, &a, &r);
            }
        }
        self.rows.insert(p, r);
        Some(p)
    }

    /// Null space basis of the span viewed as equations in `n` unknowns.
    pub fn nullspace(&self, n: usize) -> Vec<SparseVec<F>> {
        let mut out = Vec::new();
        for f in 0..n {
            if self.rows.contains_key(&f) {
                continue;
            }
            let mut v = vec![(f, F::one())];
            for (&p, row) in &self.rows {
                if let Some(a) = lookup(row, f) {
                    v.push((p, a.neg()));
                }
            }
            v.sort_by_key(|e| e.0);
            out.push(v);
        }
        out
    }

    /// For the augmented system whose last unknown (index `n`) is the right
    /// hand side, a solution with free unknowns set to zero.
    pub fn solve_augmented(&self, n: usize) -> Option<Vec<F>> {
        if self.rows.contains_key(&n) {
            return None;
        }
        let mut x = vec![F::zero(); n];
        for (&p, row) in &self.rows {
            if let Some(b) = lookup(row, n) {
                x[p] = b.neg();
            }
        }
        Some(x)
    }
}

pub fn dense_to_sparse<F: Field>(v: &[F]) -> SparseVec<F> {
    v.iter()
        .enumerate()
        .filter(|(_, x)| !x.is_zero())
        .map(|(i, x)| (i, x.clone()))
        .collect()
}

pub fn sparse_to_dense<F: Field>(v: &SparseVec<F>, n: usize) -> Vec<F> {
    let mut out = vec![F::zero(); n];
    for (i, x) in v {
        out[*i] = x.clone();
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalars::rat;

    fn m(rows: &[&[i64]]) -> Matrix<Rat> {
        Matrix::from_rows(rows.iter().map(|r| r.iter().map(|&x| rat(x)).collect()).collect())
    }

    #[test]
    fn rank_and_nullspace() {
        let a = m(&[&[1, 2, 3], &[2, 4, 6], &[1, 0, 1]]);
        assert_eq!(a.rank(), 2);
        let ns = a.nullspace();
        assert_eq!(ns.len(), 1);
        assert!(a.apply(&ns[0]).iter().all(Field::is_zero));
    }

    #[test]
    fn inverse_roundtrip() {
        let a = m(&[&[2, 1], &[1, 1]]);
        let inv = a.inverse().unwrap();
        assert_eq!(a.mul(&inv), Matrix::identity(2));
        assert!(m(&[&[1, 2], &[2, 4]]).inverse().is_none());
    }

    #[test]
    fn sparse_matches_dense() {
        let a = m(&[&[0, 1, 1, 0], &[1, 1, 0, 0], &[1, 0, -1, 0], &[0, 0, 0, 3]]);
        let mut e = SparseEchelon::new();
        for r in a.to_rows() {
            e.insert(&dense_to_sparse(&r));
        }
        assert_eq!(e.rank(), a.rank());
        let ns = e.nullspace(4);
        assert_eq!(ns.len(), a.nullspace().len());
        for v in ns {
            assert!(a.apply(&sparse_to_dense(&v, 4)).iter().all(Field::is_zero));
        }
    }

    #[test]
    fn solve_consistent_and_not() {
        let a = m(&[&[1, 1], &[1, -1]]);
        let x = a.solve(&[rat(3), rat(1)]).unwrap();
        assert_eq!(x, vec![rat(2), rat(1)]);
        let b = m(&[&[1, 1], &[2, 2]]);
        assert!(b.solve(&[rat(1), rat(3)]).is_none());
    }
}
