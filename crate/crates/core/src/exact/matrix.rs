//! Small dense matrices over a prime field.

use std::fmt;

use super::field::PrimeField;

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct MatrixFq {
    field: PrimeField,
    rows: usize,
    cols: usize,
    data: Vec<u32>,
}

impl fmt::Debug for MatrixFq {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "MatrixFq over F_{} ({}x{})", self.field.p(), self.rows, self.cols)?;
        for r in 0..self.rows {
            writeln!(f, "  {:?}", self.row(r))?;
        }
        Ok(())
    }
}

impl MatrixFq {
    pub fn zeros(field: PrimeField, rows: usize, cols: usize) -> Self {
        Self { field, rows, cols, data: vec![0; rows * cols] }
    }

    pub fn identity(field: PrimeField, n: usize) -> Self {
        let mut m = Self::zeros(field, n, n);
        for i in 0..n {
            m.set(i, i, 1);
        }
        m
    }

    /// Builds from signed integer rows, reducing mod p.
    pub fn from_rows(field: PrimeField, rows: &[Vec<i64>]) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        let mut m = Self::zeros(field, r, c);
        for (i, row) in rows.iter().enumerate() {
            assert_eq!(row.len(), c, "ragged rows");
            for (j, &x) in row.iter().enumerate() {
                m.set(i, j, field.reduce(x));
            }
        }
        m
    }

    pub fn from_columns(field: PrimeField, n_rows: usize, cols: &[Vec<u32>]) -> Self {
        let mut m = Self::zeros(field, n_rows, cols.len());
        for (j, col) in cols.iter().enumerate() {
            for (i, &x) in col.iter().enumerate().take(n_rows) {
                m.set(i, j, x % field.p());
            }
        }
        m
    }

    #[inline]
    pub fn field(&self) -> PrimeField {
        self.field
    }
    #[inline]
    pub fn rows(&self) -> usize {
        self.rows
    }
    #[inline]
    pub fn cols(&self) -> usize {
        self.cols
    }
    #[inline]
    pub fn get(&self, r: usize, c: usize) -> u32 {
        self.data[r * self.cols + c]
    }
    #[inline]
    pub fn set(&mut self, r: usize, c: usize, v: u32) {
        self.data[r * self.cols + c] = v;
    }

    pub fn row(&self, r: usize) -> &[u32] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn column(&self, c: usize) -> Vec<u32> {
        (0..self.rows).map(|r| self.get(r, c)).collect()
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.field, self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                t.set(c, r, self.get(r, c));
            }
        }
        t
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.cols, other.rows, "dimension mismatch");
        assert_eq!(self.field, other.field, "field mismatch");
        let p = self.field.p() as u64;
        let mut out = Self::zeros(self.field, self.rows, other.cols);
        for i in 0..self.rows {
            for j in 0..other.cols {
                let mut acc = 0u64;
                for k in 0..self.cols {
                    acc += self.get(i, k) as u64 * other.get(k, j) as u64;
                }
                out.set(i, j, (acc % p) as u32);
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[u32]) -> Vec<u32> {
        assert_eq!(self.cols, v.len());
        let p = self.field.p() as u64;
        (0..self.rows)
            .map(|i| {
                let acc: u64 = (0..self.cols).map(|k| self.get(i, k) as u64 * v[k] as u64).sum();
                (acc % p) as u32
            })
            .collect()
    }

    pub fn sub(&self, other: &Self) -> Self {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let f = self.field;
        let data = self.data.iter().zip(&other.data).map(|(&a, &b)| f.sub(a, b)).collect();
        Self { field: f, rows: self.rows, cols: self.cols, data }
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let f = self.field;
        let data = self.data.iter().zip(&other.data).map(|(&a, &b)| f.add(a, b)).collect();
        Self { field: f, rows: self.rows, cols: self.cols, data }
    }

    pub fn scale(&self, s: u32) -> Self {
        let f = self.field;
        let data = self.data.iter().map(|&a| f.mul(a, s % f.p())).collect();
        Self { field: f, rows: self.rows, cols: self.cols, data }
    }

    pub fn pow(&self, mut e: u32) -> Self {
        assert_eq!(self.rows, self.cols);
        let mut base = self.clone();
        let mut acc = Self::identity(self.field, self.rows);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            base = base.mul(&base);
            e >>= 1;
        }
        acc
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&x| x == 0)
    }

    /// Row-reduces a copy to reduced row-echelon form; returns it and the pivot columns.
    pub fn rref(&self) -> (Self, Vec<usize>) {
        let f = self.field;
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..m.cols {
            if r == m.rows {
                break;
            }
            let Some(pr) = (r..m.rows).find(|&i| m.get(i, c) != 0) else {
                continue;
            };
            m.swap_rows(r, pr);
            let inv = f.inv(m.get(r, c)).expect("nonzero pivot");
            for j in 0..m.cols {
                let v = f.mul(m.get(r, j), inv);
                m.set(r, j, v);
            }
            for i in 0..m.rows {
                let factor = m.get(i, c);
                if i != r && factor != 0 {
                    for j in 0..m.cols {
                        let v = f.sub(m.get(i, j), f.mul(factor, m.get(r, j)));
                        m.set(i, j, v);
                    }
                }
            }
            pivots.push(c);
            r += 1;
        }
        (m, pivots)
    }

    pub fn swap_rows(&mut self, a: usize, b: usize) {
        if a != b {
            for j in 0..self.cols {
                self.data.swap(a * self.cols + j, b * self.cols + j);
            }
        }
    }

    /// Inverse of a square matrix, `None` if singular.
    pub fn inverse(&self) -> Option<Self> {
        assert_eq!(self.rows, self.cols);
        let n = self.rows;
        let mut aug = Self::zeros(self.field, n, 2 * n);
        for i in 0..n {
            for j in 0..n {
                aug.set(i, j, self.get(i, j));
            }
            aug.set(i, n + i, 1);
        }
        let (red, piv) = aug.rref();
        if piv.len() < n || piv[n - 1] != n - 1 {
            return None;
        }
        let mut inv = Self::zeros(self.field, n, n);
        for i in 0..n {
            for j in 0..n {
                inv.set(i, j, red.get(i, n + j));
            }
        }
        Some(inv)
    }

    /// Basis of the right kernel `{x : M x = 0}`.
    pub fn kernel(&self) -> Vec<Vec<u32>> {
        let f = self.field;
        let (red, piv) = self.rref();
        let free: Vec<usize> = (0..self.cols).filter(|c| !piv.contains(c)).collect();
        free.iter()
            .map(|&fc| {
                let mut x = vec![0u32; self.cols];
                x[fc] = 1;
                for (r, &pc) in piv.iter().enumerate() {
                    x[pc] = f.neg(red.get(r, fc));
                }
                x
            })
            .collect()
    }
}

/// Row rank by Gaussian elimination.
pub fn mat_rank(m: &MatrixFq) -> usize {
    m.rref().1.len()
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn f(p: u64) -> PrimeField {
        PrimeField::new(p).unwrap()
    }

    #[test]
    fn rank_examples() {
        assert_eq!(mat_rank(&MatrixFq::identity(f(5), 3)), 3);
        assert_eq!(mat_rank(&MatrixFq::zeros(f(3), 2, 4)), 0);
        assert_eq!(mat_rank(&MatrixFq::from_rows(f(3), &[vec![1, 1], vec![2, 2]])), 1);
    }

    #[test]
    fn inverse_and_kernel() {
        let fl = f(7);
        let m = MatrixFq::from_rows(fl, &[vec![1, 2, 0], vec![0, 1, 3], vec![4, 0, 1]]);
        let inv = m.inverse().unwrap();
        assert_eq!(m.mul(&inv), MatrixFq::identity(fl, 3));
        let s = MatrixFq::from_rows(fl, &[vec![1, 2, 3], vec![2, 4, 6]]);
        let ker = s.kernel();
        assert_eq!(ker.len(), 2);
        for x in ker {
            assert!(s.mul_vec(&x).iter().all(|&v| v == 0));
        }
        assert!(MatrixFq::from_rows(fl, &[vec![1, 2], vec![2, 4]]).inverse().is_none());
    }

    fn arb_matrix(p: u64, r: usize, c: usize) -> impl Strategy<Value = MatrixFq> {
        proptest::collection::vec(0..p as i64, r * c).prop_map(move |v| {
            let rows: Vec<Vec<i64>> = v.chunks(c).map(|ch| ch.to_vec()).collect();
            MatrixFq::from_rows(PrimeField::new(p).unwrap(), &rows)
        })
    }

    proptest! {
        #[test]
        fn rank_of_product_is_bounded(a in arb_matrix(3, 3, 4), b in arb_matrix(3, 4, 2)) {
            let ab = a.mul(&b);
            prop_assert!(mat_rank(&ab) <= mat_rank(&a).min(mat_rank(&b)));
        }

        #[test]
        fn rank_invariant_under_row_swap(a in arb_matrix(5, 4, 3), i in 0usize..4, j in 0usize..4) {
            let mut b = a.clone();
            b.swap_rows(i, j);
            prop_assert_eq!(mat_rank(&a), mat_rank(&b));
            prop_assert!(mat_rank(&a) <= 3);
        }
    }
}
