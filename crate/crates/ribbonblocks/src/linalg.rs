//! Dense exact matrices over cyclotomic fields.
//!
//! Everything downstream — structural morphisms, coend operators, block-space
//! isomorphisms, correlator checks — is a finite exact matrix over
//! [`FieldElement`], so this module carries the whole computational load:
//! multiplication (with zero-skipping; structure tensors are sparse),
//! reduced row echelon form, nullspaces, inverses and linear solves. All
//! eliminations use exact pivots; there is no conditioning to worry about.

use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::scalar::FieldElement;

#[derive(Clone, PartialEq, Eq)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    v: Vec<FieldElement>,
}

impl Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix { rows, cols, v: vec![FieldElement::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, FieldElement::one());
        }
        m
    }

    pub fn scalar_matrix(n: usize, s: &FieldElement) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, s.clone());
        }
        m
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> FieldElement) -> Self {
        let mut v = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                v.push(f(i, j));
            }
        }
        Matrix { rows, cols, v }
    }

    pub fn from_rows(rows: Vec<Vec<FieldElement>>) -> Self {
        let r = rows.len();
        let c = rows.first().map(|x| x.len()).unwrap_or(0);
        assert!(rows.iter().all(|x| x.len() == c));
        Matrix { rows: r, cols: c, v: rows.into_iter().flatten().collect() }
    }

    /// Column vector from entries.
    pub fn col_vec(entries: Vec<FieldElement>) -> Self {
        let n = entries.len();
        Matrix { rows: n, cols: 1, v: entries }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &FieldElement {
        &self.v[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, x: FieldElement) {
        self.v[i * self.cols + j] = x;
    }

    pub fn is_zero(&self) -> bool {
        self.v.iter().all(|x| x.is_zero())
    }

    pub fn is_identity(&self) -> bool {
        self.rows == self.cols
            && self
                .v
                .iter()
                .enumerate()
                .all(|(k, x)| if k / self.cols == k % self.cols { x.is_one() } else { x.is_zero() })
    }

    pub fn mul(&self, rhs: &Matrix) -> Matrix {
        assert_eq!(self.cols, rhs.rows, "matrix dimension mismatch in product");
        let mut out = Matrix::zeros(self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..rhs.cols {
                    let b = rhs.get(k, j);
                    if b.is_zero() {
                        continue;
                    }
                    let t = a * b;
                    let cur = out.get(i, j) + &t;
                    out.set(i, j, cur);
                }
            }
        }
        out
    }

    pub fn add(&self, rhs: &Matrix) -> Matrix {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols));
        Matrix {
            rows: self.rows,
            cols: self.cols,
            v: self.v.iter().zip(rhs.v.iter()).map(|(a, b)| a + b).collect(),
        }
    }

    pub fn sub(&self, rhs: &Matrix) -> Matrix {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols));
        Matrix {
            rows: self.rows,
            cols: self.cols,
            v: self.v.iter().zip(rhs.v.iter()).map(|(a, b)| a - b).collect(),
        }
    }

    pub fn neg(&self) -> Matrix {
        Matrix { rows: self.rows, cols: self.cols, v: self.v.iter().map(|a| -a).collect() }
    }

    pub fn scale(&self, s: &FieldElement) -> Matrix {
        Matrix { rows: self.rows, cols: self.cols, v: self.v.iter().map(|a| a * s).collect() }
    }

    pub fn transpose(&self) -> Matrix {
        Matrix::from_fn(self.cols, self.rows, |i, j| self.get(j, i).clone())
    }

    /// Kronecker product; row index (i1, i2) ↦ i1·rhs.rows + i2.
    pub fn kron(&self, rhs: &Matrix) -> Matrix {
        let mut out = Matrix::zeros(self.rows * rhs.rows, self.cols * rhs.cols);
        for i1 in 0..self.rows {
            for j1 in 0..self.cols {
                let a = self.get(i1, j1);
                if a.is_zero() {
                    continue;
                }
                for i2 in 0..rhs.rows {
                    for j2 in 0..rhs.cols {
                        let b = rhs.get(i2, j2);
                        if !b.is_zero() {
                            out.set(i1 * rhs.rows + i2, j1 * rhs.cols + j2, a * b);
                        }
                    }
                }
            }
        }
        out
    }

    pub fn direct_sum(&self, rhs: &Matrix) -> Matrix {
        let mut out = Matrix::zeros(self.rows + rhs.rows, self.cols + rhs.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out.set(i, j, self.get(i, j).clone());
            }
        }
        for i in 0..rhs.rows {
            for j in 0..rhs.cols {
                out.set(self.rows + i, self.cols + j, rhs.get(i, j).clone());
            }
        }
        out
    }

    pub fn hstack(&self, rhs: &Matrix) -> Matrix {
        assert_eq!(self.rows, rhs.rows);
        Matrix::from_fn(self.rows, self.cols + rhs.cols, |i, j| {
            if j < self.cols {
                self.get(i, j).clone()
            } else {
                rhs.get(i, j - self.cols).clone()
            }
        })
    }

    pub fn vstack(&self, rhs: &Matrix) -> Matrix {
        assert_eq!(self.cols, rhs.cols);
        Matrix::from_fn(self.rows + rhs.rows, self.cols, |i, j| {
            if i < self.rows {
                self.get(i, j).clone()
            } else {
                rhs.get(i - self.rows, j).clone()
            }
        })
    }

    pub fn column(&self, j: usize) -> Vec<FieldElement> {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    /// Reduced row echelon form with its pivot columns.
    pub fn rref(&self) -> (Matrix, Vec<usize>) {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut row = 0;
        for col in 0..m.cols {
            if row >= m.rows {
                break;
            }
            let Some(p) = (row..m.rows).find(|&r| !m.get(r, col).is_zero()) else {
                continue;
            };
            if p != row {
                for j in 0..m.cols {
                    let a = m.get(row, j).clone();
                    let b = m.get(p, j).clone();
                    m.set(row, j, b);
                    m.set(p, j, a);
                }
            }
            let inv = m.get(row, col).inv();
            for j in col..m.cols {
                let x = m.get(row, j) * &inv;
                m.set(row, j, x);
            }
            for r in 0..m.rows {
                if r == row || m.get(r, col).is_zero() {
                    continue;
                }
                let f = m.get(r, col).clone();
                for j in col..m.cols {
                    let x = m.get(r, j) - &(m.get(row, j) * &f);
                    m.set(r, j, x);
                }
            }
            pivots.push(col);
            row += 1;
        }
        (m, pivots)
    }

    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    /// Canonical nullspace basis as matrix columns: one column per free
    /// variable in ascending column order, identity pattern on the free rows.
    pub fn nullspace(&self) -> Matrix {
        let (r, pivots) = self.rref();
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        let mut out = Matrix::zeros(self.cols, free.len());
        for (k, &fc) in free.iter().enumerate() {
            out.set(fc, k, FieldElement::one());
            for (prow, &pc) in pivots.iter().enumerate() {
                let c = r.get(prow, fc);
                if !c.is_zero() {
                    out.set(pc, k, -c);
                }
            }
        }
        out
    }

    pub fn inverse(&self) -> Option<Matrix> {
        if self.rows != self.cols {
            return None;
        }
        let aug = self.hstack(&Matrix::identity(self.rows));
        let (r, pivots) = aug.rref();
        if pivots.len() != self.rows || pivots.iter().enumerate().any(|(i, &p)| p != i) {
            return None;
        }
        Some(Matrix::from_fn(self.rows, self.rows, |i, j| r.get(i, self.cols + j).clone()))
    }

    /// Solve A·X = B exactly. Returns `None` when inconsistent; free
    /// variables are set to zero, making the solution canonical.
    pub fn solve(&self, b: &Matrix) -> Option<Matrix> {
        assert_eq!(self.rows, b.rows);
        let aug = self.hstack(b);
        let (r, pivots) = aug.rref();
        // Any pivot in the B-block signals inconsistency.
        if pivots.iter().any(|&p| p >= self.cols) {
            return None;
        }
        let mut x = Matrix::zeros(self.cols, b.cols);
        for (prow, &pc) in pivots.iter().enumerate() {
            for j in 0..b.cols {
                x.set(pc, j, r.get(prow, self.cols + j).clone());
            }
        }
        Some(x)
    }

    /// Image basis: the columns of `self` at the pivot positions of rrefᵀ —
    /// a deterministic spanning subset of the columns.
    pub fn column_space_pivots(&self) -> Vec<usize> {
        self.rref().1
    }
}

impl fmt::Debug for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "[{}x{}]", self.rows, self.cols)?;
        for i in 0..self.rows {
            write!(f, "  [")?;
            for j in 0..self.cols {
                if j > 0 {
                    write!(f, ", ")?;
                }
                write!(f, "{}", self.get(i, j))?;
            }
            writeln!(f, "]")?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::parse_scalar;

    fn m(rows: &[&[i64]]) -> Matrix {
        Matrix::from_rows(
            rows.iter()
                .map(|r| r.iter().map(|&x| FieldElement::from_int(x)).collect())
                .collect(),
        )
    }

    #[test]
    fn identity_and_product() {
        let a = m(&[&[1, 2], &[3, 4]]);
        assert_eq!(a.mul(&Matrix::identity(2)), a);
        let b = m(&[&[0, 1], &[1, 0]]);
        assert_eq!(a.mul(&b), m(&[&[2, 1], &[4, 3]]));
    }

    #[test]
    fn rref_and_rank() {
        let a = m(&[&[1, 2, 3], &[2, 4, 6], &[1, 1, 1]]);
        let (r, pivots) = a.rref();
        assert_eq!(pivots, vec![0, 1]);
        assert_eq!(a.rank(), 2);
        // rref is idempotent.
        assert_eq!(r.rref().0, r);
    }

    #[test]
    fn nullspace_is_exact_kernel() {
        let a = m(&[&[1, 2, 3], &[2, 4, 6], &[1, 1, 1]]);
        let ns = a.nullspace();
        assert_eq!(ns.cols(), 1);
        assert!(a.mul(&ns).is_zero());
        // Canonical: free variable (column 2) carries coefficient 1.
        assert_eq!(ns.get(2, 0), &FieldElement::one());
    }

    #[test]
    fn inverse_roundtrip() {
        let a = m(&[&[1, 2], &[3, 5]]);
        let inv = a.inverse().unwrap();
        assert!(a.mul(&inv).is_identity());
        assert!(inv.mul(&a).is_identity());
        assert!(m(&[&[1, 2], &[2, 4]]).inverse().is_none());
    }

    #[test]
    fn solve_consistent_and_inconsistent() {
        let a = m(&[&[1, 2], &[3, 5]]);
        let b = m(&[&[5], &[13]]);
        let x = a.solve(&b).unwrap();
        assert_eq!(a.mul(&x), b);
        let sing = m(&[&[1, 1], &[1, 1]]);
        assert!(sing.solve(&m(&[&[0], &[1]])).is_none());
        assert!(sing.solve(&m(&[&[1], &[1]])).is_some());
    }

    #[test]
    fn kron_mixed_product() {
        let a = m(&[&[1, 2], &[0, 1]]);
        let b = m(&[&[2, 0], &[1, 1]]);
        let c = m(&[&[1, 1], &[1, 0]]);
        let d = m(&[&[0, 1], &[1, 0]]);
        assert_eq!(a.kron(&b).mul(&c.kron(&d)), a.mul(&c).kron(&b.mul(&d)));
    }

    #[test]
    fn cyclotomic_entries() {
        let i = parse_scalar("z", 4).unwrap();
        let rot = Matrix::from_rows(vec![
            vec![FieldElement::zero(), -&i],
            vec![i.clone(), FieldElement::zero()],
        ]);
        let sq = rot.mul(&rot);
        assert_eq!(sq, Matrix::identity(2));
    }
}
