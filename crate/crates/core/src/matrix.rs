//! Dense matrices over a finite field: exactly the linear algebra the rest
//! of the crate needs (products, inverses, rank, reduced row echelon form,
//! kernels), nothing more.
//!
//! Kernel bases are returned in a canonical form: the kernel vectors are
//! themselves reduced to row echelon form and sorted by pivot position, so
//! two computations of the same kernel always agree vector-for-vector.

use crate::gf::{Field, Fq};
use std::fmt;

#[derive(Clone, PartialEq, Eq)]
pub struct Mat {
    field: Field,
    rows: usize,
    cols: usize,
    a: Vec<Fq>, // row-major
}

impl fmt::Debug for Mat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Mat {}x{} over F_{} [", self.rows, self.cols, self.field.q())?;
        for i in 0..self.rows {
            let row: Vec<String> = (0..self.cols).map(|j| self.get(i, j).render()).collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        write!(f, "]")
    }
}

impl Mat {
    pub fn zero(field: &Field, rows: usize, cols: usize) -> Mat {
        Mat {
            field: field.clone(),
            rows,
            cols,
            a: vec![field.zero(); rows * cols],
        }
    }

    pub fn identity(field: &Field, n: usize) -> Mat {
        let mut m = Mat::zero(field, n, n);
        for i in 0..n {
            m.set(i, i, field.one());
        }
        m
    }

    pub fn from_rows(field: &Field, rows: Vec<Vec<Fq>>) -> Mat {
        let r = rows.len();
        let c = rows.first().map_or(0, |x| x.len());
        let mut a = Vec::with_capacity(r * c);
        for row in rows {
            assert_eq!(row.len(), c, "ragged rows");
            a.extend(row);
        }
        Mat {
            field: field.clone(),
            rows: r,
            cols: c,
            a,
        }
    }

    pub fn from_fn(field: &Field, rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> Fq) -> Mat {
        let mut m = Mat::zero(field, rows, cols);
        for i in 0..rows {
            for j in 0..cols {
                m.set(i, j, f(i, j));
            }
        }
        m
    }

    pub fn field(&self) -> &Field {
        &self.field
    }
    pub fn rows(&self) -> usize {
        self.rows
    }
    pub fn cols(&self) -> usize {
        self.cols
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> &Fq {
        &self.a[i * self.cols + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: Fq) {
        self.a[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> Vec<Fq> {
        (0..self.cols).map(|j| self.get(i, j).clone()).collect()
    }

    pub fn col(&self, j: usize) -> Vec<Fq> {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.a.iter().all(|x| x.is_zero())
    }

    pub fn is_identity(&self) -> bool {
        if self.rows != self.cols {
            return false;
        }
        for i in 0..self.rows {
            for j in 0..self.cols {
                let e = self.get(i, j);
                if (i == j && !e.is_one()) || (i != j && !e.is_zero()) {
                    return false;
                }
            }
        }
        true
    }

    pub fn transpose(&self) -> Mat {
        Mat::from_fn(&self.field, self.cols, self.rows, |i, j| self.get(j, i).clone())
    }

    pub fn add(&self, rhs: &Mat) -> Mat {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols));
        Mat::from_fn(&self.field, self.rows, self.cols, |i, j| self.get(i, j) + rhs.get(i, j))
    }

    pub fn sub(&self, rhs: &Mat) -> Mat {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols));
        Mat::from_fn(&self.field, self.rows, self.cols, |i, j| self.get(i, j) - rhs.get(i, j))
    }

    pub fn mul(&self, rhs: &Mat) -> Mat {
        assert_eq!(self.cols, rhs.rows, "dimension mismatch");
        let f = &self.field;
        let mut out = Mat::zero(f, self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let aik = self.get(i, k);
                if aik.is_zero() {
                    continue;
                }
                for j in 0..rhs.cols {
                    let v = out.get(i, j) + &(aik * rhs.get(k, j));
                    out.set(i, j, v);
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[Fq]) -> Vec<Fq> {
        assert_eq!(self.cols, v.len());
        (0..self.rows)
            .map(|i| {
                let mut acc = self.field.zero();
                for j in 0..self.cols {
                    acc = &acc + &(self.get(i, j) * &v[j]);
                }
                acc
            })
            .collect()
    }

    /// Reduce in place to reduced row echelon form; returns pivot columns.
    pub fn rref_in_place(&mut self) -> Vec<usize> {
        let mut pivots = Vec::new();
        let mut row = 0;
        for col in 0..self.cols {
            if row == self.rows {
                break;
            }
            // Find a pivot in this column at or below `row`.
            let mut pr = None;
            for i in row..self.rows {
                if !self.get(i, col).is_zero() {
                    pr = Some(i);
                    break;
                }
            }
            let Some(pr) = pr else { continue };
            // Swap into place and normalize.
            for j in 0..self.cols {
                self.a.swap(row * self.cols + j, pr * self.cols + j);
            }
            let inv = self.get(row, col).inv();
            for j in 0..self.cols {
                let v = self.get(row, j) * &inv;
                self.set(row, j, v);
            }
            // Clear the column everywhere else.
            for i in 0..self.rows {
                if i == row || self.get(i, col).is_zero() {
                    continue;
                }
                let factor = self.get(i, col).clone();
                for j in 0..self.cols {
                    let v = self.get(i, j) - &(&factor * self.get(row, j));
                    self.set(i, j, v);
                }
            }
            pivots.push(col);
            row += 1;
        }
        pivots
    }

    pub fn rank(&self) -> usize {
        let mut m = self.clone();
        m.rref_in_place().len()
    }

    pub fn det(&self) -> Fq {
        assert_eq!(self.rows, self.cols);
        let n = self.rows;
        let f = &self.field;
        let mut m = self.clone();
        let mut det = f.one();
        for col in 0..n {
            let mut pr = None;
            for i in col..n {
                if !m.get(i, col).is_zero() {
                    pr = Some(i);
                    break;
                }
            }
            let Some(pr) = pr else { return f.zero() };
            if pr != col {
                for j in 0..n {
                    m.a.swap(col * n + j, pr * n + j);
                }
                det = -&det;
            }
            let pivot = m.get(col, col).clone();
            det = &det * &pivot;
            let inv = pivot.inv();
            for i in col + 1..n {
                if m.get(i, col).is_zero() {
                    continue;
                }
                let factor = m.get(i, col) * &inv;
                for j in col..n {
                    let v = m.get(i, j) - &(&factor * m.get(col, j));
                    m.set(i, j, v);
                }
            }
        }
        det
    }

    pub fn inverse(&self) -> Option<Mat> {
        assert_eq!(self.rows, self.cols);
        let n = self.rows;
        let f = &self.field;
        // [A | I] -> rref -> [I | A^{-1}]
        let mut aug = Mat::zero(f, n, 2 * n);
        for i in 0..n {
            for j in 0..n {
                aug.set(i, j, self.get(i, j).clone());
            }
            aug.set(i, n + i, f.one());
        }
        let pivots = aug.rref_in_place();
        if pivots.len() < n || pivots[n - 1] >= n {
            return None;
        }
        Some(Mat::from_fn(f, n, n, |i, j| aug.get(i, n + j).clone()))
    }

    /// Canonical basis of the right kernel `{v : Mv = 0}`: the basis matrix
    /// is in reduced row echelon form with rows sorted by pivot position.
    pub fn right_kernel_basis(&self) -> Vec<Vec<Fq>> {
        let f = &self.field;
        let mut m = self.clone();
        let pivots = m.rref_in_place();
        let pivot_set: Vec<Option<usize>> = {
            let mut v = vec![None; self.cols];
            for (r, &c) in pivots.iter().enumerate() {
                v[c] = Some(r);
            }
            v
        };
        let mut basis = Vec::new();
        for free in 0..self.cols {
            if pivot_set[free].is_some() {
                continue;
            }
            let mut vec = vec![f.zero(); self.cols];
            vec[free] = f.one();
            for (col, pr) in pivot_set.iter().enumerate() {
                if let Some(r) = pr {
                    vec[col] = -&(m.get(*r, free).clone());
                }
            }
            basis.push(vec);
        }
        if basis.is_empty() {
            return basis;
        }
        // Canonicalize: rref the kernel vectors themselves.
        let mut km = Mat::from_rows(f, basis);
        km.rref_in_place();
        (0..km.rows())
            .filter(|&i| (0..km.cols()).any(|j| !km.get(i, j).is_zero()))
            .map(|i| km.row(i))
            .collect()
    }

    /// Canonical basis of the left kernel `{v : vM = 0}`.
    pub fn left_kernel_basis(&self) -> Vec<Vec<Fq>> {
        self.transpose().right_kernel_basis()
    }

    /// Stable key for hashing/conjugacy-orbit bookkeeping.
    pub fn key(&self) -> Vec<u32> {
        self.a.iter().map(|x| x.idx()).collect()
    }

    pub fn render_rows(&self) -> Vec<Vec<String>> {
        (0..self.rows)
            .map(|i| (0..self.cols).map(|j| self.get(i, j).render()).collect())
            .collect()
    }
}
