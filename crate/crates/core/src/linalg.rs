//! Dense matrices over Q(q).

use std::fmt;

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::scalars::QScalar;

#[derive(Clone, PartialEq, Eq, Hash, serde::Serialize, serde::Deserialize)]
#[serde(into = "Vec<Vec<QScalar>>", try_from = "Vec<Vec<QScalar>>")]
pub struct Mat {
    rows: usize,
    cols: usize,
    data: Vec<QScalar>,
}

impl Mat {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Mat { rows, cols, data: vec![QScalar::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Mat::zeros(n, n);
        for i in 0..n {
            m.set(i, i, QScalar::one());
        }
        m
    }

    pub fn scalar(n: usize, s: &QScalar) -> Self {
        let mut m = Mat::zeros(n, n);
        for i in 0..n {
            m.set(i, i, s.clone());
        }
        m
    }

    pub fn from_fn(rows: usize, cols: usize, f: impl Fn(usize, usize) -> QScalar) -> Self {
        let data = (0..rows * cols).map(|k| f(k / cols.max(1), k % cols.max(1))).collect();
        Mat { rows, cols, data }
    }

    pub fn from_rows(rows: Vec<Vec<QScalar>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        let data: Vec<QScalar> = rows.into_iter().flatten().collect();
        assert_eq!(data.len(), r * c, "ragged rows");
        Mat { rows: r, cols: c, data }
    }

    /// Builds a matrix whose `j`-th column is `cols[j]`.
    pub fn from_columns(nrows: usize, cols: Vec<Vec<QScalar>>) -> Self {
        let nc = cols.len();
        let mut m = Mat::zeros(nrows, nc);
        for (j, col) in cols.into_iter().enumerate() {
            assert_eq!(col.len(), nrows, "column length");
            for (i, v) in col.into_iter().enumerate() {
                m.data[i * nc + j] = v;
            }
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn shape(&self) -> (usize, usize) {
        (self.rows, self.cols)
    }

    pub fn get(&self, r: usize, c: usize) -> &QScalar {
        &self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: QScalar) {
        self.data[r * self.cols + c] = v;
    }

    pub fn add_at(&mut self, r: usize, c: usize, v: &QScalar) {
        let k = r * self.cols + c;
        self.data[k] += v;
    }

    pub fn row(&self, r: usize) -> &[QScalar] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn column(&self, c: usize) -> Vec<QScalar> {
        (0..self.rows).map(|r| self.get(r, c).clone()).collect()
    }

    pub fn entries(&self) -> impl Iterator<Item = (usize, usize, &QScalar)> {
        let c = self.cols;
        self.data.iter().enumerate().map(move |(k, v)| (k / c, k % c, v))
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(QScalar::is_zero)
    }

    pub fn nnz(&self) -> usize {
        self.data.iter().filter(|v| !v.is_zero()).count()
    }

    pub fn transpose(&self) -> Mat {
        Mat::from_fn(self.cols, self.rows, |i, j| self.get(j, i).clone())
    }

    pub fn map(&self, f: impl Fn(&QScalar) -> QScalar) -> Mat {
        Mat { rows: self.rows, cols: self.cols, data: self.data.iter().map(f).collect() }
    }

    pub fn scale(&self, s: &QScalar) -> Mat {
        if s.is_one() {
            return self.clone();
        }
        self.map(|v| v * s)
    }

    pub fn neg(&self) -> Mat {
        self.map(|v| -v)
    }

    fn check_same(&self, o: &Mat, what: &str) {
        assert_eq!(self.shape(), o.shape(), "shape mismatch in {what}");
    }

    pub fn add(&self, o: &Mat) -> Mat {
        self.check_same(o, "add");
        let data = self.data.iter().zip(&o.data).map(|(a, b)| a + b).collect();
        Mat { rows: self.rows, cols: self.cols, data }
    }

    pub fn sub(&self, o: &Mat) -> Mat {
        self.check_same(o, "sub");
        let data = self.data.iter().zip(&o.data).map(|(a, b)| a - b).collect();
        Mat { rows: self.rows, cols: self.cols, data }
    }

    pub fn add_assign(&mut self, o: &Mat) {
        self.check_same(o, "add_assign");
        for (a, b) in self.data.iter_mut().zip(&o.data) {
            if !b.is_zero() {
                *a += b;
            }
        }
    }

    /// `self += s * o`.
    pub fn add_scaled(&mut self, o: &Mat, s: &QScalar) {
        self.check_same(o, "add_scaled");
        if s.is_zero() {
            return;
        }
        for (a, b) in self.data.iter_mut().zip(&o.data) {
            if !b.is_zero() {
                *a += b * s;
            }
        }
    }

    pub fn mul(&self, o: &Mat) -> Mat {
        assert_eq!(self.cols, o.rows, "shape mismatch in mul: {:?} x {:?}", self.shape(), o.shape());
        let (n, m) = (self.cols, o.cols);
        let row = |i: usize| -> Vec<QScalar> {
            let mut out = vec![QScalar::zero(); m];
            for k in 0..n {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for (j, b) in o.row(k).iter().enumerate() {
                    if !b.is_zero() {
                        out[j] += a * b;
                    }
                }
            }
            out
        };
        let data: Vec<QScalar> = if self.rows * n * m > 4096 {
            (0..self.rows).into_par_iter().flat_map_iter(row).collect()
        } else {
            (0..self.rows).flat_map(row).collect()
        };
        Mat { rows: self.rows, cols: m, data }
    }

    pub fn mul_vec(&self, v: &[QScalar]) -> Vec<QScalar> {
        assert_eq!(self.cols, v.len());
        (0..self.rows)
            .map(|i| {
                let mut acc = QScalar::zero();
                for (a, b) in self.row(i).iter().zip(v) {
                    if !a.is_zero() && !b.is_zero() {
                        acc += a * b;
                    }
                }
                acc
            })
            .collect()
    }

    pub fn kron(&self, o: &Mat) -> Mat {
        let mut out = Mat::zeros(self.rows * o.rows, self.cols * o.cols);
        for (i, j, a) in self.entries() {
            if a.is_zero() {
                continue;
            }
            for (k, l, b) in o.entries() {
                if !b.is_zero() {
                    out.set(i * o.rows + k, j * o.cols + l, a * b);
                }
            }
        }
        out
    }

    pub fn pow(&self, k: u32) -> Mat {
        let mut acc = Mat::identity(self.rows);
        for _ in 0..k {
            acc = acc.mul(self);
        }
        acc
    }

    /// A representative nonzero entry, the largest in size at a generic sample point.
    pub fn max_entry(&self) -> Option<&QScalar> {
        max_entry(self.data.iter())
    }

    /// Reduced row echelon form; returns the pivot columns.
    pub fn rref(&mut self) -> Vec<usize> {
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..self.cols {
            if r == self.rows {
                break;
            }
            let Some(p) = pick_pivot((r..self.rows).map(|i| (i, self.get(i, c)))) else {
                continue;
            };
            self.swap_rows(r, p);
            let inv = self.get(r, c).inv().expect("nonzero pivot");
            for j in c..self.cols {
                let v = self.get(r, j) * &inv;
                self.set(r, j, v);
            }
            let pivot_row: Vec<QScalar> = self.row(r).to_vec();
            let cols = self.cols;
            self.data.par_chunks_mut(cols).enumerate().for_each(|(i, row)| {
                if i == r || row[c].is_zero() {
                    return;
                }
                let f = row[c].clone();
                for j in c..cols {
                    if !pivot_row[j].is_zero() {
                        row[j] -= &f * &pivot_row[j];
                    }
                }
            });
            pivots.push(c);
            r += 1;
        }
        pivots
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    pub fn rank(&self) -> usize {
        self.clone().rref().len()
    }

    /// Basis of the right null space.
    pub fn nullspace(&self) -> Vec<Vec<QScalar>> {
        let mut m = self.clone();
        let pivots = m.rref();
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        free.iter()
            .map(|&f| {
                let mut v = vec![QScalar::zero(); self.cols];
                v[f] = QScalar::one();
                for (r, &p) in pivots.iter().enumerate() {
                    v[p] = -m.get(r, f);
                }
                v
            })
            .collect()
    }

    pub fn inverse(&self) -> Result<Mat> {
        if self.rows != self.cols {
            return Err(Error::DimensionError(format!("inverse of {}x{} matrix", self.rows, self.cols)));
        }
        let n = self.rows;
        let mut aug = Mat::zeros(n, 2 * n);
        for i in 0..n {
            for j in 0..n {
                aug.set(i, j, self.get(i, j).clone());
            }
            aug.set(i, n + i, QScalar::one());
        }
        let pivots = aug.rref();
        if pivots.len() < n || pivots[n - 1] != n - 1 {
            return Err(Error::Singular(format!("{n}x{n} matrix has rank below {n}")));
        }
        Ok(Mat::from_fn(n, n, |i, j| aug.get(i, n + j).clone()))
    }

    /// Evaluates every entry at an exact rational value of q, row-major.
    pub fn specialize(&self, q0: &num_rational::BigRational) -> Result<Vec<num_rational::BigRational>> {
        self.data.iter().map(|v| v.specialize(q0)).collect()
    }

    /// Evaluates every entry at a floating point value of q.
    pub fn specialize_f64(&self, q0: f64) -> Result<Vec<f64>> {
        self.data.iter().map(|v| v.specialize_f64(q0)).collect()
    }
}

impl From<Mat> for Vec<Vec<QScalar>> {
    fn from(m: Mat) -> Self {
        (0..m.rows).map(|r| m.row(r).to_vec()).collect()
    }
}

impl TryFrom<Vec<Vec<QScalar>>> for Mat {
    type Error = Error;
    fn try_from(rows: Vec<Vec<QScalar>>) -> Result<Self> {
        let width = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|r| r.len() != width) {
            return Err(Error::DimensionError("ragged matrix rows".into()));
        }
        Ok(Mat::from_rows(rows))
    }
}

/// Pivot with the smallest representation, to limit expression swell.
fn pick_pivot<'a>(it: impl Iterator<Item = (usize, &'a QScalar)>) -> Option<usize> {
    it.filter(|(_, v)| !v.is_zero())
        .min_by_key(|(_, v)| complexity(v))
        .map(|(i, _)| i)
}

pub(crate) fn complexity(v: &QScalar) -> usize {
    v.numerator().coeffs().len() + v.denominator().coeffs().len()
}

pub fn max_entry<'a>(it: impl Iterator<Item = &'a QScalar>) -> Option<&'a QScalar> {
    let mut best: Option<(&QScalar, f64)> = None;
    for v in it.filter(|v| !v.is_zero()) {
        let m = v.magnitude();
        if best.is_none_or(|(_, b)| m > b) {
            best = Some((v, m));
        }
    }
    best.map(|(v, _)| v)
}

impl fmt::Debug for Mat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Mat {}x{} [", self.rows, self.cols)?;
        for r in 0..self.rows {
            let row: Vec<String> = self.row(r).iter().map(|v| v.to_string()).collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        write!(f, "]")
    }
}
