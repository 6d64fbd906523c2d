//! Homogeneous elements of the free algebra on `n` generators.
//!
//! A word `x_{i1} ... x_{im}` is the integer `sum_s i_s n^(m-1-s)`, so the first
//! letter is most significant and integer order is lexicographic order.

use crate::rmatrix::RMatrix;
use crate::scalars::QScalar;

pub fn word_count(n: usize, m: usize) -> usize {
    n.pow(m as u32)
}

pub fn letters(w: usize, n: usize, m: usize) -> Vec<usize> {
    let mut out = vec![0; m];
    let mut w = w;
    for s in (0..m).rev() {
        out[s] = w % n;
        w /= n;
    }
    out
}

pub fn word(letters: &[usize], n: usize) -> usize {
    letters.iter().fold(0, |acc, &l| acc * n + l)
}

/// Dense coefficient vector of a homogeneous free tensor of degree `m`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FreeVec {
    pub n: usize,
    pub m: usize,
    pub data: Vec<QScalar>,
}

impl FreeVec {
    pub fn zero(n: usize, m: usize) -> Self {
        FreeVec { n, m, data: vec![QScalar::zero(); word_count(n, m)] }
    }

    pub fn unit(n: usize, m: usize, w: usize) -> Self {
        let mut v = FreeVec::zero(n, m);
        v.data[w] = QScalar::one();
        v
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(QScalar::is_zero)
    }

    pub fn nonzero(&self) -> impl Iterator<Item = (usize, &QScalar)> {
        self.data.iter().enumerate().filter(|(_, c)| !c.is_zero())
    }

    pub fn add_assign(&mut self, o: &FreeVec) {
        assert_eq!((self.n, self.m), (o.n, o.m));
        for (a, b) in self.data.iter_mut().zip(&o.data) {
            if !b.is_zero() {
                *a += b;
            }
        }
    }

    pub fn add_scaled(&mut self, o: &FreeVec, s: &QScalar) {
        assert_eq!((self.n, self.m), (o.n, o.m));
        for (a, b) in self.data.iter_mut().zip(&o.data) {
            if !b.is_zero() {
                *a += b * s;
            }
        }
    }

    pub fn scale(&self, s: &QScalar) -> FreeVec {
        FreeVec { n: self.n, m: self.m, data: self.data.iter().map(|c| c * s).collect() }
    }

    /// Applies a local two-slot operator at slots `(s, s+1)`.
    pub fn apply_local(&self, op: &LocalOp, s: usize) -> FreeVec {
        let (n, m) = (self.n, self.m);
        assert!(s + 1 < m, "slot {s} out of range for degree {m}");
        let pb = word_count(n, m - 2 - s);
        let pa = pb * n;
        let mut out = FreeVec::zero(n, m);
        for (w, c) in self.nonzero() {
            let (j, l) = ((w / pa) % n, (w / pb) % n);
            let base = w - j * pa - l * pb;
            for (o, t) in &op.images[j * n + l] {
                out.data[base + (o / n) * pa + (o % n) * pb] += c * t;
            }
        }
        out
    }

    /// `T_{a,a+1} T_{a+1,a+2} ... T_{b-1,b}` applied as an operator (rightmost factor first).
    pub fn chain(&self, op: &LocalOp, a: usize, b: usize) -> FreeVec {
        let mut v = self.clone();
        for s in (a..b).rev() {
            v = v.apply_local(op, s);
        }
        v
    }

    /// Same product with the leftmost factor applied first, i.e. slots `a, a+1, ..., b-1` in turn.
    pub fn chain_forward(&self, op: &LocalOp, a: usize, b: usize) -> FreeVec {
        let mut v = self.clone();
        for s in a..b {
            v = v.apply_local(op, s);
        }
        v
    }

    /// `x_i * self`.
    pub fn prepend(&self, i: usize) -> FreeVec {
        let mut out = FreeVec::zero(self.n, self.m + 1);
        let off = i * word_count(self.n, self.m);
        for (w, c) in self.nonzero() {
            out.data[off + w] = c.clone();
        }
        out
    }

    /// `self * x_j`.
    pub fn append(&self, j: usize) -> FreeVec {
        let mut out = FreeVec::zero(self.n, self.m + 1);
        for (w, c) in self.nonzero() {
            out.data[w * self.n + j] = c.clone();
        }
        out
    }

    /// Coefficients of the words starting with `i`, with that letter removed.
    pub fn proj_first(&self, i: usize) -> FreeVec {
        let size = word_count(self.n, self.m - 1);
        FreeVec { n: self.n, m: self.m - 1, data: self.data[i * size..(i + 1) * size].to_vec() }
    }

    /// Coefficients of the words ending with `i`, with that letter removed.
    pub fn proj_last(&self, i: usize) -> FreeVec {
        let mut out = FreeVec::zero(self.n, self.m - 1);
        for (k, d) in out.data.iter_mut().enumerate() {
            *d = self.data[k * self.n + i].clone();
        }
        out
    }

    /// Concatenation product of two free tensors.
    pub fn concat(&self, o: &FreeVec) -> FreeVec {
        assert_eq!(self.n, o.n);
        let mut out = FreeVec::zero(self.n, self.m + o.m);
        let size = word_count(self.n, o.m);
        for (a, x) in self.nonzero() {
            for (b, y) in o.nonzero() {
                out.data[a * size + b] += x * y;
            }
        }
        out
    }

    /// Reverses every word and replaces each letter `x_i` by `sum_a mat[a][i] x_a`.
    pub fn reverse_with(&self, mat: &crate::linalg::Mat) -> FreeVec {
        let (n, m) = (self.n, self.m);
        let mut out = FreeVec::zero(n, m);
        for (w, c) in self.nonzero() {
            let mut rev = letters(w, n, m);
            rev.reverse();
            let mut partial: Vec<(usize, QScalar)> = vec![(0, c.clone())];
            for &i in &rev {
                let mut next = Vec::new();
                for (p, pc) in &partial {
                    for a in 0..n {
                        let e = mat.get(a, i);
                        if !e.is_zero() {
                            next.push((p * n + a, pc * e));
                        }
                    }
                }
                partial = next;
            }
            for (p, pc) in partial {
                out.data[p] += pc;
            }
        }
        out
    }

    /// Replaces each letter `x_i` by `sum_a mat[a][i] x_a`, keeping the order.
    pub fn per_letter(&self, mat: &crate::linalg::Mat) -> FreeVec {
        let mut v = self.clone();
        for s in 0..self.m {
            v = v.apply_single(mat, s);
        }
        v
    }

    /// Applies a one-slot matrix (`x_i -> sum_a mat[a][i] x_a`) at slot `s`.
    pub fn apply_single(&self, mat: &crate::linalg::Mat, s: usize) -> FreeVec {
        let (n, m) = (self.n, self.m);
        let p = word_count(n, m - 1 - s);
        let mut out = FreeVec::zero(n, m);
        for (w, c) in self.nonzero() {
            let i = (w / p) % n;
            let base = w - i * p;
            for a in 0..n {
                let e = mat.get(a, i);
                if !e.is_zero() {
                    out.data[base + a * p] += c * e;
                }
            }
        }
        out
    }

    /// Moves the block of the first `m` letters behind the remaining ones.
    pub fn block_swap(&self, m: usize) -> FreeVec {
        let k = self.m - m;
        let (sm, sk) = (word_count(self.n, m), word_count(self.n, k));
        let mut out = FreeVec::zero(self.n, self.m);
        for (w, c) in self.nonzero() {
            let (a, b) = (w / sk, w % sk);
            out.data[b * sm + a] = c.clone();
        }
        out
    }
}

/// Sparse form of an R-matrix acting on a pair of adjacent slots:
/// input letters `(j, l)` go to `(i, k)` with coefficient `T^i_j^k_l`.
#[derive(Clone, Debug)]
pub struct LocalOp {
    pub n: usize,
    images: Vec<Vec<(usize, QScalar)>>,
}

impl LocalOp {
    pub fn new(t: &RMatrix) -> Self {
        let n = t.n();
        let mut images = vec![Vec::new(); n * n];
        for ((i, j, k, l), v) in t.nonzero() {
            images[j * n + l].push((i * n + k, v.clone()));
        }
        LocalOp { n, images }
    }

    /// General slot pair `(a, b)`, not necessarily adjacent.
    pub fn apply_at(&self, v: &FreeVec, a: usize, b: usize) -> FreeVec {
        let (n, m) = (v.n, v.m);
        let pa = word_count(n, m - 1 - a);
        let pb = word_count(n, m - 1 - b);
        let mut out = FreeVec::zero(n, m);
        for (w, c) in v.nonzero() {
            let (j, l) = ((w / pa) % n, (w / pb) % n);
            let base = w - j * pa - l * pb;
            for (o, t) in &self.images[j * n + l] {
                out.data[base + (o / n) * pa + (o % n) * pb] += c * t;
            }
        }
        out
    }
}
