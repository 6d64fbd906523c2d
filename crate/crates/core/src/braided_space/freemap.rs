use rayon::prelude::*;

use super::free::{word_count, FreeVec, LocalOp};
use crate::linalg::Mat;
use crate::scalars::QScalar;

pub type Sparse = Vec<(usize, QScalar)>;

pub fn to_sparse(v: &FreeVec) -> Sparse {
    v.nonzero().map(|(w, c)| (w, c.clone())).collect()
}

/// Linear map between homogeneous free components, stored by the image of every word.
#[derive(Clone, Debug)]
pub struct FreeMap {
    pub n: usize,
    pub m_in: usize,
    pub m_out: usize,
    cols: Vec<Sparse>,
}

impl FreeMap {
    pub fn from_fn(n: usize, m_in: usize, m_out: usize, f: impl Fn(usize) -> FreeVec + Sync) -> Self {
        let cols = (0..word_count(n, m_in))
            .into_par_iter()
            .map(|w| {
                let v = f(w);
                debug_assert_eq!(v.m, m_out);
                to_sparse(&v)
            })
            .collect();
        FreeMap { n, m_in, m_out, cols }
    }

    pub fn identity(n: usize, m: usize) -> Self {
        FreeMap { n, m_in: m, m_out: m, cols: (0..word_count(n, m)).map(|w| vec![(w, QScalar::one())]).collect() }
    }

    /// Single-letter map `x_i -> sum_a mat[a][i] x_a`.
    pub fn letter(mat: &Mat) -> Self {
        let n = mat.rows();
        let cols = (0..n)
            .map(|i| (0..n).filter(|&a| !mat.get(a, i).is_zero()).map(|a| (a, mat.get(a, i).clone())).collect())
            .collect();
        FreeMap { n, m_in: 1, m_out: 1, cols }
    }

    pub fn image(&self, w: usize) -> &Sparse {
        &self.cols[w]
    }

    pub fn apply(&self, v: &FreeVec) -> FreeVec {
        assert_eq!(v.m, self.m_in, "free map degree mismatch");
        let mut out = FreeVec::zero(self.n, self.m_out);
        for (w, c) in v.nonzero() {
            for (o, x) in &self.cols[w] {
                out.data[*o] += c * x;
            }
        }
        out
    }

    pub fn apply_sparse(&self, v: &[(usize, QScalar)]) -> FreeVec {
        let mut out = FreeVec::zero(self.n, self.m_out);
        for (w, c) in v {
            for (o, x) in &self.cols[*w] {
                out.data[*o] += c * x;
            }
        }
        out
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &FreeMap) -> FreeMap {
        assert_eq!(other.m_out, self.m_in, "free map composition degree mismatch");
        FreeMap::from_fn(self.n, other.m_in, self.m_out, |w| self.apply_sparse(&other.cols[w]))
    }

    /// `self ⊗ other` acting on the first `self.m_in` and last `other.m_in` letters.
    pub fn kron(&self, other: &FreeMap) -> FreeMap {
        let n = self.n;
        let (sa, sb) = (word_count(n, other.m_in), word_count(n, other.m_out));
        FreeMap::from_fn(n, self.m_in + other.m_in, self.m_out + other.m_out, |w| {
            let mut out = FreeVec::zero(n, self.m_out + other.m_out);
            for (a, x) in &self.cols[w / sa] {
                for (b, y) in &other.cols[w % sa] {
                    out.data[a * sb + b] += x * y;
                }
            }
            out
        })
    }

    pub fn scale(&self, s: &QScalar) -> FreeMap {
        let cols = self.cols.iter().map(|c| c.iter().map(|(w, x)| (*w, x * s)).collect()).collect();
        FreeMap { cols, ..*self }
    }

    pub fn add(&self, o: &FreeMap) -> FreeMap {
        assert_eq!((self.m_in, self.m_out), (o.m_in, o.m_out));
        FreeMap::from_fn(self.n, self.m_in, self.m_out, |w| {
            let mut v = FreeVec::zero(self.n, self.m_out);
            for (x, c) in self.cols[w].iter().chain(&o.cols[w]) {
                v.data[*x] += c;
            }
            v
        })
    }

    /// The local operator at slots `(s, s+1)` of degree `m`.
    pub fn local(op: &LocalOp, s: usize, m: usize) -> FreeMap {
        FreeMap::from_fn(op.n, m, m, |w| FreeVec::unit(op.n, m, w).apply_local(op, s))
    }
}
