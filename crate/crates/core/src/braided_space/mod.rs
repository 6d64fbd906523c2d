//! The braided covector algebra: quotient bases per degree, products, the
//! braiding between homogeneous components and the braided antipode.

mod basis;
mod element;
mod free;
mod freemap;

use std::sync::Arc;

pub use basis::{DegreeBasis, SparseRow};
pub use element::{FreeTensor, NormalElement};
pub use free::{letters, word, word_count, FreeVec, LocalOp};
pub use freemap::{to_sparse, FreeMap, Sparse};

use crate::cache::OnceMap;
use crate::error::{Error, Result};
use crate::linalg::Mat;
use crate::rmatrix::RMatrix;
use crate::scalars::QScalar;

/// A homogeneous quotient component `V_m` or a tensor product `V_m ⊗ V_k`.
///
/// Pair coordinates are flattened as `p * dim(V_k) + r`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Space {
    Single(usize),
    Pair(usize, usize),
}

impl Space {
    pub fn degree(self) -> usize {
        match self {
            Space::Single(m) => m,
            Space::Pair(m, k) => m + k,
        }
    }
}

/// Covector algebra on generators `x_i` with relations `x_1 x_2 = x_2 x_1 R'` and braiding from `R`.
pub struct CovectorAlgebra {
    n: usize,
    r: RMatrix,
    r_prime: RMatrix,
    /// `PR'`, whose fixed vectors span the quadratic relations.
    pub relation: LocalOp,
    /// `PR`: `x_i ⊗ x_j -> x_b ⊗ x_a R^a_i^b_j`.
    pub braid: LocalOp,
    pub braid_inv: LocalOp,
    /// `P R21^-1`, the chain entry of the conjugate derivative.
    pub braid_bar: LocalOp,
    bases: OnceMap<usize, Arc<DegreeBasis>>,
    antipodes: OnceMap<usize, Arc<FreeMap>>,
}

impl std::fmt::Debug for CovectorAlgebra {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("CovectorAlgebra").field("n", &self.n).finish_non_exhaustive()
    }
}

impl CovectorAlgebra {
    pub fn new(r_prime: &RMatrix, r: &RMatrix) -> Result<Self> {
        if r.n() != r_prime.n() {
            return Err(Error::DimensionError(format!("R has n = {}, R' has n = {}", r.n(), r_prime.n())));
        }
        let pr = r.pr();
        let pr_inv = pr.inverse()?;
        let bar = r.inverse()?.r21().pr();
        Ok(CovectorAlgebra {
            n: r.n(),
            r: r.clone(),
            r_prime: r_prime.clone(),
            relation: LocalOp::new(&r_prime.pr()),
            braid: LocalOp::new(&pr),
            braid_inv: LocalOp::new(&pr_inv),
            braid_bar: LocalOp::new(&bar),
            bases: OnceMap::new(),
            antipodes: OnceMap::new(),
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn r(&self) -> &RMatrix {
        &self.r
    }

    pub fn r_prime(&self) -> &RMatrix {
        &self.r_prime
    }

    pub fn basis(&self, m: usize) -> Arc<DegreeBasis> {
        self.bases.get_or_init(m, || Arc::new(self.build_basis(m)))
    }

    fn build_basis(&self, m: usize) -> DegreeBasis {
        let n = self.n;
        let mut gens: Vec<SparseRow> = Vec::new();
        if m == 2 {
            for w in 0..n * n {
                let mut v = FreeVec::unit(n, 2, w).apply_local(&self.relation, 0);
                v.data[w] -= QScalar::one();
                gens.push(to_sparse(&v));
            }
        } else if m > 2 {
            let prev = self.basis(m - 1);
            for row in prev.relations() {
                for j in 0..n {
                    gens.push(row.iter().map(|(w, c)| (w * n + j, c.clone())).collect());
                }
            }
            let quad = self.basis(2);
            let tail = n * n;
            for u in 0..word_count(n, m - 2) {
                for row in quad.relations() {
                    gens.push(row.iter().map(|(w, c)| (u * tail + w, c.clone())).collect());
                }
            }
        }
        DegreeBasis::from_relations(n, m, gens)
    }

    pub fn dim(&self, s: Space) -> usize {
        match s {
            Space::Single(m) => self.basis(m).dim(),
            Space::Pair(m, k) => self.basis(m).dim() * self.basis(k).dim(),
        }
    }

    /// Free words of the basis elements, in coordinate order.
    pub fn basis_words(&self, s: Space) -> Vec<usize> {
        match s {
            Space::Single(m) => self.basis(m).monomials.clone(),
            Space::Pair(m, k) => {
                let (bm, bk) = (self.basis(m), self.basis(k));
                let sk = word_count(self.n, k);
                bm.monomials.iter().flat_map(|u| bk.monomials.iter().map(move |v| u * sk + v)).collect()
            }
        }
    }

    pub fn reduce(&self, s: Space, v: &FreeVec) -> Vec<QScalar> {
        assert_eq!(v.m, s.degree(), "degree mismatch in reduce");
        let mut out = vec![QScalar::zero(); self.dim(s)];
        match s {
            Space::Single(m) => {
                let b = self.basis(m);
                for (w, c) in v.nonzero() {
                    b.reduce_word_into(w, c, &mut out);
                }
            }
            Space::Pair(m, k) => {
                let (bm, bk) = (self.basis(m), self.basis(k));
                let (sk, dk) = (word_count(self.n, k), bk.dim());
                for (w, c) in v.nonzero() {
                    let (left, right) = (bm.reduce_word(w / sk), bk.reduce_word(w % sk));
                    for (p, x) in &left {
                        let cx = c * x;
                        for (r, y) in &right {
                            out[p * dk + r] += &cx * y;
                        }
                    }
                }
            }
        }
        out
    }

    /// Free tensor of the given coordinates.
    pub fn include(&self, s: Space, coords: &[QScalar]) -> FreeVec {
        let mut v = FreeVec::zero(self.n, s.degree());
        for (w, c) in self.basis_words(s).into_iter().zip(coords) {
            v.data[w] = c.clone();
        }
        v
    }

    /// A spanning set of the relation subspace of `s` inside the free component.
    pub fn relation_rows(&self, s: Space) -> Vec<SparseRow> {
        match s {
            Space::Single(m) => self.basis(m).relations().to_vec(),
            Space::Pair(m, k) => {
                let sk = word_count(self.n, k);
                let mut rows = Vec::new();
                for row in self.basis(m).relations() {
                    for v in 0..sk {
                        rows.push(row.iter().map(|(u, c)| (u * sk + v, c.clone())).collect());
                    }
                }
                for u in 0..word_count(self.n, m) {
                    for row in self.basis(k).relations() {
                        rows.push(row.iter().map(|(v, c)| (u * sk + v, c.clone())).collect());
                    }
                }
                rows
            }
        }
    }

    /// Pushes a free map to the quotients, checking that it preserves the relation subspace.
    pub fn block(&self, src: Space, dst: Space, map: &FreeMap) -> Result<Mat> {
        use rayon::prelude::*;
        assert_eq!((map.m_in, map.m_out), (src.degree(), dst.degree()), "block degree mismatch");
        let images: Vec<Vec<QScalar>> = (0..word_count(self.n, map.m_in))
            .into_par_iter()
            .map(|w| self.reduce(dst, &map.apply_sparse(&[(w, QScalar::one())])))
            .collect();
        let bad = self.relation_rows(src).into_par_iter().find_any(|row| {
            let mut acc = vec![QScalar::zero(); self.dim(dst)];
            for (w, c) in row {
                for (a, x) in acc.iter_mut().zip(&images[*w]) {
                    if !x.is_zero() {
                        *a += c * x;
                    }
                }
            }
            acc.iter().any(|x| !x.is_zero())
        });
        if let Some(row) = bad {
            return Err(Error::NotCovariant(format!(
                "{src:?} -> {dst:?}: relation with leading word {} is not mapped into the relations",
                row.first().map(|x| x.0).unwrap_or(0)
            )));
        }
        let words = self.basis_words(src);
        Ok(Mat::from_columns(self.dim(dst), words.iter().map(|&w| images[w].clone()).collect()))
    }

    /// Free braiding `V^m ⊗ V^k -> V^k ⊗ V^m`, pushing each letter of the first block
    /// (last one first) through the whole second block.
    pub fn psi_free(&self, m: usize, k: usize) -> FreeMap {
        self.psi_free_with(&self.braid, m, k)
    }

    pub fn psi_free_with(&self, op: &LocalOp, m: usize, k: usize) -> FreeMap {
        FreeMap::from_fn(self.n, m + k, m + k, |w| {
            let mut v = FreeVec::unit(self.n, m + k, w);
            for t in (0..m).rev() {
                v = v.chain_forward(op, t, t + k);
            }
            v
        })
    }

    /// The braiding on `V_m ⊗ V_k` as a map to `V_k ⊗ V_m`.
    pub fn braiding_psi(&self, m: usize, k: usize) -> Result<Mat> {
        self.block(Space::Pair(m, k), Space::Pair(k, m), &self.psi_free(m, k))
    }

    /// The same braiding composed from single-letter crossings, moving the first
    /// block's letters one at a time by the generator braiding only.
    pub fn braiding_psi_by_crossings(&self, m: usize, k: usize) -> Result<Mat> {
        let n = self.n;
        let mut total = FreeMap::identity(n, m + k);
        for t in (0..m).rev() {
            for s in t..t + k {
                total = FreeMap::local(&self.braid, s, m + k).compose(&total);
            }
        }
        self.block(Space::Pair(m, k), Space::Pair(k, m), &total)
    }

    /// Free braided antipode: `S(x_i w) = -Psi(x_i ⊗ S(w))`.
    pub fn antipode_free(&self, m: usize) -> Arc<FreeMap> {
        self.antipodes.get_or_init(m, || {
            if m == 0 {
                return Arc::new(FreeMap::identity(self.n, 0));
            }
            let prev = self.antipode_free(m - 1);
            let size = word_count(self.n, m - 1);
            let minus = -QScalar::one();
            Arc::new(FreeMap::from_fn(self.n, m, m, |w| {
                prev.apply_sparse(&[(w % size, QScalar::one())])
                    .prepend(w / size)
                    .chain_forward(&self.braid, 0, m - 1)
                    .scale(&minus)
            }))
        })
    }

    pub fn antipode(&self, m: usize) -> Result<Mat> {
        self.block(Space::Single(m), Space::Single(m), &self.antipode_free(m))
    }

    /// Left multiplication by `x_i` from degree `m`.
    pub fn left_mult(&self, i: usize, m: usize) -> Result<Mat> {
        let map = FreeMap::from_fn(self.n, m, m + 1, |w| FreeVec::unit(self.n, m, w).prepend(i));
        self.block(Space::Single(m), Space::Single(m + 1), &map)
    }

    /// Product `V_m ⊗ V_k -> V_{m+k}`.
    pub fn product(&self, m: usize, k: usize) -> Result<Mat> {
        self.block(Space::Pair(m, k), Space::Single(m + k), &FreeMap::identity(self.n, m + k))
    }

    /// Coordinates of the product of two homogeneous coordinate vectors.
    pub fn multiply_coords(&self, m: usize, a: &[QScalar], k: usize, b: &[QScalar]) -> Vec<QScalar> {
        let prod = self.include(Space::Single(m), a).concat(&self.include(Space::Single(k), b));
        self.reduce(Space::Single(m + k), &prod)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn plane(n: usize) -> CovectorAlgebra {
        let r = RMatrix::frt(n).scale(&QScalar::q());
        let rp = r.scale(&QScalar::q_pow(-2));
        CovectorAlgebra::new(&rp, &r).unwrap()
    }

    #[test]
    fn plane_dimensions_are_classical() {
        let a = plane(2);
        let dims: Vec<usize> = (0..5).map(|m| a.basis(m).dim()).collect();
        assert_eq!(dims, vec![1, 2, 3, 4, 5]);
    }

    #[test]
    fn reduction_inverts_inclusion() {
        let a = plane(3);
        let b = a.basis(3);
        for p in 0..b.dim() {
            let red = b.reduce(&b.unit(p));
            for (k, c) in red.iter().enumerate() {
                assert_eq!(c.is_one(), k == p);
                assert!(c.is_zero() || k == p);
            }
        }
    }

    #[test]
    fn braiding_on_generators_reads_r() {
        let a = plane(2);
        let psi = a.braiding_psi(1, 1).unwrap();
        let r = a.r();
        for i in 0..2 {
            for j in 0..2 {
                for x in 0..2 {
                    for y in 0..2 {
                        // x_i ⊗ x_j -> x_y ⊗ x_x R^x_i^y_j
                        assert_eq!(psi.get(y * 2 + x, i * 2 + j), r.get(x, i, y, j));
                    }
                }
            }
        }
    }

    #[test]
    fn crossing_composition_matches_direct_braiding() {
        let a = plane(2);
        for (m, k) in [(1, 2), (2, 1), (2, 2), (1, 3)] {
            assert_eq!(a.braiding_psi(m, k).unwrap(), a.braiding_psi_by_crossings(m, k).unwrap());
        }
    }
}
