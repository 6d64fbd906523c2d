//! R-matrices in the index convention `R^i_j^k_l`, structural checks, the second
//! inverse with its trace matrices, the quantum metric and the multi-index matrices.

mod big;
mod io;
mod metric;

pub use big::{assemble_big_matrices, BigLayout};
pub use io::{RMatrixFile, RMatrixEntry};
pub use metric::{metric_residuals, metric_system, solve_metric_and_lambda, MetricSolution};

use crate::error::{Error, Result};
use crate::linalg::Mat;
use crate::scalars::{Poly, QScalar};

/// An `n^2 x n^2` matrix with entries `R^i_j^k_l` stored at `[i][j][k][l]`.
///
/// As a matrix its rows are `(i,k)` and its columns `(j,l)`, each flattened as `a*n+b`.
#[derive(Clone, PartialEq, Eq, Hash, serde::Serialize, serde::Deserialize)]
#[serde(into = "RMatrixFile", try_from = "RMatrixFile")]
pub struct RMatrix {
    n: usize,
    data: Vec<QScalar>,
}

impl RMatrix {
    pub fn zeros(n: usize) -> Self {
        RMatrix { n, data: vec![QScalar::zero(); n * n * n * n] }
    }

    pub fn from_fn(n: usize, f: impl Fn(usize, usize, usize, usize) -> QScalar) -> Self {
        let mut r = RMatrix::zeros(n);
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    for l in 0..n {
                        let x = r.idx(i, j, k, l);
                        r.data[x] = f(i, j, k, l);
                    }
                }
            }
        }
        r
    }

    /// The flip `P^i_j^k_l = delta^i_l delta^k_j`.
    pub fn perm(n: usize) -> Self {
        RMatrix::from_fn(n, |i, j, k, l| QScalar::from_int((i == l && k == j) as i64))
    }

    pub fn identity(n: usize) -> Self {
        RMatrix::from_fn(n, |i, j, k, l| QScalar::from_int((i == j && k == l) as i64))
    }

    /// Standard FRT matrix of GL_q(n): `R^i_i^i_i = q`, `R^i_i^j_j = 1` for `i != j`,
    /// `R^i_j^j_i = q - q^-1` for `i < j`.
    pub fn frt(n: usize) -> Self {
        let diff = QScalar::q() - QScalar::q_pow(-1);
        RMatrix::from_fn(n, |i, j, k, l| {
            if i == j && k == l {
                if i == k { QScalar::q() } else { QScalar::one() }
            } else if i == l && j == k && i < j {
                diff.clone()
            } else {
                QScalar::zero()
            }
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    fn idx(&self, i: usize, j: usize, k: usize, l: usize) -> usize {
        ((i * self.n + j) * self.n + k) * self.n + l
    }

    pub fn get(&self, i: usize, j: usize, k: usize, l: usize) -> &QScalar {
        &self.data[self.idx(i, j, k, l)]
    }

    pub fn set(&mut self, i: usize, j: usize, k: usize, l: usize, v: QScalar) {
        let x = self.idx(i, j, k, l);
        self.data[x] = v;
    }

    /// Nonzero entries as `((i, j, k, l), value)`.
    pub fn nonzero(&self) -> impl Iterator<Item = ((usize, usize, usize, usize), &QScalar)> {
        let n = self.n;
        self.data.iter().enumerate().filter(|(_, v)| !v.is_zero()).map(move |(x, v)| {
            ((x / (n * n * n), (x / (n * n)) % n, (x / n) % n, x % n), v)
        })
    }

    pub fn to_mat(&self) -> Mat {
        let n = self.n;
        let mut m = Mat::zeros(n * n, n * n);
        for ((i, j, k, l), v) in self.nonzero() {
            m.set(i * n + k, j * n + l, v.clone());
        }
        m
    }

    pub fn from_mat(n: usize, m: &Mat) -> Self {
        assert_eq!(m.shape(), (n * n, n * n));
        RMatrix::from_fn(n, |i, j, k, l| m.get(i * n + k, j * n + l).clone())
    }

    pub fn matmul(&self, o: &RMatrix) -> RMatrix {
        RMatrix::from_mat(self.n, &self.to_mat().mul(&o.to_mat()))
    }

    pub fn inverse(&self) -> Result<RMatrix> {
        Ok(RMatrix::from_mat(self.n, &self.to_mat().inverse()?))
    }

    /// `R_21`, the matrix with the two tensor factors exchanged.
    pub fn r21(&self) -> RMatrix {
        RMatrix::from_fn(self.n, |i, j, k, l| self.get(k, l, i, j).clone())
    }

    /// Transposition in the second tensor factor.
    pub fn t2(&self) -> RMatrix {
        RMatrix::from_fn(self.n, |i, j, k, l| self.get(i, j, l, k).clone())
    }

    pub fn scale(&self, s: &QScalar) -> RMatrix {
        RMatrix { n: self.n, data: self.data.iter().map(|v| v * s).collect() }
    }

    /// `P R` as a matrix product.
    pub fn pr(&self) -> RMatrix {
        RMatrix::perm(self.n).matmul(self)
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(QScalar::is_zero)
    }

    /// Dense `n^m x n^m` matrix of this tensor acting on tensor slots `a`, `b` of `V^m`.
    pub fn embed(&self, a: usize, b: usize, m: usize) -> Mat {
        let n = self.n;
        let size = n.pow(m as u32);
        let place = |s: usize| n.pow((m - 1 - s) as u32);
        let (pa, pb) = (place(a), place(b));
        let mut out = Mat::zeros(size, size);
        for w in 0..size {
            let (j, l) = ((w / pa) % n, (w / pb) % n);
            let base = w - j * pa - l * pb;
            for i in 0..n {
                for k in 0..n {
                    let v = self.get(i, j, k, l);
                    if !v.is_zero() {
                        out.add_at(base + i * pa + k * pb, w, v);
                    }
                }
            }
        }
        out
    }

    pub fn specialize_f64(&self, q0: f64) -> Result<Vec<f64>> {
        self.data.iter().map(|v| v.specialize_f64(q0)).collect()
    }
}

impl std::fmt::Debug for RMatrix {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "RMatrix(n={}) ", self.n)?;
        f.debug_map().entries(self.nonzero().map(|(k, v)| (k, v.to_string()))).finish()
    }
}

fn check_dims(a: &RMatrix, b: &RMatrix) -> Result<()> {
    if a.n != b.n {
        return Err(Error::DimensionError(format!("n = {} vs n = {}", a.n, b.n)));
    }
    Ok(())
}

/// `R_12 R_13 R_23 - R_23 R_13 R_12` as an operator on `V^3`.
pub fn qybe_residual(r: &RMatrix) -> Mat {
    let (r12, r13, r23) = (r.embed(0, 1, 3), r.embed(0, 2, 3), r.embed(1, 2, 3));
    r12.mul(&r13).mul(&r23).sub(&r23.mul(&r13).mul(&r12))
}

/// Residuals of the four compatibility equations of an admissible pair `(R', R)`:
/// `R'12 R13 R23 = R23 R13 R'12`, `R12 R13 R'23 = R'23 R13 R12`, the QYBE for `R`
/// and `(PR + 1)(PR' - 1) = 0`.
pub fn mixed_relations_residual(rp: &RMatrix, r: &RMatrix) -> Result<Vec<Mat>> {
    check_dims(rp, r)?;
    let (r12, r13, r23) = (r.embed(0, 1, 3), r.embed(0, 2, 3), r.embed(1, 2, 3));
    let (p12, p23) = (rp.embed(0, 1, 3), rp.embed(1, 2, 3));
    let first = p12.mul(&r13).mul(&r23).sub(&r23.mul(&r13).mul(&p12));
    let second = r12.mul(&r13).mul(&p23).sub(&p23.mul(&r13).mul(&r12));
    let n2 = r.n * r.n;
    let id = Mat::identity(n2);
    let hecke = r.pr().to_mat().add(&id).mul(&rp.pr().to_mat().sub(&id));
    Ok(vec![first, second, qybe_residual(r), hecke])
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HeckeReport {
    pub holds: bool,
    pub eigenvalues: Option<(QScalar, QScalar)>,
}

/// Tests whether `PR` has a quadratic minimal polynomial with distinct roots.
pub fn hecke_check(r: &RMatrix) -> HeckeReport {
    let m = r.pr().to_mat();
    let m2 = m.mul(&m);
    let n2 = m.rows();
    let id = Mat::identity(n2);
    let fail = HeckeReport { holds: false, eigenvalues: None };
    // Solve M^2 = s M + p I for (s, p).
    let mut sys = Mat::zeros(n2 * n2, 3);
    for a in 0..n2 {
        for b in 0..n2 {
            let row = a * n2 + b;
            sys.set(row, 0, m.get(a, b).clone());
            sys.set(row, 1, id.get(a, b).clone());
            sys.set(row, 2, -m2.get(a, b));
        }
    }
    let ns = sys.nullspace();
    let Some(sol) = ns.iter().find(|v| !v[2].is_zero()) else {
        return fail;
    };
    if ns.len() > 1 {
        // PR = c: every quadratic with root c annihilates it; the second root is
        // taken as -1, the eigenvalue fixed by the Hecke normalization.
        let c = m.get(0, 0).clone();
        let other = if c == QScalar::from_int(-1) { QScalar::one() } else { QScalar::from_int(-1) };
        let key = |v: &QScalar| v.specialize_f64(1.5).unwrap_or(f64::NAN);
        let pair = if key(&c) >= key(&other) { (c, other) } else { (other, c) };
        return HeckeReport { holds: true, eigenvalues: Some(pair) };
    }
    let norm = sol[2].inv().expect("nonzero");
    let s = &sol[0] * &norm;
    let p = &sol[1] * &norm;
    let disc = &s * &s + QScalar::from_int(4) * &p;
    if disc.is_zero() {
        return fail;
    }
    let Some(root) = sqrt_exact(&disc) else {
        return HeckeReport { holds: true, eigenvalues: None };
    };
    let half = QScalar::from_ratio(&num_rational::BigRational::new(1.into(), 2.into()));
    let a = (&s + &root) * &half;
    let b = (&s - &root) * &half;
    let key = |v: &QScalar| v.specialize_f64(1.5).unwrap_or(f64::NAN);
    let (a, b) = if key(&a) >= key(&b) { (a, b) } else { (b, a) };
    HeckeReport { holds: true, eigenvalues: Some((a, b)) }
}

/// Exact square root of an element of Q(q) whose numerator and denominator are squares.
pub fn sqrt_exact(v: &QScalar) -> Option<QScalar> {
    if v.is_zero() {
        return Some(QScalar::zero());
    }
    if v.valuation() % 2 != 0 {
        return None;
    }
    let n = poly_sqrt(v.numerator())?;
    let d = poly_sqrt(&v.denominator())?;
    QScalar::from_parts(v.valuation() / 2, n, d).ok()
}

fn poly_sqrt(p: &Poly) -> Option<Poly> {
    use num_bigint::BigInt;
    use num_integer::Integer;
    use num_traits::{Signed, Zero};
    let deg = p.degree()?;
    let c = p.coeffs();
    if deg % 2 != 0 || c[deg].is_negative() {
        return None;
    }
    let top = c[deg].sqrt();
    if &top * &top != c[deg] {
        return None;
    }
    let h = deg / 2;
    let mut r = vec![BigInt::zero(); h + 1];
    r[h] = top;
    for k in (0..h).rev() {
        let mut acc = c[h + k].clone();
        for i in (k + 1)..=h {
            let j = h + k - i;
            if j > k && j <= h {
                acc -= &r[i] * &r[j];
            }
        }
        let den = BigInt::from(2) * &r[h];
        let (q, rem) = acc.div_rem(&den);
        if !rem.is_zero() {
            return None;
        }
        r[k] = q;
    }
    let root = Poly::from_coeffs(r);
    (&root.mul(&root) == p).then_some(root)
}

/// `((R^{t2})^{-1})^{t2}`.
pub fn second_inverse(r: &RMatrix) -> Result<RMatrix> {
    let t = r.t2().to_mat().inverse().map_err(|_| Error::SingularSecondInverse)?;
    Ok(RMatrix::from_mat(r.n, &t).t2())
}

#[derive(Clone, Debug, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
pub struct ThetaData {
    pub v: Mat,
    pub u: Mat,
    pub lambda_nu: QScalar,
}

/// `v^i_j = Rt^i_a^a_j` and `u^i_j = Rt^a_j^i_a` for the second inverse `Rt`, scaled
/// by `factor`, together with the monomial square root of the scalar `uv`.
pub fn theta_matrices(r: &RMatrix, factor: &QScalar) -> Result<ThetaData> {
    let n = r.n;
    let rt = second_inverse(r)?;
    let v = Mat::from_fn(n, n, |i, j| (0..n).map(|a| rt.get(i, a, a, j).clone()).sum::<QScalar>() * factor);
    let u = Mat::from_fn(n, n, |i, j| (0..n).map(|a| rt.get(a, j, i, a).clone()).sum::<QScalar>() * factor);
    let uv = u.mul(&v);
    let c = uv.get(0, 0).clone();
    if uv != Mat::scalar(n, &c) {
        return Err(Error::NotRibbonScalar);
    }
    let lambda_nu = c.sqrt_monomial().ok_or_else(|| Error::NoCanonicalRoot(c.to_string()))?;
    Ok(ThetaData { v, u, lambda_nu })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn flip_is_hecke_with_unit_roots() {
        let h = hecke_check(&RMatrix::perm(2));
        assert!(h.holds);
        assert_eq!(h.eigenvalues, Some((QScalar::one(), QScalar::from_int(-1))));
    }

    #[test]
    fn normalized_seed_roots() {
        let h = hecke_check(&RMatrix::frt(2).scale(&QScalar::q()));
        assert_eq!(h.eigenvalues, Some((QScalar::q_pow(2), QScalar::from_int(-1))));
    }

    #[test]
    fn embed_matches_matrix_form() {
        let r = RMatrix::frt(2);
        assert_eq!(r.embed(0, 1, 2), r.to_mat());
    }

    #[test]
    fn square_roots() {
        let v: QScalar = "(q^2+1)^2/(4*q^2)".parse().unwrap();
        let r = sqrt_exact(&v).unwrap();
        assert_eq!(&r * &r, v);
        assert!(sqrt_exact(&"q^2+1".parse().unwrap()).is_none());
    }
}
