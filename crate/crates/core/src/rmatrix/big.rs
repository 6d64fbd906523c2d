//! Multi-index matrices of the 2x2 quantum matrix models.
//!
//! Generators sit in a 2x2 matrix `x_(a,b)`, flattened to `I = a*n + b`. A matrix
//! relation such as `R21 p1 R p2 = p2 R21 p1 R` is expanded symbolically: each side
//! becomes a map from the quadratic monomials `x_X x_Y` to matrix-valued
//! coefficients, and `R'`, `R` follow from solving one side against the other.

use std::collections::BTreeMap;

use super::{hecke_check, sqrt_exact, RMatrix};
use crate::error::{Error, Result};
use crate::linalg::Mat;
use crate::scalars::QScalar;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, serde::Serialize, serde::Deserialize)]
pub enum BigLayout {
    /// Rectangular quantum matrices: `R21 p1 p2 = p2 p1 R`, braiding `p'1 p2 = R p2 p'1 R`.
    Euclidean,
    /// Braided matrices: `R21 p1 R p2 = p2 R21 p1 R`, braiding `R^-1 p'1 R p2 = p2 R21 p'1 R`.
    Minkowski,
}

#[derive(Clone)]
enum Factor {
    Scalar(RMatrix),
    Gen(u8),
}

/// Coefficient of a product of factors, as a map from generator sequence to an
/// element of `M_n (x) M_n` stored as `A[r1][c1][r2][c2]`.
type Expansion = BTreeMap<Vec<usize>, Vec<QScalar>>;

fn expand(factors: &[Factor], n: usize) -> Expansion {
    let at = |r1: usize, c1: usize, r2: usize, c2: usize| ((r1 * n + c1) * n + r2) * n + c2;
    let mut id = vec![QScalar::zero(); n.pow(4)];
    for a in 0..n {
        for c in 0..n {
            id[at(a, a, c, c)] = QScalar::one();
        }
    }
    let mut cur: Expansion = BTreeMap::from([(Vec::new(), id)]);
    for f in factors {
        let mut next: Expansion = BTreeMap::new();
        for (key, a) in &cur {
            match f {
                Factor::Scalar(v) => {
                    let mut b = vec![QScalar::zero(); n.pow(4)];
                    for r1 in 0..n {
                        for r2 in 0..n {
                            for m1 in 0..n {
                                for m2 in 0..n {
                                    let x = &a[at(r1, m1, r2, m2)];
                                    if x.is_zero() {
                                        continue;
                                    }
                                    for c1 in 0..n {
                                        for c2 in 0..n {
                                            let y = v.get(m1, c1, m2, c2);
                                            if !y.is_zero() {
                                                b[at(r1, c1, r2, c2)] += x * y;
                                            }
                                        }
                                    }
                                }
                            }
                        }
                    }
                    accumulate(&mut next, key.clone(), b);
                }
                Factor::Gen(space) => {
                    for m in 0..n {
                        for c in 0..n {
                            let mut b = vec![QScalar::zero(); n.pow(4)];
                            for r1 in 0..n {
                                for x in 0..n {
                                    for y in 0..n {
                                        let (src, dst) = if *space == 1 {
                                            (at(r1, m, x, y), at(r1, c, x, y))
                                        } else {
                                            (at(r1, x, y, m), at(r1, x, y, c))
                                        };
                                        b[dst] = a[src].clone();
                                    }
                                }
                            }
                            let mut k = key.clone();
                            k.push(m * n + c);
                            accumulate(&mut next, k, b);
                        }
                    }
                }
            }
        }
        cur = next;
    }
    cur
}

fn accumulate(map: &mut Expansion, key: Vec<usize>, b: Vec<QScalar>) {
    match map.get_mut(&key) {
        Some(a) => a.iter_mut().zip(b).for_each(|(x, y)| *x += y),
        None => {
            map.insert(key, b);
        }
    }
}

/// Rows: the free matrix index `(r1, c1, r2, c2)`; columns: the monomial `x_X x_Y`.
fn coefficient_matrix(factors: &[Factor], n: usize) -> Mat {
    let big = n * n;
    let mut out = Mat::zeros(big * big, big * big);
    for (key, a) in expand(factors, n) {
        assert_eq!(key.len(), 2, "quadratic relation expected");
        let col = key[0] * big + key[1];
        for (row, v) in a.iter().enumerate() {
            if !v.is_zero() {
                out.add_at(row, col, v);
            }
        }
    }
    out
}

/// Reads `T^A_I^B_K = M[(I,K), (B,A)]` for a relation `x_I x_K = sum M x_B x_A`.
fn from_operator(m: &Mat, big: usize) -> RMatrix {
    RMatrix::from_fn(big, |a, i, b, k| m.get(i * big + k, b * big + a).clone())
}

/// Builds `(R', R)` on the multi-index `I = (i0, i1) -> i0*n + i1` from a Hecke seed.
///
/// The seed is first rescaled so that the eigenvalues of `PR` have product `-1`;
/// for the stored seed, normalized to `(PR - q^2)(PR + 1) = 0`, this divides by `q`.
pub fn assemble_big_matrices(seed: &RMatrix, layout: BigLayout) -> Result<(RMatrix, RMatrix)> {
    let h = hecke_check(seed);
    let Some((a, b)) = h.eigenvalues.filter(|_| h.holds) else {
        return Err(Error::NotHecke);
    };
    let c = sqrt_exact(&-(&a * &b)).ok_or(Error::NotHecke)?;
    let r = seed.scale(&c.inv()?);
    let n = r.n();
    let ri = r.inverse()?;
    let r21 = r.r21();
    use Factor::{Gen, Scalar as S};
    let (la, ma, lb, mb) = match layout {
        BigLayout::Euclidean => (
            vec![S(r21.clone()), Gen(1), Gen(2)],
            vec![Gen(2), Gen(1), S(r.clone())],
            vec![Gen(1), Gen(2)],
            vec![S(r.clone()), Gen(2), Gen(1), S(r.clone())],
        ),
        BigLayout::Minkowski => (
            vec![S(r21.clone()), Gen(1), S(r.clone()), Gen(2)],
            vec![Gen(2), S(r21.clone()), Gen(1), S(r.clone())],
            vec![S(ri), Gen(1), S(r.clone()), Gen(2)],
            vec![Gen(2), S(r21), Gen(1), S(r)],
        ),
    };
    let big = n * n;
    let solve = |l: &[Factor], m: &[Factor]| -> Result<RMatrix> {
        let lm = coefficient_matrix(l, n).inverse().map_err(|_| Error::NotHecke)?;
        Ok(from_operator(&lm.mul(&coefficient_matrix(m, n)), big))
    };
    Ok((solve(&la, &ma)?, solve(&lb, &mb)?))
}
